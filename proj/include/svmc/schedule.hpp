#pragma once

#include <string>
#include <utility>
#include <vector>

namespace svmc {

struct SchedulePoint {
    double s = 0.0;  // anneal fraction in [0, 1]
    double A = 0.0;  // transverse field, GHz
    double B = 0.0;  // coupling scale, GHz
};

/// Piecewise-linear annealing schedule A(s), B(s) over s in [0, 1].
/// Knots must start at s = 0, end at s = 1, with s strictly increasing and
/// A, B >= 0. A non-increasing / B non-decreasing is validated by default;
/// pass enforce_monotone = false to admit non-standard shapes.
class AnnealSchedule {
public:
    explicit AnnealSchedule(std::vector<SchedulePoint> points, bool enforce_monotone = true);

    /// Linear interpolation between the bracketing knots; exact at knots.
    /// Throws std::invalid_argument for s outside [0, 1].
    std::pair<double, double> evaluate(double s) const;

    double A(double s) const { return evaluate(s).first; }
    double B(double s) const { return evaluate(s).second; }

    const std::vector<SchedulePoint>& points() const { return points_; }

    /// Same B(s) with A forced to zero; the O(2) simulated-annealing reduction.
    AnnealSchedule with_zero_A() const;

private:
    std::vector<SchedulePoint> points_;
};

/// The s where A(s) = B(s), located by bisection to |A - B| < 1e-9 GHz.
/// Requires A(0) > B(0) and A(1) < B(1); throws otherwise (no sign change).
double crossing_point(const AnnealSchedule& sched);

/// CSV with header `s,A_GHz,B_GHz`, rows sorted by s.
AnnealSchedule load_schedule(const std::string& path, bool enforce_monotone = true);
void save_schedule(const AnnealSchedule& sched, const std::string& path);

/// Built-in approximation of the D-Wave One schedule (also shipped as
/// data/dw1-approx.csv): A falls from 5 GHz to 0, B rises from 0 to 10 GHz,
/// crossing near s = 0.3. The true schedule is published only as a figure;
/// every experiment takes the schedule as an input so this can be swapped out.
AnnealSchedule default_schedule();

}  // namespace svmc
