#include "svmc/schedule.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "svmc/text.hpp"

namespace svmc {

AnnealSchedule::AnnealSchedule(std::vector<SchedulePoint> points, bool enforce_monotone)
    : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("schedule needs at least two knots");
    if (points_.front().s != 0.0) throw std::invalid_argument("schedule must start at s = 0");
    if (points_.back().s != 1.0) throw std::invalid_argument("schedule must end at s = 1");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const SchedulePoint& p = points_[k];
        if (!(p.A >= 0.0) || !(p.B >= 0.0)) {
            throw std::invalid_argument("schedule values must be >= 0");
        }
        if (k > 0) {
            if (!(p.s > points_[k - 1].s)) {
                throw std::invalid_argument("schedule knots must have strictly increasing s");
            }
            if (enforce_monotone && p.A > points_[k - 1].A) {
                throw std::invalid_argument("A(s) must be non-increasing");
            }
            if (enforce_monotone && p.B < points_[k - 1].B) {
                throw std::invalid_argument("B(s) must be non-decreasing");
            }
        }
    }
}

std::pair<double, double> AnnealSchedule::evaluate(double s) const {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("anneal fraction outside [0, 1]: " + format_double(s));
    }
    // find the bracketing segment [k, k+1]
    std::size_t lo = 0, hi = points_.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (points_[mid].s <= s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const SchedulePoint& a = points_[lo];
    const SchedulePoint& b = points_[hi];
    if (s == a.s) return {a.A, a.B};
    if (s == b.s) return {b.A, b.B};
    double t = (s - a.s) / (b.s - a.s);
    return {a.A + t * (b.A - a.A), a.B + t * (b.B - a.B)};
}

AnnealSchedule AnnealSchedule::with_zero_A() const {
    std::vector<SchedulePoint> pts = points_;
    for (SchedulePoint& p : pts) p.A = 0.0;
    return AnnealSchedule(std::move(pts));
}

double crossing_point(const AnnealSchedule& sched) {
    auto gap = [&](double s) {
        auto [A, B] = sched.evaluate(s);
        return A - B;
    };
    double g0 = gap(0.0), g1 = gap(1.0);
    if (!(g0 > 0.0) || !(g1 < 0.0)) {
        throw std::invalid_argument("crossing_point: no sign change (need A(0) > B(0), A(1) < B(1))");
    }
    double lo = 0.0, hi = 1.0, mid = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        double g = gap(mid);
        if (std::fabs(g) < 1e-9) return mid;
        if (g > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw std::runtime_error("crossing_point: bisection failed to converge");
}

AnnealSchedule load_schedule(const std::string& path, bool enforce_monotone) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schedule file: " + path);
    std::vector<SchedulePoint> pts;
    std::string raw;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = strip_cr(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line != "s,A_GHz,B_GHz") {
                throw std::invalid_argument(path + ": schedule header must be 's,A_GHz,B_GHz'");
            }
            have_header = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 3 comma-separated values");
        }
        SchedulePoint p;
        p.s = parse_double(fields[0], "s");
        p.A = parse_double(fields[1], "A_GHz");
        p.B = parse_double(fields[2], "B_GHz");
        pts.push_back(p);
    }
    if (!have_header) throw std::invalid_argument(path + ": missing schedule header");
    return AnnealSchedule(std::move(pts), enforce_monotone);
}

void save_schedule(const AnnealSchedule& sched, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schedule file: " + path);
    out << "s,A_GHz,B_GHz\n";
    for (const SchedulePoint& p : sched.points()) {
        out << format_double(p.s) << ',' << format_double(p.A) << ',' << format_double(p.B)
            << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

AnnealSchedule default_schedule() {
    // Smooth monotone stand-in for the published D-Wave One schedule figure:
    // A(s) = 5 (1-s)^3, B(s) = 10 s^1.5, 41 knots, values rounded to 1e-6 GHz
    // so the shipped CSV and this table are bit-identical.
    std::vector<SchedulePoint> pts;
    pts.reserve(41);
    for (int k = 0; k <= 40; ++k) {
        double s = k / 40.0;
        double A = 5.0 * std::pow(1.0 - s, 3.0);
        double B = 10.0 * std::pow(s, 1.5);
        pts.push_back({std::round(s * 1e6) / 1e6, std::round(A * 1e6) / 1e6,
                       std::round(B * 1e6) / 1e6});
    }
    return AnnealSchedule(std::move(pts));
}

}  // namespace svmc
