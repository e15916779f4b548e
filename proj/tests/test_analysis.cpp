#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <numeric>
#include <vector>

#include "svmc/analysis.hpp"
#include "svmc/oracle.hpp"

using namespace svmc;

namespace {

IsingInstance ferro_pair() {
    ChimeraSpec spec{1, 1, 1, {}};
    return IsingInstance(spec, {{0, 1, 1.0}}, {}, "pair");
}

RunRecord record_with_config(SpinConfig z, const IsingInstance& inst) {
    RunRecord rec;
    rec.final_config = std::move(z);
    rec.final_energy = ising_energy(rec.final_config, inst);
    return rec;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("success_probability: all, none, half") {
    IsingInstance pair = ferro_pair();
    GroundResult ground = exhaustive_ground(pair);

    std::vector<RunRecord> all(10, record_with_config({1, 1}, pair));
    SuccessEstimate est = success_probability(all, pair, ground.energy, "pair");
    CHECK(est.p_hat == 1.0);
    CHECK(est.n_success == 10);
    CHECK(est.ci_hi == doctest::Approx(1.0));

    // 0 of 100: Wilson upper bound from an independent evaluation of the
    // closed form, hi = (z^2/n) / (1 + z^2/n) at p = 0
    std::vector<RunRecord> none(100, record_with_config({1, -1}, pair));
    est = success_probability(none, pair, ground.energy, "pair");
    CHECK(est.p_hat == 0.0);
    CHECK(est.ci_lo == 0.0);
    const double z = 1.959963984540054;
    double expected_hi = (z * z / 100.0) / (1.0 + z * z / 100.0);
    CHECK(est.ci_hi == doctest::Approx(expected_hi).epsilon(1e-12));
    CHECK(est.ci_hi == doctest::Approx(0.0370).epsilon(1e-2));

    std::vector<RunRecord> mixed;
    for (int k = 0; k < 50; ++k) mixed.push_back(record_with_config({1, 1}, pair));
    for (int k = 0; k < 50; ++k) mixed.push_back(record_with_config({-1, 1}, pair));
    est = success_probability(mixed, pair, ground.energy, "pair");
    CHECK(est.p_hat == 0.5);
    CHECK(est.ci_lo < 0.5);
    CHECK(est.ci_hi > 0.5);

    CHECK_THROWS_AS(success_probability({}, pair, ground.energy, "pair"), std::invalid_argument);
}

TEST_CASE("success of the replicated oracle minimizer is exactly 1") {
    ChimeraSpec spec{1, 1, 4, {}};
    Rng rng(42);
    IsingInstance inst = random_instance(spec, rng, CouplingModel{}, false, "oracle-rep");
    GroundResult ground = exhaustive_ground(inst);
    std::vector<RunRecord> reps(25, record_with_config(ground.config, inst));
    CHECK(success_probability(reps, inst, ground.energy, "oracle-rep").p_hat == 1.0);
}

TEST_CASE("histogram: edges, mass placement, conservation") {
    CHECK(histogram({0.0, 1.0}, 2) == std::vector<std::uint64_t>{1, 1});

    std::vector<double> halves(17, 0.5);
    auto counts = histogram(halves, 20);
    CHECK(counts[10] == 17);  // bin 10 = [0.5, 0.55)
    CHECK(std::accumulate(counts.begin(), counts.end(), 0ull) == 17);

    Rng rng(7);
    std::vector<double> uniform;
    for (int k = 0; k < 1000; ++k) uniform.push_back(uniform01(rng));
    counts = histogram(uniform, 20);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0ull) == 1000);
    double mean_bin = 1000.0 / 20.0;
    for (auto c : counts) CHECK(static_cast<double>(c) <= 2.0 * mean_bin);

    CHECK_THROWS_AS(histogram({0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(histogram({1.5}, 4), std::invalid_argument);
}

TEST_CASE("bimodality score: extremes, middle, uniform grid") {
    std::vector<double> split;
    for (int k = 0; k < 10; ++k) split.push_back(0.0);
    for (int k = 0; k < 10; ++k) split.push_back(1.0);
    CHECK(bimodality_score(split) == 1.0);

    std::vector<double> middle(20, 0.5);
    CHECK(bimodality_score(middle) == -1.0);

    // deterministic uniform grid (k+0.5)/1000: 100 values below 0.1, 100
    // above 0.9, 200 inside [0.4, 0.6] -> score exactly 0
    std::vector<double> grid;
    for (int k = 0; k < 1000; ++k) grid.push_back((k + 0.5) / 1000.0);
    CHECK(bimodality_score(grid) == 0.0);

    CHECK_THROWS_AS(bimodality_score(std::vector<double>(19, 0.5)), std::invalid_argument);
}

TEST_CASE("pearson: unit cases and hand-derived triples") {
    std::vector<double> xs = {0.1, 0.5, 0.2, 0.9};
    std::vector<double> neg(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) neg[k] = -xs[k];
    CHECK(pearson(xs, xs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-12));

    // (1,2,3) vs (2,4,7): sums dxdy = 5, dx2 = 2, dy2 = 38/3
    // -> R = 5 / sqrt(76/3) = 0.99339926779878...
    double r1 = pearson({1.0, 2.0, 3.0}, {2.0, 4.0, 7.0});
    CHECK(r1 == doctest::Approx(5.0 / std::sqrt(76.0 / 3.0)).epsilon(1e-12));
    // (1,2,3) vs (2,4,8): dxdy = 6, dy2 = 56/3 -> R = 6 / sqrt(112/3) = 0.98198...
    double r2 = pearson({1.0, 2.0, 3.0}, {2.0, 4.0, 8.0});
    CHECK(r2 == doctest::Approx(6.0 / std::sqrt(112.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(pearson({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(pearson({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("pearson is invariant under positive affine rescaling") {
    Rng rng(12);
    std::vector<double> xs, ys, scaled;
    for (int k = 0; k < 200; ++k) {
        xs.push_back(uniform01(rng));
        ys.push_back(uniform01(rng) + 0.2 * xs.back());
    }
    for (double x : xs) scaled.push_back(3.7 * x + 11.0);
    CHECK(std::fabs(pearson(scaled, ys) - pearson(xs, ys)) < 1e-12);
}

TEST_CASE("canonicalize: flip invariance, idempotence, all-plus convention") {
    SpinConfig config = {1, -1, 1, 0, -1};
    SpinConfig flipped = {-1, 1, -1, 0, 1};
    CHECK(canonicalize(config) == canonicalize(flipped));
    CHECK(canonicalize(canonicalize(config)) == canonicalize(config));

    SpinConfig all_plus(6, 1);
    SpinConfig all_minus(6, -1);
    CHECK(canonicalize(all_plus) == all_minus);  // -1 sorts first
}

TEST_CASE("minima catalog: conservation, determinism, single-probe") {
    ChimeraSpec spec{1, 1, 4, {}};
    Rng rng(3);
    IsingInstance inst = random_instance(spec, rng, CouplingModel{}, false, "catalog");
    ModelParams params;
    params.sweeps = 2000;

    MinimaCatalog catalog = minima_catalog(inst, default_schedule(), params, 0.31, 40, 11);
    std::uint64_t total = 0;
    for (const auto& entry : catalog.entries) total += entry.hits;
    CHECK(total == 40);
    CHECK(catalog.total_runs == 40);
    CHECK(catalog.s_star == 0.31);
    for (std::size_t k = 0; k + 1 < catalog.entries.size(); ++k) {
        CHECK(catalog.entries[k].hits >= catalog.entries[k + 1].hits);
        CHECK(catalog.entries[k].config != catalog.entries[k + 1].config);
    }

    // thread-count invariance
    MinimaCatalog threaded = minima_catalog(inst, default_schedule(), params, 0.31, 40, 11, 4);
    REQUIRE(threaded.entries.size() == catalog.entries.size());
    for (std::size_t k = 0; k < catalog.entries.size(); ++k) {
        CHECK(threaded.entries[k].config == catalog.entries[k].config);
        CHECK(threaded.entries[k].hits == catalog.entries[k].hits);
    }

    MinimaCatalog single = minima_catalog(inst, default_schedule(), params, 0.31, 1, 11);
    CHECK(single.entries.size() == 1);

    CHECK_THROWS_AS(minima_catalog(inst, default_schedule(), params, 0.0, 5, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(minima_catalog(inst, default_schedule(), params, 0.31, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("below s = 0.06 the catalog collapses to one minimum") {
    ChimeraSpec spec{2, 2, 4, {}};  // C2 shape
    Rng rng(13);
    IsingInstance inst = random_instance(spec, rng, CouplingModel{}, false, "c2-early");
    ModelParams params;
    params.sweeps = 2000;
    MinimaCatalog catalog = minima_catalog(inst, default_schedule(), params, 0.05, 30, 21, 2);
    CHECK(catalog.entries.size() == 1);
}

TEST_CASE("branching_diff: identity, global flip, one flipped supernode") {
    SpinConfig a = {1, -1, 1, 1};
    CHECK(branching_diff(a, a).empty());
    SpinConfig flipped(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) flipped[k] = static_cast<std::int8_t>(-a[k]);
    CHECK(branching_diff(a, flipped).empty());

    // C2-sized configs differing on exactly the 8 sites of cell (0,0)
    SpinConfig base(32, 1);
    SpinConfig other = base;
    for (int k = 0; k < 8; ++k) other[k] = -1;
    std::vector<int> expected = {0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(branching_diff(base, other) == expected);
    // flipping `other` globally must give the same answer (Z2 quotient)
    SpinConfig other_flipped(other.size());
    for (std::size_t k = 0; k < other.size(); ++k) {
        other_flipped[k] = static_cast<std::int8_t>(-other[k]);
    }
    CHECK(branching_diff(base, other_flipped) == expected);

    CHECK_THROWS_AS(branching_diff(base, a), std::invalid_argument);
}

}  // TEST_SUITE
