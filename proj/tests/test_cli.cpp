#include "doctest.h"

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "svmc/cli.hpp"
#include "svmc/oracle.hpp"

using namespace svmc;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "svmc_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GenOptions small_suite(const fs::path& dir, int count, std::uint64_t seed) {
    GenOptions gen;
    gen.rows = 1;
    gen.cols = 1;
    gen.half = 4;
    gen.count = count;
    gen.seed = seed;
    gen.out_dir = dir.string();
    return gen;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes count instances plus a manifest, deterministically") {
    fs::path dir_a = fresh_dir("gen_a");
    auto paths = run_gen(small_suite(dir_a, 3, 99));
    CHECK(paths.size() == 3);
    for (const std::string& p : paths) {
        CHECK(fs::exists(p));
        IsingInstance inst = read_instance(p);  // re-read validation
        CHECK(inst.edges().size() == 16);
    }
    CHECK(fs::exists(dir_a / "manifest.csv"));

    // same seed, fresh directory: byte-identical files
    fs::path dir_b = fresh_dir("gen_b");
    auto paths_b = run_gen(small_suite(dir_b, 3, 99));
    for (std::size_t k = 0; k < paths.size(); ++k) {
        CHECK(slurp(paths[k]) == slurp(paths_b[k]));
    }
    CHECK(slurp(dir_a / "manifest.csv") == slurp(dir_b / "manifest.csv"));

    // growing the count extends the suite without altering earlier files
    fs::path dir_c = fresh_dir("gen_c");
    auto paths_c = run_gen(small_suite(dir_c, 5, 99));
    CHECK(slurp(paths[0]) == slurp(paths_c[0]));
    CHECK(slurp(paths[2]) == slurp(paths_c[2]));

    GenOptions bad = small_suite(fresh_dir("gen_bad"), 0, 1);
    CHECK_THROWS_AS(run_gen(bad), std::invalid_argument);
}

TEST_CASE("gen count=1000 on masked C4: every file re-reads as valid") {
    fs::path dir = fresh_dir("gen_c4_suite");
    fs::path mask = dir / "mask.txt";
    {
        std::ofstream out(mask);
        out << "# inactive qubits (arbitrary 20-site mask)\n";
        for (int k = 0; k < 20; ++k) out << k * 6 + 1 << "\n";
    }
    GenOptions gen;
    gen.rows = 4;
    gen.cols = 4;
    gen.half = 4;
    gen.broken_file = mask.string();
    gen.count = 1000;
    gen.seed = 13;
    gen.out_dir = (dir / "inst").string();
    auto paths = run_gen(gen);
    REQUIRE(paths.size() == 1000);

    int valid = 0;
    for (const std::string& p : paths) {
        IsingInstance inst = read_instance(p);  // full adjacency + range validation
        if (inst.active_count() == 108 && inst.geometry().broken.size() == 20) ++valid;
    }
    CHECK(valid == 1000);
    CHECK(fs::exists(fs::path(gen.out_dir) / "manifest.csv"));
}

TEST_CASE("run grades against the oracle and is thread-count invariant") {
    fs::path dir = fresh_dir("run");
    auto paths = run_gen(small_suite(dir, 4, 7));

    RunOptions run;
    run.instances = {dir.string()};  // directory expansion
    run.runs_per_instance = 8;
    run.sweeps = 400;
    run.seed = 31;
    run.threads = 1;
    run.out_csv = (dir / "results_t1.csv").string();
    auto estimates = run_run(run);
    REQUIRE(estimates.size() == 4);
    for (const SuccessEstimate& est : estimates) {
        CHECK(est.n_runs == 8);
        CHECK(est.p_hat >= 0.0);
        CHECK(est.p_hat <= 1.0);
        CHECK(est.ci_lo <= est.p_hat);
        CHECK(est.ci_hi >= est.p_hat);
    }

    run.threads = 4;
    run.out_csv = (dir / "results_t4.csv").string();
    run_run(run);
    CHECK(slurp(dir / "results_t1.csv") == slurp(dir / "results_t4.csv"));

    // read-back matches what run_run returned
    auto rows = read_results_csv((dir / "results_t1.csv").string());
    REQUIRE(rows.size() == estimates.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].instance_id == estimates[k].instance_id);
        CHECK(rows[k].p_hat == estimates[k].p_hat);
    }

    RunOptions bad = run;
    bad.runs_per_instance = 0;
    CHECK_THROWS_AS(run_run(bad), std::invalid_argument);
}

TEST_CASE("run defaults land in the output metadata") {
    fs::path dir = fresh_dir("run_meta");
    GenOptions gen = small_suite(dir, 1, 3);
    gen.half = 1;  // two-spin instances keep the default 150000 sweeps cheap
    auto paths = run_gen(gen);

    RunOptions run;  // leave solver/temperature/sweeps at their defaults
    run.instances = paths;
    run.runs_per_instance = 2;
    run.out_csv = (dir / "defaults.csv").string();
    run_run(run);
    std::string text = slurp(dir / "defaults.csv");
    CHECK(text.find("solver=svmc") != std::string::npos);
    CHECK(text.find("sweeps=150000") != std::string::npos);
    CHECK(text.find("temperature=0.22") != std::string::npos);
    CHECK(text.find("schedule=builtin-dw1-approx") != std::string::npos);
    CHECK(text.find("# svmc 0.1.0 run") != std::string::npos);
}

TEST_CASE("run works with sa_o2 and sa_bits and a ground cache") {
    fs::path dir = fresh_dir("run_solvers");
    auto paths = run_gen(small_suite(dir, 2, 11));

    ExactOptions exact;
    exact.instances = {dir.string()};
    exact.out_cache = (dir / "cache.csv").string();
    run_exact(exact);
    GroundCache cache = load_ground_cache(exact.out_cache);
    CHECK(cache.size() == 2);

    for (std::string solver : {"sa_o2", "sa_bits"}) {
        RunOptions run;
        run.solver = solver;
        run.instances = paths;
        run.runs_per_instance = 6;
        run.sweeps = 300;
        run.cache_file = exact.out_cache;
        run.out_csv = (dir / (solver + ".csv")).string();
        auto estimates = run_run(run);
        CHECK(estimates.size() == 2);
    }
    std::string sa_text = slurp(dir / "sa_bits.csv");
    CHECK(sa_text.find("sa_t_start=10") != std::string::npos);
    CHECK(sa_text.find("sa_kind=linear") != std::string::npos);
}

TEST_CASE("stats emits a histogram and the bimodality score") {
    fs::path dir = fresh_dir("stats");
    // synthesize a results file: 12 easy, 8 hard instances
    fs::path results = dir / "results.csv";
    {
        std::ofstream out(results);
        out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
        for (int k = 0; k < 12; ++k) {
            out << "easy-" << k << ",10,10,1,0.72,1\n";
        }
        for (int k = 0; k < 8; ++k) {
            out << "hard-" << k << ",10,0,0,0,0.28\n";
        }
    }
    StatsOptions stats;
    stats.results_csv = results.string();
    stats.bins = 10;
    stats.out_csv = (dir / "hist.csv").string();
    double score = run_stats(stats);
    CHECK(score == 1.0);  // every instance sits in an extreme bin

    std::string text = slurp(stats.out_csv);
    CHECK(text.find("bin_lo,bin_hi,count") != std::string::npos);
    CHECK(text.find("# bimodality=1") != std::string::npos);
    // first and last bins carry all the mass
    CHECK(text.find("0,0.1,8") != std::string::npos);
    CHECK(text.find("0.9,1,12") != std::string::npos);
}

TEST_CASE("correlate joins on instance id") {
    fs::path dir = fresh_dir("correlate");
    fs::path a = dir / "a.csv", b = dir / "b.csv";
    {
        std::ofstream out(a);
        out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
        out << "x,10,1,0.1,0,1\nY,10,5,0.5,0,1\nz,10,9,0.9,0,1\n";
    }
    {
        // p_b = 0.5 * p_a + 0.1, listed in a different order
        std::ofstream out(b);
        out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
        out << "z,10,6,0.55,0,1\nx,10,2,0.15,0,1\nY,10,6,0.35,0,1\n";
    }
    CorrelateOptions corr;
    corr.results_a = a.string();
    corr.results_b = b.string();
    corr.out_csv = (dir / "scatter.csv").string();
    double r = run_correlate(corr);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-12));  // same ordering, affine

    // self-correlation is exactly 1
    corr.results_b = a.string();
    corr.out_csv = (dir / "self.csv").string();
    CHECK(run_correlate(corr) == doctest::Approx(1.0).epsilon(1e-12));

    // disjoint ids
    fs::path c = dir / "c.csv";
    {
        std::ofstream out(c);
        out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
        out << "other,10,1,0.1,0,1\n";
    }
    corr.results_b = c.string();
    corr.out_csv = (dir / "disjoint.csv").string();
    CHECK_THROWS_AS(run_correlate(corr), std::invalid_argument);

    // degenerate variance (all p equal) fails with a clear error, not a crash
    fs::path d = dir / "d.csv";
    {
        std::ofstream out(d);
        out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
        out << "x,10,10,1,0.72,1\nY,10,10,1,0.72,1\nz,10,10,1,0.72,1\n";
    }
    corr.results_a = d.string();
    corr.results_b = d.string();
    corr.out_csv = (dir / "degenerate.csv").string();
    CHECK_THROWS_AS(run_correlate(corr), std::invalid_argument);
}

TEST_CASE("minima command writes a parseable catalog") {
    fs::path dir = fresh_dir("minima");
    auto paths = run_gen(small_suite(dir, 1, 5));

    MinimaOptions minima;
    minima.instance_file = paths[0];
    minima.s_star = 0.31;
    minima.probes = 12;
    minima.sweeps = 1500;
    minima.seed = 9;
    minima.threads = 2;
    minima.out_json = (dir / "catalog.json").string();
    MinimaCatalog catalog = run_minima(minima);

    nlohmann::json j = nlohmann::json::parse(slurp(minima.out_json));
    CHECK(j.at("total_runs").get<int>() == 12);
    CHECK(j.at("s_star").get<double>() == 0.31);
    std::uint64_t total = 0;
    for (const auto& entry : j.at("entries")) total += entry.at("hits").get<std::uint64_t>();
    CHECK(total == 12);
    CHECK(j.at("entries").size() == catalog.entries.size());
    if (catalog.entries.size() >= 2) {
        CHECK(j.contains("branching"));
    } else {
        CHECK(!j.contains("branching"));
    }

    // early freeze: single minimum, no branching section
    minima.s_star = 0.02;
    minima.out_json = (dir / "early.json").string();
    MinimaCatalog early = run_minima(minima);
    CHECK(early.entries.size() == 1);
    nlohmann::json je = nlohmann::json::parse(slurp(minima.out_json));
    CHECK(!je.contains("branching"));
}

TEST_CASE("instance path expansion and thread resolution") {
    fs::path dir = fresh_dir("expand");
    run_gen(small_suite(dir, 2, 1));
    auto files = expand_instance_paths({dir.string()});
    CHECK(files.size() == 2);
    CHECK(files[0] < files[1]);
    CHECK_THROWS_AS(expand_instance_paths({}), std::invalid_argument);

    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}

}  // TEST_SUITE
