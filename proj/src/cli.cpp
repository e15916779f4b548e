#include "svmc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "svmc/baselines.hpp"
#include "svmc/oracle.hpp"
#include "svmc/text.hpp"

namespace svmc {

namespace fs = std::filesystem;

namespace {

CouplingModel parse_coupling(const std::string& name) {
    CouplingModel model;
    if (name == "pm1") return model;
    if (name.rfind("range", 0) == 0) {
        model.kind = CouplingModel::Kind::range;
        model.levels = static_cast<int>(parse_int(name.substr(5), "coupling levels"));
        if (model.levels < 1) throw std::invalid_argument("coupling levels must be >= 1");
        return model;
    }
    throw std::invalid_argument("unknown coupling model: " + name +
                                " (expected pm1 or range<N>)");
}

std::set<int> read_broken_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open broken mask file: " + path);
    std::set<int> broken;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = strip_cr(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        for (std::string_view tok : split_ws(line)) {
            broken.insert(static_cast<int>(parse_int(tok, "broken site")));
        }
    }
    return broken;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

AnnealSchedule load_or_default_schedule(const std::string& schedule_file,
                                        bool allow_nonmonotone) {
    if (schedule_file.empty()) return default_schedule();
    return load_schedule(schedule_file, !allow_nonmonotone);
}

std::string schedule_label(const std::string& schedule_file) {
    return schedule_file.empty() ? std::string("builtin-dw1-approx") : schedule_file;
}

enum class Solver { svmc, sa_o2, sa_bits };

Solver parse_solver(const std::string& name) {
    if (name == "svmc") return Solver::svmc;
    if (name == "sa_o2") return Solver::sa_o2;
    if (name == "sa_bits") return Solver::sa_bits;
    throw std::invalid_argument("unknown solver: " + name + " (expected svmc, sa_o2 or sa_bits)");
}

TempLadder::Kind parse_ladder_kind(const std::string& name) {
    if (name == "linear") return TempLadder::Kind::linear;
    if (name == "geometric") return TempLadder::Kind::geometric;
    throw std::invalid_argument("unknown ladder kind: " + name);
}

/// index -> worker pool; tasks pull indices from an atomic counter, results
/// land in preallocated slots, so output order never depends on scheduling.
void parallel_for(int n_tasks, int threads, const std::function<void(int)>& task) {
    if (threads <= 1 || n_tasks <= 1) {
        for (int t = 0; t < n_tasks; ++t) task(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int n_workers = std::min(threads, n_tasks);
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (int t = next.fetch_add(1); t < n_tasks; t = next.fetch_add(1)) task(t);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SVMC_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<std::string> expand_instance_paths(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const std::string& path : paths) {
        if (fs::is_directory(path)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.path().extension() == ".ising") found.push_back(entry.path().string());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(path);
        }
    }
    if (files.empty()) throw std::invalid_argument("no instance files given");
    return files;
}

std::vector<std::string> run_gen(const GenOptions& opts) {
    if (opts.count < 1) throw std::invalid_argument("gen: count must be >= 1");
    if (opts.out_dir.empty()) throw std::invalid_argument("gen: out_dir required");
    ChimeraSpec spec;
    spec.rows = opts.rows;
    spec.cols = opts.cols;
    spec.half = opts.half;
    if (!opts.broken_file.empty()) spec.broken = read_broken_file(opts.broken_file);
    spec.validate();
    CouplingModel model = parse_coupling(opts.coupling);

    fs::create_directories(opts.out_dir);
    std::vector<std::string> paths;
    std::vector<std::string> ids;
    for (int index = 0; index < opts.count; ++index) {
        std::string id = std::to_string(opts.seed) + "-" + std::to_string(index);
        Rng rng(derive_run_seed(opts.seed, "gen", index));
        IsingInstance inst = random_instance(spec, rng, model, opts.with_fields, id);
        std::string path = (fs::path(opts.out_dir) / (id + ".ising")).string();
        write_instance(inst, path);
        paths.push_back(path);
        ids.push_back(id);
    }

    std::string manifest_path = (fs::path(opts.out_dir) / "manifest.csv").string();
    std::ofstream out = open_output(manifest_path);
    out << "# svmc " << kToolVersion << " gen\n";
    out << "# rows=" << opts.rows << " cols=" << opts.cols << " half=" << opts.half
        << " broken=" << spec.broken.size() << " coupling=" << model.name()
        << " fields=" << (opts.with_fields ? 1 : 0) << " count=" << opts.count
        << " seed=" << opts.seed << "\n";
    out << "id,file,sites,active,coupling\n";
    for (int index = 0; index < opts.count; ++index) {
        out << ids[index] << ',' << fs::path(paths[index]).filename().string() << ','
            << spec.total_sites() << ',' << spec.active_count() << ',' << model.name() << "\n";
    }
    finish_output(out, manifest_path);
    return paths;
}

std::vector<SuccessEstimate> run_run(const RunOptions& opts) {
    if (opts.runs_per_instance < 1) {
        throw std::invalid_argument("run: runs_per_instance must be >= 1");
    }
    if (opts.out_csv.empty()) throw std::invalid_argument("run: output csv required");
    Solver solver = parse_solver(opts.solver);
    AnnealSchedule sched = load_or_default_schedule(opts.schedule_file, opts.allow_nonmonotone);

    ModelParams params;
    params.temperature = opts.temperature;
    params.sweeps = opts.sweeps;
    params.validate();
    TempLadder ladder;
    ladder.t_start = opts.sa_t_start;
    ladder.t_end = opts.sa_t_end;
    ladder.kind = parse_ladder_kind(opts.sa_kind);
    ladder.validate();

    std::vector<std::string> files = expand_instance_paths(opts.instances);
    std::vector<IsingInstance> instances;
    instances.reserve(files.size());
    for (const std::string& file : files) instances.push_back(read_instance(file));

    // ground energies: cache hits where possible, exact oracle otherwise
    GroundCache cache;
    bool cache_dirty = false;
    if (!opts.cache_file.empty() && fs::exists(opts.cache_file)) {
        cache = load_ground_cache(opts.cache_file);
    }
    std::vector<double> ground(instances.size());
    for (std::size_t k = 0; k < instances.size(); ++k) {
        auto it = cache.find(instances[k].id());
        if (it != cache.end()) {
            ground[k] = it->second.first;
        } else {
            auto [energy, config] = compute_ground(instances[k]);
            ground[k] = energy;
            cache[instances[k].id()] = {energy, config};
            cache_dirty = true;
        }
    }
    if (!opts.cache_file.empty() && cache_dirty) save_ground_cache(cache, opts.cache_file);

    const int runs = opts.runs_per_instance;
    const int n_tasks = static_cast<int>(instances.size()) * runs;
    std::vector<std::uint8_t> success(n_tasks, 0);
    parallel_for(n_tasks, resolve_threads(opts.threads), [&](int t) {
        const int k = t / runs, run_index = t % runs;
        const IsingInstance& inst = instances[k];
        std::uint64_t run_seed = derive_run_seed(opts.seed, inst.id(), run_index);
        RunRecord rec;
        switch (solver) {
            case Solver::svmc: rec = anneal(inst, sched, params, run_seed); break;
            case Solver::sa_o2: rec = sa_o2(inst, sched, params, run_seed); break;
            case Solver::sa_bits: rec = sa_bits(inst, ladder, params.sweeps, run_seed); break;
        }
        success[t] = is_ground(rec.final_config, inst, ground[k]) ? 1 : 0;
    });

    std::vector<SuccessEstimate> estimates;
    estimates.reserve(instances.size());
    for (std::size_t k = 0; k < instances.size(); ++k) {
        int n_success = 0;
        for (int r = 0; r < runs; ++r) n_success += success[k * runs + r];
        estimates.push_back(make_success_estimate(instances[k].id(), runs, n_success));
    }

    std::ofstream out = open_output(opts.out_csv);
    out << "# svmc " << kToolVersion << " run\n";
    out << "# solver=" << opts.solver << " runs_per_instance=" << runs << " sweeps=" << opts.sweeps
        << " seed=" << opts.seed;
    if (solver == Solver::sa_bits) {
        out << " sa_t_start=" << format_double(opts.sa_t_start)
            << " sa_t_end=" << format_double(opts.sa_t_end) << " sa_kind=" << opts.sa_kind;
    } else {
        out << " temperature=" << format_double(opts.temperature)
            << " schedule=" << schedule_label(opts.schedule_file);
    }
    out << "\n";
    out << "# instances=";
    for (std::size_t k = 0; k < instances.size(); ++k) {
        out << (k ? "," : "") << instances[k].id();
    }
    out << "\n";
    out << "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi\n";
    for (const SuccessEstimate& est : estimates) {
        out << est.instance_id << ',' << est.n_runs << ',' << est.n_success << ','
            << format_double(est.p_hat) << ',' << format_double(est.ci_lo) << ','
            << format_double(est.ci_hi) << "\n";
    }
    finish_output(out, opts.out_csv);
    return estimates;
}

std::vector<SuccessEstimate> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path);
    std::vector<SuccessEstimate> rows;
    std::string raw;
    bool have_header = false;
    while (std::getline(in, raw)) {
        std::string_view line = strip_cr(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            if (line != "instance_id,n_runs,n_success,p_hat,ci_lo,ci_hi") {
                throw std::invalid_argument(path + ": unexpected results header");
            }
            have_header = true;
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() != 6) throw std::invalid_argument(path + ": malformed results row");
        SuccessEstimate est;
        est.instance_id = std::string(fields[0]);
        est.n_runs = static_cast<int>(parse_int(fields[1], "n_runs"));
        est.n_success = static_cast<int>(parse_int(fields[2], "n_success"));
        est.p_hat = parse_double(fields[3], "p_hat");
        est.ci_lo = parse_double(fields[4], "ci_lo");
        est.ci_hi = parse_double(fields[5], "ci_hi");
        rows.push_back(std::move(est));
    }
    if (!have_header) throw std::invalid_argument(path + ": missing results header");
    return rows;
}

double run_stats(const StatsOptions& opts) {
    if (opts.out_csv.empty()) throw std::invalid_argument("stats: output csv required");
    std::vector<SuccessEstimate> rows = read_results_csv(opts.results_csv);
    std::vector<double> p_hats;
    p_hats.reserve(rows.size());
    for (const SuccessEstimate& est : rows) p_hats.push_back(est.p_hat);

    std::vector<std::uint64_t> counts = histogram(p_hats, opts.bins);
    double score = bimodality_score(p_hats);

    std::ofstream out = open_output(opts.out_csv);
    out << "# svmc " << kToolVersion << " stats\n";
    out << "# source=" << opts.results_csv << " bins=" << opts.bins
        << " instances=" << p_hats.size() << "\n";
    out << "# bimodality=" << format_double(score) << "\n";
    out << "bin_lo,bin_hi,count\n";
    for (int b = 0; b < opts.bins; ++b) {
        out << format_double(static_cast<double>(b) / opts.bins) << ','
            << format_double(static_cast<double>(b + 1) / opts.bins) << ',' << counts[b] << "\n";
    }
    finish_output(out, opts.out_csv);
    return score;
}

double run_correlate(const CorrelateOptions& opts) {
    if (opts.out_csv.empty()) throw std::invalid_argument("correlate: output csv required");
    std::vector<SuccessEstimate> rows_a = read_results_csv(opts.results_a);
    std::vector<SuccessEstimate> rows_b = read_results_csv(opts.results_b);
    std::map<std::string, double> by_id;
    for (const SuccessEstimate& est : rows_b) by_id[est.instance_id] = est.p_hat;

    std::vector<std::string> ids;
    std::vector<double> xs, ys;
    for (const SuccessEstimate& est : rows_a) {
        auto it = by_id.find(est.instance_id);
        if (it == by_id.end()) continue;
        ids.push_back(est.instance_id);
        xs.push_back(est.p_hat);
        ys.push_back(it->second);
    }
    if (ids.size() < 2) {
        throw std::invalid_argument("correlate: fewer than 2 overlapping instance ids");
    }
    double r = pearson(xs, ys);  // throws on degenerate variance

    std::ofstream out = open_output(opts.out_csv);
    out << "# svmc " << kToolVersion << " correlate\n";
    out << "# a=" << opts.results_a << " b=" << opts.results_b << " overlap=" << ids.size()
        << "\n";
    out << "# pearson_r=" << format_double(r) << "\n";
    out << "instance_id,p_a,p_b\n";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        out << ids[k] << ',' << format_double(xs[k]) << ',' << format_double(ys[k]) << "\n";
    }
    finish_output(out, opts.out_csv);
    return r;
}

MinimaCatalog run_minima(const MinimaOptions& opts) {
    if (opts.out_json.empty()) throw std::invalid_argument("minima: output json required");
    IsingInstance inst = read_instance(opts.instance_file);
    AnnealSchedule sched = load_or_default_schedule(opts.schedule_file, opts.allow_nonmonotone);
    ModelParams params;
    params.temperature = opts.temperature;
    params.sweeps = opts.sweeps;

    MinimaCatalog catalog = minima_catalog(inst, sched, params, opts.s_star, opts.probes,
                                           opts.seed, resolve_threads(opts.threads));

    nlohmann::json j;
    j["tool"] = std::string("svmc ") + std::string(kToolVersion);
    j["command"] = "minima";
    j["instance"] = inst.id();
    j["s_star"] = catalog.s_star;
    j["sweeps"] = opts.sweeps;
    j["temperature"] = opts.temperature;
    j["schedule"] = schedule_label(opts.schedule_file);
    j["seed"] = opts.seed;
    j["total_runs"] = catalog.total_runs;
    nlohmann::json entries = nlohmann::json::array();
    for (const MinimaCatalogEntry& entry : catalog.entries) {
        entries.push_back({{"config", config_to_string(entry.config)}, {"hits", entry.hits}});
    }
    j["entries"] = std::move(entries);
    if (catalog.entries.size() >= 2) {
        j["branching"] = {
            {"pair", {0, 1}},
            {"sites", branching_diff(catalog.entries[0].config, catalog.entries[1].config)},
        };
    }

    std::ofstream out = open_output(opts.out_json);
    out << j.dump(2) << "\n";
    finish_output(out, opts.out_json);
    return catalog;
}

void run_exact(const ExactOptions& opts) {
    if (opts.out_cache.empty()) throw std::invalid_argument("exact: output cache required");
    std::vector<std::string> files = expand_instance_paths(opts.instances);
    GroundCache cache;
    if (fs::exists(opts.out_cache)) cache = load_ground_cache(opts.out_cache);
    for (const std::string& file : files) {
        IsingInstance inst = read_instance(file);
        if (cache.count(inst.id())) continue;
        auto [energy, config] = compute_ground(inst);
        cache[inst.id()] = {energy, std::move(config)};
    }
    save_ground_cache(cache, opts.out_cache);
}

}  // namespace svmc
