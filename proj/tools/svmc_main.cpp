// svmc — classical spin-vector annealing on Chimera-structured Ising
// instances: suite generation, solver campaigns, exact oracles and the
// statistics pipeline.

#include <cstdio>
#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "svmc/cli.hpp"
#include "svmc/schedule.hpp"

int main(int argc, char** argv) {
    CLI::App app{"classical spin-vector annealing on Chimera Ising instances"};
    app.require_subcommand(1);

    svmc::GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a random instance suite");
    cmd_gen->add_option("--rows", gen.rows, "unit-cell rows")->capture_default_str();
    cmd_gen->add_option("--cols", gen.cols, "unit-cell columns")->capture_default_str();
    cmd_gen->add_option("--half", gen.half, "qubits per cell side")->capture_default_str();
    cmd_gen->add_option("--broken", gen.broken_file, "file listing inactive site indices");
    cmd_gen->add_option("--coupling", gen.coupling, "coupling model: pm1 or range<N>")
        ->capture_default_str();
    cmd_gen->add_flag("--fields", gen.with_fields, "draw random local fields as well");
    cmd_gen->add_option("--count", gen.count, "number of instances")->capture_default_str();
    cmd_gen->add_option("--seed", gen.seed, "master seed")->capture_default_str();
    cmd_gen->add_option("--out", gen.out_dir, "output directory")->required();

    svmc::RunOptions run;
    CLI::App* cmd_run = app.add_subcommand("run", "run a solver campaign and grade it");
    cmd_run->add_option("--solver", run.solver, "svmc, sa_o2 or sa_bits")->capture_default_str();
    cmd_run->add_option("instances", run.instances, "instance files or directories")->required();
    cmd_run->add_option("--runs", run.runs_per_instance, "runs per instance")
        ->capture_default_str();
    cmd_run->add_option("--schedule", run.schedule_file,
                        "schedule CSV (default: built-in dw1-approx)");
    cmd_run->add_flag("--allow-nonmonotone", run.allow_nonmonotone,
                      "admit schedules with non-monotone A or B");
    cmd_run->add_option("--temperature", run.temperature, "Metropolis temperature, GHz")
        ->capture_default_str();
    cmd_run->add_option("--sweeps", run.sweeps, "sweeps per run")->capture_default_str();
    cmd_run->add_option("--sa-t-start", run.sa_t_start, "sa_bits ladder start")
        ->capture_default_str();
    cmd_run->add_option("--sa-t-end", run.sa_t_end, "sa_bits ladder end")->capture_default_str();
    cmd_run->add_option("--sa-kind", run.sa_kind, "sa_bits ladder shape: linear or geometric")
        ->capture_default_str();
    cmd_run->add_option("--threads", run.threads, "worker threads (0: $SVMC_THREADS or hardware)")
        ->capture_default_str();
    cmd_run->add_option("--seed", run.seed, "master seed")->capture_default_str();
    cmd_run->add_option("--cache", run.cache_file, "ground-state cache CSV (read and extended)");
    cmd_run->add_option("--out", run.out_csv, "results CSV")->required();

    svmc::StatsOptions stats;
    CLI::App* cmd_stats = app.add_subcommand("stats", "histogram and bimodality of a results CSV");
    cmd_stats->add_option("results", stats.results_csv, "results CSV from `run`")->required();
    cmd_stats->add_option("--bins", stats.bins, "histogram bins")->capture_default_str();
    cmd_stats->add_option("--out", stats.out_csv, "histogram CSV")->required();

    svmc::CorrelateOptions corr;
    CLI::App* cmd_corr = app.add_subcommand("correlate", "Pearson R between two results CSVs");
    cmd_corr->add_option("a", corr.results_a, "first results CSV")->required();
    cmd_corr->add_option("b", corr.results_b, "second results CSV")->required();
    cmd_corr->add_option("--out", corr.out_csv, "paired scatter CSV")->required();

    svmc::MinimaOptions minima;
    CLI::App* cmd_minima = app.add_subcommand("minima", "local-minima catalog at a frozen s*");
    cmd_minima->add_option("instance", minima.instance_file, "instance file")->required();
    cmd_minima->add_option("--s-star", minima.s_star, "anneal fraction to freeze at")
        ->capture_default_str();
    cmd_minima->add_option("--probes", minima.probes, "independent probe anneals")
        ->capture_default_str();
    cmd_minima->add_option("--schedule", minima.schedule_file,
                           "schedule CSV (default: built-in dw1-approx)");
    cmd_minima->add_flag("--allow-nonmonotone", minima.allow_nonmonotone,
                         "admit schedules with non-monotone A or B");
    cmd_minima->add_option("--temperature", minima.temperature, "Metropolis temperature, GHz")
        ->capture_default_str();
    cmd_minima->add_option("--sweeps", minima.sweeps, "sweeps of a full anneal")
        ->capture_default_str();
    cmd_minima->add_option("--threads", minima.threads,
                           "worker threads (0: $SVMC_THREADS or hardware)")
        ->capture_default_str();
    cmd_minima->add_option("--seed", minima.seed, "master seed")->capture_default_str();
    cmd_minima->add_option("--out", minima.out_json, "catalog JSON")->required();

    svmc::ExactOptions exact;
    CLI::App* cmd_exact = app.add_subcommand("exact", "precompute exact ground states");
    cmd_exact->add_option("instances", exact.instances, "instance files or directories")
        ->required();
    cmd_exact->add_option("--out", exact.out_cache, "ground cache CSV")->required();

    CLI::App* cmd_sched = app.add_subcommand("schedule", "write the built-in schedule to a CSV");
    std::string sched_out;
    cmd_sched->add_option("--out", sched_out, "schedule CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) {
            auto paths = svmc::run_gen(gen);
            std::cout << "wrote " << paths.size() << " instances to " << gen.out_dir << "\n";
        } else if (cmd_run->parsed()) {
            auto estimates = svmc::run_run(run);
            std::cout << "graded " << estimates.size() << " instances -> " << run.out_csv << "\n";
        } else if (cmd_stats->parsed()) {
            double score = svmc::run_stats(stats);
            std::cout << "bimodality score: " << score << "\n";
        } else if (cmd_corr->parsed()) {
            double r = svmc::run_correlate(corr);
            std::cout << "pearson R: " << r << "\n";
        } else if (cmd_minima->parsed()) {
            auto catalog = svmc::run_minima(minima);
            std::cout << "catalog size " << catalog.entries.size() << " over "
                      << catalog.total_runs << " probes -> " << minima.out_json << "\n";
        } else if (cmd_exact->parsed()) {
            svmc::run_exact(exact);
            std::cout << "ground cache -> " << exact.out_cache << "\n";
        } else if (cmd_sched->parsed()) {
            svmc::save_schedule(svmc::default_schedule(), sched_out);
            std::cout << "schedule -> " << sched_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
