// Command-line front end: detection plus the simulation, gap, trajectory, and
// timing experiments. Every experiment writes deterministic CSV/JSON under
// --out, suitable for external plotting.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pda/baselines.hpp"
#include "pda/detector.hpp"
#include "pda/eval.hpp"
#include "pda/experiments.hpp"
#include "pda/gap_lab.hpp"
#include "pda/io.hpp"
#include "pda/parallel.hpp"
#include "pda/rng.hpp"
#include "pda/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string out = "pda-out";
    unsigned threads = pda::default_threads();
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--threads", opts.threads, "Worker threads (default: cores)")
        ->check(CLI::PositiveNumber);
}

std::string format_stat(const pda::AucStat& stat) {
    return pda::io::format_double(stat.mean) + " +/- " + pda::io::format_double(stat.se);
}

void write_json(const fs::path& path, const json& doc) {
    pda::io::write_text_atomic(path, doc.dump(2) + "\n");
}

// ---- detect -------------------------------------------------------------------

struct DetectOpts {
    CommonOpts common;
    std::string criteria_manifest;
    std::string labels_file;
    std::string save_model_dir;
    std::string load_model_dir;
    std::string sorter = "jensen";
    std::string depth = "exact";
    std::vector<int> k_override;
};

int run_detect(const DetectOpts& opt) {
    pda::PdaModel model;
    std::vector<std::string> names;
    pda::io::StackManifest manifest;

    if (!opt.load_model_dir.empty()) {
        auto loaded = pda::io::load_model(opt.load_model_dir);
        model = std::move(loaded.model);
        names = std::move(loaded.criterion_names);
        manifest = pda::io::read_stack_manifest(opt.criteria_manifest);
    } else {
        manifest = pda::io::read_stack_manifest(opt.criteria_manifest);
        names = manifest.names;
        auto stack = pda::io::load_stack(manifest);
        model = pda::train(std::move(stack), pda::sorter_from_string(opt.sorter),
                           opt.k_override);
    }

    const auto mode = opt.depth == "accelerated" ? pda::DepthMode::accelerated
                                                 : pda::DepthMode::exact;
    const auto tests = pda::io::load_test_rows(manifest, model.train_size());
    std::vector<double> scores(tests.size());
    pda::parallel_for(tests.size(), opt.common.threads, [&](std::size_t t) {
        scores[t] = pda::score(model, tests[t], mode).value;
    });

    const fs::path out(opt.common.out);
    std::string csv = "sample_id,score\n";
    for (std::size_t t = 0; t < scores.size(); ++t) {
        csv += std::to_string(t) + "," + pda::io::format_double(scores[t]) + "\n";
    }
    pda::io::write_text_atomic(out / "scores.csv", csv);

    json summary;
    summary["n_train"] = model.train_size();
    summary["criteria"] = names;
    summary["k"] = model.neighbor_counts;
    summary["fronts"] = model.front_count();
    summary["sorter"] = std::string(pda::to_string(model.sorter));
    summary["depth_mode"] = opt.depth;
    summary["n_test"] = tests.size();
    if (!opt.labels_file.empty()) {
        const auto labels =
            pda::io::labels_from_csv(pda::io::read_text(opt.labels_file));
        summary["auc"] = pda::auc(scores, labels);
        const auto roc = pda::roc_curve(scores, labels);
        std::string roc_csv = "fpr,tpr\n";
        for (std::size_t i = 0; i < roc.fpr.size(); ++i) {
            roc_csv += pda::io::format_double(roc.fpr[i]) + "," +
                       pda::io::format_double(roc.tpr[i]) + "\n";
        }
        pda::io::write_text_atomic(out / "roc.csv", roc_csv);
    }
    write_json(out / "summary.json", summary);

    if (!opt.save_model_dir.empty()) {
        pda::io::save_model(opt.save_model_dir, model, names);
    }
    return 0;
}

// ---- simulate-categorical -------------------------------------------------------

struct SimulateOpts {
    CommonOpts common;
    pda::CategoricalExperimentConfig cfg;
    std::string sorter = "jensen";
    bool dump_scores = false;
    bool dump_dataset = false;
};

int run_simulate(SimulateOpts& opt) {
    opt.cfg.threads = opt.common.threads;
    opt.cfg.sorter = pda::sorter_from_string(opt.sorter);
    opt.cfg.capture_run0_scores = opt.dump_scores;
    const auto result = pda::run_categorical_experiment(opt.cfg);

    const fs::path out(opt.common.out);
    std::string table = "method,median_auc_mean,median_auc_se,best_auc_mean,best_auc_se\n";
    const auto pda_stat = result.pda_stat();
    table += "pda," + pda::io::format_double(pda_stat.mean) + "," +
             pda::io::format_double(pda_stat.se) + "," +
             pda::io::format_double(pda_stat.mean) + "," +
             pda::io::format_double(pda_stat.se) + "\n";
    json summary;
    summary["runs"] = opt.cfg.runs;
    summary["weights"] = opt.cfg.weights;
    summary["criteria"] = opt.cfg.criteria;
    summary["pda"] = {{"mean", pda_stat.mean}, {"se", pda_stat.se}};
    for (const auto& method : opt.cfg.methods) {
        const auto median = result.method_median_stat(method);
        const auto best = result.method_best_stat(method);
        const auto mean = result.method_mean_stat(method);
        table += method + "," + pda::io::format_double(median.mean) + "," +
                 pda::io::format_double(median.se) + "," +
                 pda::io::format_double(best.mean) + "," +
                 pda::io::format_double(best.se) + "\n";
        summary[method] = {{"median", median.mean},
                           {"median_se", median.se},
                           {"best", best.mean},
                           {"best_se", best.se},
                           {"mean", mean.mean},
                           {"se", mean.se},
                           {"pda_wins_over_median", result.wins_over_median(method)}};
    }
    pda::io::write_text_atomic(out / "table.csv", table);

    if (opt.dump_scores) {
        // Per-weight raw scores of the first run.
        std::string csv = "method,weight_id,sample_id,score,label\n";
        auto append = [&](const std::string& method, std::size_t weight_id,
                          const std::vector<double>& scores) {
            for (std::size_t s = 0; s < scores.size(); ++s) {
                csv += method + "," + std::to_string(weight_id) + "," +
                       std::to_string(s) + "," + pda::io::format_double(scores[s]) +
                       "," + (result.run0.labels[s] ? "1" : "0") + "\n";
            }
        };
        append("pda", 0, result.run0.pda);
        for (const auto& [method, per_weight] : result.run0.baselines) {
            for (std::size_t w = 0; w < per_weight.size(); ++w) {
                append(method, w, per_weight[w]);
            }
        }
        pda::io::write_text_atomic(out / "baseline_scores.csv", csv);
    }
    if (opt.dump_dataset) {
        // The generator inputs of the first run.
        pda::CategoricalConfig gen;
        gen.groups = opt.cfg.criteria;
        gen.n_train = opt.cfg.n_train;
        gen.n_test = opt.cfg.n_test;
        gen.seed = pda::derive_seed(opt.cfg.seed, 1000);
        const auto sim = pda::gen_categorical_dataset(gen);
        pda::io::write_categorical_csv(out / "train.csv", out / "train_schema.json",
                                       sim.train);
        pda::io::write_categorical_csv(out / "test.csv", out / "test_schema.json",
                                       sim.test);
    }

    // Mean per-weight-rank profile across runs, worst to best.
    std::string profile = "method,weight_rank,auc\n";
    for (const auto& method : opt.cfg.methods) {
        std::vector<double> mean_profile(opt.cfg.weights, 0.0);
        for (const auto& run : result.runs) {
            const auto& sorted = run.profiles.at(method);
            for (std::size_t i = 0; i < sorted.size(); ++i) mean_profile[i] += sorted[i];
        }
        for (std::size_t i = 0; i < mean_profile.size(); ++i) {
            mean_profile[i] /= static_cast<double>(result.runs.size());
            profile += method + "," + std::to_string(i) + "," +
                       pda::io::format_double(mean_profile[i]) + "\n";
        }
    }
    pda::io::write_text_atomic(out / "auc_profile.csv", profile);
    write_json(out / "summary.json", summary);
    std::printf("pda mean auc %s over %d runs\n", format_stat(pda_stat).c_str(),
                opt.cfg.runs);
    return 0;
}

// ---- gap -------------------------------------------------------------------------

struct GapOpts {
    CommonOpts common;
    std::string mode = "growth";
    std::string generator = "dyads";
    int d = 2;
    std::vector<std::size_t> n_grid;
    std::vector<int> dims = {2, 3, 4, 5};
    std::size_t n_target = 100128;
    int realizations = 100;
    std::uint64_t seed = 0;
};

int run_gap(const GapOpts& opt) {
    const fs::path out(opt.common.out);
    const auto generator = pda::gap_generator_from_string(opt.generator);
    if (opt.mode == "growth") {
        pda::GapGrowthConfig cfg;
        cfg.d = opt.d;
        cfg.n_grid = opt.n_grid.empty()
                         ? std::vector<std::size_t>{10000, 31623, 100000, 316228, 1000000}
                         : opt.n_grid;
        cfg.realizations = opt.realizations;
        cfg.generator = generator;
        cfg.seed = opt.seed;
        cfg.threads = opt.common.threads;
        const auto result = pda::run_gap_growth(cfg);

        std::string csv = "n,mean_gap,se,realizations\n";
        for (const auto& row : result.rows) {
            csv += std::to_string(row.n) + "," + pda::io::format_double(row.mean_gap) +
                   "," + pda::io::format_double(row.se) + "," +
                   std::to_string(row.realizations) + "\n";
        }
        pda::io::write_text_atomic(out / "gap_vs_n.csv", csv);

        json summary;
        summary["d"] = cfg.d;
        summary["generator"] = opt.generator;
        summary["realizations"] = cfg.realizations;
        summary["alpha_no_intercept"] = result.alpha_no_intercept;
        summary["alpha_with_intercept"] = result.alpha_with_intercept;
        summary["intercept"] = result.intercept;
        summary["lp_flagged"] = result.accounting.flagged;
        summary["lp_candidates"] = result.accounting.candidates;
        write_json(out / "summary.json", summary);
        std::printf("alpha (no intercept) = %s, alpha (with intercept) = %s\n",
                    pda::io::format_double(result.alpha_no_intercept).c_str(),
                    pda::io::format_double(result.alpha_with_intercept).c_str());
        return 0;
    }
    if (opt.mode == "dims") {
        pda::GapDimsConfig cfg;
        cfg.dims = opt.dims;
        cfg.n_target = opt.n_target;
        cfg.realizations = opt.realizations;
        cfg.generator = generator;
        cfg.seed = opt.seed;
        cfg.threads = opt.common.threads;
        const auto result = pda::run_gap_dims(cfg);

        std::string csv = "d,mean_ratio,se,lower_bound,upper_bound\n";
        for (const auto& row : result.rows) {
            csv += std::to_string(row.d) + "," + pda::io::format_double(row.mean_ratio) +
                   "," + pda::io::format_double(row.se) + "," +
                   pda::io::format_double(row.lower_bound) + "," +
                   pda::io::format_double(row.upper_bound) + "\n";
        }
        pda::io::write_text_atomic(out / "gap_vs_d.csv", csv);

        json summary;
        summary["n_target"] = cfg.n_target;
        summary["realizations"] = cfg.realizations;
        summary["lp_flagged"] = result.accounting.flagged;
        summary["lp_candidates"] = result.accounting.candidates;
        write_json(out / "summary.json", summary);
        return 0;
    }
    throw CLI::ValidationError("--mode must be growth or dims");
}

// ---- trajectories ------------------------------------------------------------------

struct TrajectoryOpts {
    CommonOpts common;
    bool synthetic = false;
    std::string input_file;
    std::string train_file;
    std::string test_file;
    std::string labels_file;
    pda::TrajectoryExperimentConfig cfg;
    std::string sorter = "jensen";
};

int run_trajectories(TrajectoryOpts& opt) {
    const fs::path out(opt.common.out);
    opt.cfg.threads = opt.common.threads;
    opt.cfg.sorter = pda::sorter_from_string(opt.sorter);

    if (opt.synthetic) {
        const auto result = pda::run_trajectory_experiment(opt.cfg);
        const auto stat = result.pda_stat();

        json summary;
        summary["runs"] = opt.cfg.runs;
        summary["pda"] = {{"mean", stat.mean}, {"se", stat.se}};
        summary["wins_over_median_all_methods"] = result.wins_over_median_all_methods();
        summary["k_heuristic_first_run"] = result.runs.front().k;
        summary["best_grid_auc"] = result.best_grid_auc();
        for (const auto& method : pda::kBaselineMethods) {
            std::vector<double> medians, bests;
            for (const auto& run : result.runs) {
                medians.push_back(run.baselines.at(method).median_auc);
                bests.push_back(run.baselines.at(method).best_auc);
            }
            summary[method] = {{"median", pda::aggregate_aucs(medians).mean},
                               {"best", pda::aggregate_aucs(bests).mean}};
        }
        write_json(out / "summary.json", summary);

        const auto grid = result.mean_grid();
        if (!grid.empty()) {
            const int span = opt.cfg.k_grid_max - opt.cfg.k_grid_min + 1;
            std::string csv = "k1,k2,auc\n";
            for (int k1 = 0; k1 < span; ++k1) {
                for (int k2 = 0; k2 < span; ++k2) {
                    csv += std::to_string(k1 + opt.cfg.k_grid_min) + "," +
                           std::to_string(k2 + opt.cfg.k_grid_min) + "," +
                           pda::io::format_double(grid[k1 * span + k2]) + "\n";
                }
            }
            pda::io::write_text_atomic(out / "k_grid.csv", csv);
        }
        std::printf("pda mean auc %s over %d runs\n", format_stat(stat).c_str(),
                    opt.cfg.runs);
        return 0;
    }

    // Real-data path: either an unlabeled corpus scored against itself, or an
    // explicit train/test split.
    std::vector<pda::Trajectory> train_trajs, test_trajs;
    if (!opt.input_file.empty()) {
        train_trajs = pda::io::read_trajectories_csv(opt.input_file);
        test_trajs = train_trajs;
    } else {
        train_trajs = pda::io::read_trajectories_csv(opt.train_file);
        test_trajs = pda::io::read_trajectories_csv(opt.test_file);
    }
    const auto crit = pda::trajectory_criteria(train_trajs, opt.cfg.bins);
    const auto stack = pda::trajectory_stack(train_trajs, crit, opt.common.threads);
    auto model = pda::train(pda::DissimilarityStack(stack), opt.cfg.sorter);

    std::vector<double> scores(test_trajs.size());
    pda::parallel_for(test_trajs.size(), opt.common.threads, [&](std::size_t t) {
        const auto rows = pda::trajectory_test_dissims(train_trajs, crit, test_trajs[t]);
        scores[t] = pda::score(model, rows, opt.cfg.depth_mode).value;
    });

    std::string csv = "sample_id,score\n";
    for (std::size_t t = 0; t < scores.size(); ++t) {
        csv += std::to_string(t) + "," + pda::io::format_double(scores[t]) + "\n";
    }
    pda::io::write_text_atomic(out / "scores.csv", csv);

    json summary;
    summary["n_train"] = train_trajs.size();
    summary["n_test"] = test_trajs.size();
    summary["k"] = model.neighbor_counts;
    summary["fronts"] = model.front_count();
    summary["criteria"] = {pda::kSpeedCriterionName, pda::kShapeCriterionName};
    if (!opt.labels_file.empty()) {
        const auto labels =
            pda::io::labels_from_csv(pda::io::read_text(opt.labels_file));
        summary["auc"] = pda::auc(scores, labels);
    }
    write_json(out / "summary.json", summary);
    return 0;
}

// ---- bench -------------------------------------------------------------------------

struct BenchOpts {
    CommonOpts common;
    pda::BenchConfig cfg;
    std::string sorter = "jensen";
};

int run_bench_cmd(BenchOpts& opt) {
    opt.cfg.sorter = pda::sorter_from_string(opt.sorter);
    if (opt.cfg.n_grid.empty() && opt.cfg.k_grid.empty()) {
        opt.cfg.n_grid = {100, 178, 316, 562, 1000};
    }
    const auto result = pda::run_bench(opt.cfg);
    const fs::path out(opt.common.out);

    if (!result.by_n.empty()) {
        std::string csv = "n,median_seconds,normalized\n";
        for (const auto& row : result.by_n) {
            csv += pda::io::format_double(row.x) + "," +
                   pda::io::format_double(row.median_seconds) + "," +
                   pda::io::format_double(row.normalized) + "\n";
        }
        pda::io::write_text_atomic(out / "bench_n.csv", csv);
    }
    if (!result.by_k.empty()) {
        std::string csv = "k,median_seconds,normalized\n";
        for (const auto& row : result.by_k) {
            csv += pda::io::format_double(row.x) + "," +
                   pda::io::format_double(row.median_seconds) + "," +
                   pda::io::format_double(row.normalized) + "\n";
        }
        pda::io::write_text_atomic(out / "bench_k.csv", csv);
    }
    json summary;
    summary["sorter"] = std::string(pda::to_string(opt.cfg.sorter));
    summary["repetitions"] = opt.cfg.repetitions;
    if (!result.by_n.empty()) summary["loglog_slope_n"] = result.loglog_slope_n;
    write_json(out / "summary.json", summary);
    if (!result.by_n.empty()) {
        std::printf("fitted log-log slope vs N: %s\n",
                    pda::io::format_double(result.loglog_slope_n).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto depth analysis anomaly detection toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Key-value config file; flags override file values");
    app.allow_config_extras(false);

    DetectOpts detect_opts;
    auto* detect = app.add_subcommand("detect", "Train on a stack and score test samples");
    add_common(detect, detect_opts.common);
    detect->add_option("--criteria", detect_opts.criteria_manifest,
                       "Stack manifest JSON naming each criterion")
        ->required();
    detect->add_option("--labels", detect_opts.labels_file,
                       "Optional test labels CSV for AUC/ROC output");
    detect->add_option("--sorter", detect_opts.sorter, "deb or jensen")
        ->check(CLI::IsMember({"deb", "jensen"}));
    detect->add_option("--depth", detect_opts.depth, "exact or accelerated")
        ->check(CLI::IsMember({"exact", "accelerated"}));
    detect->add_option("--k", detect_opts.k_override,
                       "Override the per-criterion neighbor counts")
        ->delimiter(',');
    detect->add_option("--save-model", detect_opts.save_model_dir,
                       "Persist the trained model to this directory");
    detect->add_option("--load-model", detect_opts.load_model_dir,
                       "Load a persisted model instead of training");

    SimulateOpts sim_opts;
    auto* simulate =
        app.add_subcommand("simulate-categorical", "Categorical mixture experiment");
    add_common(simulate, sim_opts.common);
    simulate->add_option("--K", sim_opts.cfg.criteria, "Criterion count")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--n-train", sim_opts.cfg.n_train, "Training samples");
    simulate->add_option("--n-test", sim_opts.cfg.n_test, "Test samples");
    simulate->add_option("--weights", sim_opts.cfg.weights, "Sampled simplex weights");
    simulate->add_option("--runs", sim_opts.cfg.runs, "Simulation runs")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--baseline-k", sim_opts.cfg.baseline_k, "Baseline neighbor count");
    simulate->add_option("--sorter", sim_opts.sorter, "deb or jensen")
        ->check(CLI::IsMember({"deb", "jensen"}));
    simulate->add_option("--seed", sim_opts.cfg.seed, "Master seed")->required();
    simulate->add_flag("--dump-scores", sim_opts.dump_scores,
                       "Write per-weight baseline scores for the first run");
    simulate->add_flag("--dump-dataset", sim_opts.dump_dataset,
                       "Write the first run's dataset as CSV");

    GapOpts gap_opts;
    auto* gap = app.add_subcommand("gap", "Scalarization gap experiments");
    add_common(gap, gap_opts.common);
    gap->add_option("--mode", gap_opts.mode, "growth (vs n) or dims (vs d)")
        ->check(CLI::IsMember({"growth", "dims"}));
    gap->add_option("--d", gap_opts.d, "Dimension for growth mode");
    gap->add_option("--n-grid", gap_opts.n_grid, "Dyad counts for growth mode")
        ->delimiter(',');
    gap->add_option("--dims", gap_opts.dims, "Dimensions for dims mode")->delimiter(',');
    gap->add_option("--n-target", gap_opts.n_target, "Dyad count for dims mode");
    gap->add_option("--realizations", gap_opts.realizations, "Monte Carlo realizations")
        ->check(CLI::PositiveNumber);
    gap->add_option("--generator", gap_opts.generator, "dyads, uniform, or linear")
        ->check(CLI::IsMember({"dyads", "uniform", "linear"}));
    gap->add_option("--seed", gap_opts.seed, "Master seed")->required();

    TrajectoryOpts traj_opts;
    auto* traj = app.add_subcommand("trajectories", "Two-criterion trajectory pipeline");
    add_common(traj, traj_opts.common);
    traj->add_flag("--synthetic", traj_opts.synthetic, "Run the synthetic experiment");
    traj->add_option("--input", traj_opts.input_file,
                     "Trajectory CSV scored against itself");
    traj->add_option("--train", traj_opts.train_file, "Training trajectory CSV");
    traj->add_option("--test", traj_opts.test_file, "Test trajectory CSV");
    traj->add_option("--test-labels", traj_opts.labels_file, "Test labels CSV");
    traj->add_option("--runs", traj_opts.cfg.runs, "Synthetic runs")
        ->check(CLI::PositiveNumber);
    traj->add_option("--n-train", traj_opts.cfg.n_train, "Synthetic training size");
    traj->add_option("--weights", traj_opts.cfg.weight_grid, "2D weight grid size");
    traj->add_option("--k-grid-min", traj_opts.cfg.k_grid_min, "Sensitivity grid lower k");
    traj->add_option("--k-grid-max", traj_opts.cfg.k_grid_max, "Sensitivity grid upper k");
    traj->add_option("--sorter", traj_opts.sorter, "deb or jensen")
        ->check(CLI::IsMember({"deb", "jensen"}));
    traj->add_option("--seed", traj_opts.cfg.seed, "Master seed (synthetic mode)");

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand("bench", "Training-time scaling benchmark");
    add_common(bench, bench_opts.common);
    bench->add_option("--sorter", bench_opts.sorter, "deb or jensen")
        ->check(CLI::IsMember({"deb", "jensen"}));
    bench->add_option("--n-grid", bench_opts.cfg.n_grid, "Training sizes")->delimiter(',');
    bench->add_option("--k-grid", bench_opts.cfg.k_grid, "Criterion counts")
        ->delimiter(',');
    bench->add_option("--n-for-k", bench_opts.cfg.n_for_k, "Training size for the K sweep");
    bench->add_option("--reps", bench_opts.cfg.repetitions, "Repetitions per grid point")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_opts.cfg.seed, "Master seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    }

    try {
        if (detect->parsed()) return run_detect(detect_opts);
        if (simulate->parsed()) return run_simulate(sim_opts);
        if (gap->parsed()) return run_gap(gap_opts);
        if (traj->parsed()) {
            if (!traj_opts.synthetic && traj_opts.input_file.empty() &&
                (traj_opts.train_file.empty() || traj_opts.test_file.empty())) {
                std::fprintf(stderr,
                             "usage error: need --synthetic, --input, or --train/--test\n");
                return 2;
            }
            return run_trajectories(traj_opts);
        }
        if (bench->parsed()) return run_bench_cmd(bench_opts);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
