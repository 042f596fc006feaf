#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqcv/config.hpp"
#include "seqcv/crossval.hpp"
#include "seqcv/csv.hpp"
#include "seqcv/detection.hpp"
#include "seqcv/errors.hpp"
#include "seqcv/experiment.hpp"
#include "seqcv/limit_oracle.hpp"
#include "seqcv/simulation.hpp"
#include "seqcv/smoothing.hpp"

namespace {

using nlohmann::json;
using namespace seqcv;

std::string out_path(const std::string& dir, const char* name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

void announce(const std::string& path) { std::cout << "wrote " << path << '\n'; }

void write_json(const std::string& path, const json& doc) {
    write_text_atomic(path, doc.dump(2) + "\n");
    announce(path);
}

const SmoothSettings& need_smooth(const Config& cfg) {
    if (!cfg.smooth) throw ConfigError("this command needs a 'smooth' config block");
    return *cfg.smooth;
}
const CvPlan& need_cv(const Config& cfg) {
    if (!cfg.cv) throw ConfigError("this command needs a 'cv' config block");
    return *cfg.cv;
}
const LimitSettings& need_limit(const Config& cfg) {
    if (!cfg.limit) throw ConfigError("this command needs a 'limit' config block");
    return *cfg.limit;
}
const ScenarioParams& need_scenario(const Config& cfg) {
    if (!cfg.scenario) throw ConfigError("this command needs a 'scenario' config block");
    return *cfg.scenario;
}
const ErrorModel& need_errors(const Config& cfg) {
    if (!cfg.errors) throw ConfigError("this command needs an 'errors' config block");
    return *cfg.errors;
}
const DetectorSpec& need_detector(const Config& cfg) {
    if (!cfg.detector) throw ConfigError("this command needs a 'detector' config block");
    return *cfg.detector;
}

void cmd_smooth(const Config& cfg, const std::string& input, const std::string& out_dir) {
    const SmoothSettings& st = need_smooth(cfg);
    if (input.empty()) throw ConfigError("smooth needs --input CSV");
    const Series s = make_series(read_column_csv(input));
    const double h = st.bandwidth ? *st.bandwidth
                                  : static_cast<double>(s.horizon) / *st.xi;
    if (s.length() < 2) throw DataError("smooth needs at least 2 observations");

    const WeightTable table = make_weight_table(cfg.kernel, h, s.length() - 1);
    std::vector<double> pred;
    loo_predictions_tabled(s.values, s.length(), table, pred);
    CsvWriter csv({"i", "y", "prediction", "smoother"});
    for (long i = 2; i <= s.length(); ++i)
        csv.row_raw({std::to_string(i), format_double(s.at1(i)), format_double(pred[i]),
                     format_double(smoother_normed_tabled(s.values, i, table))});
    const std::string path = out_path(out_dir, "smooth.csv");
    csv.write(path);
    announce(path);
}

void cmd_cv(const Config& cfg, const std::string& input, const std::string& out_dir) {
    const CvPlan& plan = need_cv(cfg);
    if (input.empty()) throw ConfigError("cv needs --input CSV");
    if (plan.checkpoints.empty())
        throw ConfigError("cv needs at least one checkpoint in the config");
    const Series s = make_series(read_column_csv(input));
    const ScheduleResult sched = run_schedule(s, cfg.kernel, plan);

    CsvWriter surface({"s", "xi", "objective"});
    for (const CvSelection& sel : sched.checkpoints)
        for (std::size_t g = 0; g < plan.xi_grid.size(); ++g)
            surface.row({sel.s, plan.xi_grid[g], sel.objectives[g]});
    const std::string surface_path = out_path(out_dir, "cv_surface.csv");
    surface.write(surface_path);
    announce(surface_path);

    json results = json::array();
    for (const CvSelection& sel : sched.checkpoints) {
        json r{{"s", sel.s},
               {"index", sel.index},
               {"xi_star", sel.xi_star},
               {"h_star", sel.h_star},
               {"tie", sel.tie}};
        if (sel.tie) r["note"] = "tied objectives resolved to the smallest xi";
        if (sel.refined_xi) r["refined_xi"] = *sel.refined_xi;
        results.push_back(r);
    }
    write_json(out_path(out_dir, "cv_result.json"),
               json{{"horizon", s.horizon}, {"kernel", cfg.kernel.name()}, {"results", results}});
}

void cmd_limit(const Config& cfg, const std::string& out_dir) {
    const LimitSettings& ls = need_limit(cfg);
    const std::size_t nx = ls.xi_values.size();
    const std::size_t ns = ls.s_values.size();
    std::vector<double> values(nx * ns);
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < static_cast<long>(nx * ns); ++idx) {
        const std::size_t si = static_cast<std::size_t>(idx) / nx;
        const std::size_t xi = static_cast<std::size_t>(idx) % nx;
        values[static_cast<std::size_t>(idx)] =
            limit_objective(ls.spec, ls.xi_values[xi], ls.s_values[si]);
    }
    const char* mode = ls.spec.mode == LimitMode::self_consistent ? "self_consistent"
                                                                  : "as_printed";
    CsvWriter csv({"xi", "s", "objective", "mode"});
    for (std::size_t si = 0; si < ns; ++si)
        for (std::size_t xi = 0; xi < nx; ++xi)
            csv.row_raw({format_double(ls.xi_values[xi]), format_double(ls.s_values[si]),
                         format_double(values[si * nx + xi]), mode});
    const std::string path = out_path(out_dir, "limit.csv");
    csv.write(path);
    announce(path);
}

void cmd_calibrate(const Config& cfg, const std::string& out_dir) {
    if (!cfg.calibrate) throw ConfigError("this command needs a 'calibrate' config block");
    const Calibration cal =
        calibrate_control_limit(need_scenario(cfg), need_errors(cfg), need_detector(cfg),
                                cfg.calibrate->target_arl0, cfg.calibrate->replications, cfg.seed);
    write_json(out_path(out_dir, "calibrate.json"),
               json{{"control_limit", cal.control_limit},
                    {"achieved_arl", cal.achieved_arl},
                    {"standard_error", cal.standard_error},
                    {"censored_frac", cal.censored_frac},
                    {"bisection_steps", cal.bisection_steps},
                    {"replications", cal.replications},
                    {"target_arl0", cfg.calibrate->target_arl0},
                    {"seed", cfg.seed}});
}

void cmd_monitor(const Config& cfg, const std::string& out_dir) {
    const ScenarioParams& params = need_scenario(cfg);
    const Series s = simulate_scenario(params, need_errors(cfg), cfg.seed);
    const DetectorSpec& spec = need_detector(cfg);
    const RunResult run = run_detector(s, spec);

    CsvWriter csv({"i", "y", "true_mean", "smoother", "bandwidth", "control_limit"});
    for (long i = 1; i <= s.length(); ++i)
        csv.row_raw({std::to_string(i), format_double(s.at1(i)),
                     format_double(mean_path(params, i)), format_double(run.path[i - 1]),
                     format_double(run.bandwidth_path[i - 1]),
                     format_double(spec.control_limit)});
    const std::string path = out_path(out_dir, "monitor_path.csv");
    csv.write(path);
    announce(path);

    json summary{{"start_index", run.start_index},
                 {"control_limit", spec.control_limit},
                 {"censored", run.censored()},
                 {"seed", cfg.seed}};
    summary["signal_index"] = run.signal_index ? json(*run.signal_index) : json(nullptr);
    write_json(out_path(out_dir, "monitor.json"), summary);
}

void cmd_simulate(const Config& cfg, const std::string& out_dir) {
    const ScenarioParams& params = need_scenario(cfg);
    const ErrorModel& model = need_errors(cfg);
    const SimulateSettings sim = cfg.simulate.value_or(SimulateSettings{});

    if (!sim.deltas.empty()) {
        const std::vector<DelayRow> rows = run_experiment(sim.deltas, params, model,
                                                          need_detector(cfg), sim.replications,
                                                          cfg.seed);
        CsvWriter csv({"delta", "mean_delay", "se", "censored_frac"});
        for (const DelayRow& r : rows)
            csv.row({r.delta, r.mean_delay, r.standard_error, r.censored_frac});
        const std::string path = out_path(out_dir, "delay_table.csv");
        csv.write(path);
        announce(path);
        return;
    }

    CsvWriter csv({"rep", "i", "y"});
    for (int rep = 0; rep < sim.replications; ++rep) {
        const Series s = simulate_scenario(params, model, cfg.seed,
                                           static_cast<std::uint64_t>(rep));
        for (long i = 1; i <= s.length(); ++i)
            csv.row_raw({std::to_string(rep), std::to_string(i), format_double(s.at1(i))});
    }
    const std::string path = out_path(out_dir, "simulate.csv");
    csv.write(path);
    announce(path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided kernel smoothing with sequential cross-validated bandwidths, "
                 "asymptotic objective quadrature and run-length monitoring"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string input;
    long long seed_override = -1;
    int threads = 0;
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--input", input, "input series CSV (smooth and cv)");
    app.add_option("--seed", seed_override, "override the config seed")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--threads", threads, "worker thread count; affects speed, never output");

    CLI::App* sub_smooth = app.add_subcommand("smooth", "one-step predictions and smoother path");
    CLI::App* sub_cv = app.add_subcommand("cv", "cross-validated bandwidth selection");
    CLI::App* sub_limit = app.add_subcommand("limit", "asymptotic objective over (xi, s) grids");
    CLI::App* sub_calibrate =
        app.add_subcommand("calibrate", "control-limit calibration to a target run length");
    CLI::App* sub_monitor = app.add_subcommand("monitor", "simulate one path and run the detector");
    CLI::App* sub_simulate = app.add_subcommand("simulate", "scenario series or delay table");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = load_config(config_path);
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
#ifdef _OPENMP
        if (threads > 0) omp_set_num_threads(threads);
#endif
        if (sub_smooth->parsed()) cmd_smooth(cfg, input, out_dir);
        else if (sub_cv->parsed()) cmd_cv(cfg, input, out_dir);
        else if (sub_limit->parsed()) cmd_limit(cfg, out_dir);
        else if (sub_calibrate->parsed()) cmd_calibrate(cfg, out_dir);
        else if (sub_monitor->parsed()) cmd_monitor(cfg, out_dir);
        else if (sub_simulate->parsed()) cmd_simulate(cfg, out_dir);
        return static_cast<int>(ExitCode::ok);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return static_cast<int>(ExitCode::config);
    } catch (const DataError& e) {
        std::cerr << e.what() << '\n';
        return static_cast<int>(ExitCode::data);
    } catch (const CalibrationError& e) {
        std::cerr << e.what() << '\n';
        return static_cast<int>(ExitCode::calibration);
    } catch (const NumericError& e) {
        std::cerr << e.what() << '\n';
        return static_cast<int>(ExitCode::numeric);
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << '\n';
        return static_cast<int>(ExitCode::failure);
    }
}
