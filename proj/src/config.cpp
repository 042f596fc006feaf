#include "seqcv/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "json.hpp"

#include "seqcv/csv.hpp"

namespace seqcv {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* where, const std::set<std::string>& known) {
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            throw ConfigError(std::string(where) + " has unknown key '" + item.key() + "'");
}

double get_number(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string(where) + " is missing required key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(std::string(where) + "." + key + " must be a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const char* where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(std::string(where) + "." + key + " must be a number");
    return v.get<double>();
}

long get_integer(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string(where) + " is missing required key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string(where) + "." + key + " must be an integer");
    return v.get<long>();
}

std::string get_string(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string(where) + " is missing required key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_string())
        throw ConfigError(std::string(where) + "." + key + " must be a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& obj, const char* where, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string(where) + " is missing required key '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_array())
        throw ConfigError(std::string(where) + "." + key + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number())
            throw ConfigError(std::string(where) + "." + key + " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Kernel parse_kernel(const json& obj) {
    reject_unknown_keys(obj, "kernel", {"name", "scale"});
    Kernel k = Kernel::from_name(get_string(obj, "kernel", "name"));
    if (obj.contains("scale")) k = k.scaled(get_number(obj, "kernel", "scale"));
    return k;
}

CvPlan parse_cv(const json& obj) {
    reject_unknown_keys(obj, "cv",
                        {"xi_min", "xi_max", "points", "xi_grid", "s0", "checkpoints", "refine"});
    CvPlan plan;
    if (obj.contains("xi_grid")) {
        if (obj.contains("xi_min") || obj.contains("xi_max") || obj.contains("points"))
            throw ConfigError("cv: give either an explicit xi_grid or min/max/points, not both");
        plan.xi_grid = get_number_array(obj, "cv", "xi_grid");
    } else {
        const double xi_min = get_number_or(obj, "cv", "xi_min", 1.0);
        const double xi_max = get_number_or(obj, "cv", "xi_max", 20.0);
        long points = 61;
        if (obj.contains("points")) points = get_integer(obj, "cv", "points");
        plan.xi_grid = CvPlan::default_grid(xi_min, xi_max, static_cast<int>(points));
    }
    plan.s0 = get_number_or(obj, "cv", "s0", 0.1);
    if (obj.contains("checkpoints")) plan.checkpoints = get_number_array(obj, "cv", "checkpoints");
    if (obj.contains("refine")) {
        if (!obj.at("refine").is_boolean()) throw ConfigError("cv.refine must be a boolean");
        plan.refine = obj.at("refine").get<bool>();
    }
    plan.validate();
    return plan;
}

LimitSettings parse_limit(const json& obj, const Kernel& kernel) {
    reject_unknown_keys(obj, "limit", {"mode", "tolerance", "mean", "xi_values", "s_values"});
    LimitSettings ls;
    ls.spec.kernel = kernel;
    const std::string mode = obj.contains("mode") ? get_string(obj, "limit", "mode")
                                                  : std::string("self_consistent");
    if (mode == "self_consistent") ls.spec.mode = LimitMode::self_consistent;
    else if (mode == "as_printed") ls.spec.mode = LimitMode::as_printed;
    else
        throw ConfigError("limit.mode must be 'self_consistent' or 'as_printed', got '" + mode +
                          "'");
    ls.spec.tol = get_number_or(obj, "limit", "tolerance", 1e-8);

    if (!obj.contains("mean") || !obj.at("mean").is_object())
        throw ConfigError("limit.mean must be an object with a 'kind'");
    const json& mean = obj.at("mean");
    reject_unknown_keys(mean, "limit.mean",
                        {"kind", "value", "intercept", "slope", "level", "amplitude", "frequency"});
    const std::string kind = get_string(mean, "limit.mean", "kind");
    std::vector<double> params;
    if (kind == "constant") {
        params = {get_number(mean, "limit.mean", "value")};
    } else if (kind == "linear") {
        params = {get_number(mean, "limit.mean", "intercept"),
                  get_number(mean, "limit.mean", "slope")};
    } else if (kind == "sinusoid") {
        params = {get_number(mean, "limit.mean", "level"),
                  get_number(mean, "limit.mean", "amplitude"),
                  get_number(mean, "limit.mean", "frequency")};
    } else {
        throw ConfigError("limit.mean.kind must be constant, linear or sinusoid, got '" + kind +
                          "'");
    }
    ls.spec.mean = make_mean(kind, params);
    ls.mean_description = kind;

    ls.xi_values = get_number_array(obj, "limit", "xi_values");
    ls.s_values = get_number_array(obj, "limit", "s_values");
    if (ls.xi_values.empty() || ls.s_values.empty())
        throw ConfigError("limit.xi_values and limit.s_values must be nonempty");
    ls.spec.validate();
    return ls;
}

ScenarioParams parse_scenario(const json& obj) {
    reject_unknown_keys(obj, "scenario", {"mu0", "delta1", "jump", "q1", "q2", "horizon"});
    ScenarioParams p;
    p.mu0 = get_number(obj, "scenario", "mu0");
    p.delta1 = get_number_or(obj, "scenario", "delta1", 0.0);
    p.jump = get_number_or(obj, "scenario", "jump", 0.0);
    p.q1 = get_integer(obj, "scenario", "q1");
    p.q2 = get_integer(obj, "scenario", "q2");
    p.horizon = get_integer(obj, "scenario", "horizon");
    p.validate();
    return p;
}

ErrorModel parse_errors(const json& obj) {
    reject_unknown_keys(obj, "errors",
                        {"kind", "sigma", "phi", "file", "coeffs", "rho", "truncation", "theta",
                         "tail_bound"});
    const std::string kind = get_string(obj, "errors", "kind");
    if (kind == "iid_gaussian") return ErrorModel::iid_gaussian(get_number(obj, "errors", "sigma"));
    if (kind == "iid_resample")
        return ErrorModel::iid_resample(read_column_csv(get_string(obj, "errors", "file")));
    if (kind == "ar1")
        return ErrorModel::ar1(get_number(obj, "errors", "phi"),
                               get_number(obj, "errors", "sigma"));
    if (kind == "ma")
        return ErrorModel::ma(get_number_array(obj, "errors", "coeffs"),
                              get_number(obj, "errors", "sigma"));
    if (kind == "linear_geometric")
        return ErrorModel::linear_geometric(get_number(obj, "errors", "rho"),
                                            get_integer(obj, "errors", "truncation"));
    if (kind == "linear_process")
        return ErrorModel::linear_process(get_number_array(obj, "errors", "theta"),
                                          get_integer(obj, "errors", "truncation"),
                                          get_number(obj, "errors", "tail_bound"));
    throw ConfigError("errors.kind '" + kind + "' is not one of iid_gaussian, iid_resample, ar1, "
                      "ma, linear_geometric, linear_process");
}

DetectorSpec parse_detector(const json& obj, const Kernel& kernel,
                            const std::optional<CvPlan>& cv,
                            const std::optional<ScenarioParams>& scenario) {
    reject_unknown_keys(obj, "detector", {"direction", "control_limit", "start", "bandwidth"});
    DetectorSpec spec;
    spec.kernel = kernel;
    const std::string dir = get_string(obj, "detector", "direction");
    if (dir == "lower_crossing") spec.direction = Direction::lower_crossing;
    else if (dir == "upper_crossing") spec.direction = Direction::upper_crossing;
    else
        throw ConfigError("detector.direction must be lower_crossing or upper_crossing, got '" +
                          dir + "'");
    spec.control_limit = get_number_or(obj, "detector", "control_limit", 0.0);

    if (!obj.contains("bandwidth") || !obj.at("bandwidth").is_object())
        throw ConfigError("detector.bandwidth must be an object with a 'kind'");
    const json& bw = obj.at("bandwidth");
    reject_unknown_keys(bw, "detector.bandwidth", {"kind", "h", "xi"});
    const std::string bkind = get_string(bw, "detector.bandwidth", "kind");
    if (bkind == "fixed") {
        if (bw.contains("h") == bw.contains("xi"))
            throw ConfigError("detector.bandwidth needs exactly one of 'h' or 'xi'");
        double h;
        if (bw.contains("h")) {
            h = get_number(bw, "detector.bandwidth", "h");
        } else {
            // xi form needs the horizon, which lives in the scenario block
            const double xi = get_number(bw, "detector.bandwidth", "xi");
            if (!(xi >= 1.0)) throw ConfigError("detector.bandwidth.xi must be >= 1");
            if (!scenario)
                throw ConfigError(
                    "detector.bandwidth.xi needs a scenario block to supply the horizon");
            h = static_cast<double>(scenario->horizon) / xi;
        }
        spec.bandwidth = BandwidthSpec::fixed(h);
    } else if (bkind == "cv_path") {
        if (!cv)
            throw ConfigError("detector.bandwidth.kind cv_path needs a top-level cv block");
        spec.bandwidth = BandwidthSpec::cv_driven(*cv);
    } else {
        throw ConfigError("detector.bandwidth.kind must be fixed or cv_path, got '" + bkind + "'");
    }

    if (obj.contains("start")) {
        const json& st = obj.at("start");
        if (!st.is_object()) throw ConfigError("detector.start must be an object");
        reject_unknown_keys(st, "detector.start", {"kind", "index", "cap"});
        const std::string skind = get_string(st, "detector.start", "kind");
        if (skind == "fixed_index") {
            spec.start = StartRule::fixed(get_integer(st, "detector.start", "index"));
        } else if (skind == "capped_first_bandwidth") {
            long cap = 25;
            if (st.contains("cap")) cap = get_integer(st, "detector.start", "cap");
            spec.start = StartRule::capped_first_bandwidth(cap);
        } else {
            throw ConfigError(
                "detector.start.kind must be fixed_index or capped_first_bandwidth, got '" +
                skind + "'");
        }
    }
    return spec;
}

}  // namespace

MeanFn make_mean(const std::string& kind, const std::vector<double>& params) {
    const auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw ConfigError("mean function '" + kind + "' takes " + std::to_string(n) +
                              " parameters, got " + std::to_string(params.size()));
    };
    for (double p : params)
        if (!std::isfinite(p)) throw ConfigError("mean function parameters must be finite");
    if (kind == "constant") {
        need(1);
        const double v = params[0];
        return [v](double) { return v; };
    }
    if (kind == "linear") {
        need(2);
        const double a = params[0], b = params[1];
        return [a, b](double u) { return a + b * u; };
    }
    if (kind == "sinusoid") {
        need(3);
        const double level = params[0], amp = params[1], freq = params[2];
        return [level, amp, freq](double u) {
            return level + amp * std::sin(2.0 * std::numbers::pi * freq * u);
        };
    }
    throw ConfigError("unknown mean function kind '" + kind + "'");
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(path + ": top level must be a JSON object");
    reject_unknown_keys(root, "config",
                        {"version", "seed", "kernel", "smooth", "cv", "limit", "scenario",
                         "errors", "detector", "calibrate", "simulate"});

    if (!root.contains("version") || !root.at("version").is_number_integer() ||
        root.at("version").get<long>() != 1)
        throw ConfigError(path + ": config schema version must be the integer 1");

    Config cfg;
    if (root.contains("seed")) {
        const json& s = root.at("seed");
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw ConfigError("seed must be a nonnegative integer");
        const long long sv = s.get<long long>();
        if (sv < 0) throw ConfigError("seed must be a nonnegative integer");
        cfg.seed = static_cast<std::uint64_t>(sv);
    }
    if (root.contains("kernel")) cfg.kernel = parse_kernel(root.at("kernel"));

    if (root.contains("smooth")) {
        const json& sm = root.at("smooth");
        reject_unknown_keys(sm, "smooth", {"bandwidth", "xi"});
        SmoothSettings ss;
        if (sm.contains("bandwidth")) ss.bandwidth = get_number(sm, "smooth", "bandwidth");
        if (sm.contains("xi")) ss.xi = get_number(sm, "smooth", "xi");
        if (ss.bandwidth.has_value() == ss.xi.has_value())
            throw ConfigError("smooth needs exactly one of 'bandwidth' or 'xi'");
        cfg.smooth = ss;
    }
    if (root.contains("cv")) cfg.cv = parse_cv(root.at("cv"));
    if (root.contains("limit")) cfg.limit = parse_limit(root.at("limit"), cfg.kernel);
    if (root.contains("scenario")) cfg.scenario = parse_scenario(root.at("scenario"));
    if (root.contains("errors")) cfg.errors = parse_errors(root.at("errors"));
    if (root.contains("detector"))
        cfg.detector = parse_detector(root.at("detector"), cfg.kernel, cfg.cv, cfg.scenario);
    if (root.contains("calibrate")) {
        const json& cal = root.at("calibrate");
        reject_unknown_keys(cal, "calibrate", {"target_arl0", "replications"});
        CalibrateSettings cs;
        cs.target_arl0 = get_number(cal, "calibrate", "target_arl0");
        cs.replications = static_cast<int>(get_integer(cal, "calibrate", "replications"));
        cfg.calibrate = cs;
    }
    if (root.contains("simulate")) {
        const json& sim = root.at("simulate");
        reject_unknown_keys(sim, "simulate", {"replications", "deltas"});
        SimulateSettings ss;
        if (sim.contains("replications"))
            ss.replications = static_cast<int>(get_integer(sim, "simulate", "replications"));
        if (sim.contains("deltas")) ss.deltas = get_number_array(sim, "simulate", "deltas");
        cfg.simulate = ss;
    }
    return cfg;
}

}  // namespace seqcv
