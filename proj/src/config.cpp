#include "sfrj/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sfrj {

using json = nlohmann::json;

namespace {

void require_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw std::invalid_argument("config: expected an object at " + path);
}

// Reject anything not in the allowed set, naming the offending key.
void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key \"" + path + key + "\"");
}

template <typename T>
void get_to(const json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

void get_activation(const json& j, const char* key, Activation& out) {
    if (j.contains(key)) out = activation_from_name(j.at(key).get<std::string>());
}

void parse_regression(const json& j, const std::string& path, RegressionParams& r) {
    require_object(j, path);
    check_keys(j, path, {"alpha", "a", "b", "c"});
    get_to(j, "alpha", r.alpha);
    get_to(j, "a", r.a);
    get_to(j, "b", r.b);
    get_to(j, "c", r.c);
}

void parse_grain(const json& j, const std::string& path, FuelGrain& g) {
    require_object(j, path);
    check_keys(j, path, {"rho_f_kg_m3", "L_f_m", "r3_m", "r3_max_m", "regression"});
    get_to(j, "rho_f_kg_m3", g.rho_f);
    get_to(j, "L_f_m", g.L_f);
    get_to(j, "r3_m", g.r3);
    get_to(j, "r3_max_m", g.r3_max);
    if (j.contains("regression")) parse_regression(j.at("regression"), path + "regression.", g.regression);
}

void parse_inlet(const json& j, const std::string& path, InletModel& m) {
    require_object(j, path);
    check_keys(j, path,
               {"r0_min_m", "r0_max_m", "recovery_coeffs", "mach2_coeffs", "spillage_factor"});
    get_to(j, "r0_min_m", m.r0_min);
    get_to(j, "r0_max_m", m.r0_max);
    get_to(j, "recovery_coeffs", m.recovery_coeffs);
    get_to(j, "mach2_coeffs", m.mach2_coeffs);
    get_to(j, "spillage_factor", m.spillage_factor);
}

void parse_plant(const json& j, const std::string& path, PlantConfig& p) {
    require_object(j, path);
    check_keys(j, path,
               {"mach", "r2_m", "rt_m", "eta_c", "eta_n", "friction_factor",
                "p4_static_conversion", "nozzle_energy_efficiency", "mass_flux_station2",
                "grain", "inlet"});
    get_to(j, "mach", p.mach);
    get_to(j, "r2_m", p.r2);
    get_to(j, "rt_m", p.rt);
    get_to(j, "eta_c", p.eta_c);
    get_to(j, "eta_n", p.eta_n);
    get_to(j, "friction_factor", p.friction_factor);
    get_to(j, "p4_static_conversion", p.p4_static_conversion);
    get_to(j, "nozzle_energy_efficiency", p.nozzle_energy_efficiency);
    get_to(j, "mass_flux_station2", p.mass_flux_station2);
    if (j.contains("grain")) parse_grain(j.at("grain"), path + "grain.", p.grain);
    if (j.contains("inlet")) parse_inlet(j.at("inlet"), path + "inlet.", p.inlet);
}

void parse_ann(const json& j, const std::string& path, AppConfig& c) {
    require_object(j, path);
    check_keys(j, path,
               {"hidden_nodes", "activation", "batch_size", "epochs", "learning_rate",
                "adam_beta1", "adam_beta2", "adam_eps", "split_fraction", "seed"});
    get_to(j, "hidden_nodes", c.hidden_nodes);
    get_activation(j, "activation", c.activation);
    get_to(j, "batch_size", c.train.batch_size);
    get_to(j, "epochs", c.train.epochs);
    get_to(j, "learning_rate", c.train.learning_rate);
    get_to(j, "adam_beta1", c.train.adam_beta1);
    get_to(j, "adam_beta2", c.train.adam_beta2);
    get_to(j, "adam_eps", c.train.adam_eps);
    get_to(j, "split_fraction", c.train.split_fraction);
    get_to(j, "seed", c.train.seed);
}

void parse_rcac(const json& j, const std::string& path, RcacConfig& r) {
    require_object(j, path);
    check_keys(j, path, {"p0_scale", "rz", "filter_coeffs", "theta0", "ru"});
    get_to(j, "p0_scale", r.p0_scale);
    get_to(j, "rz", r.rz);
    get_to(j, "filter_coeffs", r.filter_coeffs);
    if (j.contains("theta0")) {
        auto v = j.at("theta0").get<std::vector<double>>();
        if (v.size() != 3)
            throw std::invalid_argument("config: " + path + "theta0 must have 3 entries");
        r.theta0 = Eigen::Vector3d(v[0], v[1], v[2]);
    }
    get_to(j, "ru", r.ru); // accepted but not used by the cost
}

void parse_loop(const json& j, const std::string& path, LoopConfig& l) {
    require_object(j, path);
    check_keys(j, path,
               {"r0_nominal_m", "actuation_gain", "r0_bounds_m", "altitude_m", "dt_s",
                "duration_s", "feedback", "sensor_delay", "seed", "rcac"});
    get_to(j, "r0_nominal_m", l.r0_nominal);
    get_to(j, "actuation_gain", l.actuation_gain);
    if (j.contains("r0_bounds_m")) {
        auto v = j.at("r0_bounds_m").get<std::vector<double>>();
        if (v.size() != 2 || !(v[0] < v[1]))
            throw std::invalid_argument("config: " + path + "r0_bounds_m must be [lo, hi]");
        l.r0_lo = v[0];
        l.r0_hi = v[1];
    }
    get_to(j, "altitude_m", l.altitude);
    get_to(j, "dt_s", l.dt);
    get_to(j, "duration_s", l.duration);
    if (j.contains("feedback")) {
        const auto fb = j.at("feedback").get<std::string>();
        if (fb == "ann")
            l.feedback = LoopConfig::Feedback::Ann;
        else if (fb == "true_thrust" || fb == "true")
            l.feedback = LoopConfig::Feedback::TrueThrust;
        else
            throw std::invalid_argument("config: " + path + "feedback must be ann|true_thrust");
    }
    get_to(j, "sensor_delay", l.sensor_delay);
    get_to(j, "seed", l.seed);
    if (j.contains("rcac")) parse_rcac(j.at("rcac"), path + "rcac.", l.rcac);
}

void parse_scenario(const json& j, const std::string& path, CommandSignal& s) {
    require_object(j, path);
    check_keys(j, path,
               {"kind", "amplitude_N", "baseline_N", "t_on_s", "period_s", "frequency_hz",
                "ramp_times_s", "ramp_values_N"});
    if (j.contains("kind")) s.kind = command_kind_from_name(j.at("kind").get<std::string>());
    get_to(j, "amplitude_N", s.amplitude);
    get_to(j, "baseline_N", s.baseline);
    get_to(j, "t_on_s", s.t_on);
    get_to(j, "period_s", s.period);
    get_to(j, "frequency_hz", s.frequency);
    get_to(j, "ramp_times_s", s.ramp_times);
    get_to(j, "ramp_values_N", s.ramp_values);
}

json scenario_to_json(const CommandSignal& s) {
    return {{"kind", command_kind_name(s.kind)},
            {"amplitude_N", s.amplitude},
            {"baseline_N", s.baseline},
            {"t_on_s", s.t_on},
            {"period_s", s.period},
            {"frequency_hz", s.frequency},
            {"ramp_times_s", s.ramp_times},
            {"ramp_values_N", s.ramp_values}};
}

} // namespace

AppConfig AppConfig::defaults() {
    AppConfig c;

    CommandSignal step;
    step.kind = CommandKind::Step;
    step.amplitude = 100.0;
    step.t_on = 0.0;
    c.scenarios["step"] = step;

    CommandSignal doublet;
    doublet.kind = CommandKind::Doublet;
    doublet.baseline = 110.0;
    doublet.amplitude = 12.0;
    doublet.t_on = 30.0;
    doublet.period = 50.0;
    c.scenarios["doublet"] = doublet;

    CommandSignal ramp;
    ramp.kind = CommandKind::Ramp;
    ramp.ramp_times = {0.0, 60.0, 120.0, 180.0};
    ramp.ramp_values = {100.0, 125.0, 125.0, 100.0};
    ramp.amplitude = 125.0; // peak command, used for settling metrics
    c.scenarios["ramp"] = ramp;

    CommandSignal harmonic;
    harmonic.kind = CommandKind::Harmonic;
    harmonic.baseline = 110.0;
    harmonic.amplitude = 12.0;
    harmonic.frequency = 0.02;
    c.scenarios["harmonic"] = harmonic;

    CommandSignal constant;
    constant.kind = CommandKind::Constant;
    constant.amplitude = 100.0;
    c.scenarios["constant"] = constant;

    return c;
}

AppConfig AppConfig::from_json_text(const std::string& text) {
    json j = json::parse(text);
    require_object(j, "(root)");
    check_keys(j, "", {"plant", "ann", "dataset", "rcac", "loop", "scenarios"});

    AppConfig c = defaults();
    if (j.contains("plant")) parse_plant(j.at("plant"), "plant.", c.plant);
    if (j.contains("ann")) parse_ann(j.at("ann"), "ann.", c);
    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        require_object(d, "dataset.");
        check_keys(d, "dataset.", {"points_per_axis", "mach"});
        get_to(d, "points_per_axis", c.points_per_axis);
        get_to(d, "mach", c.dataset_mach);
    }
    // top-level rcac is shorthand for loop.rcac
    if (j.contains("rcac")) parse_rcac(j.at("rcac"), "rcac.", c.loop.rcac);
    if (j.contains("loop")) parse_loop(j.at("loop"), "loop.", c.loop);
    if (j.contains("scenarios")) {
        const auto& s = j.at("scenarios");
        require_object(s, "scenarios.");
        for (const auto& [name, body] : s.items()) {
            auto it = c.scenarios.find(name);
            if (it == c.scenarios.end())
                throw std::invalid_argument("config: unknown scenario \"" + name + "\"");
            parse_scenario(body, "scenarios." + name + ".", it->second);
        }
    }
    return c;
}

AppConfig AppConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_json_text(buf.str());
}

std::string AppConfig::to_json_text() const {
    json j;
    j["plant"] = {{"mach", plant.mach},
                  {"r2_m", plant.r2},
                  {"rt_m", plant.rt},
                  {"eta_c", plant.eta_c},
                  {"eta_n", plant.eta_n},
                  {"friction_factor", plant.friction_factor},
                  {"p4_static_conversion", plant.p4_static_conversion},
                  {"nozzle_energy_efficiency", plant.nozzle_energy_efficiency},
                  {"mass_flux_station2", plant.mass_flux_station2},
                  {"grain",
                   {{"rho_f_kg_m3", plant.grain.rho_f},
                    {"L_f_m", plant.grain.L_f},
                    {"r3_m", plant.grain.r3},
                    {"r3_max_m", plant.grain.r3_max},
                    {"regression",
                     {{"alpha", plant.grain.regression.alpha},
                      {"a", plant.grain.regression.a},
                      {"b", plant.grain.regression.b},
                      {"c", plant.grain.regression.c}}}}},
                  {"inlet",
                   {{"r0_min_m", plant.inlet.r0_min},
                    {"r0_max_m", plant.inlet.r0_max},
                    {"recovery_coeffs", plant.inlet.recovery_coeffs},
                    {"mach2_coeffs", plant.inlet.mach2_coeffs},
                    {"spillage_factor", plant.inlet.spillage_factor}}}};
    j["ann"] = {{"hidden_nodes", hidden_nodes},
                {"activation", activation_name(activation)},
                {"batch_size", train.batch_size},
                {"epochs", train.epochs},
                {"learning_rate", train.learning_rate},
                {"adam_beta1", train.adam_beta1},
                {"adam_beta2", train.adam_beta2},
                {"adam_eps", train.adam_eps},
                {"split_fraction", train.split_fraction},
                {"seed", train.seed}};
    j["dataset"] = {{"points_per_axis", points_per_axis}, {"mach", dataset_mach}};
    j["loop"] = {{"r0_nominal_m", loop.r0_nominal},
                 {"actuation_gain", loop.actuation_gain},
                 {"r0_bounds_m", {loop.r0_lo, loop.r0_hi}},
                 {"altitude_m", loop.altitude},
                 {"dt_s", loop.dt},
                 {"duration_s", loop.duration},
                 {"feedback",
                  loop.feedback == LoopConfig::Feedback::Ann ? "ann" : "true_thrust"},
                 {"sensor_delay", loop.sensor_delay},
                 {"seed", loop.seed},
                 {"rcac",
                  {{"p0_scale", loop.rcac.p0_scale},
                   {"rz", loop.rcac.rz},
                   {"filter_coeffs", loop.rcac.filter_coeffs},
                   {"theta0",
                    {loop.rcac.theta0(0), loop.rcac.theta0(1), loop.rcac.theta0(2)}},
                   {"ru", loop.rcac.ru}}}};
    for (const auto& [name, sig] : scenarios)
        j["scenarios"][name] = scenario_to_json(sig);
    return j.dump(2);
}

const CommandSignal& AppConfig::scenario(const std::string& name) const {
    auto it = scenarios.find(name);
    if (it == scenarios.end())
        throw std::invalid_argument("unknown scenario: " + name);
    return it->second;
}

} // namespace sfrj
