#include "sfrj/harness.hpp"
#include "sfrj/svgplot.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sfrj {

CommandKind command_kind_from_name(const std::string& name) {
    if (name == "step") return CommandKind::Step;
    if (name == "doublet") return CommandKind::Doublet;
    if (name == "ramp") return CommandKind::Ramp;
    if (name == "harmonic") return CommandKind::Harmonic;
    if (name == "constant") return CommandKind::Constant;
    throw std::invalid_argument("unknown command kind: " + name);
}

std::string command_kind_name(CommandKind k) {
    switch (k) {
    case CommandKind::Step: return "step";
    case CommandKind::Doublet: return "doublet";
    case CommandKind::Ramp: return "ramp";
    case CommandKind::Harmonic: return "harmonic";
    case CommandKind::Constant: return "constant";
    }
    throw std::logic_error("bad command kind");
}

double command_value(const CommandSignal& s, double t) {
    if (t < 0.0) throw std::invalid_argument("command_value: negative time");
    switch (s.kind) {
    case CommandKind::Step:
        return t < s.t_on ? 0.0 : s.amplitude;
    case CommandKind::Doublet:
        if (t < s.t_on) return s.baseline;
        if (t < s.t_on + s.period) return s.baseline + s.amplitude;
        if (t < s.t_on + 2.0 * s.period) return s.baseline - s.amplitude;
        return s.baseline;
    case CommandKind::Ramp: {
        const auto& ts = s.ramp_times;
        const auto& vs = s.ramp_values;
        if (ts.size() != vs.size() || ts.size() < 2)
            throw std::invalid_argument("ramp needs matching breakpoint lists (>= 2 points)");
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (t <= ts[i]) {
                double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
                return vs[i - 1] + w * (vs[i] - vs[i - 1]);
            }
        return vs.back();
    }
    case CommandKind::Harmonic:
        return s.baseline + s.amplitude * std::sin(2.0 * std::numbers::pi * s.frequency * t);
    case CommandKind::Constant:
        return s.amplitude;
    }
    throw std::logic_error("bad command kind");
}

RunRecord run_closed_loop(const Plant& plant, const LoopConfig& cfg, const CommandSignal& signal,
                          const MlpModel* model) {
    if (cfg.feedback == LoopConfig::Feedback::Ann && model == nullptr)
        throw std::invalid_argument("closed loop with ANN feedback needs a model");

    const auto free = freestream_totals(plant.config().mach, cfg.altitude);
    EquilibriumWarmStart warm;
    PlantState st;
    st.r3 = plant.config().grain.r3;

    RcacState ctl = RcacState::initial(cfg.rcac);
    RunRecord rec;
    rec.termination = "duration";

    // sensor values the controller sees at the top of the step
    CombustorOutputs sensed = plant.evaluate(free, cfg.r0_nominal, st.r3, 0.0, &warm);
    double r0 = cfg.r0_nominal;
    CombustorOutputs delayed = sensed;
    double delayed_r0 = r0;

    const long max_steps =
        cfg.duration >= 0.0 ? static_cast<long>(std::ceil(cfg.duration / cfg.dt)) : -1;

    for (long k = 0; max_steps < 0 || k < max_steps; ++k) {
        const double t = k * cfg.dt;
        const double cmd = command_value(signal, t);

        const CombustorOutputs& meas = cfg.sensor_delay ? delayed : sensed;
        const double meas_r0 = cfg.sensor_delay ? delayed_r0 : r0;
        double y;
        if (cfg.feedback == LoopConfig::Feedback::Ann)
            y = model->forward(Eigen::Vector4d(meas_r0, meas.Pt4, meas.X_CO, cfg.altitude));
        else
            y = meas.thrust;

        auto [u, ctl_next] = rcac_pid_step(ctl, cfg.rcac, cmd, y);
        ctl = ctl_next;

        const double r0_raw = cfg.r0_nominal + cfg.actuation_gain * u;
        const double r0_new = std::clamp(r0_raw, cfg.r0_lo, cfg.r0_hi);
        if (r0_new != r0_raw) ++rec.saturation_steps;
        delayed = sensed;
        delayed_r0 = r0;
        r0 = r0_new;

        auto sr = plant.step(st, r0, free, cfg.dt, &warm);
        sensed = sr.outputs;
        st = sr.state;

        RunRecord::Row row{t,
                           cmd,
                           sr.outputs.thrust,
                           model != nullptr
                               ? model->forward(Eigen::Vector4d(r0, sr.outputs.Pt4,
                                                                 sr.outputs.X_CO, cfg.altitude))
                               : sr.outputs.thrust,
                           cmd - y,
                           u,
                           r0,
                           ctl.theta(0),
                           ctl.theta(1),
                           ctl.theta(2),
                           sr.outputs.rdot,
                           sr.outputs.Pt4,
                           st.r3,
                           sr.outputs.X_CO};
        for (double v : {row.t, row.command, row.thrust_true, row.thrust_pred, row.z, row.u,
                         row.r0, row.Kp, row.Ki, row.Kd, row.rdot, row.Pt4, row.r3, row.X_CO})
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite signal at step " + std::to_string(k));
        rec.rows.push_back(row);

        if (sr.burnout) {
            rec.termination = "burnout";
            break;
        }
    }
    return rec;
}

RunSummary summarize_run(const RunRecord& record, double amplitude, double dt) {
    RunSummary s;
    if (record.rows.empty()) return s;
    const double tol = 0.02 * std::abs(amplitude);
    long settle = -1;
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
        const auto& r = record.rows[i];
        s.max_abs_z = std::max(s.max_abs_z, std::abs(r.z));
        double over = (r.thrust_true - r.command) / std::max(1e-12, std::abs(amplitude));
        s.peak_overshoot_frac = std::max(s.peak_overshoot_frac, over);
        if (std::abs(r.z) >= tol)
            settle = -1;
        else if (settle < 0)
            settle = static_cast<long>(i);
    }
    s.settling_step = settle;
    s.settling_time = settle >= 0 ? settle * dt : -1.0;

    const std::size_t q = record.rows.size() - record.rows.size() / 4;
    double acc = 0.0;
    for (std::size_t i = q; i < record.rows.size(); ++i)
        acc += std::abs(record.rows[i].z);
    s.mean_abs_z_final_quarter = acc / std::max<std::size_t>(1, record.rows.size() - q);
    return s;
}

namespace {

constexpr const char* kRunCsvHeader =
    "t_s,command_N,thrust_true_N,thrust_pred_N,z_N,u,r0_m,Kp,Ki,Kd,rdot_m_s,Pt4_Pa,r3_m,X_CO";

void write_run_csv(const RunRecord& rec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write run CSV: " + path);
    f << kRunCsvHeader << "\n";
    char buf[512];
    for (const auto& r : rec.rows) {
        std::snprintf(buf, sizeof buf,
                      "%.6f,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,"
                      "%.10g,%.10g\n",
                      r.t, r.command, r.thrust_true, r.thrust_pred, r.z, r.u, r.r0, r.Kp, r.Ki,
                      r.Kd, r.rdot, r.Pt4, r.r3, r.X_CO);
        f << buf;
    }
}

std::string git_describe() {
    FILE* p = ::popen("git describe --always --dirty 2>/dev/null", "r");
    if (!p) return "unknown";
    char buf[128] = {0};
    std::string out;
    while (std::fgets(buf, sizeof buf, p)) out += buf;
    ::pclose(p);
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
    return out.empty() ? "unknown" : out;
}

template <typename F>
PlotSeries series_of(const RunRecord& rec, const char* label, F&& get) {
    PlotSeries s;
    s.label = label;
    for (const auto& r : rec.rows) {
        s.x.push_back(r.t);
        s.y.push_back(get(r));
    }
    return s;
}

} // namespace

void emit_outputs(const RunRecord& record, const std::string& out_dir,
                  const std::string& config_echo, std::uint64_t seed) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    write_run_csv(record, (fs::path(out_dir) / "run.csv").string());

    nlohmann::json manifest;
    manifest["seed"] = seed;
    manifest["steps"] = record.rows.size();
    manifest["termination"] = record.termination;
    manifest["saturation_steps"] = record.saturation_steps;
    manifest["git_describe"] = git_describe();
    manifest["config"] =
        config_echo.empty() ? nlohmann::json(nullptr) : nlohmann::json::parse(config_echo);
    {
        std::ofstream f(fs::path(out_dir) / "manifest.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write manifest in " + out_dir);
        f << manifest.dump(2) << "\n";
    }

    auto panel = [&](const char* title, const char* ylab, bool logy,
                     std::vector<PlotSeries> series) {
        PlotSpec p;
        p.title = title;
        p.x_label = "t [s]";
        p.y_label = ylab;
        p.log_y = logy;
        p.series = std::move(series);
        return p;
    };
    write_svg_plot(panel("thrust vs command", "thrust [N]", false,
                         {series_of(record, "command", [](auto& r) { return r.command; }),
                          series_of(record, "thrust", [](auto& r) { return r.thrust_true; }),
                          series_of(record, "predicted", [](auto& r) { return r.thrust_pred; })}),
                   (fs::path(out_dir) / "thrust.svg").string());
    write_svg_plot(panel("capture radius", "r0 [m]", false,
                         {series_of(record, "r0", [](auto& r) { return r.r0; })}),
                   (fs::path(out_dir) / "r0.svg").string());
    write_svg_plot(panel("tracking error", "|z| [N]", true,
                         {series_of(record, "z", [](auto& r) { return r.z; })}),
                   (fs::path(out_dir) / "tracking_error.svg").string());
    write_svg_plot(panel("adaptive gains", "gain", false,
                         {series_of(record, "Kp", [](auto& r) { return r.Kp; }),
                          series_of(record, "Ki", [](auto& r) { return r.Ki; }),
                          series_of(record, "Kd", [](auto& r) { return r.Kd; })}),
                   (fs::path(out_dir) / "gains.svg").string());
    write_svg_plot(panel("fuel regression rate", "rdot [m/s]", false,
                         {series_of(record, "rdot", [](auto& r) { return r.rdot; })}),
                   (fs::path(out_dir) / "regression_rate.svg").string());
    write_svg_plot(panel("aft total pressure", "Pt4 [Pa]", false,
                         {series_of(record, "Pt4", [](auto& r) { return r.Pt4; })}),
                   (fs::path(out_dir) / "pt4.svg").string());
}

std::vector<SweepEntry> hyperparameter_sweep(const Plant& plant, const LoopConfig& base,
                                             const CommandSignal& step,
                                             const std::vector<double>& n_values,
                                             const std::vector<double>& p_values,
                                             const MlpModel* model, const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (!out_dir.empty()) fs::create_directories(out_dir);

    std::vector<SweepEntry> entries;
    std::vector<PlotSeries> err_series;
    for (double n : n_values)
        for (double p : p_values) {
            SweepEntry e;
            e.n1 = n;
            e.p0 = p;
            try {
                LoopConfig cfg = base;
                cfg.rcac.filter_coeffs = {n};
                cfg.rcac.p0_scale = p;
                RunRecord rec = run_closed_loop(plant, cfg, step, model);
                e.summary = summarize_run(rec, step.amplitude, cfg.dt);
                e.ok = true;
                char name[96];
                std::snprintf(name, sizeof name, "run_n%g_p%g", n, p);
                if (!out_dir.empty()) {
                    write_run_csv(rec, (fs::path(out_dir) / (std::string(name) + ".csv")).string());
                    err_series.push_back(
                        series_of(rec, name, [](auto& r) { return r.z; }));
                }
            } catch (const std::exception& ex) {
                e.error = ex.what();
            }
            entries.push_back(std::move(e));
        }

    if (!out_dir.empty()) {
        std::ofstream f(fs::path(out_dir) / "sweep_summary.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write sweep summary in " + out_dir);
        f << "n1,p0,peak_overshoot_frac,settling_step,settling_time_s,mean_abs_z_final_quarter,"
             "max_abs_z,status\n";
        char buf[256];
        for (const auto& e : entries) {
            const std::string status = e.ok ? "ok" : "failed: " + e.error;
            std::snprintf(buf, sizeof buf, "%g,%g,%.6g,%ld,%.6g,%.6g,%.6g,%s\n", e.n1, e.p0,
                          e.summary.peak_overshoot_frac, e.summary.settling_step,
                          e.summary.settling_time, e.summary.mean_abs_z_final_quarter,
                          e.summary.max_abs_z, status.c_str());
            f << buf;
        }
        PlotSpec spec;
        spec.title = "tracking error across filter gain / covariance scale grid";
        spec.x_label = "t [s]";
        spec.y_label = "|z| [N]";
        spec.log_y = true;
        spec.series = std::move(err_series);
        write_svg_plot(spec, (fs::path(out_dir) / "sweep.svg").string());
    }
    return entries;
}

} // namespace sfrj
