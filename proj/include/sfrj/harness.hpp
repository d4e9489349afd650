#pragma once

#include "sfrj/ann.hpp"
#include "sfrj/combustor.hpp"
#include "sfrj/rcac.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sfrj {

enum class CommandKind { Step, Doublet, Ramp, Harmonic, Constant };

CommandKind command_kind_from_name(const std::string& name);
std::string command_kind_name(CommandKind k);

struct CommandSignal {
    CommandKind kind = CommandKind::Step;
    double amplitude = 100.0; // N; step level, doublet/harmonic excursion
    double baseline = 0.0;    // N; doublet center, harmonic offset
    double t_on = 0.0;        // s; step onset / first doublet switch
    double period = 60.0;     // s; doublet half-cycle length
    double frequency = 0.05;  // Hz; harmonic only
    // ramp breakpoints: piecewise-linear through (times, values),
    // held flat outside the breakpoint span
    std::vector<double> ramp_times{0.0, 60.0, 120.0, 180.0};
    std::vector<double> ramp_values{100.0, 125.0, 125.0, 100.0};
};

double command_value(const CommandSignal& signal, double t);

struct LoopConfig {
    double r0_nominal = 0.05358;  // m
    double actuation_gain = 0.001; // m per unit control
    double r0_lo = 0.04788;       // m
    double r0_hi = 0.05928;       // m
    double altitude = 30000.0;    // m
    double dt = 0.01;             // s
    double duration = -1.0;       // s; < 0 runs until burnout
    enum class Feedback { Ann, TrueThrust };
    Feedback feedback = Feedback::Ann;
    bool sensor_delay = false; // feed the controller last step's measurements
    RcacConfig rcac;
    std::uint64_t seed = 1;
};

struct RunRecord {
    struct Row {
        double t, command, thrust_true, thrust_pred, z, u, r0;
        double Kp, Ki, Kd, rdot, Pt4, r3, X_CO;
    };
    std::vector<Row> rows;
    std::string termination; // "burnout" or "duration"
    std::size_t saturation_steps = 0;
};

// Runs command -> adaptive PID -> capture-radius actuation -> plant ->
// measured/predicted thrust feedback until burnout or the configured
// duration. model may be null only with true-thrust feedback.
RunRecord run_closed_loop(const Plant& plant, const LoopConfig& cfg, const CommandSignal& signal,
                          const MlpModel* model);

struct RunSummary {
    double peak_overshoot_frac = 0.0; // max (y - command)+ / amplitude
    long settling_step = -1;          // first step after which |z| < 2% amplitude holds
    double settling_time = -1.0;      // s
    double mean_abs_z_final_quarter = 0.0;
    double max_abs_z = 0.0;
};

RunSummary summarize_run(const RunRecord& record, double amplitude, double dt);

// Writes <out_dir>/run.csv, <out_dir>/manifest.json and the six standard
// plot panels. config_echo is embedded verbatim in the manifest.
void emit_outputs(const RunRecord& record, const std::string& out_dir,
                  const std::string& config_echo, std::uint64_t seed);

struct SweepEntry {
    double n1 = 0.0;
    double p0 = 0.0;
    RunSummary summary;
    bool ok = false;
    std::string error;
};

// Cross product of filter gains and covariance scales on the step scenario.
// Per-run CSVs, a summary table and a comparison plot land in out_dir.
std::vector<SweepEntry> hyperparameter_sweep(const Plant& plant, const LoopConfig& base,
                                             const CommandSignal& step,
                                             const std::vector<double>& n_values,
                                             const std::vector<double>& p_values,
                                             const MlpModel* model, const std::string& out_dir);

} // namespace sfrj
