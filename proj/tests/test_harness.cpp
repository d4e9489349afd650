#include <doctest.h>

#include "sfrj/config.hpp"
#include "sfrj/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sfrj;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const Plant& shared_plant() {
    static Plant plant(ThermoDatabase::builtin(), PlantConfig{});
    return plant;
}

LoopConfig short_true_loop(double duration = 1.0) {
    LoopConfig lc;
    lc.feedback = LoopConfig::Feedback::TrueThrust;
    lc.duration = duration;
    return lc;
}

} // namespace

TEST_CASE("command signal shapes") {
    CommandSignal step;
    step.kind = CommandKind::Step;
    step.amplitude = 100.0;
    step.t_on = 0.5;
    CHECK(command_value(step, 0.0) == 0.0);
    CHECK(command_value(step, 0.5) == 100.0);
    CHECK(command_value(step, 10.0) == 100.0);

    CommandSignal doublet;
    doublet.kind = CommandKind::Doublet;
    doublet.baseline = 110.0;
    doublet.amplitude = 12.0;
    doublet.t_on = 30.0;
    doublet.period = 50.0;
    CHECK(command_value(doublet, 0.0) == 110.0);
    CHECK(command_value(doublet, 31.0) == 122.0);
    CHECK(command_value(doublet, 81.0) == 98.0);
    CHECK(command_value(doublet, 131.0) == 110.0);

    CommandSignal ramp;
    ramp.kind = CommandKind::Ramp;
    ramp.ramp_times = {0.0, 10.0, 20.0};
    ramp.ramp_values = {100.0, 120.0, 100.0};
    CHECK(command_value(ramp, 0.0) == 100.0); // held flat before the span
    CHECK(command_value(ramp, 5.0) == doctest::Approx(110.0));
    CHECK(command_value(ramp, 10.0) == 120.0);
    CHECK(command_value(ramp, 25.0) == 100.0); // held flat after the span

    CommandSignal harm;
    harm.kind = CommandKind::Harmonic;
    harm.baseline = 110.0;
    harm.amplitude = 12.0;
    harm.frequency = 0.02;
    CHECK(command_value(harm, 0.0) == doctest::Approx(110.0));
    CHECK(command_value(harm, 12.5) == doctest::Approx(122.0)); // quarter period
    CHECK(command_value(harm, 25.0) == doctest::Approx(110.0).epsilon(1e-9));

    CommandSignal constant;
    constant.kind = CommandKind::Constant;
    constant.amplitude = 42.0;
    CHECK(command_value(constant, 0.0) == 42.0);
    CHECK(command_value(constant, 1e6) == 42.0);
}

TEST_CASE("command kind names round-trip") {
    for (auto k : {CommandKind::Step, CommandKind::Doublet, CommandKind::Ramp,
                   CommandKind::Harmonic, CommandKind::Constant})
        CHECK(command_kind_from_name(command_kind_name(k)) == k);
    CHECK_THROWS_AS(command_kind_from_name("sawtooth"), std::invalid_argument);
}

TEST_CASE("duration-limited run produces the expected step count") {
    LoopConfig lc = short_true_loop(1.0);
    CommandSignal step;
    step.amplitude = 110.0;
    RunRecord rec = run_closed_loop(shared_plant(), lc, step, nullptr);
    CHECK(rec.rows.size() == 100);
    CHECK(rec.termination == "duration");
    for (std::size_t k = 0; k < rec.rows.size(); ++k)
        CHECK(rec.rows[k].t == doctest::Approx(k * lc.dt));
}

TEST_CASE("capture radius stays inside the actuation bounds") {
    LoopConfig lc = short_true_loop(2.0);
    lc.actuation_gain = 0.05; // deliberately oversized so the clamp engages
    CommandSignal step;
    step.amplitude = 135.0;
    RunRecord rec = run_closed_loop(shared_plant(), lc, step, nullptr);
    for (const auto& r : rec.rows) {
        CHECK(r.r0 >= lc.r0_lo);
        CHECK(r.r0 <= lc.r0_hi);
    }
    CHECK(rec.saturation_steps > 0);
}

TEST_CASE("identical runs are bitwise identical") {
    LoopConfig lc = short_true_loop(1.0);
    CommandSignal step;
    step.amplitude = 110.0;
    RunRecord a = run_closed_loop(shared_plant(), lc, step, nullptr);
    RunRecord b = run_closed_loop(shared_plant(), lc, step, nullptr);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].thrust_true == b.rows[k].thrust_true);
        CHECK(a.rows[k].u == b.rows[k].u);
        CHECK(a.rows[k].r0 == b.rows[k].r0);
        CHECK(a.rows[k].z == b.rows[k].z);
    }
}

TEST_CASE("true-thrust feedback regulates toward the command") {
    LoopConfig lc = short_true_loop(5.0);
    CommandSignal step;
    step.amplitude = 110.0;
    RunRecord rec = run_closed_loop(shared_plant(), lc, step, nullptr);
    CHECK(std::abs(rec.rows.back().z) < 1.0);
    CHECK(std::abs(rec.rows.back().thrust_true - 110.0) < 1.0);
}

TEST_CASE("ann feedback without a model is rejected") {
    LoopConfig lc;
    lc.duration = 1.0;
    lc.feedback = LoopConfig::Feedback::Ann;
    CommandSignal step;
    CHECK_THROWS_AS(run_closed_loop(shared_plant(), lc, step, nullptr), std::invalid_argument);
}

TEST_CASE("run summary metrics on a crafted record") {
    RunRecord rec;
    // |z| = 10, 5, 1, 0.5, ... below the 2% band (amplitude 100 -> band 2.0)
    const double zs[] = {10.0, 5.0, 3.0, 1.0, 0.5, 0.2, 0.1, 0.05};
    for (int k = 0; k < 8; ++k) {
        RunRecord::Row r{};
        r.t = 0.1 * k;
        r.command = 100.0;
        r.z = zs[k];
        r.thrust_true = 100.0 - zs[k];
        rec.rows.push_back(r);
    }
    RunSummary s = summarize_run(rec, 100.0, 0.1);
    CHECK(s.settling_step == 3);
    CHECK(s.settling_time == doctest::Approx(0.3));
    CHECK(s.max_abs_z == 10.0);
    CHECK(s.mean_abs_z_final_quarter == doctest::Approx((0.1 + 0.05) / 2.0));
    CHECK(s.peak_overshoot_frac == 0.0); // never above the command
}

TEST_CASE("emitted run directory contains csv, manifest and plots") {
    LoopConfig lc = short_true_loop(0.5);
    CommandSignal step;
    step.amplitude = 110.0;
    RunRecord rec = run_closed_loop(shared_plant(), lc, step, nullptr);

    fs::path dir = fs::temp_directory_path() / "sfrj_harness_emit_test";
    fs::remove_all(dir);
    emit_outputs(rec, dir.string(), AppConfig::defaults().to_json_text(), lc.seed);

    std::string csv = slurp(dir / "run.csv");
    CHECK(csv.rfind("t_s,command_N,thrust_true_N,thrust_pred_N,z_N,u,r0_m,"
                    "Kp,Ki,Kd,rdot_m_s,Pt4_Pa,r3_m,X_CO\n", 0) == 0);
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == rec.rows.size() + 1);

    std::string manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"seed\"") != std::string::npos);
    CHECK(manifest.find("\"config\"") != std::string::npos);
    for (const char* name : {"thrust.svg", "r0.svg", "tracking_error.svg", "gains.svg",
                             "regression_rate.svg", "pt4.svg"}) {
        CAPTURE(name);
        CHECK(fs::exists(dir / name));
    }

    // a rerun with the same inputs must reproduce run.csv byte for byte
    fs::path dir2 = fs::temp_directory_path() / "sfrj_harness_emit_test2";
    fs::remove_all(dir2);
    RunRecord rec2 = run_closed_loop(shared_plant(), lc, step, nullptr);
    emit_outputs(rec2, dir2.string(), AppConfig::defaults().to_json_text(), lc.seed);
    CHECK(slurp(dir / "run.csv") == slurp(dir2 / "run.csv"));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("hyperparameter sweep covers the grid and reports summaries") {
    LoopConfig lc = short_true_loop(1.0);
    CommandSignal step;
    step.amplitude = 110.0;
    fs::path dir = fs::temp_directory_path() / "sfrj_harness_sweep_test";
    fs::remove_all(dir);
    auto entries = hyperparameter_sweep(shared_plant(), lc, step, {0.5, 1.0}, {1e-5},
                                        nullptr, dir.string());
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
        CHECK(e.ok);
        CHECK(e.p0 == 1e-5);
        CHECK(std::isfinite(e.summary.max_abs_z));
    }
    CHECK(entries[0].n1 == 0.5);
    CHECK(entries[1].n1 == 1.0);
    CHECK(fs::exists(dir / "sweep_summary.csv"));
    CHECK(fs::exists(dir / "sweep.svg"));
    fs::remove_all(dir);
}

TEST_CASE("config rejects unknown keys with their path") {
    CHECK_NOTHROW(AppConfig::from_json_text("{}"));
    CHECK_NOTHROW(AppConfig::from_json_text(R"({"ann": {"epochs": 5}})"));
    CHECK_THROWS_WITH_AS(AppConfig::from_json_text(R"({"ann": {"epoch": 5}})"),
                         doctest::Contains("ann.epoch"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(AppConfig::from_json_text(R"({"plant": {"grain": {"rho": 1.0}}})"),
                         doctest::Contains("plant.grain.rho"), std::invalid_argument);
    CHECK_THROWS_AS(AppConfig::from_json_text(R"({"bogus": 1})"), std::invalid_argument);
}

TEST_CASE("config json echo round-trips") {
    AppConfig base = AppConfig::defaults();
    base.train.epochs = 123;
    base.hidden_nodes = 7;
    base.loop.altitude = 25000.0;
    base.plant.grain.r3 = 0.061;
    AppConfig back = AppConfig::from_json_text(base.to_json_text());
    CHECK(back.train.epochs == 123);
    CHECK(back.hidden_nodes == 7);
    CHECK(back.loop.altitude == 25000.0);
    CHECK(back.plant.grain.r3 == 0.061);
    CHECK(back.to_json_text() == base.to_json_text());
}

TEST_CASE("named scenarios exist with sane bands") {
    AppConfig cfg = AppConfig::defaults();
    for (const char* name : {"step", "doublet", "ramp", "harmonic", "constant"})
        CHECK_NOTHROW(cfg.scenario(name));
    CHECK_THROWS_AS(cfg.scenario("nope"), std::invalid_argument);

    // scenario commands must stay inside the thrust the plant can actually
    // reach at the default altitude, otherwise the loop pins the actuator
    const auto& doublet = cfg.scenario("doublet");
    CHECK(doublet.baseline - doublet.amplitude >= 95.0);
    CHECK(doublet.baseline + doublet.amplitude <= 130.0);
    const auto& harmonic = cfg.scenario("harmonic");
    CHECK(harmonic.baseline - harmonic.amplitude >= 95.0);
    CHECK(harmonic.baseline + harmonic.amplitude <= 130.0);
}
