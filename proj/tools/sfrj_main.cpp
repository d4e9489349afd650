#include "sfrj/config.hpp"
#include "sfrj/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

namespace fs = std::filesystem;
using namespace sfrj;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string scenario = "step";
    std::string feedback;
    std::optional<int> points_per_axis;
    std::string data_path;
    std::string model_path;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON run configuration");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--seed", a.seed, "override training and loop seeds");
}

AppConfig load_config(const CommonArgs& a) {
    AppConfig cfg =
        a.config_path.empty() ? AppConfig::defaults() : AppConfig::from_file(a.config_path);
    if (a.seed) {
        cfg.train.seed = *a.seed;
        cfg.loop.seed = *a.seed;
    }
    if (a.points_per_axis) cfg.points_per_axis = *a.points_per_axis;
    if (!a.feedback.empty()) {
        if (a.feedback == "ann")
            cfg.loop.feedback = LoopConfig::Feedback::Ann;
        else if (a.feedback == "true" || a.feedback == "true_thrust")
            cfg.loop.feedback = LoopConfig::Feedback::TrueThrust;
        else
            throw CLI::ValidationError("--feedback must be ann or true");
    }
    return cfg;
}

Dataset obtain_dataset(const AppConfig& cfg, const CommonArgs& a) {
    if (!a.data_path.empty()) return Dataset::load_csv(a.data_path);
    std::printf("generating %d^3 dataset...\n", cfg.points_per_axis);
    Dataset d = generate_dataset(ThermoDatabase::builtin(), cfg.plant, cfg.points_per_axis,
                                 cfg.dataset_mach);
    if (d.failed_points > 0)
        std::printf("warning: %zu grid points failed and were dropped\n", d.failed_points);
    return d;
}

MlpModel obtain_model(const AppConfig& cfg, const CommonArgs& a) {
    if (!a.model_path.empty()) return MlpModel::load(a.model_path);
    const fs::path candidate = fs::path(a.out_dir) / "model.json";
    if (fs::exists(candidate)) return MlpModel::load(candidate.string());
    throw std::runtime_error("no model found; pass --model or run train-ann first");
}

void write_losses(const TrainHistory& h, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    f << "epoch,train_loss,test_loss\n";
    char buf[128];
    for (std::size_t e = 0; e < h.train_loss.size(); ++e) {
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g\n", e + 1, h.train_loss[e],
                      h.test_loss[e]);
        f << buf;
    }
}

int cmd_gen_data(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    Dataset d = obtain_dataset(cfg, a);
    fs::create_directories(a.out_dir);
    const std::string path = (fs::path(a.out_dir) / "dataset.csv").string();
    d.save_csv(path);
    std::printf("wrote %zu rows to %s\n", d.rows.size(), path.c_str());
    return 0;
}

int cmd_train_ann(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    Dataset d = obtain_dataset(cfg, a);
    MlpModel m = MlpModel::create(cfg.hidden_nodes, cfg.activation, cfg.train.seed);
    TrainHistory h = train(m, d, cfg.train);
    fs::create_directories(a.out_dir);
    const std::string model_path = (fs::path(a.out_dir) / "model.json").string();
    m.save(model_path);
    write_losses(h, (fs::path(a.out_dir) / "losses.csv").string());
    std::printf("final train MSE %.4g, test MSE %.4g (normalized); model at %s\n",
                h.train_loss.back(), h.test_loss.back(), model_path.c_str());
    return 0;
}

int cmd_eval_ann(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    MlpModel m = obtain_model(cfg, a);
    Dataset d = obtain_dataset(cfg, a);
    std::vector<double> y, yh;
    for (const auto& r : d.rows) {
        y.push_back(r.thrust);
        yh.push_back(m.forward(Eigen::Vector4d(r.r0, r.Pt4, r.X_CO, r.H)));
    }
    const double m2 = mse(y, yh);
    std::printf("evaluated %zu rows: MSE %.6g N^2, RMSE %.6g N\n", y.size(), m2, std::sqrt(m2));
    return 0;
}

int cmd_simulate(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    Plant plant(ThermoDatabase::builtin(), cfg.plant);
    std::optional<MlpModel> model;
    if (cfg.loop.feedback == LoopConfig::Feedback::Ann || !a.model_path.empty())
        model = obtain_model(cfg, a);
    const CommandSignal& sig = cfg.scenario(a.scenario);
    RunRecord rec = run_closed_loop(plant, cfg.loop, sig, model ? &*model : nullptr);
    emit_outputs(rec, a.out_dir, cfg.to_json_text(), cfg.loop.seed);
    RunSummary s = summarize_run(rec, sig.amplitude, cfg.loop.dt);
    std::printf("%zu steps, termination: %s, saturated steps: %zu\n", rec.rows.size(),
                rec.termination.c_str(), rec.saturation_steps);
    std::printf("max |z| %.4g N, settling time %.4g s, mean |z| final quarter %.4g N\n",
                s.max_abs_z, s.settling_time, s.mean_abs_z_final_quarter);
    return 0;
}

int cmd_sweep_ann(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    Dataset d = obtain_dataset(cfg, a);
    fs::create_directories(a.out_dir);
    auto rows = sensitivity_sweep(d, SweepGrid{}, cfg.train,
                                  (fs::path(a.out_dir) / "ann_sweep.svg").string());
    write_sweep_table(rows, (fs::path(a.out_dir) / "ann_sweep.csv").string());
    for (const auto& r : rows)
        std::printf("%-12s %-10s train %.4g test %.4g %s\n", r.factor.c_str(), r.setting.c_str(),
                    r.final_train_loss, r.final_test_loss, r.ok ? "" : r.error.c_str());
    return 0;
}

int cmd_sweep_rcac(const CommonArgs& a) {
    AppConfig cfg = load_config(a);
    Plant plant(ThermoDatabase::builtin(), cfg.plant);
    std::optional<MlpModel> model;
    if (cfg.loop.feedback == LoopConfig::Feedback::Ann) model = obtain_model(cfg, a);
    auto entries = hyperparameter_sweep(plant, cfg.loop, cfg.scenario("step"), {0.1, 1.0, 10.0},
                                        {1e-4, 1e-5, 1e-6, 1e-7}, model ? &*model : nullptr,
                                        a.out_dir);
    for (const auto& e : entries)
        std::printf("n=%-5g p=%-8g overshoot %.3f settle %ld s %s\n", e.n1, e.p0,
                    e.summary.peak_overshoot_frac, e.summary.settling_step,
                    e.ok ? "" : e.error.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solid-fuel ramjet thrust-control toolkit"};
    app.require_subcommand(1);
    CommonArgs a;

    auto* gen = app.add_subcommand("gen-data", "generate the plant-evaluation dataset");
    add_common(gen, a);
    gen->add_option("--points-per-axis", a.points_per_axis, "grid points per axis");

    auto* tr = app.add_subcommand("train-ann", "train the thrust surrogate");
    add_common(tr, a);
    tr->add_option("--points-per-axis", a.points_per_axis, "grid points per axis");
    tr->add_option("--data", a.data_path, "existing dataset CSV (skips generation)");

    auto* ev = app.add_subcommand("eval-ann", "evaluate a trained surrogate against the plant");
    add_common(ev, a);
    ev->add_option("--points-per-axis", a.points_per_axis, "grid points per axis");
    ev->add_option("--data", a.data_path, "existing dataset CSV (skips generation)");
    ev->add_option("--model", a.model_path, "model file");

    auto* sim = app.add_subcommand("simulate", "run the closed thrust-control loop");
    add_common(sim, a);
    sim->add_option("--scenario", a.scenario, "step|doublet|ramp|harmonic|constant");
    sim->add_option("--feedback", a.feedback, "ann|true");
    sim->add_option("--model", a.model_path, "model file");

    auto* swa = app.add_subcommand("sweep-ann", "surrogate hyperparameter sensitivity sweep");
    add_common(swa, a);
    swa->add_option("--points-per-axis", a.points_per_axis, "grid points per axis");
    swa->add_option("--data", a.data_path, "existing dataset CSV (skips generation)");

    auto* swr = app.add_subcommand("sweep-rcac", "controller hyperparameter sweep");
    add_common(swr, a);
    swr->add_option("--feedback", a.feedback, "ann|true");
    swr->add_option("--model", a.model_path, "model file");

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen->parsed()) return cmd_gen_data(a);
        if (tr->parsed()) return cmd_train_ann(a);
        if (ev->parsed()) return cmd_eval_ann(a);
        if (sim->parsed()) return cmd_simulate(a);
        if (swa->parsed()) return cmd_sweep_ann(a);
        if (swr->parsed()) return cmd_sweep_rcac(a);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
