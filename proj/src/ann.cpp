#include "sfrj/ann.hpp"
#include "sfrj/svgplot.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sfrj {

using json = nlohmann::json;

Activation activation_from_name(const std::string& name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "tanh") return Activation::Tanh;
    if (name == "relu") return Activation::Relu;
    if (name == "leakyrelu") return Activation::LeakyRelu;
    throw std::invalid_argument("unknown activation: " + name);
}

std::string activation_name(Activation a) {
    switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::LeakyRelu: return "leakyrelu";
    }
    throw std::logic_error("bad activation enum");
}

namespace {

constexpr double kLeakySlope = 0.01;
constexpr const char* kCsvHeader = "r0_m,Pt4_Pa,X_CO,H_m,thrust_N";

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double act_value(Activation a, double z) {
    switch (a) {
    case Activation::Sigmoid: return sigmoid(z);
    case Activation::Tanh: return std::tanh(z);
    case Activation::Relu: return z > 0.0 ? z : 0.0;
    case Activation::LeakyRelu: return z > 0.0 ? z : kLeakySlope * z;
    }
    return 0.0;
}

// derivative expressed via the pre-activation z
double act_deriv(Activation a, double z) {
    switch (a) {
    case Activation::Sigmoid: {
        double s = sigmoid(z);
        return s * (1.0 - s);
    }
    case Activation::Tanh: {
        double t = std::tanh(z);
        return 1.0 - t * t;
    }
    case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::LeakyRelu: return z > 0.0 ? 1.0 : kLeakySlope;
    }
    return 0.0;
}

} // namespace

void Dataset::save_csv(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write dataset: " + path);
    f << kCsvHeader << "\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.r0, r.Pt4, r.X_CO,
                      r.H, r.thrust);
        f << buf;
    }
}

Dataset Dataset::load_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read dataset: " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty dataset file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw std::runtime_error("unexpected dataset header in " + path + ": " + line);
    Dataset d;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        Row r{};
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        if (!(is >> r.r0 >> r.Pt4 >> r.X_CO >> r.H >> r.thrust))
            throw std::runtime_error("malformed dataset row: " + line);
        d.rows.push_back(r);
    }
    return d;
}

Dataset generate_dataset(const ThermoDatabase& db, const PlantConfig& plant_cfg,
                         int points_per_axis, double mach) {
    if (points_per_axis < 2)
        throw std::invalid_argument("generate_dataset: need at least 2 points per axis");
    const int n = points_per_axis;
    auto grid = [n](double lo, double hi, int i) { return lo + (hi - lo) * i / (n - 1); };

    Dataset d;
    d.nH = d.nr0 = d.nr3 = n;
    d.rows.reserve(static_cast<std::size_t>(n) * n * n);
    Plant plant(db, plant_cfg);
    const auto& inlet = plant_cfg.inlet;

    for (int iH = 0; iH < n; ++iH) {
        const double H = grid(10000.0, 40000.0, iH);
        const auto free = freestream_totals(mach, H);
        EquilibriumWarmStart warm;
        for (int ir3 = 0; ir3 < n; ++ir3) {
            const double r3 = grid(plant_cfg.grain.r3, plant_cfg.grain.r3_max, ir3);
            for (int ir0 = 0; ir0 < n; ++ir0) {
                const double r0 = grid(inlet.r0_min, inlet.r0_max, ir0);
                try {
                    auto out = plant.evaluate(free, r0, r3, 0.0, &warm);
                    if (!std::isfinite(out.thrust)) throw std::runtime_error("non-finite thrust");
                    d.rows.push_back({r0, out.Pt4, out.X_CO, H, out.thrust});
                } catch (const std::exception&) {
                    ++d.failed_points;
                    warm = {}; // do not reuse a warm start from a failed solve
                }
            }
        }
    }
    return d;
}

double mse(const std::vector<double>& y, const std::vector<double>& yhat) {
    if (y.size() != yhat.size() || y.empty())
        throw std::invalid_argument("mse: vectors must have equal nonzero length");
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double e = y[i] - yhat[i];
        acc += e * e;
    }
    return acc / static_cast<double>(y.size());
}

MlpModel MlpModel::create(int hidden_nodes, Activation act, std::uint64_t seed) {
    if (hidden_nodes < 1) throw std::invalid_argument("need at least one hidden node");
    MlpModel m;
    m.layer_sizes = {4, hidden_nodes, 1};
    m.activation = act;
    m.init_seed = seed;
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const int fan_in = m.layer_sizes[l], fan_out = m.layer_sizes[l + 1];
        const double lim = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> u(-lim, lim);
        Eigen::MatrixXd w(fan_out, fan_in);
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c)
                w(r, c) = u(rng);
        m.weights.push_back(std::move(w));
        m.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return m;
}

double MlpModel::forward_normalized(const Eigen::Vector4d& x) const {
    Eigen::VectorXd a = x;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        Eigen::VectorXd z = weights[l] * a + biases[l];
        const bool last = (l + 1 == weights.size());
        a.resize(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i)
            a(i) = last ? sigmoid(z(i)) : act_value(activation, z(i));
    }
    return a(0);
}

double MlpModel::forward(const Eigen::Vector4d& input) const {
    Eigen::Vector4d x;
    for (int i = 0; i < 4; ++i)
        x(i) = input_scaler[i].scale(input(i));
    return output_scaler.inverse(forward_normalized(x));
}

void MlpModel::save(const std::string& path) const {
    json j;
    j["layer_sizes"] = layer_sizes;
    j["activation"] = activation_name(activation);
    j["init_seed"] = init_seed;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        std::vector<double> w(weights[l].size());
        // row-major flattening
        for (Eigen::Index r = 0; r < weights[l].rows(); ++r)
            for (Eigen::Index c = 0; c < weights[l].cols(); ++c)
                w[static_cast<std::size_t>(r * weights[l].cols() + c)] = weights[l](r, c);
        j["weights"].push_back(w);
        j["biases"].push_back(std::vector<double>(biases[l].data(),
                                                  biases[l].data() + biases[l].size()));
    }
    for (const auto& s : input_scaler)
        j["input_scaler"].push_back({{"min", s.min}, {"max", s.max}});
    j["output_scaler"] = {{"min", output_scaler.min}, {"max", output_scaler.max}};

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write model: " + path);
    f << j.dump(2) << "\n";
}

MlpModel MlpModel::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read model: " + path);
    json j = json::parse(f);
    MlpModel m;
    m.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    m.activation = activation_from_name(j.at("activation").get<std::string>());
    m.init_seed = j.value("init_seed", std::uint64_t{0});
    if (m.layer_sizes.size() < 2) throw std::runtime_error("model needs at least two layers");
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const int rows = m.layer_sizes[l + 1], cols = m.layer_sizes[l];
        auto w = j.at("weights").at(l).get<std::vector<double>>();
        auto b = j.at("biases").at(l).get<std::vector<double>>();
        if (w.size() != static_cast<std::size_t>(rows) * cols ||
            b.size() != static_cast<std::size_t>(rows))
            throw std::runtime_error("model dimensions inconsistent in " + path);
        Eigen::MatrixXd wm(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                wm(r, c) = w[static_cast<std::size_t>(r) * cols + c];
        m.weights.push_back(std::move(wm));
        m.biases.push_back(Eigen::Map<Eigen::VectorXd>(b.data(), rows));
    }
    for (int i = 0; i < 4; ++i) {
        const auto& s = j.at("input_scaler").at(i);
        m.input_scaler[i] = {s.at("min").get<double>(), s.at("max").get<double>()};
    }
    m.output_scaler = {j.at("output_scaler").at("min").get<double>(),
                       j.at("output_scaler").at("max").get<double>()};
    return m;
}

double mlp_gradients(const MlpModel& model, const std::vector<Eigen::Vector4d>& x,
                     const std::vector<double>& y, std::vector<Eigen::MatrixXd>& grad_w,
                     std::vector<Eigen::VectorXd>& grad_b) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw std::invalid_argument("mlp_gradients: bad batch");
    const std::size_t L = model.weights.size();
    grad_w.clear();
    grad_b.clear();
    for (std::size_t l = 0; l < L; ++l) {
        grad_w.emplace_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
        grad_b.emplace_back(Eigen::VectorXd::Zero(model.biases[l].size()));
    }

    double loss = 0.0;
    std::vector<Eigen::VectorXd> acts(L + 1), pre(L);
    for (std::size_t s = 0; s < n; ++s) {
        acts[0] = x[s];
        for (std::size_t l = 0; l < L; ++l) {
            pre[l] = model.weights[l] * acts[l] + model.biases[l];
            const bool last = (l + 1 == L);
            acts[l + 1].resize(pre[l].size());
            for (Eigen::Index i = 0; i < pre[l].size(); ++i)
                acts[l + 1](i) = last ? sigmoid(pre[l](i))
                                      : act_value(model.activation, pre[l](i));
        }
        const double err = acts[L](0) - y[s];
        loss += err * err;

        // delta at output: d(mse)/d(pre) with sigmoid output
        Eigen::VectorXd delta(1);
        delta(0) = (2.0 / n) * err * act_deriv(Activation::Sigmoid, pre[L - 1](0));
        for (std::size_t li = L; li-- > 0;) {
            grad_w[li] += delta * acts[li].transpose();
            grad_b[li] += delta;
            if (li > 0) {
                Eigen::VectorXd back = model.weights[li].transpose() * delta;
                delta.resize(back.size());
                for (Eigen::Index i = 0; i < back.size(); ++i)
                    delta(i) = back(i) * act_deriv(model.activation, pre[li - 1](i));
            }
        }
    }
    return loss / static_cast<double>(n);
}

namespace {

struct Split {
    std::vector<Eigen::Vector4d> x_train, x_test;
    std::vector<double> y_train, y_test;
};

Split scale_and_split(MlpModel& model, const Dataset& data, const TrainConfig& cfg,
                      std::mt19937_64& rng) {
    const std::size_t n = data.rows.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::size_t n_train = static_cast<std::size_t>(std::llround(cfg.split_fraction * n));
    n_train = std::clamp<std::size_t>(n_train, 1, n);

    // scalers from the training share only
    std::array<Scaler, 4> in{};
    Scaler out{};
    for (std::size_t k = 0; k < n_train; ++k) {
        const auto& r = data.rows[idx[k]];
        const double v[4] = {r.r0, r.Pt4, r.X_CO, r.H};
        for (int f = 0; f < 4; ++f) {
            if (k == 0) in[f] = {v[f], v[f]};
            in[f].min = std::min(in[f].min, v[f]);
            in[f].max = std::max(in[f].max, v[f]);
        }
        if (k == 0) out = {r.thrust, r.thrust};
        out.min = std::min(out.min, r.thrust);
        out.max = std::max(out.max, r.thrust);
    }
    for (auto& s : in)
        if (s.max <= s.min) s.max = s.min + 1.0;
    if (out.max <= out.min) out.max = out.min + 1.0;
    model.input_scaler = in;
    model.output_scaler = out;

    Split sp;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& r = data.rows[idx[k]];
        Eigen::Vector4d xv(in[0].scale(r.r0), in[1].scale(r.Pt4), in[2].scale(r.X_CO),
                           in[3].scale(r.H));
        if (k < n_train) {
            sp.x_train.push_back(xv);
            sp.y_train.push_back(out.scale(r.thrust));
        } else {
            sp.x_test.push_back(xv);
            sp.y_test.push_back(out.scale(r.thrust));
        }
    }
    return sp;
}

double eval_loss(const MlpModel& m, const std::vector<Eigen::Vector4d>& x,
                 const std::vector<double>& y) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = m.forward_normalized(x[i]) - y[i];
        acc += e * e;
    }
    return acc / static_cast<double>(x.size());
}

} // namespace

TrainHistory train(MlpModel& model, const Dataset& data, const TrainConfig& cfg) {
    if (data.rows.empty()) throw std::invalid_argument("train: empty dataset");
    if (cfg.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
    if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
        throw std::invalid_argument("train: split_fraction must be in (0,1)");

    std::mt19937_64 rng(cfg.seed);
    Split sp = scale_and_split(model, data, cfg, rng);
    const std::size_t n_train = sp.x_train.size();

    // Adam moments per parameter block
    const std::size_t L = model.weights.size();
    std::vector<Eigen::MatrixXd> mw(L), vw(L);
    std::vector<Eigen::VectorXd> mb(L), vb(L);
    for (std::size_t l = 0; l < L; ++l) {
        mw[l] = Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols());
        vw[l] = mw[l];
        mb[l] = Eigen::VectorXd::Zero(model.biases[l].size());
        vb[l] = mb[l];
    }

    TrainHistory hist;
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Eigen::Vector4d> bx;
    std::vector<double> by;
    std::vector<Eigen::MatrixXd> gw;
    std::vector<Eigen::VectorXd> gb;
    long t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n_train; start += cfg.batch_size) {
            const std::size_t stop = std::min(n_train, start + cfg.batch_size);
            bx.clear();
            by.clear();
            for (std::size_t k = start; k < stop; ++k) {
                bx.push_back(sp.x_train[order[k]]);
                by.push_back(sp.y_train[order[k]]);
            }
            mlp_gradients(model, bx, by, gw, gb);
            ++t;
            const double bc1 = 1.0 - std::pow(cfg.adam_beta1, t);
            const double bc2 = 1.0 - std::pow(cfg.adam_beta2, t);
            for (std::size_t l = 0; l < L; ++l) {
                mw[l] = cfg.adam_beta1 * mw[l] + (1.0 - cfg.adam_beta1) * gw[l];
                vw[l] = cfg.adam_beta2 * vw[l] + (1.0 - cfg.adam_beta2) * gw[l].array().square().matrix();
                model.weights[l].array() -= cfg.learning_rate * (mw[l].array() / bc1) /
                                            ((vw[l].array() / bc2).sqrt() + cfg.adam_eps);
                mb[l] = cfg.adam_beta1 * mb[l] + (1.0 - cfg.adam_beta1) * gb[l];
                vb[l] = cfg.adam_beta2 * vb[l] + (1.0 - cfg.adam_beta2) * gb[l].array().square().matrix();
                model.biases[l].array() -= cfg.learning_rate * (mb[l].array() / bc1) /
                                           ((vb[l].array() / bc2).sqrt() + cfg.adam_eps);
            }
        }
        hist.train_loss.push_back(eval_loss(model, sp.x_train, sp.y_train));
        hist.test_loss.push_back(eval_loss(model, sp.x_test, sp.y_test));
        if (!std::isfinite(hist.train_loss.back()))
            throw std::runtime_error("training diverged at epoch " + std::to_string(epoch));
    }
    return hist;
}

std::vector<SweepRow> sensitivity_sweep(const Dataset& data, const SweepGrid& grid,
                                        const TrainConfig& base_cfg, const std::string& svg_path) {
    std::vector<SweepRow> rows;
    std::vector<PlotSeries> series;

    auto run_case = [&](const std::string& factor, const std::string& setting, int nodes,
                        Activation act, int batch) {
        SweepRow row{factor, setting, 0.0, 0.0, false, ""};
        try {
            MlpModel m = MlpModel::create(nodes, act, base_cfg.seed);
            TrainConfig cfg = base_cfg;
            cfg.batch_size = batch;
            TrainHistory h = train(m, data, cfg);
            row.final_train_loss = h.train_loss.back();
            row.final_test_loss = h.test_loss.back();
            row.ok = true;
            PlotSeries s;
            s.label = factor + "=" + setting;
            for (std::size_t e = 0; e < h.train_loss.size(); ++e) {
                s.x.push_back(static_cast<double>(e + 1));
                s.y.push_back(h.train_loss[e]);
            }
            series.push_back(std::move(s));
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    };

    for (int nodes : grid.nodes)
        run_case("nodes", std::to_string(nodes), nodes, Activation::Sigmoid, base_cfg.batch_size);
    for (Activation act : grid.activations)
        run_case("activation", activation_name(act), 20, act, base_cfg.batch_size);
    for (int batch : grid.batch_sizes)
        run_case("batch_size", std::to_string(batch), 20, Activation::Sigmoid, batch);

    if (!svg_path.empty()) {
        PlotSpec spec;
        spec.title = "training loss vs epoch, one factor at a time";
        spec.x_label = "epoch";
        spec.y_label = "train MSE (normalized)";
        spec.log_y = true;
        spec.series = std::move(series);
        write_svg_plot(spec, svg_path);
    }
    return rows;
}

void write_sweep_table(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write sweep table: " + path);
    f << "factor,setting,final_train_loss,final_test_loss,status\n";
    char buf[256];
    for (const auto& r : rows) {
        const std::string status = r.ok ? "ok" : "failed: " + r.error;
        std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%s\n", r.factor.c_str(),
                      r.setting.c_str(), r.final_train_loss, r.final_test_loss, status.c_str());
        f << buf;
    }
}

} // namespace sfrj
