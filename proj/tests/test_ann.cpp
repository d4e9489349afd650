#include "sfrj/ann.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

using namespace sfrj;

TEST_CASE("mse basics") {
    CHECK(mse({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(mse({1, 0}, {0, 0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(mse({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(mse({}, {}), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 2);
    std::vector<double> y, yh;
    for (int i = 0; i < 100; ++i) {
        y.push_back(g(rng));
        yh.push_back(g(rng));
    }
    double acc = 0.0;
    for (int i = 0; i < 100; ++i)
        acc += (y[i] - yh[i]) * (y[i] - yh[i]);
    CHECK(mse(y, yh) == doctest::Approx(acc / 100.0).epsilon(1e-12));
}

TEST_CASE("activation names round-trip") {
    for (auto a : {Activation::Sigmoid, Activation::Tanh, Activation::Relu,
                   Activation::LeakyRelu})
        CHECK(activation_from_name(activation_name(a)) == a);
    CHECK_THROWS_AS(activation_from_name("softmax"), std::invalid_argument);
}

TEST_CASE("zero network outputs the scaler midpoint") {
    MlpModel m = MlpModel::create(20, Activation::Sigmoid, 0);
    for (auto& w : m.weights) w.setZero();
    m.input_scaler = {Scaler{0, 1}, Scaler{0, 1}, Scaler{0, 1}, Scaler{0, 1}};
    m.output_scaler = {40.0, 160.0};
    CHECK(m.forward_normalized(Eigen::Vector4d(0.3, 0.7, 0.1, 0.9)) == doctest::Approx(0.5));
    CHECK(m.forward(Eigen::Vector4d(0.5, 0.5, 0.5, 0.5)) == doctest::Approx(100.0));
}

TEST_CASE("input at the scaler minimum maps to zero") {
    Scaler s{2.0, 6.0};
    CHECK(s.scale(2.0) == 0.0);
    CHECK(s.scale(6.0) == 1.0);
    CHECK(s.inverse(s.scale(3.7)) == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("raw network output stays in (0,1)") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0, 3);
    for (int trial = 0; trial < 5; ++trial) {
        MlpModel m = MlpModel::create(7, Activation::Tanh, 100 + trial);
        for (int i = 0; i < 50; ++i) {
            Eigen::Vector4d x(g(rng), g(rng), g(rng), g(rng));
            double out = m.forward_normalized(x);
            CHECK(out > 0.0);
            CHECK(out < 1.0);
        }
    }
}

TEST_CASE("backprop matches central finite differences for every activation") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0, 1);
    for (auto act : {Activation::Sigmoid, Activation::Tanh, Activation::Relu,
                     Activation::LeakyRelu}) {
        for (int trial = 0; trial < 3; ++trial) {
            MlpModel m = MlpModel::create(5, act, 7 * trial + 1);
            // nonzero biases so their gradients are exercised too
            for (auto& b : m.biases)
                for (Eigen::Index i = 0; i < b.size(); ++i)
                    b(i) = 0.1 * g(rng);
            std::vector<Eigen::Vector4d> x;
            std::vector<double> y;
            for (int i = 0; i < 6; ++i) {
                // keep relu pre-activations away from the kink
                x.emplace_back(0.3 + 0.1 * g(rng), 0.5 + 0.1 * g(rng), 0.4 + 0.1 * g(rng),
                               0.6 + 0.1 * g(rng));
                y.push_back(0.3 + 0.05 * g(rng));
            }
            std::vector<Eigen::MatrixXd> gw;
            std::vector<Eigen::VectorXd> gb;
            mlp_gradients(m, x, y, gw, gb);

            const double h = 1e-6;
            auto loss_at = [&](MlpModel& mm) {
                std::vector<double> yh;
                for (const auto& xi : x) yh.push_back(mm.forward_normalized(xi));
                return mse(y, yh);
            };
            double max_rel = 0.0;
            for (std::size_t l = 0; l < m.weights.size(); ++l) {
                for (Eigen::Index r = 0; r < m.weights[l].rows(); ++r)
                    for (Eigen::Index c = 0; c < m.weights[l].cols(); ++c) {
                        MlpModel mp = m, mm2 = m;
                        mp.weights[l](r, c) += h;
                        mm2.weights[l](r, c) -= h;
                        double fd = (loss_at(mp) - loss_at(mm2)) / (2 * h);
                        double rel = std::abs(fd - gw[l](r, c)) /
                                     std::max(1e-8, std::abs(fd));
                        max_rel = std::max(max_rel, rel);
                    }
                for (Eigen::Index i = 0; i < m.biases[l].size(); ++i) {
                    MlpModel mp = m, mm2 = m;
                    mp.biases[l](i) += h;
                    mm2.biases[l](i) -= h;
                    double fd = (loss_at(mp) - loss_at(mm2)) / (2 * h);
                    double rel = std::abs(fd - gb[l](i)) / std::max(1e-8, std::abs(fd));
                    max_rel = std::max(max_rel, rel);
                }
            }
            CHECK(max_rel < 1e-5);
        }
    }
}

namespace {

Dataset corner_dataset() {
    Dataset d;
    // 2x2x2 corner grid with a smooth synthetic response
    for (double r0 : {0.04788, 0.05928})
        for (double pt : {3e4, 5e4})
            for (double h : {10000.0, 40000.0}) {
                double thrust = 2000.0 * r0 + 1e-3 * pt + 5e-4 * (40000.0 - h);
                d.rows.push_back({r0, pt, 0.05, h, thrust});
            }
    return d;
}

} // namespace

TEST_CASE("one epoch on the corner dataset reduces the training loss") {
    Dataset d = corner_dataset();
    MlpModel m = MlpModel::create(20, Activation::Sigmoid, 3);
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.batch_size = 2;
    cfg.split_fraction = 0.75;
    MlpModel fresh = m;
    TrainHistory h1 = train(m, d, cfg);

    // initial loss of the untouched model on the same split
    cfg.epochs = 40;
    TrainHistory h40 = train(fresh, d, cfg);
    CHECK(h40.train_loss.back() < h40.train_loss.front());
    CHECK(std::isfinite(h1.train_loss.front()));
}

TEST_CASE("Adam drives a scalar quadratic to its minimum") {
    // f(w) = (w-3)^2, canonical moment constants, lr 0.01
    double w = 0.0, m1 = 0.0, v = 0.0;
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8, lr = 0.01;
    int steps = 0;
    for (; steps < 2000; ++steps) {
        double g = 2.0 * (w - 3.0);
        m1 = b1 * m1 + (1 - b1) * g;
        v = b2 * v + (1 - b2) * g * g;
        double mh = m1 / (1 - std::pow(b1, steps + 1));
        double vh = v / (1 - std::pow(b2, steps + 1));
        w -= lr * mh / (std::sqrt(vh) + eps);
        if (std::abs(w - 3.0) < 1e-3) break;
    }
    CHECK(std::abs(w - 3.0) < 1e-3);
    CHECK(steps < 2000);
}

TEST_CASE("training is bit-reproducible under a fixed seed") {
    Dataset d = corner_dataset();
    auto run = [&] {
        MlpModel m = MlpModel::create(8, Activation::Sigmoid, 11);
        TrainConfig cfg;
        cfg.epochs = 5;
        cfg.batch_size = 3;
        cfg.split_fraction = 0.75;
        cfg.seed = 4;
        train(m, d, cfg);
        return m;
    };
    MlpModel a = run(), b = run();
    for (std::size_t l = 0; l < a.weights.size(); ++l) {
        CHECK(a.weights[l] == b.weights[l]);
        CHECK(a.biases[l] == b.biases[l]);
    }
}

TEST_CASE("model file round-trip preserves predictions") {
    Dataset d = corner_dataset();
    MlpModel m = MlpModel::create(6, Activation::LeakyRelu, 9);
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.batch_size = 4;
    cfg.split_fraction = 0.75;
    train(m, d, cfg);

    auto path = std::filesystem::temp_directory_path() / "sfrj_model_test.json";
    m.save(path.string());
    MlpModel r = MlpModel::load(path.string());
    std::filesystem::remove(path);

    CHECK(r.activation == m.activation);
    CHECK(r.layer_sizes == m.layer_sizes);
    for (const auto& row : d.rows) {
        Eigen::Vector4d x(row.r0, row.Pt4, row.X_CO, row.H);
        CHECK(r.forward(x) == m.forward(x));
    }
}

TEST_CASE("dataset CSV round-trip") {
    Dataset d = corner_dataset();
    auto path = std::filesystem::temp_directory_path() / "sfrj_dataset_test.csv";
    d.save_csv(path.string());
    Dataset r = Dataset::load_csv(path.string());
    std::filesystem::remove(path);
    REQUIRE(r.rows.size() == d.rows.size());
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        CHECK(r.rows[i].r0 == d.rows[i].r0);
        CHECK(r.rows[i].Pt4 == d.rows[i].Pt4);
        CHECK(r.rows[i].X_CO == d.rows[i].X_CO);
        CHECK(r.rows[i].H == d.rows[i].H);
        CHECK(r.rows[i].thrust == d.rows[i].thrust);
    }
}

TEST_CASE("generated grid has the expected size and plant-true values") {
    const auto& db = ThermoDatabase::builtin();
    PlantConfig pc;
    Dataset d = generate_dataset(db, pc, 2);
    CHECK(d.rows.size() == 8);
    CHECK(d.failed_points == 0);
    for (const auto& r : d.rows) {
        CHECK(std::isfinite(r.thrust));
        CHECK(r.H >= 10000.0);
        CHECK(r.H <= 40000.0);
        CHECK(r.r0 >= pc.inlet.r0_min);
        CHECK(r.r0 <= pc.inlet.r0_max);
    }
    CHECK_THROWS_AS(generate_dataset(db, pc, 1), std::invalid_argument);

    // spot-check one corner against a direct plant evaluation
    Plant plant(db, pc);
    auto free = freestream_totals(3.25, 10000.0);
    auto out = plant.evaluate(free, pc.inlet.r0_min, pc.grain.r3, 0.0);
    bool found = false;
    for (const auto& r : d.rows)
        if (r.H == 10000.0 && r.r0 == pc.inlet.r0_min && r.thrust == out.thrust) found = true;
    CHECK(found);
}

TEST_CASE("thrust is monotone in capture radius on a grid slice") {
    const auto& db = ThermoDatabase::builtin();
    PlantConfig pc;
    Dataset d = generate_dataset(db, pc, 5);
    REQUIRE(d.rows.size() == 125);
    // rows are ordered H-major, then r3, then r0
    for (int iH = 0; iH < 5; ++iH)
        for (int ir3 = 0; ir3 < 5; ++ir3) {
            double prev = -1e300;
            for (int ir0 = 0; ir0 < 5; ++ir0) {
                const auto& r = d.rows[static_cast<std::size_t>(iH) * 25 + ir3 * 5 + ir0];
                CHECK(r.thrust > prev);
                prev = r.thrust;
            }
        }
}
