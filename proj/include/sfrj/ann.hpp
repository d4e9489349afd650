#pragma once

#include "sfrj/combustor.hpp"

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sfrj {

// Thrust surrogate: a small fully connected network mapping
// (r0 [m], Pt4 [Pa], X_CO [-], H [m]) to thrust [N].

enum class Activation { Sigmoid, Tanh, Relu, LeakyRelu };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation a);

struct Dataset {
    struct Row {
        double r0;     // m
        double Pt4;    // Pa
        double X_CO;   // mole fraction
        double H;      // m
        double thrust; // N
    };
    std::vector<Row> rows;
    int nH = 0, nr0 = 0, nr3 = 0;   // grid shape used to generate it (0 if loaded)
    std::size_t failed_points = 0;  // grid points dropped because the plant solve failed

    void save_csv(const std::string& path) const;
    static Dataset load_csv(const std::string& path);
};

// Static plant evaluations over uniform grids of altitude, capture radius and
// port radius. Grid points where the plant fails to evaluate are dropped and
// counted in failed_points.
Dataset generate_dataset(const ThermoDatabase& db, const PlantConfig& plant_cfg,
                         int points_per_axis, double mach = 3.25);

double mse(const std::vector<double>& y, const std::vector<double>& yhat);

// min-max map onto [0, 1]
struct Scaler {
    double min = 0.0;
    double max = 1.0;
    double scale(double x) const { return (x - min) / (max - min); }
    double inverse(double s) const { return min + s * (max - min); }
};

struct TrainConfig {
    int batch_size = 100;
    int epochs = 2000;
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    double split_fraction = 0.8; // training share
    std::uint64_t seed = 1;
};

struct MlpModel {
    std::vector<int> layer_sizes;         // {4, hidden, 1}
    std::vector<Eigen::MatrixXd> weights; // weights[l]: layer_sizes[l+1] x layer_sizes[l]
    std::vector<Eigen::VectorXd> biases;
    Activation activation = Activation::Sigmoid; // hidden layers; output is always sigmoid
    std::array<Scaler, 4> input_scaler{};
    Scaler output_scaler{};
    std::uint64_t init_seed = 0;

    static MlpModel create(int hidden_nodes, Activation act, std::uint64_t seed);

    // raw units in, Newtons out
    double forward(const Eigen::Vector4d& input) const;
    // network on already-normalized inputs, output in (0,1)
    double forward_normalized(const Eigen::Vector4d& x) const;

    void save(const std::string& path) const;
    static MlpModel load(const std::string& path);
};

struct TrainHistory {
    std::vector<double> train_loss; // normalized-space MSE per epoch
    std::vector<double> test_loss;
};

// Seeded shuffle, split, scaler fit on the training share, then mini-batch
// Adam on MSE in normalized space. Deterministic for a fixed seed.
// Throws std::runtime_error naming the epoch if the loss turns non-finite.
TrainHistory train(MlpModel& model, const Dataset& data, const TrainConfig& cfg);

// Batch loss and weight/bias gradients in normalized space (exposed so the
// gradients can be checked against finite differences).
double mlp_gradients(const MlpModel& model, const std::vector<Eigen::Vector4d>& x,
                     const std::vector<double>& y, std::vector<Eigen::MatrixXd>& grad_w,
                     std::vector<Eigen::VectorXd>& grad_b);

struct SweepRow {
    std::string factor;  // "nodes" | "activation" | "batch_size"
    std::string setting; // e.g. "20", "tanh", "100"
    double final_train_loss = 0.0;
    double final_test_loss = 0.0;
    bool ok = false;
    std::string error;
};

struct SweepGrid {
    std::vector<int> nodes{5, 10, 20, 40};
    std::vector<Activation> activations{Activation::Sigmoid, Activation::Tanh, Activation::Relu,
                                        Activation::LeakyRelu};
    std::vector<int> batch_sizes{25, 50, 100, 200};
};

// One-factor-at-a-time sweep around the reference model (20 nodes, sigmoid,
// batch 100). Individual failures are recorded in the row and do not stop the
// sweep. If svg_path is nonempty, writes a loss plot there.
std::vector<SweepRow> sensitivity_sweep(const Dataset& data, const SweepGrid& grid,
                                        const TrainConfig& base_cfg,
                                        const std::string& svg_path = "");

void write_sweep_table(const std::vector<SweepRow>& rows, const std::string& path);

} // namespace sfrj
