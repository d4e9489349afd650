#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "sfrj/thermo.hpp"

namespace sfrj {

struct EquilibriumProblem {
    enum class Mode { fixed_T, fixed_H };

    std::map<std::string, double> reactant_moles;
    double pressure = 0.0;        // Pa
    Mode mode = Mode::fixed_T;
    double temperature = 0.0;     // K, fixed_T mode
    double h_target = 0.0;        // J/kg of total reactant mass, fixed_H mode
};

struct EquilibriumResult {
    double temperature = 0.0;     // K
    MixtureState composition;
    double gamma = 0.0;
    double R = 0.0;               // J/(kg K)
    int iterations = 0;
    bool converged = false;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double stationarity_residual,
                     double element_residual)
        : std::runtime_error(what),
          stationarity_residual(stationarity_residual),
          element_residual(element_residual) {}

    double stationarity_residual;
    double element_residual;
};

// Warm-start data carried between successive solves of nearby problems.
struct EquilibriumWarmStart {
    double temperature = 0.0;
    std::map<std::string, double> element_potentials;
    double log_total_moles = 0.0;
    bool valid = false;
};

// Gibbs minimization over the database species that are composable from the
// elements present in the reactants, via the element-potential formulation:
// one Lagrange multiplier per element plus the total mole count.
class EquilibriumSolver {
  public:
    explicit EquilibriumSolver(const ThermoDatabase& db) : db_(db) {}

    EquilibriumResult equilibrate_tp(const EquilibriumProblem& problem,
                                     EquilibriumWarmStart* warm = nullptr) const;
    EquilibriumResult equilibrate_hp(const EquilibriumProblem& problem,
                                     EquilibriumWarmStart* warm = nullptr) const;

    static constexpr int kMaxIterations = 200;
    static constexpr double kResidualTol = 1e-10;
    static constexpr double kTraceFloor = 1e-30;

  private:
    const ThermoDatabase& db_;
};

}  // namespace sfrj
