#include "sfrj/equilibrium.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace sfrj {

namespace {

struct SpeciesView {
    const SpeciesThermo* thermo;
    Eigen::VectorXd atoms;  // per solver element
};

// Problem restricted to the species composable from the reactant elements.
struct SolverSetup {
    std::vector<std::string> elements;       // present elements, sorted
    std::vector<SpeciesView> species;        // database order
    Eigen::VectorXd element_totals;          // mol per mol of reactants
    double pressure;
};

SolverSetup build_setup(const ThermoDatabase& db, const EquilibriumProblem& problem) {
    if (problem.pressure <= 0.0)
        throw std::invalid_argument("equilibrium: pressure must be positive");

    std::map<std::string, double> totals;
    double reactant_moles = 0.0;
    for (const auto& [name, n] : problem.reactant_moles) {
        if (n < 0.0)
            throw std::invalid_argument("equilibrium: negative moles of " + name);
        if (n == 0.0) continue;
        reactant_moles += n;
        for (const auto& [elem, count] : db.species(name).elements)
            totals[elem] += n * count;
    }
    if (reactant_moles <= 0.0)
        throw std::invalid_argument("equilibrium: no reactants");

    SolverSetup setup;
    setup.pressure = problem.pressure;
    for (const auto& [elem, total] : totals)
        if (total > 0.0) setup.elements.push_back(elem);

    setup.element_totals.resize(static_cast<int>(setup.elements.size()));
    for (int e = 0; e < setup.element_totals.size(); ++e)
        setup.element_totals[e] = totals.at(setup.elements[e]) / reactant_moles;

    for (const auto& name : db.names()) {
        const auto& sp = db.species(name);
        const bool composable = std::all_of(
            sp.elements.begin(), sp.elements.end(), [&](const auto& ec) {
                return totals.count(ec.first) && totals.at(ec.first) > 0.0;
            });
        if (!composable) continue;
        Eigen::VectorXd atoms = Eigen::VectorXd::Zero(setup.element_totals.size());
        for (int e = 0; e < atoms.size(); ++e) {
            const auto it = sp.elements.find(setup.elements[e]);
            if (it != sp.elements.end()) atoms[e] = it->second;
        }
        setup.species.push_back({&sp, std::move(atoms)});
    }
    return setup;
}

// g0/(R T) + ln(P/Pref) for every solver species.
Eigen::VectorXd reduced_potentials(const SolverSetup& setup, double T) {
    Eigen::VectorXd c(static_cast<int>(setup.species.size()));
    const double log_p = std::log(setup.pressure / kReferencePressure);
    for (int j = 0; j < c.size(); ++j) {
        const CpHS props = species_cp_h_s(*setup.species[j].thermo, T);
        c[j] = (props.h - T * props.s) / (kUniversalGasConstant * T) + log_p;
    }
    return c;
}

int element_index(const SolverSetup& setup, const std::string& elem) {
    const auto it =
        std::find(setup.elements.begin(), setup.elements.end(), elem);
    return it == setup.elements.end()
               ? -1
               : static_cast<int>(it - setup.elements.begin());
}

double element_total(const SolverSetup& setup, const std::string& elem) {
    const int e = element_index(setup, elem);
    return e < 0 ? 0.0 : setup.element_totals[e];
}

// Deterministic complete-combustion style starting composition.
std::map<std::string, double> initial_guess_moles(const SolverSetup& setup) {
    const double b_c = element_total(setup, "C");
    const double b_h = element_total(setup, "H");
    const double b_o = element_total(setup, "O");
    const double b_n = element_total(setup, "N");

    std::map<std::string, double> guess;
    if (b_n > 0.0) guess["N2"] = b_n / 2.0;

    const double o_needed = 2.0 * b_c + b_h / 2.0;
    if (b_o >= o_needed) {
        if (b_c > 0.0) guess["CO2"] = b_c;
        if (b_h > 0.0) guess["H2O"] = b_h / 2.0;
        const double excess = (b_o - o_needed) / 2.0;
        if (excess > 0.0 || (b_c == 0.0 && b_h == 0.0 && b_o > 0.0))
            guess["O2"] = std::max(excess, b_o > 0.0 ? 1e-6 : 0.0);
    } else if (b_o >= b_c + b_h / 2.0) {
        // Rich: all H to H2O, split C between CO and CO2.
        guess["H2O"] = b_h / 2.0;
        const double o_left = b_o - b_h / 2.0;
        guess["CO2"] = std::max(o_left - b_c, 1e-8);
        guess["CO"] = std::max(2.0 * b_c - o_left, 1e-8);
    } else if (b_o >= b_c) {
        // Very rich: all C to CO, remaining O to H2O, rest of H to H2.
        guess["CO"] = b_c;
        const double o_left = b_o - b_c;
        if (o_left > 0.0) guess["H2O"] = o_left;
        guess["H2"] = std::max((b_h - 2.0 * o_left) / 2.0, 1e-8);
    } else {
        // Not enough O to gasify all carbon: park the remainder as fuel.
        guess["CO"] = std::max(b_o, 1e-8);
        guess["C4H6"] = (b_c - b_o) / 4.0;
        guess["H2"] = std::max((b_h - 6.0 * guess["C4H6"]) / 2.0, 1e-8);
    }
    // Elements with no combustion product (e.g. H with no O at all).
    if (b_h > 0.0 && b_o == 0.0 && b_c == 0.0) guess["H2"] = b_h / 2.0;
    return guess;
}

// Least-squares element potentials reproducing a guess composition.
void fit_potentials(const SolverSetup& setup, const Eigen::VectorXd& c,
                    const std::map<std::string, double>& guess_moles,
                    Eigen::VectorXd& lambda, double& log_n_total) {
    double n_total = 0.0;
    for (const auto& [name, n] : guess_moles) n_total += n;

    std::vector<int> rows;
    for (int j = 0; j < static_cast<int>(setup.species.size()); ++j) {
        const auto it = guess_moles.find(setup.species[j].thermo->name);
        if (it != guess_moles.end() && it->second > 0.0) rows.push_back(j);
    }
    Eigen::MatrixXd A(static_cast<int>(rows.size()), setup.element_totals.size());
    Eigen::VectorXd rhs(static_cast<int>(rows.size()));
    for (int r = 0; r < A.rows(); ++r) {
        const int j = rows[static_cast<std::size_t>(r)];
        A.row(r) = setup.species[j].atoms.transpose();
        const double x = guess_moles.at(setup.species[j].thermo->name) / n_total;
        rhs[r] = std::log(std::max(x, 1e-12)) + c[j];
    }
    lambda = A.colPivHouseholderQr().solve(rhs);
    log_n_total = std::log(n_total);
}

// Mole fractions implied by the potentials, exponent-clamped.
Eigen::VectorXd fractions_from_potentials(const SolverSetup& setup,
                                          const Eigen::VectorXd& c,
                                          const Eigen::VectorXd& lambda) {
    Eigen::VectorXd x(static_cast<int>(setup.species.size()));
    for (int j = 0; j < x.size(); ++j) {
        const double q = setup.species[j].atoms.dot(lambda) - c[j];
        x[j] = std::max(std::exp(std::clamp(q, -690.0, 45.0)),
                        EquilibriumSolver::kTraceFloor);
    }
    return x;
}

struct TpSolution {
    Eigen::VectorXd fractions;
    Eigen::VectorXd lambda;
    double log_n_total;
    int iterations;
    double stationarity_residual;
    double element_residual;
    bool converged;
};

TpSolution solve_tp_newton(const SolverSetup& setup, const Eigen::VectorXd& c,
                           Eigen::VectorXd lambda, double log_n_total,
                           double max_step) {
    const int n_elem = static_cast<int>(setup.element_totals.size());
    TpSolution sol;
    sol.converged = false;

    Eigen::VectorXd residual(n_elem + 1);
    Eigen::MatrixXd jac(n_elem + 1, n_elem + 1);
    for (int iter = 0; iter < EquilibriumSolver::kMaxIterations; ++iter) {
        const Eigen::VectorXd x = fractions_from_potentials(setup, c, lambda);
        const double n_total = std::exp(log_n_total);

        Eigen::VectorXd ax = Eigen::VectorXd::Zero(n_elem);
        Eigen::MatrixXd axa = Eigen::MatrixXd::Zero(n_elem, n_elem);
        for (int j = 0; j < x.size(); ++j) {
            const auto& a = setup.species[j].atoms;
            ax += x[j] * a;
            axa += x[j] * a * a.transpose();
        }
        residual.head(n_elem) = n_total * ax - setup.element_totals;
        residual[n_elem] = x.sum() - 1.0;

        const double elem_res =
            (residual.head(n_elem).cwiseQuotient(setup.element_totals))
                .cwiseAbs()
                .maxCoeff();
        const double stat_res = std::abs(residual[n_elem]);
        sol.iterations = iter;
        sol.stationarity_residual = stat_res;
        sol.element_residual = elem_res;
        if (elem_res < EquilibriumSolver::kResidualTol &&
            stat_res < EquilibriumSolver::kResidualTol) {
            sol.fractions = x / x.sum();
            sol.lambda = lambda;
            sol.log_n_total = log_n_total;
            sol.converged = true;
            return sol;
        }

        jac.topLeftCorner(n_elem, n_elem) = n_total * axa;
        jac.topRightCorner(n_elem, 1) = n_total * ax;
        jac.bottomLeftCorner(1, n_elem) = ax.transpose();
        jac(n_elem, n_elem) = 0.0;

        Eigen::VectorXd step = jac.fullPivLu().solve(-residual);
        const double scale =
            std::min(1.0, max_step / std::max(step.cwiseAbs().maxCoeff(), 1e-300));
        lambda += scale * step.head(n_elem);
        log_n_total += scale * step[n_elem];
    }
    return sol;
}

EquilibriumResult package_result(const ThermoDatabase& db, const SolverSetup& setup,
                                 const TpSolution& sol, double T) {
    EquilibriumResult result;
    result.temperature = T;
    result.iterations = sol.iterations;
    result.converged = true;
    result.composition.temperature = T;
    result.composition.pressure = setup.pressure;
    for (int j = 0; j < sol.fractions.size(); ++j)
        result.composition.mole_fractions[setup.species[j].thermo->name] =
            sol.fractions[j];
    const MixtureProps props = db.mixture_properties(result.composition);
    result.gamma = props.gamma;
    result.R = props.R;
    return result;
}

TpSolution solve_tp(const SolverSetup& setup, double T,
                    EquilibriumWarmStart* warm) {
    const Eigen::VectorXd c = reduced_potentials(setup, T);

    Eigen::VectorXd lambda;
    double log_n_total = 0.0;
    bool have_warm = false;
    if (warm && warm->valid &&
        warm->element_potentials.size() == setup.elements.size()) {
        lambda.resize(static_cast<int>(setup.elements.size()));
        have_warm = true;
        for (int e = 0; e < lambda.size(); ++e) {
            const auto it = warm->element_potentials.find(setup.elements[e]);
            if (it == warm->element_potentials.end()) {
                have_warm = false;
                break;
            }
            lambda[e] = it->second;
        }
        if (have_warm) log_n_total = warm->log_total_moles;
    }
    if (!have_warm)
        fit_potentials(setup, c, initial_guess_moles(setup), lambda, log_n_total);

    TpSolution sol = solve_tp_newton(setup, c, lambda, log_n_total, 2.0);
    if (!sol.converged && have_warm) {
        // Warm start led astray; restart from the deterministic guess.
        fit_potentials(setup, c, initial_guess_moles(setup), lambda, log_n_total);
        sol = solve_tp_newton(setup, c, lambda, log_n_total, 2.0);
    }
    if (!sol.converged) {
        fit_potentials(setup, c, initial_guess_moles(setup), lambda, log_n_total);
        sol = solve_tp_newton(setup, c, lambda, log_n_total, 0.3);
    }
    if (!sol.converged)
        throw ConvergenceError(
            "equilibrate_tp: no convergence after " +
                std::to_string(EquilibriumSolver::kMaxIterations) +
                " iterations (stationarity=" +
                std::to_string(sol.stationarity_residual) +
                ", element=" + std::to_string(sol.element_residual) + ")",
            sol.stationarity_residual, sol.element_residual);

    if (warm) {
        warm->temperature = T;
        warm->log_total_moles = sol.log_n_total;
        warm->element_potentials.clear();
        for (std::size_t e = 0; e < setup.elements.size(); ++e)
            warm->element_potentials[setup.elements[e]] =
                sol.lambda[static_cast<int>(e)];
        warm->valid = true;
    }
    return sol;
}

}  // namespace

EquilibriumResult EquilibriumSolver::equilibrate_tp(
    const EquilibriumProblem& problem, EquilibriumWarmStart* warm) const {
    const SolverSetup setup = build_setup(db_, problem);
    const TpSolution sol = solve_tp(setup, problem.temperature, warm);
    return package_result(db_, setup, sol, problem.temperature);
}

EquilibriumResult EquilibriumSolver::equilibrate_hp(
    const EquilibriumProblem& problem, EquilibriumWarmStart* warm) const {
    const SolverSetup setup = build_setup(db_, problem);

    double t_lo = 0.0;
    double t_hi = 1e30;
    for (const auto& sv : setup.species) {
        t_lo = std::max(t_lo, sv.thermo->t_min);
        t_hi = std::min(t_hi, sv.thermo->t_max);
    }
    t_lo += 1.0;
    t_hi -= 1.0;

    int total_iterations = 0;
    EquilibriumWarmStart local;
    EquilibriumWarmStart* ws = warm ? warm : &local;

    auto enthalpy_at = [&](double T) {
        const TpSolution sol = solve_tp(setup, T, ws);
        total_iterations += sol.iterations + 1;
        std::map<std::string, double> moles;
        for (int j = 0; j < sol.fractions.size(); ++j)
            moles[setup.species[j].thermo->name] = sol.fractions[j];
        return db_.mixture_enthalpy(moles, T);
    };

    const double h_target = problem.h_target;
    const double h_scale = std::max(std::abs(h_target), 1.0);
    const double tol = 1e-7 * h_scale;  // headroom under the 1e-6 contract

    double f_lo = enthalpy_at(t_lo) - h_target;
    if (f_lo >= 0.0) {
        if (f_lo < tol) f_lo = 0.0;  // target exactly at the bracket edge
        else
            throw std::out_of_range(
                "equilibrate_hp: h_target below bracket [" + std::to_string(t_lo) +
                ", " + std::to_string(t_hi) + "] K (h(t_lo) - h_target = " +
                std::to_string(f_lo) + " J/kg)");
    }
    double f_hi = enthalpy_at(t_hi) - h_target;
    if (f_hi <= 0.0) {
        if (f_hi > -tol) f_hi = 0.0;
        else
            throw std::out_of_range(
                "equilibrate_hp: h_target above bracket [" + std::to_string(t_lo) +
                ", " + std::to_string(t_hi) + "] K (h(t_hi) - h_target = " +
                std::to_string(f_hi) + " J/kg)");
    }

    // Safeguarded secant within the verified bracket.
    double a = t_lo, fa = f_lo;
    double b = t_hi, fb = f_hi;
    double t = (warm && warm->valid && warm->temperature > t_lo &&
                warm->temperature < t_hi)
                   ? warm->temperature
                   : 0.5 * (a + b);
    double f = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        f = enthalpy_at(t) - h_target;
        if (std::abs(f) < tol) break;
        if (f > 0.0) {
            b = t;
            fb = f;
        } else {
            a = t;
            fa = f;
        }
        double t_next = t - f * (b - a) / (fb - fa);  // secant through bracket
        if (!(t_next > a && t_next < b)) t_next = 0.5 * (a + b);
        t = t_next;
    }
    if (std::abs(f) >= 1e-6 * h_scale)
        throw ConvergenceError("equilibrate_hp: enthalpy residual " +
                                   std::to_string(f) + " J/kg did not converge",
                               std::abs(f) / h_scale, 0.0);

    const TpSolution sol = solve_tp(setup, t, ws);
    EquilibriumResult result = package_result(db_, setup, sol, t);
    result.iterations = total_iterations;
    return result;
}

}  // namespace sfrj
