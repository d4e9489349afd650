#include "sfrj/combustor.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfrj {

namespace {

constexpr double kAirMoleO2 = 0.21;
constexpr double kAirMoleN2 = 0.79;

// Compressible mass-flow function mdot*sqrt(Tt)/(A*Pt) as a function of M.
double flow_function(double mach) {
    const double g = kGammaAir;
    const double ratio = 1.0 + 0.5 * (g - 1.0) * mach * mach;
    return std::sqrt(g / kGasConstantAir) * mach *
           std::pow(ratio, -0.5 * (g + 1.0) / (g - 1.0));
}

// Subsonic Mach matching a given value of the mass-flow function.
double subsonic_mach_from_flow(double target) {
    if (target <= 0.0)
        throw std::domain_error("port flow: nonpositive mass-flow function");
    if (target > flow_function(1.0))
        throw std::domain_error("port flow: choked (flow function " +
                                std::to_string(target) + ")");
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (flow_function(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double regression_rate(double G, double P4, double Tt2,
                       const RegressionParams& params) {
    if (!(G > 0.0 && P4 > 0.0 && Tt2 > 0.0))
        throw std::domain_error("regression_rate: inputs must be positive");
    return params.alpha * std::pow(G, params.a) * std::pow(P4, params.b) *
           std::pow(Tt2, params.c);
}

double friction_total_pressure_loss(const PortState& port, double L_f, double d,
                                    double f_D) {
    if (!(L_f > 0.0 && d > 0.0 && f_D >= 0.0))
        throw std::domain_error("friction loss: bad geometry or friction factor");
    return (f_D / 4.0) * (L_f / d) * (0.5 * port.rho3 * port.u3 * port.u3);
}

double fuel_mass_flow(const FuelGrain& grain, double rdot) {
    if (rdot < 0.0) throw std::domain_error("fuel_mass_flow: negative rdot");
    return 2.0 * std::numbers::pi * grain.r3 * grain.L_f * grain.rho_f * rdot;
}

double equivalence_ratio(double mdot_f, double mdot_air, double f_stoich) {
    if (!(mdot_air > 0.0))
        throw std::domain_error("equivalence_ratio: mdot_air must be positive");
    return (mdot_f / mdot_air) / f_stoich;
}

double aft_temperature(double T4_eq, double T2, double eta_c) {
    if (!(eta_c >= 0.0 && eta_c <= 1.0))
        throw std::domain_error("aft_temperature: eta_c outside [0, 1]");
    return eta_c * (T4_eq - T2) + T2;
}

double exhaust_velocity(double Tt4, double Pt4, double P0, double gamma4,
                        double R4, double eta_n, bool energy_efficiency) {
    if (!(Pt4 > P0))
        throw std::domain_error("exhaust_velocity: no expansion, Pt4 <= P0");
    if (!(gamma4 > 1.0))
        throw std::domain_error("exhaust_velocity: gamma4 must exceed 1");
    const double pressure_term =
        1.0 - std::pow(P0 / Pt4, (gamma4 - 1.0) / gamma4);
    const double u_th =
        std::sqrt(2.0 * gamma4 * R4 * Tt4 * pressure_term / (gamma4 - 1.0));
    return energy_efficiency ? std::sqrt(eta_n) * u_th : eta_n * u_th;
}

double thrust(double mdot_air, double f, double u_e, double u0) {
    if (!(mdot_air > 0.0))
        throw std::domain_error("thrust: mdot_air must be positive");
    return mdot_air * (1.0 + f) * u_e - mdot_air * u0;
}

double stoichiometric_fuel_air_ratio(const ThermoDatabase& db) {
    const double m_fuel = db.species("C4H6").molar_mass;
    const double m_air = 5.5 * db.species("O2").molar_mass +
                         5.5 * (kAirMoleN2 / kAirMoleO2) * db.species("N2").molar_mass;
    return m_fuel / m_air;
}

Plant::Plant(const ThermoDatabase& db, const PlantConfig& cfg)
    : db_(db), cfg_(cfg), solver_(db), f_stoich_(stoichiometric_fuel_air_ratio(db)) {}

double Plant::area2() const {
    return std::numbers::pi * cfg_.r2 * cfg_.r2;
}

CombustorOutputs Plant::evaluate(const FreestreamConditions& free, double r0,
                                 double r3, double p4_lag,
                                 EquilibriumWarmStart* warm) const {
    const StationConditions st2 = isolator_exit(cfg_.inlet, free, r0, area2());

    // Station-2 flow expanded to the port area at constant Tt, Pt.
    const double port_area = std::numbers::pi * r3 * r3;
    const double mach3 = subsonic_mach_from_flow(
        st2.mdot * std::sqrt(st2.Tt) / (port_area * st2.Pt));
    const double t3 = st2.Tt / (1.0 + 0.2 * mach3 * mach3);
    const double p3 =
        st2.Pt * std::pow(t3 / st2.Tt, kGammaAir / (kGammaAir - 1.0));
    PortState port;
    port.rho3 = p3 / (kGasConstantAir * t3);
    port.u3 = mach3 * std::sqrt(kGammaAir * kGasConstantAir * t3);
    port.G = st2.mdot / (cfg_.mass_flux_station2 ? st2.area : port_area);

    const double delta_pt = friction_total_pressure_loss(
        port, cfg_.grain.L_f, 2.0 * r3, cfg_.friction_factor);
    const double pt4 = st2.Pt - delta_pt;
    double p4 = pt4;
    if (cfg_.p4_static_conversion) {
        const double ratio = 1.0 + 0.2 * st2.mach * st2.mach;
        p4 = pt4 / std::pow(ratio, kGammaAir / (kGammaAir - 1.0));
    }

    const double p4_for_regression = (p4_lag > 0.0) ? p4_lag : st2.Pt;
    const double rdot =
        regression_rate(port.G, p4_for_regression, st2.Tt, cfg_.grain.regression);

    FuelGrain grain = cfg_.grain;
    grain.r3 = r3;
    const double mdot_f = fuel_mass_flow(grain, rdot);
    const double phi = equivalence_ratio(mdot_f, st2.mdot, f_stoich_);

    // Reactant stream in mol/s: model air plus gaseous fuel, both at T2.
    const double m_air_molar = kAirMoleO2 * db_.species("O2").molar_mass +
                               kAirMoleN2 * db_.species("N2").molar_mass;
    const double n_air = st2.mdot / m_air_molar;
    EquilibriumProblem problem;
    problem.reactant_moles = {{"C4H6", mdot_f / db_.species("C4H6").molar_mass},
                              {"O2", kAirMoleO2 * n_air},
                              {"N2", kAirMoleN2 * n_air}};
    problem.pressure = p4;
    problem.mode = EquilibriumProblem::Mode::fixed_H;
    problem.h_target = db_.mixture_enthalpy(problem.reactant_moles, st2.T);
    const EquilibriumResult eq = solver_.equilibrate_hp(problem, warm);

    CombustorOutputs out;
    out.T4_eq = eq.temperature;
    out.T4 = aft_temperature(eq.temperature, st2.T, cfg_.eta_c);
    out.X_CO = eq.composition.mole_fractions.count("CO")
                   ? eq.composition.mole_fractions.at("CO")
                   : 0.0;
    out.Pt4 = pt4;
    out.P4 = p4;
    out.phi_G = phi;
    out.mdot_f = mdot_f;
    out.mdot_air = st2.mdot;
    out.rdot = rdot;
    out.u_e = exhaust_velocity(out.T4, pt4, free.P0, eq.gamma, eq.R, cfg_.eta_n,
                               cfg_.nozzle_energy_efficiency);
    out.thrust = sfrj::thrust(st2.mdot, mdot_f / st2.mdot, out.u_e, free.u0);
    return out;
}

Plant::StepResult Plant::step(const PlantState& state, double r0,
                              const FreestreamConditions& free, double dt,
                              EquilibriumWarmStart* warm) const {
    if (!(dt > 0.0)) throw std::domain_error("plant step: dt must be positive");
    if (state.r3 >= cfg_.grain.r3_max) throw BurnoutSignal(state.r3);

    StepResult result;
    result.outputs = evaluate(free, r0, state.r3, state.P4_lag, warm);
    result.state.r3 = state.r3 + result.outputs.rdot * dt;
    result.state.P4_lag = result.outputs.P4;
    result.burnout = result.state.r3 > cfg_.grain.r3_max;
    return result;
}

}  // namespace sfrj
