#pragma once

#include "sfrj/atmosphere.hpp"
#include "sfrj/equilibrium.hpp"
#include "sfrj/inlet.hpp"
#include "sfrj/thermo.hpp"

namespace sfrj {

// rdot = alpha * G^a * P4^b * Tt2^c, SI-consistent alpha.
struct RegressionParams {
    double alpha = 6.5e-9;
    double a = 0.6;
    double b = 0.4;
    double c = 0.5;
};

struct FuelGrain {
    double rho_f = 900.0;    // kg/m^3
    double L_f = 0.5;        // m
    double r3 = 0.0592;      // m, current (or initial) port radius
    double r3_max = 0.0686;  // m, burnout radius
    RegressionParams regression;
};

struct PortState {
    double rho3;  // kg/m^3
    double u3;    // m/s
    double G;     // kg/(m^2 s)
};

struct CombustorOutputs {
    double thrust = 0.0;    // N
    double Pt4 = 0.0;       // Pa
    double T4 = 0.0;        // K
    double X_CO = 0.0;
    double phi_G = 0.0;
    double mdot_f = 0.0;    // kg/s
    double rdot = 0.0;      // m/s
    double u_e = 0.0;       // m/s
    // diagnostics beyond the core set
    double T4_eq = 0.0;     // K
    double mdot_air = 0.0;  // kg/s
    double P4 = 0.0;        // Pa, pressure used for regression/equilibrium
};

// Mutable per-step plant state. P4_lag <= 0 means "not yet initialized";
// the first evaluation then falls back to the recovery-only estimate Pt2.
struct PlantState {
    double r3 = 0.0592;   // m
    double P4_lag = 0.0;  // Pa
};

struct PlantConfig {
    double mach = 3.25;
    FuelGrain grain;
    InletModel inlet;
    double r2 = 0.0467;           // m, isolator exit radius
    double rt = 0.0504;           // m, nozzle throat radius (geometry metadata)
    double eta_c = 0.75;
    double eta_n = 0.95;
    double friction_factor = 0.02;  // Darcy f_D
    double dt = 0.01;               // s
    // P4 := Pt4 by default (low aft Mach); true converts to static at M2.
    bool p4_static_conversion = false;
    // u_e = eta_n * u_e,th by default; true applies eta_n to kinetic energy.
    bool nozzle_energy_efficiency = false;
    // Regression mass flux G referenced to the port area by default; true
    // uses the isolator exit area instead.
    bool mass_flux_station2 = false;
};

// --- elementary relations -------------------------------------------------

double regression_rate(double G, double P4, double Tt2,
                       const RegressionParams& params);

double friction_total_pressure_loss(const PortState& port, double L_f, double d,
                                    double f_D);

double fuel_mass_flow(const FuelGrain& grain, double rdot);

double equivalence_ratio(double mdot_f, double mdot_air, double f_stoich);

double aft_temperature(double T4_eq, double T2, double eta_c);

double exhaust_velocity(double Tt4, double Pt4, double P0, double gamma4,
                        double R4, double eta_n,
                        bool energy_efficiency = false);

double thrust(double mdot_air, double f, double u_e, double u0);

// C4H6 + 5.5 O2 (+ 5.5*79/21 N2) -> 4 CO2 + 3 H2O, from the database masses.
double stoichiometric_fuel_air_ratio(const ThermoDatabase& db);

// --- full feed-forward chain ------------------------------------------------

class BurnoutSignal : public std::runtime_error {
  public:
    explicit BurnoutSignal(double r3)
        : std::runtime_error("fuel grain burnout at r3 = " + std::to_string(r3) +
                             " m"),
          r3(r3) {}
    double r3;
};

class Plant {
  public:
    Plant(const ThermoDatabase& db, const PlantConfig& cfg);

    // One static full-chain evaluation (dataset mode). p4_lag <= 0 applies
    // the first-step Pt2 initialization.
    CombustorOutputs evaluate(const FreestreamConditions& free, double r0,
                              double r3, double p4_lag = 0.0,
                              EquilibriumWarmStart* warm = nullptr) const;

    struct StepResult {
        CombustorOutputs outputs;
        PlantState state;
        bool burnout = false;
    };

    // Advances r3 and the lagged combustor pressure by dt.
    // Throws BurnoutSignal when called with r3 already at or past r3_max.
    StepResult step(const PlantState& state, double r0,
                    const FreestreamConditions& free, double dt,
                    EquilibriumWarmStart* warm = nullptr) const;

    double area2() const;
    double f_stoich() const { return f_stoich_; }
    const PlantConfig& config() const { return cfg_; }
    const ThermoDatabase& database() const { return db_; }

  private:
    const ThermoDatabase& db_;
    PlantConfig cfg_;
    EquilibriumSolver solver_;
    double f_stoich_;
};

}  // namespace sfrj
