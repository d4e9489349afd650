#pragma once

namespace sfrj {

inline constexpr double kGasConstantAir = 287.053;  // J/(kg K)
inline constexpr double kGammaAir = 1.4;

struct AtmosphereSample {
    double temperature;  // K
    double pressure;     // Pa
    double density;      // kg/m^3
};

struct FreestreamConditions {
    double mach;
    double altitude;  // m, geometric
    double T0;        // K, static
    double P0;        // Pa, static
    double Tt0;       // K, total
    double Pt0;       // Pa, total
    double u0;        // m/s
    double rho0;      // kg/m^3
};

// US Standard Atmosphere 1976, valid for geometric altitude in [0, 47000] m.
// Throws std::out_of_range outside that range.
AtmosphereSample standard_atmosphere(double altitude_m);

// Static + isentropic total conditions (gamma = 1.4) at the given flight point.
FreestreamConditions freestream_totals(double mach, double altitude_m);

}  // namespace sfrj
