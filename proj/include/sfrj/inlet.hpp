#pragma once

#include <array>

#include "sfrj/atmosphere.hpp"

namespace sfrj {

// Parametric variable-cowl inlet/isolator: total-pressure recovery and exit
// Mach are quadratics in the normalized capture radius, the captured mass
// flow follows the freestream stream-tube area.
struct InletModel {
    double r0_min = 0.04788;  // m
    double r0_max = 0.05928;  // m
    // c0 + c1*s + c2*s^2 with s = (r0 - r0_min) / (r0_max - r0_min)
    std::array<double, 3> recovery_coeffs{0.55, 0.55, -0.5};
    std::array<double, 3> mach2_coeffs{0.30, 0.0, 0.0};
    double spillage_factor = 1.0;

    double recovery(double r0) const;
    double exit_mach(double r0) const;
};

struct StationConditions {
    double mdot = 0.0;  // kg/s
    double Pt = 0.0;    // Pa
    double Tt = 0.0;    // K
    double mach = 0.0;
    double T = 0.0;     // K, static
    double P = 0.0;     // Pa, static
    double area = 0.0;  // m^2
};

// Isolator-exit (station 2) state for capture radius r0 and exit area A2.
// Throws std::domain_error when r0 is outside [r0_min, r0_max].
StationConditions isolator_exit(const InletModel& model,
                                const FreestreamConditions& free, double r0,
                                double area2);

}  // namespace sfrj
