#include "sfrj/atmosphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfrj {

namespace {

constexpr double kG0 = 9.80665;        // m/s^2
constexpr double kEarthRadius = 6356766.0;  // m, US-76 effective radius

// Layer bases in geopotential meters with lapse rates [K/m].
struct Layer {
    double base;   // geopotential altitude of layer base
    double lapse;  // dT/dh' within the layer
};

// US-76 layers through 84.852 km'; only the first four are reachable for
// geometric altitudes <= 47 km.
constexpr Layer kLayers[] = {
    {0.0, -6.5e-3}, {11000.0, 0.0},     {20000.0, 1.0e-3}, {32000.0, 2.8e-3},
    {47000.0, 0.0}, {51000.0, -2.8e-3}, {71000.0, -2.0e-3},
};
constexpr double kTopGeopotential = 84852.0;
constexpr double kSeaLevelT = 288.15;   // K
constexpr double kSeaLevelP = 101325.0; // Pa

}  // namespace

AtmosphereSample standard_atmosphere(double altitude_m) {
    if (!(altitude_m >= 0.0) || altitude_m > 47000.0) {
        throw std::out_of_range("standard_atmosphere: altitude " +
                                std::to_string(altitude_m) +
                                " m outside [0, 47000] m");
    }
    const double h = kEarthRadius * altitude_m / (kEarthRadius + altitude_m);

    double tb = kSeaLevelT;
    double pb = kSeaLevelP;
    double temperature = tb;
    double pressure = pb;
    for (std::size_t i = 0; i < std::size(kLayers); ++i) {
        const double top =
            (i + 1 < std::size(kLayers)) ? kLayers[i + 1].base : kTopGeopotential;
        const double dh = std::min(h, top) - kLayers[i].base;
        const double lapse = kLayers[i].lapse;
        if (lapse == 0.0) {
            temperature = tb;
            pressure = pb * std::exp(-kG0 * dh / (kGasConstantAir * tb));
        } else {
            temperature = tb + lapse * dh;
            pressure = pb * std::pow(tb / temperature,
                                     kG0 / (kGasConstantAir * lapse));
        }
        if (h <= top) break;
        tb = temperature;
        pb = pressure;
    }
    return {temperature, pressure, pressure / (kGasConstantAir * temperature)};
}

FreestreamConditions freestream_totals(double mach, double altitude_m) {
    if (!(mach >= 0.0) || mach > 6.0) {
        throw std::out_of_range("freestream_totals: mach " +
                                std::to_string(mach) + " outside [0, 6]");
    }
    const AtmosphereSample atm = standard_atmosphere(altitude_m);
    const double ratio = 1.0 + 0.5 * (kGammaAir - 1.0) * mach * mach;
    FreestreamConditions free{};
    free.mach = mach;
    free.altitude = altitude_m;
    free.T0 = atm.temperature;
    free.P0 = atm.pressure;
    free.rho0 = atm.density;
    free.Tt0 = atm.temperature * ratio;
    free.Pt0 = atm.pressure * std::pow(ratio, kGammaAir / (kGammaAir - 1.0));
    free.u0 = mach * std::sqrt(kGammaAir * kGasConstantAir * atm.temperature);
    return free;
}

}  // namespace sfrj
