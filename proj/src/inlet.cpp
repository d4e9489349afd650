#include "sfrj/inlet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sfrj {

namespace {

double quadratic(const std::array<double, 3>& c, double s) {
    return c[0] + s * (c[1] + s * c[2]);
}

}  // namespace

double InletModel::recovery(double r0) const {
    const double s = (r0 - r0_min) / (r0_max - r0_min);
    return quadratic(recovery_coeffs, s);
}

double InletModel::exit_mach(double r0) const {
    const double s = (r0 - r0_min) / (r0_max - r0_min);
    return quadratic(mach2_coeffs, s);
}

StationConditions isolator_exit(const InletModel& model,
                                const FreestreamConditions& free, double r0,
                                double area2) {
    if (!(r0 >= model.r0_min && r0 <= model.r0_max)) {
        throw std::domain_error("isolator_exit: r0=" + std::to_string(r0) +
                                " m outside [" + std::to_string(model.r0_min) +
                                ", " + std::to_string(model.r0_max) + "] m");
    }
    const double recovery = model.recovery(r0);
    const double mach2 = model.exit_mach(r0);
    if (!(recovery > 0.0 && recovery <= 1.0))
        throw std::domain_error("isolator_exit: recovery out of (0, 1]");
    if (!(mach2 > 0.05 && mach2 < 0.9))
        throw std::domain_error("isolator_exit: exit Mach out of (0.05, 0.9)");

    StationConditions st;
    st.mdot = model.spillage_factor * free.rho0 * free.u0 *
              std::numbers::pi * r0 * r0;
    st.Pt = recovery * free.Pt0;
    st.Tt = free.Tt0;  // adiabatic isolator
    st.mach = mach2;
    const double ratio = 1.0 + 0.5 * (kGammaAir - 1.0) * mach2 * mach2;
    st.T = st.Tt / ratio;
    st.P = st.Pt / std::pow(ratio, kGammaAir / (kGammaAir - 1.0));
    st.area = area2;
    return st;
}

}  // namespace sfrj
