#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sfrj/atmosphere.hpp"

using namespace sfrj;

TEST_CASE("sea level matches US-76 base values") {
    const auto atm = standard_atmosphere(0.0);
    CHECK(atm.temperature == doctest::Approx(288.15).epsilon(1e-12));
    CHECK(atm.pressure == doctest::Approx(101325.0).epsilon(1e-12));
    CHECK(atm.density == doctest::Approx(1.225).epsilon(2e-3));
}

TEST_CASE("30 km pressure matches the published table") {
    const auto atm = standard_atmosphere(30000.0);
    CHECK(atm.pressure == doctest::Approx(1197.0).epsilon(5e-3));
}

TEST_CASE("11 km tropopause values and layer continuity") {
    const auto atm = standard_atmosphere(11000.0);
    // 11 km geometric is slightly below the 11 km' geopotential boundary.
    CHECK(atm.temperature == doctest::Approx(216.77).epsilon(1e-3));
    const auto below = standard_atmosphere(11000.0 - 1e-4);
    CHECK(std::abs(atm.temperature - below.temperature) < 1e-6);
    CHECK(std::abs(atm.pressure - below.pressure) / atm.pressure < 1e-7);
}

TEST_CASE("altitude range enforced") {
    CHECK_THROWS_AS(standard_atmosphere(-1.0), std::out_of_range);
    CHECK_THROWS_AS(standard_atmosphere(47001.0), std::out_of_range);
    CHECK_NOTHROW(standard_atmosphere(47000.0));
}

TEST_CASE("pressure strictly decreases, temperature decreases in 10-20 km") {
    double prev_p = standard_atmosphere(0.0).pressure;
    for (double h = 500.0; h <= 47000.0; h += 500.0) {
        const double p = standard_atmosphere(h).pressure;
        CHECK(p < prev_p);
        prev_p = p;
    }
    double prev_t = standard_atmosphere(10000.0).temperature;
    for (double h = 10100.0; h <= 10900.0; h += 100.0) {
        const double t = standard_atmosphere(h).temperature;
        CHECK(t < prev_t);
        prev_t = t;
    }
}

TEST_CASE("cruise total pressure reproduces the design point") {
    const auto free = freestream_totals(3.25, 30000.0);
    CHECK(free.Pt0 == doctest::Approx(63677.0).epsilon(0.01));
    CHECK(free.Tt0 / free.T0 == doctest::Approx(3.1125).epsilon(1e-12));
    CHECK(free.u0 ==
          doctest::Approx(3.25 * std::sqrt(1.4 * kGasConstantAir * free.T0))
              .epsilon(1e-12));
    CHECK(free.rho0 ==
          doctest::Approx(free.P0 / (kGasConstantAir * free.T0)).epsilon(1e-12));
}

TEST_CASE("zero Mach leaves static conditions untouched") {
    const auto free = freestream_totals(0.0, 21000.0);
    CHECK(free.Tt0 == doctest::Approx(free.T0).epsilon(1e-14));
    CHECK(free.Pt0 == doctest::Approx(free.P0).epsilon(1e-14));
    CHECK(free.u0 == 0.0);
}

TEST_CASE("mach range enforced") {
    CHECK_THROWS_AS(freestream_totals(6.5, 1000.0), std::out_of_range);
    CHECK_THROWS_AS(freestream_totals(3.0, 50000.0), std::out_of_range);
}
