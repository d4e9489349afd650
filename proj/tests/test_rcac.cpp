#include "sfrj/rcac.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

using namespace sfrj;

TEST_CASE("regressor layout") {
    CHECK(build_regressor(0, 0, 0) == Eigen::RowVector3d(0, 0, 0));
    CHECK(build_regressor(1, 2, 0.5) == Eigen::RowVector3d(1, 2, 0.5));
}

TEST_CASE("control output is a dot product") {
    Eigen::RowVector3d phi(1, 2, 0.5);
    CHECK(control_output(phi, Eigen::Vector3d::Zero()) == 0.0);
    CHECK(control_output(phi, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(1.0));
    CHECK(control_output(phi, Eigen::Vector3d(0.1, 0.2, 0.3)) == doctest::Approx(0.65));
    // pure proportional gain passes the error straight through
    CHECK(control_output(build_regressor(3.7, 99.0, 1.0), Eigen::Vector3d(1, 0, 0)) ==
          doctest::Approx(3.7));
}

TEST_CASE("first step with empty history is a fixed point") {
    RcacConfig cfg;
    cfg.p0_scale = 1e-2;
    RcacState s0 = RcacState::initial(cfg);
    Eigen::Vector3d theta_before = s0.theta;
    Eigen::Matrix3d P_before = s0.P;
    RcacState s1 = rcac_update(s0, cfg, 1.5, 0.7, build_regressor(1.5, 1.5, 0.0));
    CHECK(s1.theta == theta_before);
    CHECK(s1.P == P_before);
}

TEST_CASE("bad config rejected") {
    RcacConfig cfg;
    cfg.p0_scale = 0.0;
    CHECK_THROWS_AS(RcacState::initial(cfg), std::invalid_argument);
    cfg.p0_scale = 1.0;
    cfg.rz = -1.0;
    CHECK_THROWS_AS(RcacState::initial(cfg), std::invalid_argument);
    cfg.rz = 1.0;
    cfg.filter_coeffs.clear();
    CHECK_THROWS_AS(RcacState::initial(cfg), std::invalid_argument);
}

namespace {

// Independent zero-padded FIR of past (phi, u) pairs, index i = steps back.
void filter_at(const std::vector<Eigen::RowVector3d>& phis, const std::vector<double>& us,
               std::size_t k, const std::vector<double>& taps, Eigen::RowVector3d& phi_f,
               double& u_f) {
    phi_f.setZero();
    u_f = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (k < i + 1) break;
        phi_f += taps[i] * phis[k - i - 1];
        u_f += taps[i] * us[k - i - 1];
    }
}

// Direct normal-equations minimizer of the quadratic cost
//   sum_i Rz*(z_i - (Phi_f,i*theta - u_f,i))^2 + (theta-theta0)' P0^-1 (theta-theta0)
Eigen::Vector3d batch_theta(const RcacConfig& cfg, const std::vector<double>& zs,
                            const std::vector<Eigen::RowVector3d>& phis,
                            const std::vector<double>& us, std::size_t upto) {
    Eigen::Matrix3d A = (1.0 / cfg.p0_scale) * Eigen::Matrix3d::Identity();
    Eigen::Vector3d b = (1.0 / cfg.p0_scale) * cfg.theta0;
    for (std::size_t k = 0; k < upto; ++k) {
        Eigen::RowVector3d phi_f;
        double u_f;
        filter_at(phis, us, k, cfg.filter_coeffs, phi_f, u_f);
        A += cfg.rz * phi_f.transpose() * phi_f;
        b += cfg.rz * phi_f.transpose() * (zs[k] + u_f);
    }
    return A.ldlt().solve(b);
}

} // namespace

TEST_CASE("recursion matches batch least squares on every prefix") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        RcacConfig cfg;
        cfg.p0_scale = (trial % 2 == 0) ? 1e-2 : 0.5;
        cfg.rz = (trial % 3 == 0) ? 2.0 : 1.0;
        if (trial >= 4) cfg.filter_coeffs = {1.0, -0.3, 0.1}; // longer FIR path
        if (trial == 7) cfg.theta0 = Eigen::Vector3d(0.2, -0.1, 0.05);

        RcacState s = RcacState::initial(cfg);
        std::vector<double> zs, us;
        std::vector<Eigen::RowVector3d> phis;
        double gamma = 0.0, z_prev = 0.0;
        for (int k = 0; k < 30; ++k) {
            double z = gauss(rng);
            double u = gauss(rng);
            gamma += z;
            Eigen::RowVector3d phi = build_regressor(z, gamma, z_prev);
            z_prev = z;
            s = rcac_update(s, cfg, z, u, phi);
            zs.push_back(z);
            phis.push_back(phi);
            us.push_back(u);

            Eigen::Vector3d ref = batch_theta(cfg, zs, phis, us, zs.size());
            double scale = std::max(1.0, ref.norm());
            CHECK((s.theta - ref).norm() / scale < 1e-8);
        }
    }
}

TEST_CASE("covariance stays symmetric positive definite with nonincreasing trace") {
    RcacConfig cfg;
    cfg.p0_scale = 1e-1;
    RcacState s = RcacState::initial(cfg);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double gamma = 0.0, z_prev = 0.0, trace_prev = s.P.trace();
    for (int k = 0; k < 200; ++k) {
        double z = gauss(rng);
        gamma += z;
        Eigen::RowVector3d phi = build_regressor(z, gamma, z_prev);
        z_prev = z;
        s = rcac_update(s, cfg, z, gauss(rng), phi);
        CHECK((s.P - s.P.transpose()).norm() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(s.P);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
        CHECK(s.P.trace() <= trace_prev + 1e-15);
        trace_prev = s.P.trace();
    }
}

TEST_CASE("zero filter tap freezes the gains") {
    RcacConfig cfg;
    cfg.filter_coeffs = {0.0};
    RcacState s = RcacState::initial(cfg);
    double gamma = 0.0, z_prev = 0.0;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        double z = gauss(rng);
        gamma += z;
        Eigen::RowVector3d phi = build_regressor(z, gamma, z_prev);
        z_prev = z;
        s = rcac_update(s, cfg, z, gauss(rng), phi);
        CHECK(s.theta == cfg.theta0);
    }
}

TEST_CASE("perfect tracking keeps control at zero") {
    RcacConfig cfg;
    RcacState s = RcacState::initial(cfg);
    for (int k = 0; k < 20; ++k) {
        auto [u, next] = rcac_pid_step(s, cfg, 100.0, 100.0);
        CHECK(u == 0.0);
        CHECK(next.theta == cfg.theta0);
        s = next;
    }
}

TEST_CASE("uniform cost scaling leaves the gain trajectory unchanged") {
    RcacConfig a, b;
    a.p0_scale = 1e-2;
    a.rz = 1.0;
    b.p0_scale = a.p0_scale / 5.0; // P0^-1 and Rz both scaled by 5
    b.rz = 5.0;
    RcacState sa = RcacState::initial(a), sb = RcacState::initial(b);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        double y = gauss(rng);
        auto [ua, na] = rcac_pid_step(sa, a, 1.0, y);
        auto [ub, nb] = rcac_pid_step(sb, b, 1.0, y);
        CHECK((na.theta - nb.theta).norm() < 1e-10 * std::max(1.0, na.theta.norm()));
        CHECK(ua == doctest::Approx(ub).epsilon(1e-10));
        sa = na;
        sb = nb;
    }
}

TEST_CASE("adapts to a simple integrator plant") {
    RcacConfig cfg;
    cfg.p0_scale = 1e-2;
    RcacState s = RcacState::initial(cfg);
    double y = 0.0;
    bool settled = false;
    for (int k = 0; k < 500; ++k) {
        auto [u, next] = rcac_pid_step(s, cfg, 1.0, y);
        s = next;
        y = y + 0.1 * u;
        if (k > 400) {
            settled = std::abs(1.0 - y) < 1e-2;
            if (!settled) break;
        }
    }
    CHECK(settled);
}

TEST_CASE("deterministic gain trajectory") {
    auto run = [] {
        RcacConfig cfg;
        RcacState s = RcacState::initial(cfg);
        double y = 0.0;
        std::vector<double> trace;
        for (int k = 0; k < 100; ++k) {
            auto [u, next] = rcac_pid_step(s, cfg, 50.0, y);
            s = next;
            y = 0.9 * y + 0.2 * u;
            trace.push_back(s.theta(0));
            trace.push_back(s.theta(1));
            trace.push_back(s.theta(2));
        }
        return trace;
    };
    CHECK(run() == run());
}
