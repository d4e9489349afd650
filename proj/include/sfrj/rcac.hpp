#pragma once

#include <Eigen/Dense>
#include <deque>
#include <utility>
#include <vector>

namespace sfrj {

// Adaptive PID in regressor form: u = Kp*z + Ki*sum(z) + Kd*dz, with the
// gains updated online by recursive least squares on a retrospectively
// filtered performance signal.
struct RcacConfig {
    double p0_scale = 1e-5;                 // P0 = p0_scale * I3
    double rz = 1.0;                        // performance weight (scalar, > 0)
    std::vector<double> filter_coeffs{1.0}; // FIR taps N_1..N_nf applied to past (Phi, u)
    Eigen::Vector3d theta0 = Eigen::Vector3d::Zero();
    double ru = 0.0;                        // accepted for config compatibility; the cost
                                            // being minimized has no control penalty term
};

struct RcacState {
    Eigen::Vector3d theta;   // (Kp, Ki, Kd)
    Eigen::Matrix3d P;       // RLS covariance, symmetric positive definite
    double gamma_accum = 0.0; // running sum of performance values
    double z_prev = 0.0;
    double u_prev = 0.0;
    // most-recent-first past (Phi, u) pairs, at most filter length entries
    std::deque<std::pair<Eigen::RowVector3d, double>> history;

    static RcacState initial(const RcacConfig& cfg);
};

// Phi_k = [z_k, gamma_k, z_k - z_{k-1}]
Eigen::RowVector3d build_regressor(double z_k, double gamma_k, double z_prev);

// u_k = Phi_k . theta_k
double control_output(const Eigen::RowVector3d& phi_k, const Eigen::Vector3d& theta_k);

// One RLS update given the performance z_k, the control u_k that was applied,
// and the regressor Phi_k. History shorter than the filter is zero-padded, so
// theta is unchanged while the filtered regressor is identically zero.
RcacState rcac_update(const RcacState& state, const RcacConfig& cfg, double z_k, double u_k,
                      const Eigen::RowVector3d& phi_k);

// Full controller step: z = r - y, integrate, regress, adapt with the
// previously applied control, then emit the next control from the fresh gains.
std::pair<double, RcacState> rcac_pid_step(const RcacState& state, const RcacConfig& cfg,
                                           double command, double measurement);

} // namespace sfrj
