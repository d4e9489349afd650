#include "sfrj/rcac.hpp"

#include <stdexcept>

namespace sfrj {

RcacState RcacState::initial(const RcacConfig& cfg) {
    if (cfg.p0_scale <= 0.0)
        throw std::invalid_argument("rcac: p0_scale must be positive");
    if (cfg.rz <= 0.0)
        throw std::invalid_argument("rcac: rz must be positive");
    if (cfg.filter_coeffs.empty())
        throw std::invalid_argument("rcac: filter needs at least one tap");
    RcacState s;
    s.theta = cfg.theta0;
    s.P = cfg.p0_scale * Eigen::Matrix3d::Identity();
    return s;
}

Eigen::RowVector3d build_regressor(double z_k, double gamma_k, double z_prev) {
    return {z_k, gamma_k, z_k - z_prev};
}

double control_output(const Eigen::RowVector3d& phi_k, const Eigen::Vector3d& theta_k) {
    return phi_k.dot(theta_k);
}

namespace {

// FIR filter over the stored past: sum_i N_i * (Phi_{k-i}, u_{k-i}),
// zero-padded when fewer than n_f entries exist yet.
std::pair<Eigen::RowVector3d, double>
filtered(const RcacState& state, const std::vector<double>& taps) {
    Eigen::RowVector3d phi_f = Eigen::RowVector3d::Zero();
    double u_f = 0.0;
    for (std::size_t i = 0; i < taps.size() && i < state.history.size(); ++i) {
        phi_f += taps[i] * state.history[i].first;
        u_f += taps[i] * state.history[i].second;
    }
    return {phi_f, u_f};
}

} // namespace

RcacState rcac_update(const RcacState& state, const RcacConfig& cfg, double z_k, double u_k,
                      const Eigen::RowVector3d& phi_k) {
    RcacState next = state;

    auto [phi_f, u_f] = filtered(state, cfg.filter_coeffs);

    const double denom = 1.0 / cfg.rz + (phi_f * state.P * phi_f.transpose()).value();
    next.P = state.P - (state.P * phi_f.transpose()) * (phi_f * state.P) / denom;
    next.P = 0.5 * (next.P + next.P.transpose()); // keep symmetry exact

    // Retrospective performance: the error the filtered control difference
    // would have removed. With z = command - measurement, raising u lowers z,
    // so the hypothetical-minus-applied control term enters with a minus sign.
    const double retro = z_k - ((phi_f * state.theta).value() - u_f);
    next.theta = state.theta + next.P * phi_f.transpose() * cfg.rz * retro;

    next.history.emplace_front(phi_k, u_k);
    while (next.history.size() > cfg.filter_coeffs.size())
        next.history.pop_back();
    return next;
}

std::pair<double, RcacState> rcac_pid_step(const RcacState& state, const RcacConfig& cfg,
                                           double command, double measurement) {
    const double z_k = command - measurement;
    const double gamma_k = state.gamma_accum + z_k;
    const Eigen::RowVector3d phi_k = build_regressor(z_k, gamma_k, state.z_prev);

    RcacState next = rcac_update(state, cfg, z_k, state.u_prev, phi_k);
    next.gamma_accum = gamma_k;
    next.z_prev = z_k;

    const double u_next = control_output(phi_k, next.theta);
    next.u_prev = u_next;
    return {u_next, next};
}

} // namespace sfrj
