#include "rabisense/demkov.hpp"

#include <cmath>
#include <numbers>

#include "rabisense/constants.hpp"
#include "ode_stepping.hpp"

namespace rabisense {

using constants::hbar_J_s;
using constants::yocto;

namespace {
constexpr double kPi = std::numbers::pi;
}

DemkovParams DemkovParams::from_protocol(const ProtocolConfig& cfg, double delta_i) {
    if (!(delta_i >= 0))
        throw ConfigError("DemkovParams: delta_i must be >= 0");
    return DemkovParams{cfg.kappa(), delta_i, cfg.schedule.gamma, cfg.bias()};
}

OperatorMatrix effective_hamiltonian(const DemkovParams& p, double t) {
    if (t < 0)
        throw Error("effective_hamiltonian: t must be >= 0");
    const double half_gap = 0.5 * p.delta_i * std::exp(-p.gamma * t);
    Eigen::MatrixXcd h(2, 2);
    h << -p.bias, half_gap, half_gap, p.bias;
    return OperatorMatrix{std::move(h), true};
}

DemkovAmplitudes integrate_demkov(const DemkovParams& p, double t_final, double tol) {
    if (!(p.gamma > 0))
        throw ConfigError("integrate_demkov: gamma must be positive");
    if (t_final < 10.0 / p.gamma)
        throw ConfigError("integrate_demkov: t_final must be >= 10/gamma for the "
                          "asymptotic regime");

    const Complex i(0.0, 1.0);
    auto rhs = [&p, i](const detail::OdeState& c, detail::OdeState& dc, double t) {
        const double half_gap = 0.5 * p.delta_i * std::exp(-p.gamma * t);
        dc[0] = i * p.bias * c[0] - i * half_gap * c[1];
        dc[1] = -i * p.bias * c[1] - i * half_gap * c[0];
    };

    detail::OdeState c = {Complex(1.0 / std::sqrt(2.0), 0.0), Complex(-1.0 / std::sqrt(2.0), 0.0)};
    detail::integrate_sampled(rhs, c, t_final, 2, tol, tol * 1e-3, t_final, 8,
                              [](double, const detail::OdeState&) {});

    const double norm = std::norm(c[0]) + std::norm(c[1]);
    if (std::abs(norm - 1.0) > 1e-10)
        throw ToleranceNotMet("integrate_demkov: norm drift " + std::to_string(norm - 1.0));
    return DemkovAmplitudes{c[0], c[1]};
}

double asymptotic_population(const DemkovParams& p) { return 0.5 + 0.5 * std::tanh(p.kappa); }

SignalMoments signal_sigma_x(const DemkovParams& p) {
    const double mean = std::tanh(p.kappa);
    return SignalMoments{mean, 1.0 - mean * mean};
}

SignalMoments signal_quadrature(const DemkovParams& p, double g, double omega) {
    const double alpha = g / omega;
    const double mean = -2.0 * alpha * std::tanh(p.kappa);
    return SignalMoments{mean, 1.0 + 4.0 * alpha * alpha - mean * mean};
}

double min_force_sigma_x(const ProtocolConfig& cfg) {
    const double gamma_per_s = cfg.schedule.gamma * 1e3;
    return hbar_J_s * gamma_per_s * (cfg.omega / cfg.g) * std::asinh(1.0) /
           (kPi * cfg.trap.z0_m) / yocto;
}

std::optional<double> min_force_quadrature(const ProtocolConfig& cfg) {
    if (cfg.omega >= 2.0 * cfg.g)
        return std::nullopt; // SNR_Z < 1 for every force: unmeasurable
    const double ratio = cfg.omega / cfg.g;
    const double arg = std::sqrt(0.5 + ratio * ratio / 8.0);
    const double gamma_per_s = cfg.schedule.gamma * 1e3;
    return hbar_J_s * gamma_per_s * ratio * std::atanh(arg) / (kPi * cfg.trap.z0_m) / yocto;
}

double sensitivity_yn_per_rthz(const ProtocolConfig& cfg) {
    return std::sqrt(cfg.schedule.t_final * 1e-3) * min_force_sigma_x(cfg);
}

} // namespace rabisense
