#pragma once

#include <complex>
#include <optional>

#include "rabisense/hilbert.hpp"
#include "rabisense/model.hpp"

namespace rabisense {

/// Parameters of the effective two-level (Demkov) model: constant bias
/// +-(z0 F_d g / hbar omega) on the diagonal and exponentially decaying
/// coupling Delta_gap(t)/2 = (Delta_i/2) e^(-gamma t) off the diagonal.
struct DemkovParams {
    double kappa;   // pi * bias / gamma, dimensionless; sign follows F_d
    double delta_i; // initial gap, rad/ms
    double gamma;   // 1/ms
    double bias;    // rad/ms

    /// kappa and bias come from the physical config (single source of the
    /// unit convention); delta_i is supplied by the caller, normally the
    /// computed E1-E0 at t = 0.
    static DemkovParams from_protocol(const ProtocolConfig& cfg, double delta_i);
};

/// 2x2 Hamiltonian [[-bias, Delta(t)/2], [Delta(t)/2, +bias]].
OperatorMatrix effective_hamiltonian(const DemkovParams& p, double t);

struct DemkovAmplitudes {
    Complex c_plus;
    Complex c_minus;
};

/// Numerically integrated amplitudes from c_+(0) = 1/sqrt(2),
/// c_-(0) = -1/sqrt(2) up to t_final (>= 10/gamma for the asymptotic regime).
/// |c_+|^2 + |c_-|^2 is conserved to 1e-10.
DemkovAmplitudes integrate_demkov(const DemkovParams& p, double t_final, double tol = 1e-12);

/// Closed-form asymptotic population |c_+(t_f >> 1/gamma)|^2
/// = 1/2 + (1/2) tanh(kappa).
double asymptotic_population(const DemkovParams& p);

struct SignalMoments {
    double mean;
    double variance;
};

/// <sigma_x> = tanh(kappa), <Delta^2 sigma_x> = 1 - tanh^2(kappa)
/// (identically 4 |c_+|^2 |c_-|^2).
SignalMoments signal_sigma_x(const DemkovParams& p);

/// <Z> = -2 (g/omega) tanh(kappa),
/// <Delta^2 Z> = 1 + 4 g^2/omega^2 - <Z>^2.
SignalMoments signal_quadrature(const DemkovParams& p, double g, double omega);

/// Minimum detectable force from the sigma_x signal at SNR = 1:
/// F_min = hbar gamma omega asinh(1) / (pi g z0), in yN.
double min_force_sigma_x(const ProtocolConfig& cfg);

/// Quadrature-measurement bound, valid only for omega < 2g:
/// F_min = (hbar gamma omega / pi g z0) atanh(sqrt(1/2 + omega^2/(8 g^2))).
/// Returns nullopt (unmeasurable) for omega >= 2g where SNR_Z never reaches 1.
std::optional<double> min_force_quadrature(const ProtocolConfig& cfg);

/// Force sensitivity eta sqrt(T) = sqrt(t_f [s]) * F_min, in yN/sqrt(Hz).
double sensitivity_yn_per_rthz(const ProtocolConfig& cfg);

} // namespace rabisense
