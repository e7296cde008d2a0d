#include "rabisense/model.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rabisense/constants.hpp"

namespace rabisense {

using constants::atomic_mass_kg;
using constants::bohr_magneton_J_per_T;
using constants::hbar_J_s;
using constants::yocto;

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(AngularConvention c) {
    return c == AngularConvention::TwoPi ? "two_pi" : "plain";
}

AngularConvention angular_convention_from_string(const std::string& s) {
    if (s == "two_pi") return AngularConvention::TwoPi;
    if (s == "plain") return AngularConvention::Plain;
    throw ConfigError("unknown angular_convention '" + s + "' (expected two_pi or plain)");
}

double khz_to_rad_per_ms(double value_khz, AngularConvention c) {
    // 1 kHz = 1 cycle/ms, so the two_pi reading is 2 pi rad/ms per kHz.
    return c == AngularConvention::TwoPi ? 2.0 * kPi * value_khz : value_khz;
}

double mhz_to_rad_per_s(double value_mhz, AngularConvention c) {
    return (c == AngularConvention::TwoPi ? 2.0 * kPi : 1.0) * value_mhz * 1e6;
}

RampSchedule::RampSchedule(double omega_y0_, double gamma_, double t_final_)
    : omega_y0(omega_y0_), gamma(gamma_), t_final(t_final_) {
    if (!(omega_y0 > 0) || !(gamma > 0) || !(t_final > 0))
        throw ConfigError("RampSchedule requires omega_y0, gamma, t_final > 0");
}

double RampSchedule::value(double t) const { return omega_y0 * std::exp(-gamma * t); }

double RampSchedule::derivative(double t) const { return -gamma * value(t); }

TrapPhysics::TrapPhysics(double ion_mass_kg_, double trap_omega_rad_s_)
    : ion_mass_kg(ion_mass_kg_), trap_omega_rad_s(trap_omega_rad_s_) {
    if (!(ion_mass_kg > 0) || !(trap_omega_rad_s > 0))
        throw ConfigError("TrapPhysics requires positive mass and trap frequency");
    z0_m = std::sqrt(hbar_J_s / (2.0 * ion_mass_kg * trap_omega_rad_s));
}

TrapPhysics TrapPhysics::from_amu(double mass_amu, double trap_freq_mhz, AngularConvention c) {
    return TrapPhysics(mass_amu * atomic_mass_kg, mhz_to_rad_per_s(trap_freq_mhz, c));
}

void IntegratorSettings::validate() const {
    if (!(rel_tol > 0) || rel_tol > 1e-2 || !(abs_tol > 0) || abs_tol > 1e-2)
        throw ConfigError("integrator tolerances must lie in (0, 1e-2]");
    if (!(max_step_ms > 0))
        throw ConfigError("max_step_ms must be positive");
    if (method_order < 4)
        throw ConfigError("method_order must be >= 4");
}

std::vector<std::string> ProtocolConfig::validate() const {
    // g = 0 is a meaningful decoupled limit; omega must stay positive
    if (!(g >= 0) || !(omega > 0))
        throw ConfigError("ProtocolConfig requires g >= 0 and omega > 0");
    integrator.validate();
    if (heating && (heating->ndot_per_ms < 0 || !(heating->nbar > 0)))
        throw ConfigError("heating requires ndot >= 0 and nbar > 0");
    std::vector<std::string> warnings;
    if (schedule.omega_y0 / g < 5.0)
        warnings.push_back("omega_y0/g = " + std::to_string(schedule.omega_y0 / g) +
                           " < 5; the protocol assumes Omega_y(0) >> g");
    return warnings;
}

double force_term_coefficient(const TrapPhysics& trap, double force_yN) {
    // z0 F_d / (2 hbar) in 1/s, converted to rad/ms
    return trap.z0_m * force_yN * yocto / (2.0 * hbar_J_s) * 1e-3;
}

double ProtocolConfig::force_coefficient() const { return force_term_coefficient(trap, force_yN); }

double ProtocolConfig::bias() const { return 2.0 * force_coefficient() * g / omega; }

double ProtocolConfig::kappa() const { return kPi * bias() / schedule.gamma; }

OperatorMatrix hamiltonian_at(const ProtocolConfig& cfg, double t_ms) {
    if (t_ms < 0.0 || t_ms > cfg.schedule.t_final)
        throw Error("hamiltonian_at: t = " + std::to_string(t_ms) + " outside [0, " +
                    std::to_string(cfg.schedule.t_final) + "]");
    const int n = cfg.hilbert.fock_dim;
    const double omega_y = cfg.schedule.value(t_ms);
    const double cf = cfg.force_coefficient();

    Eigen::MatrixXcd x = annihilation_fock(n);
    x += x.adjoint().eval(); // a^dag + a on the Fock factor

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    const Complex i(0.0, 1.0);
    for (int s = 0; s < 2; ++s) {
        auto block = h.block(s * n, s * n, n, n);
        for (int k = 0; k < n; ++k)
            block(k, k) += cfg.omega * static_cast<double>(k);
        block += cf * x;
    }
    // (Omega_y/2) sigma_y and g sigma_x (a^dag + a) live on the off-diagonal
    // spin blocks
    h.topRightCorner(n, n) += -i * (0.5 * omega_y) * Eigen::MatrixXcd::Identity(n, n);
    h.bottomLeftCorner(n, n) += i * (0.5 * omega_y) * Eigen::MatrixXcd::Identity(n, n);
    h.topRightCorner(n, n) += cfg.g * x;
    h.bottomLeftCorner(n, n) += cfg.g * x;
    return OperatorMatrix{std::move(h), true};
}

GroundState initial_ground_state(const ProtocolConfig& cfg) {
    if (cfg.schedule.omega_y0 / cfg.g < 5.0)
        throw ConfigError("initial_ground_state requires omega_y0/g >= 5");
    const OperatorMatrix h0 = hamiltonian_at(cfg, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h0.entries);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("initial_ground_state: eigendecomposition failed");
    const double gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
    if (gap < 1e-9 * cfg.omega)
        throw DegenerateGroundState("initial ground state is degenerate (gap " +
                                    std::to_string(gap) + ")");
    Eigen::VectorXcd psi = solver.eigenvectors().col(0);
    // fix the global phase: |up>|0> amplitude real and nonnegative
    const Complex lead = psi(0);
    if (std::abs(lead) > 0.0)
        psi *= std::conj(lead) / std::abs(lead);

    // overlap with the ideal product state |->_y |0>
    const int n = cfg.hilbert.fock_dim;
    const Complex i(0.0, 1.0);
    Eigen::VectorXcd ideal = Eigen::VectorXcd::Zero(2 * n);
    ideal(0) = 1.0 / std::sqrt(2.0);
    ideal(n) = -i / std::sqrt(2.0);
    const double overlap = std::norm(ideal.dot(psi));

    return GroundState{StateVector{std::move(psi)}, solver.eigenvalues()(0), gap, overlap};
}

SpinForceMapping map_spin_force(const SpinForceInput& input) {
    if (!(input.gradient_T_per_m >= 0) || !(input.com_omega_rad_s > 0) ||
        !(input.ion_mass_kg > 0))
        throw ConfigError("map_spin_force: gradient must be >= 0 and frequencies positive");
    SpinForceMapping m{};
    m.force_z_N = input.lande_g * bohr_magneton_J_per_T * input.gradient_T_per_m / 2.0;
    m.force_z_yN = m.force_z_N / yocto;
    m.z_cm_m = std::sqrt(hbar_J_s / (2.0 * input.ion_mass_kg * input.com_omega_rad_s));
    m.coeff_rad_per_ms = m.z_cm_m * m.force_z_N / (std::sqrt(2.0) * hbar_J_s) * 1e-3;
    return m;
}

double equivalent_force_yN(const SpinForceMapping& mapping, const TrapPhysics& trap) {
    // z0 F_eq / 2 = z_cm F_z / sqrt(2)
    return std::sqrt(2.0) * mapping.z_cm_m * mapping.force_z_N / trap.z0_m / yocto;
}

} // namespace rabisense
