#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rabisense/hilbert.hpp"

namespace rabisense {

// Internal units: time in ms, angular frequencies and rates in rad/ms.
//
// Quoted experimental values ("g = 25 kHz") are ambiguous between ordinary
// and angular frequency; the convention below selects how config-file values
// are converted. TwoPi reads 25 kHz as 2*pi*25 rad/ms, Plain as 25 rad/ms.
// Dimensionless predictions are identical in both; physical force values
// rescale.
enum class AngularConvention { TwoPi, Plain };

std::string to_string(AngularConvention c);
AngularConvention angular_convention_from_string(const std::string& s);

/// kHz-quoted value -> rad/ms under the given convention.
double khz_to_rad_per_ms(double value_khz, AngularConvention c);
/// MHz-quoted value -> rad/s under the given convention.
double mhz_to_rad_per_s(double value_mhz, AngularConvention c);

/// Exponential ramp of the transverse field, Omega_y(t) = Omega_y(0) e^(-gamma t).
struct RampSchedule {
    double omega_y0; // rad/ms
    double gamma;    // 1/ms
    double t_final;  // ms

    RampSchedule(double omega_y0_, double gamma_, double t_final_);

    double value(double t) const;
    double derivative(double t) const; // d Omega_y / dt, always negative
};

/// Trapped-ion oscillator constants; z0 is the ground-state wavepacket spread.
struct TrapPhysics {
    double ion_mass_kg;
    double trap_omega_rad_s;
    double z0_m; // sqrt(hbar / (2 m omega_z)), recomputed on construction

    TrapPhysics(double ion_mass_kg_, double trap_omega_rad_s_);
    static TrapPhysics from_amu(double mass_amu, double trap_freq_mhz, AngularConvention c);
};

struct HeatingSpec {
    double ndot_per_ms;  // phonons gained per ms, <n-dot>
    double nbar = 1000.0; // reservoir occupation; decay rate gamma_dec = ndot/nbar
};

struct IntegratorSettings {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step_ms = 0.05;
    int method_order = 8; // >= 4; orders >= 6 select the 7/8 embedded pair

    void validate() const;
};

/// Full physical + numerical parameter set for one sensing run.
struct ProtocolConfig {
    double g;     // spin-boson coupling, rad/ms
    double omega; // bosonic detuning, rad/ms
    RampSchedule schedule;
    double force_yN; // signed force amplitude F_d in yoctonewton
    TrapPhysics trap;
    HilbertSpec hilbert;
    IntegratorSettings integrator;
    std::optional<HeatingSpec> heating;
    AngularConvention convention = AngularConvention::TwoPi;

    /// Validates positivity constraints; returns human-readable warnings for
    /// soft violations (e.g. omega_y0/g < 5).
    std::vector<std::string> validate() const;

    /// Perturbation coefficient z0 F_d / (2 hbar) in rad/ms (linear in F_d).
    double force_coefficient() const;
    /// Effective two-level bias z0 F_d g / (hbar omega) in rad/ms.
    double bias() const;
    /// Dimensionless signal argument kappa = pi g z0 F_d / (hbar gamma omega).
    double kappa() const;
};

/// z0 * F_d / (2 hbar) in rad/ms for a force given in yN.
double force_term_coefficient(const TrapPhysics& trap, double force_yN);

/// H(t)/hbar in rad/ms:
///   omega a^dag a + (Omega_y(t)/2) sigma_y + g sigma_x (a^dag + a)
///   + (z0 F_d / 2 hbar)(a^dag + a)
/// Hermitian by construction. Throws on t outside [0, t_final].
OperatorMatrix hamiltonian_at(const ProtocolConfig& cfg, double t_ms);

struct GroundState {
    StateVector state;
    double energy;        // E0, rad/ms
    double gap;           // E1 - E0, rad/ms
    double ideal_overlap; // |<psi_g(0)| (|->_y |0>)|^2
};

/// Exact numerical ground state of H(0) via eigendecomposition, with global
/// phase fixed so the |up>|0> amplitude is real nonnegative. Requires
/// omega_y0/g >= 5; throws DegenerateGroundState when E1-E0 < 1e-9 omega.
GroundState initial_ground_state(const ProtocolConfig& cfg);

/// Oscillating magnetic-field-gradient input for spin-dependent forces.
struct SpinForceInput {
    double gradient_T_per_m; // B0
    double lande_g;          // g_J
    double com_omega_rad_s;  // center-of-mass mode angular frequency
    double ion_mass_kg;
};

struct SpinForceMapping {
    double force_z_N;        // F_z = g_J mu_B B0 / 2
    double force_z_yN;
    double z_cm_m;           // sqrt(hbar / (2 m omega_cm))
    double coeff_rad_per_ms; // z_cm F_z / (sqrt(2) hbar), perturbation strength
};

SpinForceMapping map_spin_force(const SpinForceInput& input);

/// Equivalent ProtocolConfig force (yN) producing the same perturbation
/// coefficient on cfg's trap: z0 F_eq / 2 = z_cm F_z / sqrt(2).
double equivalent_force_yN(const SpinForceMapping& mapping, const TrapPhysics& trap);

} // namespace rabisense
