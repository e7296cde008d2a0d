#pragma once

#include <string>
#include <vector>

#include "rabisense/model.hpp"

namespace rabisense {

struct TrajectoryPoint {
    double t = 0;            // ms
    double sx = 0, sy = 0, sz = 0;
    double Z = 0;            // <a^dag + a>
    double nbar_phonon = 0;  // <a^dag a>
    double norm = 0;         // ||psi||^2 (pure) or Tr rho (lindblad)
    double p_plus = 0;       // population of |+>_x |alpha>, alpha = -g/omega
    double p_minus = 0;      // population of |->_x |-alpha>
};

struct Trajectory {
    std::vector<TrajectoryPoint> points; // strictly increasing t, spanning [0, t_final]

    // Effective-model metadata: both candidates for the Demkov initial gap
    // are recorded since the proportionality constant in Delta_gap ~ Omega_y
    // is not pinned down.
    double delta_gap_initial = 0; // E1 - E0 at t = 0
    double omega_y0 = 0;
    double kappa = 0;

    const TrajectoryPoint& back() const { return points.back(); }
};

struct PureEvolution {
    Trajectory trajectory;
    StateVector final_state;
};

struct LindbladEvolution {
    Trajectory trajectory;
    DensityMatrix final_state;
};

/// Integrates i d|psi>/dt = H(t)|psi> from the exact initial ground state and
/// samples observables at sample_count uniformly spaced times in [0, t_final].
/// Throws TruncationError if the top two Fock populations exceed 1e-6 at any
/// sample. The state is never renormalized, so the recorded norm column is a
/// genuine integration-quality diagnostic.
PureEvolution run_pure(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                       int sample_count);

/// Integrates the heating master equation
///   d rho/dt = -i[H, rho] + (gamma_dec/2)(nbar+1) D[a] rho
///              + (gamma_dec/2) nbar D[a^dag] rho,
/// D[L] rho = 2 L rho L^dag - L^dag L rho - rho L^dag L, gamma_dec = ndot/nbar.
/// Requires cfg.heating. Trace drift and positivity are checked at samples.
LindbladEvolution run_lindblad(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                               int sample_count);

/// Same master equation from an arbitrary initial density matrix.
LindbladEvolution run_lindblad(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                               int sample_count, const DensityMatrix& initial);

/// Trajectory CSV: header t_ms,sx,sy,sz,Z,nbar_phonon,norm,p_plus,p_minus.
std::string to_csv(const Trajectory& traj);

inline Trajectory evolve_pure(const ProtocolConfig& cfg, const IntegratorSettings& s,
                              int sample_count) {
    return run_pure(cfg, s, sample_count).trajectory;
}

inline Trajectory evolve_lindblad(const ProtocolConfig& cfg, const IntegratorSettings& s,
                                  int sample_count) {
    return run_lindblad(cfg, s, sample_count).trajectory;
}

} // namespace rabisense
