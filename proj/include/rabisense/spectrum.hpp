#pragma once

#include <vector>

#include "rabisense/model.hpp"

namespace rabisense {

/// Instantaneous spectral data at one point of the ramp.
struct SpectrumSlice {
    double t;                        // ms
    std::vector<double> eigenvalues; // lowest k, ascending, rad/ms
    double delta_gap;                // E1 - E0
    double delta_ge;                 // E_j - E0 for the designated level j
    double epsilon;                  // adiabatic parameter, dimensionless
};

/// Lowest-k spectrum of hamiltonian_at along the given times, with gaps and
/// the adiabatic parameter against the reference excited level (default 3,
/// i.e. the third excited state). Eigenvector phases are chosen so that
/// consecutive slices have positive real overlap per level.
std::vector<SpectrumSlice> spectrum_along_ramp(const ProtocolConfig& cfg, int k,
                                               const std::vector<double>& times,
                                               int reference_level = 3);

/// epsilon = |<psi_e| dH/dt |psi_g>| / delta_ge^2 with dH/dt =
/// -gamma (Omega_y(t)/2) sigma_y, evaluated via exact eigenvectors. This is
/// the standard first-order identity for |<psi_g| d/dt |psi_e>| / delta_ge
/// and avoids numerical differentiation of eigenvectors.
/// Throws DegenerateLevels when delta_ge < 1e-9 omega.
double adiabatic_parameter(const ProtocolConfig& cfg, double t, int reference_level = 3);

/// Spectrum CSV: header t_ms,E0,E1,E2,E3,delta_gap,delta_ge,epsilon.
std::string to_csv(const std::vector<SpectrumSlice>& slices);

} // namespace rabisense
