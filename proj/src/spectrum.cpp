#include "rabisense/spectrum.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rabisense/csv.hpp"

namespace rabisense {

namespace {

struct EigenSlice {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

EigenSlice diagonalize(const ProtocolConfig& cfg, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_at(cfg, t).entries);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("spectrum: eigendecomposition failed at t = " +
                                 std::to_string(t));
    return EigenSlice{solver.eigenvalues(), solver.eigenvectors()};
}

// |<psi_e| dH/dt |psi_g>| / delta_ge^2 with dH/dt = (dOmega_y/dt) sigma_y / 2.
// sigma_y only couples the spin blocks, so the matrix element reduces to
// -i <e_up|g_dn> + i <e_dn|g_up> without forming the full operator.
double epsilon_from_vectors(const ProtocolConfig& cfg, double t, const Eigen::MatrixXcd& vecs,
                            const Eigen::VectorXd& vals, int j) {
    const int n = cfg.hilbert.fock_dim;
    const double dge = vals(j) - vals(0);
    if (dge < 1e-9 * cfg.omega)
        throw DegenerateLevels("adiabatic_parameter: level " + std::to_string(j) +
                               " degenerate with the ground state at t = " + std::to_string(t));
    const auto g = vecs.col(0);
    const auto e = vecs.col(j);
    const Complex i(0.0, 1.0);
    const Complex sy_elem = -i * e.head(n).dot(g.tail(n)) + i * e.tail(n).dot(g.head(n));
    const double coupling = std::abs(0.5 * cfg.schedule.derivative(t) * sy_elem);
    return coupling / (dge * dge);
}

} // namespace

std::vector<SpectrumSlice> spectrum_along_ramp(const ProtocolConfig& cfg, int k,
                                               const std::vector<double>& times,
                                               int reference_level) {
    if (k < 4)
        throw ConfigError("spectrum_along_ramp requires k >= 4");
    if (reference_level < 1 || reference_level >= cfg.hilbert.total_dim())
        throw ConfigError("reference_level out of range");

    std::vector<SpectrumSlice> slices;
    slices.reserve(times.size());
    Eigen::MatrixXcd prev;
    for (double t : times) {
        EigenSlice eig = diagonalize(cfg, t);
        // phase continuity: rotate each eigenvector so its overlap with the
        // previous slice is real positive
        if (prev.size() > 0) {
            for (int c = 0; c < eig.vectors.cols(); ++c) {
                const Complex ov = prev.col(c).dot(eig.vectors.col(c));
                if (std::abs(ov) > 0)
                    eig.vectors.col(c) *= std::conj(ov) / std::abs(ov);
            }
        }
        SpectrumSlice s;
        s.t = t;
        s.eigenvalues.assign(eig.values.data(), eig.values.data() + k);
        s.delta_gap = eig.values(1) - eig.values(0);
        s.delta_ge = eig.values(reference_level) - eig.values(0);
        s.epsilon = epsilon_from_vectors(cfg, t, eig.vectors, eig.values, reference_level);
        slices.push_back(std::move(s));
        prev = std::move(eig.vectors);
    }
    return slices;
}

double adiabatic_parameter(const ProtocolConfig& cfg, double t, int reference_level) {
    EigenSlice eig = diagonalize(cfg, t);
    return epsilon_from_vectors(cfg, t, eig.vectors, eig.values, reference_level);
}

std::string to_csv(const std::vector<SpectrumSlice>& slices) {
    std::string out = "t_ms,E0,E1,E2,E3,delta_gap,delta_ge,epsilon\n";
    for (const auto& s : slices)
        out += csv_row({csv_number(s.t), csv_number(s.eigenvalues[0]),
                        csv_number(s.eigenvalues[1]), csv_number(s.eigenvalues[2]),
                        csv_number(s.eigenvalues[3]), csv_number(s.delta_gap),
                        csv_number(s.delta_ge), csv_number(s.epsilon)});
    return out;
}

} // namespace rabisense
