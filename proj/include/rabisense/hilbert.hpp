#pragma once

#include <complex>

#include <Eigen/Dense>

#include "rabisense/errors.hpp"

namespace rabisense {

using Complex = std::complex<double>;

/// Truncated Hilbert space H_spin (x) H_Fock(N).
///
/// Basis ordering is spin-major: index = s*N + n with s in {0 (up), 1 (down)}
/// and n in 0..N-1. All operators and states in this library follow that
/// ordering.
struct HilbertSpec {
    int fock_dim;

    explicit HilbertSpec(int fock_dim_) : fock_dim(fock_dim_) {
        if (fock_dim < 2)
            throw ConfigError("HilbertSpec: fock_dim must be >= 2, got " +
                              std::to_string(fock_dim));
    }

    int total_dim() const { return 2 * fock_dim; }
};

/// Dense complex square matrix with a Hermiticity tag.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    bool hermitian = false;

    OperatorMatrix() = default;
    OperatorMatrix(Eigen::MatrixXcd m, bool herm) : entries(std::move(m)), hermitian(herm) {
        if (entries.rows() != entries.cols())
            throw DimensionMismatch("OperatorMatrix must be square");
    }

    int dim() const { return static_cast<int>(entries.rows()); }

    /// max |A - A^dagger| entrywise.
    double hermiticity_defect() const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }
};

struct StateVector {
    Eigen::VectorXcd amplitudes;

    StateVector() = default;
    explicit StateVector(Eigen::VectorXcd v) : amplitudes(std::move(v)) {}

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm_error() const { return std::abs(amplitudes.squaredNorm() - 1.0); }
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    DensityMatrix() = default;
    explicit DensityMatrix(Eigen::MatrixXcd m) : entries(std::move(m)) {
        if (entries.rows() != entries.cols())
            throw DimensionMismatch("DensityMatrix must be square");
    }
    static DensityMatrix from_pure(const StateVector& psi) {
        return DensityMatrix{psi.amplitudes * psi.amplitudes.adjoint()};
    }

    int dim() const { return static_cast<int>(entries.rows()); }
    double trace_error() const { return std::abs(entries.trace() - Complex(1.0, 0.0)); }
    double hermiticity_defect() const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }
    /// Smallest eigenvalue of the Hermitian part; negative values beyond the
    /// integrator tolerance indicate loss of positivity.
    double min_eigenvalue() const;
};

enum class PauliAxis { X, Y, Z };

/// a_Fock on the bare Fock factor: a[n-1, n] = sqrt(n).
Eigen::MatrixXcd annihilation_fock(int fock_dim);

/// I_2 (x) a_Fock.
OperatorMatrix annihilation(const HilbertSpec& spec);
/// I_2 (x) a_Fock^dagger (exactly the conjugate transpose of annihilation()).
OperatorMatrix creation(const HilbertSpec& spec);
/// I_2 (x) a^dagger a.
OperatorMatrix number_operator(const HilbertSpec& spec);
/// Position quadrature Z = I_2 (x) (a^dagger + a).
OperatorMatrix quadrature(const HilbertSpec& spec);

/// sigma_axis (x) I_Fock in the ordered basis {|up>, |down>}.
OperatorMatrix pauli(PauliAxis axis, const HilbertSpec& spec);

/// Parity operator Pi = sigma_y (x) exp(i pi a^dagger a). Pi is Hermitian,
/// unitary, commutes with the unperturbed Rabi Hamiltonian and anticommutes
/// with the force term.
OperatorMatrix parity(const HilbertSpec& spec);

/// Truncated coherent state |alpha> on the Fock factor only (dim = fock_dim),
/// renormalized after truncation. Throws TruncationError when the population
/// of the top two Fock levels exceeds 1e-8.
StateVector coherent_state(Complex alpha, const HilbertSpec& spec);

/// Product state (spin (x) fock) on the full space, spin-major ordering.
StateVector spin_fock_product(const Eigen::Vector2cd& spin, const Eigen::VectorXcd& fock);

/// <psi|A|psi>. When the hermitian flag is set the imaginary part is checked
/// against 1e-8 and the real part is returned.
Complex expectation(const StateVector& state, const OperatorMatrix& op);
/// Tr(rho A), same Hermitian handling.
Complex expectation(const DensityMatrix& state, const OperatorMatrix& op);

} // namespace rabisense
