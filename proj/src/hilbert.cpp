#include "rabisense/hilbert.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace rabisense {

namespace {

constexpr double kHermitianImagTol = 1e-8;

void check_dims(int a, int b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
}

Complex checked_value(Complex value, bool hermitian) {
    if (hermitian) {
        const double scale = std::max(1.0, std::abs(value.real()));
        if (std::abs(value.imag()) > kHermitianImagTol * scale)
            throw Error("expectation of Hermitian operator has imaginary part " +
                        std::to_string(value.imag()));
        return Complex(value.real(), 0.0);
    }
    return value;
}

} // namespace

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd(0.5 * (entries + entries.adjoint())),
        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("DensityMatrix::min_eigenvalue failed");
    return solver.eigenvalues()(0);
}

Eigen::MatrixXcd annihilation_fock(int fock_dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

namespace {

// I_2 (x) f in the spin-major ordering.
Eigen::MatrixXcd embed_fock(const Eigen::MatrixXcd& f) {
    const int n = static_cast<int>(f.rows());
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    full.topLeftCorner(n, n) = f;
    full.bottomRightCorner(n, n) = f;
    return full;
}

} // namespace

OperatorMatrix annihilation(const HilbertSpec& spec) {
    return OperatorMatrix{embed_fock(annihilation_fock(spec.fock_dim)), false};
}

OperatorMatrix creation(const HilbertSpec& spec) {
    return OperatorMatrix{embed_fock(annihilation_fock(spec.fock_dim).adjoint()), false};
}

OperatorMatrix number_operator(const HilbertSpec& spec) {
    const int n = spec.fock_dim;
    Eigen::VectorXcd diag(2 * n);
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < n; ++k)
            diag(s * n + k) = static_cast<double>(k);
    return OperatorMatrix{diag.asDiagonal(), true};
}

OperatorMatrix quadrature(const HilbertSpec& spec) {
    Eigen::MatrixXcd a = annihilation_fock(spec.fock_dim);
    return OperatorMatrix{embed_fock(a + a.adjoint()), true};
}

OperatorMatrix pauli(PauliAxis axis, const HilbertSpec& spec) {
    const int n = spec.fock_dim;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
    const Complex i(0.0, 1.0);
    switch (axis) {
    case PauliAxis::X:
        full.topRightCorner(n, n) = eye;
        full.bottomLeftCorner(n, n) = eye;
        break;
    case PauliAxis::Y:
        full.topRightCorner(n, n) = -i * eye;
        full.bottomLeftCorner(n, n) = i * eye;
        break;
    case PauliAxis::Z:
        full.topLeftCorner(n, n) = eye;
        full.bottomRightCorner(n, n) = -eye;
        break;
    }
    return OperatorMatrix{std::move(full), true};
}

OperatorMatrix parity(const HilbertSpec& spec) {
    const int n = spec.fock_dim;
    // exp(i pi a^dag a) = diag((-1)^n) on the Fock factor
    Eigen::VectorXcd signs(n);
    for (int k = 0; k < n; ++k)
        signs(k) = (k % 2 == 0) ? 1.0 : -1.0;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    const Complex i(0.0, 1.0);
    full.topRightCorner(n, n) = (-i * signs).asDiagonal();
    full.bottomLeftCorner(n, n) = (i * signs).asDiagonal();
    return OperatorMatrix{std::move(full), true};
}

StateVector coherent_state(Complex alpha, const HilbertSpec& spec) {
    const int n = spec.fock_dim;
    Eigen::VectorXcd amps(n);
    // c_n = e^(-|alpha|^2/2) alpha^n / sqrt(n!), built up iteratively
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k < n; ++k)
        amps(k) = amps(k - 1) * alpha / std::sqrt(static_cast<double>(k));
    const double tail = std::norm(amps(n - 1)) + std::norm(amps(n - 2));
    if (tail > 1e-8)
        throw TruncationError("coherent_state: population " + std::to_string(tail) +
                              " in the top two Fock levels; increase fock_dim");
    amps.normalize();
    return StateVector{std::move(amps)};
}

StateVector spin_fock_product(const Eigen::Vector2cd& spin, const Eigen::VectorXcd& fock) {
    const int n = static_cast<int>(fock.size());
    Eigen::VectorXcd full(2 * n);
    full.head(n) = spin(0) * fock;
    full.tail(n) = spin(1) * fock;
    return StateVector{std::move(full)};
}

Complex expectation(const StateVector& state, const OperatorMatrix& op) {
    check_dims(state.dim(), op.dim(), "expectation");
    const Complex value = state.amplitudes.dot(op.entries * state.amplitudes);
    return checked_value(value, op.hermitian);
}

Complex expectation(const DensityMatrix& state, const OperatorMatrix& op) {
    check_dims(state.dim(), op.dim(), "expectation");
    const Complex value = (state.entries * op.entries).trace();
    return checked_value(value, op.hermitian);
}

} // namespace rabisense
