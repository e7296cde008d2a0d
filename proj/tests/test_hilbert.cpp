#include <doctest.h>

#include "rabisense/hilbert.hpp"

using namespace rabisense;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("annihilation operator entries") {
    HilbertSpec two(2);
    const MatrixXcd a2 = annihilation_fock(2);
    CHECK(a2(0, 1) == Complex(1.0, 0.0)); // sqrt(1) = 1
    CHECK(a2(0, 0) == Complex(0.0, 0.0));
    CHECK(a2(1, 0) == Complex(0.0, 0.0));
    CHECK(a2(1, 1) == Complex(0.0, 0.0));

    const MatrixXcd a4 = annihilation_fock(4);
    CHECK(a4(2, 3).real() == doctest::Approx(1.7320508075688772).epsilon(1e-15));

    // embedding: I_2 (x) a
    HilbertSpec spec(4);
    const OperatorMatrix a = annihilation(spec);
    CHECK(a.dim() == 8);
    CHECK(a.entries.block(0, 0, 4, 4) == a4);
    CHECK(a.entries.block(4, 4, 4, 4) == a4);
    CHECK(a.entries.block(0, 4, 4, 4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("creation is exactly the adjoint of annihilation") {
    for (int n : {2, 5, 40}) {
        HilbertSpec spec(n);
        CHECK((creation(spec).entries - annihilation(spec).entries.adjoint())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
}

TEST_CASE("canonical commutator on the untruncated block") {
    HilbertSpec spec(12);
    const MatrixXcd a = annihilation(spec).entries;
    const MatrixXcd comm = a * a.adjoint() - a.adjoint() * a;
    // [a, a^dag] = 1 except on the two top levels of each spin block
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < 10; ++k)
            CHECK(std::abs(comm(s * 12 + k, s * 12 + k) - 1.0) < 1e-14);
}

TEST_CASE("pauli algebra") {
    HilbertSpec spec(3);
    const MatrixXcd sx = pauli(PauliAxis::X, spec).entries;
    const MatrixXcd sy = pauli(PauliAxis::Y, spec).entries;
    const MatrixXcd sz = pauli(PauliAxis::Z, spec).entries;
    const MatrixXcd eye = MatrixXcd::Identity(6, 6);

    CHECK((sx * sx - eye).cwiseAbs().maxCoeff() == 0.0);
    CHECK((sx * sy - sy * sx - 2.0 * kI * sz).cwiseAbs().maxCoeff() == 0.0);

    // |->_y = (|up> - i|down>)/sqrt(2) is the -1 eigenstate of sigma_y
    VectorXcd fock0 = VectorXcd::Zero(3);
    fock0(0) = 1.0;
    const StateVector minus_y =
        spin_fock_product(Eigen::Vector2cd(1.0 / std::sqrt(2.0), -kI / std::sqrt(2.0)), fock0);
    const Complex val = expectation(minus_y, pauli(PauliAxis::Y, spec));
    CHECK(val.real() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("tensor structure: spin operators commute with fock operators") {
    HilbertSpec spec(6);
    for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        const MatrixXcd s = pauli(axis, spec).entries;
        const MatrixXcd a = annihilation(spec).entries;
        CHECK((s * a - a * s).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("coherent state") {
    HilbertSpec spec(40);

    SUBCASE("alpha = 0 is the vacuum") {
        const StateVector vac = coherent_state(0.0, spec);
        CHECK(std::abs(vac.amplitudes(0) - 1.0) == 0.0);
        CHECK(vac.amplitudes.tail(39).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("<a> = alpha for the paper's largest displacement") {
        const Complex alpha(-25.0 / 45.0, 0.0);
        const StateVector st = coherent_state(alpha, spec);
        // expectation on the Fock factor directly
        Complex a_exp = 0.0;
        for (int n = 1; n < 40; ++n)
            a_exp += std::conj(st.amplitudes(n - 1)) * std::sqrt(double(n)) * st.amplitudes(n);
        CHECK(std::abs(a_exp - alpha) < 1e-8);
        CHECK(st.norm_error() < 1e-14);
    }

    SUBCASE("truncation rejected when the tail is populated") {
        CHECK_THROWS_AS(coherent_state(Complex(2.5, 0.0), HilbertSpec(6)), TruncationError);
    }
}

TEST_CASE("expectation values") {
    HilbertSpec spec(10);
    const OperatorMatrix num = number_operator(spec);

    VectorXcd fock0 = VectorXcd::Zero(10);
    fock0(0) = 1.0;
    const StateVector vac = spin_fock_product(Eigen::Vector2cd(1.0, 0.0), fock0);
    CHECK(std::abs(expectation(vac, num)) == 0.0);

    // <alpha|(a^dag + a)|alpha> = 2 Re alpha
    const Complex alpha(0.3, -0.2);
    const StateVector coh =
        spin_fock_product(Eigen::Vector2cd(1.0, 0.0), coherent_state(alpha, spec).amplitudes);
    CHECK(expectation(coh, quadrature(spec)).real() ==
          doctest::Approx(2.0 * alpha.real()).epsilon(1e-9));

    // Tr(rho I) = 1
    const DensityMatrix rho = DensityMatrix::from_pure(coh);
    OperatorMatrix eye{MatrixXcd::Identity(20, 20), true};
    CHECK(expectation(rho, eye).real() == doctest::Approx(1.0).epsilon(1e-14));

    SUBCASE("dimension mismatch is rejected") {
        const StateVector small = coherent_state(0.1, HilbertSpec(6));
        CHECK_THROWS_AS(expectation(small, num), DimensionMismatch);
    }
}

TEST_CASE("parity operator is a Hermitian involution") {
    HilbertSpec spec(7);
    const MatrixXcd pi = parity(spec).entries;
    CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((pi * pi - MatrixXcd::Identity(14, 14)).cwiseAbs().maxCoeff() == 0.0);
    // conjugation flips a and sigma_x, preserves sigma_y
    const MatrixXcd a = annihilation(spec).entries;
    const MatrixXcd sx = pauli(PauliAxis::X, spec).entries;
    const MatrixXcd sy = pauli(PauliAxis::Y, spec).entries;
    CHECK((pi * a * pi + a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((pi * sx * pi + sx).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((pi * sy * pi - sy).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(HilbertSpec(1), ConfigError);
    CHECK(HilbertSpec(2).total_dim() == 4);
}

TEST_CASE("hermitian flag checks the imaginary part") {
    HilbertSpec spec(12);
    // a is not Hermitian; tagging it as such must trip the check
    OperatorMatrix bogus{annihilation(spec).entries, true};
    const StateVector coh = spin_fock_product(
        Eigen::Vector2cd(1.0, 0.0), coherent_state(Complex(0.0, 0.4), spec).amplitudes);
    CHECK_THROWS_AS(expectation(coh, bogus), Error);
}
