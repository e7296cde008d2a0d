#include <doctest.h>

#include <random>

#include "rabisense/dynamics.hpp"
#include "rabi_kernels.hpp"

using namespace rabisense;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

ProtocolConfig make_config(double omega_khz, double gamma_khz, double force_yn, int fock,
                           std::optional<HeatingSpec> heating = std::nullopt,
                           AngularConvention conv = AngularConvention::TwoPi,
                           double t_final_factor = 14.0) {
    const double gamma = khz_to_rad_per_ms(gamma_khz, conv);
    ProtocolConfig cfg{khz_to_rad_per_ms(25.0, conv),
                       khz_to_rad_per_ms(omega_khz, conv),
                       RampSchedule(khz_to_rad_per_ms(225.0, conv), gamma,
                                    t_final_factor / gamma),
                       force_yn,
                       TrapPhysics::from_amu(24.0, 6.3, conv),
                       HilbertSpec(fock),
                       IntegratorSettings{},
                       heating,
                       conv};
    return cfg;
}

MatrixXcd random_matrix(int rows, int cols, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    MatrixXcd m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

// force amplitude in yN giving the requested dimensionless kappa
double force_for_kappa(const ProtocolConfig& cfg, double kappa) {
    ProtocolConfig unit = cfg;
    unit.force_yN = 1.0;
    return kappa / unit.kappa();
}

} // namespace

TEST_CASE("structured kernels match the dense hamiltonian") {
    auto cfg = make_config(150.0, 1.0, 33.0, 9,
                           HeatingSpec{0.07, 1000.0});
    const detail::RabiKernels kernels(cfg);
    const int dim = cfg.hilbert.total_dim();

    for (double t : {0.0, 0.123, 0.5 * cfg.schedule.t_final}) {
        const MatrixXcd h = hamiltonian_at(cfg, t).entries;
        const MatrixXcd in = random_matrix(dim, dim, 42);
        const Complex pref(0.3, -0.8);

        MatrixXcd out_left = MatrixXcd::Zero(dim, dim);
        detail::MapConstMat min(in.data(), dim, dim);
        detail::MapMat mleft(out_left.data(), dim, dim);
        kernels.add_h_left(t, min, mleft, pref);
        CHECK((out_left - pref * (h * in)).cwiseAbs().maxCoeff() < 1e-12 * h.norm());

        MatrixXcd out_right = MatrixXcd::Zero(dim, dim);
        detail::MapMat mright(out_right.data(), dim, dim);
        kernels.add_h_right(t, min, mright, pref);
        CHECK((out_right - pref * (in * h)).cwiseAbs().maxCoeff() < 1e-12 * h.norm());
    }
}

TEST_CASE("structured dissipators match the dense lindblad form") {
    auto cfg = make_config(150.0, 1.0, 0.0, 8, HeatingSpec{0.12, 500.0});
    const detail::RabiKernels kernels(cfg);
    const int dim = cfg.hilbert.total_dim();

    const MatrixXcd rho = random_matrix(dim, dim, 7);
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    detail::MapConstMat min(rho.data(), dim, dim);
    detail::MapMat mout(out.data(), dim, dim);
    kernels.add_dissipators(min, mout);

    const MatrixXcd a = annihilation(cfg.hilbert).entries;
    const MatrixXcd ad = a.adjoint();
    const double gdec = cfg.heating->ndot_per_ms / cfg.heating->nbar;
    const MatrixXcd expected =
        0.5 * gdec * (cfg.heating->nbar + 1.0) *
            (2.0 * a * rho * ad - ad * a * rho - rho * ad * a) +
        0.5 * gdec * cfg.heating->nbar *
            (2.0 * ad * rho * a - a * ad * rho - rho * a * ad);
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-12 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("pure evolution") {
    SUBCASE("parity conservation: zero force keeps <sigma_x> at zero") {
        auto cfg = make_config(150.0, 1.4, 0.0, 16);
        const Trajectory traj = evolve_pure(cfg, cfg.integrator, 60);
        REQUIRE(traj.points.size() == 60);
        for (const auto& p : traj.points) {
            CHECK(std::abs(p.sx) < 1e-6);
            CHECK(std::abs(p.norm - 1.0) < 1e-8);
        }
        CHECK(traj.points.front().t == 0.0);
        CHECK(traj.points.back().t == cfg.schedule.t_final);
    }

    SUBCASE("decoupled limit g = 0 pins <sigma_y> = -1") {
        auto cfg = make_config(150.0, 1.4, 0.0, 8);
        cfg.g = 0.0;
        const Trajectory traj = evolve_pure(cfg, cfg.integrator, 40);
        for (const auto& p : traj.points) {
            CHECK(p.sy == doctest::Approx(-1.0).epsilon(1e-8));
            CHECK(p.nbar_phonon < 1e-10);
        }
    }

    SUBCASE("final signal approaches tanh(kappa) (effective-model agreement)") {
        auto cfg = make_config(150.0, 1.4, 0.0, 40);
        cfg.force_yN = force_for_kappa(cfg, std::asinh(1.0));
        const PureEvolution evo = run_pure(cfg, cfg.integrator, 30);
        const double sx = evo.trajectory.back().sx;
        CHECK(std::abs(sx - 1.0 / std::sqrt(2.0)) < 0.05);
        // populations projected on the cat basis track the Demkov populations
        const double p_demkov = 0.5 + 0.5 * std::tanh(cfg.kappa());
        CHECK(std::abs(evo.trajectory.back().p_plus - p_demkov) < 0.02);
        CHECK(evo.trajectory.back().p_plus + evo.trajectory.back().p_minus ==
              doctest::Approx(1.0).epsilon(0.02));
    }

    SUBCASE("truncation overflow is detected") {
        auto cfg = make_config(150.0, 1.4, 0.0, 12);
        cfg.force_yN = 6e4; // displacement far beyond the 12-level ladder
        CHECK_THROWS_AS(evolve_pure(cfg, cfg.integrator, 20), TruncationError);
    }

    SUBCASE("heating config is rejected") {
        auto cfg = make_config(150.0, 1.4, 0.0, 8, HeatingSpec{0.1, 1000.0});
        CHECK_THROWS_AS(evolve_pure(cfg, cfg.integrator, 10), ConfigError);
    }
}

TEST_CASE("lindblad evolution") {
    SUBCASE("zero heating rate reproduces the pure evolution") {
        auto pure_cfg = make_config(150.0, 1.4, 20.0, 14);
        auto lind_cfg = make_config(150.0, 1.4, 20.0, 14, HeatingSpec{0.0, 1000.0});
        lind_cfg.integrator.rel_tol = 1e-10;
        lind_cfg.integrator.abs_tol = 1e-12;
        const Trajectory tp = evolve_pure(pure_cfg, pure_cfg.integrator, 12);
        const Trajectory tl = evolve_lindblad(lind_cfg, lind_cfg.integrator, 12);
        for (size_t k = 0; k < tp.points.size(); ++k) {
            CHECK(std::abs(tp.points[k].sx - tl.points[k].sx) < 1e-6);
            CHECK(std::abs(tp.points[k].sy - tl.points[k].sy) < 1e-6);
            CHECK(std::abs(tp.points[k].Z - tl.points[k].Z) < 1e-6);
            CHECK(std::abs(tp.points[k].nbar_phonon - tl.points[k].nbar_phonon) < 1e-6);
        }
    }

    SUBCASE("free oscillator heats at <n-dot> per unit time") {
        // H ~ omega n only: g = 0 and a negligible transverse field
        auto cfg = make_config(150.0, 10.0, 0.0, 14, HeatingSpec{0.2, 1000.0});
        cfg.g = 0.0;
        cfg.schedule = RampSchedule(1e-2, cfg.schedule.gamma, 1.0);
        cfg.integrator.rel_tol = 1e-10;
        cfg.integrator.abs_tol = 1e-12;
        const Trajectory traj = evolve_lindblad(cfg, cfg.integrator, 5);
        for (const auto& p : traj.points)
            CHECK(p.nbar_phonon == doctest::Approx(0.2 * p.t).epsilon(1e-3).scale(1.0));
    }

    SUBCASE("trace and positivity are maintained") {
        auto cfg = make_config(150.0, 1.4, 30.0, 14, HeatingSpec{0.15, 1000.0});
        cfg.integrator.rel_tol = 1e-10;
        cfg.integrator.abs_tol = 1e-12;
        const LindbladEvolution evo = run_lindblad(cfg, cfg.integrator, 15);
        for (const auto& p : evo.trajectory.points)
            CHECK(std::abs(p.norm - 1.0) < 1e-6);
        CHECK(evo.final_state.min_eigenvalue() > -1e-6);
        CHECK(evo.final_state.hermiticity_defect() < 1e-8);
        CHECK(evo.final_state.trace_error() < 1e-6);
    }

    SUBCASE("the generator is linear: mixtures evolve to mixtures") {
        auto cfg = make_config(150.0, 2.8, 10.0, 10, HeatingSpec{0.1, 1000.0});
        cfg.integrator.rel_tol = 1e-10;
        cfg.integrator.abs_tol = 1e-12;
        const GroundState gs = initial_ground_state(cfg);
        // second state: spin flipped relative to the ground state
        VectorXcd excited = gs.state.amplitudes;
        excited.head(cfg.hilbert.fock_dim).swap(excited.tail(cfg.hilbert.fock_dim));
        const DensityMatrix rho1 = DensityMatrix::from_pure(gs.state);
        const DensityMatrix rho2 = DensityMatrix::from_pure(StateVector{excited});
        DensityMatrix mix{(0.5 * (rho1.entries + rho2.entries)).eval()};

        const auto evolved_mix = run_lindblad(cfg, cfg.integrator, 2, mix).final_state;
        const auto evolved_1 = run_lindblad(cfg, cfg.integrator, 2, rho1).final_state;
        const auto evolved_2 = run_lindblad(cfg, cfg.integrator, 2, rho2).final_state;
        const MatrixXcd avg = 0.5 * (evolved_1.entries + evolved_2.entries);
        CHECK((evolved_mix.entries - avg).cwiseAbs().maxCoeff() < 1e-8);
    }

    SUBCASE("missing heating spec is rejected") {
        auto cfg = make_config(150.0, 1.4, 0.0, 8);
        CHECK_THROWS_AS(evolve_lindblad(cfg, cfg.integrator, 10), ConfigError);
    }
}

TEST_CASE("convergence under tightened stepping") {
    auto cfg = make_config(150.0, 1.4, 0.0, 24);
    cfg.force_yN = force_for_kappa(cfg, 1.0);
    IntegratorSettings coarse = cfg.integrator;
    IntegratorSettings fine = coarse;
    fine.rel_tol *= 0.1;
    fine.abs_tol *= 0.1;
    fine.max_step_ms *= 0.5;
    const double sx_coarse = run_pure(cfg, coarse, 2).trajectory.back().sx;
    const double sx_fine = run_pure(cfg, fine, 2).trajectory.back().sx;
    CHECK(std::abs(sx_coarse - sx_fine) < 1e-5);
}

TEST_CASE("trajectory csv schema") {
    auto cfg = make_config(150.0, 2.8, 0.0, 8);
    const Trajectory traj = evolve_pure(cfg, cfg.integrator, 7);
    const std::string csv = to_csv(traj);
    CHECK(csv.rfind("t_ms,sx,sy,sz,Z,nbar_phonon,norm,p_plus,p_minus\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
}
