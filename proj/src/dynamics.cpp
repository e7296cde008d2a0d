#include "rabisense/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rabisense/csv.hpp"
#include "ode_stepping.hpp"
#include "rabi_kernels.hpp"

namespace rabisense {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using detail::MapConstMat;
using detail::MapMat;
using detail::RabiKernels;

struct CatProjectors {
    VectorXcd psi_plus;  // |+>_x |alpha>, alpha = -g/omega
    VectorXcd psi_minus; // |->_x |-alpha>
};

CatProjectors make_cat_projectors(const ProtocolConfig& cfg) {
    const double alpha = -cfg.g / cfg.omega;
    const VectorXcd plus_fock = coherent_state(alpha, cfg.hilbert).amplitudes;
    const VectorXcd minus_fock = coherent_state(-alpha, cfg.hilbert).amplitudes;
    const double r = 1.0 / std::sqrt(2.0);
    CatProjectors p;
    p.psi_plus = spin_fock_product(Eigen::Vector2cd(r, r), plus_fock).amplitudes;
    p.psi_minus = spin_fock_product(Eigen::Vector2cd(r, -r), minus_fock).amplitudes;
    return p;
}

// Observables evaluated directly through the tensor structure; no dense
// operator is ever formed during propagation.
struct ObservableSet {
    int n;
    VectorXcd sqrt_n;   // sqrt(k)
    Eigen::ArrayXd kvec; // k = 0..n-1
    CatProjectors cats;

    explicit ObservableSet(const ProtocolConfig& cfg)
        : n(cfg.hilbert.fock_dim), cats(make_cat_projectors(cfg)) {
        sqrt_n = VectorXcd(n);
        for (int k = 0; k < n; ++k)
            sqrt_n(k) = std::sqrt(static_cast<double>(k));
        kvec = Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    }

    TrajectoryPoint from_pure(double t, const Eigen::Map<const VectorXcd>& psi) const {
        TrajectoryPoint p;
        p.t = t;
        const auto up = psi.head(n);
        const auto dn = psi.tail(n);
        p.sx = 2.0 * up.dot(dn).real();
        p.sy = 2.0 * up.dot(dn).imag();
        p.sz = up.squaredNorm() - dn.squaredNorm();
        double nb = 0.0, z = 0.0;
        for (int s = 0; s < 2; ++s) {
            const auto seg = psi.segment(s * n, n);
            nb += (seg.array().abs2() * kvec).sum();
            z += 2.0 *
                 seg.head(n - 1)
                     .dot((sqrt_n.tail(n - 1).asDiagonal() * seg.tail(n - 1)).eval())
                     .real();
        }
        p.nbar_phonon = nb;
        p.Z = z;
        p.norm = psi.squaredNorm();
        p.p_plus = std::norm(cats.psi_plus.dot(psi));
        p.p_minus = std::norm(cats.psi_minus.dot(psi));
        return p;
    }

    TrajectoryPoint from_density(double t, const MapConstMat& rho) const {
        TrajectoryPoint p;
        p.t = t;
        const auto uu = rho.topLeftCorner(n, n);
        const auto ud = rho.topRightCorner(n, n);
        const auto du = rho.bottomLeftCorner(n, n);
        const auto dd = rho.bottomRightCorner(n, n);
        p.sx = (du.trace() + ud.trace()).real();
        p.sy = (Complex(0.0, 1.0) * (ud.trace() - du.trace())).real();
        p.sz = (uu.trace() - dd.trace()).real();
        double nb = 0.0, z = 0.0;
        for (int s = 0; s < 2; ++s) {
            const auto blk = rho.block(s * n, s * n, n, n);
            nb += (blk.diagonal().array().real() * kvec).sum();
            // Tr(blk X) = sum_k sq[k+1] (blk[k+1,k] + blk[k,k+1])
            z += ((blk.diagonal(-1) + blk.diagonal(1)).array() * sqrt_n.tail(n - 1).array())
                     .sum()
                     .real();
        }
        p.nbar_phonon = nb;
        p.Z = z;
        p.norm = rho.trace().real();
        p.p_plus = cats.psi_plus.dot(rho * cats.psi_plus).real();
        p.p_minus = cats.psi_minus.dot(rho * cats.psi_minus).real();
        return p;
    }
};

double top_fock_population_pure(const Eigen::Map<const VectorXcd>& psi, int n) {
    return std::norm(psi(n - 1)) + std::norm(psi(n - 2)) + std::norm(psi(2 * n - 1)) +
           std::norm(psi(2 * n - 2));
}

double top_fock_population_density(const MapConstMat& rho, int n) {
    return rho(n - 1, n - 1).real() + rho(n - 2, n - 2).real() +
           rho(2 * n - 1, 2 * n - 1).real() + rho(2 * n - 2, 2 * n - 2).real();
}

Trajectory make_trajectory_shell(const ProtocolConfig& cfg, double initial_gap,
                                 int sample_count) {
    Trajectory traj;
    traj.points.reserve(sample_count);
    traj.delta_gap_initial = initial_gap;
    traj.omega_y0 = cfg.schedule.omega_y0;
    traj.kappa = cfg.kappa();
    return traj;
}

} // namespace

PureEvolution run_pure(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                       int sample_count) {
    if (cfg.heating)
        throw ConfigError("evolve_pure: cfg.heating must be absent (use evolve_lindblad)");
    settings.validate();

    const GroundState ground = initial_ground_state(cfg);
    const RabiKernels kernels(cfg);
    const ObservableSet observables(cfg);
    const int dim = kernels.total_dim();

    detail::OdeState y(dim);
    Eigen::Map<VectorXcd>(y.data(), dim) = ground.state.amplitudes;

    auto rhs = [&kernels, dim](const detail::OdeState& in, detail::OdeState& out, double t) {
        MapConstMat min(in.data(), dim, 1);
        MapMat mout(out.data(), dim, 1);
        mout.setZero();
        kernels.add_h_left(t, min, mout, Complex(0.0, -1.0));
    };

    Trajectory traj = make_trajectory_shell(cfg, ground.gap, sample_count);
    auto sampler = [&](double t, const detail::OdeState& state) {
        Eigen::Map<const VectorXcd> psi(state.data(), dim);
        TrajectoryPoint p = observables.from_pure(t, psi);
        if (std::abs(p.norm - 1.0) > 1e-8)
            throw ToleranceNotMet("evolve_pure: norm drift " + std::to_string(p.norm - 1.0) +
                                  " exceeds 1e-8; tighten tolerances");
        if (top_fock_population_pure(psi, kernels.fock_dim()) > 1e-6)
            throw TruncationError("evolve_pure: top Fock levels populated at t = " +
                                  std::to_string(t) + "; increase fock_dim");
        traj.points.push_back(p);
    };

    detail::integrate_sampled(rhs, y, cfg.schedule.t_final, sample_count, settings.rel_tol,
                              settings.abs_tol, settings.max_step_ms, settings.method_order,
                              sampler);

    PureEvolution result;
    result.trajectory = std::move(traj);
    result.final_state = StateVector{Eigen::Map<VectorXcd>(y.data(), dim)};
    return result;
}

LindbladEvolution run_lindblad(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                               int sample_count, const DensityMatrix& initial) {
    if (!cfg.heating)
        throw ConfigError("evolve_lindblad: cfg.heating must be present");
    settings.validate();
    if (initial.dim() != cfg.hilbert.total_dim())
        throw DimensionMismatch("evolve_lindblad: initial state dimension mismatch");

    const GroundState ground = initial_ground_state(cfg);
    const RabiKernels kernels(cfg);
    const ObservableSet observables(cfg);
    const int dim = kernels.total_dim();

    detail::OdeState y(static_cast<size_t>(dim) * dim);
    Eigen::Map<MatrixXcd>(y.data(), dim, dim) = initial.entries;

    auto rhs = [&kernels, dim](const detail::OdeState& in, detail::OdeState& out, double t) {
        MapConstMat rho(in.data(), dim, dim);
        MapMat drho(out.data(), dim, dim);
        drho.setZero();
        kernels.add_h_left(t, rho, drho, Complex(0.0, -1.0));
        kernels.add_h_right(t, rho, drho, Complex(0.0, 1.0));
        kernels.add_dissipators(rho, drho);
    };

    Trajectory traj = make_trajectory_shell(cfg, ground.gap, sample_count);
    auto sampler = [&](double t, const detail::OdeState& state) {
        MapConstMat rho(state.data(), dim, dim);
        TrajectoryPoint p = observables.from_density(t, rho);
        if (std::abs(p.norm - 1.0) > 1e-6)
            throw ToleranceNotMet("evolve_lindblad: trace drift " +
                                  std::to_string(p.norm - 1.0) + " exceeds 1e-6");
        if (top_fock_population_density(rho, kernels.fock_dim()) > 1e-6)
            throw TruncationError("evolve_lindblad: top Fock levels populated at t = " +
                                  std::to_string(t) + "; increase fock_dim");
        const double min_ev = DensityMatrix{rho}.min_eigenvalue();
        if (min_ev < -1e-6)
            throw PositivityViolation("evolve_lindblad: min eigenvalue " +
                                      std::to_string(min_ev) + " at t = " + std::to_string(t));
        traj.points.push_back(p);
    };

    detail::integrate_sampled(rhs, y, cfg.schedule.t_final, sample_count, settings.rel_tol,
                              settings.abs_tol, settings.max_step_ms, settings.method_order,
                              sampler);

    LindbladEvolution result;
    result.trajectory = std::move(traj);
    result.final_state = DensityMatrix{Eigen::Map<MatrixXcd>(y.data(), dim, dim)};
    return result;
}

LindbladEvolution run_lindblad(const ProtocolConfig& cfg, const IntegratorSettings& settings,
                               int sample_count) {
    const GroundState ground = initial_ground_state(cfg);
    return run_lindblad(cfg, settings, sample_count,
                        DensityMatrix::from_pure(ground.state));
}

std::string to_csv(const Trajectory& traj) {
    std::string out = "t_ms,sx,sy,sz,Z,nbar_phonon,norm,p_plus,p_minus\n";
    for (const auto& p : traj.points)
        out += csv_row({csv_number(p.t), csv_number(p.sx), csv_number(p.sy), csv_number(p.sz),
                        csv_number(p.Z), csv_number(p.nbar_phonon), csv_number(p.norm),
                        csv_number(p.p_plus), csv_number(p.p_minus)});
    return out;
}

} // namespace rabisense
