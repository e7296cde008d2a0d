#pragma once

// Internal tensor-structure kernels for the propagators. Every Hamiltonian
// and dissipator term acts as O(dim * cols) banded/block operations instead
// of dense matrix products; the unit tests pin these against the dense
// hamiltonian_at construction.

#include <cmath>

#include <Eigen/Dense>

#include "rabisense/hilbert.hpp"
#include "rabisense/model.hpp"

namespace rabisense::detail {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using MapMat = Eigen::Map<MatrixXcd>;
using MapConstMat = Eigen::Map<const MatrixXcd>;

class RabiKernels {
  public:
    explicit RabiKernels(const ProtocolConfig& cfg)
        : n_(cfg.hilbert.fock_dim), omega_(cfg.omega), g_(cfg.g),
          cf_(cfg.force_coefficient()), ramp_(cfg.schedule) {
        sq_ = VectorXcd(n_);
        nvec_ = VectorXcd(n_);
        for (int k = 0; k < n_; ++k) {
            sq_(k) = std::sqrt(static_cast<double>(k)); // sq_[0] unused
            nvec_(k) = static_cast<double>(k);
        }
        if (cfg.heating) {
            gamma_down_ = 0.5 * (cfg.heating->ndot_per_ms / cfg.heating->nbar) *
                          (cfg.heating->nbar + 1.0);
            gamma_up_ = 0.5 * cfg.heating->ndot_per_ms;
        }
    }

    int fock_dim() const { return n_; }
    int total_dim() const { return 2 * n_; }

    // out += pref * H(t) * in   (in, out: total_dim x cols, distinct buffers)
    template <class In, class Out>
    void add_h_left(double t, const In& in, Out&& out, Complex pref) const {
        const double omega_y = ramp_.value(t);
        const Complex i(0.0, 1.0);
        for (int s = 0; s < 2; ++s) {
            auto dst = out.middleRows(s * n_, n_);
            const auto same = in.middleRows(s * n_, n_);
            const auto other = in.middleRows((1 - s) * n_, n_);
            dst.noalias() += (pref * omega_) * (nvec_.asDiagonal() * same);
            dst.noalias() += (s == 0 ? -i : i) * (pref * 0.5 * omega_y) * other;
            add_x_rows(dst, other, pref * g_);
            add_x_rows(dst, same, pref * cf_);
        }
    }

    // out += pref * in * H(t)
    template <class In, class Out>
    void add_h_right(double t, const In& in, Out&& out, Complex pref) const {
        const double omega_y = ramp_.value(t);
        const Complex i(0.0, 1.0);
        for (int s = 0; s < 2; ++s) {
            auto dst = out.middleCols(s * n_, n_);
            const auto same = in.middleCols(s * n_, n_);
            const auto other = in.middleCols((1 - s) * n_, n_);
            dst.noalias() += (pref * omega_) * (same * nvec_.asDiagonal());
            // right multiplication flips the sigma_y sign pattern
            dst.noalias() += (s == 0 ? i : -i) * (pref * 0.5 * omega_y) * other;
            add_x_cols(dst, other, pref * g_);
            add_x_cols(dst, same, pref * cf_);
        }
    }

    // out += gamma_down (2 a rho a^dag - n rho - rho n)
    //      + gamma_up (2 a^dag rho a - (n+1) rho - rho (n+1))
    void add_dissipators(const MapConstMat& rho, MapMat& out) const {
        if (gamma_down_ == 0.0 && gamma_up_ == 0.0)
            return;
        for (int sr = 0; sr < 2; ++sr) {
            for (int sc = 0; sc < 2; ++sc) {
                const auto blk = rho.block(sr * n_, sc * n_, n_, n_);
                auto dst = out.block(sr * n_, sc * n_, n_, n_);
                add_dissipator_block(blk, dst);
            }
        }
    }

  private:
    // dst += coeff * X * src with X = a^dag + a acting on rows:
    // (X v)[n] = sq[n] v[n-1] + sq[n+1] v[n+1]
    template <class Dst, class Src>
    void add_x_rows(Dst&& dst, const Src& src, Complex coeff) const {
        dst.middleRows(1, n_ - 1).noalias() +=
            coeff * (sq_.tail(n_ - 1).asDiagonal() * src.middleRows(0, n_ - 1));
        dst.middleRows(0, n_ - 1).noalias() +=
            coeff * (sq_.tail(n_ - 1).asDiagonal() * src.middleRows(1, n_ - 1));
    }

    // dst += coeff * src * X (X is symmetric, same stencil on columns)
    template <class Dst, class Src>
    void add_x_cols(Dst&& dst, const Src& src, Complex coeff) const {
        dst.middleCols(1, n_ - 1).noalias() +=
            coeff * (src.middleCols(0, n_ - 1) * sq_.tail(n_ - 1).asDiagonal());
        dst.middleCols(0, n_ - 1).noalias() +=
            coeff * (src.middleCols(1, n_ - 1) * sq_.tail(n_ - 1).asDiagonal());
    }

    // Per spin-block dissipator action on an n x n Fock block.
    template <class Src, class Dst>
    void add_dissipator_block(const Src& blk, Dst&& dst) const {
        // a blk a^dag : [m,n] -> sq[m+1] sq[n+1] blk[m+1, n+1]
        dst.topLeftCorner(n_ - 1, n_ - 1).noalias() +=
            (2.0 * gamma_down_) *
            (sq_.tail(n_ - 1).asDiagonal() * blk.bottomRightCorner(n_ - 1, n_ - 1) *
             sq_.tail(n_ - 1).asDiagonal());
        // a^dag blk a : [m,n] -> sq[m] sq[n] blk[m-1, n-1]
        dst.bottomRightCorner(n_ - 1, n_ - 1).noalias() +=
            (2.0 * gamma_up_) *
            (sq_.tail(n_ - 1).asDiagonal() * blk.topLeftCorner(n_ - 1, n_ - 1) *
             sq_.tail(n_ - 1).asDiagonal());
        // anticommutator halves are diagonal scalings
        dst.noalias() -= gamma_down_ * (nvec_.asDiagonal() * blk);
        dst.noalias() -= gamma_down_ * (blk * nvec_.asDiagonal());
        dst.noalias() -= gamma_up_ * ((nvec_.array() + 1.0).matrix().asDiagonal() * blk);
        dst.noalias() -= gamma_up_ * (blk * (nvec_.array() + 1.0).matrix().asDiagonal());
    }

    int n_;
    double omega_, g_, cf_;
    RampSchedule ramp_;
    double gamma_down_ = 0.0, gamma_up_ = 0.0;
    VectorXcd sq_;
    VectorXcd nvec_;
};

} // namespace rabisense::detail
