#pragma once

// Internal adaptive integration loop shared by the Demkov oracle and the full
// Hilbert-space propagators. Thin wrapper over boost::odeint embedded
// Runge-Kutta pairs with per-step error control; the loop lands exactly on
// uniformly spaced sample times without losing the learned step size.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "rabisense/errors.hpp"

namespace rabisense::detail {

using OdeState = std::vector<std::complex<double>>;

template <class Controlled, class System, class Sampler>
void run_adaptive(Controlled ctrl, System&& system, OdeState& y, double t_final,
                  int sample_count, double max_step, Sampler&& sample) {
    namespace ode = boost::numeric::odeint;
    if (sample_count < 2)
        throw ConfigError("sample_count must be >= 2");

    double t = 0.0;
    double dt = std::min(max_step, t_final / 1000.0);
    sample(0.0, y);
    for (int k = 1; k < sample_count; ++k) {
        const double target =
            (k == sample_count - 1) ? t_final : t_final * k / (sample_count - 1);
        while (t < target - 1e-15 * t_final) {
            double trial = std::min({dt, max_step, target - t});
            const bool clipped = trial < dt;
            int fails = 0;
            while (ctrl.try_step(system, y, t, trial) == ode::fail) {
                if (++fails > 60 || !(trial > 1e-14 * t_final))
                    throw ToleranceNotMet("adaptive step control stalled at t = " +
                                          std::to_string(t));
            }
            // trial now holds the stepper's suggestion for the next step
            dt = clipped ? std::max(dt, trial) : trial;
        }
        sample(target, y);
    }
}

/// method_order >= 6 selects the Fehlberg 7(8) pair, otherwise Dormand-Prince
/// 5(4). Both satisfy the order >= 4 contract with per-step error control.
template <class System, class Sampler>
void integrate_sampled(System&& system, OdeState& y, double t_final, int sample_count,
                       double rel_tol, double abs_tol, double max_step, int method_order,
                       Sampler&& sample) {
    namespace ode = boost::numeric::odeint;
    if (method_order >= 6) {
        auto ctrl = ode::make_controlled<ode::runge_kutta_fehlberg78<OdeState>>(abs_tol, rel_tol);
        run_adaptive(ctrl, system, y, t_final, sample_count, max_step, sample);
    } else {
        auto ctrl = ode::make_controlled<ode::runge_kutta_dopri5<OdeState>>(abs_tol, rel_tol);
        run_adaptive(ctrl, system, y, t_final, sample_count, max_step, sample);
    }
}

} // namespace rabisense::detail
