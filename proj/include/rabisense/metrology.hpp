#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rabisense/demkov.hpp"
#include "rabisense/dynamics.hpp"

namespace rabisense {

/// mean / sqrt(variance), sign-preserving. Throws ZeroVariance for
/// variance <= 0.
double snr(double mean, double variance);

/// Outcome of one full sensing run together with the analytic two-level
/// predictions and their discrepancies (numeric - analytic).
struct RunResult {
    double kappa = 0;
    double t_final_ms = 0;

    double sx_mean = 0, sx_var = 0;
    double Z_mean = 0, Z_var = 0;
    double snr_sx = 0, snr_Z = 0;
    double p_plus = 0, p_minus = 0;

    double sx_mean_analytic = 0, sx_var_analytic = 0;
    double Z_mean_analytic = 0, Z_var_analytic = 0;
    double snr_analytic = 0;

    double sx_discrepancy = 0;
    double snr_discrepancy = 0;

    double fmin_yN = 0;             // analytic minimum detectable force
    double fmin_numeric_yN = 0;     // F_d asinh(1)/asinh(SNR_num); falls back
                                    // to fmin_yN when SNR_num <= 0
    double sensitivity_yN_rtHz = 0; // sqrt(t_f [s]) * fmin_numeric_yN
};

enum class Engine { Pure, Lindblad };
enum class SweepAxis { Gamma, Force, HeatingRate, Omega };

std::string to_string(Engine e);
std::string to_string(SweepAxis a);

/// Initial ground state -> evolution (engine chosen by cfg.heating) -> final
/// observables, plus attached demkov predictions.
RunResult run_protocol(const ProtocolConfig& cfg, const IntegratorSettings& settings);

struct SweepSpec {
    SweepAxis axis;
    std::vector<double> values;
    ProtocolConfig base;
    Engine engine = Engine::Pure;
};

struct SweepPoint {
    double axis_value = 0;
    std::optional<RunResult> result; // empty on per-point failure
    std::string error;               // failure description, "" on success
};

struct SweepResult {
    SweepAxis axis;
    Engine engine;
    std::vector<SweepPoint> points; // ordered exactly as spec.values
    bool all_ok() const;
};

/// One run_protocol per axis value. Points execute concurrently; the result
/// order matches spec.values regardless of completion order, and failures are
/// recorded per point without aborting the sweep.
SweepResult sweep(const SweepSpec& spec, const IntegratorSettings& settings);

/// Applies an axis value to a copy of the base config.
ProtocolConfig apply_axis(const ProtocolConfig& base, SweepAxis axis, double value,
                          Engine engine);

/// Sweep CSV: header axis_value,sx_mean,sx_var,Z_mean,Z_var,snr_sx,snr_Z,
/// snr_analytic,fmin_yN,sensitivity_yN_rtHz,error. Failed points carry the
/// error text (with commas stripped) and nan data cells.
std::string to_csv(const SweepResult& result);

/// Single-row CSV for one RunResult with the same data columns.
std::string run_result_csv_header();
std::string to_csv_row(double axis_value, const RunResult& r);

} // namespace rabisense
