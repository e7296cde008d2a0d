#pragma once

#include <string>

#include "rabisense/model.hpp"

namespace rabisense {

/// Flat INI-style run configuration ("key = value" lines, '#' comments).
/// Unknown sections or keys are rejected with an error naming them; a file
/// produced by serialize() or manifest() parses back to the identical value.
/// Defaults are the Fig.-2-style parameter set.
struct ConfigFile {
    // [physics]
    double g_khz = 25.0;
    double omega_khz = 150.0;
    double omega_y0_khz = 225.0;
    double gamma_khz = 1.0;
    double force_yN = 0.0;
    double ion_mass_amu = 24.0;
    double trap_freq_mhz = 6.3;
    AngularConvention angular_convention = AngularConvention::TwoPi;

    // [numerics]
    int fock_dim = 40;
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step_ms = 0.05;
    int sample_count = 400;
    double t_final_factor = 14.0;

    // [heating]
    bool heating_enabled = false;
    double heating_rate_per_ms = 0.0;
    double heating_nbar = 1000.0;

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);
    std::string serialize() const;

    ProtocolConfig to_protocol() const;

    bool operator==(const ConfigFile&) const = default;
};

/// Resolved-parameter manifest: the full config in parseable form plus the
/// derived quantities, constants table and software version as comment lines.
/// Re-running any subcommand from a manifest reproduces the CSV byte-for-byte.
std::string manifest(const ConfigFile& cfg, const std::string& command);

std::string library_version();

} // namespace rabisense
