#include "rabisense/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rabisense/constants.hpp"
#include "rabisense/csv.hpp"
#include "rabisense/demkov.hpp"

#ifndef RABISENSE_VERSION
#define RABISENSE_VERSION "0.1.0"
#endif

namespace rabisense {

std::string library_version() { return RABISENSE_VERSION; }

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + value);
    }
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
        throw ConfigError("'" + key + "' must be an integer, got " + value);
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("'" + key + "' must be true or false, got " + value);
}

using Setter = std::function<void(ConfigFile&, const std::string&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    auto dbl = [](double ConfigFile::* member) {
        return [member](ConfigFile& c, const std::string& k, const std::string& v) {
            c.*member = parse_double(k, v);
        };
    };
    auto integer = [](int ConfigFile::* member) {
        return [member](ConfigFile& c, const std::string& k, const std::string& v) {
            c.*member = parse_int(k, v);
        };
    };
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"physics",
         {
             {"g_khz", dbl(&ConfigFile::g_khz)},
             {"omega_khz", dbl(&ConfigFile::omega_khz)},
             {"omega_y0_khz", dbl(&ConfigFile::omega_y0_khz)},
             {"gamma_khz", dbl(&ConfigFile::gamma_khz)},
             {"force_yN", dbl(&ConfigFile::force_yN)},
             {"ion_mass_amu", dbl(&ConfigFile::ion_mass_amu)},
             {"trap_freq_mhz", dbl(&ConfigFile::trap_freq_mhz)},
             {"angular_convention",
              [](ConfigFile& c, const std::string&, const std::string& v) {
                  c.angular_convention = angular_convention_from_string(v);
              }},
         }},
        {"numerics",
         {
             {"fock_dim", integer(&ConfigFile::fock_dim)},
             {"rel_tol", dbl(&ConfigFile::rel_tol)},
             {"abs_tol", dbl(&ConfigFile::abs_tol)},
             {"max_step_ms", dbl(&ConfigFile::max_step_ms)},
             {"sample_count", integer(&ConfigFile::sample_count)},
             {"t_final_factor", dbl(&ConfigFile::t_final_factor)},
         }},
        {"heating",
         {
             {"enabled",
              [](ConfigFile& c, const std::string& k, const std::string& v) {
                  c.heating_enabled = parse_bool(k, v);
              }},
             {"rate_per_ms", dbl(&ConfigFile::heating_rate_per_ms)},
             {"nbar", dbl(&ConfigFile::heating_nbar)},
         }},
    };
    return s;
}

void require_positive(double v, const std::string& name) {
    if (!(v > 0))
        throw ConfigError("'" + name + "' must be positive");
}

} // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section))
                throw ConfigError("unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any section header");
        const auto& keys = schema().at(section);
        const auto it = keys.find(key);
        if (it == keys.end())
            throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
        it->second(cfg, key, value);
    }

    require_positive(cfg.g_khz, "g_khz");
    require_positive(cfg.omega_khz, "omega_khz");
    require_positive(cfg.omega_y0_khz, "omega_y0_khz");
    require_positive(cfg.gamma_khz, "gamma_khz");
    require_positive(cfg.ion_mass_amu, "ion_mass_amu");
    require_positive(cfg.trap_freq_mhz, "trap_freq_mhz");
    require_positive(cfg.t_final_factor, "t_final_factor");
    if (cfg.fock_dim < 2)
        throw ConfigError("'fock_dim' must be >= 2");
    if (cfg.sample_count < 2)
        throw ConfigError("'sample_count' must be >= 2");
    if (cfg.heating_rate_per_ms < 0)
        throw ConfigError("'rate_per_ms' must be >= 0");
    require_positive(cfg.heating_nbar, "nbar");
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ConfigFile::serialize() const {
    std::ostringstream out;
    const auto num = [](double v) { return csv_number(v); };
    out << "[physics]\n";
    out << "g_khz = " << num(g_khz) << "\n";
    out << "omega_khz = " << num(omega_khz) << "\n";
    out << "omega_y0_khz = " << num(omega_y0_khz) << "\n";
    out << "gamma_khz = " << num(gamma_khz) << "\n";
    out << "force_yN = " << num(force_yN) << "\n";
    out << "ion_mass_amu = " << num(ion_mass_amu) << "\n";
    out << "trap_freq_mhz = " << num(trap_freq_mhz) << "\n";
    out << "angular_convention = " << to_string(angular_convention) << "\n";
    out << "\n[numerics]\n";
    out << "fock_dim = " << fock_dim << "\n";
    out << "rel_tol = " << num(rel_tol) << "\n";
    out << "abs_tol = " << num(abs_tol) << "\n";
    out << "max_step_ms = " << num(max_step_ms) << "\n";
    out << "sample_count = " << sample_count << "\n";
    out << "t_final_factor = " << num(t_final_factor) << "\n";
    out << "\n[heating]\n";
    out << "enabled = " << (heating_enabled ? "true" : "false") << "\n";
    out << "rate_per_ms = " << num(heating_rate_per_ms) << "\n";
    out << "nbar = " << num(heating_nbar) << "\n";
    return out.str();
}

ProtocolConfig ConfigFile::to_protocol() const {
    const AngularConvention conv = angular_convention;
    const double gamma = khz_to_rad_per_ms(gamma_khz, conv);
    ProtocolConfig cfg{
        khz_to_rad_per_ms(g_khz, conv),
        khz_to_rad_per_ms(omega_khz, conv),
        RampSchedule(khz_to_rad_per_ms(omega_y0_khz, conv), gamma, t_final_factor / gamma),
        force_yN,
        TrapPhysics::from_amu(ion_mass_amu, trap_freq_mhz, conv),
        HilbertSpec(fock_dim),
        IntegratorSettings{rel_tol, abs_tol, max_step_ms, 8},
        std::nullopt,
        conv,
    };
    if (heating_enabled)
        cfg.heating = HeatingSpec{heating_rate_per_ms, heating_nbar};
    return cfg;
}

std::string manifest(const ConfigFile& cfg, const std::string& command) {
    const ProtocolConfig p = cfg.to_protocol();
    std::ostringstream out;
    const auto num = [](double v) { return csv_number(v); };
    out << "# rabisense run manifest: every resolved parameter for '" << command << "'\n";
    out << "# (parseable as a config file; comment lines are informational)\n";
    out << "# version = " << library_version() << "\n";
    out << cfg.serialize();
    out << "\n# resolved values (rad/ms unless noted)\n";
    out << "# derived: g_rad_per_ms = " << num(p.g) << "\n";
    out << "# derived: omega_rad_per_ms = " << num(p.omega) << "\n";
    out << "# derived: omega_y0_rad_per_ms = " << num(p.schedule.omega_y0) << "\n";
    out << "# derived: gamma_per_ms = " << num(p.schedule.gamma) << "\n";
    out << "# derived: t_final_ms = " << num(p.schedule.t_final) << "\n";
    out << "# derived: z0_m = " << num(p.trap.z0_m) << "\n";
    out << "# derived: ion_mass_kg = " << num(p.trap.ion_mass_kg) << "\n";
    out << "# derived: trap_omega_rad_per_s = " << num(p.trap.trap_omega_rad_s) << "\n";
    out << "# derived: force_coefficient_rad_per_ms = " << num(p.force_coefficient()) << "\n";
    out << "# derived: bias_rad_per_ms = " << num(p.bias()) << "\n";
    out << "# derived: kappa = " << num(p.kappa()) << "\n";
    out << "# derived: fmin_sigma_x_yN = " << num(min_force_sigma_x(p)) << "\n";
    const auto fmin_z = min_force_quadrature(p);
    out << "# derived: fmin_quadrature_yN = "
        << (fmin_z ? num(*fmin_z) : std::string("unmeasurable")) << "\n";
    out << "# derived: sensitivity_yN_rtHz = " << num(sensitivity_yn_per_rthz(p)) << "\n";
    out << "# constants: hbar_J_s = " << num(constants::hbar_J_s) << "\n";
    out << "# constants: bohr_magneton_J_per_T = " << num(constants::bohr_magneton_J_per_T)
        << "\n";
    out << "# constants: atomic_mass_kg = " << num(constants::atomic_mass_kg) << "\n";
    return out.str();
}

} // namespace rabisense
