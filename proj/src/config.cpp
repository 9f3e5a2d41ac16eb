#include "cmx/config.hpp"

#include "cmx/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace cmx {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

template <class Int>
Int parse_int(const std::string& s) {
    Int v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    return v;
}

double parse_finite(const std::string& s) {
    const double v = parse_double(s);
    if (!std::isfinite(v)) throw std::invalid_argument("value must be finite: '" + s + "'");
    return v;
}

void expect_count(const std::vector<std::string>& t, size_t n, const std::string& what) {
    if (t.size() != n) {
        throw std::invalid_argument(what + " expects " + std::to_string(n) + " value" + (n == 1 ? "" : "s") +
                                    ", got " + std::to_string(t.size()));
    }
}

std::vector<double> parse_params(const std::vector<std::string>& t, size_t n, const std::string& preset) {
    if (t.size() - 1 != n) {
        throw std::invalid_argument("preset '" + preset + "' takes " + std::to_string(n) + " parameter" +
                                    (n == 1 ? "" : "s") + ", got " + std::to_string(t.size() - 1));
    }
    std::vector<double> out;
    for (size_t i = 1; i < t.size(); ++i) out.push_back(parse_finite(t[i]));
    return out;
}

bool is_axis(double v) { return v == 1.0 || v == 2.0 || v == 3.0; }

using Setter = std::function<void(const std::vector<std::string>&, const std::string&, ScenarioConfig&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"grid.dims",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 3, "grid.dims");
             for (size_t a = 0; a < 3; ++a) c.dims[a] = parse_int<int>(t[a]);
         }},
        {"grid.spacing",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "grid.spacing");
             c.spacing = parse_finite(t[0]);
         }},
        {"medium.preset",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             if (t.empty()) throw std::invalid_argument("medium.preset needs a preset name");
             if (t[0] == "vacuum") {
                 c.medium = MediumPreset::Vacuum;
                 c.medium_params = parse_params(t, 0, t[0]);
             } else if (t[0] == "uniform") {
                 c.medium = MediumPreset::Uniform;
                 c.medium_params = parse_params(t, 2, t[0]);
             } else if (t[0] == "sech_slab") {
                 c.medium = MediumPreset::SechSlab;
                 c.medium_params = parse_params(t, 3, t[0]);
             } else {
                 throw std::invalid_argument("unknown medium preset '" + t[0] + "'");
             }
         }},
        {"initial.preset",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             if (t.empty()) throw std::invalid_argument("initial.preset needs a preset name");
             if (t[0] == "zero") {
                 c.initial = InitialPreset::Zero;
                 c.initial_params = parse_params(t, 0, t[0]);
             } else if (t[0] == "plane_wave") {
                 c.initial = InitialPreset::PlaneWave;
                 c.initial_params = parse_params(t, 4, t[0]);
             } else if (t[0] == "gaussian_pulse") {
                 c.initial = InitialPreset::GaussianPulse;
                 c.initial_params = parse_params(t, 5, t[0]);
             } else if (t[0] == "random") {
                 c.initial = InitialPreset::Random;
                 c.initial_params = parse_params(t, 1, t[0]);
             } else {
                 throw std::invalid_argument("unknown initial preset '" + t[0] + "'");
             }
         }},
        {"scheme.orientation",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "scheme.orientation");
             if (t[0] == "DB") {
                 c.orientation = Orientation::DB;
             } else if (t[0] == "EH") {
                 c.orientation = Orientation::EH;
             } else {
                 throw std::invalid_argument("orientation must be DB or EH");
             }
         }},
        {"scheme.cfl",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "scheme.cfl");
             c.cfl = parse_finite(t[0]);
         }},
        {"scheme.steps",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "scheme.steps");
             c.steps = parse_int<long>(t[0]);
         }},
        {"scheme.cadence",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "scheme.cadence");
             c.cadence = parse_int<long>(t[0]);
         }},
        {"scheme.kappa",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "scheme.kappa");
             c.kappa = parse_finite(t[0]);
         }},
        {"output.directory",
         [](const auto&, const std::string& raw, ScenarioConfig& c) {
             if (raw.empty()) throw std::invalid_argument("output.directory must not be empty");
             c.output_directory = raw;
         }},
        {"output.snapshot_stride",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "output.snapshot_stride");
             c.snapshot_stride = parse_int<long>(t[0]);
         }},
        {"seed",
         [](const auto& t, const auto&, ScenarioConfig& c) {
             expect_count(t, 1, "seed");
             c.seed = parse_int<std::uint64_t>(t[0]);
         }},
    };
    return table;
}

void validate(const ScenarioConfig& c, const std::map<std::string, long>& lines, std::vector<std::string>& errors) {
    const auto at = [&](const std::string& key, const std::string& msg) {
        const auto it = lines.find(key);
        errors.push_back(it == lines.end() ? key + ": " + msg
                                           : "line " + std::to_string(it->second) + ": " + key + ": " + msg);
    };
    if (!lines.count("grid.dims")) {
        errors.push_back("grid.dims is required");
    } else {
        long long total = 1;
        bool positive = true;
        for (int d : c.dims) {
            positive = positive && d >= 1;
            total *= d;
        }
        if (!positive) {
            at("grid.dims", "every dimension must be at least 1");
        } else if (total < 8) {
            at("grid.dims", "the grid needs at least 8 cells");
        }
    }
    if (!(c.spacing > 0.0)) at("grid.spacing", "must be positive");
    for (double v : c.medium_params)
        if (!(v > 0.0)) {
            at("medium.preset", "parameters must be positive");
            break;
        }
    const auto& p = c.initial_params;
    if (c.initial == InitialPreset::PlaneWave) {
        if (!is_axis(p[0]) || !is_axis(p[2])) at("initial.preset", "axis and polarization must be 1, 2 or 3");
        else if (p[0] == p[2]) at("initial.preset", "polarization must differ from the propagation axis");
        if (!(p[1] > 0.0)) at("initial.preset", "wavelength must be positive");
    } else if (c.initial == InitialPreset::GaussianPulse) {
        if (!(p[3] > 0.0)) at("initial.preset", "pulse width must be positive");
    }
    if (!(c.cfl > 0.0 && c.cfl < 1.0)) at("scheme.cfl", "must lie strictly between 0 and 1");
    if (c.steps < 0) at("scheme.steps", "must be nonnegative");
    if (c.cadence < 1) at("scheme.cadence", "must be at least 1");
    if (!(c.kappa > 0.0)) at("scheme.kappa", "must be positive");
    if (c.snapshot_stride < 0) at("output.snapshot_stride", "must be nonnegative");
}

const char* medium_name(MediumPreset m) {
    switch (m) {
        case MediumPreset::Vacuum: return "vacuum";
        case MediumPreset::Uniform: return "uniform";
        case MediumPreset::SechSlab: return "sech_slab";
    }
    return "";
}

const char* initial_name(InitialPreset i) {
    switch (i) {
        case InitialPreset::Zero: return "zero";
        case InitialPreset::PlaneWave: return "plane_wave";
        case InitialPreset::GaussianPulse: return "gaussian_pulse";
        case InitialPreset::Random: return "random";
    }
    return "";
}

std::string with_params(const char* name, const std::vector<double>& params) {
    std::string out = name;
    for (double v : params) out += " " + format_double(v);
    return out;
}

// Uniform on [-1, 1) from the top 53 bits, identical on every platform.
double symmetric_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(join(messages)), messages_(std::move(messages)) {}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    std::vector<std::string> errors;
    std::map<std::string, long> lines;
    std::istringstream in(text);
    long lineno = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) {
            errors.push_back(where + "expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            errors.push_back(where + "unknown key '" + key + "'");
            continue;
        }
        if (lines.count(key)) {
            errors.push_back(where + "duplicate key '" + key + "' (first set on line " +
                             std::to_string(lines[key]) + ")");
            continue;
        }
        lines[key] = lineno;
        try {
            it->second(tokens(value), value, c);
        } catch (const std::invalid_argument& e) {
            errors.push_back(where + key + ": " + e.what());
        }
    }
    if (errors.empty()) validate(c, lines, errors);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file " + path});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string print_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "grid.dims = " << c.dims[0] << ' ' << c.dims[1] << ' ' << c.dims[2] << '\n';
    out << "grid.spacing = " << format_double(c.spacing) << '\n';
    out << "medium.preset = " << with_params(medium_name(c.medium), c.medium_params) << '\n';
    out << "initial.preset = " << with_params(initial_name(c.initial), c.initial_params) << '\n';
    out << "scheme.orientation = " << (c.orientation == Orientation::DB ? "DB" : "EH") << '\n';
    out << "scheme.cfl = " << format_double(c.cfl) << '\n';
    out << "scheme.steps = " << c.steps << '\n';
    out << "scheme.cadence = " << c.cadence << '\n';
    out << "scheme.kappa = " << format_double(c.kappa) << '\n';
    out << "output.directory = " << c.output_directory << '\n';
    out << "output.snapshot_stride = " << c.snapshot_stride << '\n';
    out << "seed = " << c.seed << '\n';
    return out.str();
}

Scenario build_scenario(const ScenarioConfig& c) {
    const Mesh mesh(c.dims, c.spacing);
    const auto& mp = c.medium_params;
    MediumProfile medium;
    switch (c.medium) {
        case MediumPreset::Vacuum: medium = MediumProfile::vacuum(mesh); break;
        case MediumPreset::Uniform: medium = MediumProfile::uniform(mesh, mp[0], mp[1]); break;
        case MediumPreset::SechSlab: medium = MediumProfile::sech_slab(mesh, mp[0], mp[1], mp[2]); break;
    }

    SchemeConfig scheme = SchemeConfig::from_cfl(medium, c.cfl, c.steps, c.orientation);
    scheme.cadence = c.cadence;
    scheme.kappa = c.kappa;
    scheme.validate(medium);

    const auto& ip = c.initial_params;
    MaxwellState initial;
    switch (c.initial) {
        case InitialPreset::Zero: initial = MaxwellState::zero(mesh); break;
        case InitialPreset::PlaneWave: {
            PlaneWave w;
            w.axis = static_cast<int>(ip[0]) - 1;
            w.wavelength = ip[1];
            w.polarization = static_cast<int>(ip[2]) - 1;
            w.amplitude = ip[3];
            initial = plane_wave_state(medium, w, scheme.dt);
            break;
        }
        case InitialPreset::GaussianPulse:
            initial = gaussian_pulse_state(medium, {ip[0], ip[1], ip[2]}, ip[3], ip[4]);
            break;
        case InitialPreset::Random: {
            std::mt19937_64 rng(c.seed);
            FormField A(mesh, 1, Grid::Primal);
            for (int comp = 0; comp < 3; ++comp)
                for (double& v : A[comp]) v = ip[0] * symmetric_unit(rng);
            initial = state_from_induction(FormField(mesh, 2, Grid::Dual), exterior_derivative(A), medium);
            break;
        }
    }
    return {std::move(medium), std::move(initial), scheme};
}

}  // namespace cmx
