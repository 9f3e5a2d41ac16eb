// Line-oriented scenario configuration.
//
//   # comment
//   grid.dims        = 32 32 32
//   grid.spacing     = 1
//   medium.preset    = vacuum | uniform EPS MU | sech_slab EPS0 WIDTH MU0
//   initial.preset   = zero
//                    | plane_wave AXIS WAVELENGTH POLARIZATION AMPLITUDE
//                    | gaussian_pulse C1 C2 C3 WIDTH AMPLITUDE
//                    | random AMPLITUDE
//   scheme.orientation = DB | EH
//   scheme.cfl       = 0.5
//   scheme.steps     = 0
//   scheme.cadence   = 1
//   scheme.kappa     = 1
//   output.directory = out
//   output.snapshot_stride = 0
//   seed             = 0
//
// Axes are numbered 1..3.  Only grid.dims is required.

#pragma once

#include "cmx/dynamics.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

enum class MediumPreset { Vacuum, Uniform, SechSlab };
enum class InitialPreset { Zero, PlaneWave, GaussianPulse, Random };

struct ScenarioConfig {
    std::array<int, 3> dims{0, 0, 0};
    double spacing = 1.0;

    MediumPreset medium = MediumPreset::Vacuum;
    std::vector<double> medium_params;

    InitialPreset initial = InitialPreset::Zero;
    std::vector<double> initial_params;

    Orientation orientation = Orientation::DB;
    double cfl = 0.5;
    long steps = 0;
    long cadence = 1;
    double kappa = 1.0;

    std::string output_directory = "out";
    long snapshot_stride = 0;
    std::uint64_t seed = 0;

    bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
/// Canonical text listing every key; parse_config(print_config(c)) == c.
std::string print_config(const ScenarioConfig& c);

struct Scenario {
    MediumProfile medium;
    MaxwellState initial;
    SchemeConfig scheme;
};

Scenario build_scenario(const ScenarioConfig& c);

}  // namespace cmx
