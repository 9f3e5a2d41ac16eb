// Time stepping of Maxwell states on the staggered grid.
//
// One step of either orientation is a synchronized Stormer-Verlet update:
// a half kick of the magnetic variable, a full kick of the electric one,
// and a second magnetic half kick.  The energy coordinate is advanced by
// -dt * star d(e ^ h) with e averaged over the step and h taken at the
// half step, so its spatial integral is conserved exactly.

#pragma once

#include "cmx/fiber.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cmx {

class CflError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest stable step for the medium: spacing * sqrt(eps_min * mu_min) / sqrt(3).
double stable_dt(const MediumProfile& m);

struct SchemeConfig {
    double dt = 0.0;
    Orientation orientation = Orientation::DB;
    long steps = 0;
    long cadence = 1;
    double kappa = 1.0;

    /// Step size chosen as cfl * stable_dt(m).
    static SchemeConfig from_cfl(const MediumProfile& m, double cfl, long steps = 0,
                                 Orientation o = Orientation::DB);

    /// |dt| * sqrt(3) / (spacing * sqrt(eps_min * mu_min)).
    double cfl(const MediumProfile& m) const;
    /// Throws CflError unless 0 < cfl < 1; negative dt is accepted for reversal.
    void validate(const MediumProfile& m) const;
};

MaxwellState step_induction(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg);
MaxwellState step_intensity(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg);
MaxwellState step(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg);

struct DiagnosticsReport {
    double time = 0.0;
    double psi_total = 0.0;
    double phi_total = 0.0;
    double div_D_max = 0.0;
    double div_B_max = 0.0;
    double constitutive_residual_max = 0.0;
    double energy_residual_max = 0.0;
    double hamiltonian_functional = 0.0;
    double poynting_balance_residual = 0.0;

    bool finite() const;
};

/// Diagnostics of a single state; the Poynting residual is left at zero.
DiagnosticsReport diagnose(const MaxwellState& s, const MediumProfile& m, Orientation o, double kappa = 1.0,
                           const Region& region = Region::all());

/// Diagnostics of s_next together with the discrete Poynting balance
/// (psi(next) - psi(prev)) / dt + integral of star d(e ^ h) over `region`,
/// with e and h averaged over the two states.  The flux term is dropped on
/// the whole periodic domain.
DiagnosticsReport poynting_report(const MaxwellState& s_prev, const MaxwellState& s_next, const MediumProfile& m,
                                  const Region& region = Region::all(), Orientation o = Orientation::DB,
                                  double kappa = 1.0);

struct ScenarioSinks {
    std::function<void(const DiagnosticsReport&)> on_report;
    std::function<void(const MaxwellState&, long step)> on_snapshot;
    long snapshot_stride = 0;  // 0 disables snapshots
};

struct ScenarioResult {
    MaxwellState final_state;
    std::vector<DiagnosticsReport> series;
};

/// Steps `cfg.steps` times, reporting at step 0 and every `cfg.cadence`
/// steps.  A non-finite state raises NonFiniteError carrying the step.
ScenarioResult run_scenario(const MaxwellState& initial, const MediumProfile& m, const SchemeConfig& cfg,
                            const ScenarioSinks& sinks = {});

struct PotentialFrame {
    long step = 0;
    double time = 0.0;
    FormField e;  // primal 1-form
    FormField B;  // primal 2-form
};

/// Second-order leapfrog for A'' + (1/eps) star d((1/mu) star dA) = 0 with A
/// stored at half steps.  Frames at integer steps carry e = -A' and B = dA.
void evolve_potential(const FormField& A0, const FormField& Adot0, const MediumProfile& m, const SchemeConfig& cfg,
                      const std::function<void(const PotentialFrame&)>& observer);
std::vector<PotentialFrame> evolve_potential(const FormField& A0, const FormField& Adot0, const MediumProfile& m,
                                             const SchemeConfig& cfg, long stride = 1);

// Initial-condition presets.

struct PlaneWave {
    int axis = 0;          // propagation axis
    int polarization = 1;  // axis of e
    double wavelength = 1.0;
    double amplitude = 1.0;
};

/// In a uniform medium, the discrete travelling mode of the Verlet scheme
/// with step `dt`; otherwise the continuum wave with the mean impedance.
MaxwellState plane_wave_state(const MediumProfile& m, const PlaneWave& w, double dt);
/// Discrete angular frequency of the mode above.
double plane_wave_frequency(const MediumProfile& m, const PlaneWave& w, double dt);

/// Magnetic pulse B = dA with A along the third axis a periodic Gaussian; e = D = 0.
MaxwellState gaussian_pulse_state(const MediumProfile& m, const std::array<double, 3>& centre, double width,
                                  double amplitude);

}  // namespace cmx
