#include "cmx/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace cmx {

namespace {

void require_state_on(const MaxwellState& s, const MediumProfile& m) {
    s.validate();
    if (s.mesh() != m.mesh()) throw MeshMismatch("state and medium use different meshes");
}

FormField poynting_divergence(const FormField& e, const FormField& h) {
    return hodge_star(exterior_derivative(poynting_form(e, h)));
}

// -dt * star d(e ^ h) added to the energy coordinate.
FormField advance_energy(const FormField& energy, const FormField& e_bar, const FormField& h_half, double dt) {
    FormField out = energy;
    out -= dt * poynting_divergence(e_bar, h_half);
    return out;
}

int levi_civita(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return (b == (a + 1) % 3 && c == (a + 2) % 3) ? 1 : -1;
}

double mean(const Array& a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s / static_cast<double>(a.size());
}

}  // namespace

double stable_dt(const MediumProfile& m) {
    return m.mesh().spacing() * std::sqrt(m.eps_min() * m.mu_min()) / std::sqrt(3.0);
}

SchemeConfig SchemeConfig::from_cfl(const MediumProfile& m, double cfl, long steps, Orientation o) {
    SchemeConfig cfg;
    cfg.dt = cfl * stable_dt(m);
    cfg.steps = steps;
    cfg.orientation = o;
    cfg.validate(m);
    return cfg;
}

double SchemeConfig::cfl(const MediumProfile& m) const { return std::abs(dt) / stable_dt(m); }

void SchemeConfig::validate(const MediumProfile& m) const {
    if (!std::isfinite(dt) || dt == 0.0) throw CflError("time step must be finite and nonzero");
    const double c = cfl(m);
    if (!(c < 1.0)) throw CflError("time step violates the stability bound (cfl = " + std::to_string(c) + ")");
    if (steps < 0) throw std::invalid_argument("step count must be nonnegative");
    if (cadence < 1) throw std::invalid_argument("diagnostic cadence must be at least 1");
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
}

MaxwellState step_induction(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg) {
    cfg.validate(m);
    require_state_on(s, m);
    const double dt = cfg.dt;

    const FormField B_half = s.B - (0.5 * dt) * exterior_derivative(s.e);
    const FormField h_half = magnetic_intensity(B_half, m);

    MaxwellState n;
    n.D = s.D + dt * exterior_derivative(h_half);
    n.e = electric_intensity(n.D, m);
    n.B = B_half - (0.5 * dt) * exterior_derivative(n.e);
    n.h = magnetic_intensity(n.B, m);
    n.energy = advance_energy(s.energy, 0.5 * (s.e + n.e), h_half, dt);
    n.time = s.time + dt;
    return n;
}

MaxwellState step_intensity(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg) {
    cfg.validate(m);
    require_state_on(s, m);
    const double dt = cfg.dt;

    const FormField h_half = s.h - (0.5 * dt) * magnetic_intensity(exterior_derivative(s.e), m);

    MaxwellState n;
    n.e = s.e + dt * electric_intensity(exterior_derivative(h_half), m);
    n.h = h_half - (0.5 * dt) * magnetic_intensity(exterior_derivative(n.e), m);
    n.D = electric_induction(n.e, m);
    n.B = magnetic_induction(n.h, m);
    n.energy = advance_energy(s.energy, 0.5 * (s.e + n.e), h_half, dt);
    n.time = s.time + dt;
    return n;
}

MaxwellState step(const MaxwellState& s, const MediumProfile& m, const SchemeConfig& cfg) {
    return cfg.orientation == Orientation::DB ? step_induction(s, m, cfg) : step_intensity(s, m, cfg);
}

bool DiagnosticsReport::finite() const {
    for (double v : {time, psi_total, phi_total, div_D_max, div_B_max, constitutive_residual_max,
                     energy_residual_max, hamiltonian_functional, poynting_balance_residual}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DiagnosticsReport diagnose(const MaxwellState& s, const MediumProfile& m, Orientation o, double kappa,
                           const Region& region) {
    require_state_on(s, m);
    DiagnosticsReport r;
    r.time = s.time;
    r.psi_total = functional(energy_density(s.D, s.B, m), region);
    r.phi_total = functional(coenergy_density(s.e, s.h, m), region);
    r.div_D_max = exterior_derivative(s.D).max_abs();
    r.div_B_max = exterior_derivative(s.B).max_abs();
    const PhaseResiduals res = phase_residuals(s, m, o);
    r.constitutive_residual_max = std::max(res.delta_De.max_abs(), res.delta_Bh.max_abs());
    r.energy_residual_max = res.delta_energy.max_abs();
    r.hamiltonian_functional = functional(contact_hamiltonian_density(s, m, o, kappa), region);
    return r;
}

DiagnosticsReport poynting_report(const MaxwellState& s_prev, const MaxwellState& s_next, const MediumProfile& m,
                                  const Region& region, Orientation o, double kappa) {
    require_state_on(s_prev, m);
    DiagnosticsReport r = diagnose(s_next, m, o, kappa, region);
    const double dt = s_next.time - s_prev.time;
    if (dt == 0.0) throw std::invalid_argument("poynting_report: states share the same time");
    const double psi_prev = functional(energy_density(s_prev.D, s_prev.B, m), region);
    double flux = 0.0;
    if (!region.whole) {
        const FormField e_bar = 0.5 * (s_prev.e + s_next.e);
        const FormField h_bar = 0.5 * (s_prev.h + s_next.h);
        flux = functional(poynting_divergence(e_bar, h_bar), region);
    }
    r.poynting_balance_residual = (r.psi_total - psi_prev) / dt + flux;
    return r;
}

ScenarioResult run_scenario(const MaxwellState& initial, const MediumProfile& m, const SchemeConfig& cfg,
                            const ScenarioSinks& sinks) {
    cfg.validate(m);
    require_state_on(initial, m);
    if (!initial.finite()) throw NonFiniteError("initial state is not finite", 0);

    ScenarioResult out;
    const auto emit = [&](const DiagnosticsReport& r) {
        out.series.push_back(r);
        if (sinks.on_report) sinks.on_report(r);
    };
    const auto snapshot = [&](const MaxwellState& s, long n) {
        if (sinks.on_snapshot && sinks.snapshot_stride > 0 && n % sinks.snapshot_stride == 0) sinks.on_snapshot(s, n);
    };

    MaxwellState cur = initial;
    emit(diagnose(cur, m, cfg.orientation, cfg.kappa));
    snapshot(cur, 0);
    for (long n = 1; n <= cfg.steps; ++n) {
        MaxwellState next = step(cur, m, cfg);
        if (!next.finite()) throw NonFiniteError("non-finite field value at step " + std::to_string(n), n);
        if (n % cfg.cadence == 0) emit(poynting_report(cur, next, m, Region::all(), cfg.orientation, cfg.kappa));
        snapshot(next, n);
        cur = std::move(next);
    }
    out.final_state = std::move(cur);
    return out;
}

void evolve_potential(const FormField& A0, const FormField& Adot0, const MediumProfile& m, const SchemeConfig& cfg,
                      const std::function<void(const PotentialFrame&)>& observer) {
    cfg.validate(m);
    if (A0.degree() != 1 || A0.grid() != Grid::Primal || !A0.same_shape(Adot0)) {
        throw DegreeError("evolve_potential: A and its rate must be primal 1-forms");
    }
    if (A0.mesh() != m.mesh()) throw MeshMismatch("evolve_potential: potential and medium use different meshes");
    const double dt = cfg.dt;
    // (1/eps) star d((1/mu) star B) for B = dA.
    const auto stiffness = [&](const FormField& dA) {
        return electric_intensity(exterior_derivative(magnetic_intensity(dA, m)), m);
    };

    FormField A_minus = A0 - (0.5 * dt) * Adot0;
    FormField A_plus = A0 + (0.5 * dt) * Adot0;
    FormField dA_minus = exterior_derivative(A_minus);
    for (long n = 0;; ++n) {
        const FormField dA_plus = exterior_derivative(A_plus);
        PotentialFrame f;
        f.step = n;
        f.time = n * dt;
        f.e = (-1.0 / dt) * (A_plus - A_minus);
        f.B = 0.5 * (dA_plus + dA_minus);
        observer(f);
        if (n >= cfg.steps) break;
        FormField next = 2.0 * A_plus - A_minus;
        next -= (dt * dt) * stiffness(dA_plus);
        A_minus = std::move(A_plus);
        A_plus = std::move(next);
        dA_minus = dA_plus;
    }
}

std::vector<PotentialFrame> evolve_potential(const FormField& A0, const FormField& Adot0, const MediumProfile& m,
                                             const SchemeConfig& cfg, long stride) {
    if (stride < 1) throw std::invalid_argument("evolve_potential: stride must be at least 1");
    std::vector<PotentialFrame> frames;
    evolve_potential(A0, Adot0, m, cfg, [&](const PotentialFrame& f) {
        if (f.step % stride == 0 || f.step == cfg.steps) frames.push_back(f);
    });
    return frames;
}

double plane_wave_frequency(const MediumProfile& m, const PlaneWave& w, double dt) {
    const double k = 2.0 * std::numbers::pi / w.wavelength;
    const double spacing = m.mesh().spacing();
    const double ks = 2.0 / spacing * std::sin(0.5 * k * spacing);
    const double eps = m.uniform_medium() ? m.eps_cell().front() : mean(m.eps_cell());
    const double mu = m.uniform_medium() ? m.mu_cell().front() : mean(m.mu_cell());
    const double omega = ks / std::sqrt(eps * mu);
    if (dt == 0.0) return omega;
    const double adt = std::abs(dt);
    const double arg = 0.5 * adt * omega;
    if (arg >= 1.0) throw CflError("plane wave: time step beyond the stability limit of the mode");
    return 2.0 * std::asin(arg) / adt;
}

MaxwellState plane_wave_state(const MediumProfile& m, const PlaneWave& w, double dt) {
    const int a = w.axis, b = w.polarization;
    if (a < 0 || a > 2 || b < 0 || b > 2 || a == b) {
        throw std::invalid_argument("plane wave: axis and polarization must be distinct axes in 0..2");
    }
    if (!(w.wavelength > 0.0) || !std::isfinite(w.amplitude)) {
        throw std::invalid_argument("plane wave: wavelength must be positive and amplitude finite");
    }
    const Mesh& mesh = m.mesh();
    const double periods = mesh.length(a) / w.wavelength;
    if (std::abs(periods - std::round(periods)) > 1e-9 * periods || std::round(periods) < 1.0) {
        throw std::invalid_argument("plane wave: wavelength must divide the domain length along the axis");
    }
    const int c = 3 - a - b;
    const double sign = levi_civita(a, b, c);
    const double k = 2.0 * std::numbers::pi / w.wavelength;
    const double E = w.amplitude;

    double H = 0.0;
    if (m.uniform_medium()) {
        const double eps = m.eps_cell().front();
        const double spacing = mesh.spacing();
        const double ks = 2.0 / spacing * std::sin(0.5 * k * spacing);
        if (dt == 0.0) {
            H = E * std::sqrt(eps / m.mu_cell().front());
        } else {
            const double adt = std::abs(dt);
            const double theta = plane_wave_frequency(m, w, dt) * adt;
            H = eps * E * std::sin(theta) / (adt * ks);
        }
    } else {
        H = E * std::sqrt(mean(m.eps_cell()) / mean(m.mu_cell()));
    }

    const FormField e = FormField::sample(mesh, 1, Grid::Primal, [&](int comp, const std::array<double, 3>& r) {
        return comp == b ? E * std::cos(k * r[static_cast<size_t>(a)]) : 0.0;
    });
    const FormField h = FormField::sample(mesh, 1, Grid::Dual, [&](int comp, const std::array<double, 3>& r) {
        return comp == c ? sign * H * std::cos(k * r[static_cast<size_t>(a)]) : 0.0;
    });
    return state_from_intensity(e, h, m);
}

MaxwellState gaussian_pulse_state(const MediumProfile& m, const std::array<double, 3>& centre, double width,
                                  double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian pulse: width must be positive");
    const Mesh& mesh = m.mesh();
    const FormField A = FormField::sample(mesh, 1, Grid::Primal, [&](int comp, const std::array<double, 3>& r) {
        if (comp != 2) return 0.0;
        double r2 = 0.0;
        for (int ax = 0; ax < 3; ++ax) {
            const auto s = static_cast<size_t>(ax);
            const double len = mesh.length(ax);
            double d = std::fmod(r[s] - centre[s], len);
            if (d > 0.5 * len) d -= len;
            if (d < -0.5 * len) d += len;
            r2 += d * d;
        }
        return amplitude * std::exp(-r2 / (2.0 * width * width));
    });
    return state_from_induction(FormField(mesh, 2, Grid::Dual), exterior_derivative(A), m);
}

}  // namespace cmx
