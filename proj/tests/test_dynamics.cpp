#include "cmx/dynamics.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace cmx;
using cmx::test::max_abs_diff;
using cmx::test::Rng;

namespace {

double state_gap(const MaxwellState& a, const MaxwellState& b) {
    return std::max({max_abs_diff(a.D, b.D), max_abs_diff(a.B, b.B), max_abs_diff(a.e, b.e), max_abs_diff(a.h, b.h),
                     max_abs_diff(a.energy, b.energy)});
}

double state_scale(const MaxwellState& s) {
    return std::max({s.D.max_abs(), s.B.max_abs(), s.e.max_abs(), s.h.max_abs(), s.energy.max_abs()});
}

/// Divergence-free random inductions: D = d(dual 1-form), B = d(primal 1-form).
MaxwellState random_solenoidal(Rng& rng, const MediumProfile& m) {
    const FormField D = exterior_derivative(rng.form(m.mesh(), 1, Grid::Dual));
    const FormField B = exterior_derivative(rng.form(m.mesh(), 1, Grid::Primal));
    return state_from_induction(D, B, m);
}

MaxwellState uniform_state(const MediumProfile& m) {
    return state_from_induction(FormField::constant(m.mesh(), 2, Grid::Dual, {1.0, -2.0, 0.5}),
                                FormField::constant(m.mesh(), 2, Grid::Primal, {0.3, 0.0, 4.0}), m);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("scheme configuration and the CFL bound") {
    const Mesh mesh({8, 8, 8}, 0.5);
    const MediumProfile m = MediumProfile::uniform(mesh, 4.0, 1.0);
    CHECK(stable_dt(m) == doctest::Approx(0.5 * 2.0 / std::sqrt(3.0)));

    const SchemeConfig c = SchemeConfig::from_cfl(m, 0.5, 10);
    CHECK(c.cfl(m) == doctest::Approx(0.5));
    CHECK_NOTHROW(c.validate(m));

    SchemeConfig bad = c;
    bad.dt = stable_dt(m);
    CHECK_THROWS_AS(bad.validate(m), CflError);
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(m), CflError);
    bad.dt = -c.dt;
    CHECK_NOTHROW(bad.validate(m));
    bad.dt = c.dt;
    bad.cadence = 0;
    CHECK_THROWS_AS(bad.validate(m), std::invalid_argument);
}

TEST_CASE("zero and uniform fields are stationary") {
    const Mesh mesh({6, 6, 6}, 1.0);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 2.0, 1.5, 1.0);
    for (Orientation o : {Orientation::DB, Orientation::EH}) {
        const SchemeConfig c = SchemeConfig::from_cfl(m, 0.5, 1, o);
        const MaxwellState z = MaxwellState::zero(mesh);
        const MaxwellState z1 = step(z, m, c);
        CHECK(state_gap(z, z1) == 0.0);
        CHECK(z1.time == c.dt);

        const MaxwellState u = uniform_state(MediumProfile::vacuum(mesh));
        const MaxwellState u1 = step(u, MediumProfile::vacuum(mesh), c);
        CHECK(state_gap(u, u1) == 0.0);
    }
}

TEST_CASE("DB and EH steps agree from identical on-shell data") {
    Rng rng(21);
    const Mesh mesh({8, 6, 10}, 0.5);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 3.0, 1.0, 1.4);
    const MaxwellState s = random_solenoidal(rng, m);
    const MaxwellState a = step_induction(s, m, SchemeConfig::from_cfl(m, 0.6, 1, Orientation::DB));
    const MaxwellState b = step_intensity(s, m, SchemeConfig::from_cfl(m, 0.6, 1, Orientation::EH));
    CHECK(state_gap(a, b) <= 1e-12 * state_scale(a));
}

TEST_CASE("the discrete plane-wave mode travels at its discrete frequency") {
    const Mesh mesh({32, 4, 4}, 1.0 / 32);
    const MediumProfile m = MediumProfile::uniform(mesh, 2.0, 1.5);
    const PlaneWave w{0, 1, 1.0, 1.0};
    const SchemeConfig c = SchemeConfig::from_cfl(m, 0.7, 200);
    const double omega = plane_wave_frequency(m, w, c.dt);
    const double k = 2.0 * std::numbers::pi;

    MaxwellState s = plane_wave_state(m, w, c.dt);
    const double psi0 = functional(energy_density(s.D, s.B, m));
    for (long n = 0; n < c.steps; ++n) s = step(s, m, c);

    double worst = 0.0;
    for (size_t i = 0; i < mesh.size(); ++i) {
        const auto ijk = mesh.unravel(i);
        const auto x = mesh.position(s.e.location(1), ijk[0], ijk[1], ijk[2]);
        worst = std::max(worst, std::abs(s.e[1][i] - std::cos(k * x[0] - omega * s.time)));
    }
    CHECK(worst <= 1e-11);
    CHECK(functional(energy_density(s.D, s.B, m)) == doctest::Approx(psi0).epsilon(1e-13));
    CHECK(std::abs(omega - k / std::sqrt(3.0)) < 0.05 * omega);
}

TEST_CASE("property: constraints, on-shell residuals and the Hamiltonian functional along a slab run") {
    Rng rng(22);
    const Mesh mesh({6, 6, 16}, 0.25);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 1.0, 1.0, 1.0);
    for (Orientation o : {Orientation::DB, Orientation::EH}) {
        SchemeConfig c = SchemeConfig::from_cfl(m, 0.5, 200, o);
        c.cadence = 10;
        c.kappa = 0.8;
        const MaxwellState s0 = random_solenoidal(rng, m);
        const double field_scale = state_scale(s0);
        const double energy_total = functional(s0.energy);
        ScenarioSinks sinks;
        sinks.on_report = [&](const DiagnosticsReport& r) {
            CHECK(r.div_D_max <= 1e-12 * field_scale / mesh.spacing());
            CHECK(r.div_B_max <= 1e-12 * field_scale / mesh.spacing());
            CHECK(r.constitutive_residual_max <= 1e-12 * field_scale);
            // On-shell only the gauge term survives, and the energy coordinate integrates to a constant.
            CHECK(std::abs(r.hamiltonian_functional - c.kappa * (r.psi_total - energy_total)) <=
                  1e-10 * r.psi_total);
        };
        const ScenarioResult res = run_scenario(s0, m, c, sinks);
        CHECK(res.series.size() == 21);
        CHECK(res.final_state.time == doctest::Approx(200 * c.dt));
    }
}

TEST_CASE("property: the integrated energy coordinate is conserved exactly") {
    Rng rng(23);
    const Mesh mesh({8, 8, 8}, 0.5);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 2.0, 1.0, 1.0);
    MaxwellState s = random_solenoidal(rng, m);
    const double total0 = functional(s.energy);
    const SchemeConfig c = SchemeConfig::from_cfl(m, 0.5, 100);
    for (long n = 0; n < c.steps; ++n) s = step(s, m, c);
    CHECK(std::abs(functional(s.energy) - total0) <= 1e-12 * std::abs(total0));
}

TEST_CASE("property: reversing the step retraces the run") {
    Rng rng(24);
    const Mesh mesh({8, 6, 10}, 0.5);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 2.0, 1.0, 1.2);
    for (Orientation o : {Orientation::DB, Orientation::EH}) {
        const MaxwellState s0 = random_solenoidal(rng, m);
        SchemeConfig fwd = SchemeConfig::from_cfl(m, 0.5, 100, o), back = fwd;
        back.dt = -fwd.dt;
        MaxwellState s = s0;
        for (long n = 0; n < fwd.steps; ++n) s = step(s, m, fwd);
        for (long n = 0; n < fwd.steps; ++n) s = step(s, m, back);
        CHECK(state_gap(s, s0) <= 1e-10 * state_scale(s0));
        CHECK(std::abs(s.time) <= 1e-12);
    }
}

TEST_CASE("Poynting report") {
    const Mesh mesh({6, 6, 6}, 1.0);
    const MediumProfile vac = MediumProfile::vacuum(mesh);
    const SchemeConfig c = SchemeConfig::from_cfl(vac, 0.5, 1);

    SUBCASE("static crossed fields") {
        const MaxwellState s = state_from_intensity(FormField::constant(mesh, 1, Grid::Primal, {0, 2, 0}),
                                                    FormField::constant(mesh, 1, Grid::Dual, {0, 0, 3}), vac);
        const MaxwellState s1 = step(s, vac, c);
        const auto box = Region::box({1, 1, 1}, {4, 5, 3});
        CHECK(std::abs(poynting_report(s, s1, vac, box).poynting_balance_residual) <= 1e-13);
        CHECK(std::abs(poynting_report(s, s1, vac).poynting_balance_residual) <= 1e-13);
    }
    SUBCASE("zero fields") {
        const MaxwellState z = MaxwellState::zero(mesh);
        const DiagnosticsReport r = poynting_report(z, step(z, vac, c), vac);
        CHECK(r.psi_total == 0.0);
        CHECK(r.phi_total == 0.0);
        CHECK(r.div_D_max == 0.0);
        CHECK(r.poynting_balance_residual == 0.0);
        CHECK(r.hamiltonian_functional == 0.0);
    }
    SUBCASE("property: on the whole domain the residual is the drift rate") {
        Rng rng(25);
        const MaxwellState s = random_solenoidal(rng, vac);
        const MaxwellState s1 = step(s, vac, c);
        const double psi0 = functional(energy_density(s.D, s.B, vac));
        const double psi1 = functional(energy_density(s1.D, s1.B, vac));
        const double r = poynting_report(s, s1, vac).poynting_balance_residual;
        CHECK(std::abs(r - (psi1 - psi0) / c.dt) <= 1e-12 * psi0 / c.dt);
    }
    SUBCASE("discrete mode balances on the whole domain") {
        const Mesh pm({16, 4, 4}, 1.0 / 16);
        const MediumProfile pvac = MediumProfile::vacuum(pm);
        const SchemeConfig pc = SchemeConfig::from_cfl(pvac, 0.5, 1);
        const MaxwellState s = plane_wave_state(pvac, PlaneWave{0, 2, 1.0, 1.0}, pc.dt);
        const DiagnosticsReport r = poynting_report(s, step(s, pvac, pc), pvac);
        CHECK(std::abs(r.poynting_balance_residual) <= 1e-12 * r.psi_total);
    }
}

TEST_CASE("run_scenario bookkeeping") {
    const Mesh mesh({4, 4, 4}, 1.0);
    const MediumProfile vac = MediumProfile::vacuum(mesh);
    const MaxwellState s = uniform_state(vac);
    SchemeConfig c = SchemeConfig::from_cfl(vac, 0.5, 0);
    const ScenarioResult r = run_scenario(s, vac, c);
    CHECK(r.series.size() == 1);
    CHECK(state_gap(r.final_state, s) == 0.0);

    c.steps = 7;
    c.cadence = 3;
    long snapshots = 0;
    ScenarioSinks sinks;
    sinks.snapshot_stride = 2;
    sinks.on_snapshot = [&](const MaxwellState&, long) { ++snapshots; };
    const ScenarioResult r7 = run_scenario(s, vac, c, sinks);
    CHECK(r7.series.size() == 3);
    CHECK(snapshots >= 4);

    MaxwellState bad = s;
    bad.D[0][3] = std::numeric_limits<double>::quiet_NaN();
    long step_seen = -1;
    try {
        run_scenario(bad, vac, c);
    } catch (const NonFiniteError& e) {
        step_seen = e.step();
    }
    CHECK(step_seen == 0);
}

TEST_CASE("potential form") {
    const Mesh mesh({8, 8, 8}, 0.5);
    const MediumProfile m = MediumProfile::sech_slab(mesh, 2.0, 1.0, 1.0);
    const SchemeConfig c = SchemeConfig::from_cfl(m, 0.5, 30);

    SUBCASE("a constant potential is inert") {
        const FormField A = FormField::constant(mesh, 1, Grid::Primal, {1.0, -2.0, 3.0});
        for (const auto& f : evolve_potential(A, FormField(mesh, 1), m, c, 5)) {
            CHECK(f.e.max_abs() == 0.0);
            CHECK(f.B.max_abs() == 0.0);
        }
    }
    SUBCASE("B = dA is closed") {
        Rng rng(26);
        long frames = 0;
        evolve_potential(rng.form(mesh, 1), rng.form(mesh, 1), m, c, [&](const PotentialFrame& f) {
            ++frames;
            CHECK(exterior_derivative(f.B).max_abs() <= 1e-12 / (mesh.spacing() * mesh.spacing()));
        });
        CHECK(frames == c.steps + 1);
    }
}

TEST_CASE("Gaussian pulse initial data") {
    const Mesh mesh({12, 12, 12}, 0.5);
    const MediumProfile m = MediumProfile::vacuum(mesh);
    const MaxwellState s = gaussian_pulse_state(m, {3.0, 3.0, 3.0}, 0.8, 2.0);
    CHECK(s.e.max_abs() == 0.0);
    CHECK(s.D.max_abs() == 0.0);
    CHECK(s.B.max_abs() > 0.0);
    CHECK(exterior_derivative(s.B).max_abs() <= 1e-12 * s.B.max_abs() / mesh.spacing());
    CHECK(phase_residuals(s, m, Orientation::DB).max_abs() == 0.0);
    CHECK_THROWS_AS(gaussian_pulse_state(m, {0, 0, 0}, 0.0, 1.0), std::invalid_argument);
}

}  // TEST_SUITE
