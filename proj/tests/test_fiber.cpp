#include "cmx/fiber.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cmx;
using cmx::test::max_abs_diff;
using cmx::test::Rng;

namespace {

const Mesh kMesh({4, 4, 4}, 1.0);

bool all_equal(const Array& a, double v, double tol = 0.0) {
    for (double x : a)
        if (std::abs(x - v) > tol) return false;
    return true;
}

FormField dual2(std::vector<double> v) { return FormField::constant(kMesh, 2, Grid::Dual, v); }
FormField primal2(std::vector<double> v) { return FormField::constant(kMesh, 2, Grid::Primal, v); }
FormField primal1(std::vector<double> v) { return FormField::constant(kMesh, 1, Grid::Primal, v); }
FormField dual1(std::vector<double> v) { return FormField::constant(kMesh, 1, Grid::Dual, v); }

MaxwellState random_on_shell(Rng& rng, const MediumProfile& m) {
    return state_from_induction(rng.form(m.mesh(), 2, Grid::Dual), rng.form(m.mesh(), 2, Grid::Primal), m);
}

}  // namespace

TEST_SUITE("fiber") {

TEST_CASE("medium profiles") {
    CHECK_THROWS_AS(MediumProfile::uniform(kMesh, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MediumProfile::uniform(kMesh, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(MediumProfile(kMesh, Array(3, 1.0), Array(64, 1.0)), std::invalid_argument);

    const MediumProfile u = MediumProfile::uniform(kMesh, 2.0, 3.0);
    CHECK(u.uniform_medium());
    for (int a = 0; a < 3; ++a) {
        CHECK(all_equal(u.eps_edge(a), 2.0));
        CHECK(all_equal(u.mu_face(a), 3.0));
    }

    const Mesh m({4, 4, 16}, 0.25);
    const MediumProfile s = MediumProfile::sech_slab(m, 3.0, 0.5, 1.0);
    CHECK_FALSE(s.uniform_medium());
    for (size_t i = 0; i < m.size(); ++i) {
        const auto ijk = m.unravel(i);
        const double z = (ijk[2] + 0.5) * m.spacing() - 0.5 * m.length(2);
        const double sech = 1.0 / std::cosh(z / 0.5);
        CHECK(s.eps_cell()[i] == doctest::Approx(3.0 * sech * sech).epsilon(1e-14));
    }
    CHECK(s.eps_min() > 0.0);
}

TEST_CASE("energy and coenergy densities") {
    CHECK(all_equal(energy_density(dual2({1, 0, 0}), primal2({0, 0, 0}), MediumProfile::vacuum(kMesh))[0], 0.5));
    CHECK(all_equal(energy_density(dual2({2, 0, 0}), primal2({0, 0, 0}), MediumProfile::uniform(kMesh, 2, 1))[0], 1.0));
    CHECK(all_equal(energy_density(dual2({0, 0, 0}), primal2({0, 0, 0}), MediumProfile::vacuum(kMesh))[0], 0.0));

    CHECK(all_equal(coenergy_density(primal1({1, 0, 0}), dual1({0, 0, 0}), MediumProfile::uniform(kMesh, 2, 1))[0], 1.0));
    CHECK(all_equal(coenergy_density(primal1({0, 0, 0}), dual1({0, 1, 0}), MediumProfile::uniform(kMesh, 1, 3))[0], 1.5));
    CHECK(all_equal(coenergy_density(primal1({0, 0, 0}), dual1({0, 0, 0}), MediumProfile::vacuum(kMesh))[0], 0.0));
}

TEST_CASE("property: densities are nonnegative and vanish only at zero") {
    Rng rng(11);
    const Mesh m({6, 6, 6}, 0.5);
    const MediumProfile med = MediumProfile::sech_slab(m, 2.0, 1.0, 1.5);
    for (int t = 0; t < 20; ++t) {
        const FormField psi = energy_density(rng.form(m, 2, Grid::Dual), rng.form(m, 2, Grid::Primal), med);
        for (double v : psi[0]) CHECK(v > 0.0);
    }
}

TEST_CASE("functional integrates a density") {
    const Mesh m({8, 8, 8}, 1.0);
    CHECK(functional(FormField::constant(m, 0, Grid::Primal, {0.5})) == 256.0);
    CHECK(functional(FormField(m, 0)) == 0.0);
}

TEST_CASE("constitutive maps") {
    const MediumProfile m2 = MediumProfile::uniform(kMesh, 2.0, 3.0);
    SUBCASE("e from D") {
        const Intensities i = intensity_from_induction(dual2({2, 0, 0}), primal2({0, 0, 0}), m2);
        CHECK(all_equal(i.e[0], 1.0));
        CHECK(all_equal(i.e[1], 0.0));
    }
    SUBCASE("h equals star B in vacuum") {
        Rng rng(12);
        const FormField B = rng.form(kMesh, 2, Grid::Primal);
        const FormField h = magnetic_intensity(B, MediumProfile::vacuum(kMesh));
        CHECK(h == hodge_star(B));
    }
    SUBCASE("D and B from e and h") {
        const Inductions ind = induction_from_intensity(primal1({1, 0, 0}), dual1({0, 0, 1}), m2);
        CHECK(all_equal(ind.D[0], 2.0));
        CHECK(all_equal(ind.B[2], 3.0));
        CHECK(all_equal(ind.B[0], 0.0));
    }
    SUBCASE("property: round trips on an inhomogeneous medium") {
        Rng rng(13);
        const Mesh m({5, 5, 8}, 0.5);
        const MediumProfile med = MediumProfile::sech_slab(m, 4.0, 0.7, 2.0);
        for (int t = 0; t < 10; ++t) {
            const FormField D = rng.form(m, 2, Grid::Dual), B = rng.form(m, 2, Grid::Primal);
            const Intensities i = intensity_from_induction(D, B, med);
            const Inductions back = induction_from_intensity(i.e, i.h, med);
            CHECK(max_abs_diff(back.D, D) <= 1e-14);
            CHECK(max_abs_diff(back.B, B) <= 1e-14);
        }
    }
}

TEST_CASE("phase residuals") {
    Rng rng(14);
    const Mesh m({6, 5, 8}, 0.5);
    const MediumProfile med = MediumProfile::sech_slab(m, 3.0, 0.8, 1.5);
    MaxwellState s = random_on_shell(rng, med);
    CHECK(phase_residuals(s, med, Orientation::DB).max_abs() <= 1e-14);
    CHECK(phase_residuals(s, med, Orientation::EH).max_abs() <= 1e-14);

    const size_t edge = m.index(2, 3, 4);
    s.e[1][edge] += 1.0;
    const PhaseResiduals r = phase_residuals(s, med, Orientation::DB);
    CHECK(r.delta_De[1][edge] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(r.delta_De[0][edge]) <= 1e-14);
}

TEST_CASE("property: on-shell energy identity") {
    Rng rng(15);
    const Mesh m({6, 6, 6}, 0.4);
    const MediumProfile med = MediumProfile::sech_slab(m, 2.5, 0.6, 1.2);
    for (int t = 0; t < 10; ++t) {
        const MaxwellState s = random_on_shell(rng, med);
        const FormField lhs = energy_density(s.D, s.B, med);
        const FormField rhs = pairing_density(s.D, s.B, s.e, s.h) - coenergy_density(s.e, s.h, med);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
        CHECK(max_abs_diff(s.energy, lhs) == 0.0);
    }
}

TEST_CASE("contact Hamiltonian density") {
    Rng rng(16);
    const Mesh m({6, 6, 6}, 0.5);
    const MediumProfile med = MediumProfile::sech_slab(m, 2.0, 0.9, 1.3);
    MaxwellState s = random_on_shell(rng, med);
    for (Orientation o : {Orientation::DB, Orientation::EH})
        CHECK(contact_hamiltonian_density(s, med, o).max_abs() <= 1e-12 * std::max(1.0, s.energy.max_abs()));

    SUBCASE("energy perturbation enters through the gauge term") {
        const size_t node = m.index(1, 2, 3);
        const double delta = 0.25, kappa = 0.7;
        s.energy[0][node] += delta;
        FormField h = contact_hamiltonian_density(s, med, Orientation::DB, kappa);
        CHECK(h[0][node] == doctest::Approx(-kappa * delta).epsilon(1e-12));
        h[0][node] = 0.0;
        CHECK(h.max_abs() <= 1e-12);
    }
    SUBCASE("uniform fields with a wrong intensity") {
        const MediumProfile vac = MediumProfile::vacuum(kMesh);
        MaxwellState u = state_from_induction(dual2({1, 2, 3}), primal2({-1, 0.5, 2}), vac);
        u.e[0] = Array(kMesh.size(), 7.0);
        CHECK(contact_hamiltonian_density(u, vac, Orientation::DB).max_abs() == 0.0);
    }
    CHECK_THROWS_AS(contact_hamiltonian_density(s, med, Orientation::DB, 0.0), std::invalid_argument);
}

TEST_CASE("property: the Legendre transform of psi_EM is phi_EM") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const double eps = rng.uniform(0.2, 5.0), mu = rng.uniform(0.2, 5.0);
        const Vec p = rng.vec(6, 2.0);
        const LegendreResult r = legendre_transform(psi_em_generator(eps, mu), p);
        const double exact = phi_em(p, eps, mu);
        CHECK(std::abs(r.value - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
        CHECK((r.argmax - phi_em_gradient(p, eps, mu)).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + p.norm()));

        Vec d(6);
        d << 1 / eps, 1 / eps, 1 / eps, 1 / mu, 1 / mu, 1 / mu;
        const Mat H = psi_em_generator(eps, mu).hessian(rng.vec(6));
        CHECK((H - Mat(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
        CHECK(Eigen::LLT<Mat>(H).info() == Eigen::Success);
    }
}

TEST_CASE("property: functional derivative of the energy is (1/eps) star D") {
    Rng rng(18);
    const Mesh m({6, 5, 7}, 0.5);
    const MediumProfile med = MediumProfile::sech_slab(m, 2.0, 0.8, 1.0);
    for (int t = 0; t < 5; ++t) {
        const FormField D = rng.form(m, 2, Grid::Dual), B = rng.form(m, 2, Grid::Primal);
        const FormField dD = rng.form(m, 2, Grid::Dual);
        const auto energy = [&](double eta) { return functional(energy_density(D + eta * dD, B, med)); };
        const auto central = [&](double eta) { return (energy(eta) - energy(-eta)) / (2 * eta); };
        const double eta = 1e-3;
        const double slope = (4.0 * central(eta / 2) - central(eta)) / 3.0;
        const double exact = integrate(wedge(electric_intensity(D, med), dD, Grid::Dual));
        CHECK(std::abs(slope - exact) <= 1e-8 * std::abs(exact));
    }
}

TEST_CASE("state validation") {
    MaxwellState s = MaxwellState::zero(kMesh);
    CHECK_NOTHROW(s.validate());
    CHECK(s.finite());
    s.e = FormField(kMesh, 1, Grid::Dual);
    CHECK_THROWS(s.validate());
    s = MaxwellState::zero(kMesh);
    s.B = FormField(Mesh({4, 4, 4}, 0.5), 2);
    CHECK_THROWS(s.validate());
}

}  // TEST_SUITE
