#include "cmx/fiber.hpp"
#include "cmx/infogeom.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace cmx;
using cmx::test::Rng;

namespace {

Vec e6(int i) { return Vec::Unit(6, i); }

Generator monomial(int power) {
    Generator g;
    g.n = 1;
    g.strictly_convex = power % 2 == 0;
    g.value = [power](const Vec& x) { return std::pow(x[0], power) / std::tgamma(power + 1.0); };
    g.gradient = [power](const Vec& x) { return Vec::Constant(1, std::pow(x[0], power - 1) / std::tgamma(power)); };
    g.hessian = [power](const Vec& x) {
        return Mat::Constant(1, 1, std::pow(x[0], power - 2) / std::tgamma(power - 1.0));
    };
    return g;
}

}  // namespace

TEST_SUITE("infogeom") {

TEST_CASE("fiber metric and its inverse") {
    Vec d(6);
    d << 0.5, 0.5, 0.5, 1.0 / 3, 1.0 / 3, 1.0 / 3;
    CHECK((fiber_metric(2, 3) - Mat(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK(fiber_metric(1, 1) == Mat::Identity(6, 6));

    d << 2, 2, 2, 3, 3, 3;
    CHECK((contravariant_metric(2, 3) - Mat(d.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    CHECK(contravariant_metric(1, 1) == Mat::Identity(6, 6));

    CHECK_THROWS_AS(fiber_metric(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(contravariant_metric(1, -2), std::invalid_argument);

    Rng rng(31);
    for (int t = 0; t < 1000; ++t) {
        const double eps = rng.uniform(1e-2, 1e2), mu = rng.uniform(1e-2, 1e2);
        CHECK((fiber_metric(eps, mu) * contravariant_metric(eps, mu) - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() <=
              1e-14);
    }
}

TEST_CASE("dual coordinates pair to the identity") {
    // dx/dp along the submanifold is the contravariant metric.
    Rng rng(32);
    const double eps = 2.5, mu = 0.7;
    const Vec p = rng.vec(6);
    const double s = 1e-5;
    Mat J(6, 6);
    for (int a = 0; a < 6; ++a)
        J.col(a) = (phi_em_gradient(p + s * e6(a), eps, mu) - phi_em_gradient(p - s * e6(a), eps, mu)) / (2 * s);
    CHECK((fiber_metric(eps, mu) * J - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("alpha-connections") {
    SUBCASE("psi_EM is flat for every alpha") {
        Rng rng(33);
        for (double alpha : {-1.0, -0.3, 0.0, 0.5, 1.0})
            CHECK(alpha_connection(psi_em_generator(2.0, 3.0), alpha, rng.vec(6)).max_abs() == 0.0);
    }
    SUBCASE("cubic monomial has constant third derivative") {
        for (double x : {-1.0, 0.0, 2.0}) {
            const auto G = alpha_connection(monomial(3), -1.0, Vec::Constant(1, x));
            CHECK(G(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
    SUBCASE("quartic monomial gives a linear coefficient") {
        for (double x : {-1.0, 0.5, 2.0}) {
            const auto G = alpha_connection(monomial(4), -1.0, Vec::Constant(1, x));
            CHECK(G(0, 0, 0) == doctest::Approx(x).epsilon(1e-6));
            CHECK(alpha_connection(monomial(4), 1.0, Vec::Constant(1, x)).max_abs() == 0.0);
        }
    }
}

TEST_CASE("property: the alpha and -alpha connections rebuild the metric derivative") {
    Rng rng(34);
    for (int t = 0; t < 20; ++t) {
        const int n = 2;
        const Mat A = rng.spd(n, 1.0, 2.0);
        // Symmetric cubic coefficients c_abc.
        std::vector<double> c(8);
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b)
                for (int d = b; d < 2; ++d) {
                    const double v = rng.normal();
                    const int idx[3] = {a, b, d};
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            for (int k = 0; k < 3; ++k)
                                if (i != j && j != k && i != k) c[static_cast<size_t>((idx[i] * 2 + idx[j]) * 2 + idx[k])] = v;
                }
        const auto C = [c](int a, int b, int d) { return c[static_cast<size_t>((a * 2 + b) * 2 + d)]; };
        Generator g;
        g.n = n;
        g.value = [=](const Vec& x) {
            double cubic = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int d = 0; d < 2; ++d) cubic += C(a, b, d) * x[a] * x[b] * x[d];
            return 0.5 * x.dot(A * x) + cubic / 6.0;
        };
        g.gradient = [=](const Vec& x) -> Vec {
            Vec r = A * x;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int d = 0; d < 2; ++d) r[a] += 0.5 * C(a, b, d) * x[b] * x[d];
            return r;
        };
        g.hessian = [=](const Vec& x) -> Mat {
            Mat H = A;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int d = 0; d < 2; ++d) H(a, b) += C(a, b, d) * x[d];
            return H;
        };

        const Vec x = rng.vec(n);
        const double alpha = rng.uniform(-1.0, 1.0);
        const auto Gp = alpha_connection(g, alpha, x), Gm = alpha_connection(g, -alpha, x);
        const double s = 1e-4;
        for (int a = 0; a < n; ++a) {
            const Mat dg = (g.hessian(x + s * Vec::Unit(n, a)) - g.hessian(x - s * Vec::Unit(n, a))) / (2 * s);
            for (int b = 0; b < n; ++b)
                for (int d = 0; d < n; ++d) CHECK(std::abs(Gp(a, b, d) + Gm(a, d, b) - dg(b, d)) <= 1e-6);
        }
    }
}

TEST_CASE("canonical divergence") {
    const FiberPoint o = FiberPoint::from_induction(Vec::Zero(6), 1, 1);
    const FiberPoint x1 = FiberPoint::from_induction(e6(0), 1, 1);
    CHECK(canonical_divergence(x1, x1) == 0.0);
    CHECK(canonical_divergence(x1, o) == 0.5);
    CHECK(x1.constitutive_residual() == 0.0);
    CHECK_THROWS_AS(canonical_divergence(x1, FiberPoint::from_induction(e6(0), 2, 1)), MediumMismatch);

    Rng rng(35);
    for (int t = 0; t < 200; ++t) {
        const double eps = rng.uniform(0.1, 10), mu = rng.uniform(0.1, 10);
        const FiberPoint a = FiberPoint::from_induction(rng.vec(6), eps, mu);
        const FiberPoint b = FiberPoint::from_intensity(rng.vec(6), eps, mu);
        const Vec dx = a.x - b.x;
        const double closed = 0.5 * dx.dot(fiber_metric(eps, mu) * dx);
        const double d = canonical_divergence(a, b);
        CHECK(std::abs(d - closed) <= 1e-12 * std::max(1.0, closed));
        CHECK(d > 1e-16);
        CHECK(std::abs(canonical_divergence(a, a)) <= 1e-14 * (1.0 + psi_em(a.x, eps, mu)));
    }
}

TEST_CASE("geodesics") {
    Rng rng(36);
    const FiberPoint a = FiberPoint::from_induction(rng.vec(6), 1, 1), b = FiberPoint::from_induction(rng.vec(6), 1, 1);
    for (Connection c : {Connection::Nabla, Connection::NablaPrime}) {
        CHECK((geodesic(c, a, b, 0.0).x - a.x).cwiseAbs().maxCoeff() == 0.0);
        CHECK((geodesic(c, a, b, 1.0).p - b.p).cwiseAbs().maxCoeff() <= 1e-15);
    }
    for (double eps : {1.0, 2.0}) {
        const FiberPoint u = FiberPoint::from_induction(rng.vec(6), eps, 1.5);
        const FiberPoint v = FiberPoint::from_induction(rng.vec(6), eps, 1.5);
        const FiberPoint m1 = geodesic(Connection::Nabla, u, v, 0.5);
        const FiberPoint m2 = geodesic(Connection::NablaPrime, u, v, 0.5);
        CHECK((m1.x - 0.5 * (u.x + v.x)).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((m1.p - m2.p).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((m1.x - m2.x).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(m1.constitutive_residual() <= 1e-15);
    }
}

TEST_CASE("Pythagorean relation") {
    SUBCASE("unit example") {
        const auto r = pythagoras_check(FiberPoint::from_induction(e6(0), 1, 1), FiberPoint::from_induction(Vec::Zero(6), 1, 1),
                                        FiberPoint::from_induction(e6(1), 1, 1));
        CHECK(r.orthogonality_defect == 0.0);
        CHECK(r.lhs == 1.0);
        CHECK(r.rhs == 1.0);
    }
    SUBCASE("coincident first pair") {
        Rng rng(37);
        const FiberPoint a = FiberPoint::from_induction(rng.vec(6), 2, 3), c = FiberPoint::from_induction(rng.vec(6), 2, 3);
        const auto r = pythagoras_check(a, a, c);
        CHECK(r.lhs == canonical_divergence(a, c));
        CHECK(r.rhs == r.lhs);
    }
    SUBCASE("property: constructed orthogonal triples") {
        Rng rng(38);
        for (int t = 0; t < 1000; ++t) {
            const double eps = rng.uniform(0.2, 5), mu = rng.uniform(0.2, 5);
            const FiberPoint mid = FiberPoint::from_induction(rng.vec(6), eps, mu);
            const Vec u = rng.vec(6);
            Vec v = rng.vec(6);
            // g(u, G^-1 v) = u . v, so project v off u.
            v -= (u.dot(v) / u.squaredNorm()) * u;
            const FiberPoint x3 = FiberPoint::from_induction(mid.x + u, eps, mu);
            const FiberPoint x1 = FiberPoint::from_intensity(mid.p + v, eps, mu);
            const auto r = pythagoras_check(x3, mid, x1);
            CHECK(std::abs(r.orthogonality_defect) <= 1e-12 * (1.0 + u.norm() * v.norm()));
            CHECK(std::abs(r.lhs - r.rhs) <= 1e-12 * (1.0 + r.lhs));
        }
    }
}

}  // TEST_SUITE
