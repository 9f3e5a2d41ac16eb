#include "cmx/infogeom.hpp"

#include "cmx/fiber.hpp"

#include <cmath>

namespace cmx {

namespace {

void require_medium(double eps, double mu) {
    if (!(eps > 0.0) || !(mu > 0.0) || !std::isfinite(eps) || !std::isfinite(mu)) {
        throw std::invalid_argument("medium parameters must be finite and positive");
    }
}

void require_same_medium(const FiberPoint& a, const FiberPoint& b) {
    if (!a.same_medium(b)) throw MediumMismatch("fiber points carry different media");
}

Mat diagonal6(double first, double second) {
    Vec d(6);
    d << first, first, first, second, second, second;
    return d.asDiagonal();
}

}  // namespace

Mat fiber_metric(double eps, double mu) {
    require_medium(eps, mu);
    return diagonal6(1.0 / eps, 1.0 / mu);
}

Mat contravariant_metric(double eps, double mu) {
    require_medium(eps, mu);
    return diagonal6(eps, mu);
}

FiberPoint FiberPoint::from_induction(const Vec& x, double eps, double mu) {
    require_medium(eps, mu);
    return FiberPoint{x, psi_em_gradient(x, eps, mu), eps, mu};
}

FiberPoint FiberPoint::from_intensity(const Vec& p, double eps, double mu) {
    require_medium(eps, mu);
    return FiberPoint{phi_em_gradient(p, eps, mu), p, eps, mu};
}

double FiberPoint::constitutive_residual() const {
    return (p - psi_em_gradient(x, eps, mu)).cwiseAbs().maxCoeff();
}

double ConnectionCoefficients::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

ConnectionCoefficients alpha_connection(const Generator& gen, double alpha, const Vec& x) {
    if (x.size() != gen.n) throw DimensionError("alpha_connection: point has wrong dimension");
    const std::vector<Mat> T = third_derivatives(gen, x);
    ConnectionCoefficients out;
    out.alpha = alpha;
    out.n = gen.n;
    out.values.resize(static_cast<size_t>(gen.n * gen.n * gen.n));
    const double w = 0.5 * (1.0 - alpha);
    for (int a = 0; a < gen.n; ++a)
        for (int b = 0; b < gen.n; ++b)
            for (int c = 0; c < gen.n; ++c)
                out.values[static_cast<size_t>((a * gen.n + b) * gen.n + c)] = w * T[static_cast<size_t>(a)](b, c);
    return out;
}

double canonical_divergence(const FiberPoint& xi, const FiberPoint& xi_prime) {
    require_same_medium(xi, xi_prime);
    return psi_em(xi.x, xi.eps, xi.mu) + phi_em(xi_prime.p, xi.eps, xi.mu) - xi.x.dot(xi_prime.p);
}

FiberPoint geodesic(Connection c, const FiberPoint& from, const FiberPoint& to, double t) {
    require_same_medium(from, to);
    if (c == Connection::Nabla) {
        return FiberPoint::from_induction((1.0 - t) * from.x + t * to.x, from.eps, from.mu);
    }
    return FiberPoint::from_intensity((1.0 - t) * from.p + t * to.p, from.eps, from.mu);
}

PythagorasResult pythagoras_check(const FiberPoint& xi3, const FiberPoint& xi2, const FiberPoint& xi1) {
    require_same_medium(xi3, xi2);
    require_same_medium(xi2, xi1);
    PythagorasResult r;
    r.lhs = canonical_divergence(xi3, xi1);
    r.rhs = canonical_divergence(xi3, xi2) + canonical_divergence(xi2, xi1);
    const Mat G = fiber_metric(xi2.eps, xi2.mu);
    const Vec u = xi2.x - xi3.x;
    const Vec v = contravariant_metric(xi2.eps, xi2.mu) * (xi1.p - xi2.p);
    r.orthogonality_defect = u.dot(G * v);
    return r;
}

}  // namespace cmx
