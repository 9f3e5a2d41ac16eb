// Dually flat structure of a single electromagnetic fiber.

#pragma once

#include "cmx/contact.hpp"

namespace cmx {

class MediumMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Hessian of psi^EM: diag(1/eps x3, 1/mu x3).
Mat fiber_metric(double eps, double mu);
/// Hessian of phi^EM: diag(eps x3, mu x3).
Mat contravariant_metric(double eps, double mu);

struct FiberPoint {
    Vec x;  // D1..D3, B1..B3
    Vec p;  // e1..e3, h1..h3
    double eps = 1.0;
    double mu = 1.0;

    static FiberPoint from_induction(const Vec& x, double eps, double mu);
    static FiberPoint from_intensity(const Vec& p, double eps, double mu);

    /// max |p - grad psi(x)|.
    double constitutive_residual() const;
    bool same_medium(const FiberPoint& o) const { return eps == o.eps && mu == o.mu; }
};

/// Gamma^(alpha)_{abc} stored densely, a slowest.
struct ConnectionCoefficients {
    double alpha = 0.0;
    int n = 0;
    std::vector<double> values;

    double operator()(int a, int b, int c) const {
        return values[static_cast<size_t>((a * n + b) * n + c)];
    }
    double max_abs() const;
};

/// ((1 - alpha) / 2) d^3 psi at x.
ConnectionCoefficients alpha_connection(const Generator& gen, double alpha, const Vec& x);

/// psi(xi) + phi(xi') - x(xi) . p(xi').
double canonical_divergence(const FiberPoint& xi, const FiberPoint& xi_prime);

enum class Connection { Nabla, NablaPrime };

/// Affine in x for Nabla and in p for NablaPrime.
FiberPoint geodesic(Connection c, const FiberPoint& from, const FiberPoint& to, double t);

struct PythagorasResult {
    double lhs = 0.0;                   // D(xi3 || xi1)
    double rhs = 0.0;                   // D(xi3 || xi2) + D(xi2 || xi1)
    double orthogonality_defect = 0.0;  // g(x2 - x3, G^-1 (p1 - p2)) at xi2
};

PythagorasResult pythagoras_check(const FiberPoint& xi3, const FiberPoint& xi2, const FiberPoint& xi1);

}  // namespace cmx
