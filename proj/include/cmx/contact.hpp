// Finite-dimensional contact geometry in Darboux coordinates (x, p, z)
// with contact form  lambda = dz - p_a dx^a.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct ContactPoint {
    Vec x;
    Vec p;
    double z = 0.0;

    ContactPoint() = default;
    ContactPoint(Vec x_, Vec p_, double z_);

    int dim() const { return static_cast<int>(x.size()); }
    bool finite() const;
};

struct Tangent {
    Vec dx;
    Vec dp;
    double dz = 0.0;

    int dim() const { return static_cast<int>(dx.size()); }
};

/// Partial derivatives of a function on the contact manifold.
struct ContactGradient {
    Vec dx;   // dh/dx^a
    Vec dp;   // dh/dp_a
    double dz = 0.0;
};

/// A smooth function h(x, p, z) with derivative access.
struct ScalarFunctionOnContact {
    std::function<double(const ContactPoint&)> value;
    std::function<ContactGradient(const ContactPoint&)> gradient;
    bool analytic_gradient = true;

    double operator()(const ContactPoint& pt) const { return value(pt); }
};

/// Wraps `value` with a central finite-difference gradient.
ScalarFunctionOnContact with_fd_gradient(std::function<double(const ContactPoint&)> value);

enum class GeneratorKind { XType, PType };

/// Generating function of a Legendre submanifold: psi(x) for XType,
/// phi(p) for PType.  `third` is optional; when empty, third derivatives
/// come from central differences of `hessian`.
struct Generator {
    GeneratorKind kind = GeneratorKind::XType;
    int n = 1;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    std::function<std::vector<Mat>(const Vec&)> third;
    bool strictly_convex = false;
};

/// Quadratic  (1/2) v^T A v + b^T v + c  with A symmetric.
Generator quadratic_generator(GeneratorKind kind, const Mat& A, const Vec& b = Vec(), double c = 0.0);

/// Third derivatives T[a](b, c) = d^3 f / dv^a dv^b dv^c.
std::vector<Mat> third_derivatives(const Generator& gen, const Vec& v);

struct AdaptedResiduals {
    double delta0 = 0.0;
    Vec delta;

    double max_abs() const;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& what, long step = -1)
        : std::runtime_error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double eval_contact_form(const ContactPoint& pt, const Tangent& v);

Tangent reeb_field(int n);

/// x' = -dh/dp,  p' = dh/dx + p dh/dz,  z' = h - p . dh/dp
Tangent contact_hamiltonian_field(const ScalarFunctionOnContact& h, const ContactPoint& pt);

/// XType: (psi(x) - z, grad psi - p).  PType: (x.p - phi(p) - z, x - grad phi).
AdaptedResiduals adapted_residuals(const Generator& gen, const ContactPoint& pt);

/// Push-forward of x' = F (XType) or p' = F (PType) to the Legendre
/// submanifold generated by `gen`.  With `strict`, throws when the point is
/// more than 1e-9 off the submanifold.
Tangent restricted_field(const Generator& gen, const Vec& F, const ContactPoint& pt,
                         bool strict = false);

/// The adapted contact Hamiltonian  Delta_a F^a + kappa Delta_0  (XType) or
/// Delta^a F_a + kappa Delta^0  (PType).  F may depend on the point; its
/// Jacobian is needed off-shell, and taken as zero when `jacobian` is empty.
ScalarFunctionOnContact adapted_hamiltonian(const Generator& gen,
                                            std::function<Vec(const Vec&)> F,
                                            std::function<Mat(const Vec&)> jacobian = {},
                                            double kappa = 1.0);

/// Point on the Legendre submanifold of `gen` parametrised by v (x for
/// XType, p for PType).
ContactPoint lift_to_submanifold(const Generator& gen, const Vec& v);

struct LegendreResult {
    double value = 0.0;
    Vec argmax;
    int iterations = 0;
};

struct LegendreOptions {
    int max_iterations = 100;
    double tolerance = 1e-12;
};

/// sup_v [ v.p - f(v) ] via damped Newton on grad f(v) = p.
LegendreResult legendre_transform(const Generator& gen, const Vec& p,
                                  const LegendreOptions& opts = {});

/// The convex conjugate as a generator of the opposite kind.  Each
/// evaluation solves a Legendre transform.
Generator conjugate(const Generator& gen, const LegendreOptions& opts = {});

using FieldSource = std::function<Tangent(const ContactPoint&)>;

FieldSource hamiltonian_source(ScalarFunctionOnContact h);
FieldSource restricted_source(Generator gen, std::function<Vec(const Vec&)> F);

/// Classical fixed-step RK4.  Returns steps + 1 points.
std::vector<ContactPoint> integrate_flow(const FieldSource& field, const ContactPoint& start,
                                         double dt, int steps);

}  // namespace cmx
