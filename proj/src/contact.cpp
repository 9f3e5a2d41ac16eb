#include "cmx/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cmx {

namespace {

void require_same_dim(const ContactPoint& pt, int n, const char* what) {
    if (pt.x.size() != n || pt.p.size() != n) {
        throw DimensionError(std::string(what) + ": dimension mismatch");
    }
}

bool all_finite(const Vec& v) { return v.allFinite(); }

// Step for central differences, scaled to the coordinate magnitude.
double fd_step(double v) {
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    return base * std::max(1.0, std::abs(v));
}

}  // namespace

ContactPoint::ContactPoint(Vec x_, Vec p_, double z_) : x(std::move(x_)), p(std::move(p_)), z(z_) {
    if (x.size() != p.size() || x.size() < 1) {
        throw DimensionError("ContactPoint: x and p must have equal dimension n >= 1");
    }
}

bool ContactPoint::finite() const { return all_finite(x) && all_finite(p) && std::isfinite(z); }

double AdaptedResiduals::max_abs() const {
    double m = std::abs(delta0);
    if (delta.size() > 0) m = std::max(m, delta.cwiseAbs().maxCoeff());
    return m;
}

ScalarFunctionOnContact with_fd_gradient(std::function<double(const ContactPoint&)> value) {
    ScalarFunctionOnContact h;
    h.analytic_gradient = false;
    h.value = value;
    h.gradient = [value](const ContactPoint& pt) {
        const int n = pt.dim();
        ContactGradient g{Vec(n), Vec(n), 0.0};
        ContactPoint q = pt;
        for (int a = 0; a < n; ++a) {
            const double hx = fd_step(pt.x[a]);
            q.x[a] = pt.x[a] + hx;
            const double fp = value(q);
            q.x[a] = pt.x[a] - hx;
            const double fm = value(q);
            q.x[a] = pt.x[a];
            g.dx[a] = (fp - fm) / (2 * hx);

            const double hp = fd_step(pt.p[a]);
            q.p[a] = pt.p[a] + hp;
            const double gp = value(q);
            q.p[a] = pt.p[a] - hp;
            const double gm = value(q);
            q.p[a] = pt.p[a];
            g.dp[a] = (gp - gm) / (2 * hp);
        }
        const double hz = fd_step(pt.z);
        q.z = pt.z + hz;
        const double fp = value(q);
        q.z = pt.z - hz;
        const double fm = value(q);
        g.dz = (fp - fm) / (2 * hz);
        return g;
    };
    return h;
}

Generator quadratic_generator(GeneratorKind kind, const Mat& A, const Vec& b, double c) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || n < 1) throw DimensionError("quadratic_generator: A must be square");
    const Vec lin = b.size() == 0 ? Vec::Zero(n) : b;
    if (lin.size() != n) throw DimensionError("quadratic_generator: b has wrong size");
    const Mat S = 0.5 * (A + A.transpose());

    Generator g;
    g.kind = kind;
    g.n = n;
    g.value = [S, lin, c](const Vec& v) { return 0.5 * v.dot(S * v) + lin.dot(v) + c; };
    g.gradient = [S, lin](const Vec& v) -> Vec { return S * v + lin; };
    g.hessian = [S](const Vec&) -> Mat { return S; };
    g.third = [n](const Vec&) { return std::vector<Mat>(n, Mat::Zero(n, n)); };
    Eigen::LLT<Mat> llt(S);
    g.strictly_convex = llt.info() == Eigen::Success;
    return g;
}

std::vector<Mat> third_derivatives(const Generator& gen, const Vec& v) {
    if (gen.third) return gen.third(v);
    const int n = gen.n;
    std::vector<Mat> T(n);
    Vec w = v;
    for (int a = 0; a < n; ++a) {
        const double h = fd_step(v[a]);
        w[a] = v[a] + h;
        const Mat Hp = gen.hessian(w);
        w[a] = v[a] - h;
        const Mat Hm = gen.hessian(w);
        w[a] = v[a];
        T[a] = (Hp - Hm) / (2 * h);
    }
    return T;
}

double eval_contact_form(const ContactPoint& pt, const Tangent& v) {
    if (v.dx.size() != pt.x.size() || v.dp.size() != pt.p.size()) {
        throw DimensionError("eval_contact_form: dimension mismatch");
    }
    return v.dz - pt.p.dot(v.dx);
}

Tangent reeb_field(int n) {
    if (n < 1) throw DimensionError("reeb_field: n must be >= 1");
    return Tangent{Vec::Zero(n), Vec::Zero(n), 1.0};
}

Tangent contact_hamiltonian_field(const ScalarFunctionOnContact& h, const ContactPoint& pt) {
    const int n = pt.dim();
    const ContactGradient g = h.gradient(pt);
    if (g.dx.size() != n || g.dp.size() != n) {
        throw DimensionError("contact_hamiltonian_field: gradient dimension mismatch");
    }
    if (!all_finite(g.dx) || !all_finite(g.dp) || !std::isfinite(g.dz)) {
        throw NonFiniteError("contact_hamiltonian_field: non-finite derivative");
    }
    Tangent t;
    t.dx = -g.dp;
    t.dp = g.dx + pt.p * g.dz;
    t.dz = h.value(pt) - pt.p.dot(g.dp);
    return t;
}

AdaptedResiduals adapted_residuals(const Generator& gen, const ContactPoint& pt) {
    require_same_dim(pt, gen.n, "adapted_residuals");
    AdaptedResiduals r;
    if (gen.kind == GeneratorKind::XType) {
        r.delta0 = gen.value(pt.x) - pt.z;
        r.delta = gen.gradient(pt.x) - pt.p;
    } else {
        r.delta0 = pt.x.dot(pt.p) - gen.value(pt.p) - pt.z;
        r.delta = pt.x - gen.gradient(pt.p);
    }
    return r;
}

Tangent restricted_field(const Generator& gen, const Vec& F, const ContactPoint& pt, bool strict) {
    require_same_dim(pt, gen.n, "restricted_field");
    if (F.size() != gen.n) throw DimensionError("restricted_field: F has wrong size");
    if (strict) {
        const double off = adapted_residuals(gen, pt).max_abs();
        if (off > 1e-9) {
            throw std::domain_error("restricted_field: point is off the Legendre submanifold (residual " +
                                    std::to_string(off) + ")");
        }
    }
    Tangent t;
    if (gen.kind == GeneratorKind::XType) {
        t.dx = F;
        t.dp = gen.hessian(pt.x) * F;
        t.dz = gen.gradient(pt.x).dot(F);
    } else {
        t.dp = F;
        t.dx = gen.hessian(pt.p) * F;
        t.dz = pt.p.dot(t.dx);
    }
    return t;
}

ScalarFunctionOnContact adapted_hamiltonian(const Generator& gen, std::function<Vec(const Vec&)> F,
                                            std::function<Mat(const Vec&)> jacobian, double kappa) {
    ScalarFunctionOnContact h;
    h.analytic_gradient = true;
    if (gen.kind == GeneratorKind::XType) {
        h.value = [gen, F, kappa](const ContactPoint& pt) {
            return (gen.gradient(pt.x) - pt.p).dot(F(pt.x)) + kappa * (gen.value(pt.x) - pt.z);
        };
        h.gradient = [gen, F, jacobian, kappa](const ContactPoint& pt) {
            const Vec f = F(pt.x);
            const Vec grad = gen.gradient(pt.x);
            ContactGradient g;
            g.dx = gen.hessian(pt.x) * f + kappa * grad;
            if (jacobian) g.dx += jacobian(pt.x).transpose() * (grad - pt.p);
            g.dp = -f;
            g.dz = -kappa;
            return g;
        };
    } else {
        h.value = [gen, F, kappa](const ContactPoint& pt) {
            return (pt.x - gen.gradient(pt.p)).dot(F(pt.p)) +
                   kappa * (pt.x.dot(pt.p) - gen.value(pt.p) - pt.z);
        };
        h.gradient = [gen, F, jacobian, kappa](const ContactPoint& pt) {
            const Vec f = F(pt.p);
            const Vec grad = gen.gradient(pt.p);
            ContactGradient g;
            g.dx = f + kappa * pt.p;
            g.dp = -gen.hessian(pt.p) * f + kappa * (pt.x - grad);
            if (jacobian) g.dp += jacobian(pt.p).transpose() * (pt.x - grad);
            g.dz = -kappa;
            return g;
        };
    }
    return h;
}

ContactPoint lift_to_submanifold(const Generator& gen, const Vec& v) {
    if (v.size() != gen.n) throw DimensionError("lift_to_submanifold: wrong dimension");
    if (gen.kind == GeneratorKind::XType) {
        return ContactPoint(v, gen.gradient(v), gen.value(v));
    }
    const Vec x = gen.gradient(v);
    return ContactPoint(x, v, v.dot(x) - gen.value(v));
}

LegendreResult legendre_transform(const Generator& gen, const Vec& p, const LegendreOptions& opts) {
    const int n = gen.n;
    if (p.size() != n) throw DimensionError("legendre_transform: p has wrong size");
    if (!gen.strictly_convex) {
        throw std::domain_error("legendre_transform: generator is not flagged strictly convex");
    }
    const double tol = opts.tolerance * (1.0 + p.cwiseAbs().maxCoeff());

    // Start from the quadratic model at the origin when it is usable.
    Vec v = Vec::Zero(n);
    {
        Eigen::LLT<Mat> llt(gen.hessian(v));
        if (llt.info() == Eigen::Success) {
            const Vec guess = llt.solve(p - gen.gradient(v));
            if (guess.allFinite()) v = guess;
        }
    }

    // Minimise f(v) = psi(v) - p.v, which is strictly convex.
    auto objective = [&](const Vec& w) { return gen.value(w) - p.dot(w); };
    for (int it = 0; it < opts.max_iterations; ++it) {
        const Vec r = gen.gradient(v) - p;
        if (!r.allFinite()) throw ConvergenceError("legendre_transform: non-finite gradient");
        if (r.cwiseAbs().maxCoeff() <= tol) {
            return LegendreResult{v.dot(p) - gen.value(v), v, it};
        }
        const Mat H = gen.hessian(v);
        // Levenberg shift when the Hessian is not numerically positive definite.
        const double scale = H.cwiseAbs().maxCoeff();
        Vec step;
        double shift = 0.0;
        for (int tries = 0; tries < 40 && step.size() == 0; ++tries) {
            Eigen::LLT<Mat> llt(H + shift * Mat::Identity(n, n));
            if (llt.info() == Eigen::Success) {
                Vec s = -llt.solve(r);
                if (s.allFinite()) step = std::move(s);
            }
            shift = shift == 0.0 ? (scale > 0.0 ? 1e-8 * scale : 1.0) : shift * 10.0;
        }
        if (step.size() == 0) throw ConvergenceError("legendre_transform: singular Newton system");

        // Backtracking on the objective; fall back to residual decrease.
        const double f0 = objective(v);
        const double slope = r.dot(step);
        const double r0 = r.cwiseAbs().maxCoeff();
        double alpha = 1.0;
        Vec next = v + step;
        for (int ls = 0; ls < 60; ++ls) {
            next = v + alpha * step;
            const double f1 = objective(next);
            if (std::isfinite(f1) && f1 <= f0 + 1e-4 * alpha * slope) break;
            const Vec r1 = gen.gradient(next) - p;
            if (r1.allFinite() && r1.cwiseAbs().maxCoeff() < r0) break;
            alpha *= 0.5;
        }
        v = next;
    }
    const Vec r = gen.gradient(v) - p;
    if (r.cwiseAbs().maxCoeff() <= tol) return LegendreResult{v.dot(p) - gen.value(v), v, opts.max_iterations};
    throw ConvergenceError("legendre_transform: no convergence after " +
                           std::to_string(opts.max_iterations) + " iterations");
}

Generator conjugate(const Generator& gen, const LegendreOptions& opts) {
    Generator c;
    c.kind = gen.kind == GeneratorKind::XType ? GeneratorKind::PType : GeneratorKind::XType;
    c.n = gen.n;
    c.strictly_convex = gen.strictly_convex;
    c.value = [gen, opts](const Vec& p) { return legendre_transform(gen, p, opts).value; };
    c.gradient = [gen, opts](const Vec& p) -> Vec { return legendre_transform(gen, p, opts).argmax; };
    c.hessian = [gen, opts](const Vec& p) -> Mat {
        const Vec x = legendre_transform(gen, p, opts).argmax;
        return gen.hessian(x).inverse();
    };
    return c;
}

FieldSource hamiltonian_source(ScalarFunctionOnContact h) {
    return [h = std::move(h)](const ContactPoint& pt) { return contact_hamiltonian_field(h, pt); };
}

FieldSource restricted_source(Generator gen, std::function<Vec(const Vec&)> F) {
    return [gen = std::move(gen), F = std::move(F)](const ContactPoint& pt) {
        const Vec& arg = gen.kind == GeneratorKind::XType ? pt.x : pt.p;
        return restricted_field(gen, F(arg), pt);
    };
}

namespace {

ContactPoint advance(const ContactPoint& pt, const Tangent& t, double h) {
    ContactPoint q;
    q.x = pt.x + h * t.dx;
    q.p = pt.p + h * t.dp;
    q.z = pt.z + h * t.dz;
    return q;
}

}  // namespace

std::vector<ContactPoint> integrate_flow(const FieldSource& field, const ContactPoint& start, double dt,
                                         int steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrate_flow: dt must be > 0");
    if (steps < 1) throw std::invalid_argument("integrate_flow: steps must be >= 1");
    if (!start.finite()) throw NonFiniteError("integrate_flow: non-finite initial point", 0);

    std::vector<ContactPoint> traj;
    traj.reserve(static_cast<size_t>(steps) + 1);
    traj.push_back(start);
    for (int s = 0; s < steps; ++s) {
        const ContactPoint& y = traj.back();
        Tangent k1, k2, k3, k4;
        try {
            k1 = field(y);
            k2 = field(advance(y, k1, dt / 2));
            k3 = field(advance(y, k2, dt / 2));
            k4 = field(advance(y, k3, dt));
        } catch (const NonFiniteError& e) {
            throw NonFiniteError(std::string(e.what()) + " (integrate_flow step " + std::to_string(s + 1) + ")", s + 1);
        }
        ContactPoint next;
        next.x = y.x + (dt / 6) * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
        next.p = y.p + (dt / 6) * (k1.dp + 2 * k2.dp + 2 * k3.dp + k4.dp);
        next.z = y.z + (dt / 6) * (k1.dz + 2 * k2.dz + 2 * k3.dz + k4.dz);
        if (!next.finite()) {
            throw NonFiniteError("integrate_flow: non-finite state at step " + std::to_string(s + 1), s + 1);
        }
        traj.push_back(std::move(next));
    }
    return traj;
}

}  // namespace cmx
