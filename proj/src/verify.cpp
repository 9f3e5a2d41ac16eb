#include "cmx/verify.hpp"

#include "cmx/config.hpp"
#include "cmx/contact.hpp"
#include "cmx/dynamics.hpp"
#include "cmx/infogeom.hpp"
#include "cmx/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace cmx {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fixed(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>()(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    Vec vec(int n, double scale = 1.0) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = scale * normal();
        return v;
    }
    Mat spd(int n, double lo, double hi) {
        const Mat G = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return normal(); });
        const Eigen::HouseholderQR<Mat> qr(G);
        const Mat Q = qr.householderQ();
        Vec lam(n);
        for (int i = 0; i < n; ++i) lam[i] = uniform(lo, hi);
        return Q * lam.asDiagonal() * Q.transpose();
    }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Smooth Hamiltonian a0 + a.x + b.p + c z + al sin(u.x) + be cos(v.p) + ga z (w.x) + de z^2 + p^T M p / 2.
ScalarFunctionOnContact random_hamiltonian(Sampler& s, int n) {
    const double a0 = s.normal(), c = s.normal(), al = s.normal(), be = s.normal(), ga = s.normal(),
                 de = s.normal();
    const Vec a = s.vec(n), b = s.vec(n), u = s.vec(n), v = s.vec(n), w = s.vec(n);
    Mat M = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return s.normal(); });
    M = 0.5 * (M + M.transpose()).eval();
    ScalarFunctionOnContact h;
    h.value = [=](const ContactPoint& q) {
        return a0 + a.dot(q.x) + b.dot(q.p) + c * q.z + al * std::sin(u.dot(q.x)) + be * std::cos(v.dot(q.p)) +
               ga * q.z * w.dot(q.x) + de * q.z * q.z + 0.5 * q.p.dot(M * q.p);
    };
    h.gradient = [=](const ContactPoint& q) {
        ContactGradient g;
        g.dx = a + al * std::cos(u.dot(q.x)) * u + ga * q.z * w;
        g.dp = b - be * std::sin(v.dot(q.p)) * v + M * q.p;
        g.dz = c + ga * w.dot(q.x) + 2.0 * de * q.z;
        return g;
    };
    return h;
}

// 0.5 v^T A v + b.v + sum c_i log cosh(v_i): strictly convex, non-polynomial.
Generator random_generator(Sampler& s, GeneratorKind kind, int n) {
    const Mat A = s.spd(n, 0.5, 2.0);
    const Vec b = s.vec(n, 0.5);
    Vec c(n);
    for (int i = 0; i < n; ++i) c[i] = s.uniform(0.2, 1.0);
    Generator g;
    g.kind = kind;
    g.n = n;
    g.strictly_convex = true;
    g.value = [=](const Vec& v) {
        double lc = 0.0;
        for (int i = 0; i < n; ++i) lc += c[i] * std::log(std::cosh(v[i]));
        return 0.5 * v.dot(A * v) + b.dot(v) + lc;
    };
    g.gradient = [=](const Vec& v) -> Vec { return A * v + b + c.cwiseProduct(v.array().tanh().matrix()); };
    g.hessian = [=](const Vec& v) -> Mat {
        Mat H = A;
        for (int i = 0; i < n; ++i) {
            const double sh = 1.0 / std::cosh(v[i]);
            H(i, i) += c[i] * sh * sh;
        }
        return H;
    };
    g.third = [=](const Vec& v) {
        std::vector<Mat> T(static_cast<size_t>(n), Mat::Zero(n, n));
        for (int i = 0; i < n; ++i) {
            const double sh = 1.0 / std::cosh(v[i]);
            T[static_cast<size_t>(i)](i, i) = -2.0 * c[i] * sh * sh * std::tanh(v[i]);
        }
        return T;
    };
    return g;
}

double tangent_gap(const Tangent& a, const Tangent& b) {
    return std::max({(a.dx - b.dx).cwiseAbs().maxCoeff(), (a.dp - b.dp).cwiseAbs().maxCoeff(), std::abs(a.dz - b.dz)});
}

double tangent_scale(const Tangent& a) {
    return std::max({a.dx.cwiseAbs().maxCoeff(), a.dp.cwiseAbs().maxCoeff(), std::abs(a.dz)});
}

double relative_gap(const FormField& a, const FormField& b) {
    const double scale = std::max(a.max_abs(), b.max_abs());
    return scale == 0.0 ? 0.0 : (a - b).max_abs() / scale;
}

double state_gap(const MaxwellState& a, const MaxwellState& b) {
    return std::max({relative_gap(a.D, b.D), relative_gap(a.B, b.B), relative_gap(a.e, b.e), relative_gap(a.h, b.h),
                     relative_gap(a.energy, b.energy)});
}

double sum_squares(const FormField& f) {
    double s = 0.0;
    for (int c = 0; c < f.components(); ++c)
        for (double v : f[c]) s += v * v;
    return s;
}

size_t entries(const FormField& f) { return static_cast<size_t>(f.components()) * f.mesh().size(); }

// ---------------------------------------------------------------------------

Outcome contact_identities(const VerifyOptions& o) {
    Sampler s(o.seed + 1);
    double worst_lambda = 0.0, worst_dl = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = s.integer(1, 6);
        const auto h = random_hamiltonian(s, n);
        const ContactPoint pt(s.vec(n), s.vec(n), s.normal());
        const Tangent X = contact_hamiltonian_field(h, pt);
        const double hv = h(pt);
        worst_lambda = std::max(worst_lambda, std::abs(eval_contact_form(pt, X) - hv) / std::max(1.0, std::abs(hv)));
        const ContactGradient g = h.gradient(pt);
        const double scale = std::max({1.0, g.dx.cwiseAbs().maxCoeff(), g.dp.cwiseAbs().maxCoeff(),
                                       std::abs(g.dz) * pt.p.cwiseAbs().maxCoeff()});
        const Vec dx_coeff = -X.dp + g.dx + g.dz * pt.p;
        const Vec dp_coeff = X.dx + g.dp;
        worst_dl = std::max(worst_dl, std::max(dx_coeff.cwiseAbs().maxCoeff(), dp_coeff.cwiseAbs().maxCoeff()) / scale);
    }
    return {worst_lambda <= 1e-12 && worst_dl <= 1e-12,
            "1000 samples: max |lambda(X_h) - h| rel " + sci(worst_lambda) + ", max d(lambda) residual rel " +
                sci(worst_dl)};
}

Outcome restricted_field_theorem(const VerifyOptions& o) {
    Sampler s(o.seed + 2);
    double worst_gap = 0.0, worst_ratio = std::numeric_limits<double>::infinity();
    for (GeneratorKind kind : {GeneratorKind::XType, GeneratorKind::PType}) {
        for (int n : {1, 2, 6}) {
            const Generator gen = random_generator(s, kind, n);
            // F is a rotation plus a small random linear part and a positive drift.
            Mat M = (n == 1 ? 0.05 : 0.1) * Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return s.normal(); });
            for (int i = 0; i + 1 < n; i += 2) {
                M(i, i + 1) += 1.0;
                M(i + 1, i) -= 1.0;
            }
            Vec f(n);
            for (int i = 0; i < n; ++i) f[i] = s.uniform(0.8, 1.2);
            const auto F = [M, f](const Vec& v) -> Vec { return M * v + f; };
            const auto J = [M](const Vec&) -> Mat { return M; };
            for (double kappa : {1.0, 0.3}) {
                const auto h = adapted_hamiltonian(gen, F, J, kappa);
                for (int t = 0; t < 25; ++t) {
                    const Vec v = s.vec(n);
                    const ContactPoint pt = lift_to_submanifold(gen, v);
                    const Tangent a = restricted_field(gen, F(v), pt, true);
                    const Tangent b = contact_hamiltonian_field(h, pt);
                    worst_gap = std::max(worst_gap, tangent_gap(a, b) / std::max(1.0, tangent_scale(a)));
                }
            }
            const auto source = restricted_source(gen, F);
            const ContactPoint start = lift_to_submanifold(gen, n == 1 ? Vec(-0.5 * f) : s.vec(n, 0.5));
            const auto drift = [&](double dt, int steps) {
                double worst = 0.0;
                for (const auto& q : integrate_flow(source, start, dt, steps))
                    worst = std::max(worst, adapted_residuals(gen, q).max_abs());
                return worst;
            };
            // Halve dt from 0.04 until the coarse drift falls below 3e-10, then halve once more.
            double h0 = 0.04, coarse = drift(h0, 25);
            while (coarse > 3e-10 && h0 > 1e-3) {
                h0 /= 2;
                coarse = drift(h0, static_cast<int>(std::lround(1.0 / h0)));
            }
            const double fine = drift(h0 / 2, static_cast<int>(std::lround(2.0 / h0)));
            worst_ratio = std::min(worst_ratio, coarse / fine);
        }
    }
    return {worst_gap <= 1e-10 && worst_ratio >= 15.0,
            "both kinds, n in {1,2,6}: max field gap rel " + sci(worst_gap) + ", min drift reduction on halving dt " +
                fixed(worst_ratio, 1) + "x"};
}

Outcome legendre_duality(const VerifyOptions& o) {
    Sampler s(o.seed + 3);
    double worst_em = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double eps = std::exp(s.uniform(-1.5, 1.5)), mu = std::exp(s.uniform(-1.5, 1.5));
        const Vec p = s.vec(6, 2.0);
        const double numeric = legendre_transform(psi_em_generator(eps, mu), p).value;
        const double closed = phi_em(p, eps, mu);
        worst_em = std::max(worst_em, std::abs(numeric - closed) / std::max(closed, 1e-300));
    }
    double worst_inv = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = s.integer(1, 6);
        const Generator g = quadratic_generator(GeneratorKind::XType, s.spd(n, 0.5, 4.0), s.vec(n), s.normal());
        const Generator back = conjugate(conjugate(g));
        const Vec x = s.vec(n);
        worst_inv = std::max(worst_inv, std::abs(back.value(x) - g.value(x)));
    }
    return {worst_em <= 1e-10 && worst_inv <= 1e-9,
            "100 media: Leg[psi_EM] vs phi_EM rel " + sci(worst_em) + "; 100 quadratics: |Leg Leg psi - psi| " +
                sci(worst_inv)};
}

Outcome dec_identities(const VerifyOptions& o) {
    Sampler s(o.seed + 4);
    const Mesh mesh({16, 16, 16}, 1.0);
    const auto random_form = [&](int degree, Grid g) {
        FormField f(mesh, degree, g);
        for (int c = 0; c < f.components(); ++c)
            for (double& v : f[c]) v = s.normal();
        return f;
    };
    const double ulp = std::numeric_limits<double>::epsilon();

    double worst_dd = 0.0;
    for (int t = 0; t < 200; ++t) {
        const FormField a = random_form(t % 2, t % 4 < 2 ? Grid::Primal : Grid::Dual);
        const double r = exterior_derivative(exterior_derivative(a)).max_abs() / (ulp * a.max_abs());
        worst_dd = std::max(worst_dd, r);
    }

    bool star_exact = true;
    for (int q = 0; q <= 3; ++q)
        for (Grid g : {Grid::Primal, Grid::Dual}) {
            const FormField a = random_form(q, g);
            star_exact = star_exact && hodge_star(hodge_star(a)) == a;
        }

    double worst_sym = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int q = 1 + t % 2;
        const FormField a = random_form(q, Grid::Primal), b = random_form(q, Grid::Primal);
        const FormField ab = wedge(a, hodge_star(b)), ba = wedge(b, hodge_star(a));
        worst_sym = std::max(worst_sym, relative_gap(ab, ba));
    }

    bool triple_exact = true;
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> dv{s.normal(), s.normal(), s.normal()}, fv{s.normal(), s.normal(), s.normal()};
        const FormField delta = FormField::constant(mesh, 1, Grid::Primal, dv);
        const FormField F = FormField::constant(mesh, 2, Grid::Dual, fv);
        const FormField r = hodge_star(wedge(delta, F));
        const double expect = dv[0] * fv[0] + dv[1] * fv[1] + dv[2] * fv[2];
        for (double v : r[0]) triple_exact = triple_exact && v == expect;
    }

    const bool ok = worst_dd <= 8.0 && star_exact && worst_sym <= 1e-13 && triple_exact;
    return {ok, "16^3: max |dd a| = " + fixed(worst_dd, 1) + " ulp*|a|, star star " +
                    (star_exact ? "bitwise identity" : "NOT identity") + ", wedge symmetry rel " + sci(worst_sym) +
                    ", triple product " + (triple_exact ? "exact" : "inexact")};
}

// Shared 32^3 vacuum plane-wave run for the conservation criteria.
struct VacuumRun {
    double scale = 0.0, spacing = 1.0, dt = 0.0;
    std::vector<double> time, psi, div_D, div_B;
    double seconds = 0.0;
};

const VacuumRun& vacuum_run() {
    static std::optional<VacuumRun> cache;
    if (cache) return *cache;
    const auto t0 = std::chrono::steady_clock::now();
    VacuumRun r;
    const Mesh mesh({32, 32, 32}, 1.0);
    const auto m = MediumProfile::vacuum(mesh);
    const auto cfg = SchemeConfig::from_cfl(m, 0.5, 2000);
    MaxwellState st = plane_wave_state(m, PlaneWave{0, 1, 32.0, 1.0}, cfg.dt);
    r.scale = std::max(st.D.max_abs(), st.B.max_abs());
    r.spacing = mesh.spacing();
    r.dt = cfg.dt;
    const auto record = [&](const MaxwellState& x) {
        r.time.push_back(x.time);
        r.psi.push_back(functional(energy_density(x.D, x.B, m)));
        r.div_D.push_back(exterior_derivative(x.D).max_abs());
        r.div_B.push_back(exterior_derivative(x.B).max_abs());
    };
    record(st);
    for (long n = 0; n < cfg.steps; ++n) {
        st = step_induction(st, m, cfg);
        record(st);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    cache = std::move(r);
    return *cache;
}

Outcome constraint_conservation(const VerifyOptions&) {
    const VacuumRun& r = vacuum_run();
    const double worst = std::max(*std::max_element(r.div_D.begin(), r.div_D.end()),
                                  *std::max_element(r.div_B.begin(), r.div_B.end()));
    const double bound = 1e-12 * r.scale / r.spacing;
    return {worst <= bound && r.seconds < 60.0,
            "32^3 vacuum plane wave, cfl 0.5, 2000 steps: max div " + sci(worst) + " (bound " + sci(bound) +
                "), run " + fixed(r.seconds, 1) + " s"};
}

double max_energy_discrepancy(double cfl_scale, long steps) {
    const Mesh mesh({32, 8, 8}, 1.0);
    const auto m = MediumProfile::vacuum(mesh);
    SchemeConfig cfg = SchemeConfig::from_cfl(m, 0.5, steps);
    cfg.dt *= cfl_scale;
    MaxwellState st = plane_wave_state(m, PlaneWave{0, 1, 32.0, 1.0}, cfg.dt);
    double worst = 0.0;
    for (long n = 0; n < steps; ++n) {
        st = step_induction(st, m, cfg);
        worst = std::max(worst, (energy_density(st.D, st.B, m) - st.energy).max_abs());
    }
    return worst;
}

Outcome poynting_energy(const VerifyOptions&) {
    const VacuumRun& r = vacuum_run();
    const size_t n = r.time.size();
    double tm = 0.0, pm = 0.0;
    for (size_t i = 0; i < n; ++i) {
        tm += r.time[i];
        pm += r.psi[i];
    }
    tm /= static_cast<double>(n);
    pm /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (r.time[i] - tm) * (r.psi[i] - pm);
        sxx += (r.time[i] - tm) * (r.time[i] - tm);
    }
    const double slope = sxy / sxx;
    const double drift = std::abs(slope) * (r.time.back() - r.time.front()) / r.psi.front();

    const double coarse = max_energy_discrepancy(1.0, 400);
    const double fine = max_energy_discrepancy(0.5, 800);
    const double ratio = coarse / fine;
    return {drift <= 1e-8 && ratio >= 3.8,
            "secular drift of psi over 2000 steps " + sci(drift) + "; max |E - psi| " + sci(coarse) + " -> " +
                sci(fine) + " on halving dt (" + fixed(ratio, 2) + "x)"};
}

Outcome dual_formulations(const VerifyOptions&) {
    const Mesh mesh({16, 16, 16}, 1.0);
    const auto m = MediumProfile::uniform(mesh, 2.0, 1.5);
    SchemeConfig db = SchemeConfig::from_cfl(m, 0.5, 1000, Orientation::DB);
    SchemeConfig eh = db;
    eh.orientation = Orientation::EH;
    MaxwellState a = plane_wave_state(m, PlaneWave{1, 2, 16.0, 1.0}, db.dt);
    MaxwellState b = a;
    const double energy_scale = functional(energy_density(a.D, a.B, m));
    double worst_h = 0.0;
    const auto track = [&](const MaxwellState& x, Orientation o) {
        worst_h = std::max(worst_h, std::abs(functional(contact_hamiltonian_density(x, m, o))));
    };
    track(a, Orientation::DB);
    track(b, Orientation::EH);
    for (long n = 0; n < db.steps; ++n) {
        a = step_induction(a, m, db);
        b = step_intensity(b, m, eh);
        track(a, Orientation::DB);
        track(b, Orientation::EH);
    }
    const double gap = state_gap(a, b);
    const double h_rel = worst_h / energy_scale;
    return {gap <= 1e-10 && h_rel <= 1e-10,
            "16^3, eps=2, mu=1.5, 1000 steps: DB vs EH rel " + sci(gap) + ", max |h~| / psi~ " + sci(h_rel)};
}

double period_error(int cells) {
    const double length = 1.0;
    const Mesh mesh({cells, 4, 4}, length / cells);
    const auto m = MediumProfile::vacuum(mesh);
    const double period = length;  // c = 1
    const long steps = static_cast<long>(std::ceil(period / (0.5 * stable_dt(m))));
    SchemeConfig cfg;
    cfg.dt = period / static_cast<double>(steps);
    cfg.steps = steps;
    MaxwellState st = plane_wave_state(m, PlaneWave{0, 1, length, 1.0}, 0.0);
    const FormField e0 = st.e;
    for (long n = 0; n < steps; ++n) st = step_induction(st, m, cfg);
    return std::sqrt(sum_squares(st.e - e0) / sum_squares(e0));
}

Outcome plane_wave_oracle(const VerifyOptions&) {
    const double e16 = period_error(16), e32 = period_error(32);
    const double ratio = e16 / e32;
    return {e16 <= 0.01 && ratio >= 3.5,
            "one period: RMS error " + fixed(100.0 * e16, 2) + "% at 16 cells/wavelength, " +
                fixed(100.0 * e32, 2) + "% at 32 (" + fixed(ratio, 2) + "x)"};
}

Outcome potential_cross_check(const VerifyOptions&) {
    const Mesh mesh({16, 16, 16}, 1.0);
    const auto m = MediumProfile::vacuum(mesh);
    const auto cfg = SchemeConfig::from_cfl(m, 0.5, 500);
    const PlaneWave w{0, 1, 16.0, 1.0};
    const MaxwellState s0 = plane_wave_state(m, w, cfg.dt);

    // A along the polarization with dA = B: A_b = mu H sin(k z_a) / K, K the discrete wavenumber.
    const double k = 2.0 * std::numbers::pi / w.wavelength;
    const double K = 2.0 / mesh.spacing() * std::sin(0.5 * k * mesh.spacing());
    const int c = 3 - w.axis - w.polarization;
    const double muH = s0.B[c][0] / std::cos(0.5 * k * mesh.spacing());
    const FormField A0 = FormField::sample(mesh, 1, Grid::Primal, [&](int comp, const std::array<double, 3>& r) {
        return comp == w.polarization ? muH * std::sin(k * r[0]) / K : 0.0;
    });
    const double potential_mismatch = (exterior_derivative(A0) - s0.B).max_abs();
    const FormField Adot0 = -1.0 * s0.e;

    MaxwellState st = s0;
    double worst = 0.0;
    evolve_potential(A0, Adot0, m, cfg, [&](const PotentialFrame& f) {
        if (f.step > 0) st = step_induction(st, m, cfg);
        const double ss = sum_squares(f.e - st.e) + sum_squares(f.B - st.B);
        worst = std::max(worst, std::sqrt(ss / static_cast<double>(entries(st.e) + entries(st.B))));
    });
    return {worst <= 1e-6 && potential_mismatch <= 1e-12,
            "16^3 vacuum, 500 steps: max RMS gap " + sci(worst) + " (|dA0 - B0| = " + sci(potential_mismatch) + ")"};
}

Outcome information_geometry(const VerifyOptions& o) {
    Sampler s(o.seed + 10);
    double worst_inv = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double eps = std::exp(s.uniform(-3, 3)), mu = std::exp(s.uniform(-3, 3));
        const Mat P = fiber_metric(eps, mu) * contravariant_metric(eps, mu);
        worst_inv = std::max(worst_inv, (P - Mat::Identity(6, 6)).cwiseAbs().maxCoeff());
    }
    double worst_gamma = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Generator g = psi_em_generator(std::exp(s.uniform(-2, 2)), std::exp(s.uniform(-2, 2)));
        worst_gamma = std::max(worst_gamma, alpha_connection(g, s.uniform(-3, 3), s.vec(6)).max_abs());
    }
    double worst_div = 0.0, min_div = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 200; ++t) {
        const double eps = std::exp(s.uniform(-1, 1)), mu = std::exp(s.uniform(-1, 1));
        const FiberPoint a = FiberPoint::from_induction(s.vec(6), eps, mu);
        const FiberPoint b = FiberPoint::from_induction(s.vec(6), eps, mu);
        const double d = canonical_divergence(a, b);
        const Vec dx = a.x - b.x;
        const double closed = 0.5 * dx.dot(fiber_metric(eps, mu) * dx);
        worst_div = std::max(worst_div, std::abs(d - closed) / (1.0 + closed));
        min_div = std::min(min_div, d);
    }
    double worst_pyth = 0.0, worst_defect = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double eps = std::exp(s.uniform(-1, 1)), mu = std::exp(s.uniform(-1, 1));
        const FiberPoint mid = FiberPoint::from_induction(s.vec(6), eps, mu);
        const Vec u = s.vec(6);
        Vec v = s.vec(6);
        v -= (u.dot(v) / u.dot(u)) * u;  // g(u, G^-1 v) = u . v
        const FiberPoint start = FiberPoint::from_induction(mid.x - u, eps, mu);
        const FiberPoint end = FiberPoint::from_intensity(mid.p + v, eps, mu);
        const PythagorasResult r = pythagoras_check(start, mid, end);
        worst_pyth = std::max(worst_pyth, std::abs(r.lhs - r.rhs) / (1.0 + r.lhs));
        worst_defect = std::max(worst_defect, std::abs(r.orthogonality_defect));
    }
    const bool ok = worst_inv <= 1e-14 && worst_gamma == 0.0 && min_div >= 0.0 && worst_div <= 1e-12 &&
                    worst_pyth <= 1e-12;
    return {ok, "G G^-1 - I " + sci(worst_inv) + ", max |Gamma| " + sci(worst_gamma) + ", min divergence " +
                    sci(min_div) + ", closed form rel " + sci(worst_div) + ", Pythagoras rel " + sci(worst_pyth) +
                    " (defect " + sci(worst_defect) + ")"};
}

Outcome io_round_trips(const VerifyOptions& o) {
    namespace fs = std::filesystem;
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("cmx_verify_" + std::to_string(rd()));
    fs::create_directories(dir);
    struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove_all(p, ec);
        }
    } cleanup{dir};

    Sampler s(o.seed + 11);
    MaxwellState st = MaxwellState::zero(Mesh({5, 4, 3}, 0.37));
    for (FormField* f : {&st.D, &st.B, &st.e, &st.h, &st.energy})
        for (int c = 0; c < f->components(); ++c)
            for (double& v : (*f)[c]) v = s.normal() * std::exp(s.uniform(-30, 30));
    st.time = 0.1 + 0.2;
    const std::string path = (dir / "state.cmx").string();
    write_snapshot(st, path);
    const MaxwellState back = read_snapshot(path);
    const bool snap_ok = back.D == st.D && back.B == st.B && back.e == st.e && back.h == st.h &&
                         back.energy == st.energy && back.time == st.time && snapshot_bytes(back) == snapshot_bytes(st);

    const std::string text =
        "grid.dims = 12 10 8\ngrid.spacing = 0.1\nmedium.preset = sech_slab 1.0 4.0 1.0\n"
        "initial.preset = random 0.001\nscheme.orientation = EH\nscheme.cfl = 0.3\nscheme.steps = 15\n"
        "scheme.cadence = 2\nseed = " +
        std::to_string(o.seed) + "\n";
    const ScenarioConfig cfg = parse_config(text);
    const std::string printed = print_config(cfg);
    const bool cfg_ok = parse_config(printed) == cfg && print_config(parse_config(printed)) == printed;

    const auto run_once = [&] {
        const Scenario sc = build_scenario(cfg);
        const auto result = run_scenario(sc.initial, sc.medium, sc.scheme);
        return timeseries_csv(result.series) + snapshot_bytes(result.final_state);
    };
    const bool det_ok = run_once() == run_once();

    const std::string csv_path = (dir / "series.csv").string();
    std::vector<DiagnosticsReport> rows(3);
    for (auto& r : rows) r = {s.normal(), s.normal(), 1e-300, 0.0, -0.0, 1.0 / 3.0, 5e-324, 1e300, s.normal()};
    write_timeseries(rows, csv_path);
    const auto rows_back = read_timeseries(csv_path);
    bool csv_ok = rows_back.size() == rows.size();
    for (size_t i = 0; csv_ok && i < rows.size(); ++i)
        csv_ok = timeseries_csv({rows[i]}) == timeseries_csv({rows_back[i]});

    return {snap_ok && cfg_ok && det_ok && csv_ok,
            std::string("snapshot ") + (snap_ok ? "bit-exact" : "MISMATCH") + ", config echo " +
                (cfg_ok ? "idempotent" : "MISMATCH") + ", time series " + (csv_ok ? "bit-exact" : "MISMATCH") +
                ", rerun " + (det_ok ? "byte-identical" : "DIFFERS")};
}

struct Entry {
    const char* name;
    Outcome (*fn)(const VerifyOptions&);
    double budget_seconds;  // 0 means unbounded
};

const Entry kCriteria[kCriterionCount] = {
    {"contact identities", contact_identities, 5.0},
    {"restricted-field theorem", restricted_field_theorem, 10.0},
    {"Legendre duality", legendre_duality, 5.0},
    {"DEC identities", dec_identities, 5.0},
    {"constraint conservation", constraint_conservation, 0.0},
    {"Poynting energy balance", poynting_energy, 0.0},
    {"dual formulations", dual_formulations, 0.0},
    {"plane-wave period oracle", plane_wave_oracle, 0.0},
    {"potential cross-check", potential_cross_check, 0.0},
    {"information geometry", information_geometry, 5.0},
    {"I/O round trips", io_round_trips, 0.0},
};

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"contact", "dec", "fiber", "dynamics", "infogeo", "io", "all"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<int> suite_criteria(const std::string& name) {
    if (name == "contact") return {1, 2};
    if (name == "fiber") return {3};
    if (name == "dec") return {4};
    if (name == "dynamics") return {5, 6, 7, 8, 9};
    if (name == "infogeo") return {10};
    if (name == "io") return {11};
    if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string criterion_name(int id) {
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id out of range");
    return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome out = kCriteria[id - 1].fn(opts);
        r.passed = out.passed;
        r.detail = out.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double budget = kCriteria[id - 1].budget_seconds;
    if (budget > 0.0 && r.seconds > budget) {
        r.passed = false;
        r.detail += "; exceeded the " + fixed(budget, 0) + " s budget";
    }
    return r;
}

std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& opts,
                                       const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(name)) {
        out.push_back(run_criterion(id, opts));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "%s  %2d  %-26s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
    return std::string(head) + "  " + r.detail + "  [" + fixed(r.seconds, 2) + " s]";
}

}  // namespace cmx
