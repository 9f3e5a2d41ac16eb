#include "cmx/dec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cmx {

namespace {

constexpr Location bit(int axis) { return 1u << axis; }

// Output components of a wedge product as signed sums of factor pairs.
struct Term {
    int a;  // component of alpha
    int b;  // component of beta
    double sign;
};

std::vector<std::vector<Term>> wedge_terms(int p, int q) {
    std::vector<std::vector<Term>> out;
    if (p == 0) {
        for (int c = 0; c < num_components(q); ++c) out.push_back({{0, c, 1.0}});
    } else if (q == 0) {
        for (int c = 0; c < num_components(p); ++c) out.push_back({{c, 0, 1.0}});
    } else if (p == 1 && q == 1) {
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            out.push_back({{b, c, 1.0}, {c, b, -1.0}});
        }
    } else if ((p == 1 && q == 2) || (p == 2 && q == 1)) {
        out.push_back({{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
    } else {
        throw DegreeError("wedge: unsupported degree pair (" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
    return out;
}

void require_same_mesh(const FormField& a, const FormField& b, const char* what) {
    if (a.mesh() != b.mesh()) throw MeshMismatch(std::string(what) + ": forms live on different meshes");
}

}  // namespace

Mesh::Mesh(std::array<int, 3> dims, double spacing) : dims_(dims), spacing_(spacing) {
    for (int d : dims_) {
        if (d < 1) throw std::invalid_argument("Mesh: every dimension must be positive");
    }
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("Mesh: spacing must be finite and positive");
    }
    size_ = static_cast<size_t>(dims_[0]) * static_cast<size_t>(dims_[1]) * static_cast<size_t>(dims_[2]);
    if (size_ < 8) throw std::invalid_argument("Mesh: at least 8 cells are required");
}

std::array<int, 3> Mesh::unravel(size_t idx) const {
    const int k = static_cast<int>(idx % static_cast<size_t>(dims_[2]));
    idx /= static_cast<size_t>(dims_[2]);
    const int j = static_cast<int>(idx % static_cast<size_t>(dims_[1]));
    const int i = static_cast<int>(idx / static_cast<size_t>(dims_[1]));
    return {i, j, k};
}

std::array<double, 3> Mesh::position(Location loc, int i, int j, int k) const {
    const std::array<int, 3> ijk{i, j, k};
    std::array<double, 3> r{};
    for (int a = 0; a < 3; ++a) {
        r[static_cast<size_t>(a)] = (ijk[static_cast<size_t>(a)] + ((loc & bit(a)) ? 0.5 : 0.0)) * spacing_;
    }
    return r;
}

int num_components(int degree) {
    if (degree < 0 || degree > 3) throw DegreeError("form degree must be in 0..3");
    return (degree == 0 || degree == 3) ? 1 : 3;
}

Location location(int degree, Grid grid, int component) {
    Location primal = 0;
    switch (degree) {
        case 0: primal = 0; break;
        case 1: primal = bit(component); break;
        case 2: primal = 7u ^ bit(component); break;
        case 3: primal = 7u; break;
        default: throw DegreeError("form degree must be in 0..3");
    }
    return grid == Grid::Primal ? primal : (primal ^ 7u);
}

FormField::FormField(Mesh mesh, int degree, Grid grid)
    : mesh_(std::move(mesh)), degree_(degree), grid_(grid) {
    comp_.assign(static_cast<size_t>(num_components(degree)), Array(mesh_.size(), 0.0));
}

FormField FormField::constant(const Mesh& mesh, int degree, Grid grid, const std::vector<double>& values) {
    FormField f(mesh, degree, grid);
    if (values.size() != static_cast<size_t>(f.components())) {
        throw std::invalid_argument("FormField::constant: wrong number of component values");
    }
    for (int c = 0; c < f.components(); ++c) std::fill(f[c].begin(), f[c].end(), values[static_cast<size_t>(c)]);
    return f;
}

FormField FormField::sample(const Mesh& mesh, int degree, Grid grid,
                            const std::function<double(int, const std::array<double, 3>&)>& f) {
    FormField out(mesh, degree, grid);
    const auto& n = mesh.dims();
    for (int c = 0; c < out.components(); ++c) {
        const Location loc = out.location(c);
        auto& arr = out[c];
        for (int i = 0; i < n[0]; ++i)
            for (int j = 0; j < n[1]; ++j)
                for (int k = 0; k < n[2]; ++k) arr[mesh.index(i, j, k)] = f(c, mesh.position(loc, i, j, k));
    }
    return out;
}

double FormField::max_abs() const {
    double m = 0.0;
    for (const auto& a : comp_)
        for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

bool FormField::finite() const {
    for (const auto& a : comp_)
        for (double v : a)
            if (!std::isfinite(v)) return false;
    return true;
}

FormField& FormField::operator+=(const FormField& o) {
    if (!same_shape(o)) throw MeshMismatch("FormField +=: shape mismatch");
    for (size_t c = 0; c < comp_.size(); ++c)
        for (size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] += o.comp_[c][i];
    return *this;
}

FormField& FormField::operator-=(const FormField& o) {
    if (!same_shape(o)) throw MeshMismatch("FormField -=: shape mismatch");
    for (size_t c = 0; c < comp_.size(); ++c)
        for (size_t i = 0; i < comp_[c].size(); ++i) comp_[c][i] -= o.comp_[c][i];
    return *this;
}

FormField& FormField::operator*=(double s) {
    for (auto& a : comp_)
        for (double& v : a) v *= s;
    return *this;
}

FormField operator+(FormField a, const FormField& b) { return a += b; }
FormField operator-(FormField a, const FormField& b) { return a -= b; }
FormField operator*(double s, FormField a) { return a *= s; }

bool Region::contains(const std::array<int, 3>& ijk) const {
    if (whole) return true;
    for (size_t a = 0; a < 3; ++a)
        if (ijk[a] < lo[a] || ijk[a] >= hi[a]) return false;
    return true;
}

void Region::validate(const Mesh& mesh) const {
    if (whole) return;
    for (int a = 0; a < 3; ++a) {
        const auto s = static_cast<size_t>(a);
        if (lo[s] < 0 || hi[s] > mesh.dim(a) || lo[s] >= hi[s]) {
            throw std::invalid_argument("Region: box lies outside the mesh or is empty");
        }
    }
}

Array shift(const Array& f, const Mesh& mesh, int axis, int delta) {
    const auto& n = mesh.dims();
    const size_t extent = static_cast<size_t>(n[static_cast<size_t>(axis)]);
    size_t inner = 1;
    for (int a = axis + 1; a < 3; ++a) inner *= static_cast<size_t>(n[static_cast<size_t>(a)]);
    const size_t outer = f.size() / (extent * inner);
    const long ext = static_cast<long>(extent);
    const size_t off = static_cast<size_t>(((delta % ext) + ext) % ext);

    Array g(f.size());
    for (size_t o = 0; o < outer; ++o) {
        const double* src = f.data() + o * extent * inner;
        double* dst = g.data() + o * extent * inner;
        // g[i] = f[(i + off) mod extent], copied as two contiguous runs.
        std::copy(src + off * inner, src + extent * inner, dst);
        std::copy(src, src + off * inner, dst + (extent - off) * inner);
    }
    return g;
}

Array average(const Array& f, const Mesh& mesh, Location from, Location to) {
    Array cur = f;
    Location at = from;
    for (int a = 0; a < 3; ++a) {
        if (((at ^ to) & bit(a)) == 0) continue;
        // Half offset present: the target sits between i and i+1; absent: between i-1 and i.
        const Array nb = shift(cur, mesh, a, (at & bit(a)) ? -1 : 1);
        for (size_t i = 0; i < cur.size(); ++i) cur[i] = 0.5 * (cur[i] + nb[i]);
        at ^= bit(a);
    }
    return cur;
}

Array difference(const Array& f, const Mesh& mesh, Location from, int axis) {
    Array out(f.size());
    if (from & bit(axis)) {
        const Array prev = shift(f, mesh, axis, -1);
        for (size_t i = 0; i < f.size(); ++i) out[i] = f[i] - prev[i];
    } else {
        const Array next = shift(f, mesh, axis, 1);
        for (size_t i = 0; i < f.size(); ++i) out[i] = next[i] - f[i];
    }
    return out;
}

FormField exterior_derivative(const FormField& alpha) {
    const int q = alpha.degree();
    if (q > 2) throw DegreeError("exterior_derivative: input degree must be <= 2");
    const Mesh& m = alpha.mesh();
    const double inv = 1.0 / m.spacing();
    FormField out(m, q + 1, alpha.grid());

    if (q == 0) {
        for (int a = 0; a < 3; ++a) out[a] = difference(alpha[0], m, alpha.location(0), a);
    } else if (q == 1) {
        for (int a = 0; a < 3; ++a) {
            const int b = (a + 1) % 3, c = (a + 2) % 3;
            const Array dbc = difference(alpha[c], m, alpha.location(c), b);
            const Array dcb = difference(alpha[b], m, alpha.location(b), c);
            auto& o = out[a];
            for (size_t i = 0; i < o.size(); ++i) o[i] = dbc[i] - dcb[i];
        }
    } else {
        auto& o = out[0];
        for (int a = 0; a < 3; ++a) {
            const Array da = difference(alpha[a], m, alpha.location(a), a);
            for (size_t i = 0; i < o.size(); ++i) o[i] += da[i];
        }
    }
    out *= inv;
    return out;
}

FormField hodge_star(const FormField& alpha) {
    FormField out(alpha.mesh(), 3 - alpha.degree(), other(alpha.grid()));
    for (int c = 0; c < alpha.components(); ++c) out[c] = alpha[c];
    return out;
}

FormField wedge(const FormField& alpha, const FormField& beta) { return wedge(alpha, beta, alpha.grid()); }

FormField wedge(const FormField& alpha, const FormField& beta, Grid target) {
    require_same_mesh(alpha, beta, "wedge");
    const int p = alpha.degree(), q = beta.degree();
    if (p + q > 3) throw DegreeError("wedge: total degree exceeds 3");
    const auto terms = wedge_terms(p, q);
    const Mesh& m = alpha.mesh();
    FormField out(m, p + q, target);

    for (int oc = 0; oc < out.components(); ++oc) {
        const Location to = out.location(oc);
        auto& o = out[oc];
        for (const Term& t : terms[static_cast<size_t>(oc)]) {
            const Location la = alpha.location(t.a), lb = beta.location(t.b);
            if (la == lb) {
                Array prod(m.size());
                for (size_t i = 0; i < prod.size(); ++i) prod[i] = alpha[t.a][i] * beta[t.b][i];
                const Array moved = average(prod, m, la, to);
                for (size_t i = 0; i < o.size(); ++i) o[i] += t.sign * moved[i];
            } else {
                const Array fa = average(alpha[t.a], m, la, to);
                const Array fb = average(beta[t.b], m, lb, to);
                for (size_t i = 0; i < o.size(); ++i) o[i] += t.sign * (fa[i] * fb[i]);
            }
        }
    }
    return out;
}

double integrate(const FormField& omega, const Region& region) {
    if (omega.degree() != 3) throw DegreeError("integrate: a 3-form is required");
    const Mesh& m = omega.mesh();
    region.validate(m);
    double sum = 0.0;
    if (region.whole) {
        for (double v : omega[0]) sum += v;
    } else {
        for (int i = region.lo[0]; i < region.hi[0]; ++i)
            for (int j = region.lo[1]; j < region.hi[1]; ++j)
                for (int k = region.lo[2]; k < region.hi[2]; ++k) sum += omega[0][m.index(i, j, k)];
    }
    return sum * m.cell_volume();
}

FormField inner_product_1forms(const FormField& alpha, const FormField& beta) {
    if (alpha.degree() != 1 || beta.degree() != 1) throw DegreeError("inner_product_1forms: 1-forms required");
    require_same_mesh(alpha, beta, "inner_product_1forms");
    if (alpha.grid() != beta.grid()) throw MeshMismatch("inner_product_1forms: forms on different grids");
    const Mesh& m = alpha.mesh();
    FormField out(m, 0, alpha.grid());
    const Location to = out.location(0);
    for (int a = 0; a < 3; ++a) {
        const Array fa = average(alpha[a], m, alpha.location(a), to);
        const Array fb = average(beta[a], m, beta.location(a), to);
        for (size_t i = 0; i < fa.size(); ++i) out[0][i] += fa[i] * fb[i];
    }
    return out;
}

FormField poynting_form(const FormField& e, const FormField& h) {
    if (e.degree() != 1 || h.degree() != 1) throw DegreeError("poynting_form: 1-forms required");
    require_same_mesh(e, h, "poynting_form");
    if (e.grid() == h.grid()) throw MeshMismatch("poynting_form: e and h must live on opposite grids");
    const Mesh& m = e.mesh();
    FormField out(m, 2, h.grid());
    for (int a = 0; a < 3; ++a) {
        const Location to = out.location(a);
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        // +e_b h_c - e_c h_b; in each pair e and h are one half-cell apart along a.
        for (const auto& [ec, hc, sign] : {std::tuple{b, c, 1.0}, std::tuple{c, b, -1.0}}) {
            const Location lh = h.location(hc);
            const Array ea = average(e[ec], m, e.location(ec), lh);
            Array prod(m.size());
            for (size_t i = 0; i < prod.size(); ++i) prod[i] = ea[i] * h[hc][i];
            const Array moved = average(prod, m, lh, to);
            for (size_t i = 0; i < moved.size(); ++i) out[a][i] += sign * moved[i];
        }
    }
    return out;
}

}  // namespace cmx
