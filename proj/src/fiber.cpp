#include "cmx/fiber.hpp"

#include <algorithm>
#include <cmath>

namespace cmx {

namespace {

void require_positive(const Array& a, const char* what) {
    for (double v : a) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("MediumProfile: ") + what + " must be finite and positive");
        }
    }
}

void require_medium_mesh(const FormField& f, const MediumProfile& m, const char* what) {
    if (f.mesh() != m.mesh()) throw MeshMismatch(std::string(what) + ": field and medium use different meshes");
}

void require_kind(const FormField& f, int degree, Grid grid, const char* what) {
    if (f.degree() != degree || f.grid() != grid) {
        throw DegreeError(std::string(what) + ": unexpected form degree or grid");
    }
}

// Sum over components of avg_to_node(w * f_c * g_c), weights per component.
FormField collocated_sum(const FormField& f, const FormField& g, const std::array<const Array*, 3>& weight,
                         double scale) {
    const Mesh& mesh = f.mesh();
    FormField out(mesh, 0, Grid::Primal);
    Array prod(mesh.size());
    for (int c = 0; c < f.components(); ++c) {
        const Array& fc = f[c];
        const Array& gc = g[c];
        const Array* w = weight[static_cast<size_t>(c)];
        for (size_t i = 0; i < prod.size(); ++i) prod[i] = scale * fc[i] * gc[i] * (w ? (*w)[i] : 1.0);
        const Array node = average(prod, mesh, f.location(c), 0u);
        for (size_t i = 0; i < node.size(); ++i) out[0][i] += node[i];
    }
    return out;
}

FormField scaled(const FormField& f, const std::array<Array, 3>& factor, bool divide) {
    FormField out = f;
    for (int c = 0; c < out.components(); ++c) {
        const Array& s = factor[static_cast<size_t>(c)];
        auto& o = out[c];
        if (divide) {
            for (size_t i = 0; i < o.size(); ++i) o[i] /= s[i];
        } else {
            for (size_t i = 0; i < o.size(); ++i) o[i] *= s[i];
        }
    }
    return out;
}

std::array<Array, 3> eps_edges(const MediumProfile& m) { return {m.eps_edge(0), m.eps_edge(1), m.eps_edge(2)}; }
std::array<Array, 3> mu_faces(const MediumProfile& m) { return {m.mu_face(0), m.mu_face(1), m.mu_face(2)}; }

// Medium weights for products on edges and faces.
std::array<Array, 3> reciprocal(const std::array<Array, 3>& a) {
    std::array<Array, 3> r = a;
    for (auto& v : r)
        for (double& x : v) x = 1.0 / x;
    return r;
}

}  // namespace

MediumProfile::MediumProfile(Mesh mesh, Array eps_cell, Array mu_cell)
    : mesh_(std::move(mesh)), eps_cell_(std::move(eps_cell)), mu_cell_(std::move(mu_cell)) {
    if (eps_cell_.size() != mesh_.size() || mu_cell_.size() != mesh_.size()) {
        throw std::invalid_argument("MediumProfile: sample arrays do not match the mesh");
    }
    require_positive(eps_cell_, "permittivity");
    require_positive(mu_cell_, "permeability");
    for (int a = 0; a < 3; ++a) {
        const Location edge = 1u << a;
        eps_edge_[static_cast<size_t>(a)] = average(eps_cell_, mesh_, 7u, edge);
        mu_face_[static_cast<size_t>(a)] = average(mu_cell_, mesh_, 7u, 7u ^ edge);
    }
    eps_min_ = *std::min_element(eps_cell_.begin(), eps_cell_.end());
    mu_min_ = *std::min_element(mu_cell_.begin(), mu_cell_.end());
    const auto constant = [](const Array& a) {
        return std::all_of(a.begin(), a.end(), [&](double v) { return v == a.front(); });
    };
    uniform_ = constant(eps_cell_) && constant(mu_cell_);
}

MediumProfile MediumProfile::uniform(const Mesh& mesh, double eps, double mu) {
    return MediumProfile(mesh, Array(mesh.size(), eps), Array(mesh.size(), mu));
}

MediumProfile MediumProfile::sech_slab(const Mesh& mesh, double eps0, double width, double mu0) {
    if (!(width > 0.0)) throw std::invalid_argument("sech_slab: width must be positive");
    Array eps(mesh.size());
    const double centre = 0.5 * mesh.length(2);
    for (size_t idx = 0; idx < eps.size(); ++idx) {
        const auto ijk = mesh.unravel(idx);
        const double z3 = (ijk[2] + 0.5) * mesh.spacing();
        const double s = 1.0 / std::cosh((z3 - centre) / width);
        eps[idx] = eps0 * s * s;
    }
    return MediumProfile(mesh, std::move(eps), Array(mesh.size(), mu0));
}

MaxwellState MaxwellState::zero(const Mesh& mesh) {
    MaxwellState s;
    s.D = FormField(mesh, 2, Grid::Dual);
    s.B = FormField(mesh, 2, Grid::Primal);
    s.e = FormField(mesh, 1, Grid::Primal);
    s.h = FormField(mesh, 1, Grid::Dual);
    s.energy = FormField(mesh, 0, Grid::Primal);
    return s;
}

bool MaxwellState::finite() const {
    return D.finite() && B.finite() && e.finite() && h.finite() && energy.finite() && std::isfinite(time);
}

void MaxwellState::validate() const {
    require_kind(D, 2, Grid::Dual, "MaxwellState.D");
    require_kind(B, 2, Grid::Primal, "MaxwellState.B");
    require_kind(e, 1, Grid::Primal, "MaxwellState.e");
    require_kind(h, 1, Grid::Dual, "MaxwellState.h");
    require_kind(energy, 0, Grid::Primal, "MaxwellState.energy");
    const Mesh& m = D.mesh();
    if (B.mesh() != m || e.mesh() != m || h.mesh() != m || energy.mesh() != m) {
        throw MeshMismatch("MaxwellState: fields live on different meshes");
    }
}

FormField to_nodes(const Array& values, const Mesh& mesh, Location from) {
    FormField out(mesh, 0, Grid::Primal);
    out[0] = average(values, mesh, from, 0u);
    return out;
}

FormField energy_density(const FormField& D, const FormField& B, const MediumProfile& m) {
    require_kind(D, 2, Grid::Dual, "energy_density D");
    require_kind(B, 2, Grid::Primal, "energy_density B");
    require_medium_mesh(D, m, "energy_density");
    require_medium_mesh(B, m, "energy_density");
    const auto inv_eps = reciprocal(eps_edges(m));
    const auto inv_mu = reciprocal(mu_faces(m));
    FormField out = collocated_sum(D, D, {&inv_eps[0], &inv_eps[1], &inv_eps[2]}, 0.5);
    out += collocated_sum(B, B, {&inv_mu[0], &inv_mu[1], &inv_mu[2]}, 0.5);
    return out;
}

FormField coenergy_density(const FormField& e, const FormField& h, const MediumProfile& m) {
    require_kind(e, 1, Grid::Primal, "coenergy_density e");
    require_kind(h, 1, Grid::Dual, "coenergy_density h");
    require_medium_mesh(e, m, "coenergy_density");
    require_medium_mesh(h, m, "coenergy_density");
    FormField out = collocated_sum(e, e, {&m.eps_edge(0), &m.eps_edge(1), &m.eps_edge(2)}, 0.5);
    out += collocated_sum(h, h, {&m.mu_face(0), &m.mu_face(1), &m.mu_face(2)}, 0.5);
    return out;
}

FormField pairing_density(const FormField& D, const FormField& B, const FormField& e, const FormField& h) {
    if (D.mesh() != e.mesh() || B.mesh() != h.mesh() || D.mesh() != B.mesh()) {
        throw MeshMismatch("pairing_density: fields live on different meshes");
    }
    FormField out = collocated_sum(D, e, {nullptr, nullptr, nullptr}, 1.0);
    out += collocated_sum(B, h, {nullptr, nullptr, nullptr}, 1.0);
    return out;
}

double functional(const FormField& density, const Region& region) {
    if (density.degree() != 0) throw DegreeError("functional: a 0-form density is required");
    return integrate(hodge_star(density), region);
}

FormField electric_intensity(const FormField& D, const MediumProfile& m) {
    require_kind(D, 2, Grid::Dual, "electric_intensity");
    require_medium_mesh(D, m, "electric_intensity");
    return scaled(hodge_star(D), eps_edges(m), true);
}

FormField magnetic_intensity(const FormField& B, const MediumProfile& m) {
    require_kind(B, 2, Grid::Primal, "magnetic_intensity");
    require_medium_mesh(B, m, "magnetic_intensity");
    return scaled(hodge_star(B), mu_faces(m), true);
}

FormField electric_induction(const FormField& e, const MediumProfile& m) {
    require_kind(e, 1, Grid::Primal, "electric_induction");
    require_medium_mesh(e, m, "electric_induction");
    return hodge_star(scaled(e, eps_edges(m), false));
}

FormField magnetic_induction(const FormField& h, const MediumProfile& m) {
    require_kind(h, 1, Grid::Dual, "magnetic_induction");
    require_medium_mesh(h, m, "magnetic_induction");
    return hodge_star(scaled(h, mu_faces(m), false));
}

Intensities intensity_from_induction(const FormField& D, const FormField& B, const MediumProfile& m) {
    return {electric_intensity(D, m), magnetic_intensity(B, m)};
}

Inductions induction_from_intensity(const FormField& e, const FormField& h, const MediumProfile& m) {
    return {electric_induction(e, m), magnetic_induction(h, m)};
}

MaxwellState state_from_induction(const FormField& D, const FormField& B, const MediumProfile& m, double time) {
    MaxwellState s;
    s.D = D;
    s.B = B;
    auto [e, h] = intensity_from_induction(D, B, m);
    s.e = std::move(e);
    s.h = std::move(h);
    s.energy = energy_density(D, B, m);
    s.time = time;
    return s;
}

MaxwellState state_from_intensity(const FormField& e, const FormField& h, const MediumProfile& m, double time) {
    MaxwellState s;
    auto [D, B] = induction_from_intensity(e, h, m);
    s.D = std::move(D);
    s.B = std::move(B);
    s.e = e;
    s.h = h;
    s.energy = energy_density(s.D, s.B, m);
    s.time = time;
    return s;
}

double PhaseResiduals::max_abs() const {
    return std::max({delta_energy.max_abs(), delta_De.max_abs(), delta_Bh.max_abs()});
}

PhaseResiduals phase_residuals(const MaxwellState& s, const MediumProfile& m, Orientation o) {
    s.validate();
    PhaseResiduals r;
    r.orientation = o;
    if (o == Orientation::DB) {
        auto [e, h] = intensity_from_induction(s.D, s.B, m);
        r.delta_energy = energy_density(s.D, s.B, m) - s.energy;
        r.delta_De = e - s.e;
        r.delta_Bh = h - s.h;
    } else {
        auto [D, B] = induction_from_intensity(s.e, s.h, m);
        r.delta_energy = pairing_density(s.D, s.B, s.e, s.h) - coenergy_density(s.e, s.h, m) - s.energy;
        r.delta_De = s.D - D;
        r.delta_Bh = s.B - B;
    }
    return r;
}

FormField contact_hamiltonian_density(const MaxwellState& s, const MediumProfile& m, Orientation o,
                                      double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("contact_hamiltonian_density: kappa must be positive");
    const PhaseResiduals r = phase_residuals(s, m, o);
    FormField F_De, F_Bh;
    if (o == Orientation::DB) {
        auto [e, h] = intensity_from_induction(s.D, s.B, m);
        F_De = exterior_derivative(h);
        F_Bh = -1.0 * exterior_derivative(e);
    } else {
        F_De = electric_intensity(exterior_derivative(s.h), m);
        F_Bh = -1.0 * magnetic_intensity(exterior_derivative(s.e), m);
    }
    FormField out = hodge_star(wedge(r.delta_De, F_De, Grid::Dual));
    out += hodge_star(wedge(r.delta_Bh, F_Bh, Grid::Dual));
    out += kappa * r.delta_energy;
    return out;
}

double psi_em(const Vec& x, double eps, double mu) {
    if (x.size() != 6) throw DimensionError("psi_em: expected 6 fiber coordinates");
    return 0.5 * (x.head<3>().squaredNorm() / eps + x.tail<3>().squaredNorm() / mu);
}

double phi_em(const Vec& p, double eps, double mu) {
    if (p.size() != 6) throw DimensionError("phi_em: expected 6 fiber coordinates");
    return 0.5 * (eps * p.head<3>().squaredNorm() + mu * p.tail<3>().squaredNorm());
}

Vec psi_em_gradient(const Vec& x, double eps, double mu) {
    if (x.size() != 6) throw DimensionError("psi_em_gradient: expected 6 fiber coordinates");
    Vec g(6);
    g << x.head<3>() / eps, x.tail<3>() / mu;
    return g;
}

Vec phi_em_gradient(const Vec& p, double eps, double mu) {
    if (p.size() != 6) throw DimensionError("phi_em_gradient: expected 6 fiber coordinates");
    Vec g(6);
    g << eps * p.head<3>(), mu * p.tail<3>();
    return g;
}

Generator psi_em_generator(double eps, double mu) {
    if (!(eps > 0.0) || !(mu > 0.0)) throw std::invalid_argument("psi_em_generator: medium must be positive");
    Vec d(6);
    d << 1.0 / eps, 1.0 / eps, 1.0 / eps, 1.0 / mu, 1.0 / mu, 1.0 / mu;
    Generator g = quadratic_generator(GeneratorKind::XType, d.asDiagonal().toDenseMatrix());
    g.value = [eps, mu](const Vec& x) { return psi_em(x, eps, mu); };
    g.gradient = [eps, mu](const Vec& x) { return psi_em_gradient(x, eps, mu); };
    return g;
}

Generator phi_em_generator(double eps, double mu) {
    if (!(eps > 0.0) || !(mu > 0.0)) throw std::invalid_argument("phi_em_generator: medium must be positive");
    Vec d(6);
    d << eps, eps, eps, mu, mu, mu;
    Generator g = quadratic_generator(GeneratorKind::PType, d.asDiagonal().toDenseMatrix());
    g.value = [eps, mu](const Vec& p) { return phi_em(p, eps, mu); };
    g.gradient = [eps, mu](const Vec& p) { return phi_em_gradient(p, eps, mu); };
    return g;
}

}  // namespace cmx
