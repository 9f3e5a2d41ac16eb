// Electromagnetic fiber coordinates over the DEC grid.
//
// Placement of the fiber coordinates on the staggered complex:
//   e  primal 1-form (edges)        D  dual 2-form (stored on primal edges)
//   B  primal 2-form (faces)        h  dual 1-form (stored on primal faces)
//   energy  primal 0-form (nodes), as are all scalar densities below.
// The medium is sampled at cell centres; permittivity is averaged to edges
// and permeability to faces so both constitutive maps are diagonal.

#pragma once

#include "cmx/contact.hpp"
#include "cmx/dec.hpp"

#include <array>

namespace cmx {

enum class Orientation { DB, EH };

class MediumProfile {
public:
    MediumProfile() = default;
    /// Cell-centred samples; both must be strictly positive and finite.
    MediumProfile(Mesh mesh, Array eps_cell, Array mu_cell);

    static MediumProfile uniform(const Mesh& mesh, double eps, double mu);
    static MediumProfile vacuum(const Mesh& mesh) { return uniform(mesh, 1.0, 1.0); }
    /// eps0 * sech^2((z3 - L3/2) / width) along the third axis, constant mu0.
    static MediumProfile sech_slab(const Mesh& mesh, double eps0, double width, double mu0);

    const Mesh& mesh() const { return mesh_; }
    const Array& eps_cell() const { return eps_cell_; }
    const Array& mu_cell() const { return mu_cell_; }
    const Array& eps_edge(int a) const { return eps_edge_[static_cast<size_t>(a)]; }
    const Array& mu_face(int a) const { return mu_face_[static_cast<size_t>(a)]; }
    double eps_min() const { return eps_min_; }
    double mu_min() const { return mu_min_; }
    bool uniform_medium() const { return uniform_; }

private:
    Mesh mesh_;
    Array eps_cell_, mu_cell_;
    std::array<Array, 3> eps_edge_, mu_face_;
    double eps_min_ = 1.0, mu_min_ = 1.0;
    bool uniform_ = true;
};

struct MaxwellState {
    FormField D;       // dual 2-form
    FormField B;       // primal 2-form
    FormField e;       // primal 1-form
    FormField h;       // dual 1-form
    FormField energy;  // primal 0-form
    double time = 0.0;

    static MaxwellState zero(const Mesh& mesh);
    const Mesh& mesh() const { return D.mesh(); }
    bool finite() const;
    /// Throws MeshMismatch unless every field has its expected degree, grid and mesh.
    void validate() const;
};

/// Interpolation of a cell-centred or staggered scalar onto the nodes.
FormField to_nodes(const Array& values, const Mesh& mesh, Location from);

FormField energy_density(const FormField& D, const FormField& B, const MediumProfile& m);
FormField coenergy_density(const FormField& e, const FormField& h, const MediumProfile& m);
/// delta_ab D^a e_b + delta_ab B^a h_b, each product formed where both factors live.
FormField pairing_density(const FormField& D, const FormField& B, const FormField& e, const FormField& h);

/// Integral of a 0-form density against the volume form.
double functional(const FormField& density, const Region& region = Region::all());

struct Intensities {
    FormField e, h;
};
struct Inductions {
    FormField D, B;
};

FormField electric_intensity(const FormField& D, const MediumProfile& m);  // (1/eps) star D
FormField magnetic_intensity(const FormField& B, const MediumProfile& m);  // (1/mu) star B
FormField electric_induction(const FormField& e, const MediumProfile& m);  // eps star e
FormField magnetic_induction(const FormField& h, const MediumProfile& m);  // mu star h

Intensities intensity_from_induction(const FormField& D, const FormField& B, const MediumProfile& m);
Inductions induction_from_intensity(const FormField& e, const FormField& h, const MediumProfile& m);

/// On-shell state for the given inductions: intensities from the medium,
/// energy equal to the energy density.
MaxwellState state_from_induction(const FormField& D, const FormField& B, const MediumProfile& m,
                                  double time = 0.0);
MaxwellState state_from_intensity(const FormField& e, const FormField& h, const MediumProfile& m,
                                  double time = 0.0);

struct PhaseResiduals {
    Orientation orientation = Orientation::DB;
    FormField delta_energy;
    FormField delta_De;
    FormField delta_Bh;

    double max_abs() const;
};

PhaseResiduals phase_residuals(const MaxwellState& s, const MediumProfile& m, Orientation o);

FormField contact_hamiltonian_density(const MaxwellState& s, const MediumProfile& m, Orientation o,
                                      double kappa = 1.0);

// Single-cell view: x = (D1, D2, D3, B1, B2, B3), p = (e1, e2, e3, h1, h2, h3).

double psi_em(const Vec& x, double eps, double mu);
double phi_em(const Vec& p, double eps, double mu);
Vec psi_em_gradient(const Vec& x, double eps, double mu);
Vec phi_em_gradient(const Vec& p, double eps, double mu);

/// psi^EM as an XType generator with exact (zero) third derivatives.
Generator psi_em_generator(double eps, double mu);
/// phi^EM as a PType generator.
Generator phi_em_generator(double eps, double mu);

}  // namespace cmx
