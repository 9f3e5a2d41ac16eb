// Discrete exterior calculus on a uniform periodic cubic grid.
//
// Every form lives on either the primal complex or the dual complex (the
// primal one shifted by half a cell along each axis).  A component is
// stored on an N1 x N2 x N3 array, row-major with the third axis fastest;
// entry (i,j,k) sits at (i,j,k) + offset, where the offset is half a cell
// along every axis set in the component's location mask:
//
//   primal 0-form       : {}          dual 0-form       : {1,2,3}
//   primal 1-form, a    : {a}         dual 1-form, a    : {b,c}
//   primal 2-form, a    : {b,c}       dual 2-form, a    : {a}
//   primal 3-form       : {1,2,3}     dual 3-form       : {}
//
// with (a,b,c) a cyclic permutation of (1,2,3).  Component a of a 2-form is
// the coefficient of sigma^b ^ sigma^c.  Components are taken against the
// unit orthonormal coframe, so the Hodge star maps a primal q-form to the
// dual (3-q)-form at the same locations by relabelling alone.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cmx {

enum class Grid { Primal, Dual };

inline Grid other(Grid g) { return g == Grid::Primal ? Grid::Dual : Grid::Primal; }

/// Bitmask of axes carrying a half-cell offset (bit a for axis a = 0,1,2).
using Location = unsigned;

class Mesh {
public:
    Mesh() = default;
    Mesh(std::array<int, 3> dims, double spacing);

    const std::array<int, 3>& dims() const { return dims_; }
    int dim(int axis) const { return dims_[static_cast<size_t>(axis)]; }
    double spacing() const { return spacing_; }
    size_t size() const { return size_; }
    double length(int axis) const { return dim(axis) * spacing_; }
    double cell_volume() const { return spacing_ * spacing_ * spacing_; }

    size_t index(int i, int j, int k) const {
        return (static_cast<size_t>(i) * static_cast<size_t>(dims_[1]) + static_cast<size_t>(j)) *
                   static_cast<size_t>(dims_[2]) +
               static_cast<size_t>(k);
    }
    std::array<int, 3> unravel(size_t idx) const;

    /// Physical coordinate of entry (i,j,k) at the given location.
    std::array<double, 3> position(Location loc, int i, int j, int k) const;

    bool operator==(const Mesh& o) const { return dims_ == o.dims_ && spacing_ == o.spacing_; }
    bool operator!=(const Mesh& o) const { return !(*this == o); }

private:
    std::array<int, 3> dims_{0, 0, 0};
    double spacing_ = 1.0;
    size_t size_ = 0;
};

class MeshMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

int num_components(int degree);
Location location(int degree, Grid grid, int component);

using Array = std::vector<double>;

class FormField {
public:
    FormField() = default;
    FormField(Mesh mesh, int degree, Grid grid = Grid::Primal);

    /// Every component set to the corresponding entry of `values`.
    static FormField constant(const Mesh& mesh, int degree, Grid grid, const std::vector<double>& values);

    /// Components sampled from f(component, position).
    static FormField sample(const Mesh& mesh, int degree, Grid grid,
                            const std::function<double(int, const std::array<double, 3>&)>& f);

    const Mesh& mesh() const { return mesh_; }
    int degree() const { return degree_; }
    Grid grid() const { return grid_; }
    int components() const { return static_cast<int>(comp_.size()); }
    Location location(int c) const { return cmx::location(degree_, grid_, c); }

    Array& operator[](int c) { return comp_[static_cast<size_t>(c)]; }
    const Array& operator[](int c) const { return comp_[static_cast<size_t>(c)]; }

    double max_abs() const;
    bool finite() const;
    bool same_shape(const FormField& o) const {
        return mesh_ == o.mesh_ && degree_ == o.degree_ && grid_ == o.grid_;
    }

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(double s);
    bool operator==(const FormField& o) const { return same_shape(o) && comp_ == o.comp_; }

private:
    Mesh mesh_;
    int degree_ = 0;
    Grid grid_ = Grid::Primal;
    std::vector<Array> comp_;
};

FormField operator+(FormField a, const FormField& b);
FormField operator-(FormField a, const FormField& b);
FormField operator*(double s, FormField a);

/// Axis-aligned half-open index box [lo, hi), or the whole periodic domain.
struct Region {
    bool whole = true;
    std::array<int, 3> lo{0, 0, 0};
    std::array<int, 3> hi{0, 0, 0};

    static Region all() { return Region{}; }
    static Region box(std::array<int, 3> lo, std::array<int, 3> hi) { return Region{false, lo, hi}; }
    bool contains(const std::array<int, 3>& ijk) const;
    void validate(const Mesh& mesh) const;
};

// Array kernels shared by the field-level operators.

/// g(i) = f(i + delta) along `axis`, periodic.
Array shift(const Array& f, const Mesh& mesh, int axis, int delta);
/// Two-point means along every axis where `from` and `to` differ.
Array average(const Array& f, const Mesh& mesh, Location from, Location to);
/// Undivided difference along `axis`; the result sits at from ^ (1 << axis).
Array difference(const Array& f, const Mesh& mesh, Location from, int axis);

FormField exterior_derivative(const FormField& alpha);
FormField hodge_star(const FormField& alpha);

/// Supported degree pairs: (0,q), (q,0), (1,1), (1,2), (2,1).  Factors that
/// share a location are multiplied there and the product is averaged to the
/// target; otherwise each factor is averaged to the target first.  The
/// result lives on `target`, defaulting to the grid of `alpha`.
FormField wedge(const FormField& alpha, const FormField& beta);
FormField wedge(const FormField& alpha, const FormField& beta, Grid target);

/// Sum of cell densities times the cell volume over `region`.
double integrate(const FormField& omega, const Region& region = Region::all());

/// delta^{ab} alpha_a beta_b with each factor averaged to the 0-form
/// location first.
FormField inner_product_1forms(const FormField& alpha, const FormField& beta);

/// e ^ h for a 1-form `e` and a 1-form `h` on the opposite grid.  Each
/// product is formed where h sits, after averaging e along the propagation
/// axis, and then averaged to the 2-form location.  This placement obeys
/// the product rule  d(e ^ h) = de ^ h - e ^ dh  exactly, with the right
/// side evaluated by `wedge` onto the grid of h.
FormField poynting_form(const FormField& e, const FormField& h);

}  // namespace cmx
