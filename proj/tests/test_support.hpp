// Small helpers shared by the unit tests.

#pragma once

#include "cmx/contact.hpp"
#include "cmx/dec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace cmx::test {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    Vec vec(int n, double scale = 1.0) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = scale * normal();
        return v;
    }

    /// Symmetric positive definite with eigenvalues in [lo, hi].
    Mat spd(int n, double lo, double hi) {
        Mat q = Mat::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) { return normal(); });
        Eigen::HouseholderQR<Mat> qr(q);
        const Mat Q = qr.householderQ();
        Vec d(n);
        for (int i = 0; i < n; ++i) d[i] = uniform(lo, hi);
        return Q * d.asDiagonal() * Q.transpose();
    }

    FormField form(const Mesh& mesh, int degree, Grid grid = Grid::Primal) {
        FormField f(mesh, degree, grid);
        for (int c = 0; c < f.components(); ++c)
            for (double& v : f[c]) v = uniform(-1.0, 1.0);
        return f;
    }

private:
    std::mt19937_64 gen_;
};

inline double max_abs_diff(const FormField& a, const FormField& b) {
    double worst = 0.0;
    for (int c = 0; c < a.components(); ++c)
        for (size_t i = 0; i < a[c].size(); ++i) worst = std::max(worst, std::abs(a[c][i] - b[c][i]));
    return worst;
}

inline double rms(const Array& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace cmx::test
