/**
 * @file  sampling.cpp
 * @brief Random-operator generators built on the counter-based stream.
 */
#include "opalg/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace opalg {

namespace {

/// Modified Gram-Schmidt on the columns of g, in place.
void orthonormalize_columns(Mat& g) {
    const int n = g.dim();
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                cplx dot{0.0, 0.0};
                for (int i = 0; i < n; ++i) dot += std::conj(g.at(i, k)) * g.at(i, j);
                for (int i = 0; i < n; ++i) g.at(i, j) -= dot * g.at(i, k);
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(g.at(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            // Degenerate draw (probability ~0); restart the column with a
            // fixed direction, which the next pass re-orthogonalizes.
            for (int i = 0; i < n; ++i) g.at(i, j) = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            j -= 1;
            continue;
        }
        for (int i = 0; i < n; ++i) g.at(i, j) /= norm;
    }
}

/// Assemble V diag(vals) V*.
Mat from_spectrum(const Mat& v, const std::vector<double>& vals) {
    const int n = v.dim();
    Mat out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < n; ++k) s += v.at(i, k) * vals[static_cast<size_t>(k)] * std::conj(v.at(j, k));
            out.at(i, j) = s;
        }
    return out.hermitized();
}

}  // namespace

Mat random_unitary(Rng& rng, int n) {
    require_valid_dim(n);
    Mat g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = cplx{rng.gaussian(), rng.gaussian()};
    orthonormalize_columns(g);
    return g;
}

PosContraction random_pos_contraction(Rng& rng, int n) {
    const Mat v = random_unitary(rng, n);
    std::vector<double> vals(static_cast<size_t>(n));
    for (auto& x : vals) x = rng.uniform01();
    return PosContraction(from_spectrum(v, vals));
}

Mat random_herm_contraction(Rng& rng, int n) {
    const Mat v = random_unitary(rng, n);
    std::vector<double> vals(static_cast<size_t>(n));
    for (auto& x : vals) x = rng.uniform(-1.0, 1.0);
    return from_spectrum(v, vals);
}

Mat random_herm(Rng& rng, int n, double scale) {
    require_valid_dim(n);
    Mat g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = cplx{rng.gaussian(), rng.gaussian()};
    Mat h = g.hermitized();
    const double norm = herm_norm(h);
    if (norm > 0.0) h *= (scale / norm);
    return h;
}

Projection random_projection(Rng& rng, int n, int rank) {
    require_valid_dim(n);
    if (rank < 0) rank = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    if (rank > n) throw Error("bad_rank", "projection rank exceeds dimension");
    const Mat v = random_unitary(rng, n);
    std::vector<double> vals(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < rank; ++k) vals[static_cast<size_t>(k)] = 1.0;
    return Projection(from_spectrum(v, vals));
}

Quasistate random_quasistate(Rng& rng, int n) {
    require_valid_dim(n);
    Mat g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = cplx{rng.gaussian(), rng.gaussian()};
    Mat w = g * g.adjoint();
    const double tr = w.trace().real();
    if (tr < 1e-12) throw Error("degenerate_draw", "quasistate draw collapsed");
    const double mass = rng.uniform01();
    w *= (mass / tr);
    return Quasistate(w.hermitized());
}

std::pair<PosContraction, PosContraction> random_commuting_pair(Rng& rng, int n) {
    const Mat v = random_unitary(rng, n);
    std::vector<double> va(static_cast<size_t>(n)), vb(static_cast<size_t>(n));
    for (auto& x : va) x = rng.uniform01();
    for (auto& x : vb) x = rng.uniform01();
    return {PosContraction(from_spectrum(v, va)), PosContraction(from_spectrum(v, vb))};
}

PosContraction normalized_to_sphere(const PosContraction& a) {
    const auto& eig = a.eig();
    const double top = eig.max_value();
    if (top < 1e-12) throw Error("zero_operator", "cannot normalize the zero operator");
    return PosContraction(eig.apply([top](double x) { return std::clamp(x / top, 0.0, 1.0); }));
}

}  // namespace opalg
