/**
 * @file  distances.cpp
 * @brief Implementations of the e/d/h/f distance functions and moduli.
 */
#include "opalg/distances.hpp"

#include <algorithm>
#include <cmath>

#include "opalg/eig.hpp"

namespace opalg {

double dist_e(const Mat& x, const Mat& y) {
    require_dim_match(x, y);
    return op_norm(x - y);
}

double dist_d(const Mat& a, const Mat& b) {
    require_dim_match(a, b);
    // a·b⊥ is not Hermitian in general; op_norm handles the general case.
    return op_norm(a - a * b);
}

double dist_h(const Mat& a, const Mat& b) {
    require_dim_match(a, b);
    return pos_part_norm(a - b);
}

double dist_f(const Mat& a, const Mat& b) {
    require_dim_match(a, b);
    const Mat ra = sqrt_psd(a);
    Mat core = ra * b * ra;          // √a b √a
    Mat rest = a - core.hermitized();  // a ⊙ b⊥ = √a(1−b)√a, PSD for b ≤ 1
    return pos_part_norm(rest.hermitized());
}

double dist_e(const PosContraction& a, const PosContraction& b) { return dist_e(a.mat(), b.mat()); }
double dist_d(const PosContraction& a, const PosContraction& b) { return dist_d(a.mat(), b.mat()); }
double dist_h(const PosContraction& a, const PosContraction& b) { return dist_h(a.mat(), b.mat()); }

double dist_f(const PosContraction& a, const PosContraction& b) {
    const Mat ra = a.sqrt();  // cached spectrum
    Mat rest = a.mat() - (ra * b.mat() * ra).hermitized();
    return pos_part_norm(rest.hermitized());
}

std::function<double(const PosContraction&)> slice(const std::string& name,
                                                   const PosContraction& fixed,
                                                   SliceSide side) {
    double (*fn)(const PosContraction&, const PosContraction&) = nullptr;
    if (name == "e") fn = static_cast<double (*)(const PosContraction&, const PosContraction&)>(&dist_e);
    else if (name == "d") fn = static_cast<double (*)(const PosContraction&, const PosContraction&)>(&dist_d);
    else if (name == "h") fn = static_cast<double (*)(const PosContraction&, const PosContraction&)>(&dist_h);
    else if (name == "f") fn = static_cast<double (*)(const PosContraction&, const PosContraction&)>(&dist_f);
    else throw Error("unknown_distance", "no distance named '" + name + "'");

    if (side == SliceSide::left)
        return [fn, fixed](const PosContraction& x) { return fn(fixed, x); };
    return [fn, fixed](const PosContraction& x) { return fn(x, fixed); };
}

ModulusCurve::ModulusCurve(std::vector<double> radii_in, std::vector<double> sups_in)
    : radii(std::move(radii_in)), sup_values(std::move(sups_in)) {
    if (radii.size() != sup_values.size())
        throw Error("bad_shape", "modulus curve lists differ in length");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw Error("bad_value", "modulus radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw Error("bad_value", "modulus radii must be strictly decreasing");
        if (!(sup_values[i] >= 0.0)) throw Error("bad_value", "modulus sups must be >= 0");
    }
}

std::vector<double> default_radius_grid() {
    std::vector<double> r;
    for (int k = 1; k <= 10; ++k) r.push_back(std::ldexp(1.0, -k));
    return r;
}

ModulusCurve modulus_estimate(const std::function<double(const PosContraction&)>& F,
                              const std::function<double(const PosContraction&)>& G,
                              const std::vector<PosContraction>& samples,
                              const std::vector<double>& radii) {
    if (samples.empty()) throw Error("empty_samples", "modulus estimation needs samples");
    std::vector<double> fvals, gvals;
    fvals.reserve(samples.size());
    gvals.reserve(samples.size());
    for (const auto& x : samples) {
        fvals.push_back(F(x));
        gvals.push_back(G(x));
    }
    std::vector<double> sups(radii.size(), 0.0);
    for (size_t k = 0; k < radii.size(); ++k)
        for (size_t i = 0; i < samples.size(); ++i)
            if (gvals[i] <= radii[k]) sups[k] = std::max(sups[k], fvals[i]);
    return ModulusCurve(radii, sups);
}

}  // namespace opalg
