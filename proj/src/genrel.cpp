/**
 * @file  genrel.cpp
 * @brief Min-plus relation algebra, filter predicates, Boolean-lattice model.
 */
#include "opalg/genrel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "opalg/distances.hpp"
#include "opalg/eig.hpp"

namespace opalg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GenRelation::GenRelation(std::vector<std::string> pts, std::vector<double> vals)
    : points(std::move(pts)), values(std::move(vals)) {
    const size_t n = points.size();
    if (values.size() != n * n) throw Error("bad_shape", "relation matrix is not |X| by |X|");
    for (double v : values) {
        if (std::isnan(v)) throw Error("non_finite", "relation entries must not be NaN");
        if (v < 0.0) throw Error("bad_value", "relation entries must be >= 0");
    }
}

GenRelation GenRelation::characteristic(std::vector<std::string> pts,
                                        const std::function<bool(int, int)>& related) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> vals(static_cast<size_t>(n) * n, kInf);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (related(i, j)) vals[static_cast<size_t>(i) * n + j] = 0.0;
    return GenRelation(std::move(pts), std::move(vals));
}

GenRelation GenRelation::equality(std::vector<std::string> pts) {
    return characteristic(std::move(pts), [](int i, int j) { return i == j; });
}

GenRelation compose(const GenRelation& d, const GenRelation& e) {
    if (d.points != e.points) throw Error("ground_mismatch", "composition needs one ground set");
    const int n = d.size();
    GenRelation out = d;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double best = kInf;
            for (int z = 0; z < n; ++z) best = std::min(best, d.at(x, z) + e.at(z, y));
            out.at(x, y) = best;
        }
    return out;
}

GenRelation zero_set(const GenRelation& d, double tol) {
    GenRelation out = d;
    for (double& v : out.values) v = (v <= tol) ? 0.0 : kInf;
    return out;
}

bool is_distance(const GenRelation& d, double tol) {
    const GenRelation dd = compose(d, d);
    for (size_t i = 0; i < d.values.size(); ++i)
        if (!(d.values[i] <= dd.values[i] + tol)) return false;
    return true;
}

GenRelation tilde_compose(const GenRelation& d, const GenRelation& e,
                          const std::vector<double>& r_grid) {
    if (r_grid.empty()) throw Error("empty_grid", "tilde composition needs scale factors");
    for (double r : r_grid)
        if (!(r >= 0.0)) throw Error("bad_grid", "scale factors must be >= 0");
    GenRelation out = d;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    GenRelation scaled = d;
    for (double r : r_grid) {
        for (size_t i = 0; i < d.values.size(); ++i)
            // r·(+inf) stays +inf for every r >= 0: the continuous extension
            // from r > 0 keeps unrelated pairs unrelated.
            scaled.values[i] = std::isinf(d.values[i]) ? kInf : r * d.values[i];
        const GenRelation comp = compose(scaled, e);
        for (size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = std::max(out.values[i], comp.values[i]);
    }
    return out;
}

namespace {

std::vector<int> sorted_unique(const std::vector<int>& y, int n) {
    std::vector<int> out = y;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int i : out)
        if (i < 0 || i >= n) throw Error("bad_index", "subset index outside the ground set");
    return out;
}

double inf_to(const GenRelation& d, const std::vector<int>& y, int target) {
    double best = kInf;
    for (int c : y) best = std::min(best, d.at(c, target));
    return best;
}

bool cond_directed(const GenRelation& d, const std::vector<int>& y, double tol) {
    for (int a : y)
        for (int b : y) {
            double best = kInf;
            for (int c : y) best = std::min(best, d.at(c, a) + d.at(c, b));
            if (!(best <= tol)) return false;
        }
    return true;
}

bool cond_closed(const GenRelation& d, const std::vector<int>& y, double tol) {
    std::vector<bool> in(static_cast<size_t>(d.size()), false);
    for (int i : y) in[static_cast<size_t>(i)] = true;
    for (int b = 0; b < d.size(); ++b)
        if (inf_to(d, y, b) <= tol && !in[static_cast<size_t>(b)]) return false;
    return true;
}

bool cond_filter_literal(const GenRelation& d, const std::vector<int>& y, double tol) {
    std::vector<bool> in(static_cast<size_t>(d.size()), false);
    for (int i : y) in[static_cast<size_t>(i)] = true;
    for (int a = 0; a < d.size(); ++a)
        for (int b = 0; b < d.size(); ++b) {
            double best = kInf;
            for (int c : y) best = std::min(best, d.at(c, a) + d.at(c, b));
            const bool members = in[static_cast<size_t>(a)] && in[static_cast<size_t>(b)];
            if (members != (best <= tol)) return false;
        }
    return true;
}

}  // namespace

bool check_condition(const GenRelation& d, const std::vector<int>& y_in, Condition which,
                     double tol) {
    const std::vector<int> y = sorted_unique(y_in, d.size());
    switch (which) {
        case Condition::filter: {
            const bool literal = cond_filter_literal(d, y, tol);
            const bool split = cond_directed(d, y, tol) && cond_closed(d, y, tol);
            if (literal != split)
                throw Error("filter_crosscheck",
                            "filter biconditional and directed+closed disagree at this tolerance");
            return literal;
        }
        case Condition::directed:
            return cond_directed(d, y, tol);
        case Condition::closed:
            return cond_closed(d, y, tol);
        case Condition::initial:
            for (int b : y)
                if (!(inf_to(d, y, b) <= tol)) return false;
            return true;
        case Condition::coinitial:
            for (int b = 0; b < d.size(); ++b)
                if (!(inf_to(d, y, b) <= tol)) return false;
            return true;
        case Condition::cofinal:
            for (int c = 0; c < d.size(); ++c) {
                double best = kInf;
                for (int b : y) best = std::min(best, d.at(c, b));
                if (!(best <= tol)) return false;
            }
            return true;
        case Condition::centred:
            for (int x = 0; x < d.size(); ++x) {
                double sum = 0.0;
                for (int yy : y) sum += d.at(x, yy);
                if (sum <= tol) return true;
            }
            return y.empty();  // the empty joint sum is 0 at every point
    }
    throw Error("bad_value", "unknown condition");
}

std::vector<int> generate_filter(const GenRelation& d,
                                 const std::function<std::optional<int>(int, int)>& meet,
                                 const std::vector<int>& base, double tol) {
    std::set<int> s(base.begin(), base.end());
    for (int i : base)
        if (i < 0 || i >= d.size()) throw Error("bad_index", "base index outside the ground set");
    bool changed = true;
    while (changed) {
        changed = false;
        const std::vector<int> snapshot(s.begin(), s.end());
        for (int a : snapshot)
            for (int b : snapshot) {
                const std::optional<int> m = meet(a, b);
                if (!m) throw Error("meet_undefined", "ground set is not closed under meets");
                if (*m < 0 || *m >= d.size())
                    throw Error("bad_index", "meet left the ground set");
                if (s.insert(*m).second) changed = true;
            }
        const std::vector<int> members(s.begin(), s.end());
        for (int b = 0; b < d.size(); ++b)
            if (!s.count(b) && inf_to(d, members, b) <= tol) {
                s.insert(b);
                changed = true;
            }
    }
    std::vector<int> out(s.begin(), s.end());
    if (!check_condition(d, out, Condition::filter, tol))
        throw Error("closure_not_filter", "meet/closure fixpoint failed the filter predicate");
    return out;
}

std::function<std::optional<int>(int, int)> poset_meet(const GenRelation& leq) {
    const int n = leq.size();
    return [leq, n](int x, int y) -> std::optional<int> {
        std::vector<int> common;
        for (int z = 0; z < n; ++z)
            if (leq.at(z, x) == 0.0 && leq.at(z, y) == 0.0) common.push_back(z);
        for (int m : common) {
            bool greatest = true;
            for (int z : common)
                if (leq.at(z, m) != 0.0) { greatest = false; break; }
            if (greatest) return m;
        }
        return std::nullopt;
    };
}

NormFilterResult norm_filter_test(const std::vector<PosContraction>& elements,
                                  const std::vector<int>& f_index, const PosContraction& b,
                                  int k_max, double tol) {
    if (k_max < 1) throw Error("bad_value", "word length cap must be >= 1");
    for (int i : f_index)
        if (i < 0 || i >= static_cast<int>(elements.size()))
            throw Error("bad_index", "family index outside the element list");
    const Mat bperp = b.complement();
    constexpr size_t kBeam = 4;

    struct State {
        Mat product;
        std::vector<int> word;
        double value;
    };
    std::vector<State> beam{{Mat::identity(b.dim()), {}, op_norm(bperp)}};
    NormFilterResult best{Membership::unknown, kInf, {}};

    for (int depth = 1; depth <= k_max && !f_index.empty(); ++depth) {
        std::vector<State> next;
        for (const State& st : beam)
            for (int idx : f_index) {
                require_dim_match(st.product, elements[static_cast<size_t>(idx)].mat(),
                                  "norm_filter_test");
                Mat prod = st.product * elements[static_cast<size_t>(idx)].mat();
                const double val = op_norm(prod * bperp);
                std::vector<int> word = st.word;
                word.push_back(idx);
                if (val < best.best_value) best = {Membership::unknown, val, word};
                if (val <= tol) {
                    best.status = Membership::member;
                    return best;
                }
                next.push_back({std::move(prod), std::move(word), val});
            }
        std::stable_sort(next.begin(), next.end(),
                         [](const State& a, const State& b2) { return a.value < b2.value; });
        if (next.size() > kBeam) next.resize(kBeam);
        beam = std::move(next);
    }
    return best;
}

CentredReport centred_equivalence(const std::vector<PosContraction>& elements,
                                  const std::vector<int>& c_index, double tol) {
    for (const auto& e : elements)
        if (std::abs(e.eig().max_value() - 1.0) > 1e-9)
            throw Error("off_sphere", "centredness is defined on the positive unit sphere");
    for (int i : c_index)
        if (i < 0 || i >= static_cast<int>(elements.size()))
            throw Error("bad_index", "centred-subset index outside the element list");

    CentredReport rep{0.0, 0.0, 1.0, true, true};
    if (c_index.empty() || elements.empty()) return rep;

    double joint_d = kInf, joint_h = kInf;
    size_t argmin_h = 0;
    for (size_t x = 0; x < elements.size(); ++x) {
        double sd = 0.0, sh = 0.0;
        for (int ci : c_index) {
            sd += dist_d(elements[x], elements[static_cast<size_t>(ci)]);
            sh += dist_h(elements[x], elements[static_cast<size_t>(ci)]);
        }
        joint_d = std::min(joint_d, sd);
        if (sh < joint_h) {
            joint_h = sh;
            argmin_h = x;
        }
    }
    rep.joint_d = joint_d;
    rep.joint_h = joint_h;

    // Product norm ‖c_k ⋯ c_1‖ in both index orders (sampled orderings).
    const int n = elements[0].dim();
    Mat fwd = Mat::identity(n), rev = Mat::identity(n);
    for (int ci : c_index) {
        fwd = elements[static_cast<size_t>(ci)].mat() * fwd;  // later factors on the left
        rev = rev * elements[static_cast<size_t>(ci)].mat();
    }
    rep.min_product_norm = std::min(op_norm(fwd), op_norm(rev));

    // Telescoping: 1 <= ‖c_k…c_1‖ + Σ d(b, c_i) for every unit-sphere b,
    // in particular for the joint-d minimizer.
    rep.telescoping_ok = rep.min_product_norm >= 1.0 - joint_d - 1e-9;

    // Proof chain: h <= 2d termwise, and powering the h-minimizer drives the
    // joint d-sum under Σ √(1/m + h_i) (the d² <= d∘h composite bound).
    rep.chain_ok = joint_h <= 2.0 * joint_d + 1e-9;
    const auto& xh = elements[argmin_h];
    std::vector<double> hterms;
    for (int ci : c_index) hterms.push_back(dist_h(xh, elements[static_cast<size_t>(ci)]));
    for (int m : {1, 2, 4, 8, 16, 32}) {
        const Mat xpow = xh.eig().apply([m](double t) { return std::pow(std::max(t, 0.0), m); });
        double sd = 0.0;
        for (int ci : c_index) sd += dist_d(xpow, elements[static_cast<size_t>(ci)].mat());
        double bound = 0.0;
        for (double ht : hterms) bound += std::sqrt(1.0 / m + ht);
        if (!(sd <= bound + 1e-9)) rep.chain_ok = false;
    }
    (void)tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Boolean model
// ---------------------------------------------------------------------------

BooleanModel::BooleanModel(int n_in) : n(n_in) {
    if (n < 1 || n > 4) throw Error("bad_dim", "Boolean model supports 1 <= n <= 4");
}

namespace {

std::string mask_label(std::uint32_t m, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if (m & (1u << i)) s[static_cast<size_t>(n - 1 - i)] = '1';
    return s;
}

GenRelation boolean_relation(int n, bool sphere_only) {
    std::vector<std::string> pts;
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = sphere_only ? 1 : 0; m < (1u << n); ++m) {
        masks.push_back(m);
        pts.push_back(mask_label(m, n));
    }
    const int k = static_cast<int>(masks.size());
    std::vector<double> vals(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            vals[static_cast<size_t>(i) * k + j] = BooleanModel::d_value(masks[static_cast<size_t>(i)],
                                                                         masks[static_cast<size_t>(j)]);
    return GenRelation(std::move(pts), std::move(vals));
}

}  // namespace

GenRelation BooleanModel::d_relation() const { return boolean_relation(n, false); }
GenRelation BooleanModel::d_relation_sphere() const { return boolean_relation(n, true); }

namespace {

/// Predicate bundle for one subset (elements are masks 0..M-1, the subset is
/// a bitmask over element indices).
struct BoolPredicates {
    bool d_filter;
    bool prod_bundle;    // ≤-closed ∧ ⊙-closed ∧ norm closed
    bool convex_bundle;  // ≤-closed ∧ ²-closed ∧ pairwise-⊙ surrogate ∧ closed
    bool norm_filter;
    bool ll_filter;      // closure of a ≪-filter (closure = identity here)
};

BoolPredicates eval_subset(int mcount, const std::vector<std::uint32_t>& sub_of,
                           const std::vector<std::uint32_t>& sup_of, std::uint32_t s) {
    auto in = [s](int e) { return (s >> e) & 1u; };

    bool d_filter = true;
    for (int a = 0; a < mcount && d_filter; ++a)
        for (int b = 0; b < mcount; ++b) {
            const bool members = in(a) && in(b);
            const bool witness = (s & sub_of[static_cast<size_t>(a & b)]) != 0;
            if (members != witness) { d_filter = false; break; }
        }

    bool up_closed = true, and_closed = true, sq_closed = true, pair_odot = true;
    for (int a = 0; a < mcount; ++a) {
        if (!in(a)) continue;
        if ((sup_of[static_cast<size_t>(a)] & ~s) != 0) up_closed = false;
        if (!in(a & a)) sq_closed = false;  // a² = a ∧ a in the lattice
        for (int b = 0; b < mcount; ++b) {
            if (!in(b)) continue;
            if (!in(a & b)) { and_closed = false; pair_odot = false; }
        }
    }
    // Norm closure is the identity on a finite discrete model.
    const bool norm_closed = true;

    // Norm filter, exactly: words over the subset are meets of its
    // sub-multisets, i.e. the AND-closure; membership of every b dominated
    // by some word is required.
    std::uint32_t meet_closure = s;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < mcount; ++a) {
            if (!((meet_closure >> a) & 1u)) continue;
            for (int b = 0; b < mcount; ++b) {
                if (!((meet_closure >> b) & 1u)) continue;
                const std::uint32_t bit = 1u << (a & b);
                if (!(meet_closure & bit)) { meet_closure |= bit; grew = true; }
            }
        }
    }
    bool norm_filter = true;
    for (int b = 0; b < mcount && norm_filter; ++b)
        if ((meet_closure & sub_of[static_cast<size_t>(b)]) != 0 && !in(b)) norm_filter = false;

    // ≪ coincides with the lattice order on commuting projections, so the
    // ≪-filter biconditional reuses the a∧b witness test.
    bool ll_filter = true;
    for (int a = 0; a < mcount && ll_filter; ++a)
        for (int b = 0; b < mcount; ++b) {
            const bool members = in(a) && in(b);
            const bool witness = (s & sub_of[static_cast<size_t>(a & b)]) != 0;
            if (members != witness) { ll_filter = false; break; }
        }

    return BoolPredicates{d_filter, up_closed && and_closed && norm_closed,
                          up_closed && sq_closed && pair_odot && norm_closed, norm_filter,
                          ll_filter};
}

}  // namespace

BooleanFilterReport filter_eqvs_boolean(const BooleanModel& model) {
    const int mcount = model.element_count();
    std::vector<std::uint32_t> sub_of(static_cast<size_t>(mcount), 0);
    std::vector<std::uint32_t> sup_of(static_cast<size_t>(mcount), 0);
    for (int b = 0; b < mcount; ++b)
        for (int c = 0; c < mcount; ++c) {
            if ((c & ~b) == 0) sub_of[static_cast<size_t>(b)] |= 1u << c;
            if ((c & b) == b) sup_of[static_cast<size_t>(b)] |= 1u << c;
        }

    BooleanFilterReport rep;
    rep.n = model.n;
    const std::uint64_t total = 1ull << mcount;
    for (std::uint64_t s = 0; s < total; ++s) {
        const BoolPredicates p =
            eval_subset(mcount, sub_of, sup_of, static_cast<std::uint32_t>(s));
        ++rep.subsets_checked;
        if (p.d_filter) ++rep.filter_count;
        const bool agree = (p.d_filter == p.prod_bundle) && (p.d_filter == p.convex_bundle) &&
                           (p.d_filter == p.norm_filter) && (p.d_filter == p.ll_filter);
        if (!agree) {
            ++rep.mismatch_count;
            if (rep.mismatches.size() < 64) rep.mismatches.push_back(static_cast<std::uint32_t>(s));
        }
    }
    return rep;
}

bool boolean_filter_via_genrel(const BooleanModel& model, std::uint32_t subset_mask) {
    const GenRelation d = model.d_relation();
    std::vector<int> y;
    for (int e = 0; e < model.element_count(); ++e)
        if ((subset_mask >> e) & 1u) y.push_back(e);
    return check_condition(d, y, Condition::filter, 0.0);
}

bool maximal_centred_equals_maximal_filters(int n) {
    if (n < 1 || n > 3) throw Error("too_large", "exhaustive sphere analysis capped at n = 3");
    const int mcount = 1 << n;           // ball: all masks, including 0
    const int scount = mcount - 1;       // sphere: nonzero masks only

    // Centredness lives on the unit sphere: a family is d-centred exactly
    // when some nonzero mask sits below all members, i.e. the total meet is
    // nonzero.  Sphere subsets are encoded with bit (m-1) for mask m.
    auto centred = [&](std::uint32_t s) {
        std::uint32_t meet = (1u << n) - 1;
        for (int i = 0; i < scount; ++i)
            if ((s >> i) & 1u) meet &= static_cast<std::uint32_t>(i + 1);
        return meet != 0;
    };

    // Filters live in the unit ball (mask m at bit m); proper = not the
    // whole ball.
    auto is_ball_filter = [&](std::uint32_t s) {
        for (int a = 0; a < mcount; ++a)
            for (int b = 0; b < mcount; ++b) {
                const bool members = ((s >> a) & 1u) && ((s >> b) & 1u);
                bool witness = false;
                const int low = a & b;
                for (int c = 0; c < mcount && !witness; ++c)
                    if (((s >> c) & 1u) && (c & ~low) == 0) witness = true;
                if (members != witness) return false;
            }
        return true;
    };

    const std::uint32_t sphere_full = (1u << scount) - 1;
    std::set<std::uint32_t> max_centred;
    for (std::uint32_t s = 0; s <= sphere_full; ++s) {
        if (!centred(s)) continue;
        bool maximal = true;
        for (int e = 0; e < scount && maximal; ++e)
            if (!((s >> e) & 1u) && centred(s | (1u << e))) maximal = false;
        if (maximal) max_centred.insert(s);
    }

    const std::uint32_t ball_full = (1u << mcount) - 1;
    std::vector<std::uint32_t> proper_filters;
    for (std::uint32_t s = 0; s <= ball_full; ++s)
        if (s != ball_full && is_ball_filter(s)) proper_filters.push_back(s);
    std::set<std::uint32_t> max_filters;
    for (std::uint32_t s : proper_filters) {
        bool maximal = true;
        for (std::uint32_t t : proper_filters)
            if (t != s && (t & s) == s) { maximal = false; break; }
        // A proper filter never contains mask 0 (its up-set is everything),
        // so re-encoding onto the sphere is a plain shift.
        if (maximal) max_filters.insert(s >> 1);
    }
    return max_centred == max_filters;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

std::string format_value(double v) {
    if (std::isinf(v)) return "\"inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string genrel_to_json(const GenRelation& d) {
    std::ostringstream os;
    os << "{\"points\":[";
    for (int i = 0; i < d.size(); ++i)
        os << (i ? "," : "") << '"' << json_escape(d.points[static_cast<size_t>(i)]) << '"';
    os << "],\"matrix\":[";
    for (int i = 0; i < d.size(); ++i) {
        os << (i ? "," : "") << '[';
        for (int j = 0; j < d.size(); ++j) os << (j ? "," : "") << format_value(d.at(i, j));
        os << ']';
    }
    os << "]}";
    return os.str();
}

GenRelation genrel_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad_json", std::string("relation parse failure: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j.contains("matrix"))
        throw Error("bad_json", "relation JSON needs 'points' and 'matrix'");
    std::vector<std::string> pts;
    for (const auto& p : j["points"]) pts.push_back(p.get<std::string>());
    const size_t n = pts.size();
    std::vector<double> vals;
    vals.reserve(n * n);
    if (j["matrix"].size() != n) throw Error("bad_shape", "matrix row count != |points|");
    for (const auto& row : j["matrix"]) {
        if (row.size() != n) throw Error("bad_shape", "matrix is not square");
        for (const auto& cell : row) {
            if (cell.is_string()) {
                if (cell.get<std::string>() != "inf")
                    throw Error("bad_json", "only the sentinel 'inf' is accepted as a string");
                vals.push_back(kInf);
            } else {
                vals.push_back(cell.get<double>());
            }
        }
    }
    return GenRelation(std::move(pts), std::move(vals));
}

std::string BooleanFilterReport::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"subsets_checked\":" << subsets_checked
       << ",\"filter_count\":" << filter_count << ",\"mismatch_count\":" << mismatch_count
       << ",\"mismatches\":[";
    for (size_t i = 0; i < mismatches.size(); ++i) os << (i ? "," : "") << mismatches[i];
    os << "]}";
    return os.str();
}

}  // namespace opalg
