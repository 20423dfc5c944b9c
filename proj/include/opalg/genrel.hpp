/**
 * @file  genrel.hpp
 * @brief Generalized relations on finite ground sets and filter predicates.
 *
 * A generalized relation is a [0, +inf]-valued kernel D on a finite ground
 * set; classical relations embed as characteristic kernels (0 on the
 * relation, +inf off it).  Composition is min-plus, with IEEE +inf giving
 * the saturating arithmetic.  On top of this sit the subset predicates
 * (filter / directed / closed / initial / coinitial / cofinal / centred),
 * each evaluated literally from its defining inf-condition with "= 0" read
 * as "<= tol", plus the exact Boolean-lattice model where every filter
 * notion collapses to the classical one and can be enumerated exhaustively.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opalg/algebra.hpp"

namespace opalg {

/// [0,+inf]-valued square kernel over labelled points.
struct GenRelation {
    std::vector<std::string> points;
    std::vector<double> values;  // row-major, size() == points²

    GenRelation() = default;
    GenRelation(std::vector<std::string> pts, std::vector<double> vals);

    int size() const { return static_cast<int>(points.size()); }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * points.size() + j]; }
    double& at(int i, int j) { return values[static_cast<size_t>(i) * points.size() + j]; }

    /// Characteristic kernel of a classical relation: 0 where related, +inf off.
    static GenRelation characteristic(std::vector<std::string> pts,
                                      const std::function<bool(int, int)>& related);
    /// Characteristic kernel of equality (the min-plus identity).
    static GenRelation equality(std::vector<std::string> pts);
};

/// Min-plus composition (D∘E)(x,y) = inf_z D(x,z) + E(z,y).
GenRelation compose(const GenRelation& d, const GenRelation& e);

/// Zero set |D| as a characteristic kernel (entries <= tol count as related).
GenRelation zero_set(const GenRelation& d, double tol = 0.0);

/// D is a distance when D <= D∘D entrywise (non-symmetric triangle law).
bool is_distance(const GenRelation& d, double tol = 1e-12);

/// sup over r in the grid of ((r·D)∘E); sandwiched between D∘E and |D|∘E.
/// Grid entries must be >= 0 and the grid non-empty.
GenRelation tilde_compose(const GenRelation& d, const GenRelation& e,
                          const std::vector<double>& r_grid);

/// The six subset conditions plus centredness.
enum class Condition { filter, directed, closed, initial, coinitial, cofinal, centred };

/// Literal evaluation of a condition for Y (point indices) under D.
/// The empty infimum is +inf, so conditions on the empty set follow the
/// definitions verbatim.  For `filter` the equivalent decomposition
/// directed ∧ closed is evaluated too and a disagreement (possible only in
/// the marginal tolerance band) throws Error("filter_crosscheck").
bool check_condition(const GenRelation& d, const std::vector<int>& y, Condition which,
                     double tol = 0.0);

/// Smallest superset of `base` closed under the (partial) meet operation and
/// under D-closure; throws Error("meet_undefined") when the meet of two
/// members does not exist, and Error("closure_not_filter") if the fixpoint
/// fails the filter predicate.
std::vector<int> generate_filter(const GenRelation& d,
                                 const std::function<std::optional<int>(int, int)>& meet,
                                 const std::vector<int>& base, double tol = 0.0);

/// Meet operation induced by a partial order given as a characteristic
/// relation: greatest common lower bound when it exists.
std::function<std::optional<int>(int, int)> poset_meet(const GenRelation& leq);

/// One-sided norm-filter membership search: looks for a word a₁…a_k (k <= K)
/// over the indexed family with ‖a₁…a_k b⊥‖ <= tol.
enum class Membership { member, unknown };

struct NormFilterResult {
    Membership status;
    double best_value;          ///< smallest word value found
    std::vector<int> best_word; ///< indices into `elements` realizing it
};

NormFilterResult norm_filter_test(const std::vector<PosContraction>& elements,
                                  const std::vector<int>& f_index, const PosContraction& b,
                                  int k_max = 6, double tol = 1e-6);

/// Centredness diagnostics for C (indices) inside a sampled ground set of
/// unit-sphere positive contractions: the joint d/h infima over the ground,
/// the smallest product norm over C, and the proof-chain consistency flags.
struct CentredReport {
    double joint_d;           ///< inf over ground x of Σ_{c∈C} d(x, c)
    double joint_h;           ///< same with h
    double min_product_norm;  ///< min over sampled orderings of ‖c_k ⋯ c_1‖
    bool telescoping_ok;      ///< product norm >= 1 − joint_d − tol
    bool chain_ok;            ///< joint_h <= 2·joint_d and joint_d <= Σ√h bound

    bool centred(double tol) const { return joint_d <= tol; }
};

CentredReport centred_equivalence(const std::vector<PosContraction>& elements,
                                  const std::vector<int>& c_index, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Exact Boolean-lattice model ({0,1}^n under AND / bitmask inclusion)
// ---------------------------------------------------------------------------

/// Commutative projection-lattice model: elements are bitmasks of length n,
/// the product is bitwise AND and d(a,b) = [a ⊈ b] ∈ {0,1}.
struct BooleanModel {
    int n;

    explicit BooleanModel(int n_in);

    int element_count() const { return 1 << n; }
    /// d(a,b) = ‖a − ab‖ evaluated in the diagonal model: 1 iff a ⊈ b.
    static double d_value(std::uint32_t a, std::uint32_t b) { return (a & ~b) ? 1.0 : 0.0; }

    /// Full positive unit ball (all masks, including 0).
    GenRelation d_relation() const;
    /// Positive unit sphere (nonzero masks only), for centredness analysis.
    GenRelation d_relation_sphere() const;
};

/// Exhaustive agreement report for the filter characterizations on the
/// Boolean model.  Subsets are encoded as bitmasks over element indices.
struct BooleanFilterReport {
    int n = 0;
    std::uint64_t subsets_checked = 0;
    std::uint64_t filter_count = 0;         ///< subsets passing the d-filter test
    std::uint64_t mismatch_count = 0;       ///< subsets where any predicate disagrees
    std::vector<std::uint32_t> mismatches;  ///< element-index masks (first 64 kept)

    std::string to_json() const;
};

/// Evaluates, for every subset: (1) d-filter, (4) closed ∧ ≤-closed ∧
/// ⊙-closed, (5) closed ∧ ≤-closed ∧ ²-closed ∧ pairwise-⊙ surrogate,
/// (7) exact norm filter via meet closure, (8) ≪-filter (closure is the
/// identity here).  All five must coincide; n <= 4 enforced.
BooleanFilterReport filter_eqvs_boolean(const BooleanModel& model);

/// Slow-path predicate evaluation through the generic GenRelation machinery,
/// used to cross-validate the bitmask fast path (n <= 3 recommended).
bool boolean_filter_via_genrel(const BooleanModel& model, std::uint32_t subset_mask);

/// Maximal d-centred subsets of the sphere model vs maximal proper d-filters;
/// returns true when the two families coincide (exhaustive, n <= 3).
bool maximal_centred_equals_maximal_filters(int n);

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// {"points": [...], "matrix": [[...]]} with the string "inf" for +inf.
std::string genrel_to_json(const GenRelation& d);
GenRelation genrel_from_json(const std::string& text);

}  // namespace opalg
