#pragma once

// Mixed Hodge structures on a standard lattice Z^r: a rational increasing
// weight filtration W and a K-valued decreasing Hodge filtration F.

#include "biext/matrix.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace biext {

/// weight -> rank of Gr^W_weight (only nonzero entries).
using GrProfile = std::map<int, std::size_t>;

GrProfile scale(const GrProfile& profile, std::size_t factor);
std::string to_string(const GrProfile& profile);

class Mhs {
  public:
    Mhs() = default;
    /// `weight` holds W_w at the listed w (W_w for other w is the step at the
    /// largest listed index <= w, zero below); `hodge` holds F^p at the
    /// listed p (other p use the smallest listed index >= p, zero above).
    /// Steps are reduced to canonical form and repeated steps are dropped.
    Mhs(FieldContext field, std::size_t rank, const std::map<int, MatrixQ>& weight,
        const std::map<int, MatrixK>& hodge);

    static Mhs zero(FieldContext field) { return Mhs(field, 0, {}, {}); }

    const FieldContext& field() const { return field_; }
    std::size_t rank() const { return rank_; }

    MatrixQ weight(int w) const;
    MatrixK hodge(int p) const;
    const std::map<int, MatrixQ>& weight_steps() const { return weight_; }
    const std::map<int, MatrixK>& hodge_steps() const { return hodge_; }

    bool has_weights() const { return !weight_.empty(); }
    int weight_min() const { return weight_.begin()->first; }
    int weight_max() const { return weight_.rbegin()->first; }
    bool has_hodge() const { return !hodge_.empty(); }
    int hodge_min() const { return hodge_.begin()->first; }
    int hodge_max() const { return hodge_.rbegin()->first; }

    friend bool operator==(const Mhs& a, const Mhs& b) {
        return a.field_ == b.field_ && a.rank_ == b.rank_ && a.weight_ == b.weight_ && a.hodge_ == b.hodge_;
    }

  private:
    FieldContext field_;
    std::size_t rank_ = 0;
    std::map<int, MatrixQ> weight_;
    std::map<int, MatrixK> hodge_;
};

struct ValidationIssue {
    std::string invariant;  // short identifier, e.g. "hodge-symmetry"
    std::string detail;     // witnessing weight / p index
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks the MHS axioms; with `one_motive` also the 1-motive type conditions.
ValidationReport validate_mhs(const Mhs& h, bool one_motive = false);
bool is_one_motive_type(const Mhs& h);

Mhs tate(int n, const FieldContext& field);
Mhs tensor_mhs(const Mhs& a, const Mhs& b);
/// Left-folded tensor product; lexicographic basis order in factor order.
Mhs tensor_all(std::span<const Mhs> factors, const FieldContext& field);
Mhs internal_hom(const Mhs& a, const Mhs& b);
/// Quotient of H by W_{-k}, re-presented on a standard lattice.
Mhs quotient_by_weight(const Mhs& h, int k);
GrProfile gr_profile(const Mhs& h);
Mhs direct_sum(std::span<const Mhs> parts, const FieldContext& field);

/// Relabels basis vectors: old index i becomes new index perm[i].
Mhs permute(const Mhs& h, std::span<const std::size_t> perm);
/// Index map A(x)B -> B(x)A for the lexicographic tensor basis.
std::vector<std::size_t> tensor_swap_permutation(std::size_t rank_a, std::size_t rank_b);

/// One bilinear condition c . f(v) = 0 on a map f: Z^{rA} -> Z^{rB}; as a
/// functional on the flattened map f[b*rA + a] its coefficients are c[b]*v[a].
template <class T>
struct MapCondition {
    std::vector<T> source;  // v, a vector of a source filtration step
    std::vector<T> target;  // c, a functional vanishing on the target step
};

/// Conditions expressing f(W_i A) in W_{i+shift} B for all i.
std::vector<MapCondition<Rational>> weight_condition_pairs(const Mhs& a, const Mhs& b, int shift);
/// Conditions expressing f(F^q A) in F^{q+shift} B for all q.
std::vector<MapCondition<KScalar>> hodge_condition_pairs(const Mhs& a, const Mhs& b, int shift);

/// The same conditions as rows of a matrix acting on flattened maps.
MatrixQ weight_conditions(const Mhs& a, const Mhs& b, int shift);
MatrixK hodge_conditions(const Mhs& a, const Mhs& b, int shift);

void require_same_field(const Mhs& a, const Mhs& b);

}  // namespace biext
