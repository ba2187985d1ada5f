#pragma once

// Brute-force enumeration of Hom groups on small boxes, used to cross-check
// the lattice solver, and deterministic random 1-motive generation.

#include "biext/homspace.hpp"

#include <cstdint>
#include <random>

namespace biext {

struct InstanceProfile {
    std::size_t lattice_rank = 0;
    std::size_t elliptic_factors = 0;
    std::size_t torus_rank = 0;
    long height = 2;
    std::uint64_t seed = 0;
    bool oracle_sized = false;  // cap the motive rank at 3 so any Hom problem has <= 9 unknowns
};

/// Seeded generator with platform-independent draws.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}
    long range(long lo, long hi);
    Rational rational(long height);
    KScalar scalar(const FieldContext& field, long height);
    /// Nonzero w-coefficient.
    KScalar modulus(const FieldContext& field, long height);

  private:
    std::mt19937_64 gen_;
};

MotiveSpec random_motive(const InstanceProfile& profile, const FieldContext& field);

inline constexpr std::size_t kOracleMaxUnknowns = 9;
inline constexpr long kOracleMaxBound = 3;

/// A small integer vector; boxes never need more than 64 bits.
using BoxPoint = std::vector<long>;

/// All integer maps A -> B with entries in [-bound, bound] (flattened as
/// f[b*rA + a]) whose W- and F-images land in the right steps, sorted.
std::vector<BoxPoint> brute_force_hom(const Mhs& a, const Mhs& b, long bound);

/// Lattice points with every coordinate in [-bound, bound], sorted.
std::vector<BoxPoint> lattice_box_points(const IntLattice& l, long bound);

struct OracleReport {
    std::size_t oracle_count = 0;
    std::size_t lattice_count = 0;
    std::vector<BoxPoint> missing;  // found by enumeration, not in the lattice
    std::vector<BoxPoint> extra;    // in the lattice box, rejected by enumeration
    bool equal() const { return missing.empty() && extra.empty() && oracle_count == lattice_count; }
};

OracleReport compare_with_oracle(const HomLattice& l, long bound);

}  // namespace biext
