#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilgrade/algebra.hpp"

namespace nilgrade {

/// Weakly decreasing partition of n (Jordan block sizes).
struct CharacteristicSequence {
  std::vector<std::size_t> parts;

  std::size_t total() const;
  std::string to_string() const;

  /// Lexicographic order: the first differing part decides; a proper prefix is smaller.
  friend bool operator<(const CharacteristicSequence& a, const CharacteristicSequence& b);
  friend bool operator==(const CharacteristicSequence& a, const CharacteristicSequence& b) {
    return a.parts == b.parts;
  }
};

/// Degree of every basis vector plus the basis indices of each component.
struct Gradation {
  std::vector<std::size_t> degree;                // degree[k] >= 1 for basis vector k
  std::vector<std::vector<std::size_t>> components;  // components[d-1] = indices of degree d
};

/// Blocks of size >= s number rank(N^{s-1}) - rank(N^s). Throws NotNilpotentMatrix.
CharacteristicSequence jordan_block_sizes(const Matrix& nilpotent);

/// Throws ElementInSquare when x lies in A^2.
CharacteristicSequence characteristic_sequence_at(const Algebra& a, const Vector& x);

struct WitnessedSequence {
  CharacteristicSequence sequence;
  Vector witness;
};

/// Lexicographic max of C(x) over the basis vectors outside A^2, their
/// pairwise sums, and `samples` seeded random vectors. The result is a lower
/// bound on C(A) attained at `witness`.
WitnessedSequence characteristic_sequence(const Algebra& a, std::size_t samples, std::uint64_t seed);

/// Degrees from the filtration: deg(e_k) = largest i with e_k in A^i.
/// Returns nullopt unless the basis is homogeneous and products respect degrees.
std::optional<Gradation> basis_gradation(const Algebra& a);

/// Exhaustive check that c_ij^k != 0 implies deg k = deg i + deg j.
bool respects_gradation(const Algebra& a, const std::vector<std::size_t>& degree);

struct GradedResult {
  Algebra graded;
  Gradation gradation;
  BasisChange adapted;  // rows: the filtration-adapted basis of A
};

/// gr(A) expressed on a filtration-adapted basis, sorted by pivot column.
GradedResult associated_graded(const Algebra& a);

struct NaturalGradingReport {
  bool naturally_graded = false;
  Gradation gradation;                   // degrees of the basis the witness lives on
  std::optional<BasisChange> witness;    // maps gr(A) onto A (rows in A's basis)
  double residual = 0.0;
  bool exact = true;
};

/// True when A is graded in a filtration-adapted basis, or when an
/// approximate isomorphism gr(A) -> A of the form "identity plus
/// filtration-raising terms" is found by least squares.
NaturalGradingReport is_naturally_graded(const Algebra& a, std::uint64_t seed = 1,
                                         std::size_t restarts = 20, double tolerance = 1e-9);

}  // namespace nilgrade
