#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilgrade/algebra.hpp"

namespace nilgrade {

/// (alpha_1, ..., alpha_6), all over one field.
struct FamilyParamsA6 {
  std::array<Scalar, 6> alpha;
  const FieldPtr& field() const { return alpha[0].field(); }
};

/// (beta_1, ..., beta_4) with (beta_2, beta_4) != (0, 0).
struct FamilyParamsB4 {
  std::array<Scalar, 4> beta;
  const FieldPtr& field() const { return beta[0].field(); }
};

FamilyParamsA6 make_a6(const std::vector<Scalar>& values);
FamilyParamsB4 make_b4(const std::vector<Scalar>& values);
std::string tuple_string(const std::vector<Scalar>& values);
std::vector<Scalar> as_vector(const FamilyParamsA6& p);
std::vector<Scalar> as_vector(const FamilyParamsB4& p);

/// Comma-separated literals ("1,1/2,2-3i"). With no field given, Q is used
/// unless some literal needs i, then Q(i).
std::vector<Scalar> parse_param_list(const std::string& text, FieldPtr field = nullptr);

/// e_i e_j = e_{i+j} for i + j <= n. Nilindex n.
Algebra null_filiform(std::size_t n, const FieldPtr& field = Field::rationals());

/// Chain e_1..e_{n-3}, e_1 e_{n-2} = e_{n-1}, and the six alpha products into e_{n-1}.
/// Throws DimensionTooSmall for n < 7.
Algebra family_a6(std::size_t n, const FamilyParamsA6& p);

/// Chain e_1..e_{n-3}, e_1 e_{n-2} = e_{n-1}, e_{n-2} e_1 and e_{n-2}^2 in <e_{n-1}, e_n>.
/// Throws DimensionTooSmall, DegenerateParams.
Algebra family_b4(std::size_t n, const FamilyParamsB4& p);

/// Parameters of an algebra whose table is exactly family_a6(n, p), if any.
std::optional<FamilyParamsA6> read_family_a6(const Algebra& a);
std::optional<FamilyParamsB4> read_family_b4(const Algebra& a);

enum class Theorem { Teo, Teo1 };
enum class ParamKind { None, Alpha, Beta, Gamma, Delta };

const char* to_string(Theorem t);
const char* to_string(ParamKind k);

/// One entry of the representative catalogue.
struct CatalogueEntry {
  Theorem theorem;
  int index;                  // 1-based position in the list
  std::string pattern;        // e.g. "A(0,1,0,gamma,1,gamma(1-gamma))"
  ParamKind param;
  bool listed;                // false for classes absent from the published list
  std::string listed_as;      // the published tuple when it differs from `pattern`
};

const std::vector<CatalogueEntry>& catalogue(Theorem t);

struct RepresentativeId {
  Theorem theorem = Theorem::Teo;
  int index = 0;
  std::optional<Scalar> parameter;

  const CatalogueEntry& entry() const;
  /// Parameter tuple of the representative (alpha or beta values).
  std::vector<Scalar> tuple(const FieldPtr& field) const;
  std::string pattern() const { return entry().pattern; }
  /// "A(5,0,0,0,0,0)"
  std::string instance(const FieldPtr& field) const;
  friend bool operator==(const RepresentativeId& a, const RepresentativeId& b);
};

/// Throws ConstraintViolation on a missing or forbidden parameter (delta = 0,
/// gamma in {0, 1}).
void check_constraints(const RepresentativeId& id);

Algebra representative(const RepresentativeId& id, std::size_t n, const FieldPtr& field);

}  // namespace nilgrade
