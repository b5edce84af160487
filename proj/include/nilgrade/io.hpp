#pragma once

#include <json.hpp>

#include "nilgrade/classify.hpp"
#include "nilgrade/grading.hpp"
#include "nilgrade/nonexistence.hpp"

namespace nilgrade {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "nilgrade/1";

Json to_json(const FieldPtr& field);
FieldPtr field_from_json(const Json& j);  // throws ParseError

Json to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const FieldPtr& field);

/// {"dim","field","table"} with 1-based indices; zero products are omitted.
Json to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const InvariantSetA6& inv);
Json to_json(const CanonicalForm& cf);
Json to_json(const Witness& w);
Json to_json(const ScenarioReport& r, bool with_solutions = false);

/// {"schema","error":{"code","message"}}
Json error_json(const Error& e);

/// Adds the schema tag in front of the other keys.
Json with_schema(const Json& body);

}  // namespace nilgrade
