#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "trophom/cycles.hpp"
#include "trophom/divisors.hpp"
#include "trophom/forms.hpp"
#include "trophom/homology.hpp"
#include "trophom/matroids.hpp"
#include "trophom/polyhedral.hpp"

namespace trophom {

using Json = nlohmann::json;

// Malformed or schema-violating input. `where` is a JSON-pointer-like path.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& kind, const std::string& where, const std::string& message)
      : std::runtime_error(message), kind_(kind), where_(where) {}
  const std::string& kind() const { return kind_; }
  const std::string& where() const { return where_; }
  Json to_json() const { return {{"error", {{"kind", kind_}, {"path", where_}, {"message", what()}}}}; }

 private:
  std::string kind_;
  std::string where_;
};

Json read_json_file(const std::string& path);

FaceComplex complex_from_json(const Json& j);
Json complex_to_json(const FaceComplex& c);

TropicalCycle cycle_from_json(const Json& j);
Json cycle_to_json(const TropicalCycle& a);

// complex_ref paths are resolved relative to base_dir.
PLFunction pl_from_json(const Json& j, const std::string& base_dir = ".");
Json pl_to_json(const PLFunction& f);

Matroid matroid_from_json(const Json& j);
Json matroid_to_json(const Matroid& m);

AffineMap affine_map_from_json(const Json& j);

Json shape_to_json(const AbelianGroupShape& s);
Json int_vector_to_json(const IntVector& v);
Json validation_to_json(const ValidationReport& r);
Json balancing_to_json(const BalancingReport& r);
Json stalk_table_to_json(const FaceComplex& c, const CellularFormSheaf& f);

}  // namespace trophom
