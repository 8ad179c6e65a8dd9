#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fanforge/relative.hpp"
#include "fanforge/valuation.hpp"
#include "json.hpp"

namespace fanforge {

using Json = nlohmann::ordered_json;

struct ComplexDocument {
  ConicalComplex complex;
  std::vector<long long> ids;        // document id of each cone, by internal id
  std::vector<Violation> problems;   // cones that could not be built; complex is empty then
  Marking marked;
  bool has_omega = false;
  std::vector<int> omega;
  Marking omega_order;

  RelativeComplex relative() const;
  int internal_id(long long doc_id) const;  // throws UnknownId
};

// Accepts the document itself or an object holding it under "complex".
ComplexDocument parse_complex(const Json& j);
ComplexDocument load_complex(const std::string& path);
Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

Json vector_json(const IntVector& v);
IntVector parse_vector(const Json& j);
IntMatrix parse_rows(const Json& j);
Json rows_json(const IntMatrix& m);

Json complex_to_json(const ConicalComplex& k, const Marking* marked = nullptr, const std::vector<int>* omega = nullptr,
                     const Marking* omega_order = nullptr);

struct MapDocument {
  ComplexDocument source;
  ComplexDocument target;
  ComplexMap map;
  std::optional<IntMatrix> global_matrix;
};
MapDocument parse_map(const Json& j);
MapDocument load_map(const std::string& path);

Json pl_to_json(const PLFunction& f);
Json coefficients_to_json(const std::map<int, Rational>& c);
Json slice_to_json(const ValuationIdealSlice& s);

}  // namespace fanforge
