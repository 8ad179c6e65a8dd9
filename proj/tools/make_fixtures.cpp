// Writes the bundled fixture corpus: make_fixtures OUT_DIR
#include <filesystem>
#include <iostream>
#include <numeric>

#include "fanforge/io.hpp"

using namespace fanforge;

namespace {

IntVector vec(std::initializer_list<long long> xs) {
  IntVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long long x : xs) v(i++) = x;
  return v;
}

IntMatrix cols(std::initializer_list<IntVector> vs) {
  std::vector<IntVector> list(vs);
  return columns_of(list, list.front().size());
}

IntMatrix rows(std::initializer_list<std::initializer_list<long long>> rs) {
  IntMatrix m(static_cast<Index>(rs.size()), static_cast<Index>(rs.begin()->size()));
  Index i = 0;
  for (const auto& r : rs) {
    Index j = 0;
    for (long long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

ConicalComplex single_cone(const IntMatrix& gens) { return fan_from_cones({Cone::from_generators(gens)}); }

ConicalComplex abramovich() {
  IntMatrix even = cols({vec({1, 1, 0}), vec({1, 0, 1}), vec({0, 1, 1})});
  return fan_from_cones({Cone::with_lattice(even, cols({vec({2, 0, 0}), vec({0, 2, 0}), vec({0, 0, 2})}))});
}

// rays, then three 2-cones in their own coordinates, glued in a cycle
Json glued_cycle() {
  Json j;
  j["schema_version"] = 1;
  Json cones = Json::array();
  cones.push_back({{"id", 0}, {"dim", 0}, {"ambient_dim", 0}, {"generators", Json::array()}});
  for (int r = 1; r <= 3; ++r)
    cones.push_back({{"id", r}, {"dim", 1}, {"ambient_dim", 1}, {"generators", {{"1"}}}});
  const std::vector<IntVector> second = {vec({0, 1}), vec({1, 3}), vec({1, 2})};
  for (int c = 0; c < 3; ++c)
    cones.push_back({{"id", 4 + c},
                     {"dim", 2},
                     {"ambient_dim", 2},
                     {"generators", Json::array({vector_json(vec({1, 0})), vector_json(second[c])})}});
  j["cones"] = cones;
  Json faces = Json::array();
  for (int r = 1; r <= 3; ++r) faces.push_back({{"sub", 0}, {"super", r}, {"matrix", Json::array({Json::array()})}});
  for (int c = 0; c < 3; ++c) {
    faces.push_back({{"sub", 1 + c}, {"super", 4 + c}, {"matrix", {{"1"}, {"0"}}}});
    faces.push_back({{"sub", 1 + (c + 1) % 3},
                     {"super", 4 + c},
                     {"matrix", {{second[c](0).str()}, {second[c](1).str()}}}});
  }
  j["faces"] = faces;
  return j;
}

// quadrant whose first ray is glued with a non-saturated map
Json bad_saturation() {
  Json j;
  j["schema_version"] = 1;
  j["cones"] = {{{"id", 0}, {"dim", 0}, {"ambient_dim", 0}, {"generators", Json::array()}},
                {{"id", 1}, {"dim", 1}, {"ambient_dim", 1}, {"generators", {{"1"}}}},
                {{"id", 2}, {"dim", 1}, {"ambient_dim", 1}, {"generators", {{"1"}}}},
                {{"id", 3}, {"dim", 2}, {"ambient_dim", 2}, {"generators", Json::array({vector_json(vec({1, 0})), vector_json(vec({0, 1}))})}}};
  j["faces"] = {{{"sub", 0}, {"super", 1}, {"matrix", Json::array({Json::array()})}},
                {{"sub", 0}, {"super", 2}, {"matrix", Json::array({Json::array()})}},
                {{"sub", 0}, {"super", 3}, {"matrix", Json::array({Json::array(), Json::array()})}},
                {{"sub", 1}, {"super", 3}, {"matrix", {{"2"}, {"0"}}}},
                {{"sub", 2}, {"super", 3}, {"matrix", {{"0"}, {"1"}}}}};
  return j;
}

int cone_with_vertices(const ConicalComplex& k, const std::vector<IntVector>& verts) {
  for (int id = 0; id < k.size(); ++id) {
    const auto& v = k.cone(id).vertices();
    if (v.size() != verts.size()) continue;
    bool same = true;
    for (size_t i = 0; i < v.size() && same; ++i) same = same_vector(v[i], verts[i]);
    if (same) return id;
  }
  throw std::runtime_error("fixture cone not found");
}

Json obstruction() {
  ConicalComplex k = abramovich();
  const int x = cone_with_vertices(k, {vec({2, 0, 0})});
  const int y = cone_with_vertices(k, {vec({0, 2, 0})});
  std::vector<IntVector> edge = {vec({0, 2, 0}), vec({2, 0, 0})};
  const int w = cone_with_vertices(k, edge);
  std::vector<int> omega = {cone_with_vertices(k, {}), x, y, w};
  std::sort(omega.begin(), omega.end());
  Marking order;
  order.rank[x] = 1;
  order.rank[y] = 2;
  return complex_to_json(k, nullptr, &omega, &order);
}

Json map_doc(const ConicalComplex& src, const ConicalComplex& dst, const IntMatrix& global) {
  return {{"source", complex_to_json(src)}, {"target", complex_to_json(dst)}, {"global_matrix", rows_json(global)}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUT_DIR\n";
    return 2;
  }
  const std::string dir = argv[1];
  std::filesystem::create_directories(dir);
  auto put = [&](const std::string& name, const Json& j) { write_json(dir + "/" + name + ".json", j); };

  for (int n = 2; n <= 10; ++n) put("an_cone_" + std::to_string(n), complex_to_json(single_cone(cols({vec({1, 0}), vec({1, n})}))));
  for (int r = 2; r <= 7; ++r)
    for (int a = 1; a < r; ++a)
      if (std::gcd(r, a) == 1)
        put("quotient_" + std::to_string(r) + "_" + std::to_string(a),
            complex_to_json(single_cone(cols({vec({0, 1}), vec({r, -a})}))));
  put("abramovich", complex_to_json(abramovich()));
  put("obstruction", obstruction());
  put("regular_plane", complex_to_json(fan_from_cones({Cone::from_generators(cols({vec({1, 0}), vec({0, 1})})),
                                                        Cone::from_generators(cols({vec({0, 1}), vec({-1, -1})})),
                                                        Cone::from_generators(cols({vec({-1, -1}), vec({1, 0})}))})));
  put("regular_orthant",
      complex_to_json(single_cone(cols({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}))));
  put("glued_cycle", glued_cycle());
  put("bad_saturation", bad_saturation());

  ConicalComplex a3 = single_cone(cols({vec({1, 0}), vec({1, 3})}));
  put("map_identity", map_doc(a3, a3, IntMatrix::Identity(2, 2)));
  ConicalComplex q = single_cone(cols({vec({0, 1}), vec({5, -2})}));
  IntMatrix u = rows({{2, 1}, {1, 1}});
  put("map_relabel", map_doc(q, transform_fan(q, u), u));
  ConicalComplex prod = single_cone(cols({vec({1, 0, 0}), vec({1, 3, 0}), vec({0, 0, 1})}));
  put("map_projection", map_doc(prod, a3, rows({{1, 0, 0}, {0, 1, 0}})));
  return 0;
}
