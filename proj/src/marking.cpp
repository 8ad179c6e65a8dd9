#include "fanforge/marking.hpp"

#include <algorithm>
#include <set>

namespace fanforge {

long long Marking::top_rank() const {
  long long r = 0;
  for (const auto& kv : rank) r = std::max(r, kv.second);
  return r;
}

const char* order_name(Order o) {
  switch (o) {
    case Order::LT: return "LT";
    case Order::GT: return "GT";
    case Order::INCOMPARABLE: return "INCOMPARABLE";
    case Order::EQ_PROJ: return "EQ_PROJ";
  }
  return "INCOMPARABLE";
}

std::map<int, Rational> project(const ConicalComplex& k, const Marking& mk, int cone_id, const IntVector& v) {
  const Cone& c = k.cone(cone_id);
  if (!c.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "projection needs a simplicial cone");
  if (!c.contains(v)) throw Error(ErrorCode::NotInCone, "vector is not in the cone");
  std::map<int, Rational> out;
  if (c.dim() == 0) return out;
  auto coef = c.rational_coefficients(v);
  const auto& rays = k.vertex_rays(cone_id);
  for (size_t j = 0; j < coef.size(); ++j)
    if (rays[j] >= 0 && mk.marked(rays[j])) out[rays[j]] = coef[j];
  return out;
}

namespace {

using Projection = std::map<int, Rational>;

Order compare_projections(const Marking& mk, const Projection& pv, const Projection& pw) {
  // only rays carried by either side can differ
  std::vector<std::pair<long long, Rational>> diff;
  auto it = pv.begin();
  auto jt = pw.begin();
  while (it != pv.end() || jt != pw.end()) {
    int ray;
    Rational d;
    if (jt == pw.end() || (it != pv.end() && it->first < jt->first)) {
      ray = it->first;
      d = it->second;
      ++it;
    } else if (it == pv.end() || jt->first < it->first) {
      ray = jt->first;
      d = -jt->second;
      ++jt;
    } else {
      ray = it->first;
      d = it->second - jt->second;
      ++it;
      ++jt;
    }
    if (d != 0) diff.push_back({mk.rank.at(ray), d});
  }
  if (diff.empty()) return Order::EQ_PROJ;
  // every vertex where one side falls short is outweighed by a higher-rank vertex where it exceeds
  auto dominated = [&](int sign) {
    for (const auto& [r, d] : diff) {
      if (d * sign >= 0) continue;
      bool ok = false;
      for (const auto& [r2, d2] : diff)
        if (d2 * sign > 0 && r2 > r) ok = true;
      if (!ok) return false;
    }
    return true;
  };
  if (dominated(1)) return Order::GT;
  if (dominated(-1)) return Order::LT;
  return Order::INCOMPARABLE;
}

}  // namespace

Order order_compare(const ConicalComplex& k, const Marking& mk, int cone_id, const IntVector& v, const IntVector& w) {
  return compare_projections(mk, project(k, mk, cone_id, v), project(k, mk, cone_id, w));
}

IntVector minimal_in_order(const ConicalComplex& k, const Marking& mk, int cone_id, const std::vector<IntVector>& vs) {
  if (vs.empty()) throw Error(ErrorCode::NoSmallVectors, "no candidates in cone " + std::to_string(cone_id));
  std::vector<Projection> proj;
  proj.reserve(vs.size());
  for (const auto& v : vs) proj.push_back(project(k, mk, cone_id, v));
  std::vector<size_t> minimal;
  for (size_t i = 0; i < vs.size(); ++i) {
    bool is_min = true;
    for (size_t j = 0; j < vs.size() && is_min; ++j)
      if (j != i && compare_projections(mk, proj[j], proj[i]) == Order::LT) is_min = false;
    if (is_min) minimal.push_back(i);
  }
  if (minimal.size() != 1)
    throw Error(ErrorCode::UniquenessViolated,
                std::to_string(minimal.size()) + " order-minimal candidates in cone " + std::to_string(cone_id));
  return vs[minimal[0]];
}

IntVector minimal_small_vector(const ConicalComplex& k, const Marking& mk, int cone_id) {
  const Cone& c = k.cone(cone_id);
  if (!c.is_simplicial()) throw Error(ErrorCode::NotSimplicial, "small vectors need a simplicial cone");
  auto small = small_vectors(c);
  if (small.empty()) throw Error(ErrorCode::NoSmallVectors, "cone " + std::to_string(cone_id) + " is regular");
  return minimal_in_order(k, mk, cone_id, small);
}

std::vector<Violation> check_marking(const ConicalComplex& k, const Marking& mk) {
  std::vector<Violation> out;
  for (int id = 0; id < k.size(); ++id) {
    const Cone& c = k.cone(id);
    const auto& rays = k.vertex_rays(id);
    std::vector<IntVector> marked, rest;
    std::set<long long> ranks;
    bool repeated = false;
    for (Index j = 0; j < c.num_vertices(); ++j) {
      if (rays[j] >= 0 && mk.marked(rays[j])) {
        marked.push_back(c.vertices()[j]);
        if (!ranks.insert(mk.rank.at(rays[j])).second) repeated = true;
      } else {
        rest.push_back(c.vertices()[j]);
      }
    }
    if (repeated) out.push_back({"order", {id}, "marked vertices of a face share a rank"});
    if (marked.empty() || rest.empty()) continue;
    const Index n = c.ambient_dim();
    if (rank(c.vertex_matrix()) != rank(columns_of(marked, n)) + rank(columns_of(rest, n)))
      out.push_back({"independence", {id}, "marked vertices are not independent of the others"});
  }
  return out;
}

bool is_regularly_marked(const ConicalComplex& k, const Marking& mk) {
  for (int id = 0; id < k.size(); ++id) {
    bool any = false;
    for (int r : k.vertex_rays(id))
      if (r >= 0 && mk.marked(r)) any = true;
    if (!any && !is_regular(k.cone(id))) return false;
  }
  return true;
}

Marking extend_marking_after_subdivision(const ConicalComplex& subdivided, const Marking& mk,
                                         const std::vector<int>& old_to_new, const std::vector<int>& new_rays) {
  Marking out;
  for (const auto& [ray, r] : mk.rank) {
    if (ray < 0 || ray >= static_cast<int>(old_to_new.size()) || old_to_new[ray] < 0) continue;
    out.rank[old_to_new[ray]] = r;
  }
  const long long fresh = mk.top_rank() + 1;
  for (int r : new_rays)
    if (r >= 0) out.rank[r] = fresh;
  auto problems = check_marking(subdivided, out);
  if (!problems.empty())
    throw Error(ErrorCode::InvariantViolated, "marking after subdivision: " + problems.front().detail);
  return out;
}

}  // namespace fanforge
