#include "fanforge/resolve.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fanforge {

namespace {

std::string str(const Integer& x) { return x.str(); }

nlohmann::ordered_json vec_json(const IntVector& v) {
  auto a = nlohmann::ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(str(v(i)));
  return a;
}

}  // namespace

Integer DetPolynomial::weight() const {
  Integer w = 0;
  for (const auto& [d, n] : coef) w += d * n;
  return w;
}

bool operator<(const DetPolynomial& a, const DetPolynomial& b) {
  std::set<Integer> degrees;
  for (const auto& kv : a.coef) degrees.insert(kv.first);
  for (const auto& kv : b.coef) degrees.insert(kv.first);
  for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) {
    long long x = a.coef.count(*it) ? a.coef.at(*it) : 0;
    long long y = b.coef.count(*it) ? b.coef.at(*it) : 0;
    if (x != y) return x < y;
  }
  return false;
}

bool operator<(const MuPolynomial& a, const MuPolynomial& b) {
  std::set<std::pair<long long, Integer>> degrees;
  for (const auto& kv : a.coef) degrees.insert(kv.first);
  for (const auto& kv : b.coef) degrees.insert(kv.first);
  for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) {
    long long x = a.coef.count(*it) ? a.coef.at(*it) : 0;
    long long y = b.coef.count(*it) ? b.coef.at(*it) : 0;
    if (x != y) return x < y;
  }
  return false;
}

DetPolynomial det_polynomial(const ConicalComplex& k) {
  for (int m : k.maximal_cones())
    if (!k.cone(m).is_simplicial())
      throw Error(ErrorCode::NotSimplicial, "maximal cone " + std::to_string(m) + " is not simplicial");
  return det_histogram(k);
}

DetPolynomial det_histogram(const ConicalComplex& k) {
  DetPolynomial p;
  for (int m : k.maximal_cones()) {
    const Cone& c = k.cone(m);
    if (!c.is_simplicial()) continue;
    Integer d = det_simplicial(c);
    if (d > 1) ++p.coef[d];
  }
  return p;
}

bool TraceCenter::operator==(const TraceCenter& o) const {
  if (frame != o.frame || carrier_vertices.size() != o.carrier_vertices.size()) return false;
  if (!same_vector(vector, o.vector)) return false;
  for (size_t i = 0; i < carrier_vertices.size(); ++i)
    if (!same_vector(carrier_vertices[i], o.carrier_vertices[i])) return false;
  return true;
}

bool operator<(const TraceCenter& a, const TraceCenter& b) {
  if (a.frame != b.frame) return a.frame < b.frame;
  if (!same_vector(a.vector, b.vector)) return lex_less(a.vector, b.vector);
  return std::lexicographical_compare(a.carrier_vertices.begin(), a.carrier_vertices.end(), b.carrier_vertices.begin(),
                                      b.carrier_vertices.end(),
                                      [](const IntVector& x, const IntVector& y) { return lex_less(x, y); });
}

std::string trace_step_json(const TraceStep& s) {
  nlohmann::ordered_json j;
  j["phase"] = s.phase;
  auto cs = nlohmann::ordered_json::array();
  for (const auto& c : s.centers) {
    nlohmann::ordered_json cj;
    cj["frame"] = c.frame;
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : c.carrier_vertices) vs.push_back(vec_json(v));
    cj["carrier_vertices"] = vs;
    cj["vector"] = vec_json(c.vector);
    cs.push_back(cj);
  }
  j["centers"] = cs;
  auto pd = nlohmann::ordered_json::array();
  for (const auto& [d, n] : s.pdet.coef) pd.push_back({str(d), n});
  j["pdet"] = pd;
  if (s.pmu) {
    auto pm = nlohmann::ordered_json::array();
    for (const auto& [key, n] : s.pmu->coef) pm.push_back({key.first, str(key.second), n});
    j["pmu"] = pm;
  }
  return j.dump();
}

std::string trace_to_json_lines(const SubdivisionTrace& t) {
  std::string out;
  for (const auto& s : t.steps) out += trace_step_json(s) + "\n";
  return out;
}

namespace detail {

TraceCenter trace_center(const ConicalComplex& k, const StarCenter& c) {
  TraceCenter t;
  t.frame = k.frame(c.carrier);
  t.carrier_vertices = k.cone(c.carrier).vertices();
  t.vector = c.vector;
  return t;
}

long long iteration_guard(const Integer& initial_weight, const ResolveOptions& opt) {
  if (opt.guard) return *opt.guard;
  if (const char* env = std::getenv("FANFORGE_SEED_GUARD")) {
    char* end = nullptr;
    long long g = std::strtoll(env, &end, 10);
    if (end != env) return g;
  }
  if (initial_weight > Integer(1) << 62) return 1LL << 62;
  return initial_weight.convert_to<long long>();
}

std::vector<int> apply_batch(ConicalComplex& k, Marking& mk, const std::vector<StarCenter>& centers,
                             const std::string& phase, SubdivisionTrace& tr, const ResolveOptions& opt,
                             std::optional<MuPolynomial> pmu) {
  TraceStep step;
  step.phase = phase;
  step.pdet = det_histogram(k);
  step.pmu = std::move(pmu);
  for (const auto& c : centers) step.centers.push_back(trace_center(k, c));
  std::sort(step.centers.begin(), step.centers.end());
  Subdivision sub = star_subdivide(k, centers);
  if (opt.on_batch) opt.on_batch(BatchEvent{k, centers, sub, phase});
  mk = extend_marking_after_subdivision(sub.complex, mk, sub.old_to_new, sub.new_rays);
  tr.steps.push_back(std::move(step));
  k = std::move(sub.complex);
  return sub.old_to_new;
}

IntVector pull_to_face(const ConicalComplex& k, int sub, int super, const IntVector& x) {
  if (sub == super) return x;
  const Cone& s = k.cone(sub);
  IntMatrix img = k.face_map(sub, super) * s.lattice_basis();
  auto c = solve_rational(img, x);
  if (!c) throw Error(ErrorCode::NotInCone, "vector is not in the face");
  IntVector coords(c->size());
  for (Index i = 0; i < c->size(); ++i) {
    if (mp::denominator((*c)(i)) != 1) throw Error(ErrorCode::NotInLattice, "vector is not in the face lattice");
    coords(i) = mp::numerator((*c)(i));
  }
  return s.lattice_basis() * coords;
}

int carrier_in(const ConicalComplex& k, int super, const IntVector& x) {
  auto ids = k.cone(super).carrier_vertices(x);
  int f = k.face_with_vertices(super, ids);
  if (f < 0) throw Error(ErrorCode::InvariantViolated, "carrier face is missing from the complex");
  return f;
}

std::vector<StarCenter> canonical_batch(const ConicalComplex& k, const std::map<int, StarCenter>& candidate_of) {
  std::map<int, StarCenter> accepted;
  for (const auto& [sigma, c] : candidate_of) {
    bool ok = true;
    for (const auto& [other, oc] : candidate_of) {
      if (!k.is_face(c.carrier, other)) continue;
      if (oc.carrier != c.carrier || !same_vector(oc.vector, c.vector)) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.emplace(c.carrier, c);
  }
  std::vector<StarCenter> out;
  for (auto& kv : accepted) out.push_back(kv.second);
  return out;
}

}  // namespace detail

ResolveResult barycentric_phase(const ConicalComplex& k, const ResolveOptions& opt) {
  ResolveResult r;
  r.complex = k;
  // only faces of the input are subdivided; track where they are now
  std::vector<int> current(k.size());
  for (int id = 0; id < k.size(); ++id) current[id] = id;
  for (int d = k.max_dim(); d >= 2; --d) {
    std::vector<StarCenter> centers;
    for (int id = 0; id < k.size(); ++id) {
      if (current[id] < 0) continue;
      const Cone& c = k.cone(id);
      if (c.dim() != d || is_regular(c) || !is_irreducible(c)) continue;
      centers.push_back({current[id], canonical_barycenter(c)});
    }
    if (centers.empty()) continue;
    auto old_to_new = detail::apply_batch(r.complex, r.marking, centers, "barycentric", r.trace, opt, std::nullopt);
    for (int& c : current)
      if (c >= 0) c = old_to_new[c];
  }
  return r;
}

ResolveResult minimal_phase(const ConicalComplex& k, const Marking& mk, const ResolveOptions& opt) {
  ResolveResult r;
  r.complex = k;
  r.marking = mk;
  DetPolynomial p = det_polynomial(r.complex);
  const long long guard = detail::iteration_guard(p.weight(), opt);
  long long iterations = 0;
  std::map<int, StarCenter> known;
  while (!p.is_zero()) {
    if (++iterations > guard)
      throw Error(ErrorCode::NonTermination, "minimal phase exceeded " + std::to_string(guard) + " batches");
    std::map<int, StarCenter> candidate_of;
    for (int m : r.complex.maximal_cones()) {
      if (is_regular(r.complex.cone(m))) continue;
      if (auto it = known.find(m); it != known.end()) {
        candidate_of[m] = it->second;
        continue;
      }
      IntVector v = minimal_small_vector(r.complex, r.marking, m);
      int carrier = detail::carrier_in(r.complex, m, v);
      candidate_of[m] = {carrier, detail::pull_to_face(r.complex, carrier, m, v)};
    }
    auto batch = detail::canonical_batch(r.complex, candidate_of);
    if (batch.empty()) throw Error(ErrorCode::InvariantViolated, "no canonical centers in the minimal phase");
    auto old_to_new = detail::apply_batch(r.complex, r.marking, batch, "minimal", r.trace, opt, std::nullopt);
    // cones outside every star keep their vertices, faces and ranks, hence their candidate
    known.clear();
    for (const auto& [m, c] : candidate_of)
      if (old_to_new[m] >= 0) known[old_to_new[m]] = {old_to_new[c.carrier], c.vector};
    DetPolynomial next = det_polynomial(r.complex);
    if (!(next < p)) throw Error(ErrorCode::InvariantViolated, "determinant invariant did not decrease");
    p = std::move(next);
  }
  return r;
}

ResolveResult resolve(const ConicalComplex& k, const ResolveOptions& opt) {
  ResolveResult bar = barycentric_phase(k, opt);
  ResolveResult out = minimal_phase(bar.complex, bar.marking, opt);
  bar.trace.steps.insert(bar.trace.steps.end(), out.trace.steps.begin(), out.trace.steps.end());
  out.trace = std::move(bar.trace);
  return out;
}

SubdivisionTrace push_trace(const ComplexMap& f, const ConicalComplex& src, const SubdivisionTrace& tr) {
  SubdivisionTrace out;
  for (const auto& step : tr.steps) {
    TraceStep s;
    s.phase = step.phase;
    for (const auto& c : step.centers) {
      if (c.frame < 0 || c.frame >= src.size() || c.frame >= static_cast<int>(f.image.size()))
        throw Error(ErrorCode::MapInvalid, "trace frame outside the map");
      const IntMatrix& l = f.linear[c.frame];
      IntMatrix verts = columns_of(c.carrier_vertices, c.vector.size());
      IntMatrix img = l * verts;
      if (rank(img) < rank(verts)) continue;
      TraceCenter t;
      t.frame = f.image[c.frame];
      t.vector = l * c.vector;
      for (const auto& v : column_list(img))
        if (!v.isZero()) t.carrier_vertices.push_back(v);
      sort_lex(t.carrier_vertices);
      t.carrier_vertices.erase(std::unique(t.carrier_vertices.begin(), t.carrier_vertices.end(),
                                           [](const IntVector& a, const IntVector& b) { return same_vector(a, b); }),
                               t.carrier_vertices.end());
      s.centers.push_back(std::move(t));
    }
    if (s.centers.empty()) continue;
    std::sort(s.centers.begin(), s.centers.end());
    out.steps.push_back(std::move(s));
  }
  return out;
}

ResolveResult replay_trace(const ConicalComplex& k, const SubdivisionTrace& tr) {
  ResolveResult r;
  r.complex = k;
  for (const auto& step : tr.steps) {
    std::vector<StarCenter> centers;
    for (const auto& c : step.centers) {
      int id = locate(r.complex, c.frame, c.vector);
      if (id < 0) throw Error(ErrorCode::FunctorialityMismatch, "trace center has no carrier");
      const auto& verts = r.complex.cone(id).vertices();
      bool same = verts.size() == c.carrier_vertices.size();
      for (size_t i = 0; same && i < verts.size(); ++i) same = same_vector(verts[i], c.carrier_vertices[i]);
      if (!same) throw Error(ErrorCode::FunctorialityMismatch, "trace carrier differs from the located cone");
      centers.push_back({id, c.vector});
    }
    detail::apply_batch(r.complex, r.marking, centers, step.phase, r.trace, {}, std::nullopt);
  }
  return r;
}

}  // namespace fanforge
