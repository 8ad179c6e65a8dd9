#include "fanforge/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fanforge {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Integer parse_integer(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-+0123456789") != std::string::npos) parse_fail("not an integer: " + s);
    try {
      return Integer(s);
    } catch (const std::exception&) {
      parse_fail("not an integer: " + s);
    }
  }
  if (j.is_number_integer()) return Integer(j.get<long long>());
  parse_fail("expected an integer, got " + j.dump());
}

long long parse_id(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) return parse_integer(j).convert_to<long long>();
  parse_fail(std::string("bad ") + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Marking parse_ranks(const Json& j, const ComplexDocument& doc) {
  Marking mk;
  if (!j.is_array()) parse_fail("rank list must be an array");
  for (const auto& e : j) {
    int id = doc.internal_id(parse_id(field(e, "vertex_id"), "vertex_id"));
    if (doc.complex.dim(id) != 1) parse_fail("ranked vertex is not a ray");
    mk.rank[id] = parse_id(field(e, "rank"), "rank");
  }
  return mk;
}

Json ranks_json(const Marking& mk) {
  Json a = Json::array();
  for (const auto& [ray, r] : mk.rank) a.push_back({{"vertex_id", ray}, {"rank", r}});
  return a;
}

}  // namespace

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i).str());
  return a;
}

IntVector parse_vector(const Json& j) {
  if (!j.is_array()) parse_fail("expected an array of integers");
  IntVector v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = parse_integer(j[i]);
  return v;
}

IntMatrix parse_rows(const Json& j) {
  if (!j.is_array()) parse_fail("expected a matrix as a list of rows");
  if (j.empty()) return IntMatrix(0, 0);
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(parse_vector(r));
  const Index cols = rows.front().size();
  IntMatrix m(static_cast<Index>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) parse_fail("ragged matrix");
    m.row(static_cast<Index>(i)) = rows[i].transpose();
  }
  return m;
}

Json rows_json(const IntMatrix& m) {
  Json a = Json::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i).transpose()));
  return a;
}

RelativeComplex ComplexDocument::relative() const {
  RelativeComplex rk;
  rk.complex = complex;
  rk.omega = omega;
  rk.omega_order = omega_order;
  return rk;
}

int ComplexDocument::internal_id(long long doc_id) const {
  for (size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == doc_id) return static_cast<int>(i);
  throw Error(ErrorCode::UnknownId, "no cone with id " + std::to_string(doc_id));
}

ComplexDocument parse_complex(const Json& in) {
  const Json& j = (in.is_object() && in.contains("complex") && !in.contains("cones")) ? in.at("complex") : in;
  if (!j.is_object()) parse_fail("complex document must be an object");
  if (j.contains("schema_version") && parse_id(j.at("schema_version"), "schema_version") != 1)
    parse_fail("unsupported schema_version");
  ComplexDocument doc;
  const Json& cones = field(j, "cones");
  if (!cones.is_array()) parse_fail("\"cones\" must be an array");
  std::vector<ComplexCone> built;
  std::vector<long long> frames;
  for (const auto& c : cones) {
    const long long id = parse_id(field(c, "id"), "id");
    for (long long seen : doc.ids)
      if (seen == id) parse_fail("duplicate cone id " + std::to_string(id));
    doc.ids.push_back(id);
    const Json& gens_json = field(c, "generators");
    if (!gens_json.is_array()) parse_fail("\"generators\" must be an array");
    std::vector<IntVector> gens;
    for (const auto& g : gens_json) gens.push_back(parse_vector(g));
    Index n = -1;
    if (c.contains("ambient_dim")) n = parse_id(c.at("ambient_dim"), "ambient_dim");
    else if (!gens.empty()) n = gens.front().size();
    if (n < 0) parse_fail("cone " + std::to_string(id) + " needs ambient_dim");
    for (const auto& g : gens)
      if (g.size() != n) parse_fail("generator of cone " + std::to_string(id) + " has the wrong length");
    IntMatrix basis = IntMatrix::Identity(n, n);
    if (c.contains("lattice_basis")) {
      std::vector<IntVector> cols;
      for (const auto& b : c.at("lattice_basis")) cols.push_back(parse_vector(b));
      for (const auto& b : cols)
        if (b.size() != n) parse_fail("lattice basis vector of cone " + std::to_string(id) + " has the wrong length");
      basis = columns_of(cols, n);
    }
    frames.push_back(c.contains("frame") ? parse_id(c.at("frame"), "frame") : id);
    ComplexCone cc;
    try {
      cc.cone = Cone::with_lattice(basis, columns_of(gens, n));
      if (c.contains("dim") && parse_id(c.at("dim"), "dim") != cc.cone.dim())
        doc.problems.push_back({"dimension", {static_cast<int>(doc.ids.size() - 1)}, "declared dim differs from the generators"});
    } catch (const Error& e) {
      std::string clause = e.code() == ErrorCode::NotStrictlyConvex ? "convexity" : "lattice";
      doc.problems.push_back({clause, {static_cast<int>(doc.ids.size() - 1)}, e.what()});
    }
    built.push_back(std::move(cc));
  }
  if (j.contains("faces")) {
    for (const auto& f : j.at("faces")) {
      int sub = doc.internal_id(parse_id(field(f, "sub"), "sub"));
      int super = doc.internal_id(parse_id(field(f, "super"), "super"));
      IntMatrix m;
      if (f.contains("matrix")) {
        m = parse_rows(f.at("matrix"));
        if (m.rows() == 0) m = IntMatrix(built[super].cone.ambient_dim(), built[sub].cone.ambient_dim());
      } else {
        const Index a = built[super].cone.ambient_dim(), b = built[sub].cone.ambient_dim();
        if (a != b) parse_fail("face without matrix between different ambient dimensions");
        m = IntMatrix::Identity(a, b);
      }
      built[super].faces.push_back({sub, m, {}});
    }
  }
  for (size_t i = 0; i < built.size(); ++i) {
    const long long fr = frames[i];
    for (size_t t = 0; t < doc.ids.size(); ++t)
      if (doc.ids[t] == fr) built[i].frame = static_cast<int>(t);
  }
  if (!doc.problems.empty()) return doc;
  doc.complex = ConicalComplex(std::move(built));
  if (j.contains("marked")) doc.marked = parse_ranks(j.at("marked"), doc);
  if (j.contains("omega")) {
    doc.has_omega = true;
    for (const auto& w : j.at("omega")) doc.omega.push_back(doc.internal_id(parse_id(w, "omega id")));
    std::sort(doc.omega.begin(), doc.omega.end());
    doc.omega.erase(std::unique(doc.omega.begin(), doc.omega.end()), doc.omega.end());
    if (!is_subcomplex(doc.complex, doc.omega)) parse_fail("omega is not closed under faces");
  }
  if (j.contains("omega_order")) doc.omega_order = parse_ranks(j.at("omega_order"), doc);
  return doc;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

ComplexDocument load_complex(const std::string& path) {
  try {
    return parse_complex(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

Json complex_to_json(const ConicalComplex& k, const Marking* marked, const std::vector<int>* omega,
                     const Marking* omega_order) {
  Json j;
  j["schema_version"] = 1;
  Json cones = Json::array();
  Json faces = Json::array();
  for (int id = 0; id < k.size(); ++id) {
    const Cone& c = k.cone(id);
    Json cj;
    cj["id"] = id;
    cj["dim"] = c.dim();
    cj["ambient_dim"] = c.ambient_dim();
    if (k.frame(id) != id) cj["frame"] = k.frame(id);
    Json basis = Json::array();
    for (Index t = 0; t < c.lattice_basis().cols(); ++t) basis.push_back(vector_json(c.lattice_basis().col(t)));
    cj["lattice_basis"] = basis;
    Json gens = Json::array();
    for (const auto& v : c.vertices()) gens.push_back(vector_json(v));
    cj["generators"] = gens;
    cones.push_back(cj);
    for (const auto& l : k.faces(id)) faces.push_back({{"sub", l.sub}, {"super", id}, {"matrix", rows_json(l.map)}});
  }
  j["cones"] = cones;
  j["faces"] = faces;
  if (marked && !marked->rank.empty()) j["marked"] = ranks_json(*marked);
  if (omega) j["omega"] = *omega;
  if (omega_order) j["omega_order"] = ranks_json(*omega_order);
  return j;
}

MapDocument parse_map(const Json& j) {
  MapDocument doc;
  doc.source = parse_complex(field(j, "source"));
  doc.target = parse_complex(field(j, "target"));
  if (!doc.source.problems.empty() || !doc.target.problems.empty()) parse_fail("map document holds an invalid complex");
  if (j.contains("global_matrix")) {
    doc.global_matrix = parse_rows(j.at("global_matrix"));
    doc.map = induced_fan_map(doc.source.complex, doc.target.complex, *doc.global_matrix);
    return doc;
  }
  const Json& entries = field(j, "map");
  const int n = doc.source.complex.size();
  doc.map.image.assign(n, -1);
  doc.map.linear.assign(n, IntMatrix());
  for (const auto& e : entries) {
    int s = doc.source.internal_id(parse_id(field(e, "cone"), "cone"));
    int t = doc.target.internal_id(parse_id(field(e, "image"), "image"));
    doc.map.image[s] = t;
    doc.map.linear[s] = parse_rows(field(e, "matrix"));
  }
  return doc;
}

MapDocument load_map(const std::string& path) {
  try {
    return parse_map(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

Json pl_to_json(const PLFunction& f) {
  Json j = Json::object();
  for (const auto& [id, m] : f.functional) {
    Json a = Json::array();
    for (Index i = 0; i < m.size(); ++i) a.push_back(rational_str(m(i)));
    j[std::to_string(id)] = a;
  }
  return j;
}

Json coefficients_to_json(const std::map<int, Rational>& c) {
  Json j = Json::object();
  for (const auto& [ray, x] : c) j[std::to_string(ray)] = rational_str(x);
  return j;
}

Json slice_to_json(const ValuationIdealSlice& s) {
  Json j;
  j["v"] = vector_json(s.v);
  j["a"] = s.a.str();
  j["degree_bound"] = s.degree_bound;
  Json cones = Json::array();
  for (const auto& c : s.cones) {
    Json g = Json::array();
    for (const auto& v : c.generators) g.push_back(vector_json(v));
    cones.push_back({{"cone_id", c.cone_id}, {"generators", g}});
  }
  j["cones"] = cones;
  return j;
}

}  // namespace fanforge
