// fanforge: validate, resolve and inspect conical complexes stored as JSON.
//
// exit codes: 0 ok, 1 violations or other failures, 2 parse error,
// 3 order not total, 4 non-termination guard, 5 functoriality mismatch
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fanforge/io.hpp"

using namespace fanforge;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownId: return 2;
    case ErrorCode::OrderNotTotal: return 3;
    case ErrorCode::NonTermination: return 4;
    case ErrorCode::FunctorialityMismatch: return 5;
    default: return 1;
  }
}

std::string id_list(const ComplexDocument& doc, const std::vector<int>& ids) {
  std::string s;
  for (int id : ids) {
    if (!s.empty()) s += ",";
    s += std::to_string(id >= 0 && id < static_cast<int>(doc.ids.size()) ? doc.ids[id] : id);
  }
  return s;
}

void print_violations(const ComplexDocument& doc, const std::vector<Violation>& vs) {
  for (const auto& v : vs) std::cout << v.clause << " [" << id_list(doc, v.cone_ids) << "] " << v.detail << "\n";
}

int cmd_validate(const std::string& path) {
  ComplexDocument doc = load_complex(path);
  std::vector<Violation> vs = doc.problems;
  if (vs.empty()) {
    vs = validate(doc.complex);
    if (!doc.marked.rank.empty()) {
      auto more = check_marking(doc.complex, doc.marked);
      vs.insert(vs.end(), more.begin(), more.end());
    }
  }
  print_violations(doc, vs);
  if (!vs.empty()) return 1;
  std::cout << "ok " << doc.complex.size() << " cones, " << doc.complex.maximal_cones().size() << " maximal\n";
  return 0;
}

ComplexDocument load_valid(const std::string& path) {
  ComplexDocument doc = load_complex(path);
  auto vs = doc.problems.empty() ? validate(doc.complex) : doc.problems;
  if (!vs.empty()) {
    for (const auto& v : vs) std::cerr << v.clause << " [" << id_list(doc, v.cone_ids) << "] " << v.detail << "\n";
    // same exit status as validate reports for violations
    throw std::runtime_error(path + " is not a valid complex");
  }
  return doc;
}

Json center_json(const TraceCenter& c) {
  Json verts = Json::array();
  for (const auto& v : c.carrier_vertices) verts.push_back(vector_json(v));
  return {{"frame", c.frame}, {"carrier_vertices", verts}, {"vector", vector_json(c.vector)}};
}

// One file per trace step with the blow-up function of each center.
class DivisorWriter {
 public:
  explicit DivisorWriter(std::string dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

  void operator()(const BatchEvent& e) {
    Json centers = Json::array();
    for (const auto& c : e.centers) {
      BlowupFunction b = pl_function(e.before, c, 1);
      PLFunction f = scale(b.function, Rational(b.min_integral_a));
      centers.push_back({{"center", center_json(detail::trace_center(e.before, c))},
                         {"center_ray", b.center_ray},
                         {"a", b.min_integral_a.str()},
                         {"pl_function", pl_to_json(f)},
                         {"coefficients", coefficients_to_json(exceptional_coefficients(b.subdivided.complex, f))}});
    }
    Json j = {{"step", step_}, {"phase", e.phase}, {"centers", centers}};
    write_json(dir_ + "/step_" + std::to_string(step_) + ".json", j);
    ++step_;
  }

 private:
  std::string dir_;
  int step_ = 0;
};

int cmd_resolve(const std::string& path, bool relative, const std::string& trace_path, const std::string& divisor_dir,
                const std::string& out_path) {
  ComplexDocument doc = load_valid(path);
  ResolveOptions opt;
  std::optional<DivisorWriter> writer;
  if (!divisor_dir.empty()) {
    writer.emplace(divisor_dir);
    opt.on_batch = [&writer](const BatchEvent& e) { (*writer)(e); };
  }
  Json out;
  SubdivisionTrace trace;
  if (relative) {
    if (!doc.has_omega) throw Error(ErrorCode::ParseError, "--relative needs an omega block");
    RelativeResult r = resolve_relative(doc.relative(), opt);
    out = complex_to_json(r.complex.complex, &r.marking, &r.complex.omega, nullptr);
    trace = std::move(r.trace);
    long long bad = 0;
    for (int m : r.complex.complex.maximal_cones())
      if (!pair_status(r.complex, m).regular_pair) ++bad;
    std::cerr << "resolved: " << r.complex.complex.maximal_cones().size() << " maximal cones, " << bad
              << " relatively singular\n";
  } else {
    ResolveResult r;
    if (!doc.marked.rank.empty()) {
      auto vs = check_marking(doc.complex, doc.marked);
      if (!vs.empty()) {
        print_violations(doc, vs);
        return 1;
      }
      r = minimal_phase(doc.complex, doc.marked, opt);
    } else {
      r = resolve(doc.complex, opt);
    }
    out = complex_to_json(r.complex, &r.marking);
    trace = std::move(r.trace);
    std::cerr << "resolved: " << r.complex.maximal_cones().size() << " maximal cones, "
              << det_histogram(r.complex).coef.size() << " singular determinants left\n";
  }
  if (!trace_path.empty()) {
    std::ofstream t(trace_path);
    if (!t) throw std::runtime_error("cannot write " + trace_path);
    t << trace_to_json_lines(trace);
  }
  if (out_path.empty())
    std::cout << out.dump(1) << "\n";
  else
    write_json(out_path, out);
  return 0;
}

// centers of `tr` whose input carrier lies in the image of the map
SubdivisionTrace restrict_to_image(const ConicalComplex& dst, const ComplexMap& f, const SubdivisionTrace& tr) {
  std::vector<bool> hit(dst.size(), false);
  for (int t : f.image)
    if (t >= 0) hit[t] = true;
  SubdivisionTrace out;
  for (const auto& step : tr.steps) {
    TraceStep s;
    s.phase = step.phase;
    for (const auto& c : step.centers)
      if (hit[detail::carrier_in(dst, c.frame, c.vector)]) s.centers.push_back(c);
    if (s.centers.empty()) continue;
    std::sort(s.centers.begin(), s.centers.end());
    out.steps.push_back(std::move(s));
  }
  return out;
}

bool same_centers(const SubdivisionTrace& a, const SubdivisionTrace& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (size_t i = 0; i < a.steps.size(); ++i)
    if (a.steps[i].phase != b.steps[i].phase || !(a.steps[i].centers == b.steps[i].centers)) return false;
  return true;
}

int cmd_check_map(const std::string& path) {
  MapDocument doc = load_map(path);
  const ConicalComplex& src = doc.source.complex;
  const ConicalComplex& dst = doc.target.complex;
  MapReport rep = check_map(doc.map, src, dst);
  for (const auto& p : rep.problems) std::cout << "problem: " << p << "\n";
  std::cout << "kind: " << map_kind_name(rep.kind) << "\n";
  if (rep.kind == MapKind::invalid) return 1;
  if (rep.kind == MapKind::general) {
    std::cout << "functoriality: not applicable\n";
    return 0;
  }
  ResolveResult rs = resolve(src);
  ResolveResult rt = resolve(dst);
  SubdivisionTrace pushed = push_trace(doc.map, src, rs.trace);
  SubdivisionTrace expected = restrict_to_image(dst, doc.map, rt.trace);
  if (!same_centers(pushed, expected))
    throw Error(ErrorCode::FunctorialityMismatch, "pushed trace differs from the target trace");
  long long steps = 0, centers = 0;
  for (const auto& s : pushed.steps) {
    ++steps;
    centers += static_cast<long long>(s.centers.size());
  }
  std::cout << "functoriality: ok (" << steps << " steps, " << centers << " centers)\n";
  return 0;
}

Json vectors_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

int cmd_hilbert(const std::string& path, long long cone_id) {
  ComplexDocument doc = load_valid(path);
  const Cone& c = doc.complex.cone(doc.internal_id(cone_id));
  Json j;
  j["cone_id"] = cone_id;
  j["vertices"] = vectors_json(c.vertices());
  j["det"] = det_simplicial(c).str();
  j["small"] = vectors_json(small_vectors(c));
  j["minimal"] = vectors_json(minimal_vectors(c));
  if (c.dim() == c.ambient_dim() || c.num_vertices() > 0) {
    j["minimal_internal"] = vectors_json(minimal_internal_vectors(c));
    j["barycenter"] = c.dim() > 0 ? vector_json(canonical_barycenter(c)) : Json(nullptr);
  }
  std::cout << j.dump(1) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fanforge: canonical resolution of conical complexes"};
  app.require_subcommand(1);

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "check the structure of a complex");
  validate_cmd->add_option("file", file, "complex JSON")->required();

  bool relative = false;
  std::string trace_path, divisor_dir, out_path;
  auto* resolve_cmd = app.add_subcommand("resolve", "resolve a complex and print the result");
  resolve_cmd->add_option("file", file, "complex JSON")->required();
  resolve_cmd->add_flag("--relative", relative, "resolve relative to the omega block");
  resolve_cmd->add_option("--trace", trace_path, "write the trace as JSON lines");
  resolve_cmd->add_option("--emit-divisors", divisor_dir, "write blow-up functions per step into this directory");
  resolve_cmd->add_option("-o,--output", out_path, "write the resolved complex here instead of stdout");

  auto* map_cmd = app.add_subcommand("check-map", "classify a map and test functoriality");
  map_cmd->add_option("file", file, "map JSON")->required();

  long long cone_id = 0;
  auto* hilbert_cmd = app.add_subcommand("hilbert", "lattice vector sets of one cone");
  hilbert_cmd->add_option("cone_id", cone_id, "cone id")->required();
  hilbert_cmd->add_option("file", file, "complex JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(file);
    if (*resolve_cmd) return cmd_resolve(file, relative, trace_path, divisor_dir, out_path);
    if (*map_cmd) return cmd_check_map(file);
    if (*hilbert_cmd) return cmd_hilbert(file, cone_id);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
