#include "cvxset/io/json_format.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cvxset::io {

namespace detail {

json set_to_json(const AnySet& set, const std::string& name) {
  json j;
  j["format_version"] = kFormatVersion;
  j["type"] = std::string(kind_name(kind_of(set)));
  if (!name.empty()) j["name"] = name;
  j["dim"] = dim(set);
  if (is_empty(set)) {
    j["empty"] = true;
    return j;
  }
  if (const auto* p = std::get_if<Polytope>(&set)) {
    if (p->has_vrep()) j["V"] = to_json(p->V());
    if (p->has_hrep()) {
      j["A"] = to_json(p->A());
      j["b"] = to_json(p->b());
      j["Ae"] = to_json(p->Ae());
      j["be"] = to_json(p->be());
    }
  } else if (const auto* z = std::get_if<ConstrainedZonotope>(&set)) {
    j["G"] = to_json(z->G());
    j["c"] = to_json(z->c());
    j["Ae"] = to_json(z->Ae());
    j["be"] = to_json(z->be());
  } else {
    const auto& e = std::get<Ellipsoid>(set);
    j["Q"] = to_json(e.Q());
    j["G"] = to_json(e.G());
    j["c"] = to_json(e.c());
  }
  return j;
}

AnySet set_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object()) throw FormatError("set document must be an object");
  const std::string type = field(j, "type", "set").get<std::string>();
  if (j.contains("format_version") && j["format_version"] != kFormatVersion)
    throw FormatError("unsupported format_version");
  const bool empty = j.value("empty", false);
  if (type == "polytope") {
    const bool hasV = j.contains("V");
    const bool hasH = j.contains("A") || j.contains("Ae");
    if (empty || (!hasV && !hasH)) {
      if (!j.contains("dim")) throw FormatError("polytope: need V, A/b, or dim with empty");
      return Polytope::empty(j["dim"].get<int>(), tol);
    }
    int n = j.value("dim", 0);
    MatrixXd V;
    if (hasV) {
      V = to_matrix(j["V"], "V", n);
      n = static_cast<int>(V.cols());
    }
    MatrixXd A(0, n), Ae(0, n);
    VectorXd b(0), be(0);
    if (j.contains("A")) {
      A = to_matrix(j["A"], "A", n);
      b = to_vector(field(j, "b", "polytope"), "b");
      if (A.rows()) n = static_cast<int>(A.cols());
    }
    if (j.contains("Ae")) {
      Ae = to_matrix(j["Ae"], "Ae", n);
      be = to_vector(field(j, "be", "polytope"), "be");
      if (Ae.rows()) n = static_cast<int>(Ae.cols());
    }
    if (A.rows() == 0) A.resize(0, n);
    if (Ae.rows() == 0) Ae.resize(0, n);
    if (hasV && hasH) return Polytope::from_both(V, A, b, Ae, be, tol);
    if (hasV) return Polytope::from_vertices(V, tol);
    return Polytope::from_halfspaces(A, b, Ae, be, tol);
  }
  if (type == "czonotope") {
    if (empty) return ConstrainedZonotope::empty(field(j, "dim", "czonotope").get<int>(), tol);
    const VectorXd c = to_vector(field(j, "c", "czonotope"), "c");
    const MatrixXd G = to_matrix(field(j, "G", "czonotope"), "G", 0);
    const int N = G.rows() ? static_cast<int>(G.cols()) : 0;
    MatrixXd Ae(0, N);
    VectorXd be(0);
    if (j.contains("Ae")) {
      Ae = to_matrix(j["Ae"], "Ae", N);
      be = to_vector(field(j, "be", "czonotope"), "be");
    }
    return ConstrainedZonotope(G.rows() ? G : MatrixXd(c.size(), N), c, Ae, be, tol);
  }
  if (type == "ellipsoid") {
    const VectorXd c = to_vector(field(j, "c", "ellipsoid"), "c");
    const bool hasQ = j.contains("Q");
    const bool hasG = j.contains("G");
    if (hasQ && hasG) return Ellipsoid::from_parts(to_matrix(j["Q"], "Q"), to_matrix(j["G"], "G"), c, tol);
    if (hasQ) return Ellipsoid::from_shape(to_matrix(j["Q"], "Q"), c, tol);
    if (hasG) return Ellipsoid::from_generator(to_matrix(j["G"], "G"), c, tol);
    if (j.contains("r")) return Ellipsoid::ball(c, to_number(j["r"], "r"), tol);
    throw FormatError("ellipsoid: need Q, G or r");
  }
  throw FormatError("unknown set type '" + type + "'");
}

namespace {

bool is_flat(const json& j) {
  for (const auto& e : j)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

void write_pretty(std::string& out, const json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  if (j.is_array()) {
    if (j.empty() || is_flat(j)) {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      out += ']';
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_pretty(out, j[i], depth + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(2 * depth, ' ') + "]";
    return;
  }
  if (!j.is_object()) {
    out += j.dump();
    return;
  }
  static const char* const kHead[] = {"format_version", "type", "name", "dim"};
  std::vector<std::string> keys;
  for (const char* k : kHead)
    if (j.contains(k)) keys.emplace_back(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
  if (keys.empty()) {
    out += "{}";
    return;
  }
  out += "{\n";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out += pad + json(keys[i]).dump() + ": ";
    write_pretty(out, j[keys[i]], depth + 1);
    out += i + 1 < keys.size() ? ",\n" : "\n";
  }
  out += std::string(2 * depth, ' ') + "}";
}

}  // namespace

std::string pretty(const json& j) {
  std::string out;
  write_pretty(out, j, 0);
  return out + "\n";
}

}  // namespace detail

std::string emit_set(const AnySet& set, const std::string& name) {
  return detail::pretty(detail::set_to_json(set, name));
}

SetDocument parse_set(std::string_view text, const Tolerance& tol) {
  const detail::json j = detail::parse_json(text);
  SetDocument doc{detail::set_from_json(j, tol), j.value("name", std::string())};
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

SetDocument read_set_file(const std::filesystem::path& path, const Tolerance& tol) {
  return parse_set(read_text_file(path), tol);
}

std::string emit_directions(const DirectionSet& dirs) { return detail::pretty(detail::to_json(dirs)); }

DirectionSet parse_directions(std::string_view text) {
  return detail::to_matrix(detail::parse_json(text), "directions");
}

namespace {

bool same(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (std::memcmp(a.data() + k, b.data() + k, sizeof(double)) != 0) return false;
  return true;
}

}  // namespace

bool bit_equal(const AnySet& a, const AnySet& b) {
  if (a.index() != b.index() || dim(a) != dim(b) || is_empty(a) != is_empty(b)) return false;
  if (is_empty(a)) return true;
  if (const auto* p = std::get_if<Polytope>(&a)) {
    const auto& q = std::get<Polytope>(b);
    if (p->has_vrep() != q.has_vrep() || p->has_hrep() != q.has_hrep()) return false;
    if (p->has_vrep() && !same(p->V(), q.V())) return false;
    if (p->has_hrep() &&
        !(same(p->A(), q.A()) && same(p->b(), q.b()) && same(p->Ae(), q.Ae()) && same(p->be(), q.be())))
      return false;
    return true;
  }
  if (const auto* z = std::get_if<ConstrainedZonotope>(&a)) {
    const auto& y = std::get<ConstrainedZonotope>(b);
    return same(z->G(), y.G()) && same(z->c(), y.c()) && same(z->Ae(), y.Ae()) && same(z->be(), y.be());
  }
  const auto& e = std::get<Ellipsoid>(a);
  const auto& f = std::get<Ellipsoid>(b);
  return same(e.Q(), f.Q()) && same(e.G(), f.G()) && same(e.c(), f.c());
}

}  // namespace cvxset::io
