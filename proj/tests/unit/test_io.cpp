#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/io/expression.hpp"
#include "cvxset/io/json_format.hpp"
#include "cvxset/io/render.hpp"

#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

using namespace cvxset;
using namespace cvxset::io;
using namespace testing;

namespace {

Polytope pentagon() { return Polytope::from_vertices(pentagon_vertices()); }

Environment paper_env() {
  Environment env;
  env["P1"] = AnySet(pentagon());
  env["C1"] = AnySet(ConstrainedZonotope::from_polytope(Polytope::from_halfspaces(pentagon_A(), pentagon_b())));
  env["P2"] = AnySet(Polytope::from_halfspaces(-MatrixXd::Identity(3, 3), VectorXd::Zero(3), MatrixXd::Ones(1, 3),
                                               VectorXd::Ones(1)));
  env["B"] = AnySet(Polytope::rect(vec({-1, -1}), vec({1, 1})));
  env["Z"] = AnySet(ConstrainedZonotope::zonotope(rows({{0.2, 0.1}, {0, 0.1}}), vec({0, 0})));
  env["E"] = AnySet(Ellipsoid::from_shape(rows({{1, 0}, {0, 4}}), vec({2, -1})));
  env["M"] = rows({{0, -1}, {1, 0}});
  env["v"] = vec({1, 0});
  return env;
}

bool as_bool(const Value& v) { return std::get<bool>(v); }
AnySet as_set(const Value& v) { return std::get<AnySet>(v); }

ExprError::Kind expr_error_kind(const std::string& text, const Environment& env) {
  try {
    eval_expression(text, env);
  } catch (const ExprError& e) {
    return e.kind();
  }
  FAIL("expected an expression error for " << text);
  return ExprError::Kind::SyntaxError;
}

}  // namespace

TEST_CASE("io: set documents round trip bit-exactly") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const MatrixXd pts = oracle::gaussian_points(rng, 6, 2, 1.0 / 3);
    const std::vector<AnySet> sets = {
        AnySet(Polytope::from_vertices(pts)),
        AnySet(Polytope::from_vertices(pts).to_hrep()),
        AnySet(ConstrainedZonotope::from_polytope(Polytope::from_vertices(pts))),
        AnySet(Ellipsoid::from_generator(oracle::gaussian_points(rng, 2, 2) + MatrixXd::Identity(2, 2),
                                         oracle::gaussian_vector(rng, 2))),
    };
    for (const auto& s : sets) {
      const std::string text = emit_set(s, "X");
      const SetDocument doc = parse_set(text);
      CHECK(doc.name == "X");
      CHECK(bit_equal(doc.set, s));
      CHECK(emit_set(doc.set, "X") == text);
    }
  }
  CHECK(bit_equal(parse_set(emit_set(AnySet(Polytope::empty(2)))).set, AnySet(Polytope::empty(2))));
}

TEST_CASE("io: malformed documents") {
  CHECK_THROWS_AS(parse_set("{"), FormatError);
  CHECK_THROWS_AS(parse_set(R"({"type": "polytope", "V": [[1, 2], [3]]})"), FormatError);
  CHECK_THROWS_AS(parse_set(R"({"type": "sphere"})"), FormatError);
  CHECK_THROWS_AS(parse_set(R"({"type": "ellipsoid", "c": [0, 0]})"), FormatError);
}

TEST_CASE("io: numbers use the shortest round-trip form") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
  const MatrixXd D = spread_points(2, 3);
  CHECK(parse_directions(emit_directions(D)) == D);
}

TEST_CASE("io: expression parsing") {
  CHECK(to_string(*parse_expression("M @ X + Y")) == "((M @ X) + Y)");
  CHECK(parse_expression("X - Y")->op == Expr::Op::Sub);
  CHECK(parse_expression("X ** 2")->op == Expr::Op::Pow);
  CHECK(to_string(*parse_expression("-X ** 2")) == "(-(X ** 2))");
  CHECK(to_string(*parse_expression("A + B - C")) == "((A + B) - C)");
  CHECK(to_string(*parse_expression("X <= Y + Z")) == "(X <= (Y + Z))");
  CHECK(parse_expression("intersect(X, Y)")->op == Expr::Op::Call);

  try {
    parse_expression("X + ");
    FAIL("no error");
  } catch (const ExprError& e) {
    CHECK(e.kind() == ExprError::Kind::SyntaxError);
    CHECK(e.position() >= 3);
  }
  CHECK_THROWS_AS(parse_expression("(X"), ExprError);
  CHECK_THROWS_AS(parse_expression("X $ Y"), ExprError);
}

TEST_CASE("io: expression evaluation") {
  const Environment env = paper_env();
  CHECK(as_bool(eval_expression("C1 == P1", env)));
  CHECK(as_bool(eval_expression("intersect(B, P1) == P1", env)));
  CHECK_FALSE(as_bool(eval_expression("[1, 1, 1] in P2", env)));
  CHECK(as_bool(eval_expression("[0.2, 0.3, 0.5] in P2", env)));
  CHECK(as_bool(eval_expression("P1 <= B", env)));
  CHECK_FALSE(as_bool(eval_expression("B <= P1", env)));

  const AnySet shifted = as_set(eval_expression("B + v", env));
  CHECK(set_equal(shifted, AnySet(Polytope::rect(vec({0, -1}), vec({2, 1})))));

  const AnySet sum = as_set(eval_expression("P1 + Z", env));
  CHECK(set_equal(sum, AnySet(minkowski_sum(pentagon(), std::get<ConstrainedZonotope>(std::get<AnySet>(env.at("Z"))).to_polytope()))));

  const AnySet diff = as_set(eval_expression("B - Z", env));
  CHECK(set_equal(diff, AnySet(Polytope::rect(vec({-0.7, -0.9}), vec({0.7, 0.9})))));

  const AnySet power = as_set(eval_expression("P1 ** 2", env));
  CHECK(dim(power) == 4);

  const AnySet rotated = as_set(eval_expression("M @ P1", env));
  CHECK(set_equal(rotated, AnySet(pentagon().affine_map(rows({{0, -1}, {1, 0}})))));
  const AnySet preimage = as_set(eval_expression("P1 @ M", env));
  CHECK(set_equal(preimage, AnySet(pentagon().inverse_affine_map(rows({{0, -1}, {1, 0}})))));

  CHECK(std::get<double>(eval_expression("support(P1, [1, 1])", env)) == doctest::Approx(2.0));
  CHECK(std::get<double>(eval_expression("volume(P1)", env)) == doctest::Approx(2.875));
  CHECK(std::get<double>(eval_expression("volume(E)", env)) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("io: expression errors") {
  const Environment env = paper_env();
  CHECK(expr_error_kind("Q + P1", env) == ExprError::Kind::UnboundName);
  CHECK(expr_error_kind("P1 + M", env) == ExprError::Kind::TypeError);
  CHECK(throws_kind([&] { eval_expression("E + E", env); }, ErrorKind::UnsupportedOperandPair));
  CHECK(throws_kind([&] { eval_expression("P1 + P2", env); }, ErrorKind::DimensionMismatch));
  CHECK(throws_kind([&] { eval_expression("E - Z", env); }, ErrorKind::UnsupportedOperandPair));
}

TEST_CASE("io: expressions agree with direct calls on random trees") {
  // Each tree is built twice: as text and by calling the library directly.
  std::mt19937_64 rng(77);
  Environment env;
  std::vector<Polytope> leaves;
  for (int i = 0; i < 4; ++i) {
    leaves.push_back(Polytope::from_vertices(oracle::gaussian_points(rng, 5, 2, 0.5)));
    env["X" + std::to_string(i)] = AnySet(leaves.back());
  }
  env["M"] = rows({{1, 0.5}, {-0.3, 1}});
  env["v"] = vec({0.2, -0.1});
  const MatrixXd M = std::get<MatrixXd>(env["M"]);
  const VectorXd v = std::get<VectorXd>(env["v"]);

  std::uniform_int_distribution<int> pick(0, 3);
  std::function<std::pair<std::string, Polytope>(int)> build = [&](int depth) -> std::pair<std::string, Polytope> {
    if (depth == 0) {
      const int i = pick(rng);
      return {"X" + std::to_string(i), leaves[i]};
    }
    auto [ls, lp] = build(depth - 1);
    switch (pick(rng)) {
      case 0: {
        auto [rs, rp] = build(depth - 1);
        return {"(" + ls + " + " + rs + ")", minkowski_sum(lp, rp)};
      }
      case 1:
        return {"(M @ " + ls + ")", lp.affine_map(M)};
      case 2:
        return {"(" + ls + " + v)", lp.translate(v)};
      default: {
        auto [rs, rp] = build(depth - 1);
        return {"intersect(" + ls + " + " + rs + ", " + ls + ")", intersect(minkowski_sum(lp, rp), lp)};
      }
    }
  };
  for (int k = 0; k < 50; ++k) {
    const auto [text, direct] = build(1 + k % 3);
    const AnySet got = as_set(eval_expression(text, env));
    CHECK_MESSAGE(set_equal(got, AnySet(direct)), text);
  }
}

TEST_CASE("io: environment documents") {
  const Environment env = parse_environment(R"({
    "S": {"type": "polytope", "V": [[0, 0], [1, 0], [0, 1]]},
    "M": [[1, 0], [0, 2]],
    "v": [1, 2],
    "k": 3,
    "flag": true
  })");
  CHECK(value_kind(env.at("S")) == "polytope");
  CHECK(value_kind(env.at("M")) == "matrix");
  CHECK(value_kind(env.at("v")) == "vector");
  CHECK(value_kind(env.at("k")) == "scalar");
  CHECK(std::get<bool>(env.at("flag")));
}

TEST_CASE("render: polygons") {
  const MatrixXd V = ccw_vertices(pentagon());
  REQUIRE(V.rows() == 5);
  CHECK(oracle::shoelace(V) == doctest::Approx(2.875));
  for (int i = 0; i < 5; ++i) {
    const int j = (i + 1) % 5, k = (i + 2) % 5;
    const double cross = (V(j, 0) - V(i, 0)) * (V(k, 1) - V(j, 1)) - (V(j, 1) - V(i, 1)) * (V(k, 0) - V(j, 0));
    CHECK(cross > 0);
  }

  const std::string svg = render_svg({{AnySet(pentagon()), Style{}}});
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex(R"(points="([^"]*)\")")));
  const std::string pts = m[1];
  CHECK(std::count(pts.begin(), pts.end(), ' ') == 4);
  CHECK(render_svg({{AnySet(pentagon()), Style{}}}) == svg);
  CHECK(throws_kind([] { ccw_vertices(Polytope::rect(vec({0, 0, 0}), vec({1, 1, 1}))); }, ErrorKind::BadDimension));
}

TEST_CASE("render: inner approximation of an ellipse stays inside") {
  const Ellipsoid E = Ellipsoid::from_shape(rows({{1, 0}, {0, 4}}), vec({2, -1}));
  const std::string svg = render_svg({{AnySet(E), Style{}}}, PlotOptions{false, 20});
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, std::regex(R"(points="([^"]*)\")")));
  std::stringstream in(m[1].str());
  std::string pair;
  int count = 0;
  while (in >> pair) {
    const auto comma = pair.find(',');
    const VectorXd x = vec({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
    const VectorXd d = x - E.c();
    CHECK(d.dot(E.Q() * d) <= 1 + 1e-9);
    ++count;
  }
  CHECK(count > 20);
}

TEST_CASE("render: meshes") {
  MatrixXd V(4, 3);
  V << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  const Mesh mesh = export_mesh(AnySet(Polytope::from_vertices(V)));
  CHECK(mesh.triangles.size() == 4);
  CHECK(mesh.vertices.rows() - mesh.num_edges() + static_cast<int>(mesh.triangles.size()) == 2);
  const VectorXd centroid = mesh.vertices.colwise().mean().transpose();
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const VectorXd a = mesh.vertices.row(tri[0]).transpose();
    const Eigen::Vector3d e1 = mesh.vertices.row(tri[1]).transpose() - a;
    const Eigen::Vector3d e2 = mesh.vertices.row(tri[2]).transpose() - a;
    const Eigen::Vector3d n = mesh.normals.row(t).transpose();
    CHECK(e1.cross(e2).dot(n) > 0);
    CHECK(n.dot(a - centroid) > 0);
  }

  const Mesh cube = export_mesh(AnySet(Polytope::rect(vec({-1, -1, -1}), vec({1, 1, 1}))));
  CHECK(cube.triangles.size() == 12);
  CHECK(cube.vertices.rows() - cube.num_edges() + static_cast<int>(cube.triangles.size()) == 2);
  CHECK(emit_mesh(cube) == emit_mesh(export_mesh(AnySet(Polytope::rect(vec({-1, -1, -1}), vec({1, 1, 1}))))));
  CHECK(throws_kind([] { export_mesh(AnySet(pentagon())); }, ErrorKind::BadDimension));
}
