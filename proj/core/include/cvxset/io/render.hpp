#pragma once

#include "cvxset/approximation.hpp"
#include "cvxset/sets.hpp"

#include <array>
#include <string>
#include <vector>

namespace cvxset::io {

struct PlotOptions {
  /// Draw constrained zonotopes and ellipsoids through outer_polytope instead of
  /// inner_polytope.
  bool outer = false;
  /// Spread parameter D passed to spread_points(dim, D).
  int directions = kDefaultSpreadCount;
};

struct Style {
  std::string fill = "#4c72b0";
  std::string stroke = "#1d3557";
  double fill_opacity = 0.4;
  bool faces = true;
  bool vertices = false;
};

/// The polytope drawn for a set: the set itself for polytopes, otherwise its inner (or
/// outer) polytopic approximation.
Polytope plot_polytope(const AnySet& set, const PlotOptions& opt = {});

/// Extreme points of a 2-D polytope in counterclockwise order, starting from the
/// lowest (then leftmost) vertex. Throws BadDimension unless dim == 2.
MatrixXd ccw_vertices(const Polytope& P);

struct StyledSet {
  AnySet set;
  Style style;
};

/// SVG document in data coordinates (y axis flipped by a group transform). Empty sets
/// are skipped. Output depends only on the inputs.
std::string render_svg(const std::vector<StyledSet>& sets, const PlotOptions& opt = {});

/// Triangulated boundary of a 3-D set. Each triangle lists vertex indices in
/// counterclockwise order seen from outside, with its outward unit normal.
struct Mesh {
  MatrixXd vertices;  // one point per row
  std::vector<std::array<int, 3>> triangles;
  MatrixXd normals;   // one row per triangle
  int num_edges() const;
};

/// Throws BadDimension unless dim == 3.
Mesh export_mesh(const AnySet& set, const PlotOptions& opt = {});

/// {"vertices": [[...]], "triangles": [[i, j, k], ...], "normals": [[...]]}
std::string emit_mesh(const Mesh& mesh);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

}  // namespace cvxset::io
