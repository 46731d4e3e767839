#include "cvxset/io/render.hpp"

#include "cvxset/error.hpp"
#include "cvxset/hull.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace cvxset::io {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

const DirectionSet& directions_for(int n, int D) {
  if (D == kDefaultSpreadCount) return default_directions(n);
  thread_local DirectionSet last;
  last = spread_points(n, D);
  return last;
}

// Sort `idx` by angle about `center` in the plane spanned by (u, w).
void sort_by_angle(std::vector<int>& idx, const MatrixXd& pts, const VectorXd& center, const VectorXd& u,
                   const VectorXd& w) {
  std::vector<double> ang(pts.rows());
  for (int i : idx) {
    const VectorXd d = pts.row(i).transpose() - center;
    ang[i] = std::atan2(d.dot(w), d.dot(u));
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return ang[a] < ang[b]; });
}

}  // namespace

Polytope plot_polytope(const AnySet& set, const PlotOptions& opt) {
  if (const auto* p = std::get_if<Polytope>(&set)) return *p;
  if (is_empty(set)) return Polytope::empty(dim(set), tolerance(set));
  const DirectionSet& dirs = directions_for(dim(set), opt.directions);
  return std::visit(
      [&](const auto& x) -> Polytope {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Polytope>) return x;
        else return opt.outer ? outer_polytope(x, dirs) : inner_polytope(x, dirs);
      },
      set);
}

MatrixXd ccw_vertices(const Polytope& P) {
  if (P.dim() != 2) fail(ErrorKind::BadDimension, "2-D rendering needs a set in R^2");
  if (P.is_empty()) return MatrixXd(0, 2);
  const MatrixXd V = geometry::convex_hull(P.vertices(), P.tolerance()).vertices;
  std::vector<int> idx(V.rows());
  std::iota(idx.begin(), idx.end(), 0);
  if (V.rows() > 2) {
    const VectorXd center = V.colwise().mean().transpose();
    sort_by_angle(idx, V, center, VectorXd::Unit(2, 0), VectorXd::Unit(2, 1));
  }
  const auto start = std::min_element(idx.begin(), idx.end(), [&](int a, int b) {
    return V(a, 1) < V(b, 1) || (V(a, 1) == V(b, 1) && V(a, 0) < V(b, 0));
  });
  std::rotate(idx.begin(), start, idx.end());
  return select_rows(V, idx);
}

std::string render_svg(const std::vector<StyledSet>& sets, const PlotOptions& opt) {
  std::vector<MatrixXd> polys;
  VectorXd lo = VectorXd::Constant(2, std::numeric_limits<double>::infinity());
  VectorXd hi = -lo;
  for (const auto& s : sets) {
    if (dim(s.set) != 2) fail(ErrorKind::BadDimension, "2-D rendering needs sets in R^2");
    polys.push_back(ccw_vertices(plot_polytope(s.set, opt)));
    if (polys.back().rows()) {
      lo = lo.cwiseMin(polys.back().colwise().minCoeff().transpose());
      hi = hi.cwiseMax(polys.back().colwise().maxCoeff().transpose());
    }
  }
  if (!std::isfinite(lo(0))) {
    lo.setConstant(-1.0);
    hi.setConstant(1.0);
  }
  const double span = std::max({hi(0) - lo(0), hi(1) - lo(1), 1e-9});
  const double pad = 0.05 * span;
  const double x0 = lo(0) - pad, y0 = lo(1) - pad;
  const double w = hi(0) - lo(0) + 2 * pad, h = hi(1) - lo(1) + 2 * pad;
  const double marker = 0.008 * span;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(x0) << ' '
     << format_number(-(y0 + h)) << ' ' << format_number(w) << ' ' << format_number(h)
     << "\" width=\"480\" height=\"" << format_number(std::round(480.0 * h / w)) << "\">\n";
  os << "<g transform=\"scale(1,-1)\">\n";
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const MatrixXd& V = polys[k];
    if (V.rows() == 0) continue;
    const Style& st = sets[k].style;
    if (st.faces) {
      os << "<polygon points=\"";
      for (int i = 0; i < V.rows(); ++i)
        os << (i ? " " : "") << format_number(V(i, 0)) << ',' << format_number(V(i, 1));
      os << "\" fill=\"" << st.fill << "\" fill-opacity=\"" << format_number(st.fill_opacity) << "\" stroke=\""
         << st.stroke << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    if (st.vertices) {
      for (int i = 0; i < V.rows(); ++i)
        os << "<circle cx=\"" << format_number(V(i, 0)) << "\" cy=\"" << format_number(V(i, 1)) << "\" r=\""
           << format_number(marker) << "\" fill=\"" << st.stroke << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

int Mesh::num_edges() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) edges.emplace(std::min(t[k], t[(k + 1) % 3]), std::max(t[k], t[(k + 1) % 3]));
  return static_cast<int>(edges.size());
}

Mesh export_mesh(const AnySet& set, const PlotOptions& opt) {
  if (dim(set) != 3) fail(ErrorKind::BadDimension, "mesh export needs a set in R^3");
  Mesh mesh;
  mesh.vertices.resize(0, 3);
  mesh.normals.resize(0, 3);
  const Polytope P = plot_polytope(set, opt);
  if (P.is_empty()) return mesh;
  const Tolerance& tol = P.tolerance();
  const auto hull = geometry::convex_hull(P.vertices(), tol);
  mesh.vertices = hull.vertices;
  const MatrixXd& V = mesh.vertices;

  // Facets as (outward normal, offset); a flat set contributes one face.
  MatrixXd facetA = hull.A;
  VectorXd facetb = hull.b;
  if (hull.affine_dim == 2) {
    facetA = hull.Ae.topRows(1);
    facetb = hull.be.head(1);
  } else if (hull.affine_dim < 2) {
    return mesh;
  }
  const double eps = std::max(1e-7, 1e3 * tol.feas) * std::max(1.0, V.cwiseAbs().maxCoeff());
  std::vector<VectorXd> normals;
  for (int f = 0; f < facetA.rows(); ++f) {
    const VectorXd a = facetA.row(f).transpose().normalized();
    std::vector<int> on;
    for (int i = 0; i < V.rows(); ++i)
      if (std::abs(V.row(i).dot(facetA.row(f)) - facetb(f)) <= eps) on.push_back(i);
    if (on.size() < 3) continue;
    VectorXd center = VectorXd::Zero(3);
    for (int i : on) center += V.row(i).transpose();
    center /= static_cast<double>(on.size());
    // In-plane basis (u, w) with u x w = a, so increasing angle is counterclockwise
    // seen from the outside.
    const int ref = static_cast<int>(std::distance(a.data(), std::min_element(a.data(), a.data() + 3,
                                                   [](double x, double y) { return std::abs(x) < std::abs(y); })));
    const Eigen::Vector3d a3 = a;
    const Eigen::Vector3d u = a3.cross(Eigen::Vector3d::Unit(ref)).normalized();
    const Eigen::Vector3d w = a3.cross(u);
    sort_by_angle(on, V, center, u, w);
    const auto first = std::min_element(on.begin(), on.end());
    std::rotate(on.begin(), first, on.end());
    for (std::size_t k = 1; k + 1 < on.size(); ++k) {
      mesh.triangles.push_back({on[0], on[k], on[k + 1]});
      normals.push_back(a);
    }
  }
  mesh.normals.resize(static_cast<Eigen::Index>(normals.size()), 3);
  for (std::size_t k = 0; k < normals.size(); ++k) mesh.normals.row(static_cast<Eigen::Index>(k)) = normals[k];
  return mesh;
}

std::string emit_mesh(const Mesh& mesh) {
  detail::json j;
  j["vertices"] = detail::to_json(mesh.vertices);
  j["triangles"] = mesh.triangles;
  j["normals"] = detail::to_json(mesh.normals);
  return detail::pretty(j);
}

}  // namespace cvxset::io
