// Command-line front end: inspect, convert and combine sets stored as JSON, compute
// robust controllable and trajectory sets, and emit plots.
//
// Exit status: 0 on success, 1 on a usage error, 2 when a computation or input file
// fails.

#include "diag.hpp"

#include "cvxset/error.hpp"
#include "cvxset/io/expression.hpp"
#include "cvxset/io/json_format.hpp"
#include "cvxset/io/problems.hpp"
#include "cvxset/io/render.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace {

using namespace cvxset;

constexpr int kUsage = 1;
constexpr int kFailure = 2;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else io::write_text_file(path, text);
}

AnySet convert(const AnySet& s, const std::string& to) {
  if (to == "vrep" || to == "hrep" || to == "polytope") {
    Polytope P;
    if (const auto* p = std::get_if<Polytope>(&s)) P = *p;
    else if (const auto* z = std::get_if<ConstrainedZonotope>(&s)) P = z->to_polytope();
    else fail(ErrorKind::UnsupportedOperandPair, "an ellipsoid has no exact polytope form");
    if (P.is_empty()) return P;
    if (to == "vrep") return Polytope::from_vertices(P.vertices(), P.tolerance());
    if (to == "hrep") {
      const Polytope H = P.to_hrep();
      return Polytope::from_halfspaces(H.A(), H.b(), H.Ae(), H.be(), P.tolerance());
    }
    return P;
  }
  if (const auto* p = std::get_if<Polytope>(&s)) return ConstrainedZonotope::from_polytope(*p);
  if (std::holds_alternative<ConstrainedZonotope>(s)) return s;
  fail(ErrorKind::UnsupportedOperandPair, "an ellipsoid has no exact constrained zonotope form");
}

io::Style plot_style(std::size_t k, bool markers) {
  static const char* const kFill[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"};
  io::Style st;
  st.fill = kFill[k % 6];
  st.vertices = markers;
  return st;
}

bool is_mesh_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".mesh") == 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex set manipulation: polytopes, constrained zonotopes and ellipsoids"};
  app.require_subcommand(1);

  Tolerance tol;
  app.add_option("--tol-feas", tol.feas, "Feasibility tolerance")->check(CLI::PositiveNumber);
  app.add_option("--iter-max", tol.iter_max, "Iteration cap for the solvers")->check(CLI::PositiveNumber);

  std::string file, out, to, expr, env_file, repr = "polytope", strategy = "auto";
  std::vector<std::string> files;
  bool outer = false, markers = false;
  int directions = kDefaultSpreadCount, spread_n = 2, spread_d = kDefaultSpreadCount, verify = 0;

  auto* info = app.add_subcommand("info", "Describe a set file");
  info->add_option("FILE", file, "Set document")->required()->check(CLI::ExistingFile);

  auto* conv = app.add_subcommand("convert", "Change the representation of a set");
  conv->add_option("FILE", file, "Set document")->required()->check(CLI::ExistingFile);
  conv->add_option("--to", to, "Target representation")
      ->required()
      ->check(CLI::IsMember({"vrep", "hrep", "czonotope", "polytope"}));
  conv->add_option("-o,--output", out, "Output file (default stdout)");

  auto* op = app.add_subcommand("op", "Evaluate a set expression");
  op->add_option("--expr", expr, "Expression, e.g. \"M @ X + Y\"")->required();
  op->add_option("--env", env_file, "JSON object binding the names")->check(CLI::ExistingFile);
  op->add_option("-o,--output", out, "Output file (default stdout)");

  auto* rc = app.add_subcommand("rcset", "Robust controllable sets K_0..K_N");
  rc->add_option("PROBLEM", file, "Problem document")->required()->check(CLI::ExistingFile);
  rc->add_option("-o,--output", out, "Output file (default stdout)");
  rc->add_option("--repr", repr, "Set representation")->check(CLI::IsMember({"polytope", "czonotope"}));
  rc->add_option("--strategy", strategy, "Difference strategy for constrained zonotopes")
      ->check(CLI::IsMember({"auto", "exact", "scaled"}));
  rc->add_option("--verify", verify, "Audit every step with this many samples");

  auto* traj = app.add_subcommand("trajset", "Admissible trajectory set through waypoints");
  traj->add_option("PROBLEM", file, "Problem document")->required()->check(CLI::ExistingFile);
  traj->add_option("-o,--output", out, "Output file (default stdout)");

  auto* plot = app.add_subcommand("plot", "Render 2-D sets to SVG or a 3-D set to a mesh");
  plot->add_option("FILES", files, "Set documents")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--output", out, "OUT.svg or OUT.mesh")->required();
  plot->add_flag("--outer", outer, "Use outer instead of inner approximations");
  plot->add_flag("--vertices", markers, "Mark vertices");
  plot->add_option("--directions", directions, "Spread parameter D")->check(CLI::PositiveNumber);

  auto* spread = app.add_subcommand("spread-points", "Spread unit vectors in R^N");
  spread->add_option("N", spread_n, "Dimension")->required()->check(CLI::Range(2, 8));
  spread->add_option("D", spread_d, "Spread parameter")->required()->check(CLI::PositiveNumber);
  spread->add_option("-o,--output", out, "Output file (default stdout)");

  auto* diag = app.add_subcommand("diag", "Run the built-in self check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    tol.validate();
    if (*info) {
      const auto doc = io::read_set_file(file, tol);
      if (!doc.name.empty()) std::cout << doc.name << ": ";
      std::cout << describe(doc.set) << '\n';
    } else if (*conv) {
      const auto doc = io::read_set_file(file, tol);
      write_output(out, io::emit_set(convert(doc.set, to), doc.name));
    } else if (*op) {
      const io::Environment env =
          env_file.empty() ? io::Environment{} : io::parse_environment(io::read_text_file(env_file), tol);
      write_output(out, io::emit_value(io::eval_expression(expr, env)));
    } else if (*rc) {
      const RcProblem p = io::parse_rc_problem(io::read_text_file(file), tol);
      const auto r = repr == "polytope" ? Representation::Polytope : Representation::CZonotope;
      const auto s = strategy == "exact"    ? DifferenceStrategy::ExactRecursive
                     : strategy == "scaled" ? DifferenceStrategy::ScaledInner
                                            : DifferenceStrategy::Auto;
      const auto t0 = std::chrono::steady_clock::now();
      const RcResult result = rc_set(p, r, s);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "K_0: " << describe(result.K0()) << " (" << secs << " s)\n";
      int violations = 0;
      if (verify > 0 && !result.empty) {
        for (int t = 0; t < p.N; ++t)
          violations += static_cast<int>(verify_one_step(result.K[t], result.K[t + 1], p, verify).violations.size());
        std::cerr << "one-step audit: " << violations << " violation(s)\n";
      }
      write_output(out, io::emit_rc_result(result));
      if (violations) return kFailure;
    } else if (*traj) {
      const TrajProblem p = io::parse_traj_problem(io::read_text_file(file), tol);
      write_output(out, io::emit_set(forward_trajectory_set(p), "D"));
    } else if (*plot) {
      io::PlotOptions opt;
      opt.outer = outer;
      opt.directions = directions;
      std::vector<io::StyledSet> sets;
      for (const auto& f : files) sets.push_back({io::read_set_file(f, tol).set, plot_style(sets.size(), markers)});
      if (is_mesh_path(out)) {
        if (sets.size() != 1) {
          std::cerr << "mesh output takes exactly one set\n";
          return kUsage;
        }
        io::write_text_file(out, io::emit_mesh(io::export_mesh(sets.front().set, opt)));
      } else {
        io::write_text_file(out, io::render_svg(sets, opt));
      }
    } else if (*spread) {
      write_output(out, io::emit_directions(spread_points(spread_n, spread_d)));
    } else if (*diag) {
      return tools::run_diag(std::cout) == 0 ? 0 : kFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return 0;
}
