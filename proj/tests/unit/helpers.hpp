#pragma once

#include "cvxset/error.hpp"
#include "cvxset/linalg.hpp"

#include <functional>

namespace testing {

using cvxset::MatrixXd;
using cvxset::VectorXd;

/// True when `f` throws a cvxset::Error of the given kind.
inline bool throws_kind(const std::function<void()>& f, cvxset::ErrorKind kind) {
  try {
    f();
  } catch (const cvxset::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

inline MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  MatrixXd M(r.size(), r.begin()->size());
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (double x : row) M(i, j++) = x;
    ++i;
  }
  return M;
}

inline VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(v.size());
  int i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

/// The pentagon {-1 <= x, y <= 1, -x - y <= 0.5} as vertices.
inline MatrixXd pentagon_vertices() { return rows({{1, 1}, {-1, 1}, {-1, 0.5}, {0.5, -1}, {1, -1}}); }

inline MatrixXd pentagon_A() { return rows({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, -1}}); }
inline VectorXd pentagon_b() { return vec({1, 1, 1, 1, 0.5}); }

}  // namespace testing
