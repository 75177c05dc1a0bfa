#pragma once

// Minimum Euclidean norm solution by orthogonally projecting any particular
// solution onto the row space (Gram-Schmidt on raw rationals). Independent of
// the library's Gram-matrix path.

#include <optional>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace oracle {

using Q = boost::multiprecision::mpq_rational;

inline Q dot(const std::vector<Q>& a, const std::vector<Q>& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Squared norm of the projection of x0 onto span(rows).
inline Q projected_norm_squared(const std::vector<std::vector<Q>>& rows, const std::vector<Q>& x0) {
  std::vector<std::vector<Q>> basis;
  for (auto v : rows) {
    for (const auto& e : basis) {
      const Q f = dot(v, e) / dot(e, e);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * e[j];
    }
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (!zero) basis.push_back(std::move(v));
  }
  Q out = 0;
  for (const auto& e : basis) {
    const Q c = dot(x0, e);
    out += c * c / dot(e, e);
  }
  return out;
}

}  // namespace oracle
