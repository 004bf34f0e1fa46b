// Smith normal form over arbitrary-precision integers.

#ifndef FPMN_SNF_HPP_
#define FPMN_SNF_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpmn {

using Integer = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t rows = a.size(), inner = b.size();
  std::size_t cols = inner == 0 ? 0 : b[0].size();
  IntMatrix c(rows, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j)
          c[i][j] += a[i][k] * b[k][j];
  return c;
}

struct SmithForm {
  /// Nonzero diagonal entries d1 | d2 | ... , all positive (units included).
  std::vector<Integer> invariants;
  /// Number of zero columns of the diagonal form: rank of Z^cols / rowspace.
  std::size_t free_rank = 0;
  /// left * input * right == diagonal form; both unimodular.
  IntMatrix left;
  IntMatrix right;

  std::size_t rank() const { return invariants.size(); }
  /// Invariants greater than one: the torsion of the cokernel.
  std::vector<Integer> torsion() const {
    std::vector<Integer> t;
    for (const auto& d : invariants)
      if (d > 1)
        t.push_back(d);
    return t;
  }
};

/// Diagonalizes `m` (rows x cols) by unimodular row and column operations.
/// The cokernel Z^cols / rowspace(m) is  (+) Z/d_i  (+)  Z^free_rank.
inline SmithForm smith_normal_form(IntMatrix m, std::size_t cols) {
  const std::size_t rows = m.size();
  for (auto& r : m)
    r.resize(cols, 0);
  IntMatrix left = identity_matrix(rows);
  IntMatrix right = identity_matrix(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(m[i], m[j]);
    std::swap(left[i], left[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : m)
      std::swap(r[i], r[j]);
    for (auto& r : right)
      std::swap(r[i], r[j]);
  };
  // row_i += q * row_j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c)
      m[i][c] += q * m[j][c];
    for (std::size_t c = 0; c < rows; ++c)
      left[i][c] += q * left[j][c];
  };
  // col_i += q * col_j
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r)
      m[r][i] += q * m[r][j];
    for (std::size_t r = 0; r < cols; ++r)
      right[r][i] += q * right[r][j];
  };

  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (!found || abs(m[i][j]) < best)) {
          found = true;
          best = abs(m[i][j]);
          pi = i;
          pj = j;
        }
    if (!found)
      break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0)
          continue;
        Integer q = m[i][t] / m[t][t];
        add_row(i, t, -q);
        if (m[i][t] != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0)
          continue;
        Integer q = m[t][j] / m[t][t];
        add_col(j, t, -q);
        if (m[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty)
        continue;
      // divisibility: pull a non-multiple into the pivot row and retry
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible)
        break;
    }
    if (m[t][t] < 0) {
      for (auto& v : m[t])
        v = -v;
      for (auto& v : left[t])
        v = -v;
    }
  }

  SmithForm out;
  for (std::size_t i = 0; i < t; ++i)
    out.invariants.push_back(m[i][i]);
  out.free_rank = cols - t;
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

inline SmithForm smith_normal_form(const IntMatrix& m) {
  return smith_normal_form(m, m.empty() ? 0 : m[0].size());
}

} // namespace fpmn

#endif // FPMN_SNF_HPP_
