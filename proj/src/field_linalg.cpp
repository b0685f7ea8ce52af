#include "netring/field_linalg.hpp"

namespace netring {

Echelon row_reduce(const Ring& F, Matrix rows) {
  Echelon e;
  if (rows.empty()) return e;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const auto inv = F.inverse(rows[r][c]);
    for (auto& v : rows[r]) v = F.mul(inv, v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const auto f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::size_t rank(const Ring& F, const Matrix& rows) { return row_reduce(F, rows).rank(); }

bool in_row_space(const Ring& F, const Echelon& e, const Row& v) {
  Row w = v;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const auto f = w[e.pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = F.sub(w[j], F.mul(f, e.rows[i][j]));
  }
  for (auto x : w)
    if (x != 0) return false;
  return true;
}

std::optional<Row> solve_left(const Ring& F, const Matrix& rows, const Row& target) {
  // Row-reduce [rows | I] and express the target through the tracked combinations.
  const std::size_t m = rows.size();
  const std::size_t cols = target.size();
  Matrix aug(m);
  for (std::size_t i = 0; i < m; ++i) {
    aug[i] = rows[i];
    aug[i].resize(cols + m, 0);
    aug[i][cols + i] = F.one();
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && aug[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[r], aug[piv]);
    const auto inv = F.inverse(aug[r][c]);
    for (auto& v : aug[r]) v = F.mul(inv, v);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || aug[i][c] == 0) continue;
      const auto f = aug[i][c];
      for (std::size_t j = 0; j < cols + m; ++j) aug[i][j] = F.sub(aug[i][j], F.mul(f, aug[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  Row w = target;
  Row x(m, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const auto f = w[pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) w[j] = F.sub(w[j], F.mul(f, aug[i][j]));
    for (std::size_t j = 0; j < m; ++j) x[j] = F.add(x[j], F.mul(f, aug[i][cols + j]));
  }
  for (auto v : w)
    if (v != 0) return std::nullopt;
  return x;
}

Matrix expand_matrix_row(const Ring& M, const Row& row) {
  const auto k = M.matrix_dim();
  Matrix out(k, Row(k * row.size(), 0));
  for (std::size_t j = 0; j < row.size(); ++j) {
    const auto e = M.entries(row[j]);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t c = 0; c < k; ++c) out[i][j * k + c] = e[i * k + c];
  }
  return out;
}

}  // namespace netring
