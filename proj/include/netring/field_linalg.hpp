#pragma once

#include <optional>
#include <vector>

#include "netring/ring.hpp"

namespace netring {

using Row = std::vector<Elem>;
using Matrix = std::vector<Row>;

/// Reduced row echelon form over a finite field.
struct Echelon {
  Matrix rows;                    // nonzero reduced rows, pivot entries equal to one
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank() const { return rows.size(); }
};

Echelon row_reduce(const Ring& field, Matrix rows);
std::size_t rank(const Ring& field, const Matrix& rows);

/// True iff v lies in the row space of e.
bool in_row_space(const Ring& field, const Echelon& e, const Row& v);

/// Coefficients x with sum_i x_i * rows[i] = target, if any.
std::optional<Row> solve_left(const Ring& field, const Matrix& rows, const Row& target);

/// Row over M_k(F) as a k x (k * len) matrix over F: entry (i, j*k + c) = row[j](i, c).
Matrix expand_matrix_row(const Ring& matrix_ring, const Row& row);

}  // namespace netring
