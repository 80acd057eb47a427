#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "cartan/fp.hpp"

namespace cartan {

/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::uint32_t, Fp>>;

void sort_and_combine(const PrimeField& F, SparseRow& row);

/// Coordinate-list sparse matrix over F_p. Entries are unique per (row, col)
/// and nonzero once canonicalize() has run; the solvers canonicalize copies.
struct SparseMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Fp>> entries;

  void add(std::uint32_t r, std::uint32_t c, Fp v) {
    if (v != 0) entries.emplace_back(r, c, v);
  }
  /// Sort by (row, col), merge duplicates mod p, drop zeros, bound-check.
  void canonicalize(const PrimeField& F);
};

struct LinalgOptions {
  // switch to dense elimination for small, filled-in blocks
  double dense_density_threshold = 0.05;
  std::size_t dense_max_cells = std::size_t(1) << 24;
};

std::uint32_t rank(const PrimeField& F, const SparseMatrix& m,
                   const LinalgOptions& opts = {});

/// Basis of the right null space {v : Mv = 0}; size cols - rank(M).
std::vector<std::vector<Fp>> kernel_basis(const PrimeField& F,
                                          const SparseMatrix& m,
                                          const LinalgOptions& opts = {});

/// Exact span membership: coefficients c with v = sum c_i basis_i, or nullopt.
/// Throws std::invalid_argument on length mismatch.
std::optional<std::vector<Fp>> in_span(
    const PrimeField& F, std::span<const Fp> v,
    const std::vector<std::vector<Fp>>& basis);

/// Incremental row echelon accumulator over F_p. Rows are forward-reduced:
/// each stored row is normalized to leading coefficient 1 and every stored
/// pivot column is the leading column of exactly one row.
class Echelon {
public:
  Echelon(const PrimeField& F, std::uint32_t cols);

  /// Reduce `row` against the current rows; store the remainder if nonzero.
  /// Returns true when the rank grew.
  bool insert(SparseRow row);

  /// Reduce a vector without inserting; the result's leading columns all
  /// lack pivots. Useful for span tests against the accumulated row space.
  SparseRow reduce(SparseRow row) const;

  std::uint32_t rank() const { return static_cast<std::uint32_t>(rows_.size()); }
  std::uint32_t cols() const { return cols_; }
  const std::vector<SparseRow>& rows() const { return rows_; }
  bool has_pivot(std::uint32_t col) const { return pivot_of_col_[col] != kNone; }

  std::vector<std::uint32_t> pivot_columns() const;  // ascending
  std::vector<std::uint32_t> free_columns() const;   // ascending

  /// Dense kernel vectors, one per free column, in free-column order.
  /// Each vector has a 1 at its free column.
  std::vector<std::vector<Fp>> nullspace() const;

private:
  static constexpr std::uint32_t kNone = UINT32_MAX;
  const PrimeField* F_;
  std::uint32_t cols_;
  std::vector<SparseRow> rows_;
  std::vector<std::uint32_t> pivot_of_col_;  // row index or kNone
  mutable std::vector<Fp> scratch_;
  mutable std::vector<std::uint32_t> heap_;

  void scatter_reduce(SparseRow& row, bool stop_at_missing_pivot,
                      SparseRow& out) const;
};

/// Reduced row echelon normalization of a list of dense vectors (in place
/// semantics: returns the canonical RREF basis of their span, rows ordered by
/// pivot column). Used to make solver outputs reproducible.
std::vector<std::vector<Fp>> rref_normalize(const PrimeField& F,
                                            std::vector<std::vector<Fp>> vecs);

}  // namespace cartan
