#include "cartan/linalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cartan {

void sort_and_combine(const PrimeField& F, SparseRow& row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < row.size();) {
    std::uint32_t c = row[i].first;
    Fp v = 0;
    while (i < row.size() && row[i].first == c) {
      v = F.add(v, row[i].second);
      ++i;
    }
    if (v != 0) row[out++] = {c, v};
  }
  row.resize(out);
}

void SparseMatrix::canonicalize(const PrimeField& F) {
  for (auto& [r, c, v] : entries) {
    if (r >= rows || c >= cols)
      throw std::out_of_range("sparse matrix entry out of range");
    v = F.reduce(static_cast<std::int64_t>(v));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) {
              return std::pair(std::get<0>(a), std::get<1>(a)) <
                     std::pair(std::get<0>(b), std::get<1>(b));
            });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    auto [r, c, v0] = entries[i];
    Fp v = 0;
    while (i < entries.size() && std::get<0>(entries[i]) == r &&
           std::get<1>(entries[i]) == c) {
      v = F.add(v, std::get<2>(entries[i]));
      ++i;
    }
    if (v != 0) entries[out++] = {r, c, v};
  }
  entries.resize(out);
}

Echelon::Echelon(const PrimeField& F, std::uint32_t cols)
    : F_(&F), cols_(cols), pivot_of_col_(cols, kNone), scratch_(cols, 0) {}

void Echelon::scatter_reduce(SparseRow& row, bool stop_at_missing_pivot,
                             SparseRow& out) const {
  out.clear();
  auto cmp = std::greater<std::uint32_t>();
  heap_.clear();
  for (auto& [c, v] : row) {
    if (v == 0) continue;
    Fp was = scratch_[c];
    scratch_[c] = F_->add(was, v);
    if (was == 0) {
      heap_.push_back(c);
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    }
  }
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    std::uint32_t c = heap_.back();
    heap_.pop_back();
    Fp v = scratch_[c];
    if (v == 0) continue;
    std::uint32_t r = pivot_of_col_[c];
    if (r == kNone) {
      out.emplace_back(c, v);
      scratch_[c] = 0;
      if (stop_at_missing_pivot) {
        // drain the tail verbatim; it is already reduced below this column
        std::sort(heap_.begin(), heap_.end());
        heap_.erase(std::unique(heap_.begin(), heap_.end()), heap_.end());
        for (std::uint32_t cc : heap_) {
          if (scratch_[cc] != 0) {
            out.emplace_back(cc, scratch_[cc]);
            scratch_[cc] = 0;
          }
        }
        heap_.clear();
        return;
      }
      continue;
    }
    scratch_[c] = 0;
    const SparseRow& pr = rows_[r];
    for (std::size_t k = 1; k < pr.size(); ++k) {
      std::uint32_t cc = pr[k].first;
      Fp was = scratch_[cc];
      Fp now = F_->sub(was, F_->mul(v, pr[k].second));
      scratch_[cc] = now;
      if (was == 0 && now != 0) {
        heap_.push_back(cc);
        std::push_heap(heap_.begin(), heap_.end(), cmp);
      }
    }
  }
}

bool Echelon::insert(SparseRow row) {
  if (row.empty()) return false;
  SparseRow reduced;
  scatter_reduce(row, /*stop_at_missing_pivot=*/true, reduced);
  if (reduced.empty()) return false;
  Fp s = F_->inv(reduced[0].second);
  if (s != 1)
    for (auto& [c, v] : reduced) v = F_->mul(v, s);
  pivot_of_col_[reduced[0].first] = static_cast<std::uint32_t>(rows_.size());
  rows_.push_back(std::move(reduced));
  return true;
}

SparseRow Echelon::reduce(SparseRow row) const {
  SparseRow out;
  scatter_reduce(row, /*stop_at_missing_pivot=*/false, out);
  return out;
}

std::vector<std::uint32_t> Echelon::pivot_columns() const {
  std::vector<std::uint32_t> out;
  out.reserve(rows_.size());
  for (std::uint32_t c = 0; c < cols_; ++c)
    if (pivot_of_col_[c] != kNone) out.push_back(c);
  return out;
}

std::vector<std::uint32_t> Echelon::free_columns() const {
  std::vector<std::uint32_t> out;
  out.reserve(cols_ - rows_.size());
  for (std::uint32_t c = 0; c < cols_; ++c)
    if (pivot_of_col_[c] == kNone) out.push_back(c);
  return out;
}

std::vector<std::vector<Fp>> Echelon::nullspace() const {
  // pivot rows in descending pivot-column order for back-substitution
  std::vector<std::uint32_t> order(rows_.size());
  for (std::uint32_t i = 0; i < rows_.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return rows_[a][0].first > rows_[b][0].first;
  });
  std::vector<std::vector<Fp>> out;
  for (std::uint32_t f : free_columns()) {
    std::vector<Fp> v(cols_, 0);
    v[f] = 1;
    for (std::uint32_t ri : order) {
      const SparseRow& r = rows_[ri];
      if (r[0].first > f) continue;  // all later columns of v are still zero
      Fp s = 0;
      for (std::size_t k = 1; k < r.size(); ++k)
        s = F_->add(s, F_->mul(r[k].second, v[r[k].first]));
      v[r[0].first] = F_->neg(s);
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

struct PreparedRows {
  std::vector<SparseRow> rows;             // in permuted column space
  std::vector<std::uint32_t> col_to_orig;  // permuted col -> original col
};

// Static fill-aware preparation: sparsest columns first, sparsest rows first.
PreparedRows prepare(const PrimeField& F, const SparseMatrix& m) {
  SparseMatrix cm = m;
  cm.canonicalize(F);
  std::vector<std::uint32_t> colcount(m.cols, 0);
  for (auto& [r, c, v] : cm.entries) colcount[c]++;
  std::vector<std::uint32_t> perm(m.cols);
  for (std::uint32_t c = 0; c < m.cols; ++c) perm[c] = c;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return colcount[a] < colcount[b];
                   });
  std::vector<std::uint32_t> orig_to_perm(m.cols);
  for (std::uint32_t i = 0; i < m.cols; ++i) orig_to_perm[perm[i]] = i;

  PreparedRows out;
  out.col_to_orig = perm;
  out.rows.assign(m.rows, {});
  for (auto& [r, c, v] : cm.entries)
    out.rows[r].emplace_back(orig_to_perm[c], v);
  for (auto& row : out.rows)
    std::sort(row.begin(), row.end());
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [](const SparseRow& a, const SparseRow& b) {
                     return a.size() < b.size();
                   });
  return out;
}

bool dense_preferred(const SparseMatrix& m, std::size_t nnz,
                     const LinalgOptions& opts) {
  std::size_t cells = std::size_t(m.rows) * m.cols;
  if (cells == 0 || cells > opts.dense_max_cells) return false;
  return double(nnz) / double(cells) >= opts.dense_density_threshold;
}

// Full Gauss-Jordan; returns pivot column per reduced row.
std::vector<std::uint32_t> dense_rref(const PrimeField& F,
                                      std::vector<std::vector<Fp>>& rows,
                                      std::uint32_t cols) {
  std::vector<std::uint32_t> pivots;
  std::size_t r = 0;
  for (std::uint32_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Fp s = F.inv(rows[r][c]);
    if (s != 1)
      for (std::uint32_t j = c; j < cols; ++j)
        rows[r][j] = F.mul(rows[r][j], s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Fp f = rows[i][c];
      for (std::uint32_t j = c; j < cols; ++j)
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(pivots.size());
  return pivots;
}

std::vector<std::vector<Fp>> to_dense(const SparseMatrix& m,
                                      const PrimeField& F) {
  SparseMatrix cm = m;
  cm.canonicalize(F);
  std::vector<std::vector<Fp>> rows(m.rows, std::vector<Fp>(m.cols, 0));
  for (auto& [r, c, v] : cm.entries) rows[r][c] = v;
  return rows;
}

}  // namespace

std::uint32_t rank(const PrimeField& F, const SparseMatrix& m,
                   const LinalgOptions& opts) {
  if (dense_preferred(m, m.entries.size(), opts)) {
    auto rows = to_dense(m, F);
    return static_cast<std::uint32_t>(dense_rref(F, rows, m.cols).size());
  }
  PreparedRows pr = prepare(F, m);
  Echelon ech(F, m.cols);
  for (auto& row : pr.rows) ech.insert(std::move(row));
  return ech.rank();
}

std::vector<std::vector<Fp>> kernel_basis(const PrimeField& F,
                                          const SparseMatrix& m,
                                          const LinalgOptions& opts) {
  if (dense_preferred(m, m.entries.size(), opts)) {
    auto rows = to_dense(m, F);
    auto pivots = dense_rref(F, rows, m.cols);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Fp>> out;
    for (std::uint32_t f = 0; f < m.cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Fp> v(m.cols, 0);
      v[f] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = F.neg(rows[i][f]);
      out.push_back(std::move(v));
    }
    return out;
  }
  PreparedRows pr = prepare(F, m);
  Echelon ech(F, m.cols);
  for (auto& row : pr.rows) ech.insert(std::move(row));
  auto null_perm = ech.nullspace();
  std::vector<std::vector<Fp>> out;
  out.reserve(null_perm.size());
  for (auto& v : null_perm) {
    std::vector<Fp> w(m.cols, 0);
    for (std::uint32_t c = 0; c < m.cols; ++c)
      w[pr.col_to_orig[c]] = v[c];
    out.push_back(std::move(w));
  }
  return out;
}

std::optional<std::vector<Fp>> in_span(
    const PrimeField& F, std::span<const Fp> v,
    const std::vector<std::vector<Fp>>& basis) {
  const std::uint32_t n = static_cast<std::uint32_t>(v.size());
  const std::uint32_t nb = static_cast<std::uint32_t>(basis.size());
  Echelon ech(F, n + nb);
  for (std::uint32_t i = 0; i < nb; ++i) {
    if (basis[i].size() != v.size())
      throw std::invalid_argument("length mismatch");
    SparseRow row;
    for (std::uint32_t c = 0; c < n; ++c)
      if (basis[i][c] != 0) row.emplace_back(c, basis[i][c]);
    row.emplace_back(n + i, 1);
    ech.insert(std::move(row));
  }
  SparseRow q;
  for (std::uint32_t c = 0; c < n; ++c)
    if (v[c] != 0) q.emplace_back(c, v[c]);
  SparseRow rem = ech.reduce(std::move(q));
  std::vector<Fp> coeffs(nb, 0);
  for (auto& [c, val] : rem) {
    if (c < n) return std::nullopt;
    coeffs[c - n] = F.neg(val);
  }
  return coeffs;
}

std::vector<std::vector<Fp>> rref_normalize(const PrimeField& F,
                                            std::vector<std::vector<Fp>> vecs) {
  if (vecs.empty()) return vecs;
  std::uint32_t cols = static_cast<std::uint32_t>(vecs[0].size());
  for (auto& v : vecs)
    if (v.size() != cols) throw std::invalid_argument("length mismatch");
  dense_rref(F, vecs, cols);
  return vecs;
}

}  // namespace cartan
