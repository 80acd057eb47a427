#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cartan/linalg.hpp"
#include "cartan/superalgebra.hpp"

namespace cartan {

/// One vector-field term f * d_r, keyed as mono_id * 2n + (r - 1).
using TermKey = std::uint64_t;

/// Sparse element of W(n,n;t): sorted (term key, nonzero coeff) pairs.
class VectorField {
public:
  VectorField() = default;

  static VectorField from_terms(const PrimeField& F,
                                std::vector<std::pair<TermKey, Fp>> terms);
  static VectorField single(TermKey k, Fp c);

  const std::vector<std::pair<TermKey, Fp>>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Fp coeff(TermKey k) const;

  bool operator==(const VectorField&) const = default;

private:
  std::vector<std::pair<TermKey, Fp>> terms_;
};

class WittAlgebra;

/// Per-degree ordered bases of homogeneous vector fields with exact
/// coordinate lookup. Construction verifies Z-homogeneity and linear
/// independence (by rank); coordinate queries fail loudly when the vector
/// leaves the span instead of projecting.
class GradedSubspace {
public:
  GradedSubspace(const WittAlgebra& w, int min_degree,
                 std::vector<std::vector<VectorField>> basis_by_degree);

  int min_degree() const { return min_deg_; }
  int max_degree() const {
    return min_deg_ + static_cast<int>(basis_.size()) - 1;
  }
  int dim() const { return dim_; }
  int dim_at(int degree) const;
  const std::vector<VectorField>& at(int degree) const;
  const VectorField& vec(int degree, int idx) const;

  /// Exact coordinates of a homogeneous field over the basis of its degree.
  /// Throws std::domain_error when the field is not homogeneous, has a
  /// degree outside the range, or lies outside the span.
  std::pair<int, std::vector<Fp>> coords(const VectorField& v) const;
  bool try_coords(const VectorField& v, int* degree,
                  std::vector<Fp>* coeffs) const;

  VectorField combine(int degree, std::span<const Fp> coeffs) const;

private:
  struct DegreeIndex {
    std::map<TermKey, std::uint32_t> term_index;
    Echelon ech;  // rows: basis vectors augmented with combination tracking
    DegreeIndex(const PrimeField& F, std::uint32_t cols) : ech(F, cols) {}
  };

  const WittAlgebra* w_;
  int min_deg_ = 0;
  int dim_ = 0;
  std::vector<std::vector<VectorField>> basis_;
  std::vector<DegreeIndex> index_;
};

/// The generalized Witt superalgebra W(n,n;t): the action on O(n,n;t), the
/// super-bracket, distinguished fields, and the graded bases of the even
/// part and of the exterior-only subalgebra.
class WittAlgebra {
public:
  explicit WittAlgebra(const Superalgebra& o) : o_(&o) {}

  const Superalgebra& base() const { return *o_; }
  const PrimeField& field() const { return o_->field(); }

  TermKey make_term(MonoId m, int r) const;
  std::pair<MonoId, int> split_term(TermKey k) const;
  int term_zdeg(TermKey k) const;
  int term_parity(TermKey k) const;

  /// Z-degree / parity of a homogeneous field; throws std::domain_error on
  /// mixed input. The zero field is not homogeneous for these queries.
  int zdeg(const VectorField& v) const;
  int parity(const VectorField& v) const;
  bool is_homogeneous(const VectorField& v) const;

  /// Left action: (sum f_r d_r)(g) = sum f_r * d_r(g).
  SuperPoly apply(const VectorField& D, const SuperPoly& g) const;

  /// Super-bracket, termwise:
  /// [f d_r, g d_s] = f d_r(g) d_s - (-1)^{p(f d_r) p(g d_s)} g d_s(f) d_r.
  VectorField bracket(const VectorField& A, const VectorField& B) const;

  VectorField partial_field(int r) const;  // d_r
  VectorField delta(int i) const;          // Delta_i = x_{i'} d_{i'} - x_i d_i
  VectorField gamma() const;               // Gamma = sum x_{i'} d_{i'}

  VectorField scale(Fp c, const VectorField& v) const;
  VectorField add(const VectorField& a, const VectorField& b) const;

  /// Even part of W(n,n;t) as a graded basis of monomial fields.
  GradedSubspace even_part_basis() const;
  /// The exterior-coefficient subalgebra: even fields x^u d_r.
  GradedSubspace g_basis() const;

private:
  const Superalgebra* o_;
};

}  // namespace cartan
