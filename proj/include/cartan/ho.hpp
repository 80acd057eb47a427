#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cartan/witt.hpp"

namespace cartan {

/// The odd Hamiltonian image map
/// T_H(a) = sum_i (-1)^{mu(i) p(a)} d_i(a) d_{i'}.
/// Requires parity-homogeneous input; throws std::invalid_argument
/// ("split by parity first") on mixed parity.
VectorField t_h(const WittAlgebra& w, const SuperPoly& a);

/// Checks [T_H(a), T_H(b)] = T_H(T_H(a)(b)) by independent expansion of both
/// sides: the left through the generic super-bracket, the right through the
/// action on O followed by another T_H.
bool verify_th_morphism(const WittAlgebra& w, const SuperPoly& a,
                        const SuperPoly& b);

/// Sparse coordinates over a graded basis: (index within degree, coeff).
using SparseCoords = std::vector<std::pair<std::uint32_t, Fp>>;

/// The even part of HO(n,n;t), built as the span of T_H images of the
/// odd-parity monomials, with a bracket in basis coordinates, membership
/// tests for the closed-form description, and the generator sets M and N.
class HOAlgebra {
public:
  explicit HOAlgebra(const WittAlgebra& w);

  const WittAlgebra& witt() const { return *w_; }
  const Superalgebra& alg() const { return w_->base(); }
  const PrimeField& field() const { return w_->field(); }

  const GradedSubspace& basis() const { return basis_; }
  int dim() const { return basis_.dim(); }
  int dim_at(int degree) const { return basis_.dim_at(degree); }
  int min_degree() const { return -1; }
  int max_degree() const { return basis_.max_degree(); }

  /// Odd monomial whose T_H image (normalized monic) is basis vector
  /// (degree, idx).
  MonoId preimage(int degree, std::uint32_t idx) const;
  /// Leading coefficient of T_H(preimage) (always +-1); the stored basis
  /// vector is its monic rescaling.
  Fp th_lead(int degree, std::uint32_t idx) const;
  /// Basis position of the image of an odd monomial; false if dropped.
  bool index_of(MonoId m, int* degree, std::uint32_t* idx) const;

  /// [b(di,ai), b(dj,aj)] in basis coordinates at degree di+dj, through
  /// T_H(T_H(a)(b)). Appends to out.
  void bracket_coords(int di, std::uint32_t ai, int dj, std::uint32_t aj,
                      SparseCoords& out) const;
  /// Same bracket through the generic Witt-bracket route plus an exact
  /// coordinate solve. Used to cross-check the fast route.
  SparseCoords bracket_coords_generic(int di, std::uint32_t ai, int dj,
                                      std::uint32_t aj) const;

  /// Closed-form membership: d_i(a_{j'}) = (-1)^{mu(i)mu(j)+mu(i)+mu(j)}
  /// d_j(a_{i'}) for all i, j. Requires an even-parity field.
  bool is_member(const VectorField& A) const;

  /// Dimension of the solution space of the membership conditions inside the
  /// even part of W at one Z-degree.
  int membership_kernel_dim(int degree) const;

  /// Rank of T_H over the even-parity monomials (the odd part of HO).
  int odd_part_dim() const;

  std::vector<VectorField> generators_m() const;
  std::vector<VectorField> generators_n() const;

  /// Bracket closure of seed inside this algebra's span.
  GradedSubspace closure(const std::vector<VectorField>& seed) const;

private:
  const WittAlgebra* w_;
  // filled by build_basis(); declared ahead of basis_ so construction order
  // matches the initializer list
  std::vector<std::vector<MonoId>> preimage_;   // per degree slot
  std::vector<std::vector<Fp>> th_lead_;        // lead coeff of T_H(preimage)
  std::vector<std::uint32_t> mono_to_idx_;      // MonoId -> idx within degree
  GradedSubspace basis_;
  static constexpr std::uint32_t kNone = UINT32_MAX;

  GradedSubspace build_basis();
};

/// Bracket of two ambient basis vectors in ambient coordinates; appends.
using PairBracketFn =
    std::function<void(int, std::uint32_t, int, std::uint32_t, SparseCoords&)>;

/// Smallest bracket-closed subspace of `ambient` containing `seed`,
/// grown by a frontier strategy. Throws std::domain_error when a seed vector
/// (or a bracket, for a non-closed ambient) leaves the ambient span.
GradedSubspace closure(const WittAlgebra& w,
                       const std::vector<VectorField>& seed,
                       const GradedSubspace& ambient,
                       const PairBracketFn& bracket = {});

/// {X in ambient : [X, s] = 0 for all s in sub}, degree by degree.
GradedSubspace centralizer(const WittAlgebra& w,
                           const std::vector<VectorField>& sub,
                           const GradedSubspace& ambient);

}  // namespace cartan
