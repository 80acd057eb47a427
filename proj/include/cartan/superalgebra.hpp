#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cartan/fp.hpp"

namespace cartan {

/// Fixed parameters of the truncated divided-power superalgebra O(n,n;t):
/// n >= 3 even and n odd variables, truncation exponents t_i >= 1, derived
/// bounds pi_i = p^{t_i} - 1 and top Z-degree xi = |pi| + n.
/// Directions are indexed 1..2n; Y0 = {1..n} (even), Y1 = {n+1..2n} (odd).
struct AlgebraParams {
  int n;
  PrimeField field;
  std::vector<std::uint32_t> t;
  std::vector<std::uint32_t> pi;  // derived: p^{t_i} - 1
  std::uint32_t xi = 0;           // derived: |pi| + n

  AlgebraParams(int n, PrimeField field, std::vector<std::uint32_t> t);

  int mu(int r) const { return r > n ? 1 : 0; }  // parity of direction r
  int conjugate(int r) const { return r > n ? r - n : r + n; }  // i'
  bool valid_direction(int r) const { return r >= 1 && r <= 2 * n; }
};

/// Dense integer code of a basis monomial x^(alpha) x^u.
using MonoId = std::uint32_t;

struct Monomial {
  std::vector<std::uint32_t> alpha;  // size n, alpha_i <= pi_i
  std::uint32_t umask = 0;           // bit k set <=> letter n+1+k in u
};

/// Sparse F_p element of O(n,n;t): (monomial id, nonzero coeff), sorted by id.
class SuperPoly {
public:
  SuperPoly() = default;

  static SuperPoly from_terms(const PrimeField& F,
                              std::vector<std::pair<MonoId, Fp>> terms);

  const std::vector<std::pair<MonoId, Fp>>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Fp coeff(MonoId m) const;

  bool operator==(const SuperPoly&) const = default;

private:
  std::vector<std::pair<MonoId, Fp>> terms_;
};

/// The algebra O(n,n;t): canonical monomial representation, multiplication,
/// the superderivations d_r, and the graded/parity-filtered basis order
/// (degree-major, then alpha lexicographic, then the exterior word mask).
class Superalgebra {
public:
  explicit Superalgebra(AlgebraParams params);

  const AlgebraParams& params() const { return params_; }
  const PrimeField& field() const { return params_.field; }
  int n() const { return params_.n; }
  std::uint32_t dim() const { return dim_; }

  MonoId encode(const Monomial& m) const;
  Monomial decode(MonoId id) const;
  std::span<const std::uint32_t> alpha_of(MonoId id) const;
  std::uint32_t umask_of(MonoId id) const {
    return id & ((1u << params_.n) - 1);
  }
  int zdeg(MonoId id) const { return zdeg_[id]; }
  int parity(MonoId id) const;

  MonoId one() const { return encode_raw(std::vector<std::uint32_t>(n(), 0), 0); }
  /// x_r: the divided-power generator for r in Y0, the letter for r in Y1.
  MonoId unit(int r) const;

  /// Monomial product; false when the result vanishes (truncation bound,
  /// repeated exterior letter, or binomial coefficient 0 mod p).
  bool mono_mul(MonoId a, MonoId b, MonoId& out, Fp& coeff) const;
  /// d_r on a monomial; false when zero. coeff is +-1.
  bool mono_partial(int r, MonoId a, MonoId& out, Fp& coeff) const;

  SuperPoly multiply(const SuperPoly& f, const SuperPoly& g) const;
  SuperPoly partial(int r, const SuperPoly& f) const;
  SuperPoly scale(Fp c, const SuperPoly& f) const;
  SuperPoly add(const SuperPoly& f, const SuperPoly& g) const;

  std::optional<int> homogeneous_degree(const SuperPoly& f) const;
  std::optional<int> homogeneous_parity(const SuperPoly& f) const;

  /// Full basis in canonical order.
  const std::vector<MonoId>& basis() const { return basis_; }
  /// Basis slice of one Z-degree (empty when out of [0, xi]).
  std::span<const MonoId> basis_at(int degree) const;
  /// Spec-facing enumeration: monomials of one degree, optionally filtered
  /// by parity, in canonical order.
  std::vector<Monomial> basis_monomials(int degree,
                                        std::optional<int> parity = {}) const;
  /// Position of a monomial in the canonical full-basis order.
  std::uint32_t ordinal(MonoId id) const { return ordinal_[id]; }

private:
  MonoId encode_raw(const std::vector<std::uint32_t>& alpha,
                    std::uint32_t umask) const;

  AlgebraParams params_;
  std::uint32_t dim_ = 0;
  std::uint32_t acount_ = 0;  // number of multi-indices = prod (pi_i + 1)
  std::vector<std::uint32_t> astride_;  // mixed-radix strides, alpha_1 major

  std::vector<std::uint32_t> alphas_;   // dim x n, decoded exponents
  std::vector<std::uint16_t> zdeg_;     // per id
  std::vector<MonoId> basis_;           // canonical order
  std::vector<std::uint32_t> ordinal_;  // id -> basis position
  std::vector<std::uint32_t> deg_offset_;  // degree -> first basis position

  // d_r tables: target id (kNoMono when zero) and sign bit per (r, id)
  static constexpr std::uint32_t kNoMono = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> partial_target_;  // [2n][dim]
  std::vector<std::vector<std::int8_t>> partial_sign_;      // [2n][dim]

  // per-coordinate pair binomial tables: C(a+b, a) mod p, 0 out of bounds
  std::vector<std::vector<Fp>> binom_pair_;
};

}  // namespace cartan
