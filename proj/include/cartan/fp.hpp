#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace cartan {

/// Residue in [0, p). Interpreted relative to a PrimeField context.
using Fp = std::uint32_t;

bool is_prime(std::uint64_t m);

/// Arithmetic context for the prime field F_p with a fixed odd prime p > 3.
/// Validated once at construction; every operation is pure, so a single
/// instance may be shared freely across threads.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Fp reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Fp>(r < 0 ? r + p_ : r);
  }
  Fp add(Fp a, Fp b) const {
    Fp s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const {
    return static_cast<Fp>(std::uint64_t(a) * b % p_);
  }
  Fp pow(Fp a, std::uint64_t e) const;

  /// Multiplicative inverse; throws std::domain_error("no inverse") on 0.
  Fp inv(Fp a) const;

  /// C(a, b) mod p via Lucas' theorem, digit by digit in base p.
  /// Requires b <= a; otherwise throws std::domain_error("invalid binomial").
  Fp binom(std::uint64_t a, std::uint64_t b) const;

  /// prod_i C(a_i, b_i) mod p for multi-indices with b <= a componentwise.
  Fp multi_binom(std::span<const std::uint32_t> a,
                 std::span<const std::uint32_t> b) const;

private:
  Fp digit_binom(std::uint32_t a, std::uint32_t b) const;  // a, b < p

  std::uint32_t p_;
  // factorial tables, populated when p is small enough to tabulate
  std::shared_ptr<const std::vector<Fp>> fact_;
  std::shared_ptr<const std::vector<Fp>> inv_fact_;
};

}  // namespace cartan
