#include "cartan/fp.hpp"

#include <stdexcept>

namespace cartan {

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (m == d) return true;
    if (m % d == 0) return false;
  }
  for (std::uint64_t d = 17; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

namespace {
constexpr std::uint32_t kFactorialTableLimit = 1u << 20;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= 3 || !is_prime(p))
    throw std::invalid_argument("p must be an odd prime > 3");
  if (p <= kFactorialTableLimit) {
    auto fact = std::make_shared<std::vector<Fp>>(p);
    auto ifact = std::make_shared<std::vector<Fp>>(p);
    (*fact)[0] = 1;
    for (std::uint32_t i = 1; i < p; ++i) (*fact)[i] = mul((*fact)[i - 1], i);
    (*ifact)[p - 1] = inv((*fact)[p - 1]);
    for (std::uint32_t i = p - 1; i > 0; --i)
      (*ifact)[i - 1] = mul((*ifact)[i], i);
    fact_ = std::move(fact);
    inv_fact_ = std::move(ifact);
  }
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  Fp r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fp PrimeField::inv(Fp a) const {
  if (a == 0) throw std::domain_error("no inverse");
  return pow(a, p_ - 2);
}

Fp PrimeField::digit_binom(std::uint32_t a, std::uint32_t b) const {
  if (b > a) return 0;
  if (fact_)
    return mul((*fact_)[a], mul((*inv_fact_)[b], (*inv_fact_)[a - b]));
  b = std::min(b, a - b);
  Fp num = 1, den = 1;
  for (std::uint32_t i = 1; i <= b; ++i) {
    num = mul(num, (a - b + i) % p_);
    den = mul(den, i);
  }
  return mul(num, inv(den));
}

Fp PrimeField::binom(std::uint64_t a, std::uint64_t b) const {
  if (b > a) throw std::domain_error("invalid binomial");
  Fp out = 1;
  while (a | b) {
    std::uint32_t ad = static_cast<std::uint32_t>(a % p_);
    std::uint32_t bd = static_cast<std::uint32_t>(b % p_);
    if (bd > ad) return 0;
    out = mul(out, digit_binom(ad, bd));
    if (out == 0) return 0;
    a /= p_;
    b /= p_;
  }
  return out;
}

Fp PrimeField::multi_binom(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b) const {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  Fp out = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > a[i]) throw std::domain_error("invalid binomial");
    out = mul(out, binom(a[i], b[i]));
    if (out == 0) return 0;
  }
  return out;
}

}  // namespace cartan
