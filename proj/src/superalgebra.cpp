#include "cartan/superalgebra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace cartan {

AlgebraParams::AlgebraParams(int n_, PrimeField field_,
                             std::vector<std::uint32_t> t_)
    : n(n_), field(std::move(field_)), t(std::move(t_)) {
  if (n < 3) throw std::invalid_argument("n must be >= 3");
  if (t.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("t must have n entries");
  pi.resize(n);
  std::uint64_t total = n;
  for (int i = 0; i < n; ++i) {
    if (t[i] < 1) throw std::invalid_argument("t_i must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t e = 0; e < t[i]; ++e) {
      q *= field.p();
      if (q > (1u << 24))
        throw std::invalid_argument("p^{t_i} too large for this build");
    }
    pi[i] = static_cast<std::uint32_t>(q - 1);
    total += pi[i];
  }
  xi = static_cast<std::uint32_t>(total);
}

SuperPoly SuperPoly::from_terms(const PrimeField& F,
                                std::vector<std::pair<MonoId, Fp>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    MonoId m = terms[i].first;
    Fp v = 0;
    while (i < terms.size() && terms[i].first == m) {
      v = F.add(v, F.reduce(terms[i].second));
      ++i;
    }
    if (v != 0) terms[out++] = {m, v};
  }
  terms.resize(out);
  SuperPoly p;
  p.terms_ = std::move(terms);
  return p;
}

Fp SuperPoly::coeff(MonoId m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const auto& t, MonoId key) { return t.first < key; });
  return (it != terms_.end() && it->first == m) ? it->second : 0;
}

Superalgebra::Superalgebra(AlgebraParams params) : params_(std::move(params)) {
  const int n = params_.n;
  if (n > 20) throw std::invalid_argument("n too large for this build");
  astride_.assign(n, 1);
  std::uint64_t acount = 1;
  for (int i = n - 1; i >= 0; --i) {
    astride_[i] = static_cast<std::uint32_t>(acount);
    acount *= params_.pi[i] + 1;
  }
  std::uint64_t dim = acount << n;
  if (dim > (1u << 28)) throw std::invalid_argument("dim O(n,n;t) too large");
  acount_ = static_cast<std::uint32_t>(acount);
  dim_ = static_cast<std::uint32_t>(dim);

  // decoded exponents and degrees
  alphas_.assign(std::size_t(dim_) * n, 0);
  zdeg_.assign(dim_, 0);
  {
    std::vector<std::uint32_t> alpha(n, 0);
    for (std::uint32_t a = 0; a < acount_; ++a) {
      std::uint32_t asum = 0;
      for (int i = 0; i < n; ++i) asum += alpha[i];
      for (std::uint32_t umask = 0; umask < (1u << n); ++umask) {
        MonoId id = (a << n) | umask;
        std::copy(alpha.begin(), alpha.end(), alphas_.begin() + std::size_t(id) * n);
        zdeg_[id] = static_cast<std::uint16_t>(
            asum + std::popcount(umask));
      }
      // increment alpha in mixed radix, last coordinate fastest
      for (int i = n - 1; i >= 0; --i) {
        if (alpha[i] < params_.pi[i]) {
          alpha[i]++;
          break;
        }
        alpha[i] = 0;
      }
    }
  }

  // canonical basis order: degree-major, then alpha lex, then word mask.
  // Ids already sort by (alpha lex, umask), so a stable sort on degree works.
  basis_.resize(dim_);
  for (std::uint32_t id = 0; id < dim_; ++id) basis_[id] = id;
  std::stable_sort(basis_.begin(), basis_.end(),
                   [&](MonoId a, MonoId b) { return zdeg_[a] < zdeg_[b]; });
  ordinal_.assign(dim_, 0);
  for (std::uint32_t i = 0; i < dim_; ++i) ordinal_[basis_[i]] = i;
  deg_offset_.assign(params_.xi + 2, 0);
  for (std::uint32_t d = 0, i = 0; d <= params_.xi + 1; ++d) {
    while (i < dim_ && zdeg_[basis_[i]] < d) ++i;
    deg_offset_[d] = i;
  }

  // superderivation tables
  partial_target_.assign(2 * n, std::vector<std::uint32_t>(dim_, kNoMono));
  partial_sign_.assign(2 * n, std::vector<std::int8_t>(dim_, 1));
  for (int r = 1; r <= 2 * n; ++r) {
    auto& tgt = partial_target_[r - 1];
    auto& sgn = partial_sign_[r - 1];
    for (MonoId id = 0; id < dim_; ++id) {
      if (r <= n) {
        std::uint32_t ar = alphas_[std::size_t(id) * n + (r - 1)];
        if (ar == 0) continue;
        tgt[id] = id - (astride_[r - 1] << n);
      } else {
        int bit = r - n - 1;
        std::uint32_t umask = id & ((1u << n) - 1);
        if (!((umask >> bit) & 1u)) continue;
        tgt[id] = id ^ (1u << bit);
        int below = std::popcount(umask & ((1u << bit) - 1u));
        sgn[id] = (below % 2 == 0) ? 1 : -1;
      }
    }
  }

  // pairwise binomial tables C(a+b, a), zero when a+b exceeds pi_i
  binom_pair_.resize(n);
  const PrimeField& F = params_.field;
  for (int i = 0; i < n; ++i) {
    std::uint32_t w = params_.pi[i] + 1;
    binom_pair_[i].assign(std::size_t(w) * w, 0);
    for (std::uint32_t a = 0; a < w; ++a)
      for (std::uint32_t b = 0; a + b < w; ++b)
        binom_pair_[i][std::size_t(a) * w + b] = F.binom(a + b, a);
  }
}

MonoId Superalgebra::encode_raw(const std::vector<std::uint32_t>& alpha,
                                std::uint32_t umask) const {
  std::uint32_t a = 0;
  for (int i = 0; i < params_.n; ++i) a += alpha[i] * astride_[i];
  return (a << params_.n) | umask;
}

MonoId Superalgebra::encode(const Monomial& m) const {
  if (m.alpha.size() != static_cast<std::size_t>(params_.n))
    throw std::invalid_argument("alpha must have n entries");
  for (int i = 0; i < params_.n; ++i)
    if (m.alpha[i] > params_.pi[i])
      throw std::out_of_range("alpha exceeds pi");
  if (m.umask >= (1u << params_.n))
    throw std::out_of_range("word mask out of range");
  return encode_raw(m.alpha, m.umask);
}

Monomial Superalgebra::decode(MonoId id) const {
  if (id >= dim_) throw std::out_of_range("monomial id out of range");
  Monomial m;
  auto a = alpha_of(id);
  m.alpha.assign(a.begin(), a.end());
  m.umask = umask_of(id);
  return m;
}

std::span<const std::uint32_t> Superalgebra::alpha_of(MonoId id) const {
  return {alphas_.data() + std::size_t(id) * params_.n,
          static_cast<std::size_t>(params_.n)};
}

int Superalgebra::parity(MonoId id) const {
  return std::popcount(umask_of(id)) & 1;
}

MonoId Superalgebra::unit(int r) const {
  if (!params_.valid_direction(r))
    throw std::out_of_range("direction out of range");
  if (r <= params_.n) {
    std::vector<std::uint32_t> alpha(params_.n, 0);
    alpha[r - 1] = 1;
    return encode_raw(alpha, 0);
  }
  return 1u << (r - params_.n - 1);
}

bool Superalgebra::mono_mul(MonoId a, MonoId b, MonoId& out, Fp& coeff) const {
  const int n = params_.n;
  std::uint32_t ua = a & ((1u << n) - 1), ub = b & ((1u << n) - 1);
  if (ua & ub) return false;  // repeated exterior letter
  const std::uint32_t* aa = alphas_.data() + std::size_t(a) * n;
  const std::uint32_t* ab = alphas_.data() + std::size_t(b) * n;
  Fp c = 1;
  const PrimeField& F = params_.field;
  for (int i = 0; i < n; ++i) {
    std::uint32_t w = params_.pi[i] + 1;
    if (aa[i] + ab[i] >= w) return false;  // exceeds truncation bound
    c = F.mul(c, binom_pair_[i][std::size_t(aa[i]) * w + ab[i]]);
    if (c == 0) return false;  // binomial vanished mod p (base-p carry)
  }
  // sign of merging the exterior words: count inversions between ua and ub
  int inv = 0;
  std::uint32_t rest = ub;
  while (rest) {
    int bit = std::countr_zero(rest);
    rest &= rest - 1;
    inv += std::popcount(ua & ~((2u << bit) - 1u));
  }
  if (inv & 1) c = F.neg(c);
  out = ((a >> n) + (b >> n)) << n | (ua | ub);
  coeff = c;
  return true;
}

bool Superalgebra::mono_partial(int r, MonoId a, MonoId& out, Fp& coeff) const {
  if (!params_.valid_direction(r))
    throw std::out_of_range("direction out of range");
  std::uint32_t t = partial_target_[r - 1][a];
  if (t == kNoMono) return false;
  out = t;
  coeff = partial_sign_[r - 1][a] > 0 ? 1 : params_.field.p() - 1;
  return true;
}

SuperPoly Superalgebra::multiply(const SuperPoly& f, const SuperPoly& g) const {
  const PrimeField& F = params_.field;
  std::vector<std::pair<MonoId, Fp>> acc;
  acc.reserve(f.size() * g.size());
  for (auto& [ma, ca] : f.terms()) {
    for (auto& [mb, cb] : g.terms()) {
      MonoId m;
      Fp c;
      if (!mono_mul(ma, mb, m, c)) continue;
      acc.emplace_back(m, F.mul(F.mul(ca, cb), c));
    }
  }
  return SuperPoly::from_terms(F, std::move(acc));
}

SuperPoly Superalgebra::partial(int r, const SuperPoly& f) const {
  const PrimeField& F = params_.field;
  std::vector<std::pair<MonoId, Fp>> acc;
  acc.reserve(f.size());
  for (auto& [m, c] : f.terms()) {
    MonoId t;
    Fp s;
    if (!mono_partial(r, m, t, s)) continue;
    acc.emplace_back(t, F.mul(c, s));
  }
  return SuperPoly::from_terms(F, std::move(acc));
}

SuperPoly Superalgebra::scale(Fp c, const SuperPoly& f) const {
  const PrimeField& F = params_.field;
  std::vector<std::pair<MonoId, Fp>> acc(f.terms());
  for (auto& [m, v] : acc) v = F.mul(v, c);
  return SuperPoly::from_terms(F, std::move(acc));
}

SuperPoly Superalgebra::add(const SuperPoly& f, const SuperPoly& g) const {
  std::vector<std::pair<MonoId, Fp>> acc(f.terms());
  acc.insert(acc.end(), g.terms().begin(), g.terms().end());
  return SuperPoly::from_terms(params_.field, std::move(acc));
}

std::optional<int> Superalgebra::homogeneous_degree(const SuperPoly& f) const {
  std::optional<int> d;
  for (auto& [m, c] : f.terms()) {
    int dm = zdeg(m);
    if (!d)
      d = dm;
    else if (*d != dm)
      return std::nullopt;
  }
  return d;  // nullopt only for the zero element? empty -> nullopt
}

std::optional<int> Superalgebra::homogeneous_parity(const SuperPoly& f) const {
  std::optional<int> p;
  for (auto& [m, c] : f.terms()) {
    int pm = parity(m);
    if (!p)
      p = pm;
    else if (*p != pm)
      return std::nullopt;
  }
  return p;
}

std::span<const MonoId> Superalgebra::basis_at(int degree) const {
  if (degree < 0 || degree > static_cast<int>(params_.xi)) return {};
  std::uint32_t lo = deg_offset_[degree], hi = deg_offset_[degree + 1];
  return {basis_.data() + lo, hi - lo};
}

std::vector<Monomial> Superalgebra::basis_monomials(
    int degree, std::optional<int> par) const {
  std::vector<Monomial> out;
  for (MonoId id : basis_at(degree)) {
    if (par && parity(id) != *par) continue;
    out.push_back(decode(id));
  }
  return out;
}

}  // namespace cartan
