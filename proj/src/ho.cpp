#include "cartan/ho.hpp"

#include <algorithm>
#include <stdexcept>

#include "cartan/linalg.hpp"

namespace cartan {

VectorField t_h(const WittAlgebra& w, const SuperPoly& a) {
  if (a.zero()) return {};
  const Superalgebra& o = w.base();
  auto par = o.homogeneous_parity(a);
  if (!par) throw std::invalid_argument("split by parity first");
  const PrimeField& F = o.field();
  std::vector<std::pair<TermKey, Fp>> acc;
  for (int r = 1; r <= 2 * o.n(); ++r) {
    bool negate = (o.params().mu(r) & *par) != 0;
    int rp = o.params().conjugate(r);
    for (auto& [m, c] : a.terms()) {
      MonoId dm;
      Fp dc;
      if (!o.mono_partial(r, m, dm, dc)) continue;
      Fp v = F.mul(c, dc);
      if (negate) v = F.neg(v);
      acc.emplace_back(w.make_term(dm, rp), v);
    }
  }
  return VectorField::from_terms(F, std::move(acc));
}

bool verify_th_morphism(const WittAlgebra& w, const SuperPoly& a,
                        const SuperPoly& b) {
  VectorField ta = t_h(w, a);
  VectorField tb = t_h(w, b);
  VectorField lhs = w.bracket(ta, tb);
  VectorField rhs = t_h(w, w.apply(ta, b));
  return lhs == rhs;
}

HOAlgebra::HOAlgebra(const WittAlgebra& w) : w_(&w), basis_(build_basis()) {}

GradedSubspace HOAlgebra::build_basis() {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  const int top = static_cast<int>(o.params().xi) - 2;
  if (std::uint64_t(o.dim()) * 2 * o.n() >= (1u << 31))
    throw std::invalid_argument("algebra too large for this build");

  preimage_.assign(top + 2, {});
  th_lead_.assign(top + 2, {});
  mono_to_idx_.assign(o.dim(), kNone);

  std::vector<std::vector<VectorField>> by_deg(top + 2);
  // one independence filter per degree, over raw term coordinates
  std::vector<Echelon> ind;
  ind.reserve(top + 2);
  for (int s = 0; s <= top + 1; ++s)
    ind.emplace_back(F, o.dim() * 2 * o.n());

  for (MonoId m : o.basis()) {
    if (o.parity(m) != 1) continue;
    SuperPoly mono = SuperPoly::from_terms(F, {{m, 1}});
    VectorField img = t_h(*w_, mono);
    if (img.zero()) continue;  // only constants; odd monomials never hit this
    int deg = o.zdeg(m) - 2;
    SparseRow row;
    for (auto& [k, c] : img.terms())
      row.emplace_back(static_cast<std::uint32_t>(k), c);
    if (!ind[deg + 1].insert(std::move(row))) continue;  // dependent: drop
    Fp lead = img.terms()[0].second;
    if (lead != 1) img = w_->scale(F.inv(lead), img);
    mono_to_idx_[m] = static_cast<std::uint32_t>(by_deg[deg + 1].size());
    by_deg[deg + 1].push_back(std::move(img));
    preimage_[deg + 1].push_back(m);
    th_lead_[deg + 1].push_back(lead);
  }
  return GradedSubspace(*w_, -1, std::move(by_deg));
}

MonoId HOAlgebra::preimage(int degree, std::uint32_t idx) const {
  return preimage_.at(degree + 1).at(idx);
}

Fp HOAlgebra::th_lead(int degree, std::uint32_t idx) const {
  return th_lead_.at(degree + 1).at(idx);
}

bool HOAlgebra::index_of(MonoId m, int* degree, std::uint32_t* idx) const {
  std::uint32_t i = mono_to_idx_[m];
  if (i == kNone) return false;
  if (degree) *degree = w_->base().zdeg(m) - 2;
  if (idx) *idx = i;
  return true;
}

void HOAlgebra::bracket_coords(int di, std::uint32_t ai, int dj,
                               std::uint32_t aj, SparseCoords& out) const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  MonoId ma = preimage(di, ai);
  MonoId mb = preimage(dj, aj);
  Fp sa = th_lead_[di + 1][ai];
  Fp sb = th_lead_[dj + 1][aj];
  // g = T_H(ma)(mb) = sum_r (-1)^{mu(r)} d_r(ma) * d_{r'}(mb); ma is odd
  std::pair<MonoId, Fp> local[64];
  int nl = 0;
  for (int r = 1; r <= 2 * o.n(); ++r) {
    MonoId da;
    Fp ca;
    if (!o.mono_partial(r, ma, da, ca)) continue;
    MonoId db;
    Fp cb;
    if (!o.mono_partial(o.params().conjugate(r), mb, db, cb)) continue;
    MonoId m;
    Fp cm;
    if (!o.mono_mul(da, db, m, cm)) continue;
    Fp v = F.mul(F.mul(ca, cb), cm);
    if (o.params().mu(r)) v = F.neg(v);
    local[nl++] = {m, v};
  }
  std::sort(local, local + nl);
  Fp sab = F.mul(sa, sb);
  for (int i = 0; i < nl;) {
    MonoId m = local[i].first;
    Fp v = 0;
    while (i < nl && local[i].first == m) {
      v = F.add(v, local[i].second);
      ++i;
    }
    if (v == 0) continue;
    if (o.zdeg(m) == 0) continue;  // T_H kills constants
    std::uint32_t k = mono_to_idx_[m];
    if (k == kNone)
      throw std::domain_error("bracket leaves the computed basis");
    // T_H(m) = lead * basis vector
    int dm = w_->base().zdeg(m) - 2;
    out.emplace_back(k, F.mul(F.mul(sab, th_lead_[dm + 1][k]), v));
  }
}

SparseCoords HOAlgebra::bracket_coords_generic(int di, std::uint32_t ai,
                                               int dj, std::uint32_t aj) const {
  VectorField br = w_->bracket(basis_.vec(di, ai), basis_.vec(dj, aj));
  SparseCoords out;
  if (br.zero()) return out;
  auto [deg, coords] = basis_.coords(br);
  for (std::uint32_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0) out.emplace_back(k, coords[k]);
  return out;
}

bool HOAlgebra::is_member(const VectorField& A) const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  const int n2 = 2 * o.n();
  for (auto& [k, c] : A.terms())
    if (w_->term_parity(k) != 0)
      throw std::invalid_argument("membership test needs an even field");
  // split into coefficient polynomials a_r
  std::vector<std::vector<std::pair<MonoId, Fp>>> comp(n2);
  for (auto& [k, c] : A.terms()) {
    auto [m, r] = w_->split_term(k);
    comp[r - 1].emplace_back(m, c);
  }
  std::vector<SuperPoly> a(n2);
  for (int r = 0; r < n2; ++r)
    a[r] = SuperPoly::from_terms(F, std::move(comp[r]));
  for (int i = 1; i <= n2; ++i) {
    for (int j = i; j <= n2; ++j) {
      int mi = o.params().mu(i), mj = o.params().mu(j);
      SuperPoly lhs = o.partial(i, a[o.params().conjugate(j) - 1]);
      SuperPoly rhs = o.partial(j, a[o.params().conjugate(i) - 1]);
      if ((mi * mj + mi + mj) % 2 != 0) rhs = o.scale(F.p() - 1, rhs);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

int HOAlgebra::membership_kernel_dim(int degree) const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  const int n2 = 2 * o.n();
  if (degree < -1 || degree > static_cast<int>(o.params().xi) - 1) return 0;

  // columns: even-parity terms (m, r) with zd(m) = degree + 1
  std::vector<TermKey> cols;
  for (MonoId m : o.basis_at(degree + 1)) {
    int pm = o.parity(m);
    for (int r = 1; r <= n2; ++r)
      if (((pm + o.params().mu(r)) & 1) == 0)
        cols.push_back(w_->make_term(m, r));
  }
  if (cols.empty()) return 0;
  std::map<TermKey, std::uint32_t> col_of;
  for (std::uint32_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;

  // row index of condition (i, j) at target monomial c
  auto row_of = [&](int i, int j, MonoId c) {
    std::uint32_t pos =
        o.ordinal(c) - o.ordinal(o.basis_at(degree).front());
    return std::uint32_t((i - 1) * n2 + (j - 1)) *
               static_cast<std::uint32_t>(o.basis_at(degree).size()) +
           pos;
  };

  SparseMatrix sys;
  sys.cols = static_cast<std::uint32_t>(cols.size());
  sys.rows = std::uint32_t(n2 * n2) *
             static_cast<std::uint32_t>(o.basis_at(degree).size());
  if (degree >= 0 && !o.basis_at(degree).empty()) {
    for (std::uint32_t ci = 0; ci < cols.size(); ++ci) {
      auto [m, r] = w_->split_term(cols[ci]);
      for (int i = 1; i <= n2; ++i) {
        for (int j = i; j <= n2; ++j) {
          int mi = o.params().mu(i), mj = o.params().mu(j);
          Fp sign = ((mi * mj + mi + mj) % 2 != 0) ? F.p() - 1 : 1;
          // d_i(a_{j'}) - sign * d_j(a_{i'}) = 0
          if (r == o.params().conjugate(j)) {
            MonoId t;
            Fp c;
            if (o.mono_partial(i, m, t, c)) sys.add(row_of(i, j, t), ci, c);
          }
          if (r == o.params().conjugate(i)) {
            MonoId t;
            Fp c;
            if (o.mono_partial(j, m, t, c))
              sys.add(row_of(i, j, t), ci, F.neg(F.mul(sign, c)));
          }
        }
      }
    }
  }
  return static_cast<int>(cols.size()) - static_cast<int>(rank(F, sys));
}

int HOAlgebra::odd_part_dim() const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  Echelon ech(F, o.dim() * 2 * o.n());
  int total = 0;
  for (MonoId m : o.basis()) {
    if (o.parity(m) != 0) continue;
    VectorField img = t_h(*w_, SuperPoly::from_terms(F, {{m, 1}}));
    if (img.zero()) continue;
    SparseRow row;
    for (auto& [k, c] : img.terms())
      row.emplace_back(static_cast<std::uint32_t>(k), c);
    if (ech.insert(std::move(row))) ++total;
  }
  return total;
}

std::vector<VectorField> HOAlgebra::generators_m() const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  std::vector<VectorField> out;
  for (int i = 1; i <= o.n(); ++i) {
    for (std::uint32_t q = 0; q <= o.params().pi[i - 1]; ++q) {
      for (int k = o.n() + 1; k <= 2 * o.n(); ++k) {
        Monomial m;
        m.alpha.assign(o.n(), 0);
        m.alpha[i - 1] = q;
        m.umask = 1u << (k - o.n() - 1);
        out.push_back(
            t_h(*w_, SuperPoly::from_terms(F, {{o.encode(m), 1}})));
      }
    }
  }
  return out;
}

std::vector<VectorField> HOAlgebra::generators_n() const {
  const Superalgebra& o = w_->base();
  const PrimeField& F = o.field();
  std::vector<VectorField> out;
  const int n = o.n();
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      for (int q = l + 1; q < n; ++q) {
        Monomial m;
        m.alpha.assign(n, 0);
        m.umask = (1u << k) | (1u << l) | (1u << q);
        out.push_back(
            t_h(*w_, SuperPoly::from_terms(F, {{o.encode(m), 1}})));
      }
  return out;
}

GradedSubspace HOAlgebra::closure(const std::vector<VectorField>& seed) const {
  PairBracketFn fast = [this](int di, std::uint32_t ai, int dj,
                              std::uint32_t aj, SparseCoords& out) {
    bracket_coords(di, ai, dj, aj, out);
  };
  return cartan::closure(*w_, seed, basis_, fast);
}

GradedSubspace closure(const WittAlgebra& w,
                       const std::vector<VectorField>& seed,
                       const GradedSubspace& ambient,
                       const PairBracketFn& bracket_fn) {
  const PrimeField& F = w.field();
  PairBracketFn pb = bracket_fn;
  if (!pb) {
    pb = [&w, &ambient](int di, std::uint32_t ai, int dj, std::uint32_t aj,
                        SparseCoords& out) {
      VectorField br = w.bracket(ambient.vec(di, ai), ambient.vec(dj, aj));
      if (br.zero()) return;
      auto [deg, coords] = ambient.coords(br);
      for (std::uint32_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0) out.emplace_back(k, coords[k]);
    };
  }

  const int lo = ambient.min_degree(), hi = ambient.max_degree();
  auto slot = [&](int deg) { return deg - lo; };
  std::vector<Echelon> span;
  span.reserve(hi - lo + 1);
  for (int d = lo; d <= hi; ++d)
    span.emplace_back(F, static_cast<std::uint32_t>(ambient.dim_at(d)));

  struct Kept {
    int deg;
    std::vector<Fp> coords;
  };
  std::vector<Kept> kept;

  auto try_add = [&](int deg, std::vector<Fp> coords) -> bool {
    SparseRow row;
    for (std::uint32_t c = 0; c < coords.size(); ++c)
      if (coords[c] != 0) row.emplace_back(c, coords[c]);
    if (row.empty()) return false;
    if (!span[slot(deg)].insert(std::move(row))) return false;
    kept.push_back({deg, std::move(coords)});
    return true;
  };

  for (const VectorField& s : seed) {
    if (s.zero()) continue;
    int deg;
    std::vector<Fp> coords;
    if (!ambient.try_coords(s, &deg, &coords))
      throw std::domain_error("seed outside the ambient span");
    try_add(deg, std::move(coords));
  }

  // frontier: bracket each newly kept vector against everything kept so far
  SparseCoords sc;
  for (std::size_t f = 0; f < kept.size(); ++f) {
    for (std::size_t g = 0; g <= f; ++g) {
      int dt = kept[f].deg + kept[g].deg;
      std::vector<Fp> acc(dt >= lo && dt <= hi ? ambient.dim_at(dt) : 0, 0);
      bool any = false;
      const auto& fv = kept[f].coords;
      const auto& gv = kept[g].coords;
      for (std::uint32_t a = 0; a < fv.size(); ++a) {
        if (fv[a] == 0) continue;
        for (std::uint32_t b = 0; b < gv.size(); ++b) {
          if (gv[b] == 0) continue;
          Fp cab = F.mul(fv[a], gv[b]);
          sc.clear();
          pb(kept[f].deg, a, kept[g].deg, b, sc);
          for (auto& [k, c] : sc) {
            if (k >= acc.size())
              throw std::domain_error("bracket leaves the ambient span");
            acc[k] = F.add(acc[k], F.mul(cab, c));
            any = true;
          }
        }
      }
      if (any) try_add(dt, std::move(acc));
    }
  }

  std::vector<std::vector<VectorField>> by_deg(hi - lo + 1);
  // deterministic order: by degree, then insertion order
  for (const Kept& kv : kept)
    by_deg[slot(kv.deg)].push_back(ambient.combine(kv.deg, kv.coords));
  return GradedSubspace(w, lo, std::move(by_deg));
}

GradedSubspace centralizer(const WittAlgebra& w,
                           const std::vector<VectorField>& sub,
                           const GradedSubspace& ambient) {
  const PrimeField& F = w.field();
  const int lo = ambient.min_degree(), hi = ambient.max_degree();
  std::vector<std::vector<VectorField>> by_deg(hi - lo + 1);
  for (int d = lo; d <= hi; ++d) {
    const auto& vecs = ambient.at(d);
    if (vecs.empty()) continue;
    SparseMatrix sys;
    sys.cols = static_cast<std::uint32_t>(vecs.size());
    std::map<std::pair<std::size_t, TermKey>, std::uint32_t> rows;
    for (std::uint32_t a = 0; a < vecs.size(); ++a) {
      for (std::size_t s = 0; s < sub.size(); ++s) {
        VectorField br = w.bracket(vecs[a], sub[s]);
        for (auto& [k, c] : br.terms()) {
          std::uint32_t row =
              rows.try_emplace({s, k}, static_cast<std::uint32_t>(rows.size()))
                  .first->second;
          sys.add(row, a, c);
        }
      }
    }
    sys.rows = static_cast<std::uint32_t>(rows.size());
    for (auto& v : kernel_basis(F, sys))
      by_deg[d - lo].push_back(ambient.combine(d, v));
  }
  return GradedSubspace(w, lo, std::move(by_deg));
}

}  // namespace cartan
