#include "cartan/witt.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartan {

VectorField VectorField::from_terms(const PrimeField& F,
                                    std::vector<std::pair<TermKey, Fp>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    TermKey k = terms[i].first;
    Fp v = 0;
    while (i < terms.size() && terms[i].first == k) {
      v = F.add(v, F.reduce(terms[i].second));
      ++i;
    }
    if (v != 0) terms[out++] = {k, v};
  }
  terms.resize(out);
  VectorField f;
  f.terms_ = std::move(terms);
  return f;
}

VectorField VectorField::single(TermKey k, Fp c) {
  VectorField f;
  if (c != 0) f.terms_ = {{k, c}};
  return f;
}

Fp VectorField::coeff(TermKey k) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), k,
      [](const auto& t, TermKey key) { return t.first < key; });
  return (it != terms_.end() && it->first == k) ? it->second : 0;
}

TermKey WittAlgebra::make_term(MonoId m, int r) const {
  const int n2 = 2 * o_->n();
  if (!o_->params().valid_direction(r))
    throw std::out_of_range("direction out of range");
  return TermKey(m) * n2 + (r - 1);
}

std::pair<MonoId, int> WittAlgebra::split_term(TermKey k) const {
  const int n2 = 2 * o_->n();
  return {static_cast<MonoId>(k / n2), static_cast<int>(k % n2) + 1};
}

int WittAlgebra::term_zdeg(TermKey k) const {
  auto [m, r] = split_term(k);
  return o_->zdeg(m) - 1;
}

int WittAlgebra::term_parity(TermKey k) const {
  auto [m, r] = split_term(k);
  return (o_->parity(m) + o_->params().mu(r)) & 1;
}

int WittAlgebra::zdeg(const VectorField& v) const {
  if (v.zero()) throw std::domain_error("zero field has no degree");
  int d = term_zdeg(v.terms()[0].first);
  for (auto& [k, c] : v.terms())
    if (term_zdeg(k) != d) throw std::domain_error("field not Z-homogeneous");
  return d;
}

int WittAlgebra::parity(const VectorField& v) const {
  if (v.zero()) throw std::domain_error("zero field has no parity");
  int p = term_parity(v.terms()[0].first);
  for (auto& [k, c] : v.terms())
    if (term_parity(k) != p)
      throw std::domain_error("field not parity-homogeneous");
  return p;
}

bool WittAlgebra::is_homogeneous(const VectorField& v) const {
  if (v.zero()) return true;
  int d = term_zdeg(v.terms()[0].first);
  int p = term_parity(v.terms()[0].first);
  for (auto& [k, c] : v.terms())
    if (term_zdeg(k) != d || term_parity(k) != p) return false;
  return true;
}

SuperPoly WittAlgebra::apply(const VectorField& D, const SuperPoly& g) const {
  const PrimeField& F = field();
  std::vector<std::pair<MonoId, Fp>> acc;
  for (auto& [k, c] : D.terms()) {
    auto [fm, r] = split_term(k);
    for (auto& [gm, gc] : g.terms()) {
      MonoId dm;
      Fp dc;
      if (!o_->mono_partial(r, gm, dm, dc)) continue;
      MonoId pm;
      Fp pc;
      if (!o_->mono_mul(fm, dm, pm, pc)) continue;
      acc.emplace_back(pm, F.mul(F.mul(c, gc), F.mul(dc, pc)));
    }
  }
  return SuperPoly::from_terms(F, std::move(acc));
}

VectorField WittAlgebra::bracket(const VectorField& A,
                                 const VectorField& B) const {
  const PrimeField& F = field();
  std::vector<std::pair<TermKey, Fp>> acc;
  for (auto& [ka, ca] : A.terms()) {
    auto [ma, r] = split_term(ka);
    int pa = term_parity(ka);
    for (auto& [kb, cb] : B.terms()) {
      auto [mb, s] = split_term(kb);
      int pb = term_parity(kb);
      Fp c = F.mul(ca, cb);
      // f d_r(g) d_s
      MonoId dg;
      Fp cdg;
      if (o_->mono_partial(r, mb, dg, cdg)) {
        MonoId m;
        Fp cm;
        if (o_->mono_mul(ma, dg, m, cm))
          acc.emplace_back(make_term(m, s), F.mul(c, F.mul(cdg, cm)));
      }
      // -(-1)^{p(f d_r) p(g d_s)} g d_s(f) d_r
      MonoId df;
      Fp cdf;
      if (o_->mono_partial(s, ma, df, cdf)) {
        MonoId m;
        Fp cm;
        if (o_->mono_mul(mb, df, m, cm)) {
          Fp w = F.mul(c, F.mul(cdf, cm));
          if ((pa & pb) == 0) w = F.neg(w);
          acc.emplace_back(make_term(m, r), w);
        }
      }
    }
  }
  return VectorField::from_terms(F, std::move(acc));
}

VectorField WittAlgebra::partial_field(int r) const {
  return VectorField::single(make_term(o_->one(), r), 1);
}

VectorField WittAlgebra::delta(int i) const {
  if (i < 1 || i > o_->n()) throw std::out_of_range("i must be in Y0");
  int ip = o_->params().conjugate(i);
  return VectorField::from_terms(
      field(), {{make_term(o_->unit(ip), ip), 1},
                {make_term(o_->unit(i), i), field().p() - 1}});
}

VectorField WittAlgebra::gamma() const {
  std::vector<std::pair<TermKey, Fp>> terms;
  for (int i = 1; i <= o_->n(); ++i) {
    int ip = o_->params().conjugate(i);
    terms.emplace_back(make_term(o_->unit(ip), ip), 1);
  }
  return VectorField::from_terms(field(), std::move(terms));
}

VectorField WittAlgebra::scale(Fp c, const VectorField& v) const {
  std::vector<std::pair<TermKey, Fp>> acc(v.terms());
  for (auto& [k, w] : acc) w = field().mul(w, c);
  return VectorField::from_terms(field(), std::move(acc));
}

VectorField WittAlgebra::add(const VectorField& a, const VectorField& b) const {
  std::vector<std::pair<TermKey, Fp>> acc(a.terms());
  acc.insert(acc.end(), b.terms().begin(), b.terms().end());
  return VectorField::from_terms(field(), std::move(acc));
}

GradedSubspace WittAlgebra::even_part_basis() const {
  const int ximinus = static_cast<int>(o_->params().xi) - 1;
  std::vector<std::vector<VectorField>> by_deg(ximinus + 2);
  for (int d = -1; d <= ximinus; ++d) {
    for (MonoId m : o_->basis_at(d + 1)) {
      int pm = o_->parity(m);
      for (int r = 1; r <= 2 * o_->n(); ++r) {
        if (((pm + o_->params().mu(r)) & 1) != 0) continue;
        by_deg[d + 1].push_back(VectorField::single(make_term(m, r), 1));
      }
    }
  }
  return GradedSubspace(*this, -1, std::move(by_deg));
}

GradedSubspace WittAlgebra::g_basis() const {
  const int n = o_->n();
  std::vector<std::vector<VectorField>> by_deg(n + 1);
  // exterior-only monomials x^u in canonical order, then directions
  for (int d = -1; d <= n - 1; ++d) {
    for (MonoId m : o_->basis_at(d + 1)) {
      if ((m >> n) != 0) continue;  // divided-power part present
      int pm = o_->parity(m);
      for (int r = 1; r <= 2 * n; ++r) {
        if (((pm + o_->params().mu(r)) & 1) != 0) continue;
        by_deg[d + 1].push_back(VectorField::single(make_term(m, r), 1));
      }
    }
  }
  return GradedSubspace(*this, -1, std::move(by_deg));
}

GradedSubspace::GradedSubspace(const WittAlgebra& w, int min_degree,
                               std::vector<std::vector<VectorField>> basis)
    : w_(&w), min_deg_(min_degree), basis_(std::move(basis)) {
  const PrimeField& F = w.field();
  index_.reserve(basis_.size());
  for (std::size_t s = 0; s < basis_.size(); ++s) {
    int deg = min_deg_ + static_cast<int>(s);
    // collect the term support of this degree's basis
    std::map<TermKey, std::uint32_t> tindex;
    for (const VectorField& v : basis_[s]) {
      if (v.zero()) throw std::domain_error("zero basis vector");
      if (w.zdeg(v) != deg)
        throw std::domain_error("basis vector degree mismatch");
      for (auto& [k, c] : v.terms()) tindex.emplace(k, 0);
    }
    std::uint32_t nt = 0;
    for (auto& [k, idx] : tindex) idx = nt++;
    DegreeIndex di(F, nt + static_cast<std::uint32_t>(basis_[s].size()));
    di.term_index = std::move(tindex);
    for (std::uint32_t i = 0; i < basis_[s].size(); ++i) {
      SparseRow row;
      for (auto& [k, c] : basis_[s][i].terms())
        row.emplace_back(di.term_index.at(k), c);
      std::sort(row.begin(), row.end());
      // independence concerns the term part only, not the tracking columns
      bool has_real = false;
      for (auto& [c, v] : di.ech.reduce(row))
        if (c < nt) has_real = true;
      if (!has_real)
        throw std::domain_error("basis vectors not linearly independent");
      row.emplace_back(nt + i, 1);
      di.ech.insert(std::move(row));
    }
    dim_ += static_cast<int>(basis_[s].size());
    index_.push_back(std::move(di));
  }
}

int GradedSubspace::dim_at(int degree) const {
  if (degree < min_deg_ || degree > max_degree()) return 0;
  return static_cast<int>(basis_[degree - min_deg_].size());
}

const std::vector<VectorField>& GradedSubspace::at(int degree) const {
  static const std::vector<VectorField> kEmpty;
  if (degree < min_deg_ || degree > max_degree()) return kEmpty;
  return basis_[degree - min_deg_];
}

const VectorField& GradedSubspace::vec(int degree, int idx) const {
  return at(degree).at(idx);
}

bool GradedSubspace::try_coords(const VectorField& v, int* degree,
                                std::vector<Fp>* coeffs) const {
  if (v.zero()) return false;  // degree of 0 is ambiguous; callers special-case
  if (!w_->is_homogeneous(v)) return false;
  int deg = w_->zdeg(v);
  if (deg < min_deg_ || deg > max_degree()) return false;
  const DegreeIndex& di = index_[deg - min_deg_];
  const std::uint32_t nt = static_cast<std::uint32_t>(di.term_index.size());
  SparseRow row;
  for (auto& [k, c] : v.terms()) {
    auto it = di.term_index.find(k);
    if (it == di.term_index.end()) return false;  // support leaves the span
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end());
  SparseRow rem = di.ech.reduce(std::move(row));
  std::vector<Fp> out(basis_[deg - min_deg_].size(), 0);
  const PrimeField& F = w_->field();
  for (auto& [c, val] : rem) {
    if (c < nt) return false;
    out[c - nt] = F.neg(val);
  }
  if (degree) *degree = deg;
  if (coeffs) *coeffs = std::move(out);
  return true;
}

std::pair<int, std::vector<Fp>> GradedSubspace::coords(
    const VectorField& v) const {
  int deg;
  std::vector<Fp> out;
  if (!try_coords(v, &deg, &out))
    throw std::domain_error("vector outside the graded subspace");
  return {deg, std::move(out)};
}

VectorField GradedSubspace::combine(int degree,
                                    std::span<const Fp> coeffs) const {
  const auto& vecs = at(degree);
  if (coeffs.size() != vecs.size())
    throw std::invalid_argument("length mismatch");
  std::vector<std::pair<TermKey, Fp>> acc;
  const PrimeField& F = w_->field();
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (auto& [k, c] : vecs[i].terms())
      acc.emplace_back(k, F.mul(c, coeffs[i]));
  }
  return VectorField::from_terms(F, std::move(acc));
}

}  // namespace cartan
