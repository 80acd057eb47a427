#include "cartan/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cartan {

std::string mono_text(const Superalgebra& o, MonoId m) {
  auto alpha = o.alpha_of(m);
  std::uint32_t umask = o.umask_of(m);
  bool has_alpha = false;
  for (auto a : alpha)
    if (a) has_alpha = true;
  std::ostringstream out;
  if (has_alpha) {
    out << "x^(";
    for (int i = 0; i < o.n(); ++i) {
      if (i) out << ",";
      out << alpha[i];
    }
    out << ")";
  }
  if (umask) {
    if (has_alpha) out << "*";
    out << "x[";
    bool first = true;
    for (int b = 0; b < o.n(); ++b) {
      if (!((umask >> b) & 1u)) continue;
      if (!first) out << ",";
      out << (o.n() + 1 + b);
      first = false;
    }
    out << "]";
  }
  if (!has_alpha && !umask) out << "1";
  return out.str();
}

std::string term_text(const WittAlgebra& w, TermKey k) {
  auto [m, r] = w.split_term(k);
  std::string mono = mono_text(w.base(), m);
  std::ostringstream out;
  if (mono != "1") out << mono << "*";
  out << "d" << r;
  return out.str();
}

std::string field_text(const WittAlgebra& w, const VectorField& v) {
  if (v.zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto& [k, c] : v.terms()) {
    if (!first) out << "+";
    if (c != 1) out << c << "*";
    out << term_text(w, k);
    first = false;
  }
  return out.str();
}

namespace {

void write_header(std::ostream& os, const HOAlgebra& ho, const char* what) {
  const auto& p = ho.alg().params();
  os << kFormatTag << " " << what << " n=" << p.n << " p=" << p.field.p()
     << " t=";
  for (int i = 0; i < p.n; ++i) {
    if (i) os << ",";
    os << p.t[i];
  }
  os << "\n";
}

std::uint32_t global_index(const HOAlgebra& ho, int deg, std::uint32_t idx) {
  std::uint32_t off = 0;
  for (int d = ho.min_degree(); d < deg; ++d) off += ho.dim_at(d);
  return off + idx;
}

}  // namespace

void write_basis(std::ostream& os, const HOAlgebra& ho,
                 std::optional<int> degree) {
  write_header(os, ho, "basis");
  for (int d = ho.min_degree(); d <= ho.max_degree(); ++d) {
    if (degree && d != *degree) continue;
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(ho.dim_at(d));
         ++i) {
      os << "b " << global_index(ho, d, i) << " " << d << " "
         << field_text(ho.witt(), ho.basis().vec(d, i)) << "\n";
    }
  }
}

void write_structure_constants(std::ostream& os, const HOAlgebra& ho) {
  write_header(os, ho, "structure-constants");
  std::uint32_t total = static_cast<std::uint32_t>(ho.dim());
  os << "dim " << total << "\n";
  for (int d = ho.min_degree(); d <= ho.max_degree(); ++d)
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(ho.dim_at(d)); ++i)
      os << "b " << global_index(ho, d, i) << " " << d << " "
         << field_text(ho.witt(), ho.basis().vec(d, i)) << "\n";
  SparseCoords sc;
  for (int di = ho.min_degree(); di <= ho.max_degree(); ++di) {
    for (std::uint32_t ai = 0; ai < static_cast<std::uint32_t>(ho.dim_at(di));
         ++ai) {
      // pairs (di, ai) < (dj, aj) in the global order
      for (int dj = di; dj <= ho.max_degree(); ++dj) {
        std::uint32_t bstart = (dj == di) ? ai + 1 : 0;
        for (std::uint32_t aj = bstart;
             aj < static_cast<std::uint32_t>(ho.dim_at(dj)); ++aj) {
          int dt = di + dj;
          if (dt < ho.min_degree() || dt > ho.max_degree()) continue;
          sc.clear();
          ho.bracket_coords(di, ai, dj, aj, sc);
          if (sc.empty()) continue;
          std::sort(sc.begin(), sc.end());
          std::uint32_t gi = global_index(ho, di, ai);
          std::uint32_t gj = global_index(ho, dj, aj);
          for (auto& [k, c] : sc)
            os << "c " << gi << " " << gj << " " << global_index(ho, dt, k)
               << " " << c << "\n";
        }
      }
    }
  }
}

void write_der_basis(std::ostream& os, const HOAlgebra& ho,
                     const DerivationBasis& basis) {
  write_header(os, ho, "der-basis");
  os << "degree " << basis.degree << " dim " << basis.dim() << "\n";
  for (int v = 0; v < basis.dim(); ++v) {
    os << "v " << v << " inner=" << (basis.inner[v] ? 1 : 0) << "\n";
    for (auto& [src, blk] : basis.maps[v].blocks) {
      for (std::uint32_t r = 0; r < blk.rows; ++r)
        for (std::uint32_t c = 0; c < blk.cols; ++c)
          if (blk.at(r, c) != 0)
            os << "e " << v << " " << src << " " << r << " " << c << " "
               << blk.at(r, c) << "\n";
    }
  }
}

ScDoc read_structure_constants(std::istream& is) {
  ScDoc doc;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty document");
  {
    std::istringstream hdr(line);
    std::string tag, what;
    hdr >> tag >> what;
    if (tag != kFormatTag) throw std::runtime_error("unknown format version");
    if (what != "structure-constants")
      throw std::runtime_error("not a structure-constants document");
    std::string kv;
    while (hdr >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad header");
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "n")
        doc.n = std::stoi(val);
      else if (key == "p")
        doc.p = static_cast<std::uint32_t>(std::stoul(val));
      else if (key == "t") {
        std::istringstream ts(val);
        std::string tok;
        while (std::getline(ts, tok, ','))
          doc.t.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "dim") {
      ls >> doc.basis_count;
    } else if (kind == "b") {
      // labels are informative; indices are checked via the count
    } else if (kind == "c") {
      std::uint32_t i, j, k;
      Fp c;
      if (!(ls >> i >> j >> k >> c)) throw std::runtime_error("bad triple");
      doc.triples.emplace_back(i, j, k, c);
    } else {
      throw std::runtime_error("unknown record: " + kind);
    }
  }
  return doc;
}

}  // namespace cartan
