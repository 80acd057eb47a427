#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cartan/derivations.hpp"
#include "cartan/ho.hpp"

namespace cartan {

inline constexpr const char* kFormatTag = "cartan-ho-lab/1";

/// x^(2,0,0)*x[4,6]; x^(0,...)*x[] parts are omitted, the unit is "1".
std::string mono_text(const Superalgebra& o, MonoId m);
/// Monomial text with the direction suffix, e.g. x^(2,0,0)*x[4,6]*d3 or d1.
std::string term_text(const WittAlgebra& w, TermKey k);
/// Sum of coefficient-prefixed terms joined with '+'; coefficients in [1,p).
std::string field_text(const WittAlgebra& w, const VectorField& v);

void write_basis(std::ostream& os, const HOAlgebra& ho,
                 std::optional<int> degree = {});
void write_structure_constants(std::ostream& os, const HOAlgebra& ho);
void write_der_basis(std::ostream& os, const HOAlgebra& ho,
                     const DerivationBasis& basis);

struct ScDoc {
  int n = 0;
  std::uint32_t p = 0;
  std::vector<std::uint32_t> t;
  std::uint32_t basis_count = 0;
  // (i, j, k, c): [b_i, b_j] = sum c b_k, global degree-major indices, i < j
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, Fp>>
      triples;
};

/// Parse a structure-constants document; throws std::runtime_error on a
/// malformed file or version mismatch.
ScDoc read_structure_constants(std::istream& is);

}  // namespace cartan
