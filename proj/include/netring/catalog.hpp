#pragma once

#include <string>
#include <vector>

#include "netring/ideal.hpp"
#include "netring/ring.hpp"

namespace netring {

/// One simple factor M_d(GF(p^r)) of a semi-simple ring.
struct SimpleFactorType {
  std::uint32_t field_degree = 1;  // r
  std::uint32_t matrix_dim = 1;    // d
  std::uint32_t weight() const { return field_degree * matrix_dim * matrix_dim; }
  bool operator==(const SimpleFactorType&) const = default;
};

/// Isomorphism types of semi-simple rings of size p^k, as factor lists sorted
/// by decreasing weight. Ordered by decreasing weight sequence, with matrix
/// factors ahead of fields at equal weight. Requires 1 <= k <= 6.
std::vector<std::vector<SimpleFactorType>> semisimple_types(std::uint32_t k);

/// The same list instantiated at prime p as Product/MatrixRing/GaloisField descriptors.
std::vector<RingDescriptor> semisimple_catalog(std::uint32_t p, std::uint32_t k);

RingDescriptor simple_factor_descriptor(std::uint32_t p, const SimpleFactorType& t);

/// (matrix size, field size) of one simple factor of R/J.
struct SimpleComponent {
  std::uint32_t matrix_dim = 1;
  std::uint64_t field_size = 0;
  bool operator==(const SimpleComponent&) const = default;
};

/// Wedderburn type of R/J: computes the radical, the quotient, splits it along
/// primitive central idempotents and identifies each block. Blocks of size at
/// most 256 are confirmed by an explicit isomorphism to M_d(GF(q)).
std::vector<SimpleComponent> semisimple_decompose(const RingPtr& r, std::size_t bound = 4096);

/// Structured model M_d(GF(q)) of a simple ring, chosen from the size of its centre.
RingDescriptor simple_model(const RingPtr& s);

/// The subring e*R for a central idempotent e, with identity e, as a table ring.
RingPtr corner_ring(const RingPtr& r, Elem e);

/// Factors R into rings of prime-power size along central idempotents.
std::vector<RingPtr> prime_power_decompose(const RingPtr& r);

/// Primitive (minimal nonzero) central idempotents.
std::vector<Elem> primitive_central_idempotents(const Ring& r);

struct CatalogEntry {
  RingDescriptor descriptor;
  std::string family;
};

struct StructuredCatalog {
  std::vector<CatalogEntry> entries;
  /// Human-readable lines describing which families are included.
  std::vector<std::string> coverage;
  /// Statement of what the catalog does not cover.
  std::string limitation;
};

/// Rings of size <= max_size buildable from the structured constructors, plus a
/// few truncated polynomial rings. Sorted by size, then name.
StructuredCatalog structured_catalog(std::size_t max_size = 16);

}  // namespace netring
