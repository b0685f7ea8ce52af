#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netring {

/// Canonical index of a ring, group or module element.
using Elem = std::uint64_t;

/// Raised for malformed algebraic input: reducible moduli, axiom failures,
/// unfaithful modules handed to coefficient-level verification, and so on.
class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive procedure would exceed its configured size bound.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constructor tree for a finite ring.
///
/// Element indices are lexicographic over the constructor's coordinates, first
/// coordinate most significant:
///   - IntegersMod(n), PrimeField(p): the residue itself.
///   - GaloisField(p,k,f): sum c_i p^i for the polynomial c_0 + c_1 x + ...
///   - MatrixRing(R,k): entries in row-major order, entry (0,0) most significant.
///   - UpperTriangular(R,k): entries (i <= j) in row-major order.
///   - Product(R_1..R_t): components, R_1 most significant.
///   - TableRing: indices as given by the tables (0 must be the additive identity).
struct RingDescriptor {
  enum class Kind { PrimeField, GaloisField, IntegersMod, MatrixRing, UpperTriangular, Product, TableRing };

  Kind kind = Kind::IntegersMod;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t n = 0;
  /// GaloisField modulus, low degree first, monic of degree k.
  std::vector<std::uint32_t> poly;
  /// Inner ring of MatrixRing / UpperTriangular, or the factors of Product.
  std::vector<RingDescriptor> children;
  std::vector<std::vector<Elem>> add_table;
  std::vector<std::vector<Elem>> mul_table;
  std::optional<Elem> identity;
  /// Accept a TableRing without multiplicative identity.
  bool rng = false;
  /// Optional display label for table rings.
  std::string label;

  static RingDescriptor prime_field(std::uint32_t p);
  /// An empty `poly` selects the built-in default modulus.
  static RingDescriptor galois_field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> poly = {});
  static RingDescriptor integers_mod(std::uint32_t n);
  static RingDescriptor matrix(RingDescriptor inner, std::uint32_t k);
  static RingDescriptor upper_triangular(RingDescriptor field, std::uint32_t k);
  static RingDescriptor product(std::vector<RingDescriptor> factors);
  static RingDescriptor table(std::vector<std::vector<Elem>> add, std::vector<std::vector<Elem>> mul,
                              std::optional<Elem> identity = std::nullopt, bool rng = false, std::string label = {});

  /// Human-readable name such as "M_2(GF(2))" or "GF(4) x Z_9".
  std::string name() const;

  bool operator==(const RingDescriptor&) const = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

namespace detail {
struct Arith {
  virtual ~Arith() = default;
  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
};
}  // namespace detail

/// A finite ring with elements 0..size()-1. Immutable after construction.
class Ring {
 public:
  /// Builds and validates a ring from its descriptor.
  static RingPtr create(const RingDescriptor& d);

  const RingDescriptor& descriptor() const { return desc_; }
  std::string name() const { return desc_.name(); }
  std::size_t size() const { return size_; }

  Elem zero() const { return 0; }
  bool has_identity() const { return identity_.has_value(); }
  /// Multiplicative identity; throws AlgebraError for an rng.
  Elem one() const;
  std::uint64_t characteristic() const { return characteristic_; }

  Elem add(Elem a, Elem b) const {
    return add_table_.empty() ? arith_->add(a, b) : add_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  Elem neg(Elem a) const { return neg_table_.empty() ? arith_->neg(a) : neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    return mul_table_.empty() ? arith_->mul(a, b) : mul_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  /// a added to itself t times.
  Elem times(std::uint64_t t, Elem a) const;

  /// Radices such that an index is a mixed-radix number whose digits add
  /// independently (digit i modulo moduli[i]); absent for table rings.
  const std::optional<std::vector<std::uint32_t>>& additive_moduli() const { return moduli_; }

  /// Greedy additive generating set in index order, starting with one() when present.
  const std::vector<Elem>& additive_generators() const { return generators_; }

  // Structured views. Valid only for the matching descriptor kind.
  bool is_matrix_ring() const { return desc_.kind == RingDescriptor::Kind::MatrixRing; }
  std::uint32_t matrix_dim() const;
  /// Inner ring of a MatrixRing / UpperTriangular.
  const RingPtr& inner() const;
  Elem entry(Elem a, std::size_t row, std::size_t col) const;
  Elem from_entries(std::span<const Elem> entries) const;
  std::vector<Elem> entries(Elem a) const;
  const std::vector<RingPtr>& factors() const { return factors_; }
  std::vector<Elem> components(Elem a) const;
  Elem from_components(std::span<const Elem> comps) const;

  bool is_commutative() const;
  bool is_field() const;
  /// Two-sided inverse, if a is a unit.
  std::optional<Elem> try_inverse(Elem a) const;
  Elem inverse(Elem a) const;
  /// All units in index order. Bounded by kUnitScanLimit elements.
  const std::vector<Elem>& units() const;

  static constexpr std::size_t kTableLimit = 1024;
  static constexpr std::size_t kUnitScanLimit = 4096;

 private:
  Ring() = default;
  void finish();

  RingDescriptor desc_;
  std::size_t size_ = 0;
  std::unique_ptr<detail::Arith> arith_;
  std::vector<Elem> add_table_, mul_table_, neg_table_;
  std::optional<Elem> identity_;
  std::uint64_t characteristic_ = 0;
  std::optional<std::vector<std::uint32_t>> moduli_;
  std::vector<Elem> generators_;
  std::vector<RingPtr> factors_;
  RingPtr inner_;

  mutable std::once_flag units_once_, inverse_once_;
  mutable std::vector<Elem> units_;
  mutable std::vector<Elem> inverse_table_;  // size_ marks "not a unit"
  mutable std::once_flag field_once_;
  mutable bool is_field_ = false;
};

/// Same as Ring::create.
RingPtr construct_ring(const RingDescriptor& d);

/// Pass/fail per ring axiom, with the first witness triple on failure.
struct AxiomReport {
  struct Check {
    std::string axiom;
    bool passed = true;
    std::vector<Elem> witness;
  };
  std::vector<Check> checks;
  std::optional<Elem> identity;
  /// "exhaustive" or "generator-reduced".
  std::string method;

  bool all_passed() const;
  bool passed(const std::string& axiom) const;
};

/// Checks the ring axioms on r. For |r| > 256 the multiplicative axioms are
/// checked on additive generators, which is equivalent once distributivity holds.
AxiomReport verify_ring_axioms(const Ring& r, std::size_t bound = 4096);

/// Same checks on raw tables (used to validate TableRing descriptors).
AxiomReport verify_table_axioms(const std::vector<std::vector<Elem>>& add, const std::vector<std::vector<Elem>>& mul);

bool is_commutative(const Ring& r);

bool is_prime(std::uint64_t n);

/// True iff the monic polynomial (low degree first) has no factor of degree 1..deg/2 over GF(p).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// Built-in modulus for GF(p^k): the lexicographically first monic irreducible of degree k.
std::vector<std::uint32_t> default_irreducible(std::uint32_t p, std::uint32_t k);

/// GF(p)[x]/(x^m) as a table ring; m = 2 gives the dual numbers.
RingDescriptor truncated_polynomial_ring(const RingDescriptor& base, std::uint32_t m);

}  // namespace netring
