#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netring/ring.hpp"

namespace netring {

enum class Side { Left, Right, TwoSided };

const char* side_name(Side s);

struct Ideal {
  RingPtr ring;
  /// Sorted element indices.
  std::vector<Elem> elements;
  Side side = Side::TwoSided;

  std::size_t size() const { return elements.size(); }
  bool contains(Elem a) const;
  bool is_zero() const { return elements.size() == 1; }
  bool is_whole() const { return ring && elements.size() == ring->size(); }
  bool operator==(const Ideal& o) const { return elements == o.elements && side == o.side; }
};

/// Additive subgroup generated by `gens`, sorted.
std::vector<Elem> additive_span(const Ring& r, const std::vector<Elem>& gens);

/// Smallest ideal of the given side containing `gens`.
Ideal generate_ideal(const RingPtr& r, const std::vector<Elem>& gens, Side side);

/// True iff `elements` is an additive subgroup closed under the side's multiplications.
bool is_ideal(const Ring& r, const std::vector<Elem>& elements, Side side);

/// All ideals of the given side, sorted by size then elements. Includes {0} and R.
std::vector<Ideal> ideals(const RingPtr& r, Side side, std::size_t bound = 4096);
std::vector<Ideal> two_sided_ideals(const RingPtr& r, std::size_t bound = 4096);
std::vector<Ideal> left_ideals(const RingPtr& r, std::size_t bound = 4096);

/// Proper ideals not contained in any other proper ideal of `all`.
std::vector<Ideal> maximal_proper(const std::vector<Ideal>& all);

/// Jacobson radical as the intersection of the maximal left ideals.
Ideal radical(const RingPtr& r, std::size_t bound = 4096);

/// Element-wise intersection of ideals over the same ring.
Ideal intersect(const std::vector<Ideal>& ideals, Side side);

struct RingHom {
  RingPtr domain;
  RingPtr codomain;
  /// map[a] is the image of domain element a.
  std::vector<Elem> map;
  bool surjective = false;

  Elem operator()(Elem a) const { return map.at(a); }
  bool injective() const;
};

/// Pointwise check of additivity, multiplicativity, 0 and 1. Exhaustive when
/// |domain| <= 256, otherwise reduced to additive generators.
bool check_homomorphism(const RingHom& h);

RingHom identity_hom(const RingPtr& r);
RingHom compose(const RingHom& second, const RingHom& first);

struct QuotientResult {
  RingPtr ring;
  RingHom projection;
  /// Least element of each coset, in coset index order.
  std::vector<Elem> representatives;
};

/// R/I as a table ring. Coset indices follow the order of their least elements.
QuotientResult quotient(const RingPtr& r, const Ideal& i);

struct HomSearchOptions {
  bool surjective_only = false;
  bool injective_only = false;
  std::size_t limit = 0;  // 0 = unlimited
  std::size_t domain_bound = 256;
};

/// All unital ring homomorphisms R -> S, by backtracking over additive generators of R.
std::vector<RingHom> find_homomorphisms(const RingPtr& r, const RingPtr& s, const HomSearchOptions& opts = {});
std::vector<RingHom> find_homomorphisms(const RingPtr& r, const RingPtr& s, bool surjective_only);

/// An isomorphism R -> S, if one exists.
std::optional<RingHom> find_isomorphism(const RingPtr& r, const RingPtr& s);
bool isomorphic(const RingPtr& r, const RingPtr& s);

/// Idempotents that commute with every element, in index order.
std::vector<Elem> central_idempotents(const Ring& r);

}  // namespace netring
