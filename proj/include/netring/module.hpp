#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netring/ideal.hpp"
#include "netring/ring.hpp"

namespace netring {

/// A finite Abelian group with elements 0..size()-1 and 0 the identity.
class AbelianGroup {
 public:
  enum class Kind { Moduli, RingPower, Table, Product };

  /// Z_{m_1} x ... x Z_{m_t}, first coordinate most significant.
  static AbelianGroup cyclic_product(std::vector<std::uint32_t> moduli);
  /// Additive group of R^k, coordinate 0 most significant.
  static AbelianGroup ring_power(RingPtr r, std::uint32_t k);
  /// Explicit addition table (validated).
  static AbelianGroup table(std::vector<std::vector<Elem>> add);
  /// Direct product, first factor most significant.
  static AbelianGroup product(std::vector<AbelianGroup> factors);

  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  const std::vector<Elem>& generators() const { return generators_; }

  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  const RingPtr& base_ring() const { return ring_; }
  std::uint32_t power() const { return k_; }
  const std::vector<AbelianGroup>& factors() const { return factors_; }
  const std::vector<std::vector<Elem>>& add_table() const { return table_; }

  /// Coordinates of a RingPower element.
  std::vector<Elem> coords(Elem a) const;
  Elem from_coords(const std::vector<Elem>& c) const;
  std::vector<Elem> components(Elem a) const;
  Elem from_components(const std::vector<Elem>& c) const;

  std::string describe() const;

 private:
  void finish();

  Kind kind_ = Kind::Moduli;
  std::size_t size_ = 1;
  std::vector<std::uint32_t> moduli_;
  RingPtr ring_;
  std::uint32_t k_ = 0;
  std::vector<std::vector<Elem>> table_;
  std::vector<AbelianGroup> factors_;
  std::vector<std::size_t> radix_;
  std::vector<Elem> cache_add_, cache_neg_;
  std::vector<Elem> generators_;
};

/// The pair (G, R) with a left action R x G -> G.
class Module;
using ModulePtr = std::shared_ptr<const Module>;

struct ModuleAxiomReport {
  struct Check {
    std::string axiom;
    bool passed = true;
    std::vector<Elem> witness;  // ring elements first, then group elements
  };
  std::vector<Check> checks;
  std::string method;
  bool all_passed() const;
  /// First failing axiom with witness, or empty.
  std::string first_failure() const;
};

class Module {
 public:
  enum class Action { Regular, MatrixVector, Product, Table };

  /// R acting on its own additive group by left multiplication.
  static ModulePtr regular(RingPtr r);
  /// M_k(R) acting on R^k by matrix-vector product. k = 1 gives the regular module over R.
  static ModulePtr vector_module(const RingDescriptor& r, std::uint32_t k);
  /// Componentwise module over the product ring.
  static ModulePtr product(std::vector<ModulePtr> parts);
  /// Explicit action table action[r][g]; validated with the axiom checker.
  static ModulePtr from_table(RingPtr r, AbelianGroup g, std::vector<std::vector<Elem>> action);

  const RingPtr& ring() const { return ring_; }
  const AbelianGroup& group() const { return group_; }
  Action action_kind() const { return action_; }
  const std::vector<ModulePtr>& parts() const { return parts_; }
  std::size_t size() const { return group_.size(); }

  Elem act(Elem r, Elem g) const {
    return table_.empty() ? act_slow(r, g) : table_[static_cast<std::size_t>(r) * group_.size() + g];
  }
  Elem add(Elem a, Elem b) const { return group_.add(a, b); }

  std::string describe() const;

  /// Dense action tables are kept when |R|*|G| is at most this.
  static constexpr std::size_t kActionTableLimit = std::size_t{1} << 20;

 private:
  Module() = default;
  Elem act_slow(Elem r, Elem g) const;
  void build_table();

  RingPtr ring_;
  AbelianGroup group_;
  Action action_ = Action::Regular;
  std::vector<ModulePtr> parts_;
  std::vector<Elem> table_;
};

ModulePtr vector_module(const RingDescriptor& r, std::uint32_t k);

/// Checks the four module axioms. Exhaustive when |R|^2 |G| <= 2^24, otherwise
/// reduced to additive generators of R and G (equivalent given bi-additivity,
/// which is itself checked on generators).
ModuleAxiomReport check_module_axioms(const Ring& r, const AbelianGroup& g,
                                      const std::function<Elem(Elem, Elem)>& act);
ModuleAxiomReport check_module_axioms(const Module& m);

/// Validated construction from an arbitrary action; throws AlgebraError naming the failing axiom.
ModulePtr construct_module(RingPtr r, AbelianGroup g, const std::function<Elem(Elem, Elem)>& act);

/// {r : r.g = 0 for all g}, a two-sided ideal.
Ideal annihilator(const Module& m);
bool is_faithful(const Module& m);

struct AnnihilatorQuotient {
  RingPtr ring;        // S = R / Ann(G)
  RingHom projection;  // R -> S
  ModulePtr module;    // G as a faithful S-module
};
AnnihilatorQuotient annihilator_quotient(const ModulePtr& m);

/// Submodule generated by `gens`, sorted.
std::vector<Elem> generate_submodule(const Module& m, const std::vector<Elem>& gens);

/// All submodules as sorted element lists, ordered by size then elements.
std::vector<std::vector<Elem>> submodules(const Module& m, std::size_t bound = 4096);

/// A submodule as a module in its own right (table group and action).
ModulePtr submodule_as_module(const Module& m, const std::vector<Elem>& elements);

}  // namespace netring
