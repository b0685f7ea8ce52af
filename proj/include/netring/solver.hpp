#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netring/code.hpp"
#include "netring/network.hpp"
#include "netring/ring.hpp"

namespace netring {

enum class DecodeStrategy { Auto, Rank, Exhaustive };

struct SearchOptions {
  /// Fix the coefficient of every edge leaving a single-input node to 1 (rank
  /// engine: to the whole input space).
  bool normalize_degree_one_forwarding = true;
  /// Enumerate edge coefficient vectors only up to left multiplication by units.
  bool canonicalize_units = true;
  DecodeStrategy strategy = DecodeStrategy::Auto;
  /// Maximum number of search nodes (edge assignments plus local candidates).
  std::uint64_t node_budget = 2'000'000'000;
  /// Wall-clock limit in seconds; 0 means none.
  double time_budget = 0;
  /// Worker threads; 0 means hardware concurrency.
  unsigned shards = 0;
  /// Settle products factor by factor and non-simple rings through a simple
  /// quotient first (an unsolvable quotient proves the ring unsolvable).
  bool reduce_via_quotients = false;
};

enum class SolveStatus { Solved, Unsolvable, BudgetExceeded };
const char* status_name(SolveStatus s);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t prunes = 0;
  std::uint64_t receiver_checks = 0;
  double seconds = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::BudgetExceeded;
  std::optional<LinearCode> code;
  SearchStats stats;
  /// "rank search", "exhaustive search", "quotient ...", "factors", "dim_sum 2+2", ...
  std::string method;
  std::vector<std::string> notes;
};

/// Scalar linear solvability of `net` over the regular module of `ring`.
SolveResult solve_scalar(const Network& net, const RingPtr& ring, const SearchOptions& opts = {});

/// k-dimensional vector linear solvability over `field`: a scalar search over
/// M_k(field), returned as a code over field^k. When the direct space exceeds the
/// node budget, solutions are composed from smaller dimensions with dim_sum.
SolveResult solve_vector(const Network& net, const RingDescriptor& field, std::uint32_t k,
                         const SearchOptions& opts = {});

struct RingVerdict {
  RingDescriptor descriptor;
  std::string name;
  std::size_t size = 0;
  SolveStatus status = SolveStatus::BudgetExceeded;
  std::string method;
};

struct SmallestRingReport {
  std::optional<std::size_t> minimal_size;
  /// Every catalog ring of the minimal size that admits a solution.
  std::vector<RingDescriptor> minimal_rings;
  std::vector<LinearCode> codes;
  /// Verdict for every ring examined, in scan order.
  std::vector<RingVerdict> verdicts;
  /// Rings below the reported size whose search hit the budget.
  std::vector<std::string> undetermined;
};

/// Scans the catalog by ascending size and reports all solvable rings of the
/// smallest solvable size. Quotient reduction is switched on.
SmallestRingReport smallest_ring_search(const Network& net, const std::vector<RingDescriptor>& catalog,
                                        SearchOptions opts = {});

struct NonunitalCase {
  Elem coefficient = 0;          // c as an integer mod 8
  std::vector<Elem> images;      // c * x for x = 0, 2, 4, 6
  std::optional<std::pair<Elem, Elem>> collision;
  bool injective = false;
};

struct NonunitalReport {
  std::string ring;
  std::vector<NonunitalCase> cases;
  bool any_solution = false;
};

/// The ring 2Z/8Z without identity on the trivial network: every edge map x -> c x
/// collapses two messages, so no decoder exists.
NonunitalReport nonunital_demo();

}  // namespace netring
