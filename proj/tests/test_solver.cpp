#include <functional>

#include "doctest.h"
#include "netring/catalog.hpp"
#include "netring/solver.hpp"
#include "netring/transforms.hpp"

using namespace netring;

namespace {

RingPtr ring(const RingDescriptor& d) { return Ring::create(d); }
RingDescriptor gf(std::uint32_t p, std::uint32_t k = 1) {
  return k == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::galois_field(p, k);
}

// Raw brute force: every coefficient of every edge (forwarding included) and, per
// demand, every decoding row. Independent of the solver's plan and engines.
bool brute_force_solvable(const Network& net, const RingPtr& R) {
  const auto mod = Module::regular(R);
  auto code = zero_code(net, mod);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    for (std::size_t i = 0; i < code.edge_coeffs[e].size(); ++i) slots.emplace_back(e, i);
  const auto n = R->size();
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i < slots.size()) {
      for (Elem a = 0; a < n; ++a) {
        code.edge_coeffs[slots[i].first][slots[i].second] = a;
        if (rec(i + 1)) return true;
      }
      return false;
    }
    const auto rows = transfer_vectors(net, code);
    for (const auto& d : net.demands()) {
      const auto& ins = net.inputs(net.node_index(d.receiver));
      for (const auto& x : d.messages) {
        const auto t = net.message_index(x);
        bool found = false;
        Row D(ins.size(), 0);
        std::function<void(std::size_t)> dec = [&](std::size_t j) {
          if (found) return;
          if (j == ins.size()) {
            Row acc(net.messages().size(), 0);
            for (std::size_t q = 0; q < ins.size(); ++q) {
              const auto row = input_row(net, *R, rows, ins[q]);
              for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = R->add(acc[c], R->mul(D[q], row[c]));
            }
            Row unit(acc.size(), 0);
            unit[t] = R->one();
            found = acc == unit;
            return;
          }
          for (Elem a = 0; a < n && !found; ++a) {
            D[j] = a;
            dec(j + 1);
          }
        };
        dec(0);
        if (!found) return false;
      }
    }
    return true;
  };
  return rec(0);
}

std::vector<Network> small_networks() {
  std::vector<Network> v;
  v.push_back(trivial_network());
  // Two messages through a single edge.
  v.push_back(Network({"s", "t"}, {{"s", "t", 1}}, {{"a", "s"}, {"b", "s"}}, {{"t", {"a", "b"}}}));
  // Two parallel edges.
  v.push_back(Network({"s", "t"}, {{"s", "t", 1}, {"s", "t", 2}}, {{"a", "s"}, {"b", "s"}}, {{"t", {"a", "b"}}}));
  // Relay joining a second source over two parallel edges.
  v.push_back(Network({"s", "u", "v", "t"}, {{"s", "v", 1}, {"u", "v", 1}, {"v", "t", 1}, {"v", "t", 2}},
                      {{"a", "s"}, {"b", "u"}}, {{"t", {"a", "b"}}}));
  // Two sources meeting at one edge.
  v.push_back(Network({"s", "u", "v", "t"}, {{"s", "v", 1}, {"u", "v", 1}, {"v", "t", 1}}, {{"a", "s"}, {"b", "u"}},
                      {{"t", {"a"}}}));
  // Fork: one receiver gets a, the other b, from a shared edge.
  v.push_back(Network({"s", "v", "t1", "t2"}, {{"s", "v", 1}, {"v", "t1", 1}, {"v", "t2", 1}}, {{"a", "s"}, {"b", "s"}},
                      {{"t1", {"a"}}, {"t2", {"b"}}}));
  return v;
}

std::vector<RingDescriptor> small_rings() {
  return {gf(2),
          gf(3),
          RingDescriptor::integers_mod(4),
          gf(2, 2),
          RingDescriptor::product({gf(2), gf(2)}),
          truncated_polynomial_ring(gf(2), 2)};
}

}  // namespace

TEST_CASE("m network over small fields is unsolvable") {
  const auto m = m_network();
  for (auto d : {gf(2), gf(3), gf(2, 2)}) {
    const auto r = solve_scalar(m, ring(d));
    CHECK(r.status == SolveStatus::Unsolvable);
    CHECK_FALSE(r.code);
  }
}

TEST_CASE("m network over M_2(GF(2)) is solved and the code verifies") {
  const auto m = m_network();
  const auto r = solve_scalar(m, ring(RingDescriptor::matrix(gf(2), 2)));
  REQUIRE(r.status == SolveStatus::Solved);
  REQUIRE(r.code);
  CHECK(verify_solution(m, *r.code).solved);
  CHECK(semantic_verify(m, *r.code).solved);
}

TEST_CASE("vector solutions of the m network") {
  const auto m = m_network();
  CHECK(solve_vector(m, gf(2), 1).status == SolveStatus::Unsolvable);
  const auto v2 = solve_vector(m, gf(2), 2);
  REQUIRE(v2.status == SolveStatus::Solved);
  CHECK(vector_dimension(*v2.code) == 2);
  CHECK(semantic_verify(m, *v2.code).solved);
  const auto v4 = solve_vector(m, gf(2), 4);
  REQUIRE(v4.status == SolveStatus::Solved);
  CHECK(vector_dimension(*v4.code) == 4);
  CHECK(verify_solution(m, *v4.code).solved);
}

TEST_CASE("m network over the commutative rings of order 4") {
  const auto m = m_network();
  for (auto d : {RingDescriptor::integers_mod(4), gf(2, 2), truncated_polynomial_ring(gf(2), 2),
                 RingDescriptor::product({gf(2), gf(2)})}) {
    CAPTURE(d.name());
    CHECK(solve_scalar(m, ring(d)).status == SolveStatus::Unsolvable);
  }
}

TEST_CASE("choose-two boundary") {
  for (std::uint32_t n : {3u, 4u}) {
    const auto net = choose_two_network(n);
    for (auto d : {gf(2), gf(3), gf(2, 2)}) {
      const auto r = solve_scalar(net, ring(d));
      const bool expect = ring(d)->size() >= n - 1;
      CAPTURE(n);
      CAPTURE(d.name());
      CHECK((r.status == SolveStatus::Solved) == expect);
      CHECK(r.status != SolveStatus::BudgetExceeded);
    }
  }
  const auto v = solve_vector(choose_two_network(5), gf(2), 2);
  REQUIRE(v.status == SolveStatus::Solved);
  CHECK(verify_solution(choose_two_network(5), *v.code).solved);
}

TEST_CASE("solver agrees with raw brute force on small instances") {
  for (const auto& net : small_networks())
    for (const auto& d : small_rings()) {
      const auto R = ring(d);
      const bool expect = brute_force_solvable(net, R);
      SearchOptions on, off;
      off.normalize_degree_one_forwarding = false;
      const auto a = solve_scalar(net, R, on);
      const auto b = solve_scalar(net, R, off);
      CAPTURE(d.name());
      CAPTURE(net.edges().size());
      CHECK((a.status == SolveStatus::Solved) == expect);
      CHECK((b.status == SolveStatus::Solved) == expect);
      CHECK(a.status != SolveStatus::BudgetExceeded);
      SearchOptions ex = on;
      ex.strategy = DecodeStrategy::Exhaustive;
      ex.canonicalize_units = false;
      CHECK((solve_scalar(net, R, ex).status == SolveStatus::Solved) == expect);
    }
}

TEST_CASE("budget exhaustion is not an unsolvability verdict") {
  SearchOptions tiny;
  tiny.node_budget = 1;
  tiny.shards = 1;
  const auto r = solve_scalar(m_network(), ring(gf(2, 2)), tiny);
  CHECK(r.status == SolveStatus::BudgetExceeded);
  SearchOptions rank_on_ring;
  rank_on_ring.strategy = DecodeStrategy::Rank;
  CHECK_THROWS_AS(solve_scalar(m_network(), ring(RingDescriptor::integers_mod(4)), rank_on_ring), AlgebraError);
}

TEST_CASE("sharding gives the same code as a single thread") {
  SearchOptions one, many;
  one.shards = 1;
  many.shards = 4;
  const auto net = choose_two_network(4);
  const auto a = solve_scalar(net, ring(gf(3)), one);
  const auto b = solve_scalar(net, ring(gf(3)), many);
  REQUIRE(a.code);
  REQUIRE(b.code);
  CHECK(a.code->edge_coeffs == b.code->edge_coeffs);
  CHECK(a.code->decodings == b.code->decodings);
}

TEST_CASE("quotient reduction") {
  SearchOptions q;
  q.reduce_via_quotients = true;
  const auto m = m_network();
  const auto z4 = solve_scalar(m, ring(RingDescriptor::integers_mod(4)), q);
  CHECK(z4.status == SolveStatus::Unsolvable);
  CHECK(z4.method.find("quotient") != std::string::npos);
  const auto prod = solve_scalar(choose_two_network(4), ring(RingDescriptor::product({gf(3), gf(2, 2)})), q);
  REQUIRE(prod.status == SolveStatus::Solved);
  CHECK(prod.method == "factors");
  CHECK(verify_solution(choose_two_network(4), *prod.code).solved);
}

TEST_CASE("smallest ring for small networks") {
  const auto cat = structured_catalog(16);
  std::vector<RingDescriptor> ds;
  for (const auto& e : cat.entries) ds.push_back(e.descriptor);
  const auto t = smallest_ring_search(trivial_network(), ds);
  REQUIRE(t.minimal_size);
  CHECK(*t.minimal_size == 2);
  REQUIRE(t.minimal_rings.size() == 1);
  CHECK(t.minimal_rings[0] == gf(2));

  const auto c5 = smallest_ring_search(choose_two_network(5), ds);
  REQUIRE(c5.minimal_size);
  CHECK(*c5.minimal_size == 4);
  REQUIRE(c5.minimal_rings.size() == 1);
  CHECK(c5.minimal_rings[0] == gf(2, 2));
  CHECK(c5.undetermined.empty());
}

TEST_CASE("non-unital demo") {
  const auto rep = nonunital_demo();
  REQUIRE(rep.cases.size() == 4);
  CHECK_FALSE(rep.any_solution);
  for (const auto& c : rep.cases) CHECK_FALSE(c.injective);
  REQUIRE(rep.cases[1].collision);
  CHECK(rep.cases[1].coefficient == 2);
  CHECK(*rep.cases[1].collision == std::make_pair(Elem{0}, Elem{4}));
  CHECK(*rep.cases[3].collision == std::make_pair(Elem{0}, Elem{4}));
}

TEST_CASE("solutions lift along surjections") {
  // Z_6 -> Z_3: a choose-two(3) solution over Z_6 stays a solution over Z_3.
  SearchOptions q;
  const auto net = choose_two_network(3);
  const auto z6 = ring(RingDescriptor::integers_mod(6));
  const auto r = solve_scalar(net, z6, q);
  REQUIRE(r.status == SolveStatus::Solved);
  for (const auto& h : find_homomorphisms(z6, ring(gf(3)), true)) {
    const auto lifted = hom_lift(net, *r.code, h);
    CHECK(verify_solution(net, lifted).solved);
  }
}
