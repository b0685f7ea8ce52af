#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "netring/code.hpp"

using namespace netring;

TEST_CASE("transfer vectors") {
  const auto t = trivial_network();
  auto code = zero_code(t, Module::regular(Ring::create(RingDescriptor::prime_field(2))));
  code.edge_coeffs[0] = {1};
  CHECK(transfer_vectors(t, code)[0] == Row{1});

  const auto m = m_network();
  const auto mc = explicit_m_network_code(m);
  const auto rows = transfer_vectors(m, mc);
  CHECK(rows[*m.find_edge("1", "3", 1)] == Row{8, 2, 0, 0});
  CHECK(rows[*m.find_edge("2", "5", 1)] == Row{0, 0, 8, 2});

  auto zero = zero_code(m, mc.module);
  for (const auto& r : transfer_vectors(m, zero)) CHECK(r == Row{0, 0, 0, 0});
}

TEST_CASE("explicit code over M_2(GF(2)) solves the m network") {
  const auto m = m_network();
  const auto code = explicit_m_network_code(m);
  const auto v = verify_solution(m, code);
  CHECK(v.solved);
  CHECK(v.statuses.size() == 8);
  const auto s = semantic_verify(m, code);
  CHECK(s.solved);
  CHECK(s.assignments_checked == 65536);
  // Decoding at node 9: Z coefficient on H is R_0001.
  CHECK(code.decodings[3][1] == Row{0, 1, 4});
}

TEST_CASE("a corrupted coefficient is caught by both verifiers at receiver 6") {
  const auto m = m_network();
  auto code = explicit_m_network_code(m);
  code.edge_coeffs[*m.find_edge("4", "6", 1)] = {8, 1};
  const auto v = verify_solution(m, code);
  CHECK_FALSE(v.solved);
  REQUIRE(v.witness);
  CHECK(v.witness->receiver == "6");
  const auto s = semantic_verify(m, code);
  CHECK_FALSE(s.solved);
  REQUIRE(s.witness);
  CHECK(s.witness->receiver == "6");
}

TEST_CASE("unfaithful modules are rejected by coefficient verification") {
  auto mod = construct_module(Ring::create(RingDescriptor::integers_mod(4)), AbelianGroup::cyclic_product({2}),
                              [](Elem r, Elem g) { return (r % 2) * g % 2; });
  const auto t = trivial_network();
  auto code = zero_code(t, mod);
  code.edge_coeffs[0] = {1};
  code.decodings[0][0] = {1};
  CHECK_THROWS_AS(verify_solution(t, code), AlgebraError);
  CHECK(semantic_verify(t, code).solved);
}

TEST_CASE("routing codes for dim-n") {
  for (std::uint32_t n : {2u, 3u})
    for (std::uint32_t p : {2u, 3u}) {
      const auto net = dim_n_network(n);
      const auto code = routing_code_dim_n(n, RingDescriptor::prime_field(p), net);
      CHECK(verify_solution(net, code).solved);
    }
  const auto net = dim_n_network(2);
  const auto code = routing_code_dim_n(2, RingDescriptor::prime_field(2), net);
  CHECK(semantic_verify(net, code).solved);
}

namespace {

// Exact Shannon entropy (base |F|) of y = L x for x uniform over F^cols.
double exhaustive_entropy(const Ring& F, const Matrix& L, std::size_t cols) {
  const auto q = F.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < cols; ++i) total *= q;
  std::map<Row, std::size_t> counts;
  Row x(cols);
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto rem = idx;
    for (std::size_t i = 0; i < cols; ++i) {
      x[i] = static_cast<Elem>(rem % q);
      rem /= q;
    }
    Row y(L.size(), 0);
    for (std::size_t r = 0; r < L.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) y[r] = F.add(y[r], F.mul(L[r][c], x[c]));
    ++counts[y];
  }
  double h = 0;
  for (const auto& [y, c] : counts) {
    const double pr = static_cast<double>(c) / total;
    h -= pr * std::log(pr) / std::log(static_cast<double>(q));
  }
  return h;
}

}  // namespace

TEST_CASE("rank equals exhaustive entropy for random linear maps") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u}) {
    const auto F = Ring::create(RingDescriptor::prime_field(p));
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
      Matrix L(rows, Row(cols));
      for (auto& r : L)
        for (auto& v : r) v = rng() % p;
      const double h = exhaustive_entropy(*F, L, cols);
      CHECK(std::fabs(h - static_cast<double>(rank(*F, L))) < 1e-9);
    }
  }
}

TEST_CASE("routing code entropies") {
  for (std::uint32_t n : {2u, 3u}) {
    const auto net = dim_n_network(n);
    const auto code = routing_code_dim_n(n, RingDescriptor::prime_field(2), net);
    for (std::uint32_t i = 1; i <= n; ++i) {
      std::vector<CodeVariable> ws;
      for (std::uint32_t j = 1; j < n; ++j) {
        const auto e = *net.find_edge("a_" + std::to_string(i), "b_" + std::to_string(i), j);
        CHECK(entropy_of(net, code, {{false, e}}).rank == n);
        ws.push_back({false, e});
      }
      for (std::uint32_t j = 1; j <= n; ++j) {
        auto vars = ws;
        vars.push_back({true, net.message_index("x" + std::to_string(i) + "_" + std::to_string(j))});
        CHECK(entropy_of(net, code, vars).rank == n * n - n + 1);
      }
    }
    std::vector<CodeVariable> all;
    for (std::size_t m = 0; m < net.messages().size(); ++m) all.push_back({true, m});
    CHECK(entropy_of(net, code, all).rank == n * n * n);
    CHECK(entropy_of(net, code, {}).rank == 0);
  }
}

TEST_CASE("entropy needs a field") {
  const auto m = m_network();
  CHECK_THROWS_AS(entropy_of(m, explicit_m_network_code(m), {}), AlgebraError);
}

TEST_CASE("linear algebra helpers") {
  const auto F = Ring::create(RingDescriptor::prime_field(3));
  Matrix A{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}};
  CHECK(rank(*F, A) == 2);
  const auto x = solve_left(*F, A, {0, 0, 2});
  REQUIRE(x);
  Row back(3, 0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) back[j] = F->add(back[j], F->mul((*x)[i], A[i][j]));
  CHECK(back == Row{0, 0, 2});
  CHECK_FALSE(solve_left(*F, A, {1, 0, 0}));
}
