#include "doctest.h"
#include "netring/catalog.hpp"
#include "netring/solver.hpp"
#include "netring/transforms.hpp"

using namespace netring;

namespace {

RingHom reduction_hom(const RingPtr& from, const RingPtr& to, std::uint32_t mod) {
  RingHom h{from, to, {}, true};
  for (Elem a = 0; a < from->size(); ++a) h.map.push_back(a % mod);
  return h;
}

}  // namespace

TEST_CASE("hom lift Z_6 -> Z_2 on the trivial network") {
  const auto t = trivial_network();
  const auto z6 = Ring::create(RingDescriptor::integers_mod(6));
  const auto z2 = Ring::create(RingDescriptor::integers_mod(2));
  auto code = zero_code(t, Module::regular(z6));
  code.edge_coeffs[0] = {5};
  code.decodings[0][0] = {5};
  CHECK(verify_solution(t, code).solved);
  const auto lifted = hom_lift(t, code, reduction_hom(z6, z2, 2));
  CHECK(lifted.edge_coeffs[0] == Row{1});
  CHECK(verify_solution(t, lifted).solved);

  RingHom bad{z6, z2, {0, 1, 0, 1, 0, 0}, true};
  CHECK_THROWS_AS(hom_lift(t, code, bad), AlgebraError);
  CHECK_THROWS_AS(hom_lift(t, code, reduction_hom(z2, z2, 2)), AlgebraError);
}

TEST_CASE("entrywise reduction M_2(Z_4) -> M_2(Z_2)") {
  const auto big = Ring::create(RingDescriptor::matrix(RingDescriptor::integers_mod(4), 2));
  const auto small = Ring::create(RingDescriptor::matrix(RingDescriptor::integers_mod(2), 2));
  RingHom h{big, small, {}, true};
  for (Elem a = 0; a < big->size(); ++a) {
    auto e = big->entries(a);
    for (auto& x : e) x %= 2;
    h.map.push_back(small->from_entries(e));
  }
  CHECK(check_homomorphism(h));
  const auto m = m_network();
  auto code = zero_code(m, Module::regular(big));
  const auto lifted = hom_lift(m, code, h);
  CHECK(lifted.module->ring()->size() == 16);
}

TEST_CASE("UT_2(GF(2)) projects onto a diagonal entry") {
  const auto ut = Ring::create(RingDescriptor::upper_triangular(RingDescriptor::prime_field(2), 2));
  const auto f = Ring::create(RingDescriptor::prime_field(2));
  // Entries (a, b, c) of [[a, b], [0, c]] with a most significant; keep a.
  RingHom h{ut, f, {}, true};
  for (Elem x = 0; x < ut->size(); ++x) h.map.push_back(x >> 2);
  CHECK(check_homomorphism(h));
  const auto t = trivial_network();
  auto code = zero_code(t, Module::regular(ut));
  code.edge_coeffs[0] = {ut->one()};
  code.decodings[0][0] = {ut->one()};
  CHECK(verify_solution(t, hom_lift(t, code, h)).solved);
}

TEST_CASE("matrix scalar code to vector code and back") {
  const auto m = m_network();
  const auto code = explicit_m_network_code(m);
  const auto vec = matrix_scalar_to_vector(m, code);
  CHECK(vec.module->action_kind() == Module::Action::MatrixVector);
  CHECK(vec.module->group().size() == 4);
  CHECK(vector_dimension(vec) == 2);
  CHECK(vector_base_ring(vec) == RingDescriptor::prime_field(2));
  CHECK(verify_solution(m, vec).solved);
  CHECK(semantic_verify(m, vec).solved);
  const auto back = vector_to_matrix_scalar(m, vec);
  CHECK(back.edge_coeffs == code.edge_coeffs);
  CHECK(back.decodings == code.decodings);
  CHECK(back.module->ring()->descriptor() == code.module->ring()->descriptor());
  CHECK_THROWS_AS(vector_to_matrix_scalar(m, code), AlgebraError);
}

TEST_CASE("dimension sums stay solutions") {
  const auto m = m_network();
  const auto vec = matrix_scalar_to_vector(m, explicit_m_network_code(m));
  const auto s4 = dim_sum(m, {vec, vec});
  CHECK(vector_dimension(s4) == 4);
  CHECK(verify_solution(m, s4).solved);
  const auto s6 = dim_sum(m, {vec, vec, vec});
  CHECK(vector_dimension(s6) == 6);
  CHECK(verify_solution(m, s6).solved);

  const auto net = dim_n_network(2);
  const auto r = routing_code_dim_n(2, RingDescriptor::prime_field(2), net);
  const auto r2 = dim_sum(net, {r, r});
  CHECK(vector_dimension(r2) == 2 * vector_dimension(r));
  CHECK(verify_solution(net, r2).solved);
  CHECK_THROWS_AS(dim_sum(net, {r, routing_code_dim_n(2, RingDescriptor::prime_field(3), net)}), AlgebraError);
}

TEST_CASE("product of codes over GF(2) and GF(3)") {
  const auto t = trivial_network();
  auto a = zero_code(t, Module::regular(Ring::create(RingDescriptor::prime_field(2))));
  a.edge_coeffs[0] = {1};
  a.decodings[0][0] = {1};
  auto b = zero_code(t, Module::regular(Ring::create(RingDescriptor::prime_field(3))));
  b.edge_coeffs[0] = {2};
  b.decodings[0][0] = {2};
  const auto p = product_code(t, {a, b});
  CHECK(p.module->ring()->size() == 6);
  CHECK(p.module->group().size() == 6);
  CHECK(verify_solution(t, p).solved);
  CHECK(semantic_verify(t, p).solved);
  b.decodings[0][0] = {1};
  CHECK_FALSE(verify_solution(t, product_code(t, {a, b})).solved);
}

TEST_CASE("simple reductions") {
  const auto z4 = Ring::create(RingDescriptor::integers_mod(4));
  auto s = simple_reduction(z4);
  CHECK(s.ring->size() == 2);
  CHECK(s.ideal.elements == std::vector<Elem>{0, 2});
  CHECK(check_homomorphism(s.projection));

  const auto ut = Ring::create(RingDescriptor::upper_triangular(RingDescriptor::prime_field(2), 2));
  s = simple_reduction(ut);
  CHECK(s.ring->size() == 2);
  CHECK(s.ideal.size() == 4);

  const auto m2 = Ring::create(RingDescriptor::matrix(RingDescriptor::prime_field(2), 2));
  s = simple_reduction(m2);
  CHECK(s.ring == m2);
  CHECK(s.ideal.is_zero());

  const auto prod = Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(3)}));
  s = simple_reduction(prod);
  CHECK(s.ring->size() == 3);
}

TEST_CASE("reduction to a field vector code") {
  const auto t = trivial_network();
  const auto z4 = Ring::create(RingDescriptor::integers_mod(4));
  auto code = zero_code(t, Module::regular(z4));
  code.edge_coeffs[0] = {3};
  code.decodings[0][0] = {3};
  std::vector<TransformTrace> trace;
  const auto red = reduce_to_field_vector_code(t, code, &trace);
  CHECK(red.module->ring()->descriptor() == RingDescriptor::prime_field(2));
  CHECK(verify_solution(t, red).solved);
  CHECK(trace.size() == 2);

  const auto m = m_network();
  trace.clear();
  const auto vec = reduce_to_field_vector_code(m, explicit_m_network_code(m), &trace);
  CHECK(vector_dimension(vec) == 2);
  CHECK(verify_solution(m, vec).solved);
  REQUIRE(trace.size() == 3);
  CHECK(trace.back().name == "mat2vec");
}

TEST_CASE("faithful reduction") {
  auto mod = construct_module(Ring::create(RingDescriptor::integers_mod(4)), AbelianGroup::cyclic_product({2}),
                              [](Elem r, Elem g) { return (r % 2) * g % 2; });
  const auto t = trivial_network();
  auto code = zero_code(t, mod);
  code.edge_coeffs[0] = {3};
  code.decodings[0][0] = {1};
  const auto f = faithful_reduction(t, code);
  CHECK(f.module->ring()->size() == 2);
  CHECK(is_faithful(*f.module));
  CHECK(verify_solution(t, f).solved);
}

TEST_CASE("product of choose-two(4) codes over GF(3) and GF(4)") {
  const auto net = choose_two_network(4);
  const auto a = solve_scalar(net, Ring::create(RingDescriptor::prime_field(3)));
  const auto b = solve_scalar(net, Ring::create(RingDescriptor::galois_field(2, 2)));
  REQUIRE(a.code);
  REQUIRE(b.code);
  const auto p = product_code(net, {*a.code, *b.code});
  CHECK(p.module->ring()->size() == 12);
  CHECK(verify_solution(net, p).solved);
  CHECK(semantic_verify(net, p).solved);
}
