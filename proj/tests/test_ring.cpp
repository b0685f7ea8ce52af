#include <algorithm>
#include <set>

#include "doctest.h"
#include "netring/catalog.hpp"
#include "netring/ideal.hpp"
#include "netring/ring.hpp"

using namespace netring;

namespace {

RingPtr gf(std::uint32_t p, std::uint32_t k = 1) {
  return Ring::create(k == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::galois_field(p, k));
}
RingPtr zn(std::uint32_t n) { return Ring::create(RingDescriptor::integers_mod(n)); }
RingPtr mat(std::uint32_t p, std::uint32_t k) { return Ring::create(RingDescriptor::matrix(RingDescriptor::prime_field(p), k)); }
RingPtr ut(std::uint32_t p, std::uint32_t k) {
  return Ring::create(RingDescriptor::upper_triangular(RingDescriptor::prime_field(p), k));
}

// Subgroup-closure oracle: every subset closed under + and the side multiplications,
// enumerated as closures of single elements joined pairwise until stable.
std::set<std::vector<Elem>> ideal_oracle(const Ring& r) {
  const auto n = r.size();
  auto close = [&](std::vector<char> in) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Elem a = 0; a < n; ++a) {
        if (!in[a]) continue;
        for (Elem b = 0; b < n; ++b) {
          std::vector<Elem> news{r.mul(a, b), r.mul(b, a)};
          if (in[b]) news.push_back(r.add(a, b));
          for (auto x : news)
            if (!in[x]) in[x] = 1, changed = true;
        }
      }
    }
    std::vector<Elem> out;
    for (Elem a = 0; a < n; ++a)
      if (in[a]) out.push_back(a);
    return out;
  };
  std::set<std::vector<Elem>> found{{0}};
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = found;
    for (const auto& I : snapshot)
      for (Elem a = 0; a < n; ++a) {
        std::vector<char> in(n, 0);
        for (auto e : I) in[e] = 1;
        in[a] = 1;
        if (found.insert(close(in)).second) grew = true;
      }
  }
  return found;
}

// Quasi-regularity characterisation of the radical: a in J iff 1 - r a is a unit for all r.
std::vector<Elem> radical_oracle(const Ring& r) {
  std::vector<Elem> out;
  for (Elem a = 0; a < r.size(); ++a) {
    bool ok = true;
    for (Elem x = 0; x < r.size() && ok; ++x) ok = r.try_inverse(r.sub(r.one(), r.mul(x, a))).has_value();
    if (ok) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("integers mod n arithmetic") {
  auto r = zn(4);
  CHECK(r->size() == 4);
  CHECK(r->add(2, 2) == 0);
  CHECK(r->mul(2, 2) == 0);
  CHECK(r->one() == 1);
  CHECK(r->characteristic() == 4);
  CHECK(verify_ring_axioms(*zn(8)).all_passed());
}

TEST_CASE("GF(4) with x^2+x+1 is a field and x*x = x+1") {
  auto f = Ring::create(RingDescriptor::galois_field(2, 2, {1, 1, 1}));
  const Elem x = 2, x_plus_1 = 3;
  CHECK(f->mul(x, x) == x_plus_1);
  const auto rep = verify_ring_axioms(*f);
  CHECK(rep.all_passed());
  // Field oracle: every nonzero element has an inverse found by scanning.
  for (Elem a = 1; a < 4; ++a) {
    int inverses = 0;
    for (Elem b = 0; b < 4; ++b) inverses += f->mul(a, b) == 1;
    CHECK(inverses == 1);
  }
  CHECK(f->is_field());
}

TEST_CASE("reducible or malformed descriptors are rejected") {
  CHECK_THROWS_AS(Ring::create(RingDescriptor::galois_field(2, 2, {1, 0, 1})), AlgebraError);
  CHECK_THROWS_AS(Ring::create(RingDescriptor::prime_field(4)), AlgebraError);
  CHECK_THROWS_AS(Ring::create(RingDescriptor::integers_mod(1)), AlgebraError);
  // {0,2,4,6} under mod-8 arithmetic has no identity.
  std::vector<std::vector<Elem>> add(4, std::vector<Elem>(4)), mul(4, std::vector<Elem>(4));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      add[a][b] = ((2 * a + 2 * b) % 8) / 2;
      mul[a][b] = ((2 * a * 2 * b) % 8) / 2;
    }
  CHECK_THROWS_AS(Ring::create(RingDescriptor::table(add, mul)), AlgebraError);
  auto rng = Ring::create(RingDescriptor::table(add, mul, std::nullopt, true));
  CHECK_FALSE(rng->has_identity());
  CHECK_FALSE(verify_table_axioms(add, mul).identity.has_value());
}

TEST_CASE("default irreducibles are irreducible and lexicographically first") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t k = 1; k <= 4; ++k) {
      const auto f = default_irreducible(p, k);
      CHECK(is_irreducible(p, f));
      CHECK(f.size() == k + 1);
    }
  CHECK(default_irreducible(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(default_irreducible(2, 3) == std::vector<std::uint32_t>{1, 1, 0, 1});
}

TEST_CASE("matrix, triangular and product constructors") {
  auto m = mat(2, 2);
  CHECK(m->size() == 16);
  CHECK_FALSE(m->is_commutative());
  CHECK(verify_ring_axioms(*m).all_passed());
  // R_qrst = 8q + 4r + 2s + t with rows (q r) / (s t).
  CHECK(m->one() == 9);
  CHECK(m->entry(8, 0, 0) == 1);
  CHECK(m->entry(2, 1, 0) == 1);
  const std::vector<Elem> e12{0, 1, 0, 0}, e21{0, 0, 1, 0};
  const auto a = m->from_entries(e12), b = m->from_entries(e21);
  CHECK(m->mul(a, b) != m->mul(b, a));

  auto u = ut(2, 2);
  CHECK(u->size() == 8);
  CHECK_FALSE(u->is_commutative());
  CHECK(verify_ring_axioms(*u).all_passed());

  auto p = Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::integers_mod(3)}));
  CHECK(p->size() == 6);
  CHECK(verify_ring_axioms(*p).all_passed());
  CHECK(p->characteristic() == 6);

  auto m33 = mat(3, 3);
  CHECK(m33->size() == 19683);
  const auto rep = verify_ring_axioms(*m33, 20000);
  CHECK(rep.method == "generator-reduced");
  CHECK(rep.all_passed());
  CHECK(rep.identity == m33->one());
}

TEST_CASE("ideals agree with the subgroup-closure oracle") {
  for (auto r : {zn(4), zn(12), mat(2, 2), ut(2, 2),
                 Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(2)}))}) {
    const auto got = two_sided_ideals(r);
    std::set<std::vector<Elem>> mine;
    for (const auto& i : got) {
      mine.insert(i.elements);
      CHECK(is_ideal(*r, i.elements, Side::TwoSided));
    }
    CHECK(mine == ideal_oracle(*r));
    CHECK(got.front().is_zero());
    CHECK(got.back().is_whole());
  }
  CHECK(two_sided_ideals(mat(2, 2)).size() == 2);
  CHECK(two_sided_ideals(zn(4)).size() == 3);
  CHECK(two_sided_ideals(Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(2)}))).size() == 4);
}

TEST_CASE("radical agrees with the quasi-regular oracle") {
  for (auto r : {zn(4), zn(8), zn(12), mat(2, 2), ut(2, 2), ut(3, 2), gf(2, 2), mat(3, 2),
                 Ring::create(truncated_polynomial_ring(RingDescriptor::prime_field(2), 3))}) {
    CHECK(radical(r).elements == radical_oracle(*r));
  }
  CHECK(radical(zn(4)).elements == std::vector<Elem>{0, 2});
  CHECK(radical(mat(2, 2)).elements == std::vector<Elem>{0});
  for (std::uint32_t p : {2u, 3u}) {
    auto u = ut(p, 2);
    const auto J = radical(u);
    CHECK(J.size() == p);
    for (auto a : J.elements) {
      CHECK(u->entry(a, 0, 0) == 0);
      CHECK(u->entry(a, 1, 1) == 0);
    }
    const auto q = quotient(u, J);
    CHECK(q.ring->size() == p * p);
    CHECK(verify_ring_axioms(*q.ring).all_passed());
    CHECK(isomorphic(q.ring, Ring::create(RingDescriptor::product({RingDescriptor::prime_field(p), RingDescriptor::prime_field(p)}))));
    CHECK(radical(q.ring).is_zero());
  }
}

TEST_CASE("quotients") {
  auto z4 = zn(4);
  const auto q = quotient(z4, radical(z4));
  CHECK(q.ring->size() == 2);
  CHECK(isomorphic(q.ring, gf(2)));
  CHECK(check_homomorphism(q.projection));
  const auto same = quotient(z4, Ideal{z4, {0}, Side::TwoSided});
  CHECK(same.ring->size() == 4);
  CHECK(same.projection.map == std::vector<Elem>{0, 1, 2, 3});
  CHECK_THROWS_AS(quotient(mat(2, 2), left_ideals(mat(2, 2))[1]), AlgebraError);
}

TEST_CASE("homomorphism search") {
  auto u = ut(2, 2);
  const auto homs = find_homomorphisms(u, gf(2), true);
  bool has_projection = false;
  for (const auto& h : homs) {
    CHECK(check_homomorphism(h));
    bool proj = true;
    for (Elem a = 0; a < u->size(); ++a) proj = proj && h(a) == u->entry(a, 0, 0);
    has_projection = has_projection || proj;
  }
  CHECK(has_projection);

  CHECK(find_homomorphisms(gf(2, 2), gf(2), false).empty());

  auto m4 = Ring::create(RingDescriptor::matrix(RingDescriptor::integers_mod(4), 2));
  auto m2 = mat(2, 2);
  HomSearchOptions o;
  o.surjective_only = true;
  const auto mh = find_homomorphisms(m4, m2, o);
  bool has_mod2 = false;
  for (const auto& h : mh) {
    CHECK(check_homomorphism(h));
    bool ok = true;
    for (Elem a = 0; a < m4->size() && ok; ++a) {
      const auto e = m4->entries(a);
      std::vector<Elem> red(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) red[i] = e[i] % 2;
      ok = h(a) == m2->from_entries(red);
    }
    has_mod2 = has_mod2 || ok;
  }
  CHECK(has_mod2);

  // GF(2)[x]/(x^2) and GF(2)xGF(2) and Z_4 and GF(4) are pairwise non-isomorphic.
  std::vector<RingPtr> four{zn(4), gf(2, 2), Ring::create(truncated_polynomial_ring(RingDescriptor::prime_field(2), 2)),
                            Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(2)}))};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(isomorphic(four[i], four[j]) == (i == j));
  CHECK(isomorphic(zn(6), Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), RingDescriptor::prime_field(3)}))));
}

TEST_CASE("semisimple catalog") {
  const std::vector<std::size_t> counts{1, 2, 3, 6, 8, 13};
  for (std::uint32_t k = 1; k <= 6; ++k) CHECK(semisimple_catalog(2, k).size() == counts[k - 1]);
  const auto c4 = semisimple_catalog(3, 4);
  CHECK(c4[0].name() == "M_2(GF(3))");
  CHECK(c4[1].name() == "GF(81)");
  const auto c5 = semisimple_catalog(2, 5);
  CHECK(c5[0].name() == "GF(32)");
  CHECK(c5[1].name() == "M_2(GF(2)) x GF(2)");
  const auto c6 = semisimple_catalog(2, 6);
  CHECK(c6[2].name() == "M_2(GF(2)) x GF(4)");
  CHECK(c6.back().name() == "GF(2) x GF(2) x GF(2) x GF(2) x GF(2) x GF(2)");
  CHECK_THROWS_AS(semisimple_catalog(2, 7), AlgebraError);
  for (std::uint32_t k = 1; k <= 3; ++k)
    for (const auto& d : semisimple_catalog(2, k)) CHECK(radical(Ring::create(d)).is_zero());
}

TEST_CASE("semisimple and prime-power decomposition") {
  CHECK(semisimple_decompose(ut(2, 2)) == std::vector<SimpleComponent>{{1, 2}, {1, 2}});
  CHECK(semisimple_decompose(mat(3, 2)) == std::vector<SimpleComponent>{{2, 3}});
  CHECK(semisimple_decompose(zn(4)) == std::vector<SimpleComponent>{{1, 2}});
  const auto z6 = prime_power_decompose(zn(6));
  REQUIRE(z6.size() == 2);
  CHECK(z6[0]->size() == 2);
  CHECK(z6[1]->size() == 3);
  CHECK(prime_power_decompose(zn(8)).size() == 1);
  const auto pr = prime_power_decompose(
      Ring::create(RingDescriptor::product({RingDescriptor::galois_field(2, 2), RingDescriptor::integers_mod(9)})));
  REQUIRE(pr.size() == 2);
  CHECK(pr[0]->size() == 4);
  CHECK(pr[1]->size() == 9);
}

TEST_CASE("structured catalog") {
  const auto cat = structured_catalog(16);
  std::set<std::string> names;
  for (const auto& e : cat.entries) {
    CHECK(names.insert(e.descriptor.name()).second);
    const auto r = Ring::create(e.descriptor);
    CHECK(r->size() <= 16);
    CHECK(r->name() == e.descriptor.name());
  }
  for (const char* n : {"GF(2)", "Z_4", "GF(4)", "GF(2) x GF(2)", "GF(2)[x]/(x^2)", "UT_2(GF(2))", "M_2(GF(2))", "GF(16)"})
    CHECK(names.count(n) == 1);
  CHECK_FALSE(cat.limitation.empty());
}

TEST_CASE("table rings with different tables are cached separately") {
  const auto a = Ring::create(truncated_polynomial_ring(RingDescriptor::prime_field(2), 2));
  const auto b = Ring::create(truncated_polynomial_ring(RingDescriptor::prime_field(2), 3));
  CHECK(a->size() == 4);
  CHECK(b->size() == 8);
  const auto pa = Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), a->descriptor()}));
  const auto pb = Ring::create(RingDescriptor::product({RingDescriptor::prime_field(2), b->descriptor()}));
  CHECK(pa->size() == 8);
  CHECK(pb->size() == 16);
}
