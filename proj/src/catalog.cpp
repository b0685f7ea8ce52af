#include "netring/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace netring {

namespace {

bool type_before(const std::vector<SimpleFactorType>& a, const std::vector<SimpleFactorType>& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].weight() != b[i].weight()) return a[i].weight() > b[i].weight();
  }
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a[i].matrix_dim != b[i].matrix_dim) return a[i].matrix_dim > b[i].matrix_dim;
  return false;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::vector<std::vector<SimpleFactorType>> semisimple_types(std::uint32_t k) {
  if (k < 1 || k > 6) throw AlgebraError("semisimple catalog supports 1 <= k <= 6");
  // All simple factor types of weight <= k, sorted by decreasing (weight, matrix_dim).
  std::vector<SimpleFactorType> simple;
  for (std::uint32_t d = 1; d * d <= k; ++d)
    for (std::uint32_t r = 1; r * d * d <= k; ++r) simple.push_back({r, d});
  std::sort(simple.begin(), simple.end(), [](const auto& a, const auto& b) {
    return a.weight() != b.weight() ? a.weight() > b.weight() : a.matrix_dim > b.matrix_dim;
  });
  std::vector<std::vector<SimpleFactorType>> out;
  std::vector<SimpleFactorType> cur;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t from, std::uint32_t left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < simple.size(); ++i) {
      if (simple[i].weight() > left) continue;
      cur.push_back(simple[i]);
      rec(i, left - simple[i].weight());
      cur.pop_back();
    }
  };
  rec(0, k);
  std::stable_sort(out.begin(), out.end(), type_before);
  return out;
}

RingDescriptor simple_factor_descriptor(std::uint32_t p, const SimpleFactorType& t) {
  auto field = t.field_degree == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::galois_field(p, t.field_degree);
  return t.matrix_dim == 1 ? field : RingDescriptor::matrix(field, t.matrix_dim);
}

std::vector<RingDescriptor> semisimple_catalog(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw AlgebraError("semisimple catalog needs a prime p");
  std::vector<RingDescriptor> out;
  for (const auto& type : semisimple_types(k)) {
    if (type.size() == 1) {
      out.push_back(simple_factor_descriptor(p, type[0]));
      continue;
    }
    std::vector<RingDescriptor> fs;
    for (const auto& t : type) fs.push_back(simple_factor_descriptor(p, t));
    out.push_back(RingDescriptor::product(std::move(fs)));
  }
  return out;
}

std::vector<Elem> primitive_central_idempotents(const Ring& r) {
  const auto all = central_idempotents(r);
  std::vector<Elem> out;
  for (auto e : all) {
    if (e == 0) continue;
    bool primitive = true;
    for (auto f : all)
      if (f != 0 && f != e && r.mul(e, f) == f) {
        primitive = false;
        break;
      }
    if (primitive) out.push_back(e);
  }
  return out;
}

RingPtr corner_ring(const RingPtr& r, Elem e) {
  std::set<Elem> s;
  for (Elem x = 0; x < r->size(); ++x) s.insert(r->mul(x, e));
  std::vector<Elem> elems(s.begin(), s.end());
  std::map<Elem, Elem> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Elem>(i);
  const auto m = elems.size();
  std::vector<std::vector<Elem>> add(m, std::vector<Elem>(m)), mul(m, std::vector<Elem>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      add[i][j] = index.at(r->add(elems[i], elems[j]));
      mul[i][j] = index.at(r->mul(elems[i], elems[j]));
    }
  return Ring::create(RingDescriptor::table(std::move(add), std::move(mul), index.at(e), false,
                                            r->name() + "*e" + std::to_string(e)));
}

RingDescriptor simple_model(const RingPtr& block) {
  const auto s = block->size();
  // The centre of a simple ring is its field of scalars.
  std::size_t centre = 0;
  for (Elem a = 0; a < s; ++a) {
    bool c = true;
    for (auto g : block->additive_generators())
      if (block->mul(a, g) != block->mul(g, a)) {
        c = false;
        break;
      }
    if (c) ++centre;
  }
  if (centre < 2) throw AlgebraError(block->name() + " is not simple");
  std::uint32_t d = 1;
  while (ipow(centre, d * d) < s) ++d;
  if (ipow(centre, d * d) != s) throw AlgebraError(block->name() + " matches no M_d(GF(q))");
  const auto p = static_cast<std::uint32_t>(block->characteristic());
  if (!is_prime(p)) throw AlgebraError(block->name() + " has non-prime characteristic, so it is not simple");
  std::uint32_t deg = 0;
  for (std::uint64_t q = 1; q < centre; q *= p) ++deg;
  return simple_factor_descriptor(p, {deg, d});
}

std::vector<SimpleComponent> semisimple_decompose(const RingPtr& r, std::size_t bound) {
  const auto J = radical(r, bound);
  const auto Q = quotient(r, J).ring;
  std::vector<SimpleComponent> out;
  for (auto e : primitive_central_idempotents(*Q)) {
    const auto block = corner_ring(Q, e);
    const auto model_desc = simple_model(block);
    const auto model = Ring::create(model_desc);
    if (block->size() <= 256 && !isomorphic(block, model))
      throw AlgebraError("quotient block of " + r->name() + " is not isomorphic to " + model->name());
    const auto d = model_desc.kind == RingDescriptor::Kind::MatrixRing ? model_desc.k : 1u;
    const auto centre = d == 1 ? model->size() : model->inner()->size();
    out.push_back({d, centre});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const auto wa = ipow(a.field_size, a.matrix_dim * a.matrix_dim), wb = ipow(b.field_size, b.matrix_dim * b.matrix_dim);
    if (wa != wb) return wa > wb;
    return a.matrix_dim > b.matrix_dim;
  });
  return out;
}

std::vector<RingPtr> prime_power_decompose(const RingPtr& r) {
  const std::uint64_t n = r->size();
  std::vector<std::uint64_t> parts;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      std::uint64_t pp = 1;
      while (m % p == 0) {
        m /= p;
        pp *= p;
      }
      parts.push_back(pp);
    }
  if (m > 1) parts.push_back(m);
  if (parts.size() <= 1) return {r};
  const auto idem = central_idempotents(*r);
  std::vector<RingPtr> out;
  for (auto part : parts) {
    bool found = false;
    for (auto e : idem) {
      std::set<Elem> s;
      for (Elem x = 0; x < n; ++x) s.insert(r->mul(x, e));
      if (s.size() == part) {
        out.push_back(corner_ring(r, e));
        found = true;
        break;
      }
    }
    if (!found) throw AlgebraError("no central idempotent splits off the part of size " + std::to_string(part));
  }
  return out;
}

StructuredCatalog structured_catalog(std::size_t max_size) {
  StructuredCatalog cat;
  std::vector<CatalogEntry> entries;
  auto size_of = [](const RingDescriptor& d) { return Ring::create(d)->size(); };

  // Building blocks usable as product factors.
  std::vector<CatalogEntry> atoms;
  for (std::uint32_t q = 2; q <= max_size; ++q) {
    std::uint32_t p = 0, k = 0;
    for (std::uint32_t c = 2; c <= q; ++c)
      if (q % c == 0) {
        p = c;
        break;
      }
    std::uint32_t t = q;
    while (t % p == 0) {
      t /= p;
      ++k;
    }
    if (t == 1) {
      atoms.push_back({k == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::galois_field(p, k), "GF(q)"});
      if (k > 1) atoms.push_back({RingDescriptor::integers_mod(q), "Z_n"});
    }
  }
  for (std::uint32_t n = 6; n <= max_size; ++n) {
    bool prime_power = false;
    for (std::uint32_t p = 2; p <= n; ++p)
      if (is_prime(p) && n % p == 0) {
        std::uint32_t t = n;
        while (t % p == 0) t /= p;
        prime_power = t == 1;
        break;
      }
    if (!prime_power) entries.push_back({RingDescriptor::integers_mod(n), "Z_n"});
  }
  for (std::uint32_t p = 2; p <= max_size; ++p) {
    if (!is_prime(p)) continue;
    for (std::uint32_t k = 2; ipow(p, k * k) <= max_size; ++k)
      entries.push_back({RingDescriptor::matrix(RingDescriptor::prime_field(p), k), "MatrixRing"});
    for (std::uint32_t k = 2; ipow(p, k * (k + 1) / 2) <= max_size; ++k)
      atoms.push_back({RingDescriptor::upper_triangular(RingDescriptor::prime_field(p), k), "UpperTriangular"});
  }
  // Truncated polynomial rings F[x]/(x^m).
  for (std::uint32_t q = 2; q * q <= max_size; ++q) {
    if (!is_prime(q) && q != 4 && q != 8 && q != 9) continue;
    RingDescriptor base = is_prime(q) ? RingDescriptor::prime_field(q)
                                      : RingDescriptor::galois_field(q == 9 ? 3 : 2, q == 4 ? 2 : q == 8 ? 3 : 2);
    for (std::uint32_t m = 2; ipow(q, m) <= max_size; ++m)
      atoms.push_back({truncated_polynomial_ring(base, m), "F[x]/(x^m)"});
  }
  for (const auto& a : atoms)
    if (size_of(a.descriptor) <= max_size) entries.push_back(a);

  // Products of two or more atoms (multisets, non-increasing atom index).
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t size) {
    if (pick.size() >= 2) {
      std::vector<RingDescriptor> fs;
      for (auto i : pick) fs.push_back(atoms[i].descriptor);
      entries.push_back({RingDescriptor::product(std::move(fs)), "Product"});
    }
    for (std::size_t i = from; i < atoms.size(); ++i) {
      const auto s = size_of(atoms[i].descriptor);
      if (size * s > max_size) continue;
      pick.push_back(i);
      rec(i, size * s);
      pick.pop_back();
    }
  };
  rec(0, 1);

  std::stable_sort(entries.begin(), entries.end(), [&](const CatalogEntry& a, const CatalogEntry& b) {
    const auto sa = size_of(a.descriptor), sb = size_of(b.descriptor);
    if (sa != sb) return sa < sb;
    return a.descriptor.name() < b.descriptor.name();
  });
  cat.entries = std::move(entries);

  const auto ms = std::to_string(max_size);
  cat.coverage = {
      "GF(q) for every prime power q <= " + ms,
      "Z_n for every composite n <= " + ms,
      "M_k(GF(p)) with p^(k^2) <= " + ms,
      "UT_k(GF(p)) with p^(k(k+1)/2) <= " + ms,
      "F[x]/(x^m) for F in {GF(2), GF(3), GF(4)} and |F|^m <= " + ms + " (table rings)",
      "direct products of two or more of the above factors (fields, prime-power Z_n, UT, F[x]/(x^m)) with size <= " + ms,
  };
  cat.limitation =
      "This catalog is a structured constructor family, not a list of all unital rings of order < 16: "
      "for example non-structured local rings of order 8 and 16 (such as Z_2[x,y]/(x,y)^2 or Galois rings) "
      "are absent, so a result over it witnesses but does not prove a bound over all rings.";
  return cat;
}

}  // namespace netring
