#include "netring/ideal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace netring {

const char* side_name(Side s) {
  switch (s) {
    case Side::Left:
      return "left";
    case Side::Right:
      return "right";
    case Side::TwoSided:
      return "two-sided";
  }
  return "?";
}

bool Ideal::contains(Elem a) const { return std::binary_search(elements.begin(), elements.end(), a); }

std::vector<Elem> additive_span(const Ring& r, const std::vector<Elem>& gens) {
  const std::size_t n = r.size();
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  for (auto g : gens) {
    if (in[g]) continue;
    const auto old = members;
    for (Elem m = g; !in[m]; m = r.add(m, g))
      for (auto h : old) {
        const auto x = r.add(h, m);
        if (!in[x]) {
          in[x] = 1;
          members.push_back(x);
        }
      }
  }
  std::sort(members.begin(), members.end());
  return members;
}

Ideal generate_ideal(const RingPtr& r, const std::vector<Elem>& gens, Side side) {
  const auto& rg = r->additive_generators();
  std::vector<Elem> span_gens;
  for (auto g : gens) {
    span_gens.push_back(g);
    for (auto a : rg) {
      if (side != Side::Right) span_gens.push_back(r->mul(a, g));
      if (side != Side::Left) span_gens.push_back(r->mul(g, a));
      if (side == Side::TwoSided)
        for (auto b : rg) span_gens.push_back(r->mul(r->mul(a, g), b));
    }
  }
  std::sort(span_gens.begin(), span_gens.end());
  span_gens.erase(std::unique(span_gens.begin(), span_gens.end()), span_gens.end());
  return Ideal{r, additive_span(*r, span_gens), side};
}

bool is_ideal(const Ring& r, const std::vector<Elem>& elements, Side side) {
  std::vector<char> in(r.size(), 0);
  for (auto e : elements) in[e] = 1;
  if (!in[0]) return false;
  for (auto a : elements)
    for (auto b : elements)
      if (!in[r.add(a, b)]) return false;
  for (auto a : elements)
    if (!in[r.neg(a)]) return false;
  for (Elem x = 0; x < r.size(); ++x)
    for (auto a : elements) {
      if (side != Side::Right && !in[r.mul(x, a)]) return false;
      if (side != Side::Left && !in[r.mul(a, x)]) return false;
    }
  return true;
}

std::vector<Ideal> ideals(const RingPtr& r, Side side, std::size_t bound) {
  if (r->size() > bound) throw BoundExceeded("ideal enumeration bound exceeded for " + r->name());
  const std::size_t n = r->size();
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> queue;
  const Ideal zero{r, {0}, side};
  seen.insert(zero.elements);
  queue.push_back(zero.elements);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    if (cur.size() == n) continue;
    std::vector<char> in(n, 0), covered(n, 0);
    for (auto e : cur) in[e] = 1;
    for (Elem a = 0; a < n; ++a) {
      if (in[a] || covered[a]) continue;
      auto gens = cur;
      gens.push_back(a);
      auto next = generate_ideal(r, gens, side).elements;
      // Every b in the coset a + cur generates the same ideal over cur.
      for (auto e : cur) covered[r->add(a, e)] = 1;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<Ideal> out;
  for (const auto& s : seen) out.push_back(Ideal{r, s, side});
  std::stable_sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  return out;
}

std::vector<Ideal> two_sided_ideals(const RingPtr& r, std::size_t bound) { return ideals(r, Side::TwoSided, bound); }
std::vector<Ideal> left_ideals(const RingPtr& r, std::size_t bound) { return ideals(r, Side::Left, bound); }

std::vector<Ideal> maximal_proper(const std::vector<Ideal>& all) {
  std::vector<Ideal> proper;
  for (const auto& i : all)
    if (!i.is_whole()) proper.push_back(i);
  std::vector<Ideal> out;
  for (const auto& i : proper) {
    bool maximal = true;
    for (const auto& j : proper)
      if (j.size() > i.size() && std::includes(j.elements.begin(), j.elements.end(), i.elements.begin(), i.elements.end())) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(i);
  }
  return out;
}

Ideal intersect(const std::vector<Ideal>& list, Side side) {
  if (list.empty()) throw AlgebraError("intersection of an empty ideal list");
  auto acc = list.front().elements;
  for (std::size_t i = 1; i < list.size(); ++i) {
    std::vector<Elem> next;
    std::set_intersection(acc.begin(), acc.end(), list[i].elements.begin(), list[i].elements.end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return Ideal{list.front().ring, acc, side};
}

Ideal radical(const RingPtr& r, std::size_t bound) {
  if (!r->has_identity()) throw AlgebraError("radical is only defined here for unital rings");
  const auto maxl = maximal_proper(left_ideals(r, bound));
  if (maxl.empty()) return Ideal{r, {0}, Side::TwoSided};
  return intersect(maxl, Side::TwoSided);
}

// ---------------------------------------------------------------------------
// Homomorphisms

bool RingHom::injective() const {
  std::vector<char> hit(codomain->size(), 0);
  for (auto v : map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

bool check_homomorphism(const RingHom& h) {
  const auto& R = *h.domain;
  const auto& S = *h.codomain;
  if (h.map.size() != R.size()) return false;
  for (auto v : h.map)
    if (v >= S.size()) return false;
  if (h.map[0] != 0) return false;
  if (R.has_identity() && (!S.has_identity() || h.map[R.one()] != S.one())) return false;
  std::vector<Elem> all(R.size());
  for (Elem a = 0; a < R.size(); ++a) all[a] = a;
  const auto& inner = R.size() <= 256 ? all : R.additive_generators();
  for (Elem a = 0; a < R.size(); ++a)
    for (auto b : inner) {
      if (h.map[R.add(a, b)] != S.add(h.map[a], h.map[b])) return false;
    }
  const auto& outer = inner;
  for (auto a : outer)
    for (auto b : inner)
      if (h.map[R.mul(a, b)] != S.mul(h.map[a], h.map[b])) return false;
  return true;
}

RingHom identity_hom(const RingPtr& r) {
  RingHom h{r, r, std::vector<Elem>(r->size()), true};
  for (Elem a = 0; a < r->size(); ++a) h.map[a] = a;
  return h;
}

RingHom compose(const RingHom& second, const RingHom& first) {
  if (first.codomain->descriptor() != second.domain->descriptor() || first.codomain->size() != second.domain->size())
    throw AlgebraError("cannot compose homomorphisms with mismatched rings");
  RingHom h{first.domain, second.codomain, std::vector<Elem>(first.map.size()), false};
  for (std::size_t a = 0; a < h.map.size(); ++a) h.map[a] = second.map[first.map[a]];
  std::vector<char> hit(h.codomain->size(), 0);
  std::size_t count = 0;
  for (auto v : h.map)
    if (!hit[v]) {
      hit[v] = 1;
      ++count;
    }
  h.surjective = count == h.codomain->size();
  return h;
}

QuotientResult quotient(const RingPtr& r, const Ideal& i) {
  if (i.side != Side::TwoSided && !is_ideal(*r, i.elements, Side::TwoSided))
    throw AlgebraError("quotient requires a two-sided ideal");
  const std::size_t n = r->size();
  if (n % i.size() != 0) throw AlgebraError("ideal size does not divide ring size");
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> coset(n, kUnset), reps;
  for (Elem a = 0; a < n; ++a) {
    if (coset[a] != kUnset) continue;
    const auto id = static_cast<Elem>(reps.size());
    reps.push_back(a);
    for (auto e : i.elements) coset[r->add(a, e)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<std::vector<Elem>> add(m, std::vector<Elem>(m)), mul(m, std::vector<Elem>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      add[x][y] = coset[r->add(reps[x], reps[y])];
      mul[x][y] = coset[r->mul(reps[x], reps[y])];
    }
  std::optional<Elem> id;
  if (r->has_identity()) id = coset[r->one()];
  const std::string label = i.is_zero() ? r->name() : r->name() + "/I" + std::to_string(i.size());
  auto q = Ring::create(RingDescriptor::table(std::move(add), std::move(mul), id, !r->has_identity(), label));
  return QuotientResult{q, RingHom{r, q, coset, true}, reps};
}

namespace {

std::uint64_t additive_order(const Ring& r, Elem a) {
  std::uint64_t t = 1;
  for (Elem x = a; x != 0; x = r.add(x, a)) ++t;
  return t;
}

struct HomSearch {
  const Ring& R;
  const Ring& S;
  const HomSearchOptions& opts;
  RingPtr rp, sp;
  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> candidates;
  std::vector<Elem> img;  // kUnset where undefined
  std::vector<Elem> defined;
  std::vector<Elem> chosen;
  std::vector<RingHom> out;
  static constexpr Elem kUnset = ~Elem{0};

  bool full() const { return opts.limit && out.size() >= opts.limit; }

  // Extends img from <g_0..g_{t-1}> to <g_0..g_t>; returns false on inconsistency.
  bool extend(std::size_t t, std::vector<Elem>& added) {
    const Elem g = gens[t], v = chosen[t];
    const auto base = defined;
    Elem m = g, mv = v;
    while (true) {
      if (img[m] != kUnset) {
        // m = c*g already in the previous subgroup: images must agree.
        return img[m] == mv;
      }
      for (auto h : base) {
        const auto x = R.add(h, m);
        const auto xv = S.add(img[h], mv);
        if (img[x] == kUnset) {
          img[x] = xv;
          defined.push_back(x);
          added.push_back(x);
        } else if (img[x] != xv) {
          return false;
        }
      }
      m = R.add(m, g);
      mv = S.add(mv, v);
    }
  }

  bool multiplicative_so_far(std::size_t t) const {
    for (std::size_t a = 0; a <= t; ++a)
      for (std::size_t b = 0; b <= t; ++b) {
        if (a != t && b != t) continue;
        const auto p = R.mul(gens[a], gens[b]);
        if (img[p] == kUnset) continue;
        if (img[p] != S.mul(chosen[a], chosen[b])) return false;
      }
    return true;
  }

  void finish_candidate() {
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b)
        if (img[R.mul(gens[a], gens[b])] != S.mul(chosen[a], chosen[b])) return;
    RingHom h{rp, sp, img, false};
    std::vector<char> hit(S.size(), 0);
    std::size_t count = 0;
    for (auto v : img)
      if (!hit[v]) {
        hit[v] = 1;
        ++count;
      }
    h.surjective = count == S.size();
    if (opts.surjective_only && !h.surjective) return;
    if (opts.injective_only && count != R.size()) return;
    out.push_back(std::move(h));
  }

  void dfs(std::size_t t) {
    if (full()) return;
    if (t == gens.size()) {
      finish_candidate();
      return;
    }
    for (auto v : candidates[t]) {
      chosen[t] = v;
      std::vector<Elem> added;
      const auto saved = defined.size();
      if (extend(t, added) && multiplicative_so_far(t)) dfs(t + 1);
      for (auto x : added) img[x] = kUnset;
      defined.resize(saved);
      if (full()) return;
    }
  }
};

}  // namespace

std::vector<RingHom> find_homomorphisms(const RingPtr& r, const RingPtr& s, const HomSearchOptions& opts) {
  if (r->size() > opts.domain_bound) throw BoundExceeded("homomorphism search bound exceeded for " + r->name());
  if (!r->has_identity() || !s->has_identity()) throw AlgebraError("homomorphism search needs unital rings");
  if (opts.surjective_only && s->size() > r->size()) return {};
  if (opts.injective_only && s->size() < r->size()) return {};
  HomSearch hs{*r, *s, opts, r, s, r->additive_generators(), {}, {}, {}, {}, {}};
  if (hs.gens.empty() || hs.gens.front() != r->one())
    hs.gens.insert(hs.gens.begin(), r->one());  // only for the zero ring, which cannot occur
  std::vector<std::uint64_t> s_orders(s->size());
  for (Elem x = 0; x < s->size(); ++x) s_orders[x] = additive_order(*s, x);
  for (std::size_t t = 0; t < hs.gens.size(); ++t) {
    std::vector<Elem> cand;
    if (t == 0) {
      cand.push_back(s->one());
    } else {
      const auto ord = additive_order(*r, hs.gens[t]);
      for (Elem x = 0; x < s->size(); ++x)
        if (ord % s_orders[x] == 0) cand.push_back(x);
    }
    hs.candidates.push_back(std::move(cand));
  }
  hs.img.assign(r->size(), HomSearch::kUnset);
  hs.img[0] = 0;
  hs.defined.push_back(0);
  hs.chosen.assign(hs.gens.size(), 0);
  hs.dfs(0);
  return std::move(hs.out);
}

std::vector<RingHom> find_homomorphisms(const RingPtr& r, const RingPtr& s, bool surjective_only) {
  HomSearchOptions o;
  o.surjective_only = surjective_only;
  return find_homomorphisms(r, s, o);
}

std::vector<Elem> central_idempotents(const Ring& r) {
  std::vector<Elem> out;
  const auto& g = r.additive_generators();
  for (Elem e = 0; e < r.size(); ++e) {
    if (r.mul(e, e) != e) continue;
    bool central = true;
    for (auto x : g)
      if (r.mul(e, x) != r.mul(x, e)) {
        central = false;
        break;
      }
    if (central) out.push_back(e);
  }
  return out;
}

namespace {

struct Invariants {
  std::size_t size;
  std::uint64_t characteristic;
  bool commutative;
  std::size_t units;
  std::size_t idempotents;
  std::size_t nilpotent_square;
  bool operator==(const Invariants&) const = default;
};

Invariants invariants_of(const Ring& r) {
  Invariants inv{r.size(), r.characteristic(), r.is_commutative(), 0, 0, 0};
  inv.units = r.size() <= Ring::kUnitScanLimit ? r.units().size() : 0;
  for (Elem a = 0; a < r.size(); ++a) {
    const auto sq = r.mul(a, a);
    if (sq == a) ++inv.idempotents;
    if (sq == 0) ++inv.nilpotent_square;
  }
  return inv;
}

}  // namespace

std::optional<RingHom> find_isomorphism(const RingPtr& r, const RingPtr& s) {
  if (r->size() != s->size()) return std::nullopt;
  if (!(invariants_of(*r) == invariants_of(*s))) return std::nullopt;
  HomSearchOptions o;
  o.injective_only = true;
  o.limit = 1;
  o.domain_bound = std::max<std::size_t>(o.domain_bound, r->size());
  auto homs = find_homomorphisms(r, s, o);
  if (homs.empty()) return std::nullopt;
  homs.front().surjective = true;
  return homs.front();
}

bool isomorphic(const RingPtr& r, const RingPtr& s) { return find_isomorphism(r, s).has_value(); }

}  // namespace netring
