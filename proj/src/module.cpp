#include "netring/module.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace netring {

namespace {

std::vector<Elem> greedy_span_generators(std::size_t n, const std::function<Elem(Elem, Elem)>& add) {
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0}, gens;
  in[0] = 1;
  for (Elem a = 0; a < n && members.size() < n; ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    const auto old = members;
    for (Elem m = a; !in[m]; m = add(m, a))
      for (auto h : old) {
        const auto x = add(h, m);
        if (!in[x]) {
          in[x] = 1;
          members.push_back(x);
        }
      }
  }
  return gens;
}

}  // namespace

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup AbelianGroup::cyclic_product(std::vector<std::uint32_t> moduli) {
  AbelianGroup g;
  g.kind_ = Kind::Moduli;
  for (auto m : moduli)
    if (m < 1) throw AlgebraError("cyclic factor order must be positive");
  g.moduli_ = std::move(moduli);
  g.finish();
  return g;
}

AbelianGroup AbelianGroup::ring_power(RingPtr r, std::uint32_t k) {
  AbelianGroup g;
  g.kind_ = Kind::RingPower;
  g.ring_ = std::move(r);
  g.k_ = k;
  g.finish();
  return g;
}

AbelianGroup AbelianGroup::table(std::vector<std::vector<Elem>> add) {
  const auto n = add.size();
  if (n == 0) throw AlgebraError("group table must be non-empty");
  for (const auto& row : add) {
    if (row.size() != n) throw AlgebraError("group table must be square");
    for (auto v : row)
      if (v >= n) throw AlgebraError("group table entry out of range");
  }
  for (Elem a = 0; a < n; ++a) {
    if (add[0][a] != a || add[a][0] != a) throw AlgebraError("group table: 0 is not the identity");
    bool inv = false;
    for (Elem b = 0; b < n; ++b) {
      if (add[a][b] != add[b][a]) throw AlgebraError("group table is not commutative");
      inv = inv || add[a][b] == 0;
    }
    if (!inv) throw AlgebraError("group table: element without inverse");
  }
  if (n <= 256)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (add[add[a][b]][c] != add[a][add[b][c]]) throw AlgebraError("group table is not associative");
  AbelianGroup g;
  g.kind_ = Kind::Table;
  g.table_ = std::move(add);
  g.finish();
  return g;
}

AbelianGroup AbelianGroup::product(std::vector<AbelianGroup> factors) {
  AbelianGroup g;
  g.kind_ = Kind::Product;
  g.factors_ = std::move(factors);
  g.finish();
  return g;
}

void AbelianGroup::finish() {
  std::vector<std::size_t> radices;
  switch (kind_) {
    case Kind::Moduli:
      radices.assign(moduli_.begin(), moduli_.end());
      break;
    case Kind::RingPower:
      radices.assign(k_, ring_->size());
      break;
    case Kind::Table:
      radices = {table_.size()};
      break;
    case Kind::Product:
      for (const auto& f : factors_) radices.push_back(f.size());
      break;
  }
  size_ = 1;
  for (auto r : radices) {
    size_ *= r;
    if (size_ > (std::size_t{1} << 31)) throw BoundExceeded("group too large to index");
  }
  radix_.assign(radices.size(), 1);
  for (std::size_t s = radices.size(); s-- > 1;) radix_[s - 1] = radix_[s] * radices[s];

  switch (kind_) {
    case Kind::Moduli:
      for (std::size_t s = 0; s < moduli_.size(); ++s)
        if (moduli_[s] > 1) generators_.push_back(static_cast<Elem>(radix_[s]));
      break;
    case Kind::RingPower:
      for (std::size_t s = 0; s < k_; ++s)
        for (auto g : ring_->additive_generators()) generators_.push_back(static_cast<Elem>(g * radix_[s]));
      break;
    case Kind::Table:
      generators_ = greedy_span_generators(size_, [this](Elem a, Elem b) { return table_[a][b]; });
      break;
    case Kind::Product:
      for (std::size_t s = 0; s < factors_.size(); ++s)
        for (auto g : factors_[s].generators()) generators_.push_back(static_cast<Elem>(g * radix_[s]));
      break;
  }
  if (size_ <= 1024) {
    std::vector<Elem> add(size_ * size_), neg(size_);
    for (Elem a = 0; a < size_; ++a) {
      neg[a] = this->neg(a);
      for (Elem b = 0; b < size_; ++b) add[a * size_ + b] = this->add(a, b);
    }
    cache_add_ = std::move(add);
    cache_neg_ = std::move(neg);
  }
}

Elem AbelianGroup::add(Elem a, Elem b) const {
  if (!cache_add_.empty()) return cache_add_[static_cast<std::size_t>(a) * size_ + b];
  switch (kind_) {
    case Kind::Moduli: {
      Elem r = 0;
      for (std::size_t s = 0; s < moduli_.size(); ++s) {
        const auto m = moduli_[s];
        const auto x = (a / radix_[s]) % m, y = (b / radix_[s]) % m;
        r += static_cast<Elem>(((x + y) % m) * radix_[s]);
      }
      return r;
    }
    case Kind::RingPower: {
      const auto q = ring_->size();
      Elem r = 0;
      for (std::size_t s = 0; s < k_; ++s)
        r += static_cast<Elem>(ring_->add(static_cast<Elem>((a / radix_[s]) % q), static_cast<Elem>((b / radix_[s]) % q)) *
                               radix_[s]);
      return r;
    }
    case Kind::Table:
      return table_[a][b];
    case Kind::Product: {
      Elem r = 0;
      for (std::size_t s = 0; s < factors_.size(); ++s) {
        const auto q = factors_[s].size();
        r += static_cast<Elem>(
            factors_[s].add(static_cast<Elem>((a / radix_[s]) % q), static_cast<Elem>((b / radix_[s]) % q)) * radix_[s]);
      }
      return r;
    }
  }
  return 0;
}

Elem AbelianGroup::neg(Elem a) const {
  if (!cache_neg_.empty()) return cache_neg_[a];
  switch (kind_) {
    case Kind::Moduli: {
      Elem r = 0;
      for (std::size_t s = 0; s < moduli_.size(); ++s) {
        const auto m = moduli_[s];
        const auto x = (a / radix_[s]) % m;
        r += static_cast<Elem>(((m - x) % m) * radix_[s]);
      }
      return r;
    }
    case Kind::RingPower: {
      const auto q = ring_->size();
      Elem r = 0;
      for (std::size_t s = 0; s < k_; ++s)
        r += static_cast<Elem>(ring_->neg(static_cast<Elem>((a / radix_[s]) % q)) * radix_[s]);
      return r;
    }
    case Kind::Table:
      for (Elem b = 0; b < table_.size(); ++b)
        if (table_[a][b] == 0) return b;
      return 0;
    case Kind::Product: {
      Elem r = 0;
      for (std::size_t s = 0; s < factors_.size(); ++s) {
        const auto q = factors_[s].size();
        r += static_cast<Elem>(factors_[s].neg(static_cast<Elem>((a / radix_[s]) % q)) * radix_[s]);
      }
      return r;
    }
  }
  return 0;
}

std::vector<Elem> AbelianGroup::coords(Elem a) const {
  if (kind_ != Kind::RingPower) throw AlgebraError("coords() needs a ring-power group");
  std::vector<Elem> c(k_);
  for (std::size_t s = 0; s < k_; ++s) c[s] = static_cast<Elem>((a / radix_[s]) % ring_->size());
  return c;
}

Elem AbelianGroup::from_coords(const std::vector<Elem>& c) const {
  if (kind_ != Kind::RingPower || c.size() != k_) throw AlgebraError("from_coords() shape mismatch");
  Elem r = 0;
  for (std::size_t s = 0; s < k_; ++s) r += static_cast<Elem>(c[s] * radix_[s]);
  return r;
}

std::vector<Elem> AbelianGroup::components(Elem a) const {
  if (kind_ != Kind::Product) throw AlgebraError("components() needs a product group");
  std::vector<Elem> c(factors_.size());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = static_cast<Elem>((a / radix_[s]) % factors_[s].size());
  return c;
}

Elem AbelianGroup::from_components(const std::vector<Elem>& c) const {
  if (kind_ != Kind::Product || c.size() != factors_.size()) throw AlgebraError("from_components() shape mismatch");
  Elem r = 0;
  for (std::size_t s = 0; s < c.size(); ++s) r += static_cast<Elem>(c[s] * radix_[s]);
  return r;
}

std::string AbelianGroup::describe() const {
  switch (kind_) {
    case Kind::Moduli: {
      if (moduli_.empty()) return "{0}";
      std::string s;
      for (std::size_t i = 0; i < moduli_.size(); ++i) s += (i ? " x Z_" : "Z_") + std::to_string(moduli_[i]);
      return s;
    }
    case Kind::RingPower:
      return "(" + ring_->name() + ")^" + std::to_string(k_);
    case Kind::Table:
      return "Table[" + std::to_string(table_.size()) + "]";
    case Kind::Product: {
      std::string s;
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i].describe();
      return s;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Module

bool ModuleAxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ModuleAxiomReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.passed) continue;
    std::string w;
    for (std::size_t i = 0; i < c.witness.size(); ++i) w += (i ? "," : "") + std::to_string(c.witness[i]);
    return c.axiom + " (witness " + w + ")";
  }
  return {};
}

ModuleAxiomReport check_module_axioms(const Ring& r, const AbelianGroup& g, const std::function<Elem(Elem, Elem)>& act) {
  ModuleAxiomReport rep;
  const std::size_t nr = r.size(), ng = g.size();
  const bool exhaustive = nr * nr * ng <= (std::size_t{1} << 24) && nr * ng * ng <= (std::size_t{1} << 24);
  if (!exhaustive && nr * ng * r.additive_generators().size() > (std::size_t{1} << 28))
    throw BoundExceeded("module axiom check too large");
  rep.method = exhaustive ? "exhaustive" : "generator-reduced";
  for (const char* a : {"closure", "r.(g+h) = r.g + r.h", "(r+s).g = r.g + s.g", "(rs).g = r.(s.g)", "1.g = g"})
    rep.checks.push_back({a, true, {}});
  auto fail = [&](std::size_t i, std::vector<Elem> w) {
    if (rep.checks[i].passed) {
      rep.checks[i].passed = false;
      rep.checks[i].witness = std::move(w);
    }
  };
  std::vector<Elem> rall(nr), gall(ng);
  for (Elem i = 0; i < nr; ++i) rall[i] = i;
  for (Elem i = 0; i < ng; ++i) gall[i] = i;
  const auto& rgen = exhaustive ? rall : r.additive_generators();
  const auto& ggen = exhaustive ? gall : g.generators();

  for (Elem a = 0; a < nr; ++a)
    for (auto x : (exhaustive ? gall : ggen))
      if (act(a, x) >= ng) {
        fail(0, {a, x});
        return rep;
      }
  for (auto a : rgen)
    for (Elem x = 0; x < ng; ++x)
      for (auto y : ggen)
        if (act(a, g.add(x, y)) != g.add(act(a, x), act(a, y))) fail(1, {a, x, y});
  for (Elem a = 0; a < nr; ++a)
    for (auto b : rgen)
      for (auto x : (exhaustive ? gall : ggen))
        if (act(r.add(a, b), x) != g.add(act(a, x), act(b, x))) fail(2, {a, b, x});
  for (auto a : rgen)
    for (auto b : rgen)
      for (auto x : ggen)
        if (act(r.mul(a, b), x) != act(a, act(b, x))) fail(3, {a, b, x});
  if (r.has_identity()) {
    for (auto x : ggen)
      if (act(r.one(), x) != x) fail(4, {r.one(), x});
  } else {
    fail(4, {});
  }
  return rep;
}

ModuleAxiomReport check_module_axioms(const Module& m) {
  return check_module_axioms(*m.ring(), m.group(), [&m](Elem r, Elem g) { return m.act(r, g); });
}

Elem Module::act_slow(Elem r, Elem g) const {
  switch (action_) {
    case Action::Regular:
      return ring_->mul(r, g);
    case Action::MatrixVector: {
      const auto& S = *ring_->inner();
      const auto k = ring_->matrix_dim();
      const auto v = group_.coords(g);
      std::vector<Elem> out(k, 0);
      for (std::uint32_t i = 0; i < k; ++i) {
        Elem acc = 0;
        for (std::uint32_t j = 0; j < k; ++j) acc = S.add(acc, S.mul(ring_->entry(r, i, j), v[j]));
        out[i] = acc;
      }
      return group_.from_coords(out);
    }
    case Action::Product: {
      const auto rc = ring_->components(r);
      const auto gc = group_.components(g);
      std::vector<Elem> out(parts_.size());
      for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = parts_[i]->act(rc[i], gc[i]);
      return group_.from_components(out);
    }
    case Action::Table:
      break;
  }
  throw AlgebraError("table module without a table");
}

void Module::build_table() {
  const std::size_t nr = ring_->size(), ng = group_.size();
  if (nr * ng > kActionTableLimit) return;
  std::vector<Elem> t(nr * ng);
  for (Elem r = 0; r < nr; ++r)
    for (Elem g = 0; g < ng; ++g) t[r * ng + g] = act_slow(r, g);
  table_ = std::move(t);
}

ModulePtr Module::regular(RingPtr r) {
  if (!r->has_identity()) throw AlgebraError("modules need a unital ring");
  std::shared_ptr<Module> m(new Module());
  m->ring_ = r;
  if (const auto& mod = r->additive_moduli())
    m->group_ = AbelianGroup::cyclic_product(*mod);
  else {
    std::vector<std::vector<Elem>> add(r->size(), std::vector<Elem>(r->size()));
    for (Elem a = 0; a < r->size(); ++a)
      for (Elem b = 0; b < r->size(); ++b) add[a][b] = r->add(a, b);
    m->group_ = AbelianGroup::table(std::move(add));
  }
  m->action_ = Action::Regular;
  m->build_table();
  return m;
}

ModulePtr Module::vector_module(const RingDescriptor& d, std::uint32_t k) {
  if (k < 1) throw AlgebraError("vector module dimension must be >= 1");
  if (k == 1) return regular(Ring::create(d));
  std::shared_ptr<Module> m(new Module());
  m->ring_ = Ring::create(RingDescriptor::matrix(d, k));
  m->group_ = AbelianGroup::ring_power(m->ring_->inner(), k);
  m->action_ = Action::MatrixVector;
  m->build_table();
  return m;
}

ModulePtr vector_module(const RingDescriptor& r, std::uint32_t k) { return Module::vector_module(r, k); }

ModulePtr Module::product(std::vector<ModulePtr> parts) {
  if (parts.empty()) throw AlgebraError("product module needs at least one part");
  std::vector<RingDescriptor> rs;
  std::vector<AbelianGroup> gs;
  for (const auto& p : parts) {
    rs.push_back(p->ring()->descriptor());
    gs.push_back(p->group());
  }
  std::shared_ptr<Module> m(new Module());
  m->ring_ = Ring::create(RingDescriptor::product(std::move(rs)));
  m->group_ = AbelianGroup::product(std::move(gs));
  m->action_ = Action::Product;
  m->parts_ = std::move(parts);
  m->build_table();
  return m;
}

ModulePtr Module::from_table(RingPtr r, AbelianGroup g, std::vector<std::vector<Elem>> action) {
  if (action.size() != r->size()) throw AlgebraError("action table must have one row per ring element");
  for (const auto& row : action)
    if (row.size() != g.size()) throw AlgebraError("action table rows must have one entry per group element");
  std::shared_ptr<Module> m(new Module());
  m->ring_ = r;
  m->group_ = std::move(g);
  m->action_ = Action::Table;
  const auto ng = m->group_.size();
  m->table_.resize(r->size() * ng);
  for (std::size_t i = 0; i < r->size(); ++i)
    for (std::size_t j = 0; j < ng; ++j) {
      if (action[i][j] >= ng) throw AlgebraError("action table entry out of range");
      m->table_[i * ng + j] = action[i][j];
    }
  const auto rep = check_module_axioms(*m);
  if (!rep.all_passed()) throw AlgebraError("module axiom violated: " + rep.first_failure());
  return m;
}

ModulePtr construct_module(RingPtr r, AbelianGroup g, const std::function<Elem(Elem, Elem)>& act) {
  if (r->size() * g.size() > Module::kActionTableLimit) throw BoundExceeded("action too large to tabulate");
  std::vector<std::vector<Elem>> t(r->size(), std::vector<Elem>(g.size()));
  for (Elem a = 0; a < r->size(); ++a)
    for (Elem x = 0; x < g.size(); ++x) {
      t[a][x] = act(a, x);
      if (t[a][x] >= g.size()) throw AlgebraError("module axiom violated: closure (witness " + std::to_string(a) + "," +
                                                  std::to_string(x) + ")");
    }
  return Module::from_table(std::move(r), std::move(g), std::move(t));
}

std::string Module::describe() const {
  switch (action_) {
    case Action::Regular:
      return ring_->name() + " over itself";
    case Action::MatrixVector:
      return group_.describe() + " over " + ring_->name();
    case Action::Product: {
      std::string s;
      for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? " x [" : "[") + parts_[i]->describe() + "]";
      return s;
    }
    case Action::Table:
      return group_.describe() + " over " + ring_->name() + " (table action)";
  }
  return "?";
}

Ideal annihilator(const Module& m) {
  std::vector<Elem> out;
  const auto& gens = m.group().generators();
  for (Elem r = 0; r < m.ring()->size(); ++r) {
    bool zero = true;
    for (auto g : gens)
      if (m.act(r, g) != 0) {
        zero = false;
        break;
      }
    if (zero) out.push_back(r);
  }
  return Ideal{m.ring(), out, Side::TwoSided};
}

bool is_faithful(const Module& m) {
  if (m.action_kind() == Module::Action::Regular) return true;
  if (m.action_kind() == Module::Action::MatrixVector) return m.size() > 1;
  return annihilator(m).size() == 1;
}

AnnihilatorQuotient annihilator_quotient(const ModulePtr& m) {
  if (is_faithful(*m)) return {m->ring(), identity_hom(m->ring()), m};
  const auto J = annihilator(*m);
  auto q = quotient(m->ring(), J);
  std::vector<std::vector<Elem>> act(q.ring->size(), std::vector<Elem>(m->size()));
  for (std::size_t s = 0; s < q.ring->size(); ++s)
    for (Elem g = 0; g < m->size(); ++g) act[s][g] = m->act(q.representatives[s], g);
  auto mod = Module::from_table(q.ring, m->group(), std::move(act));
  return {q.ring, q.projection, mod};
}

std::vector<Elem> generate_submodule(const Module& m, const std::vector<Elem>& gens) {
  const auto& G = m.group();
  std::vector<Elem> span_gens;
  for (auto x : gens) {
    span_gens.push_back(x);
    for (auto r : m.ring()->additive_generators()) span_gens.push_back(m.act(r, x));
  }
  const std::size_t n = G.size();
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0};
  in[0] = 1;
  for (auto g : span_gens) {
    if (in[g]) continue;
    const auto old = members;
    for (Elem x = g; !in[x]; x = G.add(x, g))
      for (auto h : old) {
        const auto y = G.add(h, x);
        if (!in[y]) {
          in[y] = 1;
          members.push_back(y);
        }
      }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::vector<Elem>> submodules(const Module& m, std::size_t bound) {
  const std::size_t n = m.size();
  if (n > bound) throw BoundExceeded("submodule enumeration bound exceeded");
  std::set<std::vector<Elem>> seen{{0}};
  std::vector<std::vector<Elem>> queue{{0}};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto cur = queue[qi];
    if (cur.size() == n) continue;
    std::vector<char> in(n, 0), covered(n, 0);
    for (auto e : cur) in[e] = 1;
    for (Elem a = 0; a < n; ++a) {
      if (in[a] || covered[a]) continue;
      auto gens = cur;
      gens.push_back(a);
      auto next = generate_submodule(m, gens);
      for (auto e : cur) covered[m.group().add(a, e)] = 1;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<std::vector<Elem>> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

ModulePtr submodule_as_module(const Module& m, const std::vector<Elem>& elements) {
  std::map<Elem, Elem> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<Elem>(i);
  const auto k = elements.size();
  std::vector<std::vector<Elem>> add(k, std::vector<Elem>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto it = index.find(m.group().add(elements[i], elements[j]));
      if (it == index.end()) throw AlgebraError("subset is not closed under addition");
      add[i][j] = it->second;
    }
  std::vector<std::vector<Elem>> act(m.ring()->size(), std::vector<Elem>(k));
  for (Elem r = 0; r < m.ring()->size(); ++r)
    for (std::size_t j = 0; j < k; ++j) {
      auto it = index.find(m.act(r, elements[j]));
      if (it == index.end()) throw AlgebraError("subset is not closed under the action");
      act[r][j] = it->second;
    }
  return Module::from_table(m.ring(), AbelianGroup::table(std::move(add)), std::move(act));
}

}  // namespace netring
