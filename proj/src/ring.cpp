#include "netring/ring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace netring {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > (std::uint64_t{1} << 48)) throw BoundExceeded("ring too large to index (> 2^48 elements)");
  }
  return r;
}

struct ModArith final : detail::Arith {
  std::uint32_t n;
  explicit ModArith(std::uint32_t n) : n(n) {}
  Elem add(Elem a, Elem b) const override { return static_cast<Elem>((std::uint64_t{a} + b) % n); }
  Elem neg(Elem a) const override { return a == 0 ? 0 : n - a; }
  Elem mul(Elem a, Elem b) const override { return static_cast<Elem>((std::uint64_t{a} * b) % n); }
};

struct GaloisArith final : detail::Arith {
  std::uint32_t p, k;
  std::vector<std::uint32_t> poly;
  std::vector<std::uint32_t> pow;  // p^i

  GaloisArith(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> f) : p(p), k(k), poly(std::move(f)) {
    pow.resize(k + 1, 1);
    for (std::uint32_t i = 1; i <= k; ++i) pow[i] = pow[i - 1] * p;
  }
  std::uint32_t digit(Elem a, std::uint32_t i) const { return (a / pow[i]) % p; }
  Elem add(Elem a, Elem b) const override {
    Elem r = 0;
    for (std::uint32_t i = 0; i < k; ++i) r += ((digit(a, i) + digit(b, i)) % p) * pow[i];
    return r;
  }
  Elem neg(Elem a) const override {
    Elem r = 0;
    for (std::uint32_t i = 0; i < k; ++i) r += ((p - digit(a, i)) % p) * pow[i];
    return r;
  }
  Elem mul(Elem a, Elem b) const override {
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      const auto ai = digit(a, i);
      if (ai == 0) continue;
      for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ai} * digit(b, j)) % p;
    }
    // Reduce using x^k = -(c_0 + ... + c_{k-1} x^{k-1}).
    for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
      const auto c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < k; ++i) {
        prod[d - k + i] = (prod[d - k + i] + (p - poly[i]) % p * c) % p;
      }
    }
    Elem r = 0;
    for (std::uint32_t i = 0; i < k; ++i) r += static_cast<Elem>(prod[i]) * pow[i];
    return r;
  }
};

// Matrix rings and upper-triangular rings share the entry-coordinate scheme;
// `positions` lists the stored (row, col) pairs in significance order.
struct MatrixArith final : detail::Arith {
  RingPtr inner;
  std::uint32_t k;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> positions;
  std::vector<int> slot;  // k*k -> position index or -1
  std::vector<Elem> radix_pow;

  MatrixArith(RingPtr in, std::uint32_t k, bool upper) : inner(std::move(in)), k(k) {
    slot.assign(static_cast<std::size_t>(k) * k, -1);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j)
        if (!upper || i <= j) {
          slot[i * k + j] = static_cast<int>(positions.size());
          positions.emplace_back(i, j);
        }
    radix_pow.assign(positions.size(), 1);
    for (std::size_t s = positions.size(); s-- > 1;)
      radix_pow[s - 1] = radix_pow[s] * static_cast<Elem>(inner->size());
  }
  void decode(Elem a, std::vector<Elem>& out) const {
    out.resize(positions.size());
    const auto q = static_cast<Elem>(inner->size());
    for (std::size_t s = positions.size(); s-- > 0;) {
      out[s] = a % q;
      a /= q;
    }
  }
  Elem encode(const std::vector<Elem>& e) const {
    Elem r = 0;
    for (std::size_t s = 0; s < positions.size(); ++s) r += e[s] * radix_pow[s];
    return r;
  }
  Elem add(Elem a, Elem b) const override {
    std::vector<Elem> x, y;
    decode(a, x);
    decode(b, y);
    for (std::size_t s = 0; s < x.size(); ++s) x[s] = inner->add(x[s], y[s]);
    return encode(x);
  }
  Elem neg(Elem a) const override {
    std::vector<Elem> x;
    decode(a, x);
    for (auto& v : x) v = inner->neg(v);
    return encode(x);
  }
  Elem mul(Elem a, Elem b) const override {
    std::vector<Elem> x, y, z(positions.size(), 0);
    decode(a, x);
    decode(b, y);
    for (std::size_t s = 0; s < positions.size(); ++s) {
      const auto [i, j] = positions[s];
      Elem acc = 0;
      for (std::uint32_t t = 0; t < k; ++t) {
        const int l = slot[i * k + t], r = slot[t * k + j];
        if (l < 0 || r < 0) continue;
        acc = inner->add(acc, inner->mul(x[l], y[r]));
      }
      z[s] = acc;
    }
    return encode(z);
  }
};

struct ProductArith final : detail::Arith {
  std::vector<RingPtr> factors;
  std::vector<Elem> radix_pow;

  explicit ProductArith(std::vector<RingPtr> f) : factors(std::move(f)) {
    radix_pow.assign(factors.size(), 1);
    for (std::size_t s = factors.size(); s-- > 1;)
      radix_pow[s - 1] = radix_pow[s] * static_cast<Elem>(factors[s]->size());
  }
  Elem comp(Elem a, std::size_t s) const { return (a / radix_pow[s]) % static_cast<Elem>(factors[s]->size()); }
  template <class Op>
  Elem zip(Elem a, Elem b, Op op) const {
    Elem r = 0;
    for (std::size_t s = 0; s < factors.size(); ++s) r += op(*factors[s], comp(a, s), comp(b, s)) * radix_pow[s];
    return r;
  }
  Elem add(Elem a, Elem b) const override {
    return zip(a, b, [](const Ring& f, Elem x, Elem y) { return f.add(x, y); });
  }
  Elem neg(Elem a) const override {
    return zip(a, 0, [](const Ring& f, Elem x, Elem) { return f.neg(x); });
  }
  Elem mul(Elem a, Elem b) const override {
    return zip(a, b, [](const Ring& f, Elem x, Elem y) { return f.mul(x, y); });
  }
};

std::string descriptor_key(const RingDescriptor& d) {
  std::ostringstream os;
  os << static_cast<int>(d.kind) << '(' << d.p << ',' << d.k << ',' << d.n << ';';
  for (auto c : d.poly) os << c << ',';
  os << ';';
  for (const auto& c : d.children) os << descriptor_key(c) << '|';
  if (d.kind == RingDescriptor::Kind::TableRing) {
    os << ';' << d.add_table.size() << ';';
    for (const auto& row : d.add_table)
      for (auto x : row) os << x << ',';
    os << ';';
    for (const auto& row : d.mul_table)
      for (auto x : row) os << x << ',';
    os << ';' << (d.identity ? static_cast<long long>(*d.identity) : -1LL) << ';' << d.rng << ';' << d.label;
  }
  os << ')';
  return os.str();
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::string, RingPtr>& ring_cache() {
  static std::map<std::string, RingPtr> c;
  return c;
}

std::string join_names(const std::vector<RingDescriptor>& ds, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) out += sep;
    const auto nm = ds[i].name();
    out += ds[i].kind == RingDescriptor::Kind::Product ? "(" + nm + ")" : nm;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptor factories

RingDescriptor RingDescriptor::prime_field(std::uint32_t p) {
  RingDescriptor d;
  d.kind = Kind::PrimeField;
  d.p = p;
  return d;
}

RingDescriptor RingDescriptor::galois_field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> poly) {
  RingDescriptor d;
  d.kind = Kind::GaloisField;
  d.p = p;
  d.k = k;
  d.poly = poly.empty() && is_prime(p) && k >= 1 ? default_irreducible(p, k) : std::move(poly);
  return d;
}

RingDescriptor RingDescriptor::integers_mod(std::uint32_t n) {
  RingDescriptor d;
  d.kind = Kind::IntegersMod;
  d.n = n;
  return d;
}

RingDescriptor RingDescriptor::matrix(RingDescriptor inner, std::uint32_t k) {
  RingDescriptor d;
  d.kind = Kind::MatrixRing;
  d.k = k;
  d.children.push_back(std::move(inner));
  return d;
}

RingDescriptor RingDescriptor::upper_triangular(RingDescriptor field, std::uint32_t k) {
  RingDescriptor d;
  d.kind = Kind::UpperTriangular;
  d.k = k;
  d.children.push_back(std::move(field));
  return d;
}

RingDescriptor RingDescriptor::product(std::vector<RingDescriptor> factors) {
  RingDescriptor d;
  d.kind = Kind::Product;
  d.children = std::move(factors);
  return d;
}

RingDescriptor RingDescriptor::table(std::vector<std::vector<Elem>> add, std::vector<std::vector<Elem>> mul,
                                     std::optional<Elem> identity, bool rng, std::string label) {
  RingDescriptor d;
  d.kind = Kind::TableRing;
  d.add_table = std::move(add);
  d.mul_table = std::move(mul);
  d.identity = identity;
  d.rng = rng;
  d.label = std::move(label);
  return d;
}

std::string RingDescriptor::name() const {
  switch (kind) {
    case Kind::PrimeField:
      return "GF(" + std::to_string(p) + ")";
    case Kind::GaloisField: {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < k; ++i) q *= p;
      return "GF(" + std::to_string(q) + ")";
    }
    case Kind::IntegersMod:
      return "Z_" + std::to_string(n);
    case Kind::MatrixRing:
      return "M_" + std::to_string(k) + "(" + children.at(0).name() + ")";
    case Kind::UpperTriangular:
      return "UT_" + std::to_string(k) + "(" + children.at(0).name() + ")";
    case Kind::Product:
      return join_names(children, " x ");
    case Kind::TableRing:
      return label.empty() ? "Table[" + std::to_string(add_table.size()) + "]" : label;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Number theory helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Remainder of a modulo monic b over GF(p); polynomials low degree first.
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const auto c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * b[i]) % p);
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const std::size_t deg = poly.size() - 1;
  const std::vector<std::uint32_t> f(poly.begin(), poly.end());
  // Exhaustive search over monic divisors of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> g(d + 1, 0);
      auto v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      const auto r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](auto c) { return c == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_irreducible(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw AlgebraError("GF(p^k) requires prime p, got " + std::to_string(p));
  if (k == 0) throw AlgebraError("GF(p^k) requires k >= 1");
  static std::mutex m;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> memo;
  std::lock_guard lock(m);
  if (auto it = memo.find({p, k}); it != memo.end()) return it->second;
  const std::uint64_t count = checked_pow(p, k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> f(k + 1, 0);
    auto v = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    f[k] = 1;
    if (is_irreducible(p, f)) return memo[{p, k}] = f;
  }
  throw AlgebraError("no irreducible polynomial found");  // unreachable for prime p
}

// ---------------------------------------------------------------------------
// Ring construction

RingPtr construct_ring(const RingDescriptor& d) { return Ring::create(d); }

RingPtr Ring::create(const RingDescriptor& d) {
  using K = RingDescriptor::Kind;
  const bool cacheable = d.kind != K::TableRing;
  std::string key;
  if (cacheable) {
    key = descriptor_key(d);
    std::lock_guard lock(cache_mutex());
    if (auto it = ring_cache().find(key); it != ring_cache().end()) return it->second;
  }

  std::shared_ptr<Ring> r(new Ring());
  r->desc_ = d;
  switch (d.kind) {
    case K::PrimeField:
      if (!is_prime(d.p)) throw AlgebraError("PrimeField requires prime p, got " + std::to_string(d.p));
      r->size_ = d.p;
      r->arith_ = std::make_unique<ModArith>(d.p);
      r->identity_ = 1;
      r->moduli_ = std::vector<std::uint32_t>{d.p};
      break;
    case K::IntegersMod:
      if (d.n < 2) throw AlgebraError("IntegersMod requires n >= 2");
      r->size_ = d.n;
      r->arith_ = std::make_unique<ModArith>(d.n);
      r->identity_ = 1;
      r->moduli_ = std::vector<std::uint32_t>{d.n};
      break;
    case K::GaloisField: {
      if (!is_prime(d.p)) throw AlgebraError("GaloisField requires prime p, got " + std::to_string(d.p));
      if (d.k < 1) throw AlgebraError("GaloisField requires k >= 1");
      auto poly = d.poly.empty() ? default_irreducible(d.p, d.k) : d.poly;
      if (poly.size() != d.k + 1 || poly.back() != 1)
        throw AlgebraError("GaloisField modulus must be monic of degree " + std::to_string(d.k));
      for (auto c : poly)
        if (c >= d.p) throw AlgebraError("GaloisField modulus coefficient out of range");
      if (!is_irreducible(d.p, poly)) throw AlgebraError("GaloisField modulus is reducible over GF(" + std::to_string(d.p) + ")");
      r->desc_.poly = poly;
      r->size_ = checked_pow(d.p, d.k);
      r->arith_ = std::make_unique<GaloisArith>(d.p, d.k, poly);
      r->identity_ = 1;
      r->moduli_ = std::vector<std::uint32_t>(d.k, d.p);
      break;
    }
    case K::MatrixRing:
    case K::UpperTriangular: {
      if (d.children.size() != 1) throw AlgebraError("matrix constructor needs exactly one inner ring");
      if (d.k < 1) throw AlgebraError("matrix dimension must be >= 1");
      r->inner_ = Ring::create(d.children[0]);
      if (!r->inner_->has_identity()) throw AlgebraError("matrix rings require a unital inner ring");
      const bool upper = d.kind == K::UpperTriangular;
      const std::uint64_t cells = upper ? std::uint64_t{d.k} * (d.k + 1) / 2 : std::uint64_t{d.k} * d.k;
      r->size_ = checked_pow(r->inner_->size(), cells);
      auto arith = std::make_unique<MatrixArith>(r->inner_, d.k, upper);
      std::vector<Elem> id(arith->positions.size(), 0);
      for (std::size_t s = 0; s < id.size(); ++s)
        if (arith->positions[s].first == arith->positions[s].second) id[s] = r->inner_->one();
      r->identity_ = arith->encode(id);
      if (const auto& im = r->inner_->additive_moduli()) {
        std::vector<std::uint32_t> m;
        for (std::uint64_t s = 0; s < cells; ++s) m.insert(m.end(), im->begin(), im->end());
        r->moduli_ = m;
      }
      r->arith_ = std::move(arith);
      break;
    }
    case K::Product: {
      if (d.children.empty()) throw AlgebraError("Product needs at least one factor");
      std::uint64_t size = 1;
      std::vector<Elem> ones;
      bool unital = true;
      std::vector<std::uint32_t> m;
      bool all_moduli = true;
      for (const auto& c : d.children) {
        auto f = Ring::create(c);
        size *= f->size();
        if (size > (std::uint64_t{1} << 48)) throw BoundExceeded("product ring too large");
        unital = unital && f->has_identity();
        ones.push_back(f->has_identity() ? f->one() : 0);
        if (f->additive_moduli())
          m.insert(m.end(), f->additive_moduli()->begin(), f->additive_moduli()->end());
        else
          all_moduli = false;
        r->factors_.push_back(std::move(f));
      }
      r->size_ = size;
      auto arith = std::make_unique<ProductArith>(r->factors_);
      if (unital) {
        Elem id = 0;
        for (std::size_t s = 0; s < ones.size(); ++s) id += ones[s] * arith->radix_pow[s];
        r->identity_ = id;
      }
      if (all_moduli) r->moduli_ = m;
      r->arith_ = std::move(arith);
      break;
    }
    case K::TableRing: {
      const auto n = d.add_table.size();
      if (n == 0 || d.mul_table.size() != n) throw AlgebraError("TableRing tables must be square and of equal size");
      for (std::size_t i = 0; i < n; ++i) {
        if (d.add_table[i].size() != n || d.mul_table[i].size() != n)
          throw AlgebraError("TableRing tables must be square and of equal size");
        for (std::size_t j = 0; j < n; ++j)
          if (d.add_table[i][j] >= n || d.mul_table[i][j] >= n)
            throw AlgebraError("TableRing table entry out of range (not closed)");
      }
      const auto report = verify_table_axioms(d.add_table, d.mul_table);
      for (const auto& c : report.checks)
        if (!c.passed && c.axiom != "multiplicative identity")
          throw AlgebraError("TableRing fails axiom: " + c.axiom);
      if (d.identity) {
        if (!report.identity || *report.identity != *d.identity)
          throw AlgebraError("TableRing declared identity is not a multiplicative identity");
      }
      if (!report.identity && !d.rng) throw AlgebraError("TableRing has no multiplicative identity and is not flagged rng");
      r->size_ = n;
      r->identity_ = report.identity;
      r->add_table_.resize(n * n);
      r->mul_table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          r->add_table_[i * n + j] = d.add_table[i][j];
          r->mul_table_[i * n + j] = d.mul_table[i][j];
        }
      break;
    }
  }
  r->finish();
  if (cacheable) {
    std::lock_guard lock(cache_mutex());
    auto [it, inserted] = ring_cache().emplace(key, r);
    return it->second;
  }
  return r;
}

void Ring::finish() {
  const std::size_t n = size_;
  if (arith_ && n <= kTableLimit) {
    add_table_.resize(n * n);
    mul_table_.resize(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        add_table_[a * n + b] = arith_->add(a, b);
        mul_table_[a * n + b] = arith_->mul(a, b);
      }
  }
  if (!add_table_.empty()) {
    neg_table_.assign(n, 0);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (add_table_[a * n + b] == 0) {
          neg_table_[a] = b;
          break;
        }
  }

  // Additive generators, identity first.
  if (n <= (std::size_t{1} << 22)) {
    std::vector<char> in(n, 0);
    std::vector<Elem> members{0};
    in[0] = 1;
    auto extend = [&](Elem g) {
      const auto old = members;
      Elem m = g;
      while (!in[m]) {
        for (auto h : old) {
          const auto x = add(h, m);
          in[x] = 1;
          members.push_back(x);
        }
        m = add(m, g);
      }
    };
    if (identity_ && !in[*identity_]) {
      generators_.push_back(*identity_);
      extend(*identity_);
    }
    for (Elem a = 0; a < n && members.size() < n; ++a)
      if (!in[a]) {
        generators_.push_back(a);
        extend(a);
      }
  } else if (moduli_) {
    // Digit unit vectors.
    Elem w = 1;
    for (std::size_t s = moduli_->size(); s-- > 0;) {
      generators_.push_back(w);
      w *= (*moduli_)[s];
    }
    std::reverse(generators_.begin(), generators_.end());
  } else {
    throw BoundExceeded("ring too large for generator computation");
  }

  auto order = [&](Elem a) {
    std::uint64_t t = 1;
    for (Elem x = a; x != 0; x = add(x, a)) ++t;
    return t;
  };
  if (identity_) {
    characteristic_ = order(*identity_);
  } else {
    std::uint64_t l = 1;
    for (auto g : generators_) l = std::lcm(l, order(g));
    characteristic_ = l;
  }
}

Elem Ring::one() const {
  if (!identity_) throw AlgebraError(name() + " has no multiplicative identity");
  return *identity_;
}

Elem Ring::times(std::uint64_t t, Elem a) const {
  Elem r = 0;
  Elem base = a;
  while (t) {
    if (t & 1) r = add(r, base);
    base = add(base, base);
    t >>= 1;
  }
  return r;
}

std::uint32_t Ring::matrix_dim() const {
  if (desc_.kind != RingDescriptor::Kind::MatrixRing && desc_.kind != RingDescriptor::Kind::UpperTriangular)
    throw AlgebraError(name() + " is not a matrix ring");
  return desc_.k;
}

const RingPtr& Ring::inner() const {
  if (!inner_) throw AlgebraError(name() + " has no inner ring");
  return inner_;
}

std::vector<Elem> Ring::entries(Elem a) const {
  const auto* m = dynamic_cast<const MatrixArith*>(arith_.get());
  if (!m) throw AlgebraError(name() + " is not a matrix ring");
  std::vector<Elem> stored;
  m->decode(a, stored);
  std::vector<Elem> full(static_cast<std::size_t>(m->k) * m->k, 0);
  for (std::size_t s = 0; s < stored.size(); ++s)
    full[m->positions[s].first * m->k + m->positions[s].second] = stored[s];
  return full;
}

Elem Ring::entry(Elem a, std::size_t row, std::size_t col) const {
  const auto* m = dynamic_cast<const MatrixArith*>(arith_.get());
  if (!m) throw AlgebraError(name() + " is not a matrix ring");
  const int s = m->slot.at(row * m->k + col);
  if (s < 0) return 0;
  const auto q = static_cast<Elem>(m->inner->size());
  return (a / m->radix_pow[s]) % q;
}

Elem Ring::from_entries(std::span<const Elem> full) const {
  const auto* m = dynamic_cast<const MatrixArith*>(arith_.get());
  if (!m) throw AlgebraError(name() + " is not a matrix ring");
  if (full.size() != static_cast<std::size_t>(m->k) * m->k) throw AlgebraError("wrong number of matrix entries");
  std::vector<Elem> stored(m->positions.size());
  for (std::size_t i = 0; i < m->k; ++i)
    for (std::size_t j = 0; j < m->k; ++j) {
      const auto v = full[i * m->k + j];
      if (v >= m->inner->size()) throw AlgebraError("matrix entry out of range");
      const int s = m->slot[i * m->k + j];
      if (s < 0) {
        if (v != 0) throw AlgebraError("nonzero entry below the diagonal of an upper-triangular matrix");
        continue;
      }
      stored[s] = v;
    }
  return m->encode(stored);
}

std::vector<Elem> Ring::components(Elem a) const {
  const auto* pa = dynamic_cast<const ProductArith*>(arith_.get());
  if (!pa) throw AlgebraError(name() + " is not a product ring");
  std::vector<Elem> out(pa->factors.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = pa->comp(a, s);
  return out;
}

Elem Ring::from_components(std::span<const Elem> comps) const {
  const auto* pa = dynamic_cast<const ProductArith*>(arith_.get());
  if (!pa) throw AlgebraError(name() + " is not a product ring");
  if (comps.size() != pa->factors.size()) throw AlgebraError("wrong number of product components");
  Elem r = 0;
  for (std::size_t s = 0; s < comps.size(); ++s) r += comps[s] * pa->radix_pow[s];
  return r;
}

bool Ring::is_commutative() const {
  const auto& g = generators_;
  for (auto a : g)
    for (auto b : g)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool Ring::is_field() const {
  std::call_once(field_once_, [this] {
    using K = RingDescriptor::Kind;
    switch (desc_.kind) {
      case K::PrimeField:
      case K::GaloisField:
        is_field_ = true;
        return;
      case K::IntegersMod:
        is_field_ = is_prime(desc_.n);
        return;
      case K::Product:
        if (factors_.size() > 1) {
          is_field_ = false;
          return;
        }
        break;
      default:
        break;
    }
    if (!identity_ || size_ < 2 || !is_commutative() || size_ > kUnitScanLimit) {
      is_field_ = false;
      return;
    }
    is_field_ = units().size() == size_ - 1;
  });
  return is_field_;
}

std::optional<Elem> Ring::try_inverse(Elem a) const {
  if (!identity_) return std::nullopt;
  if (size_ > kUnitScanLimit) {
    if (desc_.kind == RingDescriptor::Kind::GaloisField || desc_.kind == RingDescriptor::Kind::PrimeField) {
      if (a == 0) return std::nullopt;
      // a^(q-2)
      std::uint64_t e = size_ - 2;
      Elem r = one(), base = a;
      while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
      }
      return r;
    }
    throw BoundExceeded("unit search on " + name() + " exceeds the scan limit");
  }
  std::call_once(inverse_once_, [this] {
    inverse_table_.assign(size_, static_cast<Elem>(size_));
    const Elem e = *identity_;
    for (Elem x = 0; x < size_; ++x) {
      if (inverse_table_[x] != size_) continue;
      for (Elem y = 0; y < size_; ++y)
        if (mul(x, y) == e && mul(y, x) == e) {
          inverse_table_[x] = y;
          inverse_table_[y] = x;
          break;
        }
    }
  });
  const auto inv = inverse_table_[a];
  if (inv == size_) return std::nullopt;
  return inv;
}

Elem Ring::inverse(Elem a) const {
  auto r = try_inverse(a);
  if (!r) throw AlgebraError("element " + std::to_string(a) + " is not a unit in " + name());
  return *r;
}

const std::vector<Elem>& Ring::units() const {
  std::call_once(units_once_, [this] {
    if (!identity_) return;
    if (size_ > kUnitScanLimit) throw BoundExceeded("unit enumeration on " + name() + " exceeds the scan limit");
    for (Elem x = 0; x < size_; ++x)
      if (try_inverse(x)) units_.push_back(x);
  });
  return units_;
}

bool is_commutative(const Ring& r) { return r.is_commutative(); }

// ---------------------------------------------------------------------------
// Axiom verification

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool AxiomReport::passed(const std::string& axiom) const {
  for (const auto& c : checks)
    if (c.axiom == axiom) return c.passed;
  return false;
}

namespace {

template <class Add, class Mul>
AxiomReport check_axioms(std::size_t n, Add add, Mul mul, const std::vector<Elem>& gens, bool exhaustive) {
  AxiomReport rep;
  rep.method = exhaustive ? "exhaustive" : "generator-reduced";
  auto fail = [&](const std::string& name, std::vector<Elem> w) {
    for (auto& c : rep.checks)
      if (c.axiom == name) {
        if (c.passed) {
          c.passed = false;
          c.witness = std::move(w);
        }
        return;
      }
  };
  for (const char* a : {"additive identity", "additive inverses", "additive commutativity", "additive associativity",
                        "left distributivity", "right distributivity", "multiplicative associativity",
                        "multiplicative identity"})
    rep.checks.push_back({a, true, {}});

  std::vector<Elem> all(n);
  std::iota(all.begin(), all.end(), Elem{0});
  const auto& reduced = exhaustive ? all : gens;

  for (Elem a = 0; a < n; ++a) {
    if (add(0, a) != a || add(a, 0) != a) fail("additive identity", {a});
    for (auto b : reduced)
      if (add(a, b) != add(b, a)) fail("additive commutativity", {a, b});
  }
  // In reduced mode it suffices that each generator has finite additive order.
  for (auto a : reduced) {
    bool has_inv = false;
    if (exhaustive) {
      for (Elem b = 0; b < n && !has_inv; ++b) has_inv = add(a, b) == 0;
    } else {
      Elem m = a;
      for (std::size_t t = 0; t <= n && !has_inv; ++t, m = add(m, a)) has_inv = add(m, a) == 0 || m == 0;
    }
    if (!has_inv) fail("additive inverses", {a});
  }
  for (auto a : reduced)
    for (auto b : reduced)
      for (auto c : reduced)
        if (add(add(a, b), c) != add(a, add(b, c))) fail("additive associativity", {a, b, c});

  for (auto a : reduced)
    for (Elem b = 0; b < n; ++b)
      for (auto c : reduced) {
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("left distributivity", {a, b, c});
        if (mul(add(b, c), a) != add(mul(b, a), mul(c, a))) fail("right distributivity", {a, b, c});
      }
  for (auto a : reduced)
    for (auto b : reduced)
      for (auto c : reduced)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplicative associativity", {a, b, c});

  for (Elem e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < reduced.size() && ok; ++i) ok = mul(e, reduced[i]) == reduced[i] && mul(reduced[i], e) == reduced[i];
    if (ok) {
      rep.identity = e;
      break;
    }
  }
  if (!rep.identity) fail("multiplicative identity", {});
  return rep;
}

std::vector<Elem> greedy_generators(std::size_t n, const std::function<Elem(Elem, Elem)>& add) {
  std::vector<char> in(n, 0);
  std::vector<Elem> members{0}, gens;
  in[0] = 1;
  for (Elem a = 0; a < n && members.size() < n; ++a) {
    if (in[a]) continue;
    gens.push_back(a);
    const auto old = members;
    Elem m = a;
    std::size_t guard = 0;
    while (!in[m] && guard++ <= n) {
      for (auto h : old) {
        const auto x = add(h, m);
        if (!in[x]) {
          in[x] = 1;
          members.push_back(x);
        }
      }
      m = add(m, a);
    }
  }
  return gens;
}

}  // namespace

AxiomReport verify_ring_axioms(const Ring& r, std::size_t bound) {
  if (r.size() > bound) throw BoundExceeded("axiom check bound exceeded for " + r.name());
  const bool exhaustive = r.size() <= 256;
  return check_axioms(
      r.size(), [&](Elem a, Elem b) { return r.add(a, b); }, [&](Elem a, Elem b) { return r.mul(a, b); },
      r.additive_generators(), exhaustive);
}

AxiomReport verify_table_axioms(const std::vector<std::vector<Elem>>& add, const std::vector<std::vector<Elem>>& mul) {
  const std::size_t n = add.size();
  auto a = [&](Elem x, Elem y) { return add[x][y]; };
  auto m = [&](Elem x, Elem y) { return mul[x][y]; };
  const bool exhaustive = n <= 256;
  std::vector<Elem> gens;
  if (!exhaustive) gens = greedy_generators(n, a);
  return check_axioms(n, a, m, gens, exhaustive);
}

RingDescriptor truncated_polynomial_ring(const RingDescriptor& base, std::uint32_t m) {
  if (m < 1) throw AlgebraError("truncated polynomial ring needs m >= 1");
  const auto R = Ring::create(base);
  if (!R->is_commutative()) throw AlgebraError("truncated polynomial ring needs a commutative base");
  const std::size_t q = R->size();
  const std::uint64_t n = checked_pow(q, m);
  if (n > 4096) throw BoundExceeded("truncated polynomial ring too large for a table");
  auto decode = [&](std::uint64_t a) {
    std::vector<Elem> c(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      c[i] = static_cast<Elem>(a % q);
      a /= q;
    }
    return c;
  };
  auto encode = [&](const std::vector<Elem>& c) {
    std::uint64_t a = 0;
    for (std::uint32_t i = m; i-- > 0;) a = a * q + c[i];
    return static_cast<Elem>(a);
  };
  std::vector<std::vector<Elem>> add(n, std::vector<Elem>(n)), mul(n, std::vector<Elem>(n));
  for (std::uint64_t a = 0; a < n; ++a) {
    const auto x = decode(a);
    for (std::uint64_t b = 0; b < n; ++b) {
      const auto y = decode(b);
      std::vector<Elem> s(m), p(m, 0);
      for (std::uint32_t i = 0; i < m; ++i) s[i] = R->add(x[i], y[i]);
      for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; i + j < m; ++j) p[i + j] = R->add(p[i + j], R->mul(x[i], y[j]));
      add[a][b] = encode(s);
      mul[a][b] = encode(p);
    }
  }
  std::vector<Elem> one(m, 0);
  one[0] = R->one();
  return RingDescriptor::table(std::move(add), std::move(mul), encode(one), false,
                               base.name() + "[x]/(x^" + std::to_string(m) + ")");
}

}  // namespace netring
