#include "netring/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "netring/catalog.hpp"
#include "netring/transforms.hpp"

namespace netring {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved:
      return "solved";
    case SolveStatus::Unsolvable:
      return "exhausted-unsolvable";
    case SolveStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Static structure of the search: which edges are fixed, searched globally, or
// searched inside a single receiver's check.
struct Plan {
  std::vector<std::size_t> topo;
  std::vector<char> forced, dead;
  std::vector<int> owner;  // receiver slot of a local edge, -1 otherwise
  std::vector<std::size_t> search;
  std::vector<std::size_t> stage;  // per edge
  std::vector<std::vector<std::size_t>> stage_forced;
  std::vector<std::vector<std::size_t>> stage_slots;
  std::vector<std::size_t> slot_node;
  std::vector<std::vector<std::size_t>> slot_messages;
  std::vector<std::vector<std::size_t>> slot_local;  // local edges of the slot, topological
  /// The slot's only searched local edge when it enters the receiver directly, else -1.
  std::vector<long> slot_last;
};

constexpr std::size_t kClosed = std::numeric_limits<std::size_t>::max();

Plan make_plan(const Network& net, bool normalize) {
  require_valid(net);
  Plan p;
  const auto E = net.edges().size();
  p.topo = *net.edge_order();
  std::map<std::size_t, std::size_t> slot_of;
  for (const auto& d : net.demands()) {
    const auto v = net.node_index(d.receiver);
    auto [it, fresh] = slot_of.emplace(v, p.slot_node.size());
    if (fresh) {
      p.slot_node.push_back(v);
      p.slot_messages.emplace_back();
    }
    auto& msgs = p.slot_messages[it->second];
    for (const auto& x : d.messages) {
      const auto mi = net.message_index(x);
      if (std::find(msgs.begin(), msgs.end(), mi) == msgs.end()) msgs.push_back(mi);
    }
  }
  const auto S = p.slot_node.size();
  std::vector<std::vector<char>> recv(E, std::vector<char>(S, 0));
  for (auto it = p.topo.rbegin(); it != p.topo.rend(); ++it) {
    const auto e = *it;
    const auto h = net.head_index(e);
    if (auto s = slot_of.find(h); s != slot_of.end()) recv[e][s->second] = 1;
    for (auto f : net.out_edges(h))
      for (std::size_t s = 0; s < S; ++s) recv[e][s] |= recv[f][s];
  }
  p.forced.assign(E, 0);
  p.dead.assign(E, 0);
  p.owner.assign(E, -1);
  for (std::size_t e = 0; e < E; ++e) {
    const auto cnt = std::count(recv[e].begin(), recv[e].end(), 1);
    if (cnt == 0) {
      p.dead[e] = 1;
      continue;
    }
    p.forced[e] = normalize && net.edge_inputs(e).size() == 1;
    if (cnt == 1) p.owner[e] = static_cast<int>(std::find(recv[e].begin(), recv[e].end(), 1) - recv[e].begin());
  }
  p.stage.assign(E, 0);
  p.slot_local.assign(S, {});
  for (auto e : p.topo) {
    if (p.dead[e]) continue;
    if (p.owner[e] >= 0) {
      p.slot_local[p.owner[e]].push_back(e);
    } else if (!p.forced[e]) {
      p.search.push_back(e);
    }
  }
  const auto stages = p.search.size() + 1;
  p.stage_forced.assign(stages, {});
  p.stage_slots.assign(stages, {});
  std::vector<std::size_t> pos(E, 0);
  for (std::size_t i = 0; i < p.search.size(); ++i) pos[p.search[i]] = i;
  for (auto e : p.topo) {
    if (p.dead[e]) continue;
    std::size_t st = 0;
    for (const auto& in : net.edge_inputs(e))
      if (!in.is_message) st = std::max(st, p.stage[in.index]);
    if (p.owner[e] < 0 && !p.forced[e]) st = pos[e] + 1;
    p.stage[e] = st;
    if (p.owner[e] < 0 && p.forced[e]) p.stage_forced[st].push_back(e);
  }
  p.slot_last.assign(S, -1);
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<std::size_t> free;
    for (auto e : p.slot_local[s])
      if (!p.forced[e]) free.push_back(e);
    if (free.size() == 1 && net.head_index(free[0]) == p.slot_node[s]) p.slot_last[s] = static_cast<long>(free[0]);
  }
  for (std::size_t s = 0; s < S; ++s) {
    std::size_t st = 0;
    for (auto e : net.in_edges(p.slot_node[s])) st = std::max(st, p.stage[e]);
    p.stage_slots[st].push_back(s);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Rank engine: fields and matrix rings over fields. An edge of a code over
// M_k(F) carries a k x (k m) matrix over F; only its row space matters.

struct Space {
  std::uint32_t rank = 0;
  std::vector<Elem> rows;  // rank x N, reduced row echelon form
  std::vector<std::uint32_t> piv;
};

struct RepList {
  std::once_flag once;
  bool too_many = false;
  std::size_t count = 0;
  std::vector<std::uint32_t> dims;
  std::vector<Elem> data;  // concatenated r x s matrices
  std::vector<std::size_t> offset;
};

class RankEngine {
 public:
  using State = Space;
  struct Ctx {
    Space basis;
    const RepList* reps = nullptr;
  };

  static constexpr std::size_t kRepLimit = std::size_t{1} << 22;

  RankEngine(const Network& net, RingPtr ring, bool normalize) : net_(net), ring_(std::move(ring)), normalize_(normalize) {
    if (ring_->is_matrix_ring()) {
      field_ = ring_->inner();
      k_ = ring_->matrix_dim();
    } else {
      field_ = ring_;
      k_ = 1;
    }
    N_ = k_ * net.messages().size();
    q_ = field_->size();
    inv_.assign(q_, 0);
    for (Elem a = 1; a < q_; ++a) inv_[a] = field_->inverse(a);
    reps_.resize(N_ + 1);
    for (auto& r : reps_) r = std::make_unique<RepList>();
  }

  static bool applicable(const Ring& r) {
    if (r.is_matrix_ring()) return r.inner()->is_field();
    return r.is_field();
  }

  std::uint32_t k() const { return k_; }
  const RingPtr& field() const { return field_; }

  bool insert(Space& s, std::vector<Elem> v) const {
    const auto& F = *field_;
    for (std::uint32_t j = 0; j < s.rank; ++j) {
      const auto c = v[s.piv[j]];
      if (c == 0) continue;
      const Elem* row = &s.rows[static_cast<std::size_t>(j) * N_];
      const auto nc = F.neg(c);
      for (std::size_t x = s.piv[j]; x < N_; ++x)
        if (row[x]) v[x] = F.add(v[x], F.mul(nc, row[x]));
    }
    std::size_t lead = 0;
    while (lead < N_ && v[lead] == 0) ++lead;
    if (lead == N_) return false;
    const auto iv = inv_[v[lead]];
    for (std::size_t x = lead; x < N_; ++x) v[x] = F.mul(iv, v[x]);
    for (std::uint32_t j = 0; j < s.rank; ++j) {
      Elem* row = &s.rows[static_cast<std::size_t>(j) * N_];
      const auto c = row[lead];
      if (c == 0) continue;
      const auto nc = F.neg(c);
      for (std::size_t x = lead; x < N_; ++x)
        if (v[x]) row[x] = F.add(row[x], F.mul(nc, v[x]));
    }
    std::uint32_t at = 0;
    while (at < s.rank && s.piv[at] < lead) ++at;
    s.rows.insert(s.rows.begin() + static_cast<std::ptrdiff_t>(at) * N_, v.begin(), v.end());
    s.piv.insert(s.piv.begin() + at, static_cast<std::uint32_t>(lead));
    ++s.rank;
    return true;
  }

  bool contains_unit(const Space& s, std::size_t col) const {
    const auto& F = *field_;
    std::vector<Elem> v(N_, 0);
    v[col] = F.one();
    for (std::uint32_t j = 0; j < s.rank; ++j) {
      const auto c = v[s.piv[j]];
      if (c == 0) continue;
      const Elem* row = &s.rows[static_cast<std::size_t>(j) * N_];
      const auto nc = F.neg(c);
      for (std::size_t x = s.piv[j]; x < N_; ++x)
        if (row[x]) v[x] = F.add(v[x], F.mul(nc, row[x]));
    }
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x == 0; });
  }

  void add_input(Space& s, const NodeInput& in, const std::vector<State>& st) const {
    if (in.is_message) {
      for (std::uint32_t i = 0; i < k_; ++i) {
        std::vector<Elem> u(N_, 0);
        u[in.index * k_ + i] = field_->one();
        insert(s, std::move(u));
      }
      return;
    }
    const auto& src = st[in.index];
    for (std::uint32_t j = 0; j < src.rank; ++j)
      insert(s, std::vector<Elem>(src.rows.begin() + static_cast<std::ptrdiff_t>(j) * N_,
                                  src.rows.begin() + static_cast<std::ptrdiff_t>(j + 1) * N_));
  }

  Ctx prepare(std::size_t e, const std::vector<State>& st) const {
    Ctx c;
    for (const auto& in : net_.edge_inputs(e)) add_input(c.basis, in, st);
    c.reps = &reps(c.basis.rank);
    return c;
  }

  std::size_t count(const Ctx& c) const { return c.reps->count; }

  State apply(const Ctx& c, std::size_t idx) const {
    const auto& F = *field_;
    const auto s = c.basis.rank;
    const auto r = c.reps->dims[idx];
    const Elem* P = &c.reps->data[c.reps->offset[idx]];
    Space out;
    out.rank = r;
    out.rows.assign(static_cast<std::size_t>(r) * N_, 0);
    for (std::uint32_t i = 0; i < r; ++i) {
      Elem* dst = &out.rows[static_cast<std::size_t>(i) * N_];
      bool lead = false;
      for (std::uint32_t j = 0; j < s; ++j) {
        const auto a = P[i * s + j];
        if (a == 0) continue;
        if (!lead) {
          out.piv.push_back(c.basis.piv[j]);
          lead = true;
        }
        const Elem* src = &c.basis.rows[static_cast<std::size_t>(j) * N_];
        for (std::size_t x = 0; x < N_; ++x)
          if (src[x]) dst[x] = F.add(dst[x], F.mul(a, src[x]));
      }
    }
    return out;
  }

  State forced(std::size_t e, const std::vector<State>& st) const {
    Space s;
    for (const auto& in : net_.edge_inputs(e)) add_input(s, in, st);
    return s;
  }

  bool decodes(std::size_t node, const std::vector<std::size_t>& msgs, const std::vector<State>& st) const {
    Space s;
    for (const auto& in : net_.inputs(node)) add_input(s, in, st);
    if (s.rank < msgs.size() * k_) return false;
    for (auto t : msgs)
      for (std::uint32_t i = 0; i < k_; ++i)
        if (!contains_unit(s, t * k_ + i)) return false;
    return true;
  }

  static constexpr bool kCloses = true;

  // A last local edge e into the receiver can carry any subspace of its input
  // space W of dimension <= k. With U the span of the other inputs and T the
  // demanded unit rows, a choice exists iff T lies in U + W and
  // dim(U + T) - dim(U) <= k.
  bool closes(std::size_t e, std::size_t node, const std::vector<std::size_t>& msgs, const std::vector<State>& st) const {
    Space U;
    for (const auto& in : net_.inputs(node))
      if (in.is_message || in.index != e) add_input(U, in, st);
    Space UW = U;
    for (const auto& in : net_.edge_inputs(e)) add_input(UW, in, st);
    const auto base = U.rank;
    for (auto t : msgs)
      for (std::uint32_t i = 0; i < k_; ++i) {
        std::vector<Elem> u(N_, 0);
        u[t * k_ + i] = field_->one();
        if (!contains_unit(UW, t * k_ + i)) return false;
        insert(U, std::move(u));
        if (U.rank - base > k_) return false;
      }
    return true;
  }

  // The subspace realising closes(): one lift into W per demanded row missing from U.
  State close(std::size_t e, std::size_t node, const std::vector<std::size_t>& msgs, const std::vector<State>& st) const {
    const auto& F = *field_;
    Space X;
    for (const auto& in : net_.inputs(node))
      if (in.is_message || in.index != e) add_input(X, in, st);
    Space W;
    for (const auto& in : net_.edge_inputs(e)) add_input(W, in, st);
    Space V;
    for (auto t : msgs)
      for (std::uint32_t i = 0; i < k_; ++i) {
        const auto col = t * k_ + i;
        if (contains_unit(X, col)) continue;
        Matrix stack;
        for (std::uint32_t j = 0; j < X.rank; ++j)
          stack.emplace_back(X.rows.begin() + static_cast<std::ptrdiff_t>(j) * N_,
                             X.rows.begin() + static_cast<std::ptrdiff_t>(j + 1) * N_);
        for (std::uint32_t j = 0; j < W.rank; ++j)
          stack.emplace_back(W.rows.begin() + static_cast<std::ptrdiff_t>(j) * N_,
                             W.rows.begin() + static_cast<std::ptrdiff_t>(j + 1) * N_);
        Row u(N_, 0);
        u[col] = F.one();
        const auto x = solve_left(F, stack, u);
        if (!x) throw std::logic_error("rank engine: closing edge cannot reach a demanded row");
        Row w(N_, 0);
        for (std::uint32_t j = 0; j < W.rank; ++j) {
          const auto c = (*x)[X.rank + j];
          if (c == 0) continue;
          for (std::size_t y = 0; y < N_; ++y) w[y] = F.add(w[y], F.mul(c, stack[X.rank + j][y]));
        }
        insert(V, w);
        insert(X, std::move(w));
      }
    return V;
  }

  /// Concrete code realising the chosen row spaces.
  LinearCode build(const Plan& plan, const std::vector<State>& st) const {
    const auto& F = *field_;
    auto code = zero_code(net_, Module::regular(ring_));
    std::vector<Matrix> actual(net_.edges().size());
    auto input_matrix = [&](const NodeInput& in) {
      if (!in.is_message) return actual[in.index];
      Matrix a(k_, Row(N_, 0));
      for (std::uint32_t i = 0; i < k_; ++i) a[i][in.index * k_ + i] = F.one();
      return a;
    };
    auto to_element = [&](const std::vector<Row>& coeff_rows, std::size_t input) {
      if (!ring_->is_matrix_ring()) return coeff_rows[0][input];
      std::vector<Elem> entries(static_cast<std::size_t>(k_) * k_, 0);
      for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t c = 0; c < k_; ++c) entries[i * k_ + c] = coeff_rows[i][input * k_ + c];
      return ring_->from_entries(entries);
    };
    // Coefficient rows x (one per output row) with x * stack = wanted rows.
    auto solve_rows = [&](const std::vector<NodeInput>& ins, const Matrix& wanted, std::size_t arity) {
      Matrix stack;
      for (const auto& in : ins)
        for (auto& row : input_matrix(in)) stack.push_back(row);
      std::vector<Row> coeff(k_, Row(arity * k_, 0));
      for (std::size_t i = 0; i < wanted.size(); ++i) {
        auto x = solve_left(F, stack, wanted[i]);
        if (!x) throw std::logic_error("rank engine: chosen space not spanned by inputs");
        coeff[i] = *x;
      }
      return coeff;
    };
    for (auto e : plan.topo) {
      if (plan.dead[e]) continue;
      const auto& ins = net_.edge_inputs(e);
      if (plan.forced[e]) {
        code.edge_coeffs[e][0] = ring_->one();
        actual[e] = input_matrix(ins[0]);
        continue;
      }
      Matrix wanted;
      for (std::uint32_t j = 0; j < st[e].rank; ++j)
        wanted.emplace_back(st[e].rows.begin() + static_cast<std::ptrdiff_t>(j) * N_,
                            st[e].rows.begin() + static_cast<std::ptrdiff_t>(j + 1) * N_);
      const auto coeff = solve_rows(ins, wanted, ins.size());
      for (std::size_t i = 0; i < ins.size(); ++i) code.edge_coeffs[e][i] = to_element(coeff, i);
      actual[e] = wanted;
      actual[e].resize(k_, Row(N_, 0));
    }
    for (std::size_t d = 0; d < net_.demands().size(); ++d) {
      const auto& dem = net_.demands()[d];
      const auto& ins = net_.inputs(net_.node_index(dem.receiver));
      for (std::size_t t = 0; t < dem.messages.size(); ++t) {
        const auto mi = net_.message_index(dem.messages[t]);
        Matrix wanted(k_, Row(N_, 0));
        for (std::uint32_t i = 0; i < k_; ++i) wanted[i][mi * k_ + i] = F.one();
        const auto coeff = solve_rows(ins, wanted, ins.size());
        for (std::size_t i = 0; i < ins.size(); ++i) code.decodings[d][t][i] = to_element(coeff, i);
      }
    }
    return code;
  }

 private:
  const RepList& reps(std::uint32_t s) const {
    auto& rl = *reps_.at(s);
    std::call_once(rl.once, [&] { fill(rl, s); });
    if (rl.too_many)
      throw BoundExceeded("an edge has more than 2^22 candidate subspaces over " + ring_->name());
    return rl;
  }

  // Reduced row echelon r x s matrices: one per subspace of F^s of dimension r.
  void fill(RepList& rl, std::uint32_t s) const {
    const auto top = std::min<std::uint32_t>(k_, s);
    std::vector<std::uint32_t> dims;
    if (normalize_) {
      dims.push_back(top);
    } else {
      for (std::uint32_t r = top + 1; r-- > 0;) dims.push_back(r);
    }
    for (auto r : dims) {
      std::vector<std::uint32_t> piv(r);
      for (std::uint32_t i = 0; i < r; ++i) piv[i] = i;
      while (true) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free;
        for (std::uint32_t i = 0; i < r; ++i)
          for (std::uint32_t c = piv[i] + 1; c < s; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
        std::size_t combos = 1;
        for (std::size_t f = 0; f < free.size(); ++f) {
          combos *= q_;
          if (combos > kRepLimit) break;
        }
        if (rl.count + combos > kRepLimit) {
          rl.too_many = true;
          return;
        }
        std::vector<Elem> vals(free.size(), 0);
        for (std::size_t n = 0; n < combos; ++n) {
          std::vector<Elem> mat(static_cast<std::size_t>(r) * s, 0);
          for (std::uint32_t i = 0; i < r; ++i) mat[i * s + piv[i]] = field_->one();
          for (std::size_t f = 0; f < free.size(); ++f) mat[free[f].first * s + free[f].second] = vals[f];
          rl.offset.push_back(rl.data.size());
          rl.dims.push_back(r);
          rl.data.insert(rl.data.end(), mat.begin(), mat.end());
          ++rl.count;
          for (std::size_t f = free.size(); f-- > 0;) {
            if (++vals[f] < q_) break;
            vals[f] = 0;
          }
        }
        // Next pivot combination in lexicographic order.
        std::int64_t i = static_cast<std::int64_t>(r) - 1;
        while (i >= 0 && piv[i] == s - r + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (auto j = static_cast<std::uint32_t>(i) + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
      }
    }
  }

  const Network& net_;
  RingPtr ring_;
  RingPtr field_;
  bool normalize_;
  std::uint32_t k_ = 1;
  std::size_t N_ = 0;
  std::size_t q_ = 0;
  std::vector<Elem> inv_;
  mutable std::vector<std::unique_ptr<RepList>> reps_;
};

// ---------------------------------------------------------------------------
// Exhaustive engine: any ring with identity. Edges carry their transfer rows.

struct VecList {
  std::once_flag once;
  bool too_many = false;
  std::vector<Row> vecs;
};

class ExhaustiveEngine {
 public:
  using State = Row;
  struct Ctx {
    std::vector<Row> rows;
    const VecList* reps = nullptr;
  };

  static constexpr std::size_t kVectorLimit = std::size_t{1} << 22;

  ExhaustiveEngine(const Network& net, RingPtr ring, bool canonical)
      : net_(net), ring_(std::move(ring)), canonical_(canonical), m_(net.messages().size()) {
    std::size_t maxd = 0;
    for (std::size_t e = 0; e < net.edges().size(); ++e) maxd = std::max(maxd, net.edge_inputs(e).size());
    lists_.resize(maxd + 1);
    for (auto& l : lists_) l = std::make_unique<VecList>();
  }

  Row input_row(const NodeInput& in, const std::vector<State>& st) const {
    if (!in.is_message) return st[in.index];
    Row u(m_, 0);
    u[in.index] = ring_->one();
    return u;
  }

  Ctx prepare(std::size_t e, const std::vector<State>& st) const {
    Ctx c;
    for (const auto& in : net_.edge_inputs(e)) c.rows.push_back(input_row(in, st));
    c.reps = &list(c.rows.size());
    return c;
  }

  std::size_t count(const Ctx& c) const { return c.reps->vecs.size(); }

  State apply(const Ctx& c, std::size_t idx) const {
    const auto& R = *ring_;
    const auto& coeffs = c.reps->vecs[idx];
    Row acc(m_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < m_; ++j) acc[j] = R.add(acc[j], R.mul(coeffs[i], c.rows[i][j]));
    }
    return acc;
  }

  const Row& coefficients(const Ctx& c, std::size_t idx) const { return c.reps->vecs[idx]; }

  static constexpr bool kCloses = false;

  State forced(std::size_t e, const std::vector<State>& st) const { return input_row(net_.edge_inputs(e)[0], st); }

  std::optional<Row> find_decoding(const std::vector<Row>& rows, std::size_t t) const {
    const auto& R = *ring_;
    const auto s = rows.size();
    Row target(m_, 0);
    target[t] = R.one();
    Row D(s, 0);
    std::vector<Row> partial(s + 1, Row(m_, 0));
    // Depth-first over D_0, D_1, ... with running sums.
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
      if (i == s) return partial[s] == target;
      for (Elem a = 0; a < R.size(); ++a) {
        D[i] = a;
        for (std::size_t j = 0; j < m_; ++j) partial[i + 1][j] = R.add(partial[i][j], R.mul(a, rows[i][j]));
        if (rec(i + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return D;
    return std::nullopt;
  }

  bool decodes(std::size_t node, const std::vector<std::size_t>& msgs, const std::vector<State>& st) const {
    std::vector<Row> rows;
    for (const auto& in : net_.inputs(node)) rows.push_back(input_row(in, st));
    for (auto t : msgs) {
      bool seen = false;
      for (const auto& r : rows) seen = seen || r[t] != 0;
      if (!seen || !find_decoding(rows, t)) return false;
    }
    return true;
  }

 private:
  const VecList& list(std::size_t d) const {
    auto& l = *lists_.at(d);
    std::call_once(l.once, [&] { fill(l, d); });
    if (l.too_many) throw BoundExceeded("coefficient space of an edge over " + ring_->name() + " exceeds 2^22 vectors");
    return l;
  }

  void fill(VecList& l, std::size_t d) const {
    const auto n = ring_->size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      total *= n;
      if (total > kVectorLimit) {
        l.too_many = true;
        return;
      }
    }
    auto decode = [&](std::size_t idx) {
      Row v(d);
      for (std::size_t i = d; i-- > 0;) {
        v[i] = idx % n;
        idx /= n;
      }
      return v;
    };
    auto encode = [&](const Row& v) {
      std::size_t idx = 0;
      for (auto x : v) idx = idx * n + x;
      return idx;
    };
    if (!canonical_) {
      for (std::size_t i = 0; i < total; ++i) l.vecs.push_back(decode(i));
      return;
    }
    const auto& units = ring_->units();
    std::vector<char> seen(total, 0);
    for (std::size_t i = 0; i < total; ++i) {
      if (seen[i]) continue;
      const auto v = decode(i);
      l.vecs.push_back(v);
      for (auto u : units) {
        Row w(d);
        for (std::size_t j = 0; j < d; ++j) w[j] = ring_->mul(u, v[j]);
        seen[encode(w)] = 1;
      }
    }
  }

  const Network& net_;
  RingPtr ring_;
  bool canonical_;
  std::size_t m_;
  mutable std::vector<std::unique_ptr<VecList>> lists_;
};

// ---------------------------------------------------------------------------
// Depth-first search over the global edges, sharded on the first one.

struct Solution {
  std::vector<std::size_t> global;
  std::vector<std::vector<std::size_t>> local;
};

template <class Engine>
class Search {
 public:
  using State = typename Engine::State;

  Search(const Network& net, const Plan& plan, const Engine& eng, const SearchOptions& opts)
      : net_(net), plan_(plan), eng_(eng), opts_(opts), start_(Clock::now()) {}

  struct Outcome {
    std::optional<Solution> solution;
    bool budget = false;
    SearchStats stats;
  };

  Outcome run() {
    Worker w0(*this);
    w0.st.assign(net_.edges().size(), State{});
    Outcome out;
    if (!w0.advance(0)) {
      w0.flush();
      out.stats = stats();
      out.budget = budget_hit_;
      return out;
    }
    if (plan_.search.empty()) {
      ++leaves_;
      w0.flush();
      out.solution = Solution{{}, w0.local};
      out.stats = stats();
      return out;
    }
    const auto e0 = plan_.search[0];
    const auto ctx0 = eng_.prepare(e0, w0.st);
    const auto n0 = eng_.count(ctx0);
    w0.flush();
    unsigned threads = opts_.shards ? opts_.shards : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n0));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      Worker w(*this);
      while (!stop_all_.load()) {
        const auto i = next.fetch_add(1);
        if (i >= n0 || i > best_.load()) break;
        w.st = w0.st;
        w.local = w0.local;
        w.global.assign(plan_.search.size(), 0);
        w.prefix = i;
        w.global[0] = i;
        w.st[e0] = eng_.apply(ctx0, i);
        if (!w.count_node()) break;
        if (w.advance(1) && w.dfs(1)) {
          std::lock_guard lock(mu_);
          if (i < best_.load()) {
            best_.store(i);
            best_solution_ = Solution{w.global, w.local};
          }
        }
      }
      w.flush();
    };
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    out.solution = best_solution_;
    out.budget = budget_hit_.load();
    out.stats = stats();
    return out;
  }

 private:
  struct Worker {
    explicit Worker(Search& s) : s(s), local(s.plan_.slot_node.size()) {}
    Search& s;
    std::vector<State> st;
    std::vector<std::size_t> global;
    std::vector<std::vector<std::size_t>> local;
    std::size_t prefix = 0;
    std::uint64_t nodes = 0, prunes = 0, checks = 0, leaves = 0;

    void flush() {
      s.nodes_ += nodes;
      s.prunes_ += prunes;
      s.checks_ += checks;
      s.leaves_ += leaves;
      nodes = prunes = checks = leaves = 0;
    }

    bool aborted() const { return s.stop_all_.load() || s.best_.load() < prefix; }

    // Counts one node; false when the search must stop.
    bool count_node() {
      if (++nodes % 512 == 0) {
        const auto total = s.nodes_.fetch_add(nodes) + nodes;
        nodes = 0;
        if (total > s.opts_.node_budget ||
            (s.opts_.time_budget > 0 && seconds_since(s.start_) > s.opts_.time_budget)) {
          s.budget_hit_ = true;
          s.stop_all_ = true;
        }
      }
      return !aborted();
    }

    // Computes the forced edges of `stage` and checks the receivers that become decidable.
    bool advance(std::size_t stage) {
      for (auto e : s.plan_.stage_forced[stage]) st[e] = s.eng_.forced(e, st);
      for (auto slot : s.plan_.stage_slots[stage]) {
        ++checks;
        if (!check_slot(slot, 0)) {
          ++prunes;
          return false;
        }
      }
      return true;
    }

    bool check_slot(std::size_t slot, std::size_t i) {
      const auto& loc = s.plan_.slot_local[slot];
      if (i == 0) {
        local[slot].assign(loc.size(), 0);
        if constexpr (Engine::kCloses) {
          const auto last = s.plan_.slot_last[slot];
          if (last >= 0) {
            for (std::size_t j = 0; j < loc.size(); ++j) {
              if (s.plan_.forced[loc[j]]) {
                st[loc[j]] = s.eng_.forced(loc[j], st);
              } else {
                local[slot][j] = kClosed;
              }
            }
            if (!count_node()) return false;
            return s.eng_.closes(static_cast<std::size_t>(last), s.plan_.slot_node[slot], s.plan_.slot_messages[slot], st);
          }
        }
      }
      if (i == loc.size())
        return s.eng_.decodes(s.plan_.slot_node[slot], s.plan_.slot_messages[slot], st);
      const auto e = loc[i];
      if (s.plan_.forced[e]) {
        st[e] = s.eng_.forced(e, st);
        return check_slot(slot, i + 1);
      }
      const auto ctx = s.eng_.prepare(e, st);
      const auto n = s.eng_.count(ctx);
      for (std::size_t c = 0; c < n; ++c) {
        if (!count_node()) return false;
        st[e] = s.eng_.apply(ctx, c);
        local[slot][i] = c;
        if (check_slot(slot, i + 1)) return true;
      }
      return false;
    }

    bool dfs(std::size_t depth) {
      if (depth == s.plan_.search.size()) {
        ++leaves;
        return true;
      }
      const auto e = s.plan_.search[depth];
      const auto ctx = s.eng_.prepare(e, st);
      const auto n = s.eng_.count(ctx);
      for (std::size_t c = 0; c < n; ++c) {
        if (!count_node()) return false;
        st[e] = s.eng_.apply(ctx, c);
        global[depth] = c;
        if (advance(depth + 1) && dfs(depth + 1)) return true;
        if (aborted()) return false;
      }
      return false;
    }
  };

  SearchStats stats() const {
    SearchStats s;
    s.nodes = nodes_.load();
    s.prunes = prunes_.load();
    s.receiver_checks = checks_.load();
    s.leaves = leaves_.load();
    s.seconds = seconds_since(start_);
    return s;
  }

  const Network& net_;
  const Plan& plan_;
  const Engine& eng_;
  const SearchOptions& opts_;
  Clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0}, prunes_{0}, checks_{0}, leaves_{0};
  std::atomic<bool> budget_hit_{false}, stop_all_{false};
  std::atomic<std::size_t> best_{std::numeric_limits<std::size_t>::max()};
  std::mutex mu_;
  std::optional<Solution> best_solution_;
};

// Recomputes every edge state along a solution, in topological order.
template <class Engine, class OnEdge>
std::vector<typename Engine::State> replay(const Network& net, const Plan& plan, const Engine& eng, const Solution& sol,
                                           OnEdge on_edge) {
  std::vector<typename Engine::State> st(net.edges().size());
  std::vector<std::size_t> gpos(net.edges().size(), 0), lpos(net.edges().size(), 0);
  for (std::size_t i = 0; i < plan.search.size(); ++i) gpos[plan.search[i]] = i;
  for (const auto& loc : plan.slot_local) {
    for (std::size_t j = 0; j < loc.size(); ++j) lpos[loc[j]] = j;
  }
  for (auto e : plan.topo) {
    if (plan.dead[e]) continue;
    if (plan.forced[e]) {
      st[e] = eng.forced(e, st);
      continue;
    }
    const auto idx = plan.owner[e] < 0 ? sol.global.at(gpos[e]) : sol.local.at(plan.owner[e]).at(lpos[e]);
    if (idx == kClosed) continue;
    const auto ctx = eng.prepare(e, st);
    st[e] = eng.apply(ctx, idx);
    on_edge(e, ctx, idx);
  }
  if constexpr (Engine::kCloses) {
    for (std::size_t s = 0; s < plan.slot_last.size(); ++s) {
      const auto last = plan.slot_last[s];
      if (last < 0 || sol.local.at(s).at(lpos[last]) != kClosed) continue;
      st[last] = eng.close(static_cast<std::size_t>(last), plan.slot_node[s], plan.slot_messages[s], st);
    }
  }
  return st;
}

LinearCode build_exhaustive(const Network& net, const Plan& plan, const ExhaustiveEngine& eng, const RingPtr& ring,
                            const Solution& sol) {
  auto code = zero_code(net, Module::regular(ring));
  const auto st = replay(net, plan, eng, sol, [&](std::size_t e, const ExhaustiveEngine::Ctx& ctx, std::size_t idx) {
    code.edge_coeffs[e] = eng.coefficients(ctx, idx);
  });
  for (std::size_t e = 0; e < net.edges().size(); ++e)
    if (plan.forced[e] && !plan.dead[e]) code.edge_coeffs[e][0] = ring->one();
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    const auto& dem = net.demands()[d];
    std::vector<Row> rows;
    for (const auto& in : net.inputs(net.node_index(dem.receiver))) rows.push_back(eng.input_row(in, st));
    for (std::size_t t = 0; t < dem.messages.size(); ++t) {
      const auto D = eng.find_decoding(rows, net.message_index(dem.messages[t]));
      if (!D) throw std::logic_error("exhaustive engine: replayed solution does not decode");
      code.decodings[d][t] = *D;
    }
  }
  return code;
}

SolveResult finish(const Network& net, SolveResult res) {
  if (res.status == SolveStatus::Solved) {
    if (!res.code || !verify_solution(net, *res.code).solved)
      throw std::logic_error("solver produced a code that does not verify");
  }
  return res;
}

SolveResult direct_search(const Network& net, const RingPtr& ring, const SearchOptions& opts) {
  SolveResult res;
  bool rank = false;
  switch (opts.strategy) {
    case DecodeStrategy::Auto:
      rank = RankEngine::applicable(*ring);
      break;
    case DecodeStrategy::Rank:
      if (!RankEngine::applicable(*ring))
        throw AlgebraError("rank decoding needs a field or a matrix ring over a field, got " + ring->name());
      rank = true;
      break;
    case DecodeStrategy::Exhaustive:
      break;
  }
  const auto plan = make_plan(net, opts.normalize_degree_one_forwarding);
  auto fill = [&](auto& outcome) {
    res.stats = outcome.stats;
    if (outcome.solution) {
      res.status = SolveStatus::Solved;
    } else if (outcome.budget) {
      res.status = SolveStatus::BudgetExceeded;
      res.notes.push_back("node or time budget reached before the space was exhausted");
    } else {
      res.status = SolveStatus::Unsolvable;
    }
  };
  try {
    if (rank) {
      res.method = "rank search";
      RankEngine eng(net, ring, opts.normalize_degree_one_forwarding);
      Search<RankEngine> search(net, plan, eng, opts);
      auto outcome = search.run();
      fill(outcome);
      if (outcome.solution) {
        const auto st = replay(net, plan, eng, *outcome.solution, [](auto, const auto&, auto) {});
        res.code = eng.build(plan, st);
      }
    } else {
      res.method = "exhaustive search";
      ExhaustiveEngine eng(net, ring, opts.canonicalize_units);
      Search<ExhaustiveEngine> search(net, plan, eng, opts);
      auto outcome = search.run();
      fill(outcome);
      if (outcome.solution) res.code = build_exhaustive(net, plan, eng, ring, *outcome.solution);
    }
  } catch (const BoundExceeded& e) {
    res.status = SolveStatus::BudgetExceeded;
    res.code.reset();
    res.notes.push_back(e.what());
  }
  return finish(net, std::move(res));
}

std::optional<SolveResult> via_quotients(const Network& net, const RingPtr& ring, const SearchOptions& opts) {
  const auto& d = ring->descriptor();
  if (d.kind == RingDescriptor::Kind::Product && ring->factors().size() > 1) {
    SolveResult res;
    res.method = "factors";
    std::vector<LinearCode> codes;
    bool budget = false;
    for (const auto& f : ring->factors()) {
      auto sub = solve_scalar(net, f, opts);
      res.stats.nodes += sub.stats.nodes;
      res.stats.leaves += sub.stats.leaves;
      res.stats.prunes += sub.stats.prunes;
      res.stats.receiver_checks += sub.stats.receiver_checks;
      if (sub.status == SolveStatus::Unsolvable) {
        res.status = SolveStatus::Unsolvable;
        res.method = "factor " + f->name() + " unsolvable (" + sub.method + ")";
        return res;
      }
      if (sub.status == SolveStatus::BudgetExceeded) budget = true;
      if (sub.code) codes.push_back(*sub.code);
    }
    if (budget) {
      res.status = SolveStatus::BudgetExceeded;
      res.notes.push_back("a factor search hit the budget");
      return res;
    }
    auto code = zero_code(net, Module::regular(ring));
    auto combine = [&](auto pick) {
      std::vector<Elem> comps;
      for (const auto& c : codes) comps.push_back(pick(c));
      return ring->from_components(comps);
    };
    for (std::size_t e = 0; e < code.edge_coeffs.size(); ++e)
      for (std::size_t i = 0; i < code.edge_coeffs[e].size(); ++i)
        code.edge_coeffs[e][i] = combine([&](const LinearCode& c) { return c.edge_coeffs[e][i]; });
    for (std::size_t x = 0; x < code.decodings.size(); ++x)
      for (std::size_t t = 0; t < code.decodings[x].size(); ++t)
        for (std::size_t i = 0; i < code.decodings[x][t].size(); ++i)
          code.decodings[x][t][i] = combine([&](const LinearCode& c) { return c.decodings[x][t][i]; });
    res.status = SolveStatus::Solved;
    res.code = std::move(code);
    return res;
  }
  if (RankEngine::applicable(*ring) || ring->size() > 4096) return std::nullopt;
  try {
    const auto sr = simple_reduction(ring);
    const auto model = Ring::create(simple_model(sr.ring));
    auto sub = solve_scalar(net, model, opts);
    if (!sr.ideal.is_zero()) {
      if (sub.status != SolveStatus::Unsolvable) return std::nullopt;
      SolveResult res;
      res.status = SolveStatus::Unsolvable;
      res.method = "quotient by an ideal of size " + std::to_string(sr.ideal.size()) + " is " + model->name() +
                   ", unsolvable (" + sub.method + ")";
      res.stats = sub.stats;
      return res;
    }
    // Simple ring given by tables: work in its structured model.
    if (sub.status == SolveStatus::Unsolvable) {
      sub.method = "isomorphic to " + model->name() + ", unsolvable (" + sub.method + ")";
      return sub;
    }
    if (sub.status != SolveStatus::Solved) return std::nullopt;
    const auto iso = find_isomorphism(ring, model);
    if (!iso) return std::nullopt;
    std::vector<Elem> back(model->size(), 0);
    for (Elem a = 0; a < ring->size(); ++a) back[iso->map[a]] = a;
    RingHom inv{model, ring, back, true};
    sub.code = hom_lift(net, *sub.code, inv);
    sub.method = "isomorphic to " + model->name() + " (" + sub.method + ")";
    return sub;
  } catch (const BoundExceeded&) {
    return std::nullopt;
  }
}

}  // namespace

SolveResult solve_scalar(const Network& net, const RingPtr& ring, const SearchOptions& opts) {
  require_valid(net);
  if (!ring->has_identity()) throw AlgebraError("scalar linear codes need a ring with identity; " + ring->name() + " has none");
  if (opts.node_budget == 0) throw AlgebraError("node budget must be positive");
  if (opts.time_budget < 0) throw AlgebraError("time budget must be non-negative");
  const auto t0 = Clock::now();
  if (opts.reduce_via_quotients) {
    if (auto r = via_quotients(net, ring, opts)) {
      r->stats.seconds = seconds_since(t0);
      return finish(net, std::move(*r));
    }
  }
  return direct_search(net, ring, opts);
}

namespace {

// Upper bound on the number of global assignments of the rank search over M_k(F).
double rank_space_estimate(const Network& net, std::size_t q, std::uint32_t k, bool normalize) {
  const auto plan = make_plan(net, normalize);
  const auto N = static_cast<std::uint32_t>(k * net.messages().size());
  auto subspaces = [&](std::uint32_t s, std::uint32_t r) {
    // Gaussian binomial [s choose r]_q.
    double num = 1, den = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
      num *= std::pow(static_cast<double>(q), s - i) - 1;
      den *= std::pow(static_cast<double>(q), i + 1) - 1;
    }
    return num / den;
  };
  double total = 1;
  for (auto e : plan.search) {
    const auto s = std::min<std::uint32_t>(N, static_cast<std::uint32_t>(k * net.edge_inputs(e).size()));
    total *= subspaces(s, std::min(k, s));
  }
  return total;
}

SolveResult solve_vector_memo(const Network& net, const RingDescriptor& field, std::uint32_t k,
                              const SearchOptions& opts, std::map<std::uint32_t, SolveResult>& memo) {
  if (auto it = memo.find(k); it != memo.end()) return it->second;
  const auto F = Ring::create(field);
  SolveResult res;
  if (k == 1) {
    res = solve_scalar(net, F, opts);
    memo[k] = res;
    return res;
  }
  const auto M = Ring::create(RingDescriptor::matrix(field, k));
  const double estimate = rank_space_estimate(net, F->size(), k, opts.normalize_degree_one_forwarding);
  if (estimate <= static_cast<double>(opts.node_budget)) {
    res = solve_scalar(net, M, opts);
    if (res.code) res.code = matrix_scalar_to_vector(net, *res.code);
    if (res.status != SolveStatus::BudgetExceeded) {
      memo[k] = res;
      return res;
    }
  }
  for (std::uint32_t b = k / 2; b >= 1; --b) {
    const auto a = k - b;
    const auto ra = solve_vector_memo(net, field, a, opts, memo);
    if (ra.status != SolveStatus::Solved) continue;
    const auto rb = solve_vector_memo(net, field, b, opts, memo);
    if (rb.status != SolveStatus::Solved) continue;
    res = SolveResult{};
    res.status = SolveStatus::Solved;
    res.code = dim_sum(net, {*ra.code, *rb.code});
    res.method = "dim_sum " + std::to_string(a) + "+" + std::to_string(b);
    res.stats.nodes = ra.stats.nodes + rb.stats.nodes;
    res.stats.leaves = ra.stats.leaves + rb.stats.leaves;
    res.stats.prunes = ra.stats.prunes + rb.stats.prunes;
    res.stats.receiver_checks = ra.stats.receiver_checks + rb.stats.receiver_checks;
    res.stats.seconds = ra.stats.seconds + rb.stats.seconds;
    memo[k] = finish(net, res);
    return memo[k];
  }
  res = SolveResult{};
  res.status = SolveStatus::BudgetExceeded;
  res.method = "rank search";
  res.notes.push_back("direct search over " + M->name() + " exceeds the node budget and no split of " +
                      std::to_string(k) + " into solvable dimensions was found");
  memo[k] = res;
  return res;
}

}  // namespace

SolveResult solve_vector(const Network& net, const RingDescriptor& field, std::uint32_t k, const SearchOptions& opts) {
  if (k == 0) throw AlgebraError("vector dimension must be at least 1");
  const auto F = Ring::create(field);
  if (!F->is_field()) throw AlgebraError(F->name() + " is not a field");
  std::map<std::uint32_t, SolveResult> memo;
  const auto t0 = Clock::now();
  auto res = solve_vector_memo(net, field, k, opts, memo);
  res.stats.seconds = seconds_since(t0);
  return res;
}

SmallestRingReport smallest_ring_search(const Network& net, const std::vector<RingDescriptor>& catalog,
                                        SearchOptions opts) {
  opts.reduce_via_quotients = true;
  std::vector<std::pair<std::size_t, RingPtr>> rings;
  for (const auto& d : catalog) {
    auto r = Ring::create(d);
    rings.emplace_back(r->size(), r);
  }
  std::stable_sort(rings.begin(), rings.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SmallestRingReport rep;
  for (std::size_t i = 0; i < rings.size();) {
    const auto size = rings[i].first;
    std::size_t j = i;
    for (; j < rings.size() && rings[j].first == size; ++j) {
      const auto& r = rings[j].second;
      RingVerdict v{r->descriptor(), r->name(), size, SolveStatus::BudgetExceeded, ""};
      if (!r->has_identity()) {
        v.method = "no identity";
        rep.verdicts.push_back(v);
        continue;
      }
      const auto res = solve_scalar(net, r, opts);
      v.status = res.status;
      v.method = res.method;
      rep.verdicts.push_back(v);
      if (res.status == SolveStatus::Solved) {
        rep.minimal_rings.push_back(r->descriptor());
        rep.codes.push_back(*res.code);
      } else if (res.status == SolveStatus::BudgetExceeded) {
        rep.undetermined.push_back(r->name());
      }
    }
    if (!rep.minimal_rings.empty()) {
      rep.minimal_size = size;
      break;
    }
    i = j;
  }
  return rep;
}

NonunitalReport nonunital_demo() {
  // 2Z/8Z = {0, 2, 4, 6} with index i standing for 2i.
  std::vector<std::vector<Elem>> add(4, std::vector<Elem>(4)), mul(4, std::vector<Elem>(4));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      add[a][b] = ((2 * a + 2 * b) % 8) / 2;
      mul[a][b] = ((2 * a) * (2 * b) % 8) / 2;
    }
  const auto R = Ring::create(RingDescriptor::table(add, mul, std::nullopt, true, "2Z/8Z"));
  NonunitalReport rep;
  rep.ring = R->name();
  for (Elem c = 0; c < R->size(); ++c) {
    NonunitalCase nc;
    nc.coefficient = 2 * c;
    std::map<Elem, Elem> first;
    for (Elem x = 0; x < R->size(); ++x) {
      const auto y = R->mul(c, x);
      nc.images.push_back(2 * y);
      if (auto it = first.find(y); it != first.end()) {
        if (!nc.collision) nc.collision = std::make_pair(2 * it->second, 2 * x);
      } else {
        first.emplace(y, x);
      }
    }
    nc.injective = !nc.collision;
    rep.any_solution = rep.any_solution || nc.injective;
    rep.cases.push_back(nc);
  }
  return rep;
}

}  // namespace netring
