#include "netring/repro.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "netring/catalog.hpp"
#include "netring/transforms.hpp"

namespace netring {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void add(ReproReport& rep, const std::string& name, const std::function<Outcome()>& f) {
  const auto t0 = Clock::now();
  ReproCheck c{name, false, {}, 0};
  try {
    const auto o = f();
    c.pass = o.pass;
    c.detail = o.detail;
  } catch (const std::exception& e) {
    c.detail = std::string("error: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  rep.checks.push_back(std::move(c));
}

Outcome expect_status(const SolveResult& r, SolveStatus want) {
  return {r.status == want, std::string(status_name(r.status)) + " via " + r.method};
}

RingDescriptor gf(std::uint32_t p, std::uint32_t k = 1) {
  return k == 1 ? RingDescriptor::prime_field(p) : RingDescriptor::galois_field(p, k);
}

void m_code_suite(ReproReport& rep, const SearchOptions& opts) {
  const auto m = m_network();
  const auto code = explicit_m_network_code(m);
  add(rep, "scalar code over M_2(GF(2)) verifies", [&] {
    const auto v = verify_solution(m, code);
    return Outcome{v.solved, v.witness ? v.witness->describe() : "all 8 demands decoded"};
  });
  add(rep, "vector form over GF(2)^2 verifies", [&] {
    const auto vec = matrix_scalar_to_vector(m, code);
    const auto v = verify_solution(m, vec);
    return Outcome{v.solved && vector_dimension(vec) == 2, "dimension " + std::to_string(vector_dimension(vec))};
  });
  add(rep, "semantic check agrees on all assignments", [&] {
    const auto vec = matrix_scalar_to_vector(m, code);
    const auto s = semantic_verify(m, vec);
    return Outcome{s.solved && s.assignments_checked == 256, std::to_string(s.assignments_checked) + " assignments"};
  });
  for (auto d : {gf(2), gf(3), gf(2, 2)})
    add(rep, "scalar over " + d.name() + " unsolvable",
        [&, d] { return expect_status(solve_scalar(m, Ring::create(d), opts), SolveStatus::Unsolvable); });
  add(rep, "vector dim 1 over GF(2) unsolvable",
      [&] { return expect_status(solve_vector(m, gf(2), 1, opts), SolveStatus::Unsolvable); });
  for (std::uint32_t k : {2u, 4u})
    add(rep, "vector dim " + std::to_string(k) + " over GF(2) solved", [&, k] {
      const auto r = solve_vector(m, gf(2), k, opts);
      const bool ok = r.status == SolveStatus::Solved && r.code && verify_solution(m, *r.code).solved;
      return Outcome{ok, std::string(status_name(r.status)) + " via " + r.method};
    });
}

void dim_n_suite(ReproReport& rep, const SearchOptions& opts) {
  for (std::uint32_t n : {2u, 3u})
    for (auto f : {gf(2), gf(3)}) {
      add(rep, "routing code n=" + std::to_string(n) + " over " + f.name() + " verifies", [&, n, f] {
        const auto net = dim_n_network(n);
        const auto v = verify_solution(net, routing_code_dim_n(n, f, net));
        return Outcome{v.solved, std::to_string(net.demands().size()) + " receivers"};
      });
    }
  for (std::uint32_t n : {2u, 3u})
    add(rep, "routing code n=" + std::to_string(n) + " entropies", [&, n] {
      const auto net = dim_n_network(n);
      const auto code = routing_code_dim_n(n, gf(2), net);
      std::size_t checked = 0;
      for (std::uint32_t i = 1; i <= n; ++i) {
        std::vector<CodeVariable> ws;
        for (std::uint32_t j = 1; j < n; ++j) {
          const auto e = *net.find_edge("a_" + std::to_string(i), "b_" + std::to_string(i), j);
          if (entropy_of(net, code, {{false, e}}).rank != n) return Outcome{false, "H(w) != n at a_" + std::to_string(i)};
          ws.push_back({false, e});
          ++checked;
        }
        for (std::uint32_t j = 1; j <= n; ++j) {
          auto vars = ws;
          vars.push_back({true, net.message_index("x" + std::to_string(i) + "_" + std::to_string(j))});
          if (entropy_of(net, code, vars).rank != n * n - n + 1)
            return Outcome{false, "joint entropy mismatch at a_" + std::to_string(i)};
          ++checked;
        }
      }
      return Outcome{true, std::to_string(checked) + " entropies, n and n^2-n+1"};
    });
  add(rep, "dim-2 network: vector dim 1 over GF(2) unsolvable",
      [&] { return expect_status(solve_vector(dim_n_network(2), gf(2), 1, opts), SolveStatus::Unsolvable); });
  add(rep, "dim-2 network: vector dim 2 over GF(2) solved",
      [&] { return expect_status(solve_vector(dim_n_network(2), gf(2), 2, opts), SolveStatus::Solved); });
}

void choose_two_suite(ReproReport& rep, const SearchOptions& opts) {
  for (std::uint32_t n : {3u, 4u, 5u})
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
      const auto d = q == 4 ? gf(2, 2) : gf(q);
      add(rep, "n=" + std::to_string(n) + " over GF(" + std::to_string(q) + ")", [&, n, q, d] {
        const auto net = choose_two_network(n);
        const auto r = solve_scalar(net, Ring::create(d), opts);
        const bool expect = q >= n - 1;
        const bool got = r.status == SolveStatus::Solved;
        return Outcome{r.status != SolveStatus::BudgetExceeded && got == expect,
                       std::string(status_name(r.status)) + (expect ? " (expected solved)" : " (expected unsolvable)")};
      });
    }
}

void catalog_suite(ReproReport& rep) {
  const std::vector<std::size_t> want{1, 2, 3, 6, 8, 13};
  for (std::uint32_t k = 1; k <= 6; ++k)
    add(rep, "semi-simple types of size p^" + std::to_string(k), [&, k] {
      const auto n = semisimple_types(k).size();
      return Outcome{n == want[k - 1], std::to_string(n) + " types, expected " + std::to_string(want[k - 1])};
    });
  for (std::uint32_t k = 1; k <= 6; ++k)
    add(rep, "radical is zero at p=2, size 2^" + std::to_string(k), [&, k] {
      std::size_t n = 0;
      for (const auto& d : semisimple_catalog(2, k)) {
        const auto r = Ring::create(d);
        if (!radical(r).is_zero()) return Outcome{false, d.name() + " has a nonzero radical"};
        ++n;
      }
      return Outcome{true, std::to_string(n) + " rings"};
    });
}

void pipeline_suite(ReproReport& rep, const SearchOptions& opts) {
  const std::vector<std::pair<std::string, Network>> nets{{"trivial", trivial_network()},
                                                          {"choose-two(3)", choose_two_network(3)},
                                                          {"choose-two(4)", choose_two_network(4)},
                                                          {"choose-two(5)", choose_two_network(5)},
                                                          {"m", m_network()}};
  std::map<std::pair<std::string, std::string>, bool> target_cache;
  auto solvable = [&](const std::string& net_name, const Network& net, const RingDescriptor& d) {
    const auto key = std::make_pair(net_name, d.name());
    if (auto it = target_cache.find(key); it != target_cache.end()) return it->second;
    const auto r = solve_scalar(net, Ring::create(d), opts);
    return target_cache[key] = r.status == SolveStatus::Solved;
  };
  SearchOptions q = opts;
  q.reduce_via_quotients = true;
  const auto cat = structured_catalog(16);
  for (std::uint32_t k : {2u, 3u, 4u}) {
    const std::size_t size = std::size_t{1} << k;
    std::vector<RingDescriptor> targets{gf(2, k)};
    if (k == 4) targets.push_back(RingDescriptor::matrix(gf(2), 2));
    for (const auto& e : cat.entries) {
      const auto R = Ring::create(e.descriptor);
      if (R->size() != size) continue;
      add(rep, e.descriptor.name(), [&, R] {
        std::ostringstream detail;
        std::size_t solved = 0;
        for (const auto& [name, net] : nets) {
          const auto r = solve_scalar(net, R, q);
          if (r.status == SolveStatus::BudgetExceeded) return Outcome{false, name + ": budget exceeded"};
          if (r.status != SolveStatus::Solved) continue;
          ++solved;
          const auto reduced = reduce_to_field_vector_code(net, *r.code);
          if (!verify_solution(net, reduced).solved) return Outcome{false, name + ": reduced code fails"};
          bool any = false;
          for (const auto& t : targets) any = any || solvable(name, net, t);
          if (!any) return Outcome{false, name + ": no target ring solves it"};
          detail << (solved > 1 ? ", " : "") << name;
        }
        return Outcome{true, "solved: " + (solved ? detail.str() : std::string("none"))};
      });
    }
  }
}

}  // namespace

bool ReproReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const std::vector<std::string>& repro_suites() {
  static const std::vector<std::string> s{"m-code", "dim-n", "choose-two", "catalog", "pipeline"};
  return s;
}

ReproReport run_repro(const std::string& suite, const SearchOptions& opts) {
  ReproReport rep;
  rep.suite = suite;
  if (suite == "m-code")
    m_code_suite(rep, opts);
  else if (suite == "dim-n")
    dim_n_suite(rep, opts);
  else if (suite == "choose-two")
    choose_two_suite(rep, opts);
  else if (suite == "catalog")
    catalog_suite(rep);
  else if (suite == "pipeline")
    pipeline_suite(rep, opts);
  else
    throw AlgebraError("unknown suite \"" + suite + "\"");
  return rep;
}

}  // namespace netring
