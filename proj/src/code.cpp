#include "netring/code.hpp"

#include <map>

namespace netring {

LinearCode zero_code(const Network& net, ModulePtr module) {
  LinearCode c;
  c.module = std::move(module);
  for (std::size_t e = 0; e < net.edges().size(); ++e) c.edge_coeffs.emplace_back(net.edge_inputs(e).size(), 0);
  for (const auto& d : net.demands()) {
    const auto arity = net.inputs(net.node_index(d.receiver)).size();
    c.decodings.emplace_back(d.messages.size(), Row(arity, 0));
  }
  return c;
}

void check_shapes(const Network& net, const LinearCode& code) {
  if (!code.module) throw AlgebraError("code has no module");
  const auto n = code.module->ring()->size();
  if (code.edge_coeffs.size() != net.edges().size())
    throw AlgebraError("code has " + std::to_string(code.edge_coeffs.size()) + " edge coefficient lists, network has " +
                       std::to_string(net.edges().size()) + " edges");
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (code.edge_coeffs[e].size() != net.edge_inputs(e).size())
      throw AlgebraError("edge " + edge_key(net.edges()[e]) + ": expected " + std::to_string(net.edge_inputs(e).size()) +
                         " coefficients, got " + std::to_string(code.edge_coeffs[e].size()));
    for (auto c : code.edge_coeffs[e])
      if (c >= n) throw AlgebraError("edge " + edge_key(net.edges()[e]) + ": coefficient out of range");
  }
  if (code.decodings.size() != net.demands().size()) throw AlgebraError("decoding list does not match the receivers");
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    const auto& dem = net.demands()[d];
    const auto arity = net.inputs(net.node_index(dem.receiver)).size();
    if (code.decodings[d].size() != dem.messages.size())
      throw AlgebraError("receiver " + dem.receiver + ": decoding count does not match its demands");
    for (const auto& row : code.decodings[d]) {
      if (row.size() != arity)
        throw AlgebraError("receiver " + dem.receiver + ": expected " + std::to_string(arity) + " decoding coefficients");
      for (auto c : row)
        if (c >= n) throw AlgebraError("receiver " + dem.receiver + ": coefficient out of range");
    }
  }
}

Row input_row(const Network& net, const Ring& r, const std::vector<Row>& transfer, const NodeInput& in) {
  if (!in.is_message) return transfer[in.index];
  Row u(net.messages().size(), 0);
  u[in.index] = r.one();
  return u;
}

std::vector<Row> transfer_vectors(const Network& net, const LinearCode& code) {
  require_valid(net);
  check_shapes(net, code);
  const auto& R = *code.module->ring();
  const auto m = net.messages().size();
  std::vector<Row> rows(net.edges().size(), Row(m, 0));
  for (auto e : *net.edge_order()) {
    const auto& ins = net.edge_inputs(e);
    Row acc(m, 0);
    for (std::size_t i = 0; i < ins.size(); ++i) {
      const auto c = code.edge_coeffs[e][i];
      if (c == 0) continue;
      if (ins[i].is_message) {
        acc[ins[i].index] = R.add(acc[ins[i].index], c);
      } else {
        const auto& src = rows[ins[i].index];
        for (std::size_t j = 0; j < m; ++j) acc[j] = R.add(acc[j], R.mul(c, src[j]));
      }
    }
    rows[e] = std::move(acc);
  }
  return rows;
}

std::string Witness::describe() const {
  std::string s = "receiver " + receiver + ", message " + message;
  auto join = [](const std::vector<Elem>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "]";
  };
  if (decoded_row) s += ": decoded row " + join(*decoded_row) + " is not the unit row";
  if (assignment) s += ": assignment " + join(*assignment) + " decodes to " + std::to_string(decoded_value.value_or(0));
  return s;
}

Verdict verify_solution(const Network& net, const LinearCode& code) {
  if (!is_faithful(*code.module))
    throw AlgebraError(
        "coefficient-level verification needs a faithful module; apply annihilator_quotient first or use semantic_verify");
  const auto transfer = transfer_vectors(net, code);
  const auto& R = *code.module->ring();
  const auto m = net.messages().size();
  Verdict v;
  v.method = "coefficient";
  v.solved = true;
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    const auto& dem = net.demands()[d];
    const auto& ins = net.inputs(net.node_index(dem.receiver));
    for (std::size_t t = 0; t < dem.messages.size(); ++t) {
      Row acc(m, 0);
      for (std::size_t i = 0; i < ins.size(); ++i) {
        const auto c = code.decodings[d][t][i];
        if (c == 0) continue;
        const auto row = input_row(net, R, transfer, ins[i]);
        for (std::size_t j = 0; j < m; ++j) acc[j] = R.add(acc[j], R.mul(c, row[j]));
      }
      Row unit(m, 0);
      unit[net.message_index(dem.messages[t])] = R.one();
      const bool ok = acc == unit;
      v.statuses.push_back({dem.receiver, dem.messages[t], ok});
      if (!ok && v.solved) {
        v.solved = false;
        v.witness = Witness{dem.receiver, dem.messages[t], acc, std::nullopt, std::nullopt};
      }
    }
  }
  return v;
}

std::vector<Elem> evaluate(const Network& net, const LinearCode& code, const std::vector<Elem>& assignment) {
  const auto& M = *code.module;
  std::vector<Elem> val(net.edges().size(), 0);
  for (auto e : *net.edge_order()) {
    const auto& ins = net.edge_inputs(e);
    Elem acc = 0;
    for (std::size_t i = 0; i < ins.size(); ++i) {
      const auto x = ins[i].is_message ? assignment[ins[i].index] : val[ins[i].index];
      acc = M.add(acc, M.act(code.edge_coeffs[e][i], x));
    }
    val[e] = acc;
  }
  return val;
}

Verdict semantic_verify(const Network& net, const LinearCode& code, std::size_t limit) {
  require_valid(net);
  check_shapes(net, code);
  const auto& M = *code.module;
  const auto m = net.messages().size();
  const std::size_t g = M.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= g;
    if (total > limit) throw BoundExceeded("semantic verification state space exceeds the limit");
  }
  Verdict v;
  v.method = "semantic";
  v.solved = true;
  std::vector<std::vector<char>> ok(net.demands().size());
  for (std::size_t d = 0; d < net.demands().size(); ++d) ok[d].assign(net.demands()[d].messages.size(), 1);
  std::vector<std::size_t> recv(net.demands().size()), target(0);
  std::vector<std::vector<std::size_t>> msg_idx(net.demands().size());
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    recv[d] = net.node_index(net.demands()[d].receiver);
    for (const auto& name : net.demands()[d].messages) msg_idx[d].push_back(net.message_index(name));
  }
  std::vector<Elem> assign(m, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = m; i-- > 0;) {
      assign[i] = static_cast<Elem>(rem % g);
      rem /= g;
    }
    const auto val = evaluate(net, code, assign);
    for (std::size_t d = 0; d < net.demands().size(); ++d) {
      const auto& ins = net.inputs(recv[d]);
      for (std::size_t t = 0; t < msg_idx[d].size(); ++t) {
        if (!ok[d][t]) continue;
        Elem acc = 0;
        for (std::size_t i = 0; i < ins.size(); ++i) {
          const auto x = ins[i].is_message ? assign[ins[i].index] : val[ins[i].index];
          acc = M.add(acc, M.act(code.decodings[d][t][i], x));
        }
        if (acc != assign[msg_idx[d][t]]) {
          ok[d][t] = 0;
          if (v.solved) {
            v.solved = false;
            v.witness = Witness{net.demands()[d].receiver, net.demands()[d].messages[t], std::nullopt, assign, acc};
          }
        }
      }
    }
  }
  v.assignments_checked = total;
  for (std::size_t d = 0; d < net.demands().size(); ++d)
    for (std::size_t t = 0; t < msg_idx[d].size(); ++t)
      v.statuses.push_back({net.demands()[d].receiver, net.demands()[d].messages[t], ok[d][t] != 0});
  return v;
}

EntropyReport entropy_of(const Network& net, const LinearCode& code, const std::vector<CodeVariable>& vars) {
  const auto& M = *code.module;
  const auto& R = *M.ring();
  const bool vector = M.action_kind() == Module::Action::MatrixVector;
  const bool scalar_field = M.action_kind() == Module::Action::Regular && R.is_field();
  if (!(scalar_field || (vector && R.inner()->is_field())))
    throw AlgebraError("entropy_of needs a vector module over a field");
  const Ring& F = vector ? *R.inner() : R;
  const auto transfer = transfer_vectors(net, code);
  const auto m = net.messages().size();
  Matrix stacked;
  for (const auto& v : vars) {
    Row row;
    if (v.is_message) {
      if (v.index >= m) throw AlgebraError("message variable out of range");
      row.assign(m, 0);
      row[v.index] = R.one();
    } else {
      if (v.index >= transfer.size()) throw AlgebraError("edge variable out of range");
      row = transfer[v.index];
    }
    if (vector) {
      for (auto& r : expand_matrix_row(R, row)) stacked.push_back(std::move(r));
    } else {
      stacked.push_back(std::move(row));
    }
  }
  return EntropyReport{vars, rank(F, stacked)};
}

CodeVariable parse_variable(const Network& net, const std::string& s) {
  std::string body = s;
  if (body.rfind("m:", 0) == 0) return {true, net.message_index(body.substr(2))};
  if (body.rfind("e:", 0) == 0) body = body.substr(2);
  if (body.find("->") != std::string::npos) {
    auto e = parse_edge_key(net, body);
    if (!e) throw AlgebraError("unknown edge '" + body + "'");
    return {false, *e};
  }
  return {true, net.message_index(body)};
}

namespace {

std::size_t demand_index(const Network& net, const std::string& receiver) {
  for (std::size_t d = 0; d < net.demands().size(); ++d)
    if (net.demands()[d].receiver == receiver) return d;
  throw AlgebraError("no demand entry for receiver '" + receiver + "'");
}

std::size_t demand_slot(const Network& net, std::size_t d, const std::string& msg) {
  const auto& ms = net.demands()[d].messages;
  for (std::size_t t = 0; t < ms.size(); ++t)
    if (ms[t] == msg) return t;
  throw AlgebraError("receiver does not demand '" + msg + "'");
}

std::size_t edge_at(const Network& net, const std::string& t, const std::string& h, std::uint32_t o = 1) {
  auto e = net.find_edge(t, h, o);
  if (!e) throw AlgebraError("network lacks edge " + t + "->" + h + ":" + std::to_string(o));
  return *e;
}

}  // namespace

LinearCode explicit_m_network_code(const Network& net) {
  if (!(net == m_network())) throw AlgebraError("explicit_m_network_code needs m_network()");
  auto ring = Ring::create(RingDescriptor::matrix(RingDescriptor::prime_field(2), 2));
  auto code = zero_code(net, Module::regular(ring));
  // R_qrst is the matrix (q r; s t), index 8q + 4r + 2s + t.
  constexpr Elem R0000 = 0, R1000 = 8, R0100 = 4, R0010 = 2, R0001 = 1, I = 9;
  auto set = [&](const char* t, const char* h, Row coeffs) { code.edge_coeffs[edge_at(net, t, h)] = std::move(coeffs); };
  set("1", "3", {R1000, R0010});  // A
  set("1", "4", {R0100, R0001});  // B
  set("2", "4", {R0100, R0001});  // C
  set("2", "5", {R1000, R0010});  // D
  set("4", "6", {R1000, R0010});  // E
  set("4", "7", {R1000, R0001});  // F
  set("4", "8", {R0100, R0010});  // G
  set("4", "9", {R0100, R0001});  // H
  for (const char* h : {"6", "7", "8", "9"}) {
    set("3", h, {I});
    set("5", h, {I});
  }
  // Receiver inputs: the edge from node 3, the edge from node 4, the edge from node 5.
  auto dec = [&](const char* r, const char* msg, Row coeffs) {
    const auto d = demand_index(net, r);
    code.decodings[d][demand_slot(net, d, msg)] = std::move(coeffs);
  };
  dec("6", "W", {R1000, R0010, R0000});
  dec("6", "Y", {R0000, R0001, R1000});
  dec("7", "W", {R1000, R0010, R0000});
  dec("7", "Z", {R0000, R0001, R0100});
  dec("8", "X", {R0100, R0010, R0000});
  dec("8", "Y", {R0000, R0001, R1000});
  dec("9", "X", {R0100, R0010, R0000});
  dec("9", "Z", {R0000, R0001, R0100});
  return code;
}

LinearCode routing_code_dim_n(std::uint32_t n, const RingDescriptor& field, const Network& net) {
  if (!(net == dim_n_network(n, std::max<std::uint32_t>(n, 4)))) throw AlgebraError("routing code needs dim_n_network(n)");
  auto module = vector_module(field, n);
  const auto& M = *module->ring();
  if (!M.inner()->is_field()) throw AlgebraError("routing code needs a field");
  auto code = zero_code(net, module);
  const Elem one = M.inner()->one();
  // E(r, c): matrix unit with 1-based row r and column c.
  auto E = [&](std::uint32_t r, std::uint32_t c) {
    std::vector<Elem> e(n * n, 0);
    e[(r - 1) * n + (c - 1)] = one;
    return M.from_entries(e);
  };
  const Elem I = M.one();
  auto a = [](std::uint32_t i) { return "a_" + std::to_string(i); };
  auto b = [](std::uint32_t i) { return "b_" + std::to_string(i); };

  // Source a_i, inputs x_i^(1..n): w_i^(j) = sum_k E(k, j) x_i^(k); edge j = n goes to Z.
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) {
      const auto e = j < n ? edge_at(net, a(i), b(i), j) : edge_at(net, a(i), "Z");
      Row row(n);
      for (std::uint32_t k = 1; k <= n; ++k) row[k - 1] = E(k, j);
      code.edge_coeffs[e] = row;
    }
  std::uint64_t receivers = 1;
  for (std::uint32_t i = 0; i < n; ++i) receivers *= n;
  for (std::uint64_t j = 1; j <= receivers; ++j) {
    const auto rname = "R_" + std::to_string(j);
    const auto d = demand_index(net, rname);
    std::vector<std::uint32_t> tuple(n);
    for (std::uint32_t t = 0; t < n; ++t) {
      const auto& msg = net.demands()[d].messages[t];
      tuple[t] = static_cast<std::uint32_t>(std::stoul(msg.substr(msg.find('_') + 1)));
    }
    // b_i forwards w_i^(l) on its l-th parallel edge.
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t l = 1; l < n; ++l) {
        Row row(n - 1, 0);
        row[l - 1] = I;
        code.edge_coeffs[edge_at(net, b(i), rname, l)] = row;
      }
    // Z sends u_j with [u_j]_k = [w_k^(n)]_{i_k}.
    {
      Row row(n);
      for (std::uint32_t k = 1; k <= n; ++k) row[k - 1] = E(k, tuple[k - 1]);
      code.edge_coeffs[edge_at(net, "Z", rname)] = row;
    }
    // Receiver inputs: b_1 edges 1..n-1, ..., b_n edges, then Z.
    const auto arity = n * (n - 1) + 1;
    for (std::uint32_t t = 1; t <= n; ++t) {
      Row row(arity, 0);
      for (std::uint32_t c = 1; c < n; ++c) row[(t - 1) * (n - 1) + (c - 1)] = E(c, tuple[t - 1]);
      row[arity - 1] = E(n, t);
      code.decodings[d][t - 1] = row;
    }
  }
  return code;
}

}  // namespace netring
