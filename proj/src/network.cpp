#include "netring/network.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "netring/ring.hpp"

namespace netring {

Network::Network(std::vector<std::string> nodes, std::vector<Edge> edges, std::vector<Message> messages,
                 std::vector<Demand> demands)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), messages_(std::move(messages)), demands_(std::move(demands)) {
  index();
}

std::optional<std::size_t> Network::find_node(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Network::find_message(const std::string& name) const {
  for (std::size_t i = 0; i < messages_.size(); ++i)
    if (messages_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Network::find_edge(const std::string& tail, const std::string& head,
                                              std::uint32_t ordinal) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].tail == tail && edges_[i].head == head && edges_[i].ordinal == ordinal) return i;
  return std::nullopt;
}

std::size_t Network::node_index(const std::string& name) const {
  auto i = find_node(name);
  if (!i) throw AlgebraError("unknown node '" + name + "'");
  return *i;
}

std::size_t Network::message_index(const std::string& name) const {
  auto i = find_message(name);
  if (!i) throw AlgebraError("unknown message '" + name + "'");
  return *i;
}

const std::vector<NodeInput>& Network::edge_inputs(std::size_t edge) const { return inputs_.at(edge_tail_.at(edge)); }

void Network::index() {
  const auto n = nodes_.size();
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id.emplace(nodes_[i], i);
  in_edges_.assign(n, {});
  out_edges_.assign(n, {});
  local_messages_.assign(n, {});
  inputs_.assign(n, {});
  edge_tail_.assign(edges_.size(), 0);
  edge_head_.assign(edges_.size(), 0);
  bool resolvable = true;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto t = id.find(edges_[e].tail), h = id.find(edges_[e].head);
    if (t == id.end() || h == id.end()) {
      resolvable = false;
      continue;
    }
    edge_tail_[e] = t->second;
    edge_head_[e] = h->second;
    out_edges_[t->second].push_back(e);
    in_edges_[h->second].push_back(e);
  }
  for (auto& ins : in_edges_)
    std::stable_sort(ins.begin(), ins.end(), [&](std::size_t a, std::size_t b) {
      if (edge_tail_[a] != edge_tail_[b]) return edge_tail_[a] < edge_tail_[b];
      return edges_[a].ordinal < edges_[b].ordinal;
    });
  for (std::size_t m = 0; m < messages_.size(); ++m) {
    auto s = id.find(messages_[m].source);
    if (s != id.end()) local_messages_[s->second].push_back(m);
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (auto e : in_edges_[v]) inputs_[v].push_back({false, e});
    for (auto m : local_messages_[v]) inputs_[v].push_back({true, m});
  }
  edge_order_.reset();
  if (!resolvable) return;
  // Kahn's algorithm on nodes, smallest index first for determinism.
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) ++indeg[edge_head_[e]];
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.insert(v);
  std::vector<std::size_t> order;
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = *ready.begin();
    ready.erase(ready.begin());
    ++visited;
    for (auto e : out_edges_[v]) {
      order.push_back(e);
      if (--indeg[edge_head_[e]] == 0) ready.insert(edge_head_[e]);
    }
  }
  if (visited == n) edge_order_ = std::move(order);
}

std::string edge_key(const Edge& e) { return e.tail + "->" + e.head + ":" + std::to_string(e.ordinal); }

std::optional<std::size_t> parse_edge_key(const Network& net, const std::string& key) {
  const auto arrow = key.find("->");
  if (arrow == std::string::npos) return std::nullopt;
  const auto colon = key.rfind(':');
  std::string tail = key.substr(0, arrow), head;
  std::uint32_t ordinal = 1;
  if (colon != std::string::npos && colon > arrow) {
    head = key.substr(arrow + 2, colon - arrow - 2);
    try {
      ordinal = static_cast<std::uint32_t>(std::stoul(key.substr(colon + 1)));
    } catch (...) {
      return std::nullopt;
    }
  } else {
    head = key.substr(arrow + 2);
  }
  return net.find_edge(tail, head, ordinal);
}

ValidationReport validate_network(const Network& net) {
  ValidationReport rep;
  std::set<std::string> names;
  for (const auto& v : net.nodes())
    if (!names.insert(v).second) rep.errors.push_back("duplicate node '" + v + "'");
  std::set<std::string> keys;
  for (const auto& e : net.edges()) {
    if (!names.count(e.tail)) rep.errors.push_back("edge " + edge_key(e) + ": unknown tail '" + e.tail + "'");
    if (!names.count(e.head)) rep.errors.push_back("edge " + edge_key(e) + ": unknown head '" + e.head + "'");
    if (e.tail == e.head) rep.errors.push_back("edge " + edge_key(e) + ": self-loop");
    if (e.ordinal < 1) rep.errors.push_back("edge " + edge_key(e) + ": ordinal must be >= 1");
    if (!keys.insert(edge_key(e)).second) rep.errors.push_back("duplicate edge " + edge_key(e));
  }
  std::set<std::string> msgs;
  for (const auto& m : net.messages()) {
    if (!msgs.insert(m.name).second) rep.errors.push_back("duplicate message '" + m.name + "'");
    if (!names.count(m.source)) {
      rep.errors.push_back("message '" + m.name + "': unknown source '" + m.source + "'");
    } else if (!net.in_edges(*net.find_node(m.source)).empty()) {
      rep.errors.push_back("message '" + m.name + "': owner '" + m.source + "' is not a source (has in-edges)");
    }
  }
  if (!rep.ok()) return rep;
  if (!net.acyclic()) {
    rep.errors.push_back("cycle: the network graph is not acyclic");
    return rep;
  }
  std::set<std::string> receivers;
  for (const auto& d : net.demands()) {
    if (!receivers.insert(d.receiver).second) rep.errors.push_back("duplicate demand entry for '" + d.receiver + "'");
    const auto r = net.find_node(d.receiver);
    if (!r) {
      rep.errors.push_back("demand: unknown receiver '" + d.receiver + "'");
      continue;
    }
    for (const auto& name : d.messages) {
      const auto m = net.find_message(name);
      if (!m) {
        rep.errors.push_back("demand at '" + d.receiver + "': unknown message '" + name + "'");
        continue;
      }
      // Reachability from the message source.
      const auto src = net.node_index(net.messages()[*m].source);
      std::vector<char> seen(net.nodes().size(), 0);
      std::deque<std::size_t> q{src};
      seen[src] = 1;
      while (!q.empty()) {
        const auto v = q.front();
        q.pop_front();
        for (auto e : net.out_edges(v)) {
          const auto h = net.head_index(e);
          if (!seen[h]) {
            seen[h] = 1;
            q.push_back(h);
          }
        }
      }
      if (!seen[*r])
        rep.errors.push_back("reachability: message '" + name + "' cannot reach receiver '" + d.receiver + "'");
    }
  }
  return rep;
}

void require_valid(const Network& net) {
  const auto rep = validate_network(net);
  if (rep.ok()) return;
  std::string msg = "invalid network:";
  for (const auto& e : rep.errors) msg += " " + e + ";";
  throw AlgebraError(msg);
}

Network dim_n_network(std::uint32_t n, std::uint32_t max_n) {
  if (n < 2) throw AlgebraError("Dim-n network needs n >= 2");
  if (n > max_n) throw BoundExceeded("Dim-n network with n = " + std::to_string(n) + " exceeds the size budget");
  std::uint64_t receivers = 1;
  for (std::uint32_t i = 0; i < n; ++i) receivers *= n;
  auto a = [](std::uint32_t i) { return "a_" + std::to_string(i); };
  auto b = [](std::uint32_t i) { return "b_" + std::to_string(i); };
  auto R = [](std::uint64_t j) { return "R_" + std::to_string(j); };
  auto x = [](std::uint32_t i, std::uint32_t j) { return "x" + std::to_string(i) + "_" + std::to_string(j); };

  std::vector<std::string> nodes;
  for (std::uint32_t i = 1; i <= n; ++i) nodes.push_back(a(i));
  for (std::uint32_t i = 1; i <= n; ++i) nodes.push_back(b(i));
  nodes.push_back("Z");
  for (std::uint64_t j = 1; j <= receivers; ++j) nodes.push_back(R(j));

  std::vector<Edge> edges;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t o = 1; o < n; ++o) edges.push_back({a(i), b(i), o});
    edges.push_back({a(i), "Z", 1});
  }
  std::vector<Demand> demands;
  std::vector<std::uint32_t> tuple(n, 1);
  for (std::uint64_t j = 1; j <= receivers; ++j) {
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t o = 1; o < n; ++o) edges.push_back({b(i), R(j), o});
    edges.push_back({"Z", R(j), 1});
    Demand d{R(j), {}};
    for (std::uint32_t i = 1; i <= n; ++i) d.messages.push_back(x(i, tuple[i - 1]));
    demands.push_back(std::move(d));
    for (std::uint32_t pos = n; pos-- > 0;) {
      if (++tuple[pos] <= n) break;
      tuple[pos] = 1;
    }
  }
  std::vector<Message> messages;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) messages.push_back({x(i, j), a(i)});
  return Network(std::move(nodes), std::move(edges), std::move(messages), std::move(demands));
}

Network m_network() {
  std::vector<std::string> nodes;
  for (int i = 1; i <= 9; ++i) nodes.push_back(std::to_string(i));
  std::vector<Edge> edges{{"1", "3", 1}, {"1", "4", 1}, {"2", "4", 1}, {"2", "5", 1}};
  for (const char* t : {"3", "4", "5"})
    for (const char* h : {"6", "7", "8", "9"}) edges.push_back({t, h, 1});
  std::vector<Message> messages{{"W", "1"}, {"X", "1"}, {"Y", "2"}, {"Z", "2"}};
  std::vector<Demand> demands{{"6", {"W", "Y"}}, {"7", {"W", "Z"}}, {"8", {"X", "Y"}}, {"9", {"X", "Z"}}};
  return Network(std::move(nodes), std::move(edges), std::move(messages), std::move(demands));
}

Network choose_two_network(std::uint32_t n, std::uint32_t max_n) {
  if (n < 3) throw AlgebraError("n-Choose-Two network needs n >= 3");
  if (n > max_n) throw BoundExceeded("n-Choose-Two network with n = " + std::to_string(n) + " exceeds the size budget");
  std::vector<std::string> nodes{"s"};
  std::vector<Edge> edges;
  for (std::uint32_t i = 1; i <= n; ++i) {
    nodes.push_back("v" + std::to_string(i));
    edges.push_back({"s", "v" + std::to_string(i), 1});
  }
  std::vector<Demand> demands;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      const auto r = "r" + std::to_string(i) + "_" + std::to_string(j);
      nodes.push_back(r);
      edges.push_back({"v" + std::to_string(i), r, 1});
      edges.push_back({"v" + std::to_string(j), r, 1});
      demands.push_back({r, {"a", "b"}});
    }
  return Network(std::move(nodes), std::move(edges), {{"a", "s"}, {"b", "s"}}, std::move(demands));
}

Network trivial_network() { return Network({"s", "t"}, {{"s", "t", 1}}, {{"x", "s"}}, {{"t", {"x"}}}); }

}  // namespace netring
