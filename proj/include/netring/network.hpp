#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace netring {

struct Edge {
  std::string tail;
  std::string head;
  /// Distinguishes parallel edges; 1-based.
  std::uint32_t ordinal = 1;
  bool operator==(const Edge&) const = default;
};

struct Message {
  std::string name;
  std::string source;
  bool operator==(const Message&) const = default;
};

struct Demand {
  std::string receiver;
  std::vector<std::string> messages;
  bool operator==(const Demand&) const = default;
};

/// One ordered input of a node: an in-edge or a locally generated message.
struct NodeInput {
  bool is_message = false;
  std::size_t index = 0;  // edge index or message index
  bool operator==(const NodeInput&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

/// Directed acyclic network with parallel edges, source messages and receiver demands.
class Network {
 public:
  Network() = default;
  Network(std::vector<std::string> nodes, std::vector<Edge> edges, std::vector<Message> messages,
          std::vector<Demand> demands);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Message>& messages() const { return messages_; }
  const std::vector<Demand>& demands() const { return demands_; }

  std::optional<std::size_t> find_node(const std::string& name) const;
  std::optional<std::size_t> find_message(const std::string& name) const;
  std::optional<std::size_t> find_edge(const std::string& tail, const std::string& head, std::uint32_t ordinal) const;
  std::size_t node_index(const std::string& name) const;
  std::size_t message_index(const std::string& name) const;

  /// In-edges sorted by (tail node index, ordinal).
  const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_edges_.at(node); }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_edges_.at(node); }
  /// Messages generated at the node, in declaration order.
  const std::vector<std::size_t>& local_messages(std::size_t node) const { return local_messages_.at(node); }
  /// In-edges followed by local messages.
  const std::vector<NodeInput>& inputs(std::size_t node) const { return inputs_.at(node); }
  /// Inputs of an edge's tail node (the basis for its coefficient list).
  const std::vector<NodeInput>& edge_inputs(std::size_t edge) const;

  /// Edges in a topological order (every in-edge of a tail precedes its out-edges).
  /// Empty optional when the graph has a cycle.
  const std::optional<std::vector<std::size_t>>& edge_order() const { return edge_order_; }
  bool acyclic() const { return edge_order_.has_value(); }

  std::size_t tail_index(std::size_t edge) const { return edge_tail_.at(edge); }
  std::size_t head_index(std::size_t edge) const { return edge_head_.at(edge); }

  bool operator==(const Network& o) const {
    return nodes_ == o.nodes_ && edges_ == o.edges_ && messages_ == o.messages_ && demands_ == o.demands_;
  }

 private:
  void index();

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<Message> messages_;
  std::vector<Demand> demands_;

  std::vector<std::vector<std::size_t>> in_edges_, out_edges_, local_messages_;
  std::vector<std::vector<NodeInput>> inputs_;
  std::vector<std::size_t> edge_tail_, edge_head_;
  std::optional<std::vector<std::size_t>> edge_order_;
};

/// "tail->head:ordinal"
std::string edge_key(const Edge& e);
std::optional<std::size_t> parse_edge_key(const Network& net, const std::string& key);

/// Acyclicity, name resolution, source ownership and demand reachability.
ValidationReport validate_network(const Network& net);

/// Throws AlgebraError listing the validation errors.
void require_valid(const Network& net);

/// Node a_i, b_i, Z, R_j naming; messages x{i}_{j} for x_i^(j). Receivers are
/// numbered in lexicographic order of their demand tuples.
Network dim_n_network(std::uint32_t n, std::uint32_t max_n = 4);

/// Nodes 1..9, messages W,X at 1 and Y,Z at 2.
Network m_network();

/// Source s with messages a, b; relays v1..vn; receiver r{i}_{j} for each pair i < j.
Network choose_two_network(std::uint32_t n, std::uint32_t max_n = 12);

/// s -> t carrying message x.
Network trivial_network();

}  // namespace netring
