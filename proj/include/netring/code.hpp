#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netring/field_linalg.hpp"
#include "netring/module.hpp"
#include "netring/network.hpp"

namespace netring {

/// Linear code over a module for a fixed network.
///
/// edge_coeffs[e][i] multiplies the i-th input of edge e's tail node.
/// decodings[d][t][i] multiplies the i-th input of receiver demands()[d].receiver
/// when decoding its t-th demanded message.
struct LinearCode {
  ModulePtr module;
  std::vector<Row> edge_coeffs;
  std::vector<std::vector<Row>> decodings;
};

/// All-zero code with the right shapes.
LinearCode zero_code(const Network& net, ModulePtr module);

/// Throws AlgebraError when coefficient list lengths or ranges do not match the network.
void check_shapes(const Network& net, const LinearCode& code);

/// Global coefficient row (one ring element per message) carried by each edge.
std::vector<Row> transfer_vectors(const Network& net, const LinearCode& code);

/// Row of a node input (edge transfer row or unit message row).
Row input_row(const Network& net, const Ring& r, const std::vector<Row>& transfer, const NodeInput& in);

struct DemandStatus {
  std::string receiver;
  std::string message;
  bool ok = false;
};

struct Witness {
  std::string receiver;
  std::string message;
  /// Coefficient-level failure: the decoded row that should have been a unit row.
  std::optional<Row> decoded_row;
  /// Semantic failure: the message assignment and the value decoded.
  std::optional<std::vector<Elem>> assignment;
  std::optional<Elem> decoded_value;
  std::string describe() const;
};

struct Verdict {
  bool solved = false;
  std::vector<DemandStatus> statuses;
  std::optional<Witness> witness;
  /// "coefficient" or "semantic".
  std::string method;
  std::size_t assignments_checked = 0;
};

/// Coefficient-level verification via unit rows. Requires a faithful module.
Verdict verify_solution(const Network& net, const LinearCode& code);

/// Evaluates every message assignment; requires |G|^(messages) <= limit.
Verdict semantic_verify(const Network& net, const LinearCode& code, std::size_t limit = std::size_t{1} << 24);

/// Evaluates the code on one message assignment; returns the value on every edge.
std::vector<Elem> evaluate(const Network& net, const LinearCode& code, const std::vector<Elem>& assignment);

/// A random variable of the code: an edge symbol or a message.
struct CodeVariable {
  bool is_message = false;
  std::size_t index = 0;
};

struct EntropyReport {
  std::vector<CodeVariable> variables;
  /// Rank over the field, i.e. entropy in units of log|F|.
  std::size_t rank = 0;
};

/// Rank-entropy of the joint variables for a code over F^k with M_k(F) (or F itself).
EntropyReport entropy_of(const Network& net, const LinearCode& code, const std::vector<CodeVariable>& vars);

/// Parses "W", "1->3:1", "e:1->3:1" or "m:W" style variable names.
CodeVariable parse_variable(const Network& net, const std::string& s);

/// Explicit scalar solution of m_network() over M_2(GF(2)).
LinearCode explicit_m_network_code(const Network& net);

/// The n-dimensional routing code over F^n for dim_n_network(n).
LinearCode routing_code_dim_n(std::uint32_t n, const RingDescriptor& field, const Network& net);

}  // namespace netring
