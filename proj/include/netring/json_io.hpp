#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "netring/code.hpp"
#include "netring/ideal.hpp"
#include "netring/module.hpp"
#include "netring/network.hpp"
#include "netring/ring.hpp"
#include "netring/solver.hpp"
#include "netring/transforms.hpp"

namespace netring {

using Json = nlohmann::ordered_json;

/// Raised for JSON that does not describe a valid object.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constructor tree, e.g. {"type":"matrix","k":2,"ring":{"type":"prime_field","p":2}}.
Json ring_to_json(const RingDescriptor& d);
/// Accepts the constructor tree or a name string such as "M_2(GF(2))".
RingDescriptor ring_from_json(const Json& j);

/// Parses names produced by RingDescriptor::name(): GF(q), Z_n, M_k(..), UT_k(..),
/// products joined by " x ", and truncated polynomial rings "GF(2)[x]/(x^m)".
RingDescriptor parse_ring_name(const std::string& s);

Json group_to_json(const AbelianGroup& g);
AbelianGroup group_from_json(const Json& j);

/// {"action": "regular" | "matrix-vector" | "product" | "table", ...}
Json module_to_json(const Module& m);
ModulePtr module_from_json(const Json& j);

Json network_to_json(const Network& net);
Network network_from_json(const Json& j);

/// Coefficients keyed by edge key and by receiver / message name.
Json code_to_json(const Network& net, const LinearCode& code);
LinearCode code_from_json(const Network& net, const Json& j);

Json hom_to_json(const RingHom& h);
RingHom hom_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json stats_to_json(const SearchStats& s);
Json result_to_json(const Network& net, const SolveResult& r);
Json trace_to_json(const TransformTrace& t);

}  // namespace netring
