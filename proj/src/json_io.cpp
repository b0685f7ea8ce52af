#include "netring/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace netring {

namespace {

using K = RingDescriptor::Kind;

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::vector<Elem>> get_table(const Json& j, const char* key) {
  return get<std::vector<std::vector<Elem>>>(j, key);
}

class NameParser {
 public:
  explicit NameParser(const std::string& s) : s_(s) {}

  RingDescriptor parse() {
    auto d = product();
    skip_space();
    if (pos_ != s_.size()) fail("trailing characters");
    return d;
  }

 private:
  RingDescriptor product() {
    std::vector<RingDescriptor> fs{term()};
    while (true) {
      skip_space();
      if (pos_ < s_.size() && s_[pos_] == 'x' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ' ') {
        ++pos_;
        fs.push_back(term());
      } else {
        break;
      }
    }
    return fs.size() == 1 ? fs[0] : RingDescriptor::product(std::move(fs));
  }

  RingDescriptor term() {
    skip_space();
    RingDescriptor d;
    if (eat("(")) {
      d = product();
      expect(")");
    } else if (eat("GF(")) {
      const auto q = number();
      std::uint64_t k = 1;
      if (eat("^")) k = number();
      expect(")");
      d = field(q, k);
    } else if (eat("Z_")) {
      d = RingDescriptor::integers_mod(static_cast<std::uint32_t>(number()));
    } else if (eat("M_")) {
      const auto k = number();
      expect("(");
      d = RingDescriptor::matrix(product(), static_cast<std::uint32_t>(k));
      expect(")");
    } else if (eat("UT_")) {
      const auto k = number();
      expect("(");
      d = RingDescriptor::upper_triangular(product(), static_cast<std::uint32_t>(k));
      expect(")");
    } else {
      fail("unknown ring");
    }
    if (eat("[x]/(x^")) {
      const auto m = number();
      expect(")");
      d = truncated_polynomial_ring(d, static_cast<std::uint32_t>(m));
    }
    return d;
  }

  static RingDescriptor field(std::uint64_t q, std::uint64_t k) {
    if (k > 1) {
      if (!is_prime(q)) throw FormatError("GF(p^k) needs a prime p");
      return RingDescriptor::galois_field(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(k));
    }
    for (std::uint64_t p = 2; p <= q; ++p) {
      if (q % p) continue;
      std::uint64_t n = q;
      std::uint32_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (n != 1) break;
      return e == 1 ? RingDescriptor::prime_field(static_cast<std::uint32_t>(p))
                    : RingDescriptor::galois_field(static_cast<std::uint32_t>(p), e);
    }
    throw FormatError("GF(" + std::to_string(q) + ") is not a field size");
  }

  std::uint64_t number() {
    const auto start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > (std::uint64_t{1} << 32)) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  bool eat(const std::string& t) {
    if (s_.compare(pos_, t.size(), t) == 0) {
      pos_ += t.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& t) {
    if (!eat(t)) fail("expected '" + t + "'");
  }
  void skip_space() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("cannot parse ring \"" + s_ + "\" at " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Json row_json(const Row& r) { return Json(std::vector<Elem>(r.begin(), r.end())); }

}  // namespace

// ---------------------------------------------------------------------------
// Rings

Json ring_to_json(const RingDescriptor& d) {
  Json j;
  switch (d.kind) {
    case K::PrimeField:
      j["type"] = "prime_field";
      j["p"] = d.p;
      break;
    case K::GaloisField:
      j["type"] = "galois_field";
      j["p"] = d.p;
      j["k"] = d.k;
      j["poly"] = d.poly;
      break;
    case K::IntegersMod:
      j["type"] = "integers_mod";
      j["n"] = d.n;
      break;
    case K::MatrixRing:
      j["type"] = "matrix";
      j["k"] = d.k;
      j["ring"] = ring_to_json(d.children.at(0));
      break;
    case K::UpperTriangular:
      j["type"] = "upper_triangular";
      j["k"] = d.k;
      j["ring"] = ring_to_json(d.children.at(0));
      break;
    case K::Product: {
      j["type"] = "product";
      Json fs = Json::array();
      for (const auto& c : d.children) fs.push_back(ring_to_json(c));
      j["factors"] = std::move(fs);
      break;
    }
    case K::TableRing:
      j["type"] = "table";
      if (!d.label.empty()) j["label"] = d.label;
      j["add"] = d.add_table;
      j["mul"] = d.mul_table;
      if (d.identity) j["identity"] = *d.identity;
      if (d.rng) j["rng"] = true;
      break;
  }
  return j;
}

RingDescriptor ring_from_json(const Json& j) {
  if (j.is_string()) return parse_ring_name(j.get<std::string>());
  const auto type = get<std::string>(j, "type");
  if (type == "prime_field") return RingDescriptor::prime_field(get<std::uint32_t>(j, "p"));
  if (type == "galois_field") {
    std::vector<std::uint32_t> poly;
    if (j.contains("poly")) poly = get<std::vector<std::uint32_t>>(j, "poly");
    return RingDescriptor::galois_field(get<std::uint32_t>(j, "p"), get<std::uint32_t>(j, "k"), std::move(poly));
  }
  if (type == "integers_mod") return RingDescriptor::integers_mod(get<std::uint32_t>(j, "n"));
  if (type == "matrix") return RingDescriptor::matrix(ring_from_json(field(j, "ring")), get<std::uint32_t>(j, "k"));
  if (type == "upper_triangular")
    return RingDescriptor::upper_triangular(ring_from_json(field(j, "ring")), get<std::uint32_t>(j, "k"));
  if (type == "product") {
    std::vector<RingDescriptor> fs;
    for (const auto& f : field(j, "factors")) fs.push_back(ring_from_json(f));
    return RingDescriptor::product(std::move(fs));
  }
  if (type == "table") {
    std::optional<Elem> id;
    if (j.contains("identity")) id = get<Elem>(j, "identity");
    return RingDescriptor::table(get_table(j, "add"), get_table(j, "mul"), id, j.value("rng", false),
                                 j.value("label", std::string{}));
  }
  if (type == "truncated_polynomial")
    return truncated_polynomial_ring(ring_from_json(field(j, "ring")), get<std::uint32_t>(j, "m"));
  throw FormatError("unknown ring type \"" + type + "\"");
}

RingDescriptor parse_ring_name(const std::string& s) { return NameParser(s).parse(); }

// ---------------------------------------------------------------------------
// Groups and modules

Json group_to_json(const AbelianGroup& g) {
  Json j;
  switch (g.kind()) {
    case AbelianGroup::Kind::Moduli:
      j["moduli"] = g.moduli();
      break;
    case AbelianGroup::Kind::RingPower:
      j["ring"] = ring_to_json(g.base_ring()->descriptor());
      j["power"] = g.power();
      break;
    case AbelianGroup::Kind::Table:
      j["add"] = g.add_table();
      break;
    case AbelianGroup::Kind::Product: {
      Json fs = Json::array();
      for (const auto& f : g.factors()) fs.push_back(group_to_json(f));
      j["factors"] = std::move(fs);
      break;
    }
  }
  return j;
}

AbelianGroup group_from_json(const Json& j) {
  if (j.contains("moduli")) return AbelianGroup::cyclic_product(get<std::vector<std::uint32_t>>(j, "moduli"));
  if (j.contains("power"))
    return AbelianGroup::ring_power(Ring::create(ring_from_json(field(j, "ring"))), get<std::uint32_t>(j, "power"));
  if (j.contains("add")) return AbelianGroup::table(get_table(j, "add"));
  if (j.contains("factors")) {
    std::vector<AbelianGroup> fs;
    for (const auto& f : field(j, "factors")) fs.push_back(group_from_json(f));
    return AbelianGroup::product(std::move(fs));
  }
  throw FormatError("group needs one of moduli, power, add or factors");
}

Json module_to_json(const Module& m) {
  Json j;
  switch (m.action_kind()) {
    case Module::Action::Regular:
      j["action"] = "regular";
      j["ring"] = ring_to_json(m.ring()->descriptor());
      break;
    case Module::Action::MatrixVector:
      j["action"] = "matrix-vector";
      j["base"] = ring_to_json(m.ring()->inner()->descriptor());
      j["dim"] = m.ring()->matrix_dim();
      break;
    case Module::Action::Product: {
      j["action"] = "product";
      Json ps = Json::array();
      for (const auto& p : m.parts()) ps.push_back(module_to_json(*p));
      j["parts"] = std::move(ps);
      break;
    }
    case Module::Action::Table: {
      j["action"] = "table";
      j["ring"] = ring_to_json(m.ring()->descriptor());
      j["group"] = group_to_json(m.group());
      std::vector<std::vector<Elem>> t(m.ring()->size(), std::vector<Elem>(m.size()));
      for (Elem r = 0; r < m.ring()->size(); ++r)
        for (Elem g = 0; g < m.size(); ++g) t[r][g] = m.act(r, g);
      j["table"] = std::move(t);
      break;
    }
  }
  return j;
}

ModulePtr module_from_json(const Json& j) {
  const auto action = get<std::string>(j, "action");
  if (action == "regular") return Module::regular(Ring::create(ring_from_json(field(j, "ring"))));
  if (action == "matrix-vector") return vector_module(ring_from_json(field(j, "base")), get<std::uint32_t>(j, "dim"));
  if (action == "product") {
    std::vector<ModulePtr> ps;
    for (const auto& p : field(j, "parts")) ps.push_back(module_from_json(p));
    return Module::product(std::move(ps));
  }
  if (action == "table")
    return Module::from_table(Ring::create(ring_from_json(field(j, "ring"))), group_from_json(field(j, "group")),
                              get_table(j, "table"));
  throw FormatError("unknown module action \"" + action + "\"");
}

// ---------------------------------------------------------------------------
// Networks and codes

Json network_to_json(const Network& net) {
  Json j;
  j["nodes"] = net.nodes();
  Json es = Json::array();
  for (const auto& e : net.edges()) es.push_back({{"tail", e.tail}, {"head", e.head}, {"ordinal", e.ordinal}});
  j["edges"] = std::move(es);
  Json ms = Json::array();
  for (const auto& m : net.messages()) ms.push_back({{"name", m.name}, {"source", m.source}});
  j["messages"] = std::move(ms);
  Json ds = Json::object();
  for (const auto& d : net.demands()) ds[d.receiver] = d.messages;
  j["demands"] = std::move(ds);
  return j;
}

Network network_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges"))
    edges.push_back({get<std::string>(e, "tail"), get<std::string>(e, "head"), e.value("ordinal", 1u)});
  std::vector<Message> msgs;
  for (const auto& m : field(j, "messages")) msgs.push_back({get<std::string>(m, "name"), get<std::string>(m, "source")});
  std::vector<Demand> demands;
  const auto& dj = field(j, "demands");
  if (!dj.is_object()) throw FormatError("demands must map receivers to message lists");
  for (const auto& [recv, names] : dj.items()) demands.push_back({recv, names.get<std::vector<std::string>>()});
  return Network(get<std::vector<std::string>>(j, "nodes"), std::move(edges), std::move(msgs), std::move(demands));
}

Json code_to_json(const Network& net, const LinearCode& code) {
  check_shapes(net, code);
  Json j;
  j["module"] = module_to_json(*code.module);
  Json ec = Json::object();
  for (std::size_t e = 0; e < net.edges().size(); ++e) ec[edge_key(net.edges()[e])] = row_json(code.edge_coeffs[e]);
  j["edge_coeffs"] = std::move(ec);
  Json dec = Json::object();
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    const auto& dm = net.demands()[d];
    Json per = Json::object();
    for (std::size_t t = 0; t < dm.messages.size(); ++t) per[dm.messages[t]] = row_json(code.decodings[d][t]);
    dec[dm.receiver] = std::move(per);
  }
  j["decodings"] = std::move(dec);
  return j;
}

LinearCode code_from_json(const Network& net, const Json& j) {
  auto code = zero_code(net, module_from_json(field(j, "module")));
  std::vector<bool> seen(net.edges().size(), false);
  for (const auto& [key, row] : field(j, "edge_coeffs").items()) {
    const auto e = parse_edge_key(net, key);
    if (!e) throw FormatError("unknown edge \"" + key + "\"");
    code.edge_coeffs[*e] = row.get<std::vector<Elem>>();
    seen[*e] = true;
  }
  for (std::size_t e = 0; e < seen.size(); ++e)
    if (!seen[e]) throw FormatError("no coefficients for edge " + edge_key(net.edges()[e]));
  const auto& dec = field(j, "decodings");
  for (std::size_t d = 0; d < net.demands().size(); ++d) {
    const auto& dm = net.demands()[d];
    if (!dec.contains(dm.receiver)) throw FormatError("no decodings for receiver " + dm.receiver);
    const auto& per = dec.at(dm.receiver);
    for (std::size_t t = 0; t < dm.messages.size(); ++t) {
      if (!per.contains(dm.messages[t]))
        throw FormatError("no decoding of " + dm.messages[t] + " at " + dm.receiver);
      code.decodings[d][t] = per.at(dm.messages[t]).get<std::vector<Elem>>();
    }
  }
  check_shapes(net, code);
  return code;
}

// ---------------------------------------------------------------------------
// Homomorphisms and reports

Json hom_to_json(const RingHom& h) {
  return {{"domain", ring_to_json(h.domain->descriptor())},
          {"codomain", ring_to_json(h.codomain->descriptor())},
          {"map", h.map},
          {"surjective", h.surjective}};
}

RingHom hom_from_json(const Json& j) {
  RingHom h{Ring::create(ring_from_json(field(j, "domain"))), Ring::create(ring_from_json(field(j, "codomain"))),
            get<std::vector<Elem>>(j, "map"), false};
  if (h.map.size() != h.domain->size()) throw FormatError("hom map needs one image per domain element");
  std::vector<bool> hit(h.codomain->size(), false);
  for (auto x : h.map) {
    if (x >= h.codomain->size()) throw FormatError("hom image out of range");
    hit[x] = true;
  }
  h.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return h;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["solved"] = v.solved;
  j["method"] = v.method;
  if (v.method == "semantic") j["assignments_checked"] = v.assignments_checked;
  Json st = Json::array();
  for (const auto& s : v.statuses) st.push_back({{"receiver", s.receiver}, {"message", s.message}, {"ok", s.ok}});
  j["demands"] = std::move(st);
  if (v.witness) {
    Json w{{"receiver", v.witness->receiver}, {"message", v.witness->message}};
    if (v.witness->decoded_row) w["decoded_row"] = row_json(*v.witness->decoded_row);
    if (v.witness->assignment) w["assignment"] = *v.witness->assignment;
    if (v.witness->decoded_value) w["decoded_value"] = *v.witness->decoded_value;
    w["text"] = v.witness->describe();
    j["witness"] = std::move(w);
  }
  return j;
}

Json stats_to_json(const SearchStats& s) {
  return {{"nodes", s.nodes},
          {"leaves", s.leaves},
          {"prunes", s.prunes},
          {"receiver_checks", s.receiver_checks},
          {"seconds", s.seconds}};
}

Json result_to_json(const Network& net, const SolveResult& r) {
  Json j;
  j["status"] = status_name(r.status);
  j["method"] = r.method;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.code) j["code"] = code_to_json(net, *r.code);
  j["stats"] = stats_to_json(r.stats);
  return j;
}

Json trace_to_json(const TransformTrace& t) {
  return {{"name", t.name}, {"parameters", t.parameters}, {"input", t.input}, {"output", t.output}};
}

}  // namespace netring
