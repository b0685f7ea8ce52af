#include "netring/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "netring/catalog.hpp"
#include "netring/repro.hpp"
#include "netring/transforms.hpp"

namespace netring {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path;
  std::string sha256;
};

// Everything a command needs besides its own options.
struct Context {
  Context(std::istream& i, std::ostream& e) : in(i), err(e) {}

  std::istream& in;
  std::ostream& err;
  bool stdin_used = false;
  std::vector<Input> inputs;
  SearchOptions search;

  std::string read_text(const std::string& path) {
    std::string text;
    if (path == "-") {
      if (stdin_used) throw UsageError("standard input can be read only once");
      stdin_used = true;
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(path, std::ios::binary);
      if (!f) throw UsageError("cannot open " + path);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    inputs.push_back({path, sha256_hex(text)});
    return text;
  }

  Json read_json(const std::string& path) {
    const auto text = read_text(path);
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(path + ": " + e.what());
    }
  }

  // A file, "-", or a ring name such as "GF(4)".
  RingDescriptor ring(const std::string& spec) {
    if (spec == "-" || fs::is_regular_file(spec)) return ring_from_json(read_json(spec));
    return parse_ring_name(spec);
  }

  RingDescriptor field(const std::string& spec) {
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '^'; }))
      return parse_ring_name("GF(" + spec + ")");
    return ring(spec);
  }

  Network network(const std::string& path) { return network_from_json(read_json(path)); }
  LinearCode code(const Network& net, const std::string& path) { return code_from_json(net, read_json(path)); }
};

// Result of one command: JSON payload, optional text rendering, exit code.
struct Outcome {
  Json result;
  std::string text;
  int exit = exit_code::kSolved;
};

int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved:
      return exit_code::kSolved;
    case SolveStatus::Unsolvable:
      return exit_code::kUnsolved;
    case SolveStatus::BudgetExceeded:
      return exit_code::kBudget;
  }
  return exit_code::kDomain;
}

Json ideal_json(const Ideal& i) { return {{"size", i.size()}, {"elements", i.elements}}; }

Json ring_info(const RingDescriptor& d) {
  const auto r = Ring::create(d);
  Json j;
  j["name"] = r->name();
  j["size"] = r->size();
  j["descriptor"] = ring_to_json(d);
  j["commutative"] = r->is_commutative();
  j["field"] = r->is_field();
  if (r->has_identity()) j["identity"] = r->one();
  j["characteristic"] = r->characteristic();
  return j;
}

// ---------------------------------------------------------------------------
// Command option holders

struct RingOpts {
  std::string spec;
  bool verify = false, radical = false, ideals = false, decompose = false;
  std::vector<std::uint32_t> catalog;
  std::vector<std::string> homs;
  bool surjective = false;
  std::size_t structured = 0;
};

struct ModuleOpts {
  std::string file, regular, vector;
  std::uint32_t dim = 2;
  bool check = false, faithful = false, submodules = false, annihilator = false;
};

struct SearchArgs {
  std::uint64_t budget = 0;
  double time = 0;
  unsigned shards = 0;
  bool no_normalize = false, no_canonical = false, quotients = false;
  std::string strategy = "auto";
};

struct Args {
  std::string manifest, output;
  RingOpts ring;
  ModuleOpts module;
  std::string gen_kind;
  std::uint32_t gen_n = 0;
  std::string net_file, code_file, field = "GF(2)", to, hom, ring_spec, catalog_dir, suite;
  std::vector<std::string> codes, vars;
  bool semantic = false, inverse = false, as_vector = false, json = false, trace = false;
  std::uint32_t dim = 1, n = 2;
  std::size_t max_size = 16;
  SearchArgs search;
};

void apply_search(Context& ctx, const SearchArgs& a) {
  if (a.budget) ctx.search.node_budget = a.budget;
  ctx.search.time_budget = a.time;
  ctx.search.shards = a.shards;
  ctx.search.normalize_degree_one_forwarding = !a.no_normalize;
  ctx.search.canonicalize_units = !a.no_canonical;
  ctx.search.reduce_via_quotients = a.quotients;
  if (a.strategy == "rank")
    ctx.search.strategy = DecodeStrategy::Rank;
  else if (a.strategy == "exhaustive")
    ctx.search.strategy = DecodeStrategy::Exhaustive;
  else
    ctx.search.strategy = DecodeStrategy::Auto;
}

void add_search_options(CLI::App* c, SearchArgs& a) {
  c->add_option("--budget", a.budget, "Node budget (default: NETRING_BUDGET or 2e9)");
  c->add_option("--time", a.time, "Wall-clock limit in seconds");
  c->add_option("--shards", a.shards, "Worker threads (0 = hardware concurrency)");
  c->add_flag("--no-normalize", a.no_normalize, "Search forwarding coefficients too");
  c->add_flag("--no-canonical", a.no_canonical, "Do not reduce coefficient vectors up to units");
  c->add_flag("--quotients", a.quotients, "Settle products and non-simple rings through quotients");
  c->add_option("--strategy", a.strategy, "auto | rank | exhaustive")
      ->check(CLI::IsMember({"auto", "rank", "exhaustive"}));
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_ring(Context& ctx, const RingOpts& o) {
  Outcome out;
  if (!o.catalog.empty()) {
    const auto p = o.catalog[0], k = o.catalog[1];
    const auto ds = semisimple_catalog(p, k);
    Json rings = Json::array();
    for (const auto& d : ds) rings.push_back({{"name", d.name()}, {"descriptor", ring_to_json(d)}});
    out.result = {{"p", p}, {"k", k}, {"count", ds.size()}, {"rings", std::move(rings)}};
    return out;
  }
  if (o.structured) {
    const auto cat = structured_catalog(o.structured);
    Json rings = Json::array();
    for (const auto& e : cat.entries)
      rings.push_back({{"name", e.descriptor.name()},
                       {"size", Ring::create(e.descriptor)->size()},
                       {"family", e.family},
                       {"descriptor", ring_to_json(e.descriptor)}});
    out.result = {{"max_size", o.structured},
                  {"count", cat.entries.size()},
                  {"coverage", cat.coverage},
                  {"limitation", cat.limitation},
                  {"rings", std::move(rings)}};
    return out;
  }
  if (!o.homs.empty()) {
    const auto r = Ring::create(ctx.ring(o.homs[0]));
    const auto s = Ring::create(ctx.ring(o.homs[1]));
    const auto hs = find_homomorphisms(r, s, o.surjective);
    Json list = Json::array();
    for (const auto& h : hs) list.push_back(hom_to_json(h));
    out.result = {{"domain", r->name()}, {"codomain", s->name()}, {"count", hs.size()}, {"homomorphisms", list}};
    return out;
  }
  if (o.spec.empty()) throw UsageError("ring: give a ring, --catalog P K, --structured N or --homs FROM TO");
  const auto d = ctx.ring(o.spec);
  out.result = ring_info(d);
  const auto r = Ring::create(d);
  if (o.verify) {
    const auto rep = verify_ring_axioms(*r);
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      Json cj{{"axiom", c.axiom}, {"passed", c.passed}};
      if (!c.passed) cj["witness"] = c.witness;
      checks.push_back(std::move(cj));
    }
    out.result["axioms"] = {{"passed", rep.all_passed()}, {"method", rep.method}, {"checks", checks}};
    if (!rep.all_passed()) out.exit = exit_code::kDomain;
  }
  if (o.radical) {
    const auto j = radical(r);
    out.result["radical"] = ideal_json(j);
    const auto q = quotient(r, j);
    out.result["radical"]["quotient_size"] = q.ring->size();
  }
  if (o.ideals) {
    Json list = Json::array();
    for (const auto& i : two_sided_ideals(r)) list.push_back(ideal_json(i));
    out.result["two_sided_ideals"] = std::move(list);
  }
  if (o.decompose) {
    Json list = Json::array();
    for (const auto& c : semisimple_decompose(r))
      list.push_back({{"matrix_dim", c.matrix_dim}, {"field_size", c.field_size}});
    out.result["semisimple_quotient"] = std::move(list);
  }
  return out;
}

Outcome cmd_module(Context& ctx, const ModuleOpts& o) {
  ModulePtr m;
  if (!o.regular.empty())
    m = Module::regular(Ring::create(ctx.ring(o.regular)));
  else if (!o.vector.empty())
    m = vector_module(ctx.ring(o.vector), o.dim);
  else if (!o.file.empty())
    m = module_from_json(ctx.read_json(o.file));
  else
    throw UsageError("module: give a module file, --regular RING or --vector RING --dim K");
  Outcome out;
  out.result["module"] = module_to_json(*m);
  out.result["description"] = m->describe();
  out.result["ring_size"] = m->ring()->size();
  out.result["group_size"] = m->size();
  if (o.check) {
    const auto rep = check_module_axioms(*m);
    out.result["axioms"] = {{"passed", rep.all_passed()}, {"method", rep.method}, {"first_failure", rep.first_failure()}};
    if (!rep.all_passed()) out.exit = exit_code::kDomain;
  }
  if (o.faithful) {
    out.result["faithful"] = is_faithful(*m);
    out.result["annihilator"] = ideal_json(annihilator(*m));
  }
  if (o.annihilator) {
    const auto q = annihilator_quotient(m);
    out.result["annihilator_quotient"] = {{"ring", ring_to_json(q.ring->descriptor())},
                                          {"faithful", is_faithful(*q.module)},
                                          {"module", module_to_json(*q.module)}};
  }
  if (o.submodules) {
    const auto subs = submodules(*m);
    Json list = Json::array();
    for (const auto& s : subs) list.push_back({{"size", s.size()}, {"elements", s}});
    out.result["submodules"] = std::move(list);
  }
  return out;
}

Outcome cmd_net_gen(const std::string& kind, std::uint32_t n) {
  Network net;
  if (kind == "m")
    net = m_network();
  else if (kind == "trivial")
    net = trivial_network();
  else if (kind == "dim-n")
    net = dim_n_network(n ? n : 2);
  else if (kind == "choose-two")
    net = choose_two_network(n ? n : 3);
  else
    throw UsageError("net gen: unknown network \"" + kind + "\"");
  return {network_to_json(net), {}, exit_code::kSolved};
}

Outcome cmd_net_validate(Context& ctx, const std::string& file) {
  const auto net = network_from_json(ctx.read_json(file));
  const auto rep = validate_network(net);
  Outcome out;
  out.result = {{"valid", rep.ok()}, {"errors", rep.errors}};
  out.result["nodes"] = net.nodes().size();
  out.result["edges"] = net.edges().size();
  out.result["messages"] = net.messages().size();
  out.result["receivers"] = net.demands().size();
  out.exit = rep.ok() ? exit_code::kSolved : exit_code::kDomain;
  return out;
}

Outcome cmd_code_verify(Context& ctx, const Args& a) {
  const auto net = ctx.network(a.net_file);
  require_valid(net);
  const auto code = ctx.code(net, a.code_file);
  const auto v = a.semantic ? semantic_verify(net, code) : verify_solution(net, code);
  Outcome out;
  out.result = verdict_to_json(v);
  out.exit = v.solved ? exit_code::kSolved : exit_code::kUnsolved;
  return out;
}

Outcome cmd_code_entropy(Context& ctx, const Args& a) {
  const auto net = ctx.network(a.net_file);
  const auto code = ctx.code(net, a.code_file);
  std::vector<CodeVariable> vars;
  for (const auto& s : a.vars) vars.push_back(parse_variable(net, s));
  const auto rep = entropy_of(net, code, vars);
  Outcome out;
  out.result = {{"variables", a.vars}, {"entropy", rep.rank}, {"unit", "log " + vector_base_ring(code).name()}};
  return out;
}

Outcome cmd_code_gen(const Args& a) {
  Outcome out;
  if (a.gen_kind == "m") {
    const auto net = m_network();
    auto code = explicit_m_network_code(net);
    if (a.as_vector) code = matrix_scalar_to_vector(net, code);
    out.result = code_to_json(net, code);
  } else if (a.gen_kind == "routing") {
    const auto net = dim_n_network(a.n);
    out.result = code_to_json(net, routing_code_dim_n(a.n, parse_ring_name(a.field), net));
  } else {
    throw UsageError("code gen: unknown code \"" + a.gen_kind + "\"");
  }
  return out;
}

Outcome code_outcome(const Network& net, const LinearCode& code) {
  return {code_to_json(net, code), {}, exit_code::kSolved};
}

Outcome cmd_transform(Context& ctx, const std::string& which, const Args& a) {
  const auto net = ctx.network(a.net_file);
  if (which == "dim-sum" || which == "product") {
    if (a.codes.empty()) throw UsageError("transform " + which + ": give at least one code");
    std::vector<LinearCode> codes;
    for (const auto& f : a.codes) codes.push_back(ctx.code(net, f));
    return code_outcome(net, which == "dim-sum" ? dim_sum(net, codes) : product_code(net, codes));
  }
  const auto code = ctx.code(net, a.code_file);
  if (which == "hom-lift") {
    if (!a.hom.empty()) return code_outcome(net, hom_lift(net, code, hom_from_json(ctx.read_json(a.hom))));
    if (a.to.empty()) throw UsageError("transform hom-lift: give --hom FILE or --to RING");
    const auto target = Ring::create(ctx.ring(a.to));
    HomSearchOptions ho;
    ho.surjective_only = true;
    ho.limit = 1;
    const auto hs = find_homomorphisms(code.module->ring(), target, ho);
    if (hs.empty())
      throw AlgebraError("no surjective homomorphism " + code.module->ring()->name() + " -> " + target->name());
    return code_outcome(net, hom_lift(net, code, hs[0]));
  }
  if (which == "mat2vec")
    return code_outcome(net, a.inverse ? vector_to_matrix_scalar(net, code) : matrix_scalar_to_vector(net, code));
  if (which == "simple-reduce") {
    if (code.module->action_kind() != Module::Action::Regular)
      throw AlgebraError("simple-reduce needs a scalar code over a ring acting on itself");
    const auto s = simple_reduction(code.module->ring());
    return code_outcome(net, hom_lift(net, code, s.projection));
  }
  if (which == "reduce") {
    std::vector<TransformTrace> trace;
    const auto out = reduce_to_field_vector_code(net, code, &trace);
    if (a.trace)
      for (const auto& t : trace) ctx.err << trace_to_json(t).dump() << "\n";
    return code_outcome(net, out);
  }
  throw UsageError("transform: unknown transform \"" + which + "\"");
}

Outcome cmd_solve(Context& ctx, const std::string& which, const Args& a) {
  const auto net = ctx.network(a.net_file);
  require_valid(net);
  apply_search(ctx, a.search);
  Outcome out;
  if (which == "scalar" || which == "vector") {
    const auto r = which == "scalar" ? solve_scalar(net, Ring::create(ctx.ring(a.ring_spec)), ctx.search)
                                     : solve_vector(net, ctx.field(a.field), a.dim, ctx.search);
    out.result = result_to_json(net, r);
    out.exit = status_exit(r.status);
    return out;
  }
  std::vector<RingDescriptor> catalog;
  if (!a.catalog_dir.empty()) {
    std::vector<fs::path> files;
    if (fs::is_directory(a.catalog_dir)) {
      for (const auto& e : fs::directory_iterator(a.catalog_dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(a.catalog_dir);
    }
    for (const auto& f : files) {
      const auto j = ctx.read_json(f.string());
      if (j.is_array())
        for (const auto& d : j) catalog.push_back(ring_from_json(d));
      else
        catalog.push_back(ring_from_json(j));
    }
  } else {
    const auto cat = structured_catalog(a.max_size);
    for (const auto& e : cat.entries) catalog.push_back(e.descriptor);
    out.result["catalog"] = {{"coverage", cat.coverage}, {"limitation", cat.limitation}, {"count", catalog.size()}};
  }
  const auto rep = smallest_ring_search(net, catalog, ctx.search);
  out.result["minimal_size"] = rep.minimal_size ? Json(*rep.minimal_size) : Json(nullptr);
  Json mins = Json::array();
  for (std::size_t i = 0; i < rep.minimal_rings.size(); ++i)
    mins.push_back({{"name", rep.minimal_rings[i].name()}, {"code", code_to_json(net, rep.codes[i])}});
  out.result["minimal_rings"] = std::move(mins);
  Json vs = Json::array();
  for (const auto& v : rep.verdicts)
    vs.push_back({{"ring", v.name}, {"size", v.size}, {"status", status_name(v.status)}, {"method", v.method}});
  out.result["verdicts"] = std::move(vs);
  out.result["undetermined"] = rep.undetermined;
  if (!rep.undetermined.empty())
    out.exit = exit_code::kBudget;
  else
    out.exit = rep.minimal_size ? exit_code::kSolved : exit_code::kUnsolved;
  return out;
}

Outcome cmd_repro(Context& ctx, const std::string& suite, bool json_text) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = repro_suites();
  else
    suites.push_back(suite);
  Outcome out;
  std::ostringstream table;
  Json reports = Json::array();
  bool all = true;
  for (const auto& s : suites) {
    if (std::find(repro_suites().begin(), repro_suites().end(), s) == repro_suites().end())
      throw UsageError("repro: unknown suite \"" + s + "\"");
    const auto rep = run_repro(s, ctx.search);
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
      table << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << s << std::setw(52) << c.name << c.detail
            << "  (" << std::fixed << std::setprecision(3) << c.seconds << " s)\n";
    }
    reports.push_back({{"suite", s}, {"passed", rep.passed()}, {"checks", std::move(checks)}});
    all = all && rep.passed();
  }
  table << (all ? "all checks passed" : "some checks FAILED") << "\n";
  out.result = {{"passed", all}, {"suites", std::move(reports)}};
  if (!json_text) out.text = table.str();
  out.exit = all ? exit_code::kSolved : exit_code::kUnsolved;
  return out;
}

void strip_volatile(Json& j) {
  if (j.is_object()) {
    j.erase("stats");
    j.erase("seconds");
    for (auto& [k, v] : j.items()) strip_volatile(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_volatile(v);
  }
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

int run_replay(const std::string& file, std::istream& in, std::ostream& out, std::ostream& err);

int run_impl(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
             Json* manifest_out) {
  CLI::App app{"Finite-ring network coding toolkit", "netring"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--manifest", a.manifest, "Write a run manifest to FILE");
  app.add_option("-o,--output", a.output, "Write the result to FILE instead of standard output");

  auto* ring = app.add_subcommand("ring", "Construct, check and classify rings");
  ring->add_option("ring", a.ring.spec, "Ring JSON file, - or a name such as M_2(GF(2))");
  ring->add_flag("--verify", a.ring.verify, "Check the ring axioms");
  ring->add_flag("--radical", a.ring.radical, "Jacobson radical and quotient size");
  ring->add_flag("--ideals", a.ring.ideals, "All two-sided ideals");
  ring->add_flag("--decompose", a.ring.decompose, "Simple factors of R/J");
  ring->add_option("--catalog", a.ring.catalog, "Semi-simple rings of size p^k")->expected(2);
  ring->add_option("--structured", a.ring.structured, "Structured catalog up to this size");
  ring->add_option("--homs", a.ring.homs, "Homomorphisms FROM TO")->expected(2);
  ring->add_flag("--surjective", a.ring.surjective, "Only surjective homomorphisms");

  auto* module = app.add_subcommand("module", "Build and check modules");
  module->add_option("file", a.module.file, "Module JSON file or -");
  module->add_option("--regular", a.module.regular, "Regular module of RING");
  module->add_option("--vector", a.module.vector, "M_k(RING) acting on RING^k");
  module->add_option("--dim", a.module.dim, "k for --vector");
  module->add_flag("--check", a.module.check, "Check the module axioms");
  module->add_flag("--faithful", a.module.faithful, "Faithfulness and annihilator");
  module->add_flag("--annihilator", a.module.annihilator, "Faithful quotient module");
  module->add_flag("--submodules", a.module.submodules, "All submodules");

  auto* net = app.add_subcommand("net", "Generate and validate networks");
  net->require_subcommand(1);
  auto* net_gen = net->add_subcommand("gen", "Generate m, trivial, dim-n N or choose-two N");
  net_gen->add_option("kind", a.gen_kind)->required();
  net_gen->add_option("n", a.gen_n);
  auto* net_validate = net->add_subcommand("validate", "Validate a network file");
  net_validate->add_option("net", a.net_file)->required();

  auto* code = app.add_subcommand("code", "Verify codes and compute entropies");
  code->require_subcommand(1);
  auto* code_verify = code->add_subcommand("verify", "Verify a code against a network");
  code_verify->add_option("net", a.net_file)->required();
  code_verify->add_option("code", a.code_file)->required();
  code_verify->add_flag("--semantic", a.semantic, "Evaluate every message assignment");
  auto* code_entropy = code->add_subcommand("entropy", "Rank-entropy of code variables");
  code_entropy->add_option("net", a.net_file)->required();
  code_entropy->add_option("code", a.code_file)->required();
  code_entropy->add_option("vars", a.vars, "Messages (m:W or W) and edges (e:1->3:1)");
  auto* code_gen = code->add_subcommand("gen", "Built-in codes: m (for net gen m), routing (for net gen dim-n N)");
  code_gen->add_option("kind", a.gen_kind)->required();
  code_gen->add_option("--n", a.n, "n for the routing code");
  code_gen->add_option("--field", a.field, "Field of the routing code");
  code_gen->add_flag("--vector", a.as_vector, "Emit the m code in vector form");

  auto* transform = app.add_subcommand("transform", "Solution-preserving transforms");
  transform->require_subcommand(1);
  std::vector<std::pair<CLI::App*, std::string>> transforms;
  for (const char* name : {"hom-lift", "mat2vec", "dim-sum", "product", "simple-reduce", "reduce"}) {
    auto* t = transform->add_subcommand(name);
    t->add_option("net", a.net_file)->required();
    const std::string n = name;
    if (n == "dim-sum" || n == "product")
      t->add_option("codes", a.codes)->required();
    else
      t->add_option("code", a.code_file)->required();
    transforms.emplace_back(t, n);
  }
  transforms[0].first->add_option("--hom", a.hom, "Homomorphism JSON");
  transforms[0].first->add_option("--to", a.to, "Target ring; the first surjective homomorphism is used");
  transforms[1].first->add_flag("--inverse", a.inverse, "Vector code back to a scalar matrix-ring code");
  transforms[5].first->add_flag("--trace", a.trace, "Print each step to standard error");
  transform->description("hom-lift, mat2vec, dim-sum, product, simple-reduce, reduce");

  auto* solve = app.add_subcommand("solve", "Decide linear solvability");
  solve->require_subcommand(1);
  auto* s_scalar = solve->add_subcommand("scalar", "Scalar solvability over a ring");
  s_scalar->add_option("net", a.net_file)->required();
  s_scalar->add_option("--ring", a.ring_spec)->required();
  auto* s_vector = solve->add_subcommand("vector", "Vector solvability over a field");
  s_vector->add_option("net", a.net_file)->required();
  s_vector->add_option("--field", a.field, "p, p^k or a ring name");
  s_vector->add_option("--dim", a.dim)->required();
  auto* s_small = solve->add_subcommand("smallest", "Smallest solvable rings of a catalog");
  s_small->add_option("net", a.net_file)->required();
  s_small->add_option("--catalog", a.catalog_dir, "Directory (or file) of ring JSON; default structured catalog");
  s_small->add_option("--max-size", a.max_size, "Structured catalog bound");
  for (auto* s : {s_scalar, s_vector, s_small}) add_search_options(s, a.search);

  auto* repro = app.add_subcommand("repro", "Run a reproduction suite: m-code, dim-n, choose-two, catalog, pipeline, all");
  repro->add_option("suite", a.suite)->required();
  repro->add_flag("--json", a.json, "Print JSON instead of a table");
  add_search_options(repro, a.search);

  std::string replay_file;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare result digests");
  replay->add_option("manifest", replay_file)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : exit_code::kUsage;
  }

  if (replay->parsed()) return run_replay(replay_file, in, out, err);

  Context ctx{in, err};
  if (const char* b = std::getenv("NETRING_BUDGET")) {
    try {
      ctx.search.node_budget = std::stoull(b);
    } catch (const std::exception&) {
      err << "netring: ignoring malformed NETRING_BUDGET\n";
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome res;
  try {
    if (ring->parsed())
      res = cmd_ring(ctx, a.ring);
    else if (module->parsed())
      res = cmd_module(ctx, a.module);
    else if (net_gen->parsed())
      res = cmd_net_gen(a.gen_kind, a.gen_n);
    else if (net_validate->parsed())
      res = cmd_net_validate(ctx, a.net_file);
    else if (code_verify->parsed())
      res = cmd_code_verify(ctx, a);
    else if (code_entropy->parsed())
      res = cmd_code_entropy(ctx, a);
    else if (code_gen->parsed())
      res = cmd_code_gen(a);
    else if (repro->parsed()) {
      apply_search(ctx, a.search);
      res = cmd_repro(ctx, a.suite, a.json);
    } else if (solve->parsed()) {
      for (auto* s : {s_scalar, s_vector, s_small})
        if (s->parsed()) res = cmd_solve(ctx, s->get_name(), a);
    } else {
      for (const auto& [t, name] : transforms)
        if (t->parsed()) res = cmd_transform(ctx, name, a);
    }
  } catch (const UsageError& e) {
    err << "netring: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const BoundExceeded& e) {
    err << "netring: bound exceeded: " << e.what() << "\n";
    return exit_code::kBudget;
  } catch (const std::exception& e) {
    err << "netring: " << e.what() << "\n";
    return exit_code::kDomain;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string rendered = res.text.empty() ? res.result.dump(2) + "\n" : res.text;
  if (a.output.empty()) {
    out << rendered;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) {
      err << "netring: cannot write " << a.output << "\n";
      return exit_code::kUsage;
    }
    f << res.result.dump(2) << "\n";
  }

  if (!a.manifest.empty() || manifest_out) {
    std::vector<std::string> replay_args;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      replay_args.push_back(args[i]);
    }
    Json inputs = Json::array();
    for (const auto& i : ctx.inputs) inputs.push_back({{"path", i.path}, {"sha256", i.sha256}});
    const char* env_budget = std::getenv("NETRING_BUDGET");
    Json m{{"subcommand", join(replay_args)},
           {"args", replay_args},
           {"inputs", inputs},
           {"options", {{"NETRING_BUDGET", env_budget ? Json(env_budget) : Json(nullptr)}}},
           {"version", kVersion},
           {"wall_clock_seconds", wall},
           {"exit_code", res.exit},
           {"result_sha256", result_digest(res.result)}};
    if (manifest_out) *manifest_out = m;
    if (!a.manifest.empty()) {
      std::ofstream f(a.manifest, std::ios::binary);
      if (!f) {
        err << "netring: cannot write " << a.manifest << "\n";
        return exit_code::kUsage;
      }
      f << m.dump(2) << "\n";
    }
  }
  return res.exit;
}

int run_replay(const std::string& file, std::istream& in, std::ostream& out, std::ostream& err) {
  Json m;
  try {
    std::ifstream f(file, std::ios::binary);
    if (!f) throw UsageError("cannot open " + file);
    m = Json::parse(f);
  } catch (const std::exception& e) {
    err << "netring: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  Json report{{"manifest", file}};
  for (const auto& i : m.value("inputs", Json::array())) {
    const auto path = i.value("path", std::string{});
    if (path == "-") {
      err << "netring: cannot replay a run that read standard input\n";
      return exit_code::kDomain;
    }
    std::ifstream f(path, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (!f.good() && !f.eof()) {
      err << "netring: cannot read input " << path << "\n";
      return exit_code::kDomain;
    }
    if (sha256_hex(text) != i.value("sha256", std::string{})) {
      err << "netring: input " << path << " changed since the manifest was written\n";
      return exit_code::kDomain;
    }
  }
  std::ostringstream sink, sink_err;
  Json again;
  const auto args = m.value("args", std::vector<std::string>{});
  const int rc = run_impl(args, in, sink, sink_err, &again);
  const auto want = m.value("result_sha256", std::string{});
  const auto got = again.value("result_sha256", std::string{});
  report["expected"] = want;
  report["actual"] = got;
  report["exit_code"] = rc;
  report["reproduced"] = !got.empty() && got == want && rc == m.value("exit_code", -1);
  out << report.dump(2) << "\n";
  return report["reproduced"].get<bool>() ? exit_code::kSolved : exit_code::kUnsolved;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return os.str();
}

std::string result_digest(const Json& result) {
  Json j = result;
  strip_volatile(j);
  return sha256_hex(j.dump());
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  return run_impl(args, in, out, err, nullptr);
}

}  // namespace netring
