#include "netring/transforms.hpp"

#include <algorithm>

#include "netring/catalog.hpp"

namespace netring {

namespace {

template <class F>
LinearCode map_coefficients(const LinearCode& code, ModulePtr target, F f) {
  LinearCode out;
  out.module = std::move(target);
  out.edge_coeffs = code.edge_coeffs;
  out.decodings = code.decodings;
  for (auto& row : out.edge_coeffs)
    for (auto& c : row) c = f(c);
  for (auto& rows : out.decodings)
    for (auto& row : rows)
      for (auto& c : row) c = f(c);
  return out;
}

bool same_ring(const Ring& a, const Ring& b) { return &a == &b || (a.size() == b.size() && a.descriptor() == b.descriptor()); }

// k x k entries over the base ring of a coefficient of a vector code.
std::vector<Elem> coefficient_block(const LinearCode& code, Elem c) {
  if (code.module->action_kind() == Module::Action::Regular) return {c};
  return code.module->ring()->entries(c);
}

}  // namespace

LinearCode hom_lift(const Network& net, const LinearCode& code, const RingHom& phi, ModulePtr target) {
  check_shapes(net, code);
  if (!same_ring(*phi.domain, *code.module->ring()))
    throw AlgebraError("hom_lift: homomorphism domain " + phi.domain->name() + " is not the code ring " +
                       code.module->ring()->name());
  if (!same_ring(*phi.codomain, *target->ring()))
    throw AlgebraError("hom_lift: target module ring " + target->ring()->name() + " is not the homomorphism codomain");
  if (!check_homomorphism(phi)) throw AlgebraError("hom_lift: map is not a unital ring homomorphism");
  return map_coefficients(code, std::move(target), [&](Elem c) { return phi.map[c]; });
}

LinearCode hom_lift(const Network& net, const LinearCode& code, const RingHom& phi) {
  return hom_lift(net, code, phi, Module::regular(phi.codomain));
}

LinearCode matrix_scalar_to_vector(const Network& net, const LinearCode& code) {
  check_shapes(net, code);
  const auto& R = code.module->ring();
  if (code.module->action_kind() != Module::Action::Regular || !R->is_matrix_ring())
    throw AlgebraError("matrix_scalar_to_vector needs a scalar code over a MatrixRing descriptor");
  const auto k = R->matrix_dim();
  const auto inner = R->inner()->descriptor();
  auto target = vector_module(inner, k);
  // For k = 1 the vector module is the regular module of the inner ring, with the same indices.
  return map_coefficients(code, target, [](Elem c) { return c; });
}

LinearCode vector_to_matrix_scalar(const Network& net, const LinearCode& code) {
  check_shapes(net, code);
  if (code.module->action_kind() != Module::Action::MatrixVector)
    throw AlgebraError("vector_to_matrix_scalar needs a vector code (matrix ring acting on R^k)");
  return map_coefficients(code, Module::regular(code.module->ring()), [](Elem c) { return c; });
}

std::uint32_t vector_dimension(const LinearCode& code) {
  switch (code.module->action_kind()) {
    case Module::Action::Regular:
      return 1;
    case Module::Action::MatrixVector:
      return code.module->ring()->matrix_dim();
    default:
      throw AlgebraError("not a vector code");
  }
}

RingDescriptor vector_base_ring(const LinearCode& code) {
  switch (code.module->action_kind()) {
    case Module::Action::Regular:
      return code.module->ring()->descriptor();
    case Module::Action::MatrixVector:
      return code.module->ring()->inner()->descriptor();
    default:
      throw AlgebraError("not a vector code");
  }
}

LinearCode dim_sum(const Network& net, const std::vector<LinearCode>& codes) {
  if (codes.empty()) throw AlgebraError("dim_sum needs at least one code");
  if (codes.size() == 1) return codes.front();
  const auto base = vector_base_ring(codes.front());
  std::vector<std::uint32_t> dims;
  std::uint32_t K = 0;
  for (const auto& c : codes) {
    check_shapes(net, c);
    if (!(vector_base_ring(c) == base)) throw AlgebraError("dim_sum: codes are over different base rings");
    dims.push_back(vector_dimension(c));
    K += dims.back();
  }
  auto target = vector_module(base, K);
  const auto& M = *target->ring();
  auto combine = [&](auto pick) {
    std::vector<Elem> e(static_cast<std::size_t>(K) * K, 0);
    std::uint32_t off = 0;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      const auto blk = coefficient_block(codes[i], pick(codes[i]));
      const auto k = dims[i];
      for (std::uint32_t r = 0; r < k; ++r)
        for (std::uint32_t c = 0; c < k; ++c) e[(off + r) * K + off + c] = blk[r * k + c];
      off += k;
    }
    return M.from_entries(e);
  };
  LinearCode out = zero_code(net, target);
  for (std::size_t e = 0; e < out.edge_coeffs.size(); ++e)
    for (std::size_t i = 0; i < out.edge_coeffs[e].size(); ++i)
      out.edge_coeffs[e][i] = combine([&](const LinearCode& c) { return c.edge_coeffs[e][i]; });
  for (std::size_t d = 0; d < out.decodings.size(); ++d)
    for (std::size_t t = 0; t < out.decodings[d].size(); ++t)
      for (std::size_t i = 0; i < out.decodings[d][t].size(); ++i)
        out.decodings[d][t][i] = combine([&](const LinearCode& c) { return c.decodings[d][t][i]; });
  return out;
}

LinearCode product_code(const Network& net, const std::vector<LinearCode>& codes) {
  if (codes.empty()) throw AlgebraError("product_code needs at least one code");
  std::vector<ModulePtr> parts;
  for (const auto& c : codes) {
    check_shapes(net, c);
    parts.push_back(c.module);
  }
  auto target = Module::product(parts);
  const auto& P = *target->ring();
  auto combine = [&](auto pick) {
    std::vector<Elem> comps;
    for (const auto& c : codes) comps.push_back(pick(c));
    return P.from_components(comps);
  };
  LinearCode out = zero_code(net, target);
  for (std::size_t e = 0; e < out.edge_coeffs.size(); ++e)
    for (std::size_t i = 0; i < out.edge_coeffs[e].size(); ++i)
      out.edge_coeffs[e][i] = combine([&](const LinearCode& c) { return c.edge_coeffs[e][i]; });
  for (std::size_t d = 0; d < out.decodings.size(); ++d)
    for (std::size_t t = 0; t < out.decodings[d].size(); ++t)
      for (std::size_t i = 0; i < out.decodings[d][t].size(); ++i)
        out.decodings[d][t][i] = combine([&](const LinearCode& c) { return c.decodings[d][t][i]; });
  return out;
}

SimpleReduction simple_reduction(const RingPtr& r, std::size_t bound) {
  const auto all = two_sided_ideals(r, bound);
  auto maxi = maximal_proper(all);
  if (maxi.empty()) throw AlgebraError("the zero ring has no simple quotient");
  std::sort(maxi.begin(), maxi.end(), [](const Ideal& a, const Ideal& b) {
    return a.size() != b.size() ? a.size() < b.size() : a.elements < b.elements;
  });
  const auto& I = maxi.front();
  if (I.is_zero()) return {r, identity_hom(r), I};
  auto q = quotient(r, I);
  return {q.ring, q.projection, I};
}

LinearCode faithful_reduction(const Network& net, const LinearCode& code) {
  check_shapes(net, code);
  const auto aq = annihilator_quotient(code.module);
  return map_coefficients(code, aq.module, [&](Elem c) { return aq.projection.map[c]; });
}

LinearCode reduce_to_field_vector_code(const Network& net, const LinearCode& code, std::vector<TransformTrace>* trace) {
  if (code.module->action_kind() != Module::Action::Regular)
    throw AlgebraError("reduce_to_field_vector_code needs a scalar code");
  const auto& R = code.module->ring();
  const auto sr = simple_reduction(R);
  if (trace)
    trace->push_back({"simple-reduce", {"ideal size " + std::to_string(sr.ideal.size())}, R->name(), sr.ring->name()});
  const auto model_desc = simple_model(sr.ring);
  const auto model = Ring::create(model_desc);
  RingHom phi = sr.projection;
  if (!(sr.ring->descriptor() == model_desc)) {
    const auto iso = find_isomorphism(sr.ring, model);
    if (!iso) throw AlgebraError("simple quotient " + sr.ring->name() + " is not isomorphic to " + model->name());
    phi = compose(*iso, sr.projection);
  }
  auto lifted = hom_lift(net, code, phi);
  if (trace) trace->push_back({"hom-lift", {R->name() + " -> " + model->name()}, R->name(), model->name()});
  if (!model->is_matrix_ring()) return lifted;
  auto vec = matrix_scalar_to_vector(net, lifted);
  if (trace) trace->push_back({"mat2vec", {"k=" + std::to_string(model->matrix_dim())}, model->name(), vec.module->describe()});
  return vec;
}

}  // namespace netring
