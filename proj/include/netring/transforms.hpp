#pragma once

#include <string>
#include <vector>

#include "netring/code.hpp"
#include "netring/ideal.hpp"

namespace netring {

/// Record of one transform application.
struct TransformTrace {
  std::string name;
  std::vector<std::string> parameters;
  std::string input;   // description of the input code's module
  std::string output;  // description of the output code's module
};

/// Replaces every coefficient c by phi(c); the result is a code over `target`,
/// whose ring must be phi's codomain.
LinearCode hom_lift(const Network& net, const LinearCode& code, const RingHom& phi, ModulePtr target);
/// Same with target = regular module of phi's codomain.
LinearCode hom_lift(const Network& net, const LinearCode& code, const RingHom& phi);

/// Scalar code over M_k(R) acting on itself -> k-dimensional vector code over R
/// (M_k(R) acting on R^k); coefficients are unchanged.
LinearCode matrix_scalar_to_vector(const Network& net, const LinearCode& code);
/// The inverse direction.
LinearCode vector_to_matrix_scalar(const Network& net, const LinearCode& code);

/// Dimension k of a vector code (1 for a scalar code over a ring), and its base ring.
std::uint32_t vector_dimension(const LinearCode& code);
RingDescriptor vector_base_ring(const LinearCode& code);

/// Block-diagonal combination of vector codes over the same base ring.
LinearCode dim_sum(const Network& net, const std::vector<LinearCode>& codes);

/// Componentwise code over the product of the input modules.
LinearCode product_code(const Network& net, const std::vector<LinearCode>& codes);

struct SimpleReduction {
  RingPtr ring;
  RingHom projection;
  Ideal ideal;  // the maximal two-sided ideal divided out ({0} when R is simple)
};

/// R / (maximal two-sided ideal with the largest quotient, ties broken by element order).
SimpleReduction simple_reduction(const RingPtr& r, std::size_t bound = 4096);

/// Code over a possibly unfaithful module -> code over its faithful annihilator quotient.
LinearCode faithful_reduction(const Network& net, const LinearCode& code);

/// simple_reduction, then an isomorphism onto a structured M_k(GF(q)), hom_lift and
/// matrix_scalar_to_vector: a scalar code over R becomes a k-dimensional vector code over GF(q).
LinearCode reduce_to_field_vector_code(const Network& net, const LinearCode& code,
                                       std::vector<TransformTrace>* trace = nullptr);

}  // namespace netring
