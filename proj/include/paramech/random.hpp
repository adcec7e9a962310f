#pragma once

// Seeded generators for the property suites.

#include <random>

#include "paramech/expr.hpp"
#include "paramech/forms.hpp"

namespace paramech {

using Rng = std::mt19937_64;

/// Random exact para-complex number with small numerators and denominators.
ExactPara random_exact(Rng& rng, long max_numerator = 9, long max_denominator = 4);

/// Sum of `terms` monomials in z_1..z_dim, zb_1..zb_dim of total degree <= max_degree
/// with random exact para-complex coefficients.
Expr random_polynomial(Rng& rng, int dim, int max_degree, int terms);

/// Random expression tree mixing sums, products, integer powers, quotients and
/// the builtin functions. Quotient denominators are kept away from zero divisors
/// only probabilistically.
Expr random_expression(Rng& rng, int dim, int depth);

/// Vector field with random polynomial coefficients.
VecField random_vecfield(Rng& rng, int dim, int max_degree, int terms);

/// Form of the given grade with random polynomial coefficients on random basis tuples.
DiffForm random_form(Rng& rng, int dim, int grade, int max_degree, int terms);

}  // namespace paramech
