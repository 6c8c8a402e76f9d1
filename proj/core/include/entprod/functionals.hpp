// functionals.hpp — scalar state functionals: purity, linear entropy,
// quadratic Renyi entropy, inverse participation ratio, coherence.

#pragma once

#include <vector>

#include "entprod/common.hpp"
#include "entprod/operators.hpp"

namespace entprod {

// gamma(rho) = Tr rho^2, in [1/d, 1].
double purity(const DensityOperator& rho);

// S_L(rho) = 1 - Tr rho^2.
double linear_entropy(const DensityOperator& rho);

// H_2(rho) = -log Tr rho^2, in [0, log d].
double renyi2(const DensityOperator& rho, LogBase base = LogBase::natural);

// Inverse participation ratio for a state expressed in the eigenbasis the
// energies index. Energies closer than the degeneracy tolerance (relative
// to the spectral range) are grouped, and all cross terms inside a group
// survive; for a fully nondegenerate spectrum this reduces to sum rho_nn^2.
double ipr(const DensityOperator& rho, const std::vector<double>& energies);

// C_2(rho) = sum_{m != n} |rho_mn|^2 in the declared basis.
double coherence2(const DensityOperator& rho);

}  // namespace entprod
