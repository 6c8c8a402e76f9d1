// measure.hpp — the entanglement-production measure
//
//   epsilon(A) = log ||A|| / ||A_x||,   A_x = (tensor of block marginals)
//                                             / (Tr A)^(N-1),
//
// for arbitrary trace-class operators and statistical operators, plus the
// derived quantities: Renyi decomposition, Gibbs form, post-measurement
// reduction, and composite-measurement correlators.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "entprod/common.hpp"
#include "entprod/functionals.hpp"
#include "entprod/operators.hpp"
#include "entprod/space.hpp"

namespace entprod {

struct MeasureReport {
    double epsilon = 0.0;          // log(norm_numerator/norm_denominator)
    double norm_numerator = 0.0;   // ||A||
    double norm_denominator = 0.0; // ||A_x||
    std::vector<double> per_block_norms;  // ||A_i||, one per partition block
    LogBase log_base = LogBase::natural;
};

// The nonentangling product counterpart A_x: tensor product of block
// marginals, normalized so Tr A_x = Tr A. The result lives on the original
// layout (factors are permuted back when blocks interleave).
// Throws ZeroTraceError when |Tr A| <= tol::trace_zero.
DenseOperator nonentangling_counterpart(const DenseOperator& a,
                                        const Partition& p);

// epsilon(A) for any trace-class operator; Hermiticity is not required.
MeasureReport entanglement_production(const DenseOperator& a,
                                      const Partition& p,
                                      LogBase base = LogBase::natural);

MeasureReport entanglement_production(const DensityOperator& rho,
                                      const Partition& p,
                                      LogBase base = LogBase::natural);

// Pure-state path: marginal purities come from Gram matrices of the
// reshaped state vector, never from the full d x d projector.
MeasureReport pure_state_measure(const Vector& psi, const SpaceLayout& layout,
                                 const Partition& p,
                                 LogBase base = LogBase::natural);

// epsilon(rho) = (H2(product of marginals) - H2(rho)) / 2.
struct RenyiDecomposition {
    double h2_total = 0.0;
    double h2_product = 0.0;
    double epsilon = 0.0;
};
RenyiDecomposition renyi_decomposition(const DensityOperator& rho,
                                       const Partition& p,
                                       LogBase base = LogBase::natural);

// Measure of the Gibbs state exp(-beta h)/Z, evaluated through the
// partition function Z, f1 = Tr exp(-2 beta h), and the per-block marginal
// norms f2. Internally shift-stabilized, so large beta never overflows.
MeasureReport gibbs_measure(const DenseOperator& h, double beta,
                            const Partition& p,
                            LogBase base = LogBase::natural);

// Post-measurement state P rho P / Tr(rho P). Throws ImpossibleOutcomeError
// when the outcome probability is at most tol::outcome.
DensityOperator measurement_reduce(const DensityOperator& rho,
                                   const DenseOperator& projector);

// One (probability, report) entry per projector of a complete orthogonal
// set; outcomes with probability <= tol::outcome carry a null report.
std::vector<std::pair<double, std::optional<MeasureReport>>>
post_measurement_measures(const DensityOperator& rho,
                          const std::vector<DenseOperator>& projectors,
                          const Partition& p,
                          LogBase base = LogBase::natural);

// C_AB = <A x B> - <A><B> on a bipartite layout; zero for product states.
double correlation(const DensityOperator& rho, const DenseOperator& a,
                   const DenseOperator& b);

}  // namespace entprod
