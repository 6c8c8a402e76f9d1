// operators.hpp — dense operators on tensor-product spaces: construction,
// Kronecker products, partial traces, factor permutations, norms, exp.

#pragma once

#include <cstddef>
#include <vector>

#include "entprod/common.hpp"
#include "entprod/space.hpp"

namespace entprod {

// A complex square matrix bound to a SpaceLayout. The universal carrier for
// observables, Hamiltonians, projectors and (unnormalized) states.
class DenseOperator {
public:
    DenseOperator(SpaceLayout layout, Matrix entries);

    const SpaceLayout& layout() const { return layout_; }
    const Matrix& matrix() const { return mat_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    Complex trace() const { return mat_.trace(); }

    static DenseOperator identity(SpaceLayout layout);

private:
    SpaceLayout layout_;
    Matrix mat_;
};

// A statistical (density) operator: Hermitian, trace one, positive
// semidefinite, all within the tolerances of entprod::tol. Validation runs
// once at construction; operations trust validated inputs.
class DensityOperator {
public:
    explicit DensityOperator(DenseOperator op);

    // Skips validation. For internal factories whose output is valid by
    // construction (named-state builders, unitary evolution).
    static DensityOperator trusted(DenseOperator op);

    const DenseOperator& op() const { return op_; }
    const SpaceLayout& layout() const { return op_.layout(); }
    const Matrix& matrix() const { return op_.matrix(); }
    std::size_t dim() const { return op_.dim(); }

private:
    struct trusted_tag {};
    DensityOperator(DenseOperator op, trusted_tag) : op_(std::move(op)) {}
    DenseOperator op_;
};

bool is_hermitian(const Matrix& m, double rel_tol = tol::hermitian);

// Kronecker product; the result layout is the concatenation of the factor
// lists, so b's factors are the fastest-varying ones.
DenseOperator tensor_product(const DenseOperator& a, const DenseOperator& b);

// Trace out every factor not in `keep`. Kept factors stay in ascending
// order; the output trace equals the input trace.
DenseOperator partial_trace(const DenseOperator& a,
                            const std::vector<std::size_t>& keep);

// Reorder tensor factors: output factor j is input factor order[j].
DenseOperator permute_factors(const DenseOperator& a,
                              const std::vector<std::size_t>& order);
Vector permute_state_factors(const Vector& psi, const SpaceLayout& layout,
                             const std::vector<std::size_t>& order);

// Hilbert-Schmidt (Frobenius) norm sqrt(Tr(A^dag A)).
double hs_norm(const DenseOperator& a);

// exp(scale*h) of a Hermitian operator via full symmetric eigendecomposition
// (robust at large |scale|, where scaling-and-squaring loses accuracy).
DenseOperator hermitian_exp(const DenseOperator& h, double scale);

}  // namespace entprod
