#include "entprod/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace entprod {

namespace {

void require_partition_fits(const DenseOperator& a, const Partition& p) {
    if (p.factor_count() != a.layout().factor_count())
        throw ValidationError("partition does not match operator layout");
}

Complex checked_trace(const DenseOperator& a) {
    const Complex tr = a.trace();
    if (std::abs(tr) <= tol::trace_zero)
        throw ZeroTraceError("zero trace: entanglement production undefined");
    return tr;
}

MeasureReport report_from_norms(double numerator,
                                std::vector<double> block_norms,
                                double abs_trace, LogBase base) {
    MeasureReport rep;
    rep.norm_numerator = numerator;
    rep.per_block_norms = std::move(block_norms);
    double log_den = 0.0;
    for (double n : rep.per_block_norms) log_den += std::log(n);
    log_den -= static_cast<double>(rep.per_block_norms.size() - 1) *
               std::log(abs_trace);
    rep.norm_denominator = std::exp(log_den);
    rep.epsilon = in_base(std::log(numerator) - log_den, base);
    rep.log_base = base;
    return rep;
}

}  // namespace

DenseOperator nonentangling_counterpart(const DenseOperator& a,
                                        const Partition& p) {
    require_partition_fits(a, p);
    const Complex tr = checked_trace(a);

    std::vector<DenseOperator> reduced;
    reduced.reserve(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b)
        reduced.push_back(partial_trace(a, p.block(b)));

    DenseOperator prod = reduced.front();
    for (std::size_t b = 1; b < reduced.size(); ++b)
        prod = tensor_product(prod, reduced[b]);

    const auto n_blocks = static_cast<int>(p.block_count());
    Matrix scaled = prod.matrix() / std::pow(tr, n_blocks - 1);
    DenseOperator result(prod.layout(), std::move(scaled));

    // factors are currently in block-concatenation order; restore the
    // original order when the partition interleaves them
    std::vector<std::size_t> concat;
    for (std::size_t b = 0; b < p.block_count(); ++b)
        concat.insert(concat.end(), p.block(b).begin(), p.block(b).end());
    bool already_sorted = std::is_sorted(concat.begin(), concat.end());
    if (already_sorted) return result;

    std::vector<std::size_t> order(concat.size());
    for (std::size_t pos = 0; pos < concat.size(); ++pos)
        order[concat[pos]] = pos;
    return permute_factors(result, order);
}

MeasureReport entanglement_production(const DenseOperator& a,
                                      const Partition& p, LogBase base) {
    require_partition_fits(a, p);
    const Complex tr = checked_trace(a);

    std::vector<double> block_norms;
    block_norms.reserve(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b)
        block_norms.push_back(hs_norm(partial_trace(a, p.block(b))));

    return report_from_norms(hs_norm(a), std::move(block_norms), std::abs(tr),
                             base);
}

MeasureReport entanglement_production(const DensityOperator& rho,
                                      const Partition& p, LogBase base) {
    return entanglement_production(rho.op(), p, base);
}

MeasureReport pure_state_measure(const Vector& psi, const SpaceLayout& layout,
                                 const Partition& p, LogBase base) {
    if (static_cast<std::size_t>(psi.size()) != layout.total_dim())
        throw ValidationError("pure_state_measure: state size mismatch");
    if (p.factor_count() != layout.factor_count())
        throw ValidationError("partition does not match state layout");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw ValidationError("pure_state_measure: state is not normalized");

    const std::size_t n = layout.factor_count();
    std::vector<double> block_norms;
    block_norms.reserve(p.block_count());
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const auto& blk = p.block(b);
        std::vector<std::size_t> order(blk);
        for (std::size_t f = 0; f < n; ++f)
            if (std::find(blk.begin(), blk.end(), f) == blk.end())
                order.push_back(f);
        const Vector perm = permute_state_factors(psi, layout, order);

        std::size_t d_block = 1;
        for (std::size_t f : blk) d_block *= layout.dim(f);
        const std::size_t d_rest = layout.total_dim() / d_block;

        // psi as a (block x rest) matrix; marginal = M M^dag
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            m(perm.data(), static_cast<Eigen::Index>(d_block),
              static_cast<Eigen::Index>(d_rest));
        const Matrix marginal = m * m.adjoint();
        block_norms.push_back(marginal.norm());
    }
    return report_from_norms(1.0, std::move(block_norms), 1.0, base);
}

RenyiDecomposition renyi_decomposition(const DensityOperator& rho,
                                       const Partition& p, LogBase base) {
    require_partition_fits(rho.op(), p);
    RenyiDecomposition out;
    out.h2_total = in_base(-std::log(purity(rho)), base);
    double h2_prod = 0.0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const DenseOperator marginal = partial_trace(rho.op(), p.block(b));
        h2_prod += -std::log(marginal.matrix().squaredNorm());
    }
    out.h2_product = in_base(h2_prod, base);
    out.epsilon = 0.5 * (out.h2_product - out.h2_total);
    return out;
}

MeasureReport gibbs_measure(const DenseOperator& h, double beta,
                            const Partition& p, LogBase base) {
    require_partition_fits(h, p);
    if (!is_hermitian(h.matrix()))
        throw ValidationError("gibbs_measure: Hamiltonian is not Hermitian");
    if (beta < 0.0)
        throw ValidationError("gibbs_measure: beta must be nonnegative");

    const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const Eigen::VectorXd evals = es.eigenvalues();
    const double e_min = evals.minCoeff();

    // work with A = exp(-beta (H - e_min)); all entries stay O(d), and the
    // shift cancels out of the measure
    const Eigen::VectorXd w = (-beta * (evals.array() - e_min)).exp();
    const Matrix a_mat =
        es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    const DenseOperator a(h.layout(), a_mat);

    const double s0 = w.sum();                    // Tr A = Z * exp(beta e_min)
    const double log_f1_shifted = std::log(w.array().square().sum());

    MeasureReport rep;
    rep.log_base = base;
    rep.norm_numerator = std::exp(0.5 * log_f1_shifted - std::log(s0));
    double log_den = 0.0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const DenseOperator marginal = partial_trace(a, p.block(b));
        const double log_block_sq = std::log(marginal.matrix().squaredNorm());
        const double log_norm = 0.5 * log_block_sq - std::log(s0);
        rep.per_block_norms.push_back(std::exp(log_norm));
        log_den += log_norm;
    }
    rep.norm_denominator = std::exp(log_den);
    const double n_blocks = static_cast<double>(p.block_count());
    // 1/2 [ log f1 - log f2 + (2N-2) log Z ], evaluated with the shift removed
    double log_f2_shifted = 0.0;
    for (double nb : rep.per_block_norms)
        log_f2_shifted += 2.0 * (std::log(nb) + std::log(s0));
    const double eps_nat = 0.5 * (log_f1_shifted - log_f2_shifted +
                                  (2.0 * n_blocks - 2.0) * std::log(s0));
    rep.epsilon = in_base(eps_nat, base);
    return rep;
}

DensityOperator measurement_reduce(const DensityOperator& rho,
                                   const DenseOperator& projector) {
    if (projector.layout() != rho.layout())
        throw ValidationError("measurement_reduce: projector layout mismatch");
    const Matrix& pm = projector.matrix();
    if (!is_hermitian(pm))
        throw ValidationError("measurement_reduce: projector is not Hermitian");
    const double scale = std::max(pm.cwiseAbs().maxCoeff(), 1.0);
    if ((pm * pm - pm).cwiseAbs().maxCoeff() > tol::hermitian * scale)
        throw ValidationError("measurement_reduce: projector is not idempotent");

    const double prob = (rho.matrix() * pm).trace().real();
    if (prob <= tol::outcome)
        throw ImpossibleOutcomeError(
            "measurement outcome has zero probability");
    Matrix reduced = (pm * rho.matrix() * pm) / prob;
    return DensityOperator::trusted(DenseOperator(rho.layout(), std::move(reduced)));
}

std::vector<std::pair<double, std::optional<MeasureReport>>>
post_measurement_measures(const DensityOperator& rho,
                          const std::vector<DenseOperator>& projectors,
                          const Partition& p, LogBase base) {
    require_partition_fits(rho.op(), p);
    if (projectors.empty())
        throw ValidationError("post_measurement_measures: no projectors");

    const auto d = static_cast<Eigen::Index>(rho.dim());
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& proj : projectors) {
        if (proj.layout() != rho.layout())
            throw ValidationError("projector layout mismatch");
        const Matrix& pm = proj.matrix();
        if (!is_hermitian(pm))
            throw ValidationError("projector is not Hermitian");
        const double scale = std::max(pm.cwiseAbs().maxCoeff(), 1.0);
        if ((pm * pm - pm).cwiseAbs().maxCoeff() > tol::hermitian * scale)
            throw ValidationError("projector is not idempotent");
        sum += pm;
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol::hermitian)
        throw ValidationError("projectors do not resolve the identity");

    std::vector<std::pair<double, std::optional<MeasureReport>>> out;
    out.reserve(projectors.size());
    for (const auto& proj : projectors) {
        const Matrix& pm = proj.matrix();
        const double prob = (rho.matrix() * pm).trace().real();
        if (prob <= tol::outcome) {
            out.emplace_back(prob, std::nullopt);
            continue;
        }
        Matrix reduced = (pm * rho.matrix() * pm) / prob;
        const DenseOperator post(rho.layout(), std::move(reduced));
        out.emplace_back(prob, entanglement_production(post, p, base));
    }
    return out;
}

double correlation(const DensityOperator& rho, const DenseOperator& a,
                   const DenseOperator& b) {
    if (rho.layout().factor_count() != 2)
        throw ValidationError("correlation: state layout must be bipartite");
    if (a.dim() != rho.layout().dim(0) || b.dim() != rho.layout().dim(1))
        throw ValidationError("correlation: observable dimension mismatch");
    if (!is_hermitian(a.matrix()) || !is_hermitian(b.matrix()))
        throw ValidationError("correlation: observables must be Hermitian");

    const DenseOperator joint = tensor_product(a, b);
    const double joint_mean = (rho.matrix() * joint.matrix()).trace().real();
    const DenseOperator rho_a = partial_trace(rho.op(), {0});
    const DenseOperator rho_b = partial_trace(rho.op(), {1});
    const double mean_a = (rho_a.matrix() * a.matrix()).trace().real();
    const double mean_b = (rho_b.matrix() * b.matrix()).trace().real();
    return joint_mean - mean_a * mean_b;
}

}  // namespace entprod
