#include "entprod/operators.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace entprod {

DenseOperator::DenseOperator(SpaceLayout layout, Matrix entries)
    : layout_(std::move(layout)), mat_(std::move(entries)) {
    if (mat_.rows() != mat_.cols())
        throw ValidationError("DenseOperator: matrix must be square");
    if (static_cast<std::size_t>(mat_.rows()) != layout_.total_dim())
        throw ValidationError("DenseOperator: matrix side " +
                              std::to_string(mat_.rows()) +
                              " does not match layout dimension " +
                              std::to_string(layout_.total_dim()));
}

DenseOperator DenseOperator::identity(SpaceLayout layout) {
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    return DenseOperator(std::move(layout), Matrix::Identity(d, d));
}

bool is_hermitian(const Matrix& m, double rel_tol) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

DensityOperator::DensityOperator(DenseOperator op) : op_(std::move(op)) {
    const Matrix& m = op_.matrix();
    if (!is_hermitian(m))
        throw ValidationError("DensityOperator: not Hermitian within tolerance");
    if (std::abs(m.trace() - Complex(1.0)) > tol::trace_one)
        throw ValidationError("DensityOperator: trace differs from one");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd)
        throw ValidationError("DensityOperator: not positive semidefinite");
}

DensityOperator DensityOperator::trusted(DenseOperator op) {
    return DensityOperator(std::move(op), trusted_tag{});
}

DenseOperator tensor_product(const DenseOperator& a, const DenseOperator& b) {
    std::vector<std::size_t> dims = a.layout().dims();
    dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
    Matrix out = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    return DenseOperator(SpaceLayout(std::move(dims)), std::move(out));
}

namespace {

// Flat offsets of every multi-index over the given factors.
std::vector<std::size_t> subspace_offsets(const SpaceLayout& layout,
                                          const std::vector<std::size_t>& factors) {
    const auto strides = layout.strides();
    std::size_t count = 1;
    for (std::size_t f : factors) count *= layout.dim(f);
    std::vector<std::size_t> offsets(count, 0);
    std::size_t repeat = count;
    for (std::size_t f : factors) {
        const std::size_t d = layout.dim(f);
        repeat /= d;
        std::size_t idx = 0;
        while (idx < count)
            for (std::size_t v = 0; v < d; ++v)
                for (std::size_t r = 0; r < repeat; ++r)
                    offsets[idx++] += v * strides[f];
    }
    return offsets;
}

}  // namespace

DenseOperator partial_trace(const DenseOperator& a,
                            const std::vector<std::size_t>& keep) {
    const SpaceLayout& layout = a.layout();
    if (keep.empty())
        throw ValidationError("partial_trace: keep set must be non-empty");
    std::vector<std::size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw ValidationError("partial_trace: duplicate factor in keep set");
    if (kept.back() >= layout.factor_count())
        throw ValidationError("partial_trace: factor index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t f = 0, k = 0; f < layout.factor_count(); ++f) {
        if (k < kept.size() && kept[k] == f)
            ++k;
        else
            traced.push_back(f);
    }

    const auto keep_off = subspace_offsets(layout, kept);
    const auto trace_off = traced.empty() ? std::vector<std::size_t>{0}
                                          : subspace_offsets(layout, traced);
    const auto dk = static_cast<Eigen::Index>(keep_off.size());

    const Matrix& in = a.matrix();
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex sum = 0.0;
            for (std::size_t t : trace_off)
                sum += in(static_cast<Eigen::Index>(keep_off[r] + t),
                          static_cast<Eigen::Index>(keep_off[c] + t));
            out(r, c) = sum;
        }
    return DenseOperator(layout.sublayout(kept), std::move(out));
}

namespace {

std::vector<std::size_t> permuted_index_map(const SpaceLayout& layout,
                                            const std::vector<std::size_t>& order) {
    const std::size_t n = layout.factor_count();
    if (order.size() != n)
        throw ValidationError("factor permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t f : order) {
        if (f >= n || seen[f])
            throw ValidationError("factor permutation is not a permutation");
        seen[f] = true;
    }
    const auto strides = layout.strides();
    std::vector<std::size_t> new_dims(n);
    for (std::size_t j = 0; j < n; ++j) new_dims[j] = layout.dim(order[j]);

    // map[new_index] = old_index
    const std::size_t total = layout.total_dim();
    std::vector<std::size_t> map(total);
    for (std::size_t x = 0; x < total; ++x) {
        std::size_t rem = x, old_idx = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t block = 1;
            for (std::size_t k = j + 1; k < n; ++k) block *= new_dims[k];
            const std::size_t digit = rem / block;
            rem %= block;
            old_idx += digit * strides[order[j]];
        }
        map[x] = old_idx;
    }
    return map;
}

}  // namespace

DenseOperator permute_factors(const DenseOperator& a,
                              const std::vector<std::size_t>& order) {
    const auto map = permuted_index_map(a.layout(), order);
    std::vector<std::size_t> dims(order.size());
    for (std::size_t j = 0; j < order.size(); ++j)
        dims[j] = a.layout().dim(order[j]);
    const auto d = static_cast<Eigen::Index>(map.size());
    Matrix out(d, d);
    const Matrix& in = a.matrix();
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            out(r, c) = in(static_cast<Eigen::Index>(map[r]),
                           static_cast<Eigen::Index>(map[c]));
    return DenseOperator(SpaceLayout(std::move(dims)), std::move(out));
}

Vector permute_state_factors(const Vector& psi, const SpaceLayout& layout,
                             const std::vector<std::size_t>& order) {
    if (static_cast<std::size_t>(psi.size()) != layout.total_dim())
        throw ValidationError("permute_state_factors: state size mismatch");
    const auto map = permuted_index_map(layout, order);
    Vector out(psi.size());
    for (std::size_t x = 0; x < map.size(); ++x)
        out(static_cast<Eigen::Index>(x)) =
            psi(static_cast<Eigen::Index>(map[x]));
    return out;
}

double hs_norm(const DenseOperator& a) { return a.matrix().norm(); }

DenseOperator hermitian_exp(const DenseOperator& h, double scale) {
    if (!is_hermitian(h.matrix()))
        throw ValidationError("hermitian_exp: operator is not Hermitian");
    const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    const Eigen::VectorXd w = (scale * es.eigenvalues().array()).exp();
    Matrix out = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return DenseOperator(h.layout(), std::move(out));
}

}  // namespace entprod
