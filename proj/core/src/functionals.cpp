#include "entprod/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entprod {

double purity(const DensityOperator& rho) {
    // Tr rho^2 = ||rho||_F^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

double linear_entropy(const DensityOperator& rho) { return 1.0 - purity(rho); }

double renyi2(const DensityOperator& rho, LogBase base) {
    return in_base(-std::log(purity(rho)), base);
}

double ipr(const DensityOperator& rho, const std::vector<double>& energies) {
    const std::size_t d = rho.dim();
    if (energies.size() != d)
        throw ValidationError("ipr: energies length does not match dimension");

    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return energies[a] < energies[b];
    });
    const double range = energies[idx.back()] - energies[idx.front()];
    const double tau = tol::degeneracy * range;

    const Matrix& m = rho.matrix();
    double total = 0.0;
    std::size_t start = 0;
    while (start < d) {
        // extend the group while consecutive gaps stay within tau
        std::size_t end = start + 1;
        while (end < d &&
               energies[idx[end]] - energies[idx[end - 1]] <= tau)
            ++end;
        for (std::size_t i = start; i < end; ++i)
            for (std::size_t j = start; j < end; ++j) {
                const auto r = static_cast<Eigen::Index>(idx[i]);
                const auto c = static_cast<Eigen::Index>(idx[j]);
                total += (m(r, c) * m(c, r)).real();
            }
        start = end;
    }
    return total;
}

double coherence2(const DensityOperator& rho) {
    const Matrix& m = rho.matrix();
    return m.squaredNorm() - m.diagonal().squaredNorm();
}

}  // namespace entprod
