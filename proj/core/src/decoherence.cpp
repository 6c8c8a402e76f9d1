#include "entprod/decoherence.hpp"

#include <algorithm>
#include <cmath>

#include "entprod/measure.hpp"

namespace entprod::decoherence {

namespace {

Eigen::Index ix(std::size_t n, std::size_t alpha, std::size_t dim_b) {
    return static_cast<Eigen::Index>(n * dim_b + alpha);
}

// marginal matrix elements rho_mn = sum_alpha rho^{alpha alpha}_{mn}
Matrix marginal_a(const Matrix& rho, std::size_t da, std::size_t db) {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(da),
                              static_cast<Eigen::Index>(da));
    for (std::size_t m = 0; m < da; ++m)
        for (std::size_t n = 0; n < da; ++n)
            for (std::size_t a = 0; a < db; ++a)
                out(m, n) += rho(ix(m, a, db), ix(n, a, db));
    return out;
}

// rho^{alpha beta} = sum_n rho^{alpha beta}_{nn}
Matrix marginal_b(const Matrix& rho, std::size_t da, std::size_t db) {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(db),
                              static_cast<Eigen::Index>(db));
    for (std::size_t a = 0; a < db; ++a)
        for (std::size_t b = 0; b < db; ++b)
            for (std::size_t n = 0; n < da; ++n)
                out(a, b) += rho(ix(n, a, db), ix(n, b, db));
    return out;
}

}  // namespace

BipartiteSpec::BipartiteSpec(std::size_t dim_a_, std::size_t dim_b_,
                             Eigen::MatrixXd energies_, DensityOperator rho0_)
    : dim_a(dim_a_), dim_b(dim_b_), energies(std::move(energies_)),
      rho0(std::move(rho0_)) {
    if (dim_a < 1 || dim_b < 1)
        throw ValidationError("BipartiteSpec: dimensions must be positive");
    if (energies.rows() != static_cast<Eigen::Index>(dim_a) ||
        energies.cols() != static_cast<Eigen::Index>(dim_b))
        throw ValidationError("BipartiteSpec: energies shape mismatch");
    if (rho0.layout() != SpaceLayout({dim_a, dim_b}))
        throw ValidationError("BipartiteSpec: rho0 layout mismatch");
}

LorentzSpec::LorentzSpec(Eigen::MatrixXd gamma_) : gamma(std::move(gamma_)) {
    if (gamma.rows() != gamma.cols())
        throw ValidationError("LorentzSpec: gamma must be square");
    if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw ValidationError("LorentzSpec: gamma must be symmetric");
    if (gamma.minCoeff() < 0.0)
        throw ValidationError("LorentzSpec: widths must be nonnegative");
    if (gamma.diagonal().cwiseAbs().maxCoeff() != 0.0)
        throw ValidationError("LorentzSpec: diagonal widths must be zero");
}

LorentzSpec LorentzSpec::uniform(std::size_t dim, double rate) {
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd g = Eigen::MatrixXd::Constant(d, d, rate);
    g.diagonal().setZero();
    return LorentzSpec(std::move(g));
}

DensityOperator evolve(const BipartiteSpec& spec, double t) {
    const Matrix& r0 = spec.rho0.matrix();
    Matrix rt(r0.rows(), r0.cols());
    const std::size_t da = spec.dim_a, db = spec.dim_b;
    for (std::size_t m = 0; m < da; ++m)
        for (std::size_t a = 0; a < db; ++a)
            for (std::size_t n = 0; n < da; ++n)
                for (std::size_t b = 0; b < db; ++b) {
                    const double omega = spec.energies(
                                             static_cast<Eigen::Index>(m),
                                             static_cast<Eigen::Index>(a)) -
                                         spec.energies(
                                             static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(b));
                    rt(ix(m, a, db), ix(n, b, db)) =
                        r0(ix(m, a, db), ix(n, b, db)) *
                        std::exp(Complex(0.0, -omega * t));
                }
    return DensityOperator::trusted(
        DenseOperator(spec.rho0.layout(), std::move(rt)));
}

Eigen::MatrixXd decoherence_factor_lorentz(const LorentzSpec& l, double t) {
    if (t < 0.0)
        throw ValidationError("decoherence factor needs t >= 0");
    return (-l.gamma.array() * t).exp();
}

DenseOperator evolve_lorentz(const BipartiteSpec& spec, const LorentzSpec& on_a,
                             const LorentzSpec& on_b, double t) {
    if (on_a.gamma.rows() != static_cast<Eigen::Index>(spec.dim_a) ||
        on_b.gamma.rows() != static_cast<Eigen::Index>(spec.dim_b))
        throw ValidationError("evolve_lorentz: gamma dimension mismatch");
    const Eigen::MatrixXd da_fac = decoherence_factor_lorentz(on_a, t);
    const Eigen::MatrixXd db_fac = decoherence_factor_lorentz(on_b, t);
    const Matrix& r0 = spec.rho0.matrix();
    Matrix rt(r0.rows(), r0.cols());
    const std::size_t da = spec.dim_a, db = spec.dim_b;
    for (std::size_t m = 0; m < da; ++m)
        for (std::size_t a = 0; a < db; ++a)
            for (std::size_t n = 0; n < da; ++n)
                for (std::size_t b = 0; b < db; ++b)
                    rt(ix(m, a, db), ix(n, b, db)) =
                        r0(ix(m, a, db), ix(n, b, db)) *
                        da_fac(static_cast<Eigen::Index>(m),
                               static_cast<Eigen::Index>(n)) *
                        db_fac(static_cast<Eigen::Index>(a),
                               static_cast<Eigen::Index>(b));
    return DenseOperator(spec.rho0.layout(), std::move(rt));
}

std::vector<TrajectoryPoint> measure_trajectory(
    const BipartiteSpec& spec, const std::vector<double>& times, LogBase base) {
    if (!std::is_sorted(times.begin(), times.end()))
        throw ValidationError("measure_trajectory: times must be ascending");
    const Partition bipartition({{0}, {1}}, 2);
    std::vector<TrajectoryPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        const DensityOperator rt = evolve(spec, t);
        out.push_back({t, entanglement_production(rt, bipartition, base).epsilon});
    }
    return out;
}

std::vector<TrajectoryPoint> measure_trajectory_lorentz(
    const BipartiteSpec& spec, const LorentzSpec& on_a, const LorentzSpec& on_b,
    const std::vector<double>& times, LogBase base) {
    if (!std::is_sorted(times.begin(), times.end()))
        throw ValidationError("measure_trajectory: times must be ascending");
    if (on_a.gamma.rows() != static_cast<Eigen::Index>(spec.dim_a) ||
        on_b.gamma.rows() != static_cast<Eigen::Index>(spec.dim_b))
        throw ValidationError("measure_trajectory: gamma dimension mismatch");

    const Matrix& r0 = spec.rho0.matrix();
    const double num2 = r0.squaredNorm();  // constant in t
    const Matrix ma = marginal_a(r0, spec.dim_a, spec.dim_b);
    const Matrix mb = marginal_b(r0, spec.dim_a, spec.dim_b);

    std::vector<TrajectoryPoint> out;
    out.reserve(times.size());
    for (double t : times) {
        const Eigen::MatrixXd fa = decoherence_factor_lorentz(on_a, t);
        const Eigen::MatrixXd fb = decoherence_factor_lorentz(on_b, t);
        const double na2 =
            (ma.cwiseAbs2().array() * fa.array().square()).sum();
        const double nb2 =
            (mb.cwiseAbs2().array() * fb.array().square()).sum();
        const double eps = 0.5 * std::log(num2 / (na2 * nb2));
        out.push_back({t, in_base(eps, base)});
    }
    return out;
}

LimitMeasures limit_measures(const BipartiteSpec& spec, LogBase base) {
    const Matrix& r0 = spec.rho0.matrix();
    const double num2 = r0.squaredNorm();
    const Matrix ma = marginal_a(r0, spec.dim_a, spec.dim_b);
    const Matrix mb = marginal_b(r0, spec.dim_a, spec.dim_b);
    const double eps0 =
        0.5 * std::log(num2 / (ma.squaredNorm() * mb.squaredNorm()));
    const double eps_inf =
        0.5 * std::log(num2 / (ma.diagonal().squaredNorm() *
                               mb.diagonal().squaredNorm()));
    return {in_base(eps0, base), in_base(eps_inf, base)};
}

}  // namespace entprod::decoherence
