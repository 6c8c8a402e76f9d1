// decoherence.hpp — bipartite dephasing dynamics in the Hamiltonian
// eigenbasis: exact unitary phase evolution, Lorentzian decoherence factors,
// the epsilon(rho(t)) trajectory, and its initial/final limits.

#pragma once

#include <cstddef>
#include <vector>

#include "entprod/common.hpp"
#include "entprod/operators.hpp"

namespace entprod::decoherence {

// A bipartite system H_A (x) H_B with eigenenergies E_{n,alpha} and an
// initial state expressed in that eigenbasis.
struct BipartiteSpec {
    std::size_t dim_a;
    std::size_t dim_b;
    Eigen::MatrixXd energies;  // shape (dim_a, dim_b)
    DensityOperator rho0;      // on layout {dim_a, dim_b}

    BipartiteSpec(std::size_t dim_a, std::size_t dim_b,
                  Eigen::MatrixXd energies, DensityOperator rho0);
};

// Lorentzian width matrix Gamma for one marginal: symmetric, entrywise
// nonnegative, zero diagonal. The decoherence factor is exp(-Gamma_mn t).
struct LorentzSpec {
    Eigen::MatrixXd gamma;

    explicit LorentzSpec(Eigen::MatrixXd gamma);
    static LorentzSpec uniform(std::size_t dim, double rate);
};

// rho(t) under exact unitary evolution: entrywise phases
// exp(-i (E_{m,alpha} - E_{n,beta}) t). Purity is constant in t.
DensityOperator evolve(const BipartiteSpec& spec, double t);

// Entrywise decoherence factors exp(-Gamma_mn t); diagonal stays 1.
Eigen::MatrixXd decoherence_factor_lorentz(const LorentzSpec& l, double t);

// Model state with off-diagonal sectors damped by the Lorentz factors of
// both marginals (no phases). Not necessarily a valid density operator for
// arbitrary Gamma, hence the plain DenseOperator return.
DenseOperator evolve_lorentz(const BipartiteSpec& spec, const LorentzSpec& on_a,
                             const LorentzSpec& on_b, double t);

struct TrajectoryPoint {
    double time;
    double epsilon;
};

// epsilon(rho(t)) under exact evolution at the given ascending times.
std::vector<TrajectoryPoint> measure_trajectory(
    const BipartiteSpec& spec, const std::vector<double>& times,
    LogBase base = LogBase::natural);

// Phenomenological trajectory: marginal norms decompose into the constant
// diagonal part plus off-diagonal terms damped by exp(-2 Gamma t).
std::vector<TrajectoryPoint> measure_trajectory_lorentz(
    const BipartiteSpec& spec, const LorentzSpec& on_a, const LorentzSpec& on_b,
    const std::vector<double>& times, LogBase base = LogBase::natural);

struct LimitMeasures {
    double eps0;     // epsilon at t = 0
    double eps_inf;  // analytic t -> infinity limit (off-diagonals zeroed)
};

// Both limits directly from the matrix elements of rho(0); eps_inf >= eps0.
LimitMeasures limit_measures(const BipartiteSpec& spec,
                             LogBase base = LogBase::natural);

}  // namespace entprod::decoherence
