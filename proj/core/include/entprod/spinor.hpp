// spinor.hpp — multiparticle spinor systems: symmetric-group representation
// dimensions from Young diagrams, the spin-spatial entanglement-production
// measure ln(f) with its large-N asymptotics, the closed-form particle
// measure for two-orbital spin-1/2 bosons, and a brute-force oracle that
// rebuilds the joint eigenstate in the full product space.

#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entprod/common.hpp"

namespace entprod::spinor {

using BigInt = boost::multiprecision::cpp_int;

// Partition of N into non-increasing row lengths. Trailing zero rows are
// stripped; the nominal multiplicity M (number of rows including zeros,
// M = 2s+1 for spin s) is tracked separately and defaults to the stored
// row count.
class YoungDiagram {
public:
    explicit YoungDiagram(std::vector<long> rows, std::size_t multiplicity = 0);

    // Two-row diagram [N/2+S, N/2-S] of a spin-1/2 system, multiplicity 2.
    static YoungDiagram spin_half(long n, double total_spin);

    const std::vector<long>& rows() const { return rows_; }
    long row(std::size_t m) const;  // 1-based formulas use row(m), zero-padded
    long n_total() const { return n_total_; }
    std::size_t multiplicity() const { return multiplicity_; }

private:
    std::vector<long> rows_;
    long n_total_ = 0;
    std::size_t multiplicity_ = 0;
};

// State of N spin-1/2 particles on two spatial orbitals with total spin S,
// spin projection Sz, and orbital ("isotopic spin") projection Iz.
class SpinHalfState {
public:
    SpinHalfState(long n, double s, double sz, double iz);
    // convenience: the stretched state Sz = Iz = S
    SpinHalfState(long n, double s) : SpinHalfState(n, s, s, s) {}

    long n() const { return n_; }
    double s() const { return 0.5 * two_s_; }
    double sz() const { return 0.5 * two_sz_; }
    double iz() const { return 0.5 * two_iz_; }
    long two_s() const { return two_s_; }
    long two_sz() const { return two_sz_; }
    long two_iz() const { return two_iz_; }

private:
    long n_;
    long two_s_, two_sz_, two_iz_;
};

// Representation dimension f of the symmetric group irrep labeled by the
// diagram, exact at any N.
BigInt rep_dimension(const YoungDiagram& d);

// ln f via lgamma; used beyond N = 170 where the exact integer no longer
// fits in a double.
double log_rep_dimension(const YoungDiagram& d);

// Two-row specialization f = N!(2S+1)/((N/2+S+1)!(N/2-S)!), exact.
BigInt rep_dimension_spin_half(const SpinHalfState& state);

// Spin-spatial measure ln f (natural log; zero for a single-row diagram).
double spin_spatial_measure(const YoungDiagram& d);

// Leading large-N term N ln N - sum_m lambda_m ln lambda_m (0 ln 0 = 0).
double spin_spatial_asymptotic(const YoungDiagram& d);

// Closed-form particle-partition measure; maximum N ln 2 at Sz = Iz = 0,
// exactly zero at Sz = Iz = S = N/2.
double particle_measure(const SpinHalfState& state);

// Independent oracle: builds the permutation-symmetric joint eigenstate of
// (S^2, Sz, I^2, Iz) in the 4^N product space, reduces to one particle, and
// evaluates -(N/2) ln Tr(rho^(1))^2. Requires N <= 8. Throws OracleError if
// the joint eigenspace is missing or degenerate.
double brute_force_particle_measure(const SpinHalfState& state);

}  // namespace entprod::spinor
