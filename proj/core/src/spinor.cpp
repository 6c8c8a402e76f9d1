#include "entprod/spinor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace entprod::spinor {

namespace {

BigInt factorial(long n) {
    BigInt f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

bool is_half_integer_pair(long n, double v) {
    const double doubled = 2.0 * v;
    return std::abs(doubled - std::round(doubled)) < 1e-9 &&
           (static_cast<long>(std::llround(doubled)) + n) % 2 == 0;
}

}  // namespace

YoungDiagram::YoungDiagram(std::vector<long> rows, std::size_t multiplicity)
    : rows_(std::move(rows)) {
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    if (rows_.empty())
        throw ValidationError("YoungDiagram: at least one non-empty row");
    for (std::size_t m = 0; m < rows_.size(); ++m) {
        if (rows_[m] < 1)
            throw ValidationError("YoungDiagram: row lengths must be positive");
        if (m > 0 && rows_[m] > rows_[m - 1])
            throw ValidationError("YoungDiagram: rows must be non-increasing");
        n_total_ += rows_[m];
    }
    multiplicity_ = multiplicity == 0 ? rows_.size() : multiplicity;
    if (multiplicity_ < rows_.size())
        throw ValidationError("YoungDiagram: multiplicity below row count");
}

YoungDiagram YoungDiagram::spin_half(long n, double total_spin) {
    if (n < 1) throw ValidationError("spin_half diagram: N must be positive");
    if (total_spin < 0 || 2.0 * total_spin > static_cast<double>(n) ||
        !is_half_integer_pair(n, total_spin))
        throw ValidationError("spin_half diagram: invalid total spin");
    const long two_s = std::llround(2.0 * total_spin);
    return YoungDiagram({(n + two_s) / 2, (n - two_s) / 2}, 2);
}

long YoungDiagram::row(std::size_t m) const {
    return m < rows_.size() ? rows_[m] : 0;
}

SpinHalfState::SpinHalfState(long n, double s, double sz, double iz) : n_(n) {
    if (n < 1) throw ValidationError("SpinHalfState: N must be positive");
    if (!is_half_integer_pair(n, s))
        throw ValidationError("SpinHalfState: S must be a half-integer "
                              "matching the parity of N");
    two_s_ = std::llround(2.0 * s);
    if (two_s_ < 0 || two_s_ > n)
        throw ValidationError("SpinHalfState: S out of range [0, N/2]");
    const auto check_projection = [&](double v, const char* name) {
        const double doubled = 2.0 * v;
        if (std::abs(doubled - std::round(doubled)) > 1e-9)
            throw ValidationError(std::string("SpinHalfState: ") + name +
                                  " must be a half-integer");
        const long two_v = std::llround(doubled);
        if ((two_s_ + two_v) % 2 != 0 || std::abs(two_v) > two_s_)
            throw ValidationError(std::string("SpinHalfState: ") + name +
                                  " incompatible with S");
        return two_v;
    };
    two_sz_ = check_projection(sz, "Sz");
    two_iz_ = check_projection(iz, "Iz");
}

BigInt rep_dimension(const YoungDiagram& d) {
    const long n = d.n_total();
    const auto m_count = static_cast<long>(d.multiplicity());
    BigInt numerator = factorial(n);
    for (long m = 1; m <= m_count; ++m)
        for (long mp = m + 1; mp <= m_count; ++mp)
            numerator *= d.row(static_cast<std::size_t>(m - 1)) - m -
                         d.row(static_cast<std::size_t>(mp - 1)) + mp;
    BigInt denominator = 1;
    for (long m = 1; m <= m_count; ++m)
        denominator *=
            factorial(d.row(static_cast<std::size_t>(m - 1)) + m_count - m);
    return numerator / denominator;
}

double log_rep_dimension(const YoungDiagram& d) {
    const long n = d.n_total();
    const auto m_count = static_cast<long>(d.multiplicity());
    double value = std::lgamma(static_cast<double>(n) + 1.0);
    for (long m = 1; m <= m_count; ++m)
        for (long mp = m + 1; mp <= m_count; ++mp)
            value += std::log(
                static_cast<double>(d.row(static_cast<std::size_t>(m - 1)) -
                                    m - d.row(static_cast<std::size_t>(mp - 1)) +
                                    mp));
    for (long m = 1; m <= m_count; ++m)
        value -= std::lgamma(
            static_cast<double>(d.row(static_cast<std::size_t>(m - 1)) +
                                m_count - m) + 1.0);
    return value;
}

BigInt rep_dimension_spin_half(const SpinHalfState& state) {
    const long n = state.n();
    const long a = (n + state.two_s()) / 2;  // N/2 + S
    const long b = (n - state.two_s()) / 2;  // N/2 - S
    return factorial(n) * (state.two_s() + 1) / (factorial(a + 1) * factorial(b));
}

double spin_spatial_measure(const YoungDiagram& d) {
    // exact integers convert to double safely up to N = 170
    // (f <= sqrt(N!) < 1e154 there); use lgamma beyond
    if (d.n_total() <= 170)
        return std::log(rep_dimension(d).convert_to<double>());
    return log_rep_dimension(d);
}

double spin_spatial_asymptotic(const YoungDiagram& d) {
    const double n = static_cast<double>(d.n_total());
    double value = n * std::log(n);
    for (long lambda : d.rows())
        if (lambda > 0)
            value -= static_cast<double>(lambda) *
                     std::log(static_cast<double>(lambda));
    return value;
}

double particle_measure(const SpinHalfState& state) {
    using Wide = unsigned __int128;
    const auto n = static_cast<Wide>(state.n());
    const auto sz2 = static_cast<Wide>(state.two_sz() * state.two_sz());
    const auto iz2 = static_cast<Wide>(state.two_iz() * state.two_iz());

    // argument of the log as an exact integer ratio (doubled projections):
    //   1/4 + [Sz^2 + Iz^2 + (N+2)^2 Sz^2 Iz^2 / (4 S^2 (S+1)^2)] / N^2
    Wide num, den;
    if (sz2 == 0 || iz2 == 0) {
        // the cross term vanishes (always the case at S = 0)
        num = n * n + sz2 + iz2;
        den = 4 * n * n;
    } else {
        const auto ts = static_cast<Wide>(state.two_s());
        const Wide s_factor = ts * ts * (ts + 2) * (ts + 2);  // 16 S^2 (S+1)^2
        num = s_factor * (n * n + sz2 + iz2) + (n + 2) * (n + 2) * sz2 * iz2;
        den = 4 * n * n * s_factor;
    }
    if (num == den) return 0.0;
    const double ratio =
        static_cast<double>(num) / static_cast<double>(den);
    return -0.5 * static_cast<double>(state.n()) * std::log(ratio);
}

// ---------------------------------------------------------------------------
// Brute-force oracle in the full (orbital (x) spin)^N product space.
// Per-particle basis index q = 2*orb + spin with orb, spin in {0, 1};
// q = 0: +up, 1: +down, 2: -up, 3: -down. Particle 0 is the slowest index.
// ---------------------------------------------------------------------------

namespace {

struct SymBasisVector {
    std::array<long, 4> occupation;
    std::vector<std::size_t> indices;  // all distinct arrangements
    double coefficient;                // shared amplitude
};

long two_sz_of(const std::array<long, 4>& occ) {
    return (occ[0] + occ[2]) - (occ[1] + occ[3]);
}
long two_iz_of(const std::array<long, 4>& occ) {
    return (occ[0] + occ[1]) - (occ[2] + occ[3]);
}

std::vector<SymBasisVector> symmetric_sector_basis(long n, long two_sz,
                                                   long two_iz) {
    std::vector<SymBasisVector> basis;
    for (long n0 = 0; n0 <= n; ++n0)
        for (long n1 = 0; n1 <= n - n0; ++n1)
            for (long n2 = 0; n2 <= n - n0 - n1; ++n2) {
                const long n3 = n - n0 - n1 - n2;
                const std::array<long, 4> occ{n0, n1, n2, n3};
                if (two_sz_of(occ) != two_sz || two_iz_of(occ) != two_iz)
                    continue;
                SymBasisVector v;
                v.occupation = occ;
                std::vector<int> letters;
                for (int q = 0; q < 4; ++q)
                    letters.insert(letters.end(),
                                   static_cast<std::size_t>(occ[q]), q);
                do {
                    std::size_t idx = 0;
                    for (int q : letters) idx = idx * 4 + static_cast<std::size_t>(q);
                    v.indices.push_back(idx);
                } while (std::next_permutation(letters.begin(), letters.end()));
                v.coefficient = 1.0 / std::sqrt(static_cast<double>(v.indices.size()));
                basis.push_back(std::move(v));
            }
    return basis;
}

// scatter sum_{i<j} P_{ij} |v> into a dense vector; part 0 swaps spins,
// part 1 swaps orbitals
void apply_pair_swaps(const SymBasisVector& v, long n, int part,
                      Eigen::VectorXd& dense) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (std::size_t flat_pos = 0; flat_pos < v.indices.size(); ++flat_pos) {
        const std::size_t idx = v.indices[flat_pos];
        std::size_t rem = idx;
        for (long i = n - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(rem % 4);
            rem /= 4;
        }
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                int qi = digits[static_cast<std::size_t>(i)];
                int qj = digits[static_cast<std::size_t>(j)];
                if (part == 0) {
                    const int si = qi & 1, sj = qj & 1;
                    qi = (qi & 2) | sj;
                    qj = (qj & 2) | si;
                } else {
                    const int oi = qi & 2, oj = qj & 2;
                    qi = (qi & 1) | oj;
                    qj = (qj & 1) | oi;
                }
                std::size_t new_idx = 0;
                for (long k = 0; k < n; ++k) {
                    int q = digits[static_cast<std::size_t>(k)];
                    if (k == i) q = qi;
                    if (k == j) q = qj;
                    new_idx = new_idx * 4 + static_cast<std::size_t>(q);
                }
                dense(static_cast<Eigen::Index>(new_idx)) += v.coefficient;
            }
    }
}

// <v_l| (c + sum_{i<j} P_{ij}) |v_k> over the sector basis;
// S^2 = 3N/4 - N(N-1)/4 + sum spin swaps, and likewise I^2 with orbital swaps
Eigen::MatrixXd casimir_matrix(const std::vector<SymBasisVector>& basis,
                               long n, int part) {
    const auto size = static_cast<Eigen::Index>(basis.size());
    const double c = 0.75 * static_cast<double>(n) -
                     0.25 * static_cast<double>(n) * static_cast<double>(n - 1);
    const std::size_t full_dim = static_cast<std::size_t>(1) << (2 * n);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
    Eigen::VectorXd dense = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(full_dim));
    for (Eigen::Index k = 0; k < size; ++k) {
        dense.setZero();
        apply_pair_swaps(basis[static_cast<std::size_t>(k)], n, part, dense);
        for (Eigen::Index l = 0; l < size; ++l) {
            const auto& vl = basis[static_cast<std::size_t>(l)];
            double dot = 0.0;
            for (std::size_t idx : vl.indices)
                dot += dense(static_cast<Eigen::Index>(idx));
            out(l, k) = vl.coefficient * dot;
        }
        out(k, k) += c;
    }
    return out;
}

}  // namespace

double brute_force_particle_measure(const SpinHalfState& state) {
    const long n = state.n();
    if (n > 8)
        throw ValidationError("brute-force oracle is limited to N <= 8");

    const auto basis =
        symmetric_sector_basis(n, state.two_sz(), state.two_iz());
    if (basis.empty())
        throw OracleError("no symmetric basis state with the requested "
                          "(Sz, Iz)");

    const Eigen::MatrixXd s2 = casimir_matrix(basis, n, 0);
    const Eigen::MatrixXd i2 = casimir_matrix(basis, n, 1);
    const double target = state.s() * (state.s() + 1.0);
    constexpr double eig_tol = 1e-6;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s2);
    std::vector<Eigen::Index> spin_sel;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - target) < eig_tol)
            spin_sel.push_back(i);
    if (spin_sel.empty())
        throw OracleError("no eigenstate with the requested total spin");

    Eigen::MatrixXd span(s2.rows(), static_cast<Eigen::Index>(spin_sel.size()));
    for (std::size_t c = 0; c < spin_sel.size(); ++c)
        span.col(static_cast<Eigen::Index>(c)) =
            es.eigenvectors().col(spin_sel[c]);

    const Eigen::MatrixXd i2_restricted = span.transpose() * i2 * span;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(i2_restricted);
    std::vector<Eigen::Index> joint_sel;
    for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i)
        if (std::abs(es2.eigenvalues()(i) - target) < eig_tol)
            joint_sel.push_back(i);
    if (joint_sel.empty())
        throw OracleError("no joint (S^2, I^2) eigenstate");
    if (joint_sel.size() > 1)
        throw OracleError("joint eigenspace is degenerate; case skipped");

    const Eigen::VectorXd coefs = span * es2.eigenvectors().col(joint_sel[0]);

    // assemble the state and reduce to particle 0 (all particles equivalent)
    const std::size_t full_dim = static_cast<std::size_t>(1) << (2 * n);
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(full_dim));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double amp =
            coefs(static_cast<Eigen::Index>(k)) * basis[k].coefficient;
        for (std::size_t idx : basis[k].indices)
            psi(static_cast<Eigen::Index>(idx)) += amp;
    }
    const auto rest = static_cast<Eigen::Index>(full_dim / 4);
    Eigen::Map<const Eigen::MatrixXd> m(psi.data(), rest, 4);
    const Eigen::Matrix4d rho1 = m.transpose() * m;
    return -0.5 * static_cast<double>(n) * std::log(rho1.squaredNorm());
}

}  // namespace entprod::spinor
