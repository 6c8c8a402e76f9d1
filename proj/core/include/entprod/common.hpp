// common.hpp — scalar/matrix aliases, error types, tolerances, log-base config

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace entprod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Logarithm base used for all entropic quantities. Natural log is the
// default; base 2 rescales every log-valued output uniformly.
enum class LogBase { natural, base2 };

inline double in_base(double natural_log_value, LogBase base) {
    return base == LogBase::natural ? natural_log_value
                                    : natural_log_value / std::log(2.0);
}

// Precondition or input-structure violations.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The measure is undefined for operators with (numerically) zero trace.
struct ZeroTraceError : std::domain_error {
    using std::domain_error::domain_error;
};

// A measurement outcome with zero probability cannot produce a state.
struct ImpossibleOutcomeError : std::domain_error {
    using std::domain_error::domain_error;
};

// A brute-force cross-check could not be carried out (missing or
// degenerate joint eigenspace); the case is skipped, not failed.
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace tol {

// Hermiticity, relative to the largest entry modulus.
inline constexpr double hermitian = 1e-9;
// |Tr rho - 1| for density operators.
inline constexpr double trace_one = 1e-9;
// Eigenvalues of a density operator may dip this far below zero.
inline constexpr double psd = 1e-9;
// Energy degeneracy detection, relative to the spectral range.
inline constexpr double degeneracy = 1e-8;
// |Tr A| below this is treated as zero trace (measure undefined).
inline constexpr double trace_zero = 1e-12;
// Measurement outcome probabilities below this are impossible outcomes.
inline constexpr double outcome = 1e-12;

}  // namespace tol

}  // namespace entprod
