// ising_register.hpp — exact two-qubit Ising register in a field:
//
//   H = -B (S1z + S2z) - 2J S1z S2z,  S = sigma_z/2,
//
// with closed-form partition function, Hilbert-Schmidt norms, the
// entanglement-production measure eps(T, h), every asymptotic regime, and
// grid sweeps. Dimensionless variables: T = 1/(beta |J|), h = B/|J|.

#pragma once

#include <cstddef>
#include <vector>

#include "entprod/common.hpp"
#include "entprod/operators.hpp"

namespace entprod::ising {

enum class Coupling { ferro, antiferro };

// Dimensionless register parameters; requires J != 0 by construction
// (the J = 0 line is reachable only through RawParams).
struct RegisterParams {
    double temperature = 1.0;  // T = 1/(beta |J|), > 0
    double field = 0.0;        // h = B/|J|, >= 0 (the measure is even in B)
    Coupling coupling = Coupling::ferro;
};

struct RawParams {
    double beta = 1.0;      // > 0
    double field_B = 0.0;
    double coupling_J = 0.0;
};

// Canonical raw parameters with |J| = 1.
RawParams to_raw(const RegisterParams& p);

// 4x4 diagonal Hamiltonian diag(-B-J/2, J/2, J/2, B-J/2) on a qubit pair.
DenseOperator hamiltonian(const RawParams& raw);

// Closed forms as printed; they can overflow for beta*|B| or beta*|J|
// beyond ~700. The log_* variants never overflow.
double partition_fn(const RawParams& raw);  // Z = Tr exp(-beta H)
double f1(const RawParams& raw);            // ||exp(-beta H)||^2
double f2(const RawParams& raw);            // [f1 + 4 cosh(beta B)]^2
double log_partition_fn(const RawParams& raw);
double log_f1(const RawParams& raw);
double log_f2(const RawParams& raw);

// eps = (1/2) ln(f1/f2 * Z^2), natural log, evaluated in log space.
double measure_closed_form_raw(const RawParams& raw);
double measure_closed_form(const RegisterParams& p);

enum class Regime {
    ferro_low_temperature,       // T -> 0, h > 0
    ferro_small_field,           // h -> 0, T > 0
    ferro_high_temperature,      // T -> infinity
    ferro_large_field,           // h -> infinity
    antiferro_low_temperature,   // T -> 0 (split at h = 1)
    antiferro_small_field,
    antiferro_high_temperature,
    antiferro_large_field,
};

// Asymptotic expansion value in the given regime. Throws ValidationError
// when the regime does not belong to p.coupling.
double asymptotic_measure(Regime regime, const RegisterParams& p);

// Inclusive linear range with `steps` points (steps == 1 emits `lo`).
struct SweepRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 1;
};

struct SweepRow {
    double temperature;
    double field;
    double epsilon;
};

// Row-major grid, T outer and h inner, values from measure_closed_form.
std::vector<SweepRow> sweep(const SweepRange& t_range,
                            const SweepRange& h_range, Coupling coupling);

}  // namespace entprod::ising
