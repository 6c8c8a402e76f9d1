// states.hpp — named entangled states (EPR, Bell, GHZ, multicat, multimode,
// separable) with their closed-form entanglement-production values.

#pragma once

#include <vector>

#include "entprod/common.hpp"
#include "entprod/measure.hpp"
#include "entprod/operators.hpp"

namespace entprod::states {

enum class Kind { epr, bell, ghz, multicat, multimode, separable };

// Parameter record for one named state. Use the factory functions; build()
// and closed_form_measure() validate normalization on entry.
struct NamedState {
    Kind kind = Kind::bell;
    int n_parties = 2;
    int sign = +1;                       // epr / bell / ghz superposition sign
    std::vector<Complex> coefficients;   // multicat (2 entries), multimode (M)
    std::vector<double> weights;         // separable mixture weights

    static NamedState epr(int sign = +1);
    static NamedState bell(int sign = +1);
    static NamedState ghz(int n_parties, int sign = +1);
    static NamedState multicat(int n_parties, Complex c1, Complex c2);
    static NamedState multimode(int n_parties, std::vector<Complex> coeffs);
    static NamedState separable(int n_parties, std::vector<double> weights);
};

bool is_pure(Kind kind);

// State vector of a pure named state (throws for separable).
Vector state_vector(const NamedState& spec);

struct BuiltState {
    DensityOperator rho;
    Partition partition;  // canonical: one block per party
};

BuiltState build(const NamedState& spec);

// Analytic epsilon for the canonical partition.
double closed_form_measure(const NamedState& spec,
                           LogBase base = LogBase::natural);

}  // namespace entprod::states
