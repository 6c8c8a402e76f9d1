#include "entprod/states.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace entprod::states {

namespace {

constexpr double k_norm_tol = 1e-10;

void validate(const NamedState& spec) {
    if (spec.n_parties < 2)
        throw ValidationError("named state needs at least two parties");
    switch (spec.kind) {
        case Kind::epr:
        case Kind::bell:
            if (spec.n_parties != 2)
                throw ValidationError("EPR/Bell states are two-party");
            [[fallthrough]];
        case Kind::ghz:
            if (spec.sign != 1 && spec.sign != -1)
                throw ValidationError("superposition sign must be +1 or -1");
            break;
        case Kind::multicat:
        case Kind::multimode: {
            if (spec.coefficients.empty())
                throw ValidationError("coefficients required");
            if (spec.kind == Kind::multicat && spec.coefficients.size() != 2)
                throw ValidationError("multicat takes exactly two coefficients");
            double norm2 = 0.0;
            for (const Complex& c : spec.coefficients) norm2 += std::norm(c);
            if (std::abs(norm2 - 1.0) > k_norm_tol)
                throw ValidationError("coefficients are not normalized");
            break;
        }
        case Kind::separable: {
            if (spec.weights.empty())
                throw ValidationError("weights required");
            double sum = 0.0;
            for (double p : spec.weights) {
                if (p < 0.0 || p > 1.0)
                    throw ValidationError("weights must lie in [0, 1]");
                sum += p;
            }
            if (std::abs(sum - 1.0) > k_norm_tol)
                throw ValidationError("weights must sum to one");
            break;
        }
    }
}

std::size_t party_dim(const NamedState& spec) {
    switch (spec.kind) {
        case Kind::multimode: return spec.coefficients.size();
        case Kind::separable: return spec.weights.size();
        default: return 2;
    }
}

SpaceLayout party_layout(const NamedState& spec) {
    return SpaceLayout(std::vector<std::size_t>(
        static_cast<std::size_t>(spec.n_parties), party_dim(spec)));
}

// flat index of |k k ... k> on n parties of dimension d
std::size_t diagonal_index(std::size_t k, int n, std::size_t d) {
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * d + k;
    return idx;
}

}  // namespace

NamedState NamedState::epr(int sign) {
    NamedState s;
    s.kind = Kind::epr;
    s.sign = sign;
    return s;
}

NamedState NamedState::bell(int sign) {
    NamedState s;
    s.kind = Kind::bell;
    s.sign = sign;
    return s;
}

NamedState NamedState::ghz(int n_parties, int sign) {
    NamedState s;
    s.kind = Kind::ghz;
    s.n_parties = n_parties;
    s.sign = sign;
    return s;
}

NamedState NamedState::multicat(int n_parties, Complex c1, Complex c2) {
    NamedState s;
    s.kind = Kind::multicat;
    s.n_parties = n_parties;
    s.coefficients = {c1, c2};
    return s;
}

NamedState NamedState::multimode(int n_parties, std::vector<Complex> coeffs) {
    NamedState s;
    s.kind = Kind::multimode;
    s.n_parties = n_parties;
    s.coefficients = std::move(coeffs);
    return s;
}

NamedState NamedState::separable(int n_parties, std::vector<double> weights) {
    NamedState s;
    s.kind = Kind::separable;
    s.n_parties = n_parties;
    s.weights = std::move(weights);
    return s;
}

bool is_pure(Kind kind) { return kind != Kind::separable; }

Vector state_vector(const NamedState& spec) {
    validate(spec);
    const SpaceLayout layout = party_layout(spec);
    const std::size_t d = layout.total_dim();
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const int n = spec.n_parties;
    switch (spec.kind) {
        case Kind::epr:
            // (|12> +/- |21>)/sqrt(2): computational |01>, |10>
            psi(1) = inv_sqrt2;
            psi(2) = spec.sign * inv_sqrt2;
            break;
        case Kind::bell:
            psi(0) = inv_sqrt2;
            psi(3) = spec.sign * inv_sqrt2;
            break;
        case Kind::ghz:
            psi(0) = inv_sqrt2;
            psi(static_cast<Eigen::Index>(d - 1)) = spec.sign * inv_sqrt2;
            break;
        case Kind::multicat:
            psi(0) = spec.coefficients[0];
            psi(static_cast<Eigen::Index>(d - 1)) = spec.coefficients[1];
            break;
        case Kind::multimode: {
            const std::size_t m = spec.coefficients.size();
            for (std::size_t k = 0; k < m; ++k)
                psi(static_cast<Eigen::Index>(diagonal_index(k, n, m))) =
                    spec.coefficients[k];
            break;
        }
        case Kind::separable:
            throw ValidationError("separable states are mixed");
    }
    return psi;
}

BuiltState build(const NamedState& spec) {
    validate(spec);
    const SpaceLayout layout = party_layout(spec);
    const auto d = static_cast<Eigen::Index>(layout.total_dim());
    Matrix rho;
    if (is_pure(spec.kind)) {
        const Vector psi = state_vector(spec);
        rho = psi * psi.adjoint();
    } else {
        rho = Matrix::Zero(d, d);
        const std::size_t k_dim = spec.weights.size();
        for (std::size_t k = 0; k < k_dim; ++k) {
            const auto idx = static_cast<Eigen::Index>(
                diagonal_index(k, spec.n_parties, k_dim));
            rho(idx, idx) = spec.weights[k];
        }
    }
    return BuiltState{
        DensityOperator::trusted(DenseOperator(layout, std::move(rho))),
        Partition::singletons(static_cast<std::size_t>(spec.n_parties))};
}

double closed_form_measure(const NamedState& spec, LogBase base) {
    validate(spec);
    const double n = spec.n_parties;
    double eps_nat = 0.0;
    switch (spec.kind) {
        case Kind::epr:
        case Kind::bell:
            eps_nat = std::log(2.0);
            break;
        case Kind::ghz:
            eps_nat = 0.5 * n * std::log(2.0);
            break;
        case Kind::multicat:
        case Kind::multimode: {
            double quartic = 0.0;
            for (const Complex& c : spec.coefficients) {
                const double c2 = std::norm(c);
                quartic += c2 * c2;
            }
            eps_nat = -0.5 * n * std::log(quartic);
            break;
        }
        case Kind::separable: {
            double sum_sq = 0.0;
            for (double p : spec.weights) sum_sq += p * p;
            eps_nat = -0.5 * (n - 1.0) * std::log(sum_sq);
            break;
        }
    }
    return in_base(eps_nat, base);
}

}  // namespace entprod::states
