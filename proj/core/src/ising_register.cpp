#include "entprod/ising_register.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <utility>

namespace entprod::ising {

namespace {

void check(const RawParams& raw) {
    if (raw.beta <= 0.0)
        throw ValidationError("ising: beta must be positive");
}

void check(const RegisterParams& p) {
    if (p.temperature <= 0.0)
        throw ValidationError("ising: temperature must be positive");
    if (p.field < 0.0)
        throw ValidationError("ising: field must be nonnegative");
}

// log sum_i c_i exp(x_i) with c_i > 0
double log_sum_exp(std::initializer_list<std::pair<double, double>> terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& [c, x] : terms) m = std::max(m, x);
    double s = 0.0;
    for (const auto& [c, x] : terms) s += c * std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

RawParams to_raw(const RegisterParams& p) {
    check(p);
    RawParams raw;
    raw.beta = 1.0 / p.temperature;
    raw.field_B = p.field;
    raw.coupling_J = p.coupling == Coupling::ferro ? 1.0 : -1.0;
    return raw;
}

DenseOperator hamiltonian(const RawParams& raw) {
    const double b = raw.field_B, j = raw.coupling_J;
    Matrix h = Matrix::Zero(4, 4);
    h(0, 0) = -b - j / 2.0;
    h(1, 1) = j / 2.0;
    h(2, 2) = j / 2.0;
    h(3, 3) = b - j / 2.0;
    return DenseOperator(SpaceLayout({2, 2}), std::move(h));
}

double partition_fn(const RawParams& raw) {
    check(raw);
    const double bb = raw.beta * raw.field_B, bj = raw.beta * raw.coupling_J;
    return 2.0 * (std::cosh(bb) + 1.0) * std::cosh(bj / 2.0) +
           2.0 * (std::cosh(bb) - 1.0) * std::sinh(bj / 2.0);
}

double f1(const RawParams& raw) {
    check(raw);
    const double bb = raw.beta * raw.field_B, bj = raw.beta * raw.coupling_J;
    return 2.0 * (std::cosh(2.0 * bb) + 1.0) * std::cosh(bj) +
           2.0 * (std::cosh(2.0 * bb) - 1.0) * std::sinh(bj);
}

double f2(const RawParams& raw) {
    const double inner = f1(raw) + 4.0 * std::cosh(raw.beta * raw.field_B);
    return inner * inner;
}

// Exponential decompositions: with energies E = (-B-J/2, J/2, J/2, B-J/2),
//   Z  = sum exp(-beta E_k),
//   f1 = sum exp(-2 beta E_k),
//   f2 = [f1 + 2 e^{beta B} + 2 e^{-beta B}]^2.
double log_partition_fn(const RawParams& raw) {
    check(raw);
    const double bb = raw.beta * raw.field_B, bj = raw.beta * raw.coupling_J;
    return log_sum_exp({{1.0, bb + bj / 2.0},
                        {2.0, -bj / 2.0},
                        {1.0, -bb + bj / 2.0}});
}

double log_f1(const RawParams& raw) {
    check(raw);
    const double bb = raw.beta * raw.field_B, bj = raw.beta * raw.coupling_J;
    return log_sum_exp(
        {{1.0, 2.0 * bb + bj}, {2.0, -bj}, {1.0, -2.0 * bb + bj}});
}

double log_f2(const RawParams& raw) {
    check(raw);
    const double bb = raw.beta * raw.field_B, bj = raw.beta * raw.coupling_J;
    return 2.0 * log_sum_exp({{1.0, 2.0 * bb + bj},
                              {2.0, -bj},
                              {1.0, -2.0 * bb + bj},
                              {2.0, bb},
                              {2.0, -bb}});
}

double measure_closed_form_raw(const RawParams& raw) {
    return 0.5 *
           (log_f1(raw) - log_f2(raw) + 2.0 * log_partition_fn(raw));
}

double measure_closed_form(const RegisterParams& p) {
    return measure_closed_form_raw(to_raw(p));
}

namespace {

Coupling regime_coupling(Regime r) {
    switch (r) {
        case Regime::ferro_low_temperature:
        case Regime::ferro_small_field:
        case Regime::ferro_high_temperature:
        case Regime::ferro_large_field:
            return Coupling::ferro;
        default:
            return Coupling::antiferro;
    }
}

// shared small-field constant term: (1/2) ln(2 cosh(1/T)/(1 + cosh(1/T))),
// written through exponentials so it stays finite as T -> 0
double small_field_constant(double t) {
    const double e = std::exp(-1.0 / t);  // <= 1
    // 2 cosh(1/T)/(1+cosh(1/T)) = 2(1+e^2)/(1+2e+e^2)
    return 0.5 * std::log(2.0 * (1.0 + e * e) / (1.0 + 2.0 * e + e * e));
}

}  // namespace

double asymptotic_measure(Regime regime, const RegisterParams& p) {
    check(p);
    if (regime_coupling(regime) != p.coupling)
        throw ValidationError("asymptotic regime does not match coupling");
    const double t = p.temperature, h = p.field;
    switch (regime) {
        case Regime::ferro_low_temperature:
            return std::exp(-2.0 * h / t) - std::exp(-4.0 * h / t) +
                   std::exp(-6.0 * h / t) / 3.0;
        case Regime::ferro_small_field: {
            const double x = std::exp(1.0 / t);
            const double a2 = x * (x - 1.0) * (1.0 + 2.0 * x - x * x) /
                              (2.0 * t * t * (x + 1.0) * (x + 1.0) *
                               (x * x + 1.0));
            return small_field_constant(t) + a2 * h * h;
        }
        case Regime::ferro_high_temperature: {
            const double x = std::expm1(1.0 / t);
            return x * x / 8.0 + (h * h - 1.0) / 8.0 * x * x * x;
        }
        case Regime::ferro_large_field:
        case Regime::antiferro_large_field: {
            const double b2 = 1.0 - std::exp(-2.0 / t);
            const double b3 = -4.0 * std::exp(-1.0 / t) * b2;
            return b2 * std::exp(-2.0 * h / t) + b3 * std::exp(-3.0 * h / t);
        }
        case Regime::antiferro_low_temperature:
            if (h < 1.0)
                return 0.5 * std::log(2.0) -
                       0.5 * std::exp(-(1.0 - h) / t);
            if (h == 1.0)
                return 0.5 * std::log(27.0 / 25.0) -
                       std::exp(-2.0 / t) / 15.0 -
                       2.0 * std::exp(-4.0 / t) / 225.0;
            return 0.0;  // h > 1: the low-temperature limit vanishes
        case Regime::antiferro_small_field: {
            const double x = std::exp(1.0 / t);
            const double c2 = (x - 1.0) * (1.0 - 2.0 * x - 2.0 * x * x) /
                              (2.0 * t * t * (x + 1.0) * (x + 1.0) *
                               (x * x + 1.0));
            return small_field_constant(t) + c2 * h * h;
        }
        case Regime::antiferro_high_temperature: {
            const double x = std::expm1(1.0 / t);
            return x * x / 8.0 - (h * h + 1.0) / 8.0 * x * x * x;
        }
    }
    throw ValidationError("unknown asymptotic regime");
}

namespace {

std::vector<double> range_points(const SweepRange& r, bool positive) {
    if (r.steps < 1)
        throw ValidationError("sweep: step count must be at least 1");
    if (r.hi < r.lo)
        throw ValidationError("sweep: range upper bound below lower bound");
    if (positive && r.lo <= 0.0)
        throw ValidationError("sweep: temperature range must be positive");
    if (!positive && r.lo < 0.0)
        throw ValidationError("sweep: field range must be nonnegative");
    std::vector<double> pts;
    pts.reserve(r.steps);
    if (r.steps == 1) {
        pts.push_back(r.lo);
        return pts;
    }
    const double step = (r.hi - r.lo) / static_cast<double>(r.steps - 1);
    for (std::size_t i = 0; i < r.steps; ++i)
        pts.push_back(r.lo + static_cast<double>(i) * step);
    return pts;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepRange& t_range,
                            const SweepRange& h_range, Coupling coupling) {
    const auto ts = range_points(t_range, true);
    const auto hs = range_points(h_range, false);
    std::vector<SweepRow> rows;
    rows.reserve(ts.size() * hs.size());
    for (double t : ts)
        for (double h : hs)
            rows.push_back(
                {t, h, measure_closed_form({t, h, coupling})});
    return rows;
}

}  // namespace entprod::ising
