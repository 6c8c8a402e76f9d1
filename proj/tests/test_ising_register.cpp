#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entprod/ising_register.hpp"
#include "entprod/measure.hpp"

using namespace entprod;
using namespace entprod::ising;

namespace {

constexpr double k_half_ln2 = 0.34657359027997264;

// pinned: (1/2) ln(2 cosh 1 / (1 + cosh 1))
const double k_eps_t1_h0 =
    0.5 * std::log(2.0 * std::cosh(1.0) / (1.0 + std::cosh(1.0)));

double numeric_epsilon(const RawParams& raw, double beta_scale = 1.0) {
    const DenseOperator h = hamiltonian(raw);
    return gibbs_measure(h, raw.beta * beta_scale, Partition({{0}, {1}}, 2))
        .epsilon;
}

}  // namespace

TEST_CASE("hamiltonian matrix in the product basis") {
    CHECK(hamiltonian({1.0, 0.0, 0.0}).matrix().isApprox(Matrix::Zero(4, 4)));

    const Matrix h_field = hamiltonian({1.0, 1.0, 0.0}).matrix();
    CHECK(h_field(0, 0).real() == doctest::Approx(-1.0));
    CHECK(h_field(1, 1).real() == doctest::Approx(0.0));
    CHECK(h_field(2, 2).real() == doctest::Approx(0.0));
    CHECK(h_field(3, 3).real() == doctest::Approx(1.0));

    const Matrix h_coupling = hamiltonian({1.0, 0.0, 1.0}).matrix();
    CHECK(h_coupling(0, 0).real() == doctest::Approx(-0.5));
    CHECK(h_coupling(1, 1).real() == doctest::Approx(0.5));
    CHECK(h_coupling(2, 2).real() == doctest::Approx(0.5));
    CHECK(h_coupling(3, 3).real() == doctest::Approx(-0.5));
}

TEST_CASE("partition function closed form") {
    // beta -> 0 gives Tr I = 4
    CHECK(partition_fn({1e-12, 0.7, -0.3}) == doctest::Approx(4.0).epsilon(1e-9));

    // B = 0 reduces to 4 cosh(beta J / 2)
    CHECK(partition_fn({2.0, 0.0, 0.8}) ==
          doctest::Approx(4.0 * std::cosh(0.8)).epsilon(1e-13));

    // numeric oracle: trace of the exponential
    for (const RawParams raw :
         {RawParams{1.0, 1.0, 1.0}, RawParams{0.5, -2.0, 1.3},
          RawParams{3.0, 0.4, -0.9}}) {
        const DenseOperator e = hermitian_exp(hamiltonian(raw), -raw.beta);
        CHECK(partition_fn(raw) ==
              doctest::Approx(e.trace().real()).epsilon(1e-12));
        CHECK(std::exp(log_partition_fn(raw)) ==
              doctest::Approx(partition_fn(raw)).epsilon(1e-12));
    }
}

TEST_CASE("f1 closed form") {
    CHECK(f1({1e-12, 0.5, 0.5}) == doctest::Approx(4.0).epsilon(1e-9));

    // J = 0: f1 = 4 cosh^2(beta B)
    const double bb = 1.7;
    CHECK(f1({1.0, bb, 0.0}) ==
          doctest::Approx(4.0 * std::cosh(bb) * std::cosh(bb)).epsilon(1e-13));

    // B = 0: f1 = 4 cosh(beta J)
    CHECK(f1({1.0, 0.0, 1.1}) ==
          doctest::Approx(4.0 * std::cosh(1.1)).epsilon(1e-13));

    // numeric oracle: Tr exp(-2 beta H)
    for (const RawParams raw :
         {RawParams{1.0, 1.0, 1.0}, RawParams{0.7, -1.2, 0.4}}) {
        const DenseOperator e = hermitian_exp(hamiltonian(raw), -2.0 * raw.beta);
        CHECK(f1(raw) == doctest::Approx(e.trace().real()).epsilon(1e-12));
        CHECK(std::exp(log_f1(raw)) == doctest::Approx(f1(raw)).epsilon(1e-12));
    }
}

TEST_CASE("f2 closed form") {
    CHECK(f2({1e-12, 0.5, 0.5}) == doctest::Approx(64.0).epsilon(1e-8));

    const double bb = 0.9;
    CHECK(f2({1.0, bb, 0.0}) ==
          doctest::Approx(16.0 * std::cosh(bb) * std::cosh(bb) *
                          (1.0 + std::cosh(bb)) * (1.0 + std::cosh(bb)))
              .epsilon(1e-12));
    CHECK(f2({1.0, 0.0, 1.3}) ==
          doctest::Approx(16.0 * (1.0 + std::cosh(1.3)) *
                          (1.0 + std::cosh(1.3)))
              .epsilon(1e-12));

    // numeric oracle: product of marginal norms of exp(-beta H)
    for (const RawParams raw :
         {RawParams{1.0, 1.0, 1.0}, RawParams{0.6, 0.3, -1.5}}) {
        const DenseOperator e = hermitian_exp(hamiltonian(raw), -raw.beta);
        const double m0 = partial_trace(e, {0}).matrix().squaredNorm();
        const double m1 = partial_trace(e, {1}).matrix().squaredNorm();
        CHECK(f2(raw) == doctest::Approx(m0 * m1).epsilon(1e-12));
        CHECK(std::exp(log_f2(raw)) == doctest::Approx(f2(raw)).epsilon(1e-12));
    }
}

TEST_CASE("closed-form measure pins") {
    CHECK(measure_closed_form({1.0, 0.0, Coupling::ferro}) ==
          doctest::Approx(k_eps_t1_h0).epsilon(1e-12));
    // decimal pin of the same value
    CHECK(measure_closed_form({1.0, 0.0, Coupling::ferro}) ==
          doctest::Approx(0.0967759082832360).epsilon(1e-12));

    // strong coupling limit at B = 0
    CHECK(measure_closed_form({0.01, 0.0, Coupling::ferro}) ==
          doctest::Approx(k_half_ln2).epsilon(1e-9));
    CHECK(measure_closed_form({0.01, 0.0, Coupling::antiferro}) ==
          doctest::Approx(k_half_ln2).epsilon(1e-9));

    // J = 0 with B != 0 produces nothing (reachable through RawParams only)
    CHECK(std::abs(measure_closed_form_raw({2.0, 1.3, 0.0})) < 1e-12);
    CHECK(std::abs(measure_closed_form_raw({0.5, 4.0, 0.0})) < 1e-12);

    CHECK_THROWS_AS(measure_closed_form({-1.0, 0.0, Coupling::ferro}),
                    ValidationError);
    CHECK_THROWS_AS(measure_closed_form({1.0, -0.5, Coupling::ferro}),
                    ValidationError);
}

TEST_CASE("measure is even in the field") {
    for (double b : {0.3, 1.7, 6.0})
        CHECK(std::abs(measure_closed_form_raw({1.4, b, 0.9}) -
                       measure_closed_form_raw({1.4, -b, 0.9})) < 1e-12);
}

TEST_CASE("closed form equals the numeric pipeline over the working grid") {
    // log-spaced T in [0.05, 50], linear h in [0, 20]
    for (int i = 0; i < 12; ++i) {
        const double t = 0.05 * std::pow(1000.0, i / 11.0);
        for (int j = 0; j <= 10; ++j) {
            const double h = 2.0 * j;
            for (const Coupling c : {Coupling::ferro, Coupling::antiferro}) {
                const RegisterParams p{t, h, c};
                const double closed = measure_closed_form(p);
                const double numeric = numeric_epsilon(to_raw(p));
                CHECK(std::abs(closed - numeric) < 1e-10);
            }
        }
    }
}

TEST_CASE("high-temperature limit vanishes") {
    CHECK(measure_closed_form({1e6, 1.0, Coupling::ferro}) <= 1e-10);
    CHECK(measure_closed_form({1e6, 1.0, Coupling::ferro}) >= 0.0);
}

TEST_CASE("deep overflow region stays finite and correct") {
    // T = 0.02, h = 20: beta*B = 1000 overflows naive cosh; the log-space
    // path must agree with the numeric pipeline (which shifts the spectrum)
    const RegisterParams p{0.02, 20.0, Coupling::ferro};
    const double closed = measure_closed_form(p);
    CHECK(std::isfinite(closed));
    CHECK(std::abs(closed - numeric_epsilon(to_raw(p))) < 1e-10);
}

namespace {

struct AsymptoticPin {
    Regime regime;
    Coupling coupling;
    double t, h;
    bool deeper_in_t;  // otherwise a decade deeper in h (or smaller h)
};

double closed_at(Coupling c, double t, double h) {
    return measure_closed_form({t, h, c});
}

}  // namespace

TEST_CASE("asymptotic expansions match their closed forms at the deep end") {
    // deep-end pins, fixed per regime; each error must be <= 1e-6 and must
    // not grow when stepping a decade deeper into the regime
    const std::vector<AsymptoticPin> pins = {
        {Regime::ferro_low_temperature, Coupling::ferro, 0.25, 1.0, true},
        {Regime::ferro_small_field, Coupling::ferro, 1.0, 1e-2, false},
        {Regime::ferro_high_temperature, Coupling::ferro, 100.0, 2.0, true},
        {Regime::ferro_large_field, Coupling::ferro, 2.0, 8.0, false},
        {Regime::antiferro_low_temperature, Coupling::antiferro, 0.05, 0.5, true},
        {Regime::antiferro_low_temperature, Coupling::antiferro, 0.5, 1.0, true},
        {Regime::antiferro_small_field, Coupling::antiferro, 1.0, 1e-3, false},
        {Regime::antiferro_high_temperature, Coupling::antiferro, 100.0, 2.0, true},
        {Regime::antiferro_large_field, Coupling::antiferro, 1.0, 15.0, false},
    };

    for (const auto& pin : pins) {
        CAPTURE(static_cast<int>(pin.regime));
        CAPTURE(pin.t);
        CAPTURE(pin.h);
        const double err_at = std::abs(
            asymptotic_measure(pin.regime, {pin.t, pin.h, pin.coupling}) -
            closed_at(pin.coupling, pin.t, pin.h));
        CHECK(err_at <= 1e-6);

        double t2 = pin.t, h2 = pin.h;
        if (pin.deeper_in_t)
            t2 = pin.regime == Regime::ferro_high_temperature ||
                         pin.regime == Regime::antiferro_high_temperature
                     ? pin.t * 10.0
                     : pin.t / 10.0;
        else if (pin.regime == Regime::ferro_small_field ||
                 pin.regime == Regime::antiferro_small_field)
            h2 = pin.h / 10.0;
        else
            h2 = pin.h * 10.0;
        const double err_deeper = std::abs(
            asymptotic_measure(pin.regime, {t2, h2, pin.coupling}) -
            closed_at(pin.coupling, t2, h2));
        CHECK(err_deeper <= err_at);
    }
}

TEST_CASE("antiferro low-temperature splits at h = 1") {
    // plateau below h = 1
    CHECK(asymptotic_measure(Regime::antiferro_low_temperature,
                             {0.02, 0.5, Coupling::antiferro}) ==
          doctest::Approx(k_half_ln2).epsilon(1e-9));
    // step value at h = 1
    CHECK(asymptotic_measure(Regime::antiferro_low_temperature,
                             {0.02, 1.0, Coupling::antiferro}) ==
          doctest::Approx(0.5 * std::log(27.0 / 25.0)).epsilon(1e-9));
    // collapse above h = 1
    CHECK(asymptotic_measure(Regime::antiferro_low_temperature,
                             {0.02, 2.0, Coupling::antiferro}) == 0.0);
    CHECK(closed_at(Coupling::antiferro, 0.02, 2.0) ==
          doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("ferro order of limits is not commutative") {
    // h -> 0 first (small-field expansion), then T -> 0: half ln 2
    CHECK(asymptotic_measure(Regime::ferro_small_field,
                             {0.01, 0.0, Coupling::ferro}) ==
          doctest::Approx(k_half_ln2).epsilon(1e-9));
    // T -> 0 first at h > 0, then h -> 0: zero
    CHECK(std::abs(asymptotic_measure(Regime::ferro_low_temperature,
                                      {0.01, 0.3, Coupling::ferro})) < 1e-12);
    CHECK(std::abs(closed_at(Coupling::ferro, 0.01, 0.3)) < 1e-12);
}

TEST_CASE("regime and coupling must match") {
    CHECK_THROWS_AS(asymptotic_measure(Regime::ferro_low_temperature,
                                       {0.1, 1.0, Coupling::antiferro}),
                    ValidationError);
    CHECK_THROWS_AS(asymptotic_measure(Regime::antiferro_high_temperature,
                                       {10.0, 1.0, Coupling::ferro}),
                    ValidationError);
}

TEST_CASE("sweep grid ordering and qualitative features") {
    const auto rows = sweep({0.5, 1.0, 3}, {0.0, 1.0, 2}, Coupling::ferro);
    REQUIRE(rows.size() == 6);
    // T outer, h inner
    CHECK(rows[0].temperature == doctest::Approx(0.5));
    CHECK(rows[0].field == doctest::Approx(0.0));
    CHECK(rows[1].temperature == doctest::Approx(0.5));
    CHECK(rows[1].field == doctest::Approx(1.0));
    CHECK(rows[2].temperature == doctest::Approx(0.75));
    CHECK(rows[5].temperature == doctest::Approx(1.0));
    for (const auto& r : rows)
        CHECK(r.epsilon ==
              doctest::Approx(closed_at(Coupling::ferro, r.temperature, r.field))
                  .epsilon(1e-15));

    CHECK_THROWS_AS(sweep({0.0, 1.0, 2}, {0.0, 1.0, 2}, Coupling::ferro),
                    ValidationError);
    CHECK_THROWS_AS(sweep({1.0, 0.5, 2}, {0.0, 1.0, 2}, Coupling::ferro),
                    ValidationError);
    CHECK_THROWS_AS(sweep({0.5, 1.0, 0}, {0.0, 1.0, 2}, Coupling::ferro),
                    ValidationError);

    // ferro ridge: the finest cell near (T -> 0, h -> 0) approaches
    // half ln 2 from below
    const auto ferro = sweep({0.05, 2.0, 40}, {0.0, 1.0, 21}, Coupling::ferro);
    double max_eps = 0.0;
    for (const auto& r : ferro) max_eps = std::max(max_eps, r.epsilon);
    CHECK(max_eps == doctest::Approx(k_half_ln2).epsilon(1e-6));
    CHECK(max_eps <= k_half_ln2);

    // any grid point with very large h is numerically zero
    const auto far = sweep({1.0, 1.0, 1}, {60.0, 60.0, 1}, Coupling::ferro);
    CHECK(std::abs(far[0].epsilon) < 1e-12);

    // antiferro low-T row: plateau for h < 1, step at 1, collapse beyond
    const auto anti = sweep({0.02, 0.02, 1}, {0.0, 2.0, 5}, Coupling::antiferro);
    CHECK(anti[0].epsilon == doctest::Approx(k_half_ln2).epsilon(2e-3));
    CHECK(anti[1].epsilon == doctest::Approx(k_half_ln2).epsilon(2e-3));
    CHECK(anti[2].epsilon ==
          doctest::Approx(0.5 * std::log(27.0 / 25.0)).epsilon(2e-3));
    CHECK(std::abs(anti[3].epsilon) < 1e-6);
    CHECK(std::abs(anti[4].epsilon) < 1e-6);
}
