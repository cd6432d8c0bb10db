#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "korovkin/spaces.hpp"
#include "oracles.hpp"

using namespace korovkin;

TEST_SUITE_BEGIN("spaces");

TEST_CASE("Lebesgue norms: reference values") {
    CHECK(norm(SpaceSpec::lp(2), make_constant(1.0)).value == doctest::Approx(1.0));
    CHECK(norm(SpaceSpec::lp(1), make_monomial(1)).value == doctest::Approx(0.5));
    CHECK(norm(SpaceSpec::lp(2), make_monomial(1)).value ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("sup norm with breakpoint-aware sampling") {
    const auto r = norm(SpaceSpec::sup(), make_hat());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.est_error > 0.0);
    CHECK(r.est_error < 1e-2);
}

TEST_CASE("weighted Lebesgue") {
    auto space = SpaceSpec::weighted_lp(2.0, make_power(0.5));
    CHECK(norm(space, make_constant(1.0)).value ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("grand Lebesgue fundamental constant approaches p-1") {
    for (double p : {2.0, 3.0, 4.0}) {
        const double c = fundamental_constant(SpaceSpec::grand_lp(p));
        CHECK(c > p - 1.0 - 0.02);
        CHECK(c < p - 1.0 + 0.02);
    }
}

TEST_CASE("grand Lebesgue: grid refinement stability") {
    const auto space = SpaceSpec::grand_lp(2.0);
    for (const auto& f : {make_monomial(1), make_smoothstep(), make_sqrt()}) {
        const NormResult r = norm(space, f);
        // Independent dense epsilon sweep (10x the kernel's grid), same
        // inner Lp evaluations.
        double finer = 0.0;
        const int m = 640;
        for (int i = 0; i < m; ++i) {
            const double t = std::pow(10.0, -14.0 + 14.0 * i / (m - 1));
            for (double eps : {0.5 * t, 1.0 - 0.5 * t}) {
                const double e = eps * (space.p - 1.0);
                const double q = space.p - e;
                const double I = integrate([&](double x) {
                                     return std::pow(std::abs(f.eval(x)), q);
                                 }, 0.0, 1.0, f.breakpoints).value;
                finer = std::max(finer, std::pow(e * I, 1.0 / q));
            }
        }
        CHECK(finer <= r.value + r.est_error + 1e-9);
        CHECK(r.value <= finer + r.est_error + 1e-9);
    }
}

TEST_CASE("weighted grand matches unweighted for unit weight") {
    // Both forms are evaluated literally as written; with w = 1 the weighted
    // functional coincides with the unweighted one.
    auto unweighted = SpaceSpec::grand_lp(2.5);
    auto weighted = SpaceSpec::weighted_grand_lp(2.5, make_constant(1.0));
    for (const auto& f : {make_monomial(2), make_abs_shift()}) {
        const double a = norm(unweighted, f).value;
        const double b = norm(weighted, f).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
}

TEST_CASE("variable exponent with constant p matches Lp") {
    auto space = SpaceSpec::variable_lp(make_affine(0.0, 2.0)); // p(t) = 2
    for (const auto& f : {make_smoothstep(), make_monomial(1), make_sqrt()}) {
        const double lux = norm(space, f).value;
        const double lp = norm(SpaceSpec::lp(2), f).value;
        CHECK(std::abs(lux - lp) < 1e-8);
    }
}

TEST_CASE("variable exponent gauge is homogeneous") {
    auto space = SpaceSpec::variable_lp(make_affine(1.0, 1.5)); // p(t) = 1.5 + t
    const auto f = make_smoothstep();
    const double base = norm(space, f).value;
    for (double a : {0.5, 2.0, 10.0}) {
        FunctionHandle af;
        af.name = "af";
        af.eval = [a, fe = f.eval](double x) { return a * fe(x); };
        CHECK(norm(space, af).value == doctest::Approx(a * base).epsilon(1e-8));
    }
}

TEST_CASE("Orlicz Amemiya functional: power Young function") {
    auto space = SpaceSpec::orlicz(make_young_power(2.0));
    // For phi(t) = t^2/2 the norm of the constant 1 is sqrt(2).
    CHECK(norm(space, make_constant(1.0)).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    // For phi(t)=t^p/p the Amemiya norm of f scales exactly.
    const auto f = make_sin_smooth();
    const double base = norm(space, f).value;
    for (double a : {0.5, 2.0, 10.0}) {
        FunctionHandle af;
        af.name = "af";
        af.eval = [a, fe = f.eval](double x) { return a * fe(x); };
        CHECK(norm(space, af).value == doctest::Approx(a * base).epsilon(1e-8));
    }
}

TEST_CASE("Orlicz dual estimate agrees within 5 percent") {
    for (double p : {2.0, 3.0}) {
        auto space = SpaceSpec::orlicz(make_young_power(p));
        for (const auto& f : {make_constant(1.0), make_monomial(1), make_smoothstep()}) {
            const double amemiya = norm(space, f).value;
            const double dual = orlicz_dual_estimate(space, f);
            CHECK(dual <= amemiya * 1.02); // dual candidates are feasible
            CHECK(dual >= amemiya * 0.95); // and nearly optimal
        }
    }
}

TEST_CASE("Morrey norm: reference values") {
    CHECK(norm(SpaceSpec::morrey(2, 3), make_constant(1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    // p = p0 collapses the interval supremum onto the full interval.
    const auto f = make_smoothstep();
    CHECK(norm(SpaceSpec::morrey(2, 2), f).value ==
          doctest::Approx(norm(SpaceSpec::lp(2), f).value).epsilon(1e-6));
}

TEST_CASE("Morrey norm: supremum over interior intervals") {
    // A peaked function forces the best interval away from [0,1].
    FunctionHandle peak;
    peak.name = "peak";
    peak.eval = [](double x) { return std::exp(-50.0 * (x - 0.3) * (x - 0.3)); };
    const auto r = norm(SpaceSpec::morrey(2, 4), peak);
    // Brute force over a dense grid of interval endpoints.
    double brute = 0.0;
    const int m = 200;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            const double a = static_cast<double>(i) / m, b = static_cast<double>(j) / m;
            const double I = integrate([&](double x) {
                                 const double v = peak.eval(x);
                                 return v * v;
                             }, a, b).value;
            brute = std::max(brute, std::pow(b - a, 1.0 / 4.0 - 1.0 / 2.0) *
                                        std::pow(I, 1.0 / 2.0));
        }
    }
    CHECK(r.value == doctest::Approx(brute).epsilon(1e-3));
    CHECK(r.value + r.est_error >= brute);
}

TEST_CASE("weak Lebesgue and small Morrey: constants") {
    CHECK(norm(SpaceSpec::weak_mp(2.0), make_constant(1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(SpaceSpec::small_morrey(2.0, 0.5), make_constant(1.0)).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("set-supremum kernels match the 2^N brute force") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::uniform_int_distribution<int> size_dist(1, 12);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = size_dist(rng);
        std::vector<double> values(n);
        for (double& v : values) v = dist(rng);
        auto f = oracles::step_function(values);

        auto weak = SpaceSpec::weak_mp(2.0);
        weak.resolution = n;
        CHECK(std::abs(norm(weak, f).value - oracles::weak_mp_brute_force(values, 2.0)) <
              1e-9);

        auto small = SpaceSpec::small_morrey(2.0, 0.35);
        small.resolution = n;
        CHECK(std::abs(norm(small, f).value -
                       oracles::small_morrey_brute_force(values, 2.0, 0.35)) < 1e-9);
    }
}

TEST_CASE("shift deviation: zero-extension convention") {
    auto l1 = SpaceSpec::lp(1);
    CHECK(shift_deviation(l1, make_constant(0.0), 0.1).value == 0.0);
    CHECK(shift_deviation(l1, make_constant(1.0), 0.1).value ==
          doctest::Approx(0.1).epsilon(1e-9));
    CHECK(shift_deviation(l1, make_monomial(1), 0.1).value ==
          doctest::Approx(0.185).epsilon(1e-9));
}

TEST_CASE("muckenhoupt constant") {
    CHECK(muckenhoupt_constant(make_constant(1.0), 2.0, 256) == doctest::Approx(1.0));
    CHECK(muckenhoupt_constant(make_constant(2.0), 2.0, 256) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // w = sqrt(x), p = 2: every prefix interval attains the maximum 4/3.
    const double kernel = muckenhoupt_constant(make_power(0.5), 2.0, 512);
    CHECK(kernel == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
    const double oracle = oracles::muckenhoupt_brute_force(make_power(0.5), 2.0, 4096);
    CHECK(oracle >= 1.0);
    CHECK(std::abs(kernel - oracle) < 1.5e-2);
}

TEST_CASE("degenerate zero input short-circuits") {
    for (auto space : {SpaceSpec::lp(2), SpaceSpec::grand_lp(2), SpaceSpec::weak_mp(2),
                       SpaceSpec::morrey(2, 3), SpaceSpec::small_morrey(2, 0.5)}) {
        const auto r = norm(space, make_constant(0.0));
        CHECK(r.value == 0.0);
        CHECK(r.method == "zero");
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(norm(SpaceSpec::lp(0.5), make_constant(1.0)), InvalidSpace);
    CHECK_THROWS_AS(norm(SpaceSpec::morrey(3, 2), make_constant(1.0)), InvalidSpace);
    CHECK_THROWS_AS(norm(SpaceSpec::small_morrey(2, 1.2), make_constant(1.0)), InvalidSpace);
    CHECK_THROWS_AS(norm(SpaceSpec::weak_mp(1.0), make_constant(1.0)), InvalidSpace);
    // domain mismatch
    CHECK_THROWS_AS(norm(SpaceSpec::lp(2), make_cos()), InvalidSpace);
    // periodic domain limited to sup/Lp kinds
    auto bad = SpaceSpec::morrey(2, 3);
    bad.domain = periodic_interval;
    CHECK_THROWS_AS(norm(bad, make_cos()), InvalidSpace);
}

TEST_CASE("periodic-domain Lebesgue and sup norms") {
    auto l1 = SpaceSpec::lp(1, periodic_interval);
    CHECK(norm(l1, make_cos()).value == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fundamental_constant(l1) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-10));
    CHECK(norm(SpaceSpec::sup(periodic_interval), make_sin()).value ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("clipping flag raises on singular weights") {
    FunctionHandle w;
    w.name = "singular";
    w.eval = [](double x) { return x == 0.0 ? 1e18 : std::min(1e18, 1.0 / (x * x * x * x * x)); };
    auto space = SpaceSpec::weighted_lp(2.0, w);
    const auto r = norm(space, make_constant(1.0));
    CHECK(r.clipped);
}

TEST_SUITE_END();
