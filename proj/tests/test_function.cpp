#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "korovkin/function.hpp"

using namespace korovkin;

TEST_SUITE_BEGIN("function");

TEST_CASE("midpoint sampling") {
    auto one = make_constant(1.0);
    auto s = sample(one, 4);
    for (double v : s.values) CHECK(v == 1.0);

    auto x = make_monomial(1);
    auto sx = sample(x, 2);
    CHECK(sx.values[0] == doctest::Approx(0.25));
    CHECK(sx.values[1] == doctest::Approx(0.75));

    auto x2 = make_monomial(2);
    auto sx2 = sample(x2, 2);
    CHECK(sx2.values[0] == doctest::Approx(0.0625));
    CHECK(sx2.values[1] == doctest::Approx(0.5625));
}

TEST_CASE("rearrangement reference cases") {
    SampledFunction s;
    s.values = {1, 0, 1, 0};
    auto r = decreasing_rearrangement(s);
    CHECK(r.values == std::vector<double>{1, 1, 0, 0});

    s.values = {0.125, 0.375, 0.625, 0.875};
    r = decreasing_rearrangement(s);
    CHECK(r.values == std::vector<double>{0.875, 0.625, 0.375, 0.125});

    s.values = {2, 1, 1, 1};
    r = decreasing_rearrangement(s);
    CHECK(r.values == std::vector<double>{2, 1, 1, 1});
}

TEST_CASE("rearrangement preserves mass and is nonincreasing") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        SampledFunction s;
        s.values.resize(64);
        for (double& v : s.values) v = dist(rng);
        const auto r = decreasing_rearrangement(s);
        double abs_mass = 0.0;
        for (double v : s.values) abs_mass += std::abs(v);
        const double r_mass = std::accumulate(r.values.begin(), r.values.end(), 0.0);
        CHECK(r_mass == doctest::Approx(abs_mass).epsilon(1e-14));
        for (std::size_t i = 0; i + 1 < r.values.size(); ++i) {
            CHECK(r.values[i] >= r.values[i + 1]);
        }
    }
}

TEST_CASE("midpoint sampling deviation for Lipschitz functions") {
    // On each cell, |f(x) - f(midpoint)| <= L/(2N).
    const auto f = make_abs_shift();
    const int n = 64;
    const auto s = sample(f, n);
    const double bound = 1.0 / (2.0 * n);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = dist(rng);
        const int cell = std::min(n - 1, static_cast<int>(x * n));
        CHECK(std::abs(f.eval(x) - s.values[cell]) <= bound + 1e-12);
    }
}

TEST_CASE("validate accepts the corpus") {
    for (const auto& f : corpus_unit()) CHECK_NOTHROW(validate(f));
    for (const auto& f : corpus_periodic()) CHECK_NOTHROW(validate(f));
}

TEST_CASE("validate rejects a wrong derivative") {
    FunctionHandle f = make_monomial(2);
    f.derivative = [](double) { return 1.0; };
    CHECK_THROWS_AS(validate(f), Error);
}

TEST_CASE("validate rejects non-finite evaluation") {
    FunctionHandle f;
    f.name = "bad";
    f.eval = [](double x) { return 1.0 / (x - 0.5); };
    CHECK_THROWS_AS(validate(f, 256), NonFiniteEvaluation);
}

TEST_CASE("piecewise polynomial evaluation") {
    auto f = make_piecewise_polynomial("pw", {0.0, 0.5, 1.0}, {{0.0, 1.0}, {0.5}});
    CHECK(f.eval(0.25) == doctest::Approx(0.25));
    CHECK(f.eval(0.75) == doctest::Approx(0.5));
    CHECK(f.breakpoints == std::vector<double>{0.5});
}

TEST_CASE("builtin descriptor parsing") {
    CHECK(builtin_function("x2").eval(0.5) == doctest::Approx(0.25));
    CHECK(builtin_function("monomial(3)").eval(0.5) == doctest::Approx(0.125));
    CHECK(builtin_function("affine(2,1)").eval(0.25) == doctest::Approx(1.5));
    CHECK(builtin_function("power(0.5)").eval(0.25) == doctest::Approx(0.5));
    CHECK_THROWS_AS(builtin_function("nope"), Error);
    CHECK_THROWS_AS(builtin_function("affine(1)"), Error);
}

TEST_CASE("sampling grid_size precondition") {
    CHECK_THROWS_AS(sample(make_constant(1.0), 0), Error);
}

TEST_SUITE_END();
