// Acceptance suite: every criterion prints one pass/fail line; the process
// exits with the number of failed criteria.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "korovkin/bounds.hpp"
#include "oracles.hpp"

using namespace korovkin;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg) {
        ok = false;
        if (detail.empty()) detail = msg;
    }
};

std::vector<SpaceSpec> algebraic_spaces() {
    return {
        SpaceSpec::sup(),
        SpaceSpec::lp(1),
        SpaceSpec::lp(2),
        SpaceSpec::lp(4),
        SpaceSpec::grand_lp(2),
        SpaceSpec::morrey(2, 3),
        SpaceSpec::weak_mp(2),
        SpaceSpec::variable_lp(make_affine(0.0, 2.0)), // constant-2 sanity
        SpaceSpec::variable_lp(make_affine(1.0, 1.5)), // p(t) = 1.5 + t
    };
}

Check criterion_unitality() {
    Check c;
    for (int n : {1, 2, 5, 10, 50, 200}) {
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            const auto w = bernstein_weights(n, x);
            double sum = 0.0;
            for (double v : w) sum += v;
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        if (worst > 1e-12) {
            std::ostringstream msg;
            msg << "n=" << n << " max |K_n(1)-1| = " << worst;
            c.fail(msg.str());
        }
    }
    return c;
}

Check criterion_moments() {
    Check c;
    const auto id = make_monomial(1);
    const auto sq = make_monomial(2);
    for (int n : {1, 2, 5, 10, 50}) {
        const auto cells_id = kantorovich_cell_integrals(id, n);
        const auto cells_sq = kantorovich_cell_integrals(sq, n);
        for (int i = 0; i <= 32; ++i) {
            const double x = i / 32.0;
            const double d1 =
                std::abs(kantorovich_apply_cells(cells_id, n, x) - kantorovich_moment1(n, x));
            const double d2 =
                std::abs(kantorovich_apply_cells(cells_sq, n, x) - kantorovich_moment2(n, x));
            if (d1 > 1e-9 || d2 > 1e-9) {
                std::ostringstream msg;
                msg << "n=" << n << " x=" << x << " moment deviation " << std::max(d1, d2);
                c.fail(msg.str());
            }
        }
    }
    return c;
}

Check criterion_example41() {
    Check c;
    for (int n : {1, 5, 10, 50, 200}) {
        const double mu = mu_n(SpaceSpec::lp(1), kantorovich(n));
        const double expect = 1.0 / (6.0 * (n + 1.0));
        if (std::abs(mu * mu - expect) > 1e-8) {
            std::ostringstream msg;
            msg << "n=" << n << " mu^2=" << mu * mu << " expected " << expect;
            c.fail(msg.str());
        }
    }
    return c;
}

Check criterion_lp_moment_bound() {
    Check c;
    for (double p : {1.0, 2.0, 4.0}) {
        for (int n : {1, 10, 100}) {
            const double mu = mu_n(SpaceSpec::lp(p), kantorovich(n));
            const double cap = std::pow(1.0 / (n + 1.0), 1.0 / p);
            if (mu * mu > cap + 1e-8) {
                std::ostringstream msg;
                msg << "p=" << p << " n=" << n << " mu^2=" << mu * mu << " > " << cap;
                c.fail(msg.str());
            }
        }
    }
    return c;
}

Check run_bound_grid(const std::vector<FunctionHandle>& fns, BoundFlavor flavor) {
    Check c;
    const auto spaces = algebraic_spaces();
    const std::vector<int> ns = {4, 8, 16, 32, 64, 128};
    struct Cell {
        const FunctionHandle* f;
        const SpaceSpec* s;
        int n;
    };
    std::vector<Cell> cells;
    for (const auto& f : fns)
        for (const auto& s : spaces)
            for (int n : ns) cells.push_back({&f, &s, n});

    std::atomic<int> failures{0};
    std::string first_fail;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cells.size()); ++i) {
        const auto& cell = cells[i];
        BoundReport r;
        bool threw = false;
        std::string err;
        try {
            r = evaluate_bound(*cell.s, kantorovich(cell.n), *cell.f, flavor);
        } catch (const std::exception& e) {
            threw = true;
            err = e.what();
        }
        if (threw || !r.holds) {
            failures.fetch_add(1);
#ifdef _OPENMP
#pragma omp critical(acceptance_grid)
#endif
            {
                if (first_fail.empty()) {
                    std::ostringstream msg;
                    if (threw) {
                        msg << cell.f->name << "/" << cell.s->label() << "/n=" << cell.n
                            << " threw: " << err;
                    } else {
                        msg << cell.f->name << "/" << cell.s->label() << "/n=" << cell.n
                            << " lhs=" << r.lhs << " rhs=" << r.rhs << " budget=" << r.est_error;
                    }
                    first_fail = msg.str();
                }
            }
        }
    }
    if (failures.load() > 0) {
        c.fail(std::to_string(failures.load()) + " cells failed; first: " + first_fail);
    }
    return c;
}

Check criterion_shisha_mond_corpus() {
    return run_bound_grid({make_monomial(1), make_monomial(2), make_sqrt(),
                           make_abs_shift(), make_smoothstep()},
                          BoundFlavor::ShishaMond);
}

Check criterion_devore() {
    Check c = run_bound_grid({make_monomial(2), make_monomial(3), make_sin_smooth()},
                             BoundFlavor::DeVore);
    // Affine reduction: omega(f') = 0, so rhs = sqrt(c) mu |a| exactly.
    const double a = 2.0;
    const auto affine = make_affine(a, -0.5);
    for (const auto& space : algebraic_spaces()) {
        const auto r = devore_bound(space, kantorovich(8), affine);
        const double expect = std::sqrt(r.c_norm) * r.mu_n * a;
        if (std::abs(r.rhs - expect) > 1e-9) {
            std::ostringstream msg;
            msg << "affine rhs in " << space.label() << " off by " << std::abs(r.rhs - expect);
            c.fail(msg.str());
        }
        if (!r.holds) c.fail("affine bound fails in " + space.label());
    }
    return c;
}

Check criterion_trig() {
    Check c;
    const std::vector<FunctionHandle> fns = {make_cos(), make_sin(), make_cos2x()};
    const std::vector<SpaceSpec> spaces = {SpaceSpec::sup(periodic_interval),
                                           SpaceSpec::lp(1, periodic_interval)};
    const std::vector<int> ns = {4, 8, 16, 32, 64};
    for (const auto& f : fns) {
        for (const auto& s : spaces) {
            for (int n : ns) {
                const auto r = trig_bound(s, fejer(n), f, BoundFlavor::TrigShishaMond);
                if (!r.holds) {
                    std::ostringstream msg;
                    msg << f.name << "/" << s.label() << "/n=" << n << " lhs=" << r.lhs
                        << " rhs=" << r.rhs;
                    c.fail(msg.str());
                }
            }
        }
    }
    // Fejer eigen-action on cos within 1e-7.
    const auto cosf = make_cos();
    for (int n : {4, 8, 16, 32, 64}) {
        for (int i = 0; i <= 16; ++i) {
            const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / 16.0;
            const double got = fejer_apply(cosf, n, x);
            const double expect = n / (n + 1.0) * std::cos(x);
            if (std::abs(got - expect) > 1e-7) {
                std::ostringstream msg;
                msg << "eigen-check n=" << n << " x=" << x << " err=" << std::abs(got - expect);
                c.fail(msg.str());
            }
        }
        const double mu = mu_n(SpaceSpec::sup(periodic_interval), fejer(n));
        const double expect_mu = std::numbers::pi / std::sqrt(2.0 * (n + 1.0));
        if (std::abs(mu - expect_mu) > 1e-6) {
            std::ostringstream msg;
            msg << "mu(sup) n=" << n << " got " << mu << " expected " << expect_mu;
            c.fail(msg.str());
        }
    }
    return c;
}

Check criterion_rate() {
    Check c;
    std::vector<int> ns;
    for (int k = 0; k <= 7; ++k) ns.push_back(4 << k);
    const auto report = rate_sweep(SpaceSpec::lp(1), kantorovich(1), make_monomial(1), ns,
                                   BoundFlavor::ShishaMond);
    if (!report.slope_rhs.defined || std::abs(report.slope_rhs.slope + 0.5) > 0.05) {
        std::ostringstream msg;
        msg << "slope_rhs=" << report.slope_rhs.slope;
        c.fail(msg.str());
    }
    if (!report.slope_lhs.defined || std::abs(report.slope_lhs.slope + 1.0) > 0.10) {
        std::ostringstream msg;
        msg << "slope_lhs=" << report.slope_lhs.slope;
        c.fail(msg.str());
    }
    return c;
}

Check criterion_set_supremum_oracle() {
    Check c;
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    std::uniform_int_distribution<int> size_dist(1, 12);
    const double ps[] = {1.5, 2.0, 4.0};
    const double lambdas[] = {0.25, 0.5, 0.75};
    for (int trial = 0; trial < 50; ++trial) {
        const int n = size_dist(rng);
        std::vector<double> values(n);
        for (double& v : values) v = dist(rng);
        const auto f = oracles::step_function(values);
        const double p = ps[trial % 3];
        const double lambda = lambdas[trial % 3];

        auto weak = SpaceSpec::weak_mp(p);
        weak.resolution = n;
        const double weak_kernel = norm(weak, f).value;
        const double weak_oracle = oracles::weak_mp_brute_force(values, p);
        if (std::abs(weak_kernel - weak_oracle) > 1e-9) {
            std::ostringstream msg;
            msg << "weakmp trial " << trial << " kernel=" << weak_kernel
                << " oracle=" << weak_oracle;
            c.fail(msg.str());
        }

        auto small = SpaceSpec::small_morrey(p, lambda);
        small.resolution = n;
        const double small_kernel = norm(small, f).value;
        const double small_oracle = oracles::small_morrey_brute_force(values, p, lambda);
        if (std::abs(small_kernel - small_oracle) > 1e-9) {
            std::ostringstream msg;
            msg << "smallmorrey trial " << trial << " kernel=" << small_kernel
                << " oracle=" << small_oracle;
            c.fail(msg.str());
        }
    }
    return c;
}

std::vector<SpaceSpec> all_space_kinds() {
    const auto w = make_affine(1.0, 1.0); // 1 + x: bounded above and below
    return {
        SpaceSpec::sup(),
        SpaceSpec::lp(2),
        SpaceSpec::weighted_lp(2, w),
        SpaceSpec::grand_lp(2),
        SpaceSpec::weighted_grand_lp(2, w),
        SpaceSpec::variable_lp(make_affine(1.0, 1.5)),
        SpaceSpec::orlicz(make_young_power(2)),
        SpaceSpec::morrey(2, 3),
        SpaceSpec::weighted_morrey(2, 3, w),
        SpaceSpec::small_morrey(2, 0.5),
        SpaceSpec::weak_mp(2),
    };
}

Check criterion_norm_axioms() {
    Check c;
    const auto& corpus = corpus_unit();
    const auto spaces = all_space_kinds();
    std::atomic<int> failures{0};
    std::string first_fail;
    auto record = [&](const std::string& msg) {
        failures.fetch_add(1);
#ifdef _OPENMP
#pragma omp critical(acceptance_axioms)
#endif
        {
            if (first_fail.empty()) first_fail = msg;
        }
    };

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(spaces.size()); ++si) {
        const auto& space = spaces[si];
        try {
            const double c0 = fundamental_constant(space);
            std::vector<NormResult> norms(corpus.size());
            for (std::size_t i = 0; i < corpus.size(); ++i) norms[i] = norm(space, corpus[i]);

            for (std::size_t i = 0; i < corpus.size(); ++i) {
                const auto& f = corpus[i];
                const double nf = norms[i].value;

                // Absolute homogeneity.
                for (double a : {0.5, 2.0, 10.0}) {
                    FunctionHandle af;
                    af.name = "scaled";
                    af.breakpoints = f.breakpoints;
                    af.eval = [a, fe = f.eval](double x) { return a * fe(x); };
                    const double na = norm(space, af).value;
                    if (std::abs(na - a * nf) > 1e-8 * a * nf + 1e-12) {
                        record(space.label() + "/" + f.name + ": homogeneity off by " +
                               std::to_string(std::abs(na - a * nf)));
                    }
                }

                // Triangle inequality against a shifted partner.
                const auto& g = corpus[(i + 5) % corpus.size()];
                FunctionHandle fg;
                fg.name = "sum";
                fg.breakpoints = f.breakpoints;
                fg.breakpoints.insert(fg.breakpoints.end(), g.breakpoints.begin(),
                                      g.breakpoints.end());
                fg.eval = [fe = f.eval, ge = g.eval](double x) { return fe(x) + ge(x); };
                const double nfg = norm(space, fg).value;
                const double ng = norms[(i + 5) % corpus.size()].value;
                if (nfg > nf + ng + 1e-8) {
                    record(space.label() + "/" + f.name + "+" + g.name +
                           ": triangle off by " + std::to_string(nfg - nf - ng));
                }

                // Monotonicity: |h| <= |f| pointwise on the grid.
                for (double shrink : {0.6, 1.0}) {
                    FunctionHandle h;
                    h.name = "dominated";
                    h.breakpoints = f.breakpoints;
                    if (shrink != 1.0) {
                        h.eval = [s = shrink, fe = f.eval](double x) { return s * fe(x); };
                    } else {
                        h.eval = [fe = f.eval](double x) { return x * fe(x); };
                    }
                    const auto nh = norm(space, h);
                    if (nh.value > nf + norms[i].est_error + nh.est_error + 1e-10) {
                        record(space.label() + "/" + f.name + ": monotonicity off by " +
                               std::to_string(nh.value - nf));
                    }
                }

                // Embedding ||g||_X <= c0 ||g||_inf.
                const auto sup_f = sup_norm_estimate(f);
                if (nf > c0 * (sup_f.value + sup_f.slack) + norms[i].est_error + 1e-9) {
                    record(space.label() + "/" + f.name + ": embedding off by " +
                           std::to_string(nf - c0 * sup_f.value));
                }
            }
        } catch (const std::exception& e) {
            record(space.label() + " threw: " + e.what());
        }
    }
    if (failures.load() > 0) {
        c.fail(std::to_string(failures.load()) + " axiom checks failed; first: " + first_fail);
    }
    return c;
}

Check criterion_modulus() {
    Check c;
    // Windowed estimator vs the all-pairs oracle at N = 4096.
    for (const auto& f : corpus_unit()) {
        for (double delta : {0.01, 0.1, 0.37}) {
            const double window = modulus_at_resolution(f, delta, 4096);
            const double oracle = modulus_all_pairs(f, delta, 4096);
            if (std::abs(window - oracle) > 1e-9) {
                std::ostringstream msg;
                msg << f.name << " delta=" << delta << " window=" << window
                    << " oracle=" << oracle;
                c.fail(msg.str());
            }
        }
    }
    // Closed-form examples within 1e-4.
    struct Closed {
        FunctionHandle f;
        double delta;
        double expect;
    };
    const std::vector<Closed> closed = {
        {make_monomial(1), 0.1, 0.1},
        {make_monomial(2), 0.1, 0.19},
        {make_sqrt(), 0.25, 0.5},
    };
    for (const auto& [f, delta, expect] : closed) {
        const double got = modulus_of_continuity(f, delta).value;
        if (std::abs(got - expect) > 1e-4) {
            std::ostringstream msg;
            msg << f.name << " omega(" << delta << ")=" << got << " expected " << expect;
            c.fail(msg.str());
        }
    }
    // The three modulus properties.
    for (const auto& f : corpus_unit()) {
        double prev = 0.0;
        for (double delta : {0.05, 0.1, 0.2, 0.4}) {
            const double v = modulus_of_continuity(f, delta).value;
            if (v < prev - 1e-12) c.fail(f.name + ": monotonicity in delta violated");
            prev = v;
        }
        const auto base = modulus_of_continuity(f, 0.05);
        for (double lambda : {1.5, 2.0, 3.7}) {
            const auto scaled = modulus_of_continuity(f, lambda * 0.05);
            const double slack = modulus_slack(f, base) + modulus_slack(f, scaled);
            if (scaled.value > (1.0 + std::floor(lambda)) * base.value + slack + 1e-12) {
                c.fail(f.name + ": scaling property violated");
            }
        }
        // Vanishing limit: decreasing along 2^-k and below 1e-3 once k is
        // deep enough for the function's own smoothness (k <= 20 covers
        // omega(sqrt, d) = sqrt(d)).
        double v = modulus_of_continuity(f, std::pow(2.0, -12)).value;
        for (int k = 13; v >= 1e-3 && k <= 20; ++k) {
            v = modulus_of_continuity(f, std::pow(2.0, -k)).value;
        }
        if (v >= 1e-3) c.fail(f.name + ": omega(2^-k) never fell below 1e-3");
    }
    // Pointwise bound on a grid.
    const double delta = 0.1;
    for (const auto& f : {make_sqrt(), make_hat(), make_smoothstep()}) {
        const auto om = modulus_of_continuity(f, delta);
        const double slack = modulus_slack(f, om);
        for (int i = 0; i <= 256; ++i) {
            for (int j = i; j <= 256; ++j) {
                const double x = i / 256.0, y = j / 256.0;
                const double bound =
                    (1.0 + (x - y) * (x - y) / (delta * delta)) * (om.value + slack);
                if (std::abs(f.eval(x) - f.eval(y)) > bound + 1e-12) {
                    c.fail(f.name + ": pointwise modulus inequality violated");
                }
            }
        }
    }
    return c;
}

Check criterion_grand_constant() {
    Check c;
    for (double p : {2.0, 3.0, 4.0}) {
        const double got = fundamental_constant(SpaceSpec::grand_lp(p));
        if (std::abs(got - (p - 1.0)) > 0.02) {
            std::ostringstream msg;
            msg << "p=" << p << " ||1||=" << got << " vs p-1=" << p - 1.0;
            c.fail(msg.str());
        }
    }
    return c;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Kantorovich unitality via closed weights", criterion_unitality},
        {2, "moment identities for t and t^2", criterion_moments},
        {3, "mu_n^2 = 1/(6(n+1)) in L1", criterion_example41},
        {4, "Lp moment bound mu_n^2 <= (1/(n+1))^(1/p)", criterion_lp_moment_bound},
        {5, "Shisha-Mond bound holds on the corpus grid", criterion_shisha_mond_corpus},
        {6, "DeVore bound holds; affine rhs reduction", criterion_devore},
        {7, "trigonometric bound, Fejer eigen-action, trig mu_n", criterion_trig},
        {8, "rate sweep slopes for f = x in L1", criterion_rate},
        {9, "set-supremum kernels match 2^N brute force", criterion_set_supremum_oracle},
        {10, "norm axioms across all space kinds", criterion_norm_axioms},
        {11, "modulus estimator oracle + closed forms + properties", criterion_modulus},
        {12, "grand Lebesgue fundamental constant is p-1", criterion_grand_constant},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (result.ok) {
            std::printf("[PASS] %2d. %s\n", criterion.id, criterion.title);
        } else {
            ++failed;
            std::printf("[FAIL] %2d. %s -- %s\n", criterion.id, criterion.title,
                        result.detail.c_str());
        }
        std::fflush(stdout);
    }
    if (failed == 0) {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    } else {
        std::printf("%d acceptance criteria FAILED\n", failed);
    }
    return failed;
}
