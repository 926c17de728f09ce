#include <cmath>
#include <map>

#include <doctest.h>

#include "rumorlab/urn.hpp"
#include "support/urn_enum.hpp"

using namespace rumorlab;
using rumorlab::testing::urn_exact_distribution;

TEST_CASE("polya urn trivial cases") {
    Rng rng(1);
    CHECK(urn_sample(UrnSpec::polya(1, 1, 2, 0), rng) == 1);
    for (int i = 0; i < 10; ++i)
        CHECK(urn_sample(UrnSpec::polya(3, 0, 5, 4), rng) == 23);
}

TEST_CASE("empty urn is rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(urn_sample(UrnSpec::polya(0, 0, 1, 1), rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(urn_mean_variance(0, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("total ball count is deterministic for a polya urn") {
    Rng rng(7);
    const UrnSpec spec = UrnSpec::polya(2, 3, 4, 25);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t w = urn_sample(spec, rng);
        CHECK(w >= 2);
        CHECK((w - 2) % 4 == 0); // white count moves in steps of s
        CHECK(w <= 2 + 25 * 4);
    }
}

TEST_CASE("Urn(1,1,1,2) is uniform on {1,2,3}") {
    const auto dist = urn_exact_distribution(UrnSpec::polya(1, 1, 1, 2));
    REQUIRE(dist.size() == 3);
    CHECK(dist.at(1) == Rational(1, 3));
    CHECK(dist.at(2) == Rational(1, 3));
    CHECK(dist.at(3) == Rational(1, 3));

    // Monte Carlo agreement within 4 standard errors.
    Rng rng(42);
    const std::uint64_t trials = 100000;
    std::map<std::uint64_t, std::uint64_t> freq;
    for (std::uint64_t t = 0; t < trials; ++t)
        ++freq[urn_sample(UrnSpec::polya(1, 1, 1, 2), rng)];
    for (const auto& [x, p] : dist) {
        const double pe = to_double(p);
        const double se = std::sqrt(pe * (1 - pe) / trials);
        CHECK(std::abs(freq[x] / double(trials) - pe) < 4 * se);
    }
}

TEST_CASE("mean and variance formulas") {
    auto [mean, var] = urn_mean_variance(1, 1, 2, 3);
    CHECK(mean == Rational(4));
    CHECK(var == Rational(6));
    auto [m2, v2] = urn_mean_variance(2, 0, 3, 7);
    CHECK(v2 == Rational(0));
    CHECK(m2 == Rational(2 + 3 * 7));
}

TEST_CASE("mean/variance/survival match the enumeration oracle exactly") {
    for (std::uint64_t a = 0; a <= 4; ++a) {
        for (std::uint64_t b = 0; b <= 4; ++b) {
            if (a + b == 0 || a + b > 6) continue;
            for (std::uint64_t s : {1, 2, 3}) {
                for (std::uint64_t n : {0, 1, 4, 7}) {
                    const auto dist =
                        urn_exact_distribution(UrnSpec::polya(a, b, s, n));
                    const auto [mean, var] = urn_mean_variance(a, b, s, n);
                    CHECK(mean == testing::exact_mean(dist));
                    CHECK(var == testing::exact_variance(dist));
                    const auto it = dist.find(a);
                    const Rational stay = it == dist.end() ? Rational(0) : it->second;
                    CHECK(urn_survival_probability(a, b, s, n) == stay);
                }
            }
        }
    }
}

TEST_CASE("survival probability examples and tail bound") {
    CHECK(urn_survival_probability(1, 1, 1, 1) == Rational(1, 2));
    CHECK(urn_survival_probability(1, 1, 1, 3) == Rational(1, 4));
    CHECK(urn_survival_probability(3, 0, 2, 5) == Rational(0));
    CHECK(urn_survival_probability(0, 2, 1, 5) == Rational(1));

    // (c/(c+n))^{a/k} with c = ceil((a+b)/k) upper-bounds the product.
    for (std::uint64_t a = 1; a <= 4; ++a) {
        for (std::uint64_t b = 0; b <= 4; ++b) {
            for (std::uint64_t s : {1, 2, 3}) {
                for (std::uint64_t n : {1, 3, 8}) {
                    const double c = std::ceil(double(a + b) / double(s));
                    const double bound =
                        std::pow(c / (c + double(n)), double(a) / double(s));
                    CHECK(to_double(urn_survival_probability(a, b, s, n)) <=
                          bound + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("survival probability is non-increasing in n") {
    Rational prev(1);
    for (std::uint64_t n = 0; n <= 30; ++n) {
        const Rational p = urn_survival_probability(2, 3, 2, n);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("triangular urn: clique-growth matrix") {
    Rng rng(5);
    const std::uint64_t k = 3;
    CHECK(urn_sample_triangular(UrnSpec::clique_growth(k, 1, k, 0), rng) == k);
    // an all-black urn never gains a white ball
    for (std::uint64_t n : {0, 1, 5, 17})
        CHECK(urn_sample_triangular(UrnSpec::clique_growth(0, 2, 3, n), rng) ==
              0);
    // Monte Carlo mean of the mixed urn matches the enumeration oracle
    {
        const auto spec = UrnSpec::clique_growth(1, 0, 2, 17);
        const double mean = to_double(testing::exact_mean(urn_exact_distribution(spec)));
        const std::uint64_t trials = 40000;
        double sum = 0;
        for (std::uint64_t t = 0; t < trials; ++t)
            sum += double(urn_sample_triangular(spec, rng));
        CHECK(std::abs(sum / double(trials) - mean) <
              4 * 17.0 / std::sqrt(double(trials)));
    }

    const auto dist = urn_exact_distribution(UrnSpec::clique_growth(2, 1, 2, 1));
    REQUIRE(dist.size() == 2);
    CHECK(dist.at(3) == Rational(2, 3));
    CHECK(dist.at(2) == Rational(1, 3));

    UrnSpec bad = UrnSpec::clique_growth(2, 1, 2, 1);
    bad.replacement[0][1] = 1;
    CHECK_THROWS_AS(urn_sample_triangular(bad, rng), std::invalid_argument);
}

TEST_CASE("triangular urn total advances by k per draw") {
    // matrix [[k,0],[1,k-1]]: both rows sum to k
    Rng rng(9);
    const std::uint64_t k = 4, n = 50;
    const auto dist = urn_exact_distribution(UrnSpec::clique_growth(k, 3, k, 6));
    for (const auto& [w, p] : dist) CHECK(w <= k + 3 + 6 * k);
    const std::uint64_t w = urn_sample_triangular(UrnSpec::clique_growth(k, 3, k, n), rng);
    CHECK(w <= k + 3 + n * k);
}

TEST_CASE("moment estimates converge to the exact moments") {
    Rng rng(11);
    const UrnSpec spec = UrnSpec::polya(1, 1, 2, 3);
    const std::uint64_t trials = 60000;
    // E[X] = 4, Var = 6 -> SE of the mean estimate = sqrt(6/trials)
    const double m1 = urn_moment_estimate(spec, 1, trials, rng);
    CHECK(std::abs(m1 - 4.0) < 4 * std::sqrt(6.0 / trials));
    // E[X^2] = 22; X in [1,7] so Var(X^2) <= E[X^4] <= 7^4
    const double m2 = urn_moment_estimate(spec, 2, trials, rng);
    CHECK(std::abs(m2 - 22.0) < 4 * std::sqrt(2401.0 / trials));
    // deterministic urn: no black balls, so X = a + s n always
    const double m3 = urn_moment_estimate(UrnSpec::polya(2, 0, 3, 7), 1, 10, rng);
    CHECK(m3 == 23.0);
}

TEST_CASE("triangular moment bound holds with slack") {
    // matrix [[3,0],[1,2]]: gamma=1, delta=2, alpha=3=gamma+delta, r*delta>=alpha
    Rng rng(13);
    const std::uint64_t n = 2000;
    const UrnSpec spec = UrnSpec::clique_growth(1, 1, 3, n);
    const unsigned r = 2;
    const double estimate = urn_moment_estimate(spec, r, 2000, rng);
    const double leading =
        std::pow(3.0 * double(n) / 2.0, 2.0 * 2.0 / 3.0) * (1.0 * 3.0);
    CHECK(estimate <= leading * 1.25);
}
