#ifndef RUMORLAB_URN_HPP
#define RUMORLAB_URN_HPP

#include <array>
#include <cstdint>
#include <utility>

#include "rumorlab/rational.hpp"
#include "rumorlab/rng.hpp"

namespace rumorlab {

// Two-color generalized Polya-Eggenberger urn.
//
// Replacement matrix convention (the single place it is documented):
//   replacement = [[alpha, beta], [gamma, delta]]
//   row 0 fires on a BLACK draw: add beta white and alpha black balls;
//   row 1 fires on a WHITE draw: add delta white and gamma black balls.
// A plain Polya urn with step s is [[s,0],[0,s]].
struct UrnSpec {
    std::uint64_t white0 = 0;
    std::uint64_t black0 = 0;
    std::array<std::array<std::uint64_t, 2>, 2> replacement{{{0, 0}, {0, 0}}};
    std::uint64_t draws = 0;

    static UrnSpec polya(std::uint64_t white0, std::uint64_t black0,
                         std::uint64_t s, std::uint64_t draws) {
        return UrnSpec{white0, black0, {{{s, 0}, {0, s}}}, draws};
    }

    // The clique-counting urn [[k,0],[1,k-1]]: a white draw returns k-1 white
    // and 1 black, a black draw returns k black.
    static UrnSpec clique_growth(std::uint64_t white0, std::uint64_t black0,
                                 std::uint64_t k, std::uint64_t draws) {
        return UrnSpec{white0, black0, {{{k, 0}, {1, k - 1}}}, draws};
    }

    std::uint64_t alpha() const { return replacement[0][0]; }
    std::uint64_t beta() const { return replacement[0][1]; }
    std::uint64_t gamma() const { return replacement[1][0]; }
    std::uint64_t delta() const { return replacement[1][1]; }

    bool is_diagonal() const {
        return beta() == 0 && gamma() == 0 && alpha() == delta();
    }
    bool is_triangular() const { return beta() == 0; }

    void validate() const; // throws std::invalid_argument on an empty urn
};

// White-ball count after spec.draws draws. Throws on invalid spec or if a
// ball count would overflow 64 bits.
std::uint64_t urn_sample(const UrnSpec& spec, Rng& rng);

// Triangular case (beta = 0); rejects other matrices.
std::uint64_t urn_sample_triangular(const UrnSpec& spec, Rng& rng);

// Exact mean and variance of Urn(a,b,s,n) for the diagonal (Polya) case:
//   E[X]   = a + (a/w) s n,                       w = a+b
//   Var[X] = a b s^2 n (s n + w) / (w^2 (w + s))
std::pair<Rational, Rational> urn_mean_variance(std::uint64_t a, std::uint64_t b,
                                                std::uint64_t s, std::uint64_t n);

// P[X = a] for the Polya urn: the exact product prod_{i<n} (1 - a/(a+b+is)).
// Returns 1 when a = 0.
Rational urn_survival_probability(std::uint64_t a, std::uint64_t b,
                                  std::uint64_t s, std::uint64_t n);

// Monte Carlo estimate of E[X^r] over independent runs of the urn.
double urn_moment_estimate(const UrnSpec& spec, unsigned r, std::uint64_t trials,
                           Rng& rng);

} // namespace rumorlab

#endif
