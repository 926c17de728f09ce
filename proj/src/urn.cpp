#include "rumorlab/urn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rumorlab {

void UrnSpec::validate() const {
    if (white0 + black0 == 0)
        throw std::invalid_argument("urn: needs at least one ball");
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw std::overflow_error("urn: ball count overflows 64 bits");
    return a + b;
}

} // namespace

std::uint64_t urn_sample(const UrnSpec& spec, Rng& rng) {
    spec.validate();
    std::uint64_t white = spec.white0;
    std::uint64_t black = spec.black0;
    for (std::uint64_t i = 0; i < spec.draws; ++i) {
        const std::uint64_t total = checked_add(white, black);
        if (rng.next_below(total) < white) {
            white = checked_add(white, spec.delta());
            black = checked_add(black, spec.gamma());
        } else {
            white = checked_add(white, spec.beta());
            black = checked_add(black, spec.alpha());
        }
    }
    return white;
}

std::uint64_t urn_sample_triangular(const UrnSpec& spec, Rng& rng) {
    if (!spec.is_triangular())
        throw std::invalid_argument("urn: triangular sampler requires beta = 0");
    return urn_sample(spec, rng);
}

std::pair<Rational, Rational> urn_mean_variance(std::uint64_t a, std::uint64_t b,
                                                std::uint64_t s, std::uint64_t n) {
    const std::uint64_t w64 = a + b;
    if (w64 == 0)
        throw std::invalid_argument("urn: needs at least one ball");
    const BigInt A = a, B = b, K = s, N = n, W = w64;
    Rational mean = Rational(A) + Rational(A * K * N, W);
    Rational var = Rational(A * B * K * K * N * (K * N + W), W * W * (W + K));
    return {mean, var};
}

Rational urn_survival_probability(std::uint64_t a, std::uint64_t b,
                                  std::uint64_t s, std::uint64_t n) {
    if (a + b == 0)
        throw std::invalid_argument("urn: needs at least one ball");
    if (a == 0)
        return Rational(1);
    Rational p(1);
    const BigInt A = a, B = b, K = s;
    for (std::uint64_t i = 0; i < n; ++i) {
        const BigInt total = A + B + BigInt(i) * K;
        p *= Rational(B + BigInt(i) * K, total);
        if (p == 0)
            break;
    }
    return p;
}

double urn_moment_estimate(const UrnSpec& spec, unsigned r, std::uint64_t trials,
                           Rng& rng) {
    if (r == 0 || trials == 0)
        throw std::invalid_argument("urn: moment estimate needs r >= 1, trials >= 1");
    double acc = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double x = static_cast<double>(urn_sample(spec, rng));
        acc += std::pow(x, static_cast<double>(r));
    }
    return acc / static_cast<double>(trials);
}

} // namespace rumorlab
