#include "submark/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace submark {

namespace {

/// Inversion walk over Binomial(n, p) with p in (0, 1). The caller
/// guarantees exp(n * log1p(-p)) stays above the underflow threshold.
int64_t binomial_inversion(int64_t n, double p, RngStream& rng) {
    const double ratio = p / (1.0 - p);
    double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
    double cdf = pmf;
    const double u = rng.next_double();
    int64_t k = 0;
    while (u >= cdf && k < n) {
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
        cdf += pmf;
    }
    return k;
}

}  // namespace

int64_t sample_binomial(int64_t n, double p, RngStream& rng) {
    if (n < 0) throw std::invalid_argument("binomial requires n >= 0");
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("binomial requires p in [0, 1]");
    }
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;

    // Keep exp(chunk * log1p(-p)) >= e^-690: split n into chunks and sum
    // independent binomial draws.
    const double log1mp = std::log1p(-p);
    const int64_t max_chunk = std::max<int64_t>(
        1, static_cast<int64_t>(std::floor(-690.0 / log1mp)));
    int64_t total = 0;
    int64_t remaining = n;
    while (remaining > 0) {
        const int64_t chunk = std::min(remaining, max_chunk);
        total += binomial_inversion(chunk, p, rng);
        remaining -= chunk;
    }
    return total;
}

int64_t sample_binomial_gt0(int64_t n, double p, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("binomial>0 requires n >= 1");
    if (!(p > 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("binomial>0 requires p in (0, 1]");
    }
    if (p == 1.0) return n;

    const double pmf_zero = std::exp(static_cast<double>(n) * std::log1p(-p));
    if (pmf_zero < 1e-300) {
        // P(0) is below double resolution; the plain draw is already
        // conditioned for every representable u.
        int64_t k;
        do {
            k = sample_binomial(n, p, rng);
        } while (k == 0);
        return k;
    }

    // Inversion over the renormalized CDF: map u into [P(0), 1) and walk
    // from k = 0 upward.
    const double u = pmf_zero + rng.next_double() * (1.0 - pmf_zero);
    const double ratio = p / (1.0 - p);
    double pmf = pmf_zero;
    double cdf = pmf_zero;
    int64_t k = 0;
    while (u >= cdf && k < n) {
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
        cdf += pmf;
    }
    return std::max<int64_t>(k, 1);
}

PowerLawSampler::PowerLawSampler(int64_t n, double beta) {
    if (n < 1) throw std::invalid_argument("power law requires n >= 1");
    const int64_t support = std::max<int64_t>(1, n / 2);
    cdf_.resize(static_cast<std::size_t>(support));
    double total = 0.0;
    for (int64_t k = 1; k <= support; ++k) {
        total += std::pow(static_cast<double>(k), -beta);
        cdf_[static_cast<std::size_t>(k - 1)] = total;
    }
    for (double& value : cdf_) value /= total;
    cdf_.back() = 1.0;
}

int64_t PowerLawSampler::sample(RngStream& rng) const {
    const double u = rng.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return 1 + static_cast<int64_t>(it - cdf_.begin());
}

int64_t sample_power_law(int64_t n, double beta, RngStream& rng) {
    return PowerLawSampler(n, beta).sample(rng);
}

int64_t sample_normal_flip_count(double r, int64_t n, RngStream& rng,
                                 double variance_scale) {
    if (!(r >= 1.0) || !(r <= static_cast<double>(n))) {
        throw std::invalid_argument("normal flip count requires 1 <= r <= n");
    }
    const double variance = r * (1.0 - r / static_cast<double>(n)) * variance_scale;
    if (!(variance > 0.0)) {
        const int64_t rounded = std::llround(r);
        return std::clamp<int64_t>(rounded, 1, n);
    }
    const double sigma = std::sqrt(variance);
    for (;;) {
        const double draw = r + sigma * rng.next_normal();
        const int64_t rounded = std::llround(draw);
        if (rounded >= 1 && rounded <= n) return rounded;
    }
}

void flip_distinct_bits_inplace(BitString& x, int64_t count, RngStream& rng) {
    const int64_t n = static_cast<int64_t>(x.size());
    if (count < 0 || count > n) {
        throw std::invalid_argument("flip count must lie in [0, n]");
    }
    if (count == 0) return;
    if (count == n) {
        for (int64_t i = 0; i < n; ++i) x.flip(static_cast<std::size_t>(i));
        return;
    }
    if (count <= 32) {
        // Rejection with a linear duplicate scan; cheap for the typical
        // small flip counts.
        int64_t chosen[32];
        int picked = 0;
        while (picked < count) {
            const int64_t candidate = static_cast<int64_t>(
                rng.next_below(static_cast<uint64_t>(n)));
            bool duplicate = false;
            for (int i = 0; i < picked; ++i) {
                if (chosen[i] == candidate) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            chosen[picked++] = candidate;
            x.flip(static_cast<std::size_t>(candidate));
        }
        return;
    }
    // Partial Fisher-Yates for large counts.
    std::vector<int64_t> index(static_cast<std::size_t>(n));
    std::iota(index.begin(), index.end(), 0);
    for (int64_t i = 0; i < count; ++i) {
        const int64_t j =
            i + static_cast<int64_t>(rng.next_below(static_cast<uint64_t>(n - i)));
        std::swap(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
        x.flip(static_cast<std::size_t>(index[static_cast<std::size_t>(i)]));
    }
}

BitString flip_distinct_bits(const BitString& x, int64_t count, RngStream& rng) {
    BitString result = x;
    flip_distinct_bits_inplace(result, count, rng);
    return result;
}

BitString biased_uniform_crossover(const BitString& parent, const BitString& mutant,
                                   double c, RngStream& rng) {
    if (parent.size() != mutant.size()) {
        throw std::invalid_argument("crossover requires equal lengths");
    }
    BitString child = parent;
    for (std::size_t i = 0; i < child.size(); ++i) {
        if (rng.next_double() < c) child.set(i, mutant.test(i));
    }
    return child;
}

}  // namespace submark
