#pragma once

#include <cstdint>
#include <vector>

#include "submark/bitstring.hpp"
#include "submark/rng.hpp"

namespace submark {

/// Binomial(n, p) draw by CDF inversion. Exact for p in [0, 1]; the walk is
/// chunked so the starting pmf never underflows, keeping per-draw cost
/// bounded without rejection.
int64_t sample_binomial(int64_t n, double p, RngStream& rng);

/// Binomial(n, p) conditioned on the result being >= 1, by inversion over
/// the renormalized CDF. Requires n >= 1 and p in (0, 1].
int64_t sample_binomial_gt0(int64_t n, double p, RngStream& rng);

/// Discrete power law P(l = k) proportional to k^-beta on [1, floor(n/2)]
/// (support {1} when n < 4). The normalization table is built once and
/// reused across draws.
class PowerLawSampler {
public:
    PowerLawSampler(int64_t n, double beta);

    int64_t sample(RngStream& rng) const;

    int64_t support_max() const noexcept { return static_cast<int64_t>(cdf_.size()); }

private:
    std::vector<double> cdf_;
};

/// One-off convenience wrapper around PowerLawSampler.
int64_t sample_power_law(int64_t n, double beta, RngStream& rng);

/// Rounds a draw from N(r, r(1 - r/n) * variance_scale) to the nearest
/// integer, resampling until the result lies in [1, n]. Requires
/// 1 <= r <= n. A zero variance yields round(r) directly.
int64_t sample_normal_flip_count(double r, int64_t n, RngStream& rng,
                                 double variance_scale = 1.0);

/// Flips exactly `count` distinct, uniformly chosen positions in place.
void flip_distinct_bits_inplace(BitString& x, int64_t count, RngStream& rng);

/// Copying form of flip_distinct_bits_inplace.
BitString flip_distinct_bits(const BitString& x, int64_t count, RngStream& rng);

/// Each bit is taken from `mutant` with probability c, else from `parent`.
BitString biased_uniform_crossover(const BitString& parent, const BitString& mutant,
                                   double c, RngStream& rng);

}  // namespace submark
