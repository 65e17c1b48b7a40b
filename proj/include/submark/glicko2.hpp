#pragma once

#include <vector>

namespace submark {

struct Glicko2Rating {
    double rating = 1500.0;
    double deviation = 350.0;
    double volatility = 0.06;
};

/// One game inside a rating period, from the updated player's perspective.
/// Opponent values are the pre-period ones; score is 1 (win), 0.5 (draw)
/// or 0 (loss).
struct Glicko2Game {
    double opponent_rating = 1500.0;
    double opponent_deviation = 350.0;
    double score = 0.5;
};

/// Applies one rating period. With no games only the deviation grows.
/// `tau` constrains volatility changes; the internal volatility iteration
/// converges to 1e-6.
Glicko2Rating glicko2_update(const Glicko2Rating& player,
                             const std::vector<Glicko2Game>& games,
                             double tau = 0.5);

}  // namespace submark
