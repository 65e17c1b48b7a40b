#include "submark/glicko2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace submark {

namespace {

// Conversion between the public rating scale and the internal one.
constexpr double kScale = 173.7178;
constexpr double kConvergence = 1e-6;

double g(double phi) {
    return 1.0 / std::sqrt(1.0 + 3.0 * phi * phi /
                                     (std::numbers::pi * std::numbers::pi));
}

double expected_score(double mu, double mu_j, double phi_j) {
    return 1.0 / (1.0 + std::exp(-g(phi_j) * (mu - mu_j)));
}

/// Solves for the new volatility with the bracketing iteration on
/// f(x) = e^x (delta^2 - phi^2 - v - e^x) / (2 (phi^2 + v + e^x)^2) - (x - a) / tau^2.
double new_volatility(double sigma, double phi, double v, double delta_sq,
                      double tau) {
    const double a = std::log(sigma * sigma);
    const double phi_sq = phi * phi;
    const auto f = [&](double x) {
        const double ex = std::exp(x);
        const double denom = phi_sq + v + ex;
        return ex * (delta_sq - phi_sq - v - ex) / (2.0 * denom * denom) -
               (x - a) / (tau * tau);
    };

    double lower = a;
    double upper;
    if (delta_sq > phi_sq + v) {
        upper = std::log(delta_sq - phi_sq - v);
    } else {
        double k = 1.0;
        while (f(a - k * tau) < 0.0) k += 1.0;
        upper = a - k * tau;
    }

    double f_lower = f(lower);
    double f_upper = f(upper);
    while (std::abs(upper - lower) > kConvergence) {
        const double mid = lower + (lower - upper) * f_lower / (f_upper - f_lower);
        const double f_mid = f(mid);
        if (f_mid * f_upper < 0.0) {
            lower = upper;
            f_lower = f_upper;
        } else {
            f_lower /= 2.0;
        }
        upper = mid;
        f_upper = f_mid;
    }
    return std::exp(lower / 2.0);
}

}  // namespace

Glicko2Rating glicko2_update(const Glicko2Rating& player,
                             const std::vector<Glicko2Game>& games, double tau) {
    if (!(player.deviation > 0.0)) {
        throw std::invalid_argument("rating deviation must be positive");
    }
    const double mu = (player.rating - 1500.0) / kScale;
    const double phi = player.deviation / kScale;

    if (games.empty()) {
        const double phi_star = std::sqrt(phi * phi +
                                          player.volatility * player.volatility);
        return {player.rating, phi_star * kScale, player.volatility};
    }

    double v_inv = 0.0;
    double delta_sum = 0.0;
    for (const auto& game : games) {
        const double mu_j = (game.opponent_rating - 1500.0) / kScale;
        const double phi_j = game.opponent_deviation / kScale;
        const double g_j = g(phi_j);
        const double e_j = expected_score(mu, mu_j, phi_j);
        v_inv += g_j * g_j * e_j * (1.0 - e_j);
        delta_sum += g_j * (game.score - e_j);
    }
    const double v = 1.0 / v_inv;
    const double delta = v * delta_sum;

    const double sigma_prime =
        new_volatility(player.volatility, phi, v, delta * delta, tau);
    const double phi_star = std::sqrt(phi * phi + sigma_prime * sigma_prime);
    const double phi_prime = 1.0 / std::sqrt(1.0 / (phi_star * phi_star) + 1.0 / v);
    const double mu_prime = mu + phi_prime * phi_prime * delta_sum;

    return {mu_prime * kScale + 1500.0, phi_prime * kScale, sigma_prime};
}

}  // namespace submark
