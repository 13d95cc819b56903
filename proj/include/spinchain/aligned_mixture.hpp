#pragma once

#include <cmath>
#include <numbers>

#include "spinchain/discord.hpp"
#include "spinchain/xstate.hpp"

// Equal-weight mixtures of two fully aligned product states |theta theta>
// and |-theta -theta> (z axis bisecting the two directions), optionally with
// a coherence cross term of weight epsilon. These are the reduced pair
// states of definite-parity chain ground states near the factorizing field.

namespace spinchain {

struct MixtureParams {
    double theta = 0.0;    // half-angle between the two directions, in [0, pi/2]
    double epsilon = 0.0;  // coherence factor, in [-1, 1]
    int n = 0;             // chain size behind an overlap-derived epsilon (0 = none)
};

namespace detail {

inline void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12))
        throw ConfigError("mixture theta out of [0, pi/2]");
}

}  // namespace detail

/// rho(theta) = (|tt><tt| + |-t-t><-t-t|)/2:
/// a,b = (1 +- cos t)^2/4, c = c' = alpha = beta = sin^2(t)/4.
inline XState mixture_state(double theta) {
    detail::check_theta(theta);
    const double ct = std::cos(theta);
    const double w = 0.25 * std::sin(theta) * std::sin(theta);
    return xstate_from_elements(0.25 * (1.0 + ct) * (1.0 + ct), 0.25 * (1.0 - ct) * (1.0 - ct),
                                w, w, w, w);
}

/// Mixture with coherence term epsilon:
/// a,b = (1+eps)(1 +- cos t)^2 / [4(1+eps cos^2 t)],
/// alpha,beta = (1 +- eps) sin^2 t / [4(1+eps cos^2 t)], c = c' = beta.
inline XState mixture_state_coherent(double theta, double epsilon) {
    detail::check_theta(theta);
    if (std::abs(epsilon) > 1.0 + 1e-12) throw ConfigError("mixture |epsilon| > 1");
    const double ct = std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double den = 1.0 + epsilon * ct * ct;
    if (den < 1e-14)
        throw DegenerateNormalization("mixture normalization 1 + eps cos^2 theta vanishes");
    const double a = (1.0 + epsilon) * (1.0 + ct) * (1.0 + ct) / (4.0 * den);
    const double b = (1.0 + epsilon) * (1.0 - ct) * (1.0 - ct) / (4.0 * den);
    const double alpha = (1.0 + epsilon) * s2 / (4.0 * den);
    const double beta = (1.0 - epsilon) * s2 / (4.0 * den);
    return xstate_from_elements(a, b, beta, beta, alpha, beta);
}

/// Closed-form discord of rho(theta) (minimum of the gap at gamma = pi/2):
/// D = sum_mu { 2 h[(1 + mu sqrt(1 - sin^2(2t)/4))/4] - h(1/2)
///            - h[(1 + mu cos^2 t)/2] + h[(1 + mu cos t)/2] }.
inline double discord_closed_form(double theta) {
    detail::check_theta(theta);
    const double ct = std::cos(theta);
    const double s2t = std::sin(2.0 * theta);
    const double r = std::sqrt(1.0 - 0.25 * s2t * s2t);
    double d = 0.0;
    for (double mu : {1.0, -1.0}) {
        d += 2.0 * hbit((1.0 + mu * r) / 4.0) - hbit(0.5);
        d -= hbit((1.0 + mu * ct * ct) / 2.0) - hbit((1.0 + mu * ct) / 2.0);
    }
    return d;
}

/// Closed-form discord of the coherent mixture (gamma = pi/2 minimum).
inline double discord_closed_form_coherent(double theta, double epsilon) {
    detail::check_theta(theta);
    const double ct = std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    const double den = 1.0 + epsilon * ct * ct;
    if (den < 1e-14)
        throw DegenerateNormalization("mixture normalization 1 + eps cos^2 theta vanishes");
    const double r = std::sqrt(ct * ct * (1.0 + epsilon) * (1.0 + epsilon) + s2 * s2) / den;
    double d = 0.0;
    for (double mu : {1.0, -1.0}) {
        d += 2.0 * hbit((1.0 + mu * r) / 4.0) - hbit(0.5);
        d -= hbit((1.0 + mu * ct * ct) * (1.0 + mu * epsilon) / (2.0 * den)) -
             hbit((1.0 + mu * ct) * (1.0 + mu * epsilon * ct) / (2.0 * den));
    }
    return d;
}

/// C = |eps| sin^2(t) / (1 + eps cos^2 t); parallel for eps > 0, antiparallel for eps < 0.
inline double concurrence_coherent(double theta, double epsilon) {
    detail::check_theta(theta);
    const double ct = std::cos(theta);
    const double den = 1.0 + epsilon * ct * ct;
    if (den < 1e-14)
        throw DegenerateNormalization("mixture normalization 1 + eps cos^2 theta vanishes");
    return std::abs(epsilon) * std::sin(theta) * std::sin(theta) / den;
}

/// Coherence factor of the definite-parity pair reduction in an n-site chain:
/// eps = -cos^(n-2)(theta) for negative parity (left side of B_s), + for positive.
inline double epsilon_overlap(double theta, int n, int parity_sign) {
    if (n < 3) throw ConfigError("epsilon_overlap requires n >= 3");
    if (parity_sign != 1 && parity_sign != -1) throw ConfigError("parity sign must be +-1");
    return parity_sign * std::pow(std::cos(theta), n - 2);
}

/// D ~ theta^2 / 2 as theta -> 0.
inline double asymptote_small_theta(double theta) {
    return 0.5 * theta * theta;
}

/// D ~ -(u^2/4)[log2(u^2) + log2(e) - 2] with u = pi/2 - theta.
inline double asymptote_near_half_pi(double theta) {
    const double u = std::numbers::pi / 2.0 - theta;
    if (u == 0.0) return 0.0;
    return -0.25 * u * u * (std::log2(u * u) + std::log2(std::numbers::e) - 2.0);
}

}  // namespace spinchain
