#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "spinchain/entropy.hpp"
#include "spinchain/minimize.hpp"
#include "spinchain/xstate.hpp"

namespace spinchain {

inline constexpr double kDiscordClampTol = 1e-9;
inline constexpr int kGammaGridPoints = 129;
inline constexpr double kGammaRefineTol = 1e-10;

/// Projective measurement axis on the second qubit: polar angle gamma in
/// [0, pi/2], azimuth phi in [0, pi). Symmetry of the post-measurement
/// spectrum under gamma -> pi - gamma and phi -> phi + pi confines the
/// search to this domain.
struct MeasurementAxis {
    double gamma = 0.0;
    double phi = 0.0;
};

struct MeasuredSpectrum {
    std::array<double, 4> joint;     // eigenvalues of rho' over (nu, mu) = (+,+),(+,-),(-,+),(-,-)
    std::array<double, 2> marginal;  // eigenvalues of the measured-side marginal rho'_j
};

namespace detail {

// Scalars entering the post-measurement spectrum. zB drives the measured
// marginal, zA and K = 2(a+b)-1 the conditional blocks.
struct MeasuredCoeffs {
    double zA, zB, K;
};

inline MeasuredCoeffs measured_coeffs(const XState& x) {
    return {x.a + x.c - x.cp - x.b, x.a + x.cp - x.c - x.b, 2.0 * (x.a + x.b) - 1.0};
}

// |alpha + beta|^2_phi = alpha^2 + beta^2 + 2 alpha beta cos(2 phi)
inline double coherence_weight(const XState& x, double phi) {
    return x.alpha * x.alpha + x.beta * x.beta + 2.0 * x.alpha * x.beta * std::cos(2.0 * phi);
}

inline std::array<double, 4> joint_eigenvalues(const MeasuredCoeffs& mc, double cg, double s2,
                                               double M) {
    std::array<double, 4> ev;
    int idx = 0;
    for (double nu : {1.0, -1.0}) {
        const double t = nu * mc.zA + mc.K * cg;
        const double r = std::sqrt(t * t + 4.0 * M * s2);
        ev[idx++] = 0.25 * (1.0 + nu * mc.zB * cg + r);
        ev[idx++] = 0.25 * (1.0 + nu * mc.zB * cg - r);
    }
    return ev;
}

}  // namespace detail

/// Spectrum of rho' = sum_k P_k rho P_k after measuring the second spin
/// along (gamma, phi), together with the measured-side marginal spectrum
/// {(1 +- zB cos gamma)/2}.
inline MeasuredSpectrum measured_spectrum(const XState& x, const MeasurementAxis& axis) {
    const auto mc = detail::measured_coeffs(x);
    const double cg = std::cos(axis.gamma);
    const double sg = std::sin(axis.gamma);
    MeasuredSpectrum out;
    out.joint = detail::joint_eigenvalues(mc, cg, sg * sg, detail::coherence_weight(x, axis.phi));
    out.marginal = {0.5 * (1.0 + mc.zB * cg), 0.5 * (1.0 - mc.zB * cg)};
    return out;
}

/// Measurement-conditioned entropy gap
///   D(gamma, phi) = S(rho') - S(rho'_j) - [S(rho) - S(rho_j)],
/// whose minimum over the axis is the discord.
inline double conditional_gap(const XState& x, const MeasurementAxis& axis) {
    const auto ms = measured_spectrum(x, axis);
    const auto ev = spectrum(x);
    const double base = entropy(std::span<const double>(ev.data(), 4)) -
                        entropy(reduce(x, Site::second));
    return entropy(std::span<const double>(ms.joint.data(), 4)) -
           entropy({ms.marginal[0], ms.marginal[1]}) - base;
}

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB), clamped at 0 for roundoff.
inline double mutual_information(const XState& x) {
    const auto ev = spectrum(x);
    const double i = entropy(reduce(x, Site::first)) + entropy(reduce(x, Site::second)) -
                     entropy(std::span<const double>(ev.data(), 4));
    return i > 0.0 ? i : 0.0;
}

struct DiscordResult {
    double discord = 0.0;
    double gamma_star = 0.0;
    double phi_star = 0.0;
    double mutual_information = 0.0;
    double classical_correlations = 0.0;
};

/// Quantum discord of an X state under projective measurements of the
/// second qubit. phi is handled analytically: the spectrum depends on phi
/// only through cos 2phi, minimized by cos 2phi = sign(alpha beta), i.e.
/// phi* = 0 for alpha beta >= 0 and pi/2 otherwise. The remaining gamma
/// minimization uses a 129-point grid on [0, pi/2] plus golden-section
/// refinement of the bracketing cell to |dgamma| < 1e-10.
inline DiscordResult discord(const XState& x) {
    const auto mc = detail::measured_coeffs(x);
    const double M = (std::abs(x.alpha) + std::abs(x.beta)) * (std::abs(x.alpha) + std::abs(x.beta));
    const double phi_star = x.alpha * x.beta >= 0.0 ? 0.0 : std::numbers::pi / 2.0;

    const auto ev = spectrum(x);
    const double base = entropy(std::span<const double>(ev.data(), 4)) -
                        entropy(reduce(x, Site::second));
    auto gap = [&](double gamma) {
        const double cg = std::cos(gamma);
        const double sg = std::sin(gamma);
        const auto joint = detail::joint_eigenvalues(mc, cg, sg * sg, M);
        double s = 0.0;
        for (double p : joint) s += hbit(std::max(p, 0.0));
        return s - binary_entropy(0.5 * (1.0 + mc.zB * cg)) - base;
    };

    const double half_pi = std::numbers::pi / 2.0;
    double best_g = 0.0;
    double best_v = gap(0.0);
    int best_i = 0;
    for (int i = 1; i < kGammaGridPoints; ++i) {
        const double g = half_pi * i / (kGammaGridPoints - 1);
        const double v = gap(g);
        if (v < best_v) {
            best_v = v;
            best_g = g;
            best_i = i;
        }
    }
    const double lo = half_pi * std::max(best_i - 1, 0) / (kGammaGridPoints - 1);
    const double hi = half_pi * std::min(best_i + 1, kGammaGridPoints - 1) / (kGammaGridPoints - 1);
    const auto [g_ref, v_ref] = golden_section_minimize(gap, lo, hi, kGammaRefineTol);
    if (v_ref < best_v) {
        best_v = v_ref;
        best_g = g_ref;
    }

    DiscordResult r;
    r.discord = best_v > -kDiscordClampTol && best_v < 0.0 ? 0.0 : best_v;
    r.gamma_star = best_g;
    r.phi_star = phi_star;
    r.mutual_information = mutual_information(x);
    r.classical_correlations = r.mutual_information - r.discord;
    return r;
}

}  // namespace spinchain
