#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "spinchain/entropy.hpp"
#include "spinchain/errors.hpp"

namespace spinchain {

inline constexpr double kValidationTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;

/// Two-qubit density matrix in X form, standard basis {|00>,|01>,|10>,|11>}
/// with |0> the s_z = +1/2 state of each spin:
///
///     [ a    .    .    alpha ]
///     [ .    c    beta .     ]
///     [ .    beta cp   .     ]
///     [ alpha .   .    b     ]
///
/// alpha = <s_i- s_j->, beta = <s_i- s_j+>, both real. The matrix commutes
/// with the pair parity sigma_z (x) sigma_z by construction.
struct XState {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double cp = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Single-qubit diagonal state.
struct QubitState {
    double p0 = 0.0;
    double p1 = 0.0;
};

enum class Site { first, second };

namespace detail {

inline double clamp_population(double x, const char* name) {
    if (x < -kEigenvalueClampTol)
        throw PositivityViolation(std::string("XState population ") + name + " = " +
                                  std::to_string(x) + " below -1e-12");
    return std::max(x, 0.0);
}

// Coherences are accepted up to sqrt(pop product) + 1e-10 and stored clamped
// to the exact bound, so downstream spectra stay above -1e-12.
inline double clamp_coherence(double x, double bound2, const char* name) {
    const double bound = std::sqrt(std::max(bound2, 0.0));
    if (std::abs(x) > bound + kValidationTol)
        throw PositivityViolation(std::string("XState coherence ") + name + " = " +
                                  std::to_string(x) + " exceeds positivity bound " +
                                  std::to_string(bound));
    return std::clamp(x, -bound, bound);
}

}  // namespace detail

/// Validate and build an XState from its six real elements.
/// The trace is renormalized when |trace - 1| < 1e-9, rejected otherwise.
inline XState xstate_from_elements(double a, double b, double c, double cp, double alpha,
                                   double beta) {
    for (double v : {a, b, c, cp, alpha, beta})
        if (!std::isfinite(v)) throw PositivityViolation("XState element not finite");

    const double tr = a + b + c + cp;
    if (std::abs(tr - 1.0) > kTraceTol)
        throw TraceError("XState trace = " + std::to_string(tr) + " deviates beyond 1e-9");

    XState x;
    x.a = detail::clamp_population(a / tr, "a");
    x.b = detail::clamp_population(b / tr, "b");
    x.c = detail::clamp_population(c / tr, "c");
    x.cp = detail::clamp_population(cp / tr, "c'");
    x.alpha = detail::clamp_coherence(alpha / tr, x.a * x.b, "alpha");
    x.beta = detail::clamp_coherence(beta / tr, x.c * x.cp, "beta");
    return x;
}

/// Build an XState from spin correlators:
///   a,b  = 1/4 +- (<s_iz> + <s_jz>)/2 + <s_iz s_jz>
///   c,c' = 1/4 +- (<s_iz> - <s_jz>)/2 - <s_iz s_jz>
inline XState xstate_from_correlators(double sz_i, double sz_j, double szsz, double alpha,
                                      double beta) {
    const double a = 0.25 + 0.5 * (sz_i + sz_j) + szsz;
    const double b = 0.25 - 0.5 * (sz_i + sz_j) + szsz;
    const double c = 0.25 + 0.5 * (sz_i - sz_j) - szsz;
    const double cp = 0.25 - 0.5 * (sz_i - sz_j) - szsz;
    return xstate_from_elements(a, b, c, cp, alpha, beta);
}

/// The four eigenvalues (sorted descending): the X form block-diagonalizes
/// into {(a,alpha),(alpha,b)} and {(c,beta),(beta,c')}.
inline std::array<double, 4> spectrum(const XState& x) {
    const double mo = 0.5 * (x.a + x.b);
    const double ro = std::sqrt(0.25 * (x.a - x.b) * (x.a - x.b) + x.alpha * x.alpha);
    const double mi = 0.5 * (x.c + x.cp);
    const double ri = std::sqrt(0.25 * (x.c - x.cp) * (x.c - x.cp) + x.beta * x.beta);
    std::array<double, 4> ev = {mo + ro, mo - ro, mi + ri, mi - ri};
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// Single-site marginal: first site -> diag(a+c, c'+b), second -> diag(a+c', c+b).
inline QubitState reduce(const XState& x, Site site) {
    if (site == Site::first) return {x.a + x.c, x.cp + x.b};
    return {x.a + x.cp, x.c + x.b};
}

inline double entropy(const QubitState& q) {
    return entropy({q.p0, q.p1});
}

enum class ConcurrenceKind { none, parallel, antiparallel };

struct Concurrence {
    double value = 0.0;
    ConcurrenceKind kind = ConcurrenceKind::none;
};

inline const char* to_string(ConcurrenceKind k) {
    switch (k) {
        case ConcurrenceKind::parallel: return "parallel";
        case ConcurrenceKind::antiparallel: return "antiparallel";
        default: return "none";
    }
}

/// Wootters concurrence for X states: C = 2 Max[|alpha| - sqrt(c c'),
/// |beta| - sqrt(a b), 0]. At most one entry can be positive; the first is
/// parallel-type entanglement, the second antiparallel.
inline Concurrence concurrence(const XState& x) {
    const double par = std::abs(x.alpha) - std::sqrt(x.c * x.cp);
    const double anti = std::abs(x.beta) - std::sqrt(x.a * x.b);
    const double c = 2.0 * std::max({par, anti, 0.0});
    // below the eigenvalue clamp the sign of par/anti is roundoff
    if (c <= kEigenvalueClampTol) return {0.0, ConcurrenceKind::none};
    return {c, par >= anti ? ConcurrenceKind::parallel : ConcurrenceKind::antiparallel};
}

/// Entanglement of formation from the concurrence,
/// E = sum_v h(q_v), q_± = (1 ± sqrt(1 - C^2))/2.
inline double eof(double concurrence_value) {
    const double C = std::clamp(concurrence_value, 0.0, 1.0);
    const double q = 0.5 * (1.0 + std::sqrt(std::max(1.0 - C * C, 0.0)));
    return binary_entropy(q);
}

inline double eof(const XState& x) {
    return eof(concurrence(x).value);
}

/// Image under sigma_x (x) sigma_x (both spins flipped): a<->b, c<->c'.
/// A local unitary, so discord, concurrence and EoF are unchanged.
inline XState spin_flipped(const XState& x) {
    return {x.b, x.a, x.cp, x.c, x.alpha, x.beta};
}

inline Eigen::Matrix4d to_matrix(const XState& x) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = x.a;
    m(1, 1) = x.c;
    m(2, 2) = x.cp;
    m(3, 3) = x.b;
    m(0, 3) = m(3, 0) = x.alpha;
    m(1, 2) = m(2, 1) = x.beta;
    return m;
}

}  // namespace spinchain
