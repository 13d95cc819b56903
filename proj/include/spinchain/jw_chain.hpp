#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/errors.hpp"
#include "spinchain/parity.hpp"
#include "spinchain/xstate.hpp"

// Exact parity-resolved ground state of the cyclic nearest-neighbor XY chain
// via Jordan-Wigner fermionization. Each spin-parity sector maps to a
// quadratic fermion form diagonalized by a parity-dependent Fourier
// transform (half-integer modes for positive parity, integer for negative)
// followed by a BCS rotation. Pair reduced densities come from the fermionic
// contractions f_l, g_l through Wick-theorem determinants.

namespace spinchain {

enum class Topology { nearest_neighbor_cyclic, fully_connected };

struct ChainSpec {
    int n = 0;
    double jx = 0.0;
    double jy = 0.0;
    double b = 0.0;
    Topology topology = Topology::nearest_neighbor_cyclic;

    double jplus() const { return 0.5 * (jx + jy); }
    double jminus() const { return 0.5 * (jx - jy); }
    double anisotropy() const {
        if (jx == 0.0) throw AnisotropyOutOfRange("anisotropy undefined for jx = 0");
        return jy / jx;
    }
};

/// Quasiparticle solution of one spin-parity sector.
struct QuasiparticleSolution {
    Parity parity = Parity::positive;
    std::vector<double> ks;       // half-integers (+) or integers (-)
    std::vector<double> omegas;   // 2 pi k / n
    std::vector<double> lambdas;  // lambda_0 = J_+ - B in the negative sector, >= 0 otherwise
    std::vector<double> us;       // u_k >= 0
    std::vector<double> vs;       // sign chosen so u_k v_k = -J_- sin(omega_k)/(2 lambda_k)
    double sector_energy = 0.0;   // -1/2 sum_k lambda_k
};

/// Ground-state fermionic one-body expectations by site separation:
/// f_l = <c+_i c_{i+l}> - delta_{l0}/2, g_l = <c+_i c+_{i+l}>.
struct Contractions {
    std::vector<double> f;  // even in the signed separation
    std::vector<double> g;  // odd; g_0 = 0

    double f_at(long l) const { return f[std::abs(l) % f.size()]; }
    double g_at(long l) const {
        const double v = g[std::abs(l) % g.size()];
        return l < 0 ? -v : v;
    }
};

namespace detail {

inline void require_nn(const ChainSpec& spec) {
    if (spec.topology != Topology::nearest_neighbor_cyclic)
        throw ModelUnsupported("free-fermion solution requires the nearest-neighbor cyclic chain");
    if (spec.n < 3) throw ConfigError("chain size must be >= 3");
    if (!(std::isfinite(spec.jx) && std::isfinite(spec.jy) && std::isfinite(spec.b)))
        throw ConfigError("chain couplings must be finite");
}

// Fold B -> |B| (D, E, C are independent of the sign of B) and, for even n,
// Jx -> |Jx| (equivalent under the sublattice rotation s_{2i,x/y} -> -s_{2i,x/y}).
inline ChainSpec canonical(ChainSpec spec) {
    require_nn(spec);
    spec.b = std::abs(spec.b);
    if (spec.jx < 0.0) {
        if (spec.n % 2 != 0)
            throw ModelUnsupported("Jx < 0 maps to Jx > 0 only for even chains");
        spec.jx = -spec.jx;
        spec.jy = -spec.jy;
    }
    if (spec.jplus() <= 0.0)
        throw ModelUnsupported("sector solution assumes J_+ = (Jx+Jy)/2 > 0");
    return spec;
}

}  // namespace detail

/// Sector spectrum {lambda_k, omega_k, u_k, v_k} and energy E = -1/2 sum lambda_k.
/// The k = 0 mode of the negative sector keeps the signed lambda_0 = J_+ - B,
/// which makes its quasiparticle vacuum odd (v_0^2 = 1) at every field.
inline QuasiparticleSolution quasiparticle_spectrum(const ChainSpec& spec_in, Parity parity) {
    const ChainSpec spec = detail::canonical(spec_in);
    const int n = spec.n;
    const double jp = spec.jplus();
    const double jm = spec.jminus();

    QuasiparticleSolution sol;
    sol.parity = parity;
    sol.ks.resize(n);
    sol.omegas.resize(n);
    sol.lambdas.resize(n);
    sol.us.resize(n);
    sol.vs.resize(n);

    const double offset = parity == Parity::positive ? 0.5 : 0.0;
    double esum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = i + offset;
        const double w = 2.0 * std::numbers::pi * k / n;
        const double eps = spec.b - jp * std::cos(w);
        const double pair = jm * std::sin(w);
        double lam = std::hypot(eps, pair);
        if (parity == Parity::negative && i == 0) lam = jp - spec.b;

        double u, v;
        if (std::abs(lam) < 1e-300) {
            u = 1.0;
            v = 0.0;
        } else {
            const double v2 = 0.5 * (1.0 - eps / lam);
            const double u2 = 1.0 - v2;
            u = std::sqrt(std::max(u2, 0.0));
            if (u > 1e-150)
                v = -pair / (2.0 * lam * u);
            else
                v = 1.0;
        }
        sol.ks[i] = k;
        sol.omegas[i] = w;
        sol.lambdas[i] = lam;
        sol.us[i] = u;
        sol.vs[i] = v;
        esum += lam;
    }
    sol.sector_energy = -0.5 * esum;
    return sol;
}

struct GroundSector {
    Parity parity = Parity::positive;
    double energy = 0.0;
    double energy_plus = 0.0;
    double energy_minus = 0.0;
    bool degenerate_crossing = false;  // |E+ - E-| below the crossing threshold
};

/// Parity of the lower sector energy. Near-degenerate sectors
/// (|E+ - E-| < 1e-11 n J_+) are flagged as a crossing, not an error.
inline GroundSector ground_sector(const ChainSpec& spec) {
    GroundSector gs;
    gs.energy_plus = quasiparticle_spectrum(spec, Parity::positive).sector_energy;
    gs.energy_minus = quasiparticle_spectrum(spec, Parity::negative).sector_energy;
    gs.parity = gs.energy_plus <= gs.energy_minus ? Parity::positive : Parity::negative;
    gs.energy = std::min(gs.energy_plus, gs.energy_minus);
    gs.degenerate_crossing = std::abs(gs.energy_plus - gs.energy_minus) <
                             1e-11 * spec.n * std::abs(detail::canonical(spec).jplus());
    return gs;
}

/// Fourier sums over the sector mode set:
/// f_l = (1/n) sum_k v_k^2 cos(omega_k l) - delta_{l0}/2,
/// g_l = -(1/n) sum_k u_k v_k sin(omega_k l).
inline Contractions contractions(const ChainSpec& spec, Parity parity) {
    const QuasiparticleSolution sol = quasiparticle_spectrum(spec, parity);
    const int n = spec.n;
    Contractions c;
    c.f.assign(n, 0.0);
    c.g.assign(n, 0.0);
    for (int l = 0; l < n; ++l) {
        double fs = 0.0, gs = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v2 = sol.vs[i] * sol.vs[i];
            fs += v2 * std::cos(sol.omegas[i] * l);
            gs -= sol.us[i] * sol.vs[i] * std::sin(sol.omegas[i] * l);
        }
        c.f[l] = fs / n;
        c.g[l] = gs / n;
    }
    c.f[0] -= 0.5;
    return c;
}

namespace detail {

// <sigma_x sigma_x> and <sigma_y sigma_y> Wick determinants:
// (A_L^±)_{ij} = 2(f_{i-j±1} + g_{i-j±1}), i,j = 1..L.
inline double wick_determinant(const Contractions& c, int L, int shift) {
    Eigen::MatrixXd m(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const long l = i - j + shift;
            m(i, j) = 2.0 * (c.f_at(l) + c.g_at(l));
        }
    return m.partialPivLu().determinant();
}

}  // namespace detail

/// Reduced pair density at separation L from precomputed contractions
/// (the cheap path when many L share one sector solution).
inline XState pair_density(const Contractions& c, int L) {
    const int n = static_cast<int>(c.f.size());
    if (L < 1 || L > n / 2)
        throw SeparationOutOfRange("pair separation L = " + std::to_string(L) +
                                   " outside 1..n/2");
    const double sz = c.f[0];
    const double szsz = c.f[0] * c.f[0] - c.f_at(L) * c.f_at(L) + c.g_at(L) * c.g_at(L);
    const double detp = detail::wick_determinant(c, L, +1);
    const double detm = detail::wick_determinant(c, L, -1);
    const double alpha = 0.25 * (detp - detm);  // <s_- s_->
    const double beta = 0.25 * (detp + detm);   // <s_- s_+>
    return xstate_from_correlators(sz, sz, szsz, alpha, beta);
}

/// Reduced density of a spin pair at separation L in the given parity sector.
inline XState pair_density(const ChainSpec& spec, int L, Parity parity) {
    const ChainSpec canon = detail::canonical(spec);
    if (L < 1 || L > canon.n / 2)
        throw SeparationOutOfRange("pair separation L = " + std::to_string(L) +
                                   " outside 1..n/2");
    return pair_density(contractions(canon, parity), L);
}

/// Reduced density of a spin pair in the ground sector.
inline XState pair_density(const ChainSpec& spec, int L) {
    return pair_density(spec, L, ground_sector(spec).parity);
}

/// Factorizing field of the uniform chain, B_s = sqrt(Jx Jy); requires
/// ferromagnetic Jx and chi = Jy/Jx in (0, 1). The same value applies to the
/// fully connected array under its J_mu/(n-1) normalization.
inline double factorizing_field(const ChainSpec& spec) {
    if (spec.jx <= 0.0) throw AnisotropyOutOfRange("factorizing field requires Jx > 0");
    const double chi = spec.anisotropy();
    if (!(chi > 0.0 && chi < 1.0))
        throw AnisotropyOutOfRange("factorizing field requires chi in (0, 1)");
    return std::sqrt(spec.jx * spec.jy);
}

/// Factorizing field from a list of couplings J^{ij} of one site (one entry
/// per unordered pair {i,j}, j != i), optionally with Jz entries:
/// B_s = (sqrt(chi)/2) sum_j (Jx^{ij} - Jz^{ij}), chi = (Jy-Jz)/(Jx-Jz).
inline double factorizing_field(const std::vector<double>& jx_row,
                                const std::vector<double>& jy_row,
                                const std::vector<double>& jz_row = {}) {
    if (jx_row.empty() || jx_row.size() != jy_row.size() ||
        (!jz_row.empty() && jz_row.size() != jx_row.size()))
        throw ConfigError("coupling lists must be non-empty and equally sized");
    double chi = 0.0;
    bool have = false;
    double sum = 0.0;
    for (std::size_t i = 0; i < jx_row.size(); ++i) {
        const double jz = jz_row.empty() ? 0.0 : jz_row[i];
        if (jx_row[i] - jz <= 0.0)
            throw AnisotropyOutOfRange("factorization requires Jx - Jz > 0");
        const double x = (jy_row[i] - jz) / (jx_row[i] - jz);
        if (!have) {
            chi = x;
            have = true;
        } else if (std::abs(x - chi) > 1e-9) {
            throw AnisotropyOutOfRange("anisotropy chi not common across couplings");
        }
        sum += jx_row[i] - jz;
    }
    if (!(chi > 0.0 && chi < 1.0))
        throw AnisotropyOutOfRange("common anisotropy chi must lie in (0, 1)");
    return 0.5 * std::sqrt(chi) * sum;
}

/// Mixture angle at the factorizing field: cos(theta) = B_s/Jx = sqrt(chi).
inline double mixture_angle(const ChainSpec& spec) {
    return std::acos(factorizing_field(spec) / spec.jx);
}

/// Mean-field mixture angle cos(theta) = B/Jx, defined for |B| <= Jx.
inline double mean_field_angle(const ChainSpec& spec, double b) {
    const double r = std::abs(b) / std::abs(spec.jx);
    if (r > 1.0 + 1e-12)
        throw FieldAboveCritical("mean-field angle undefined for |B| > Jx");
    return std::acos(std::min(r, 1.0));
}

}  // namespace spinchain
