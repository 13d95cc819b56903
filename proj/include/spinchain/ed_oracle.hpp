#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/errors.hpp"
#include "spinchain/parity.hpp"
#include "spinchain/xstate.hpp"

// Brute-force exact diagonalization of
//   H = B sum_i s_iz - sum_{i<j} sum_mu J_mu^{ij} s_imu s_jmu
// on the full 2^n product space: the ground truth the free-fermion and
// collective-spin solvers are checked against.
//
// Basis conventions (fixed; the jw_chain comparisons depend on them):
// site 1 is the most significant bit, and bit value 0 is the s_z = -1/2
// state. Spin parity of a basis state is (-1)^(number of up spins).

namespace spinchain {

inline constexpr int kEdRoutineSizeLimit = 12;
inline constexpr int kEdHardSizeLimit = 14;

struct CouplingTable {
    int n = 0;
    Eigen::MatrixXd jx, jy, jz;  // symmetric, zero diagonal
    double b = 0.0;

    static CouplingTable zero(int n, double b) {
        CouplingTable t;
        t.n = n;
        t.jx = Eigen::MatrixXd::Zero(n, n);
        t.jy = Eigen::MatrixXd::Zero(n, n);
        t.jz = Eigen::MatrixXd::Zero(n, n);
        t.b = b;
        return t;
    }

    static CouplingTable nearest_neighbor(int n, double jx, double jy, double b) {
        CouplingTable t = zero(n, b);
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            t.jx(i, j) = t.jx(j, i) = jx;
            t.jy(i, j) = t.jy(j, i) = jy;
        }
        return t;
    }

    // Fully and uniformly connected array with the collective-spin
    // normalization: effective pair coupling 2 J_mu/(n-1), so that
    // H = B S_z - [Jx Sx^2 + Jy Sy^2 - n(Jx+Jy)/4]/(n-1).
    static CouplingTable fully_connected(int n, double jx, double jy, double b) {
        CouplingTable t = zero(n, b);
        const double wx = 2.0 * jx / (n - 1);
        const double wy = 2.0 * jy / (n - 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    t.jx(i, j) = wx;
                    t.jy(i, j) = wy;
                }
        return t;
    }

    // Cyclic array with distance-dependent couplings K(d), d = 1..n/2.
    static CouplingTable circulant(int n, const std::vector<double>& kx, double chi, double b,
                                   double jz_over_jx = 0.0) {
        if (static_cast<int>(kx.size()) != n / 2)
            throw ConfigError("circulant: need n/2 distance couplings");
        CouplingTable t = zero(n, b);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    const int d = std::min(std::abs(i - j), n - std::abs(i - j));
                    t.jx(i, j) = kx[d - 1];
                    t.jy(i, j) = chi * kx[d - 1];
                    t.jz(i, j) = jz_over_jx * kx[d - 1];
                }
        return t;
    }
};

namespace detail {

inline int bit_of(std::uint32_t m, int site, int n) {
    return (m >> (n - 1 - site)) & 1u;  // site in 0..n-1, site 0 = MSB
}

inline void check_size(int n, bool allow_large) {
    const int limit = allow_large ? kEdHardSizeLimit : kEdRoutineSizeLimit;
    if (n < 2 || n > limit)
        throw SizeLimitExceeded("ED size n = " + std::to_string(n) + " outside 2.." +
                                std::to_string(limit));
}

}  // namespace detail

/// Dense 2^n x 2^n Hamiltonian matrix (real symmetric in the product basis).
inline Eigen::MatrixXd hamiltonian_dense(const CouplingTable& t, bool allow_large = false) {
    detail::check_size(t.n, allow_large);
    const int n = t.n;
    const std::uint32_t dim = 1u << n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint32_t m = 0; m < dim; ++m) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) {
            const double szi = detail::bit_of(m, i, n) ? 0.5 : -0.5;
            diag += t.b * szi;
            for (int j = i + 1; j < n; ++j) {
                const double szj = detail::bit_of(m, j, n) ? 0.5 : -0.5;
                diag -= t.jz(i, j) * szi * szj;
                const std::uint32_t mp = m ^ (1u << (n - 1 - i)) ^ (1u << (n - 1 - j));
                if (detail::bit_of(m, i, n) == detail::bit_of(m, j, n))
                    H(mp, m) -= 0.25 * (t.jx(i, j) - t.jy(i, j));
                else
                    H(mp, m) -= 0.25 * (t.jx(i, j) + t.jy(i, j));
            }
        }
        H(m, m) = diag;
    }
    return H;
}

struct ParityGround {
    double energy_plus = 0.0;
    double energy_minus = 0.0;
    Eigen::VectorXd state_plus;   // dimension 2^n, supported on even-up-count states
    Eigen::VectorXd state_minus;  // odd-up-count support
    Parity global_parity = Parity::positive;

    double energy(Parity p) const { return p == Parity::positive ? energy_plus : energy_minus; }
    const Eigen::VectorXd& state(Parity p) const {
        return p == Parity::positive ? state_plus : state_minus;
    }
    double ground_energy() const { return std::min(energy_plus, energy_minus); }
};

/// Lowest eigenpair of each spin-parity block. Blocks are built from basis
/// states grouped by up-spin-count parity; the full block spectrum is
/// computed (deterministic, no iterative solvers).
inline ParityGround build_and_ground(const CouplingTable& t, bool allow_large = false) {
    detail::check_size(t.n, allow_large);
    const Eigen::MatrixXd H = hamiltonian_dense(t, allow_large);
    const std::uint32_t dim = 1u << t.n;

    ParityGround out;
    for (int odd = 0; odd < 2; ++odd) {
        std::vector<std::uint32_t> idx;
        idx.reserve(dim / 2);
        for (std::uint32_t m = 0; m < dim; ++m)
            if ((std::popcount(m) & 1) == odd) idx.push_back(m);

        Eigen::MatrixXd block(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) block(r, c) = H(idx[r], idx[c]);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
        for (std::size_t r = 0; r < idx.size(); ++r) full(idx[r]) = solver.eigenvectors()(r, 0);
        if (odd == 0) {
            out.energy_plus = solver.eigenvalues()(0);
            out.state_plus = std::move(full);
        } else {
            out.energy_minus = solver.eigenvalues()(0);
            out.state_minus = std::move(full);
        }
    }
    out.global_parity = out.energy_plus <= out.energy_minus ? Parity::positive : Parity::negative;
    return out;
}

/// Raw 4x4 reduced density matrix of sites (i, j) in the computational bit
/// basis (index 2*k_i + k_j, bit 0 = down).
inline Eigen::Matrix4d reduced_pair_matrix(const Eigen::VectorXd& state, int i, int j, int n) {
    const std::uint32_t dim = 1u << n;
    if (state.size() != static_cast<long>(dim)) throw ConfigError("state size != 2^n");
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("bad pair sites");

    // Group amplitudes by the configuration of the other n-2 spins.
    const std::uint32_t rest_dim = 1u << (n - 2);
    std::vector<std::array<double, 4>> amps(rest_dim, {0.0, 0.0, 0.0, 0.0});
    for (std::uint32_t m = 0; m < dim; ++m) {
        const int ki = detail::bit_of(m, i, n);
        const int kj = detail::bit_of(m, j, n);
        std::uint32_t rest = 0;
        int cnt = 0;
        for (int s = 0; s < n; ++s)
            if (s != i && s != j) rest |= static_cast<std::uint32_t>(detail::bit_of(m, s, n)) << cnt++;
        amps[rest][2 * ki + kj] = state(m);
    }
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (const auto& v : amps) {
        const Eigen::Map<const Eigen::Vector4d> v4(v.data());
        rho += v4 * v4.transpose();
    }
    return rho;
}

/// Partial trace to an XState. Off-X-block elements must vanish (definite
/// parity); mass above 1e-8 signals a parity bug upstream. Bit 1 is up, so
/// the X-basis (|0> = up) elements sit at reversed indices.
inline XState reduced_pair(const Eigen::VectorXd& state, int i, int j, int n) {
    const Eigen::Matrix4d rho = reduced_pair_matrix(state, i, j, n);
    const double off = std::abs(rho(0, 1)) + std::abs(rho(0, 2)) + std::abs(rho(1, 3)) +
                       std::abs(rho(2, 3));
    if (off > 1e-8)
        throw XFormViolation("reduced pair off-X-block mass " + std::to_string(off));
    return xstate_from_elements(rho(3, 3), rho(0, 0), rho(2, 2), rho(1, 1), rho(3, 0), rho(2, 1));
}

/// |Theta> = tensor_i exp[i theta s_iy]|0_i>: every spin tilted by theta
/// from the -z axis, <theta'|s_z|theta'> = -cos(theta)/2.
inline Eigen::VectorXd product_state(double theta, int n) {
    detail::check_size(n, true);
    const double cd = std::cos(theta / 2.0);  // amplitude on down (bit 0)
    const double cu = std::sin(theta / 2.0);  // amplitude on up (bit 1)
    const std::uint32_t dim = 1u << n;
    Eigen::VectorXd v(dim);
    for (std::uint32_t m = 0; m < dim; ++m) {
        const int ups = std::popcount(m);
        v(m) = std::pow(cu, ups) * std::pow(cd, n - ups);
    }
    return v;
}

/// |Theta+-> = (|Theta> +- |-Theta>)/sqrt(2(1 +- cos^n theta)).
inline Eigen::VectorXd definite_parity_projection(double theta, int n, int parity_sign) {
    if (parity_sign != 1 && parity_sign != -1) throw ConfigError("parity sign must be +-1");
    const double overlap = std::pow(std::cos(theta), n);
    const double norm2 = 2.0 * (1.0 + parity_sign * overlap);
    if (norm2 < 2e-14)
        throw DegenerateNormalization("definite-parity projection: 1 +- cos^n theta vanishes");
    Eigen::VectorXd v = product_state(theta, n) + parity_sign * product_state(-theta, n);
    return v / std::sqrt(norm2);
}

namespace detail {

struct TableAnisotropy {
    double chi = 0.0;      // (Jy - Jz)/(Jx - Jz), common across pairs
    double row_sum = 0.0;  // sum_{j != i} (Jx^{ij} - Jz^{ij}), site independent
};

inline TableAnisotropy common_anisotropy(const CouplingTable& t) {
    TableAnisotropy out;
    bool have = false;
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) {
            if (i == j || t.jx(i, j) == 0.0) continue;
            if (t.jx(i, j) < 0.0)
                throw AnisotropyOutOfRange("factorization requires ferromagnetic Jx > 0");
            const double chi = (t.jy(i, j) - t.jz(i, j)) / (t.jx(i, j) - t.jz(i, j));
            if (!have) {
                out.chi = chi;
                have = true;
            } else if (std::abs(chi - out.chi) > 1e-9) {
                throw AnisotropyOutOfRange("anisotropy chi not common across couplings");
            }
        }
    if (!have || !(out.chi > 0.0 && out.chi < 1.0))
        throw AnisotropyOutOfRange("common anisotropy chi must lie in (0, 1)");
    out.row_sum = (t.jx.row(0) - t.jz.row(0)).sum();
    for (int i = 1; i < t.n; ++i) {
        const double rs = (t.jx.row(i) - t.jz.row(i)).sum();
        if (std::abs(rs - out.row_sum) > 1e-9 * std::max(1.0, std::abs(out.row_sum)))
            throw AnisotropyOutOfRange("row sums not uniform: no single factorizing field");
    }
    return out;
}

}  // namespace detail

/// Factorizing field of a coupling table with common anisotropy:
/// B_s = (sqrt(chi)/2) sum_{j != i}(Jx^{ij} - Jz^{ij}), with
/// chi = (Jy - Jz)/(Jx - Jz). Requires uniform row sums.
inline double factorizing_field(const CouplingTable& t) {
    const auto an = detail::common_anisotropy(t);
    return 0.5 * std::sqrt(an.chi) * an.row_sum;
}

/// Residual of |Theta(theta)> as an eigenstate of H(table) at the table's field.
inline double separability_residual(const CouplingTable& t, double theta) {
    const Eigen::MatrixXd H = hamiltonian_dense(t);
    const Eigen::VectorXd v = product_state(theta, t.n);
    const double e = v.dot(H * v);
    return (H * v - e * v).norm();
}

/// Residual ||(H - E)|Theta>|| with B set to the factorizing field of the
/// table and cos(theta) = sqrt(chi); E is the Rayleigh quotient. Values at
/// double roundoff confirm the separable ground state.
inline double verify_separable_ground(const CouplingTable& table) {
    const auto an = detail::common_anisotropy(table);
    CouplingTable t = table;
    t.b = 0.5 * std::sqrt(an.chi) * an.row_sum;
    const double theta = std::acos(std::sqrt(an.chi));
    return separability_residual(t, theta);
}

}  // namespace spinchain
