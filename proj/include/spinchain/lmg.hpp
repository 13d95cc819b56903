#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/errors.hpp"
#include "spinchain/parity.hpp"
#include "spinchain/xstate.hpp"

// Fully and uniformly connected XY array, solved exactly in the maximal
// collective-spin multiplet S = n/2:
//   H = B S_z - [Jx Sx^2 + Jy Sy^2 - n(Jx+Jy)/4]/(n-1)
//     = B S_z - [J_+(S(S+1) - Sz^2) + (J_-/2)(S+^2 + S-^2)]/(n-1) + n J_+/(2(n-1)).
// H couples only Delta M = 0, +-2, so the (n+1)-dim matrix splits into two
// M-parity blocks carrying spin parity (-1)^(M + n/2).

namespace spinchain {

struct CollectiveState {
    int n = 0;
    Eigen::VectorXd amplitudes;  // over |S=n/2, M>, M = -n/2 .. n/2
    Parity parity = Parity::positive;
    double energy = 0.0;

    double m_value(int idx) const { return idx - 0.5 * n; }
};

/// Ground state over both M-parity blocks of the S = n/2 sector.
inline CollectiveState lmg_ground(int n, double jx, double jy, double b) {
    if (n < 3) throw ConfigError("lmg_ground requires n >= 3");
    const double S = 0.5 * n;
    const double jp = 0.5 * (jx + jy);
    const double jm = 0.5 * (jx - jy);
    const int dim = n + 1;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double M = i - S;
        H(i, i) = b * M - jp * (S * (S + 1.0) - M * M) / (n - 1) + n * jp / (2.0 * (n - 1));
        if (i + 2 < dim) {
            // <M+2| S_+^2 |M>
            const double c = std::sqrt((S - M) * (S + M + 1.0) * (S - M - 1.0) * (S + M + 2.0));
            H(i + 2, i) = H(i, i + 2) = -0.5 * jm * c / (n - 1);
        }
    }

    CollectiveState best;
    best.n = n;
    double best_e = std::numeric_limits<double>::infinity();
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<int> sel;
        for (int i = 0; i < dim; ++i)
            if (i % 2 == cls) sel.push_back(i);  // M + n/2 = i
        Eigen::MatrixXd block(sel.size(), sel.size());
        for (std::size_t r = 0; r < sel.size(); ++r)
            for (std::size_t c = 0; c < sel.size(); ++c) block(r, c) = H(sel[r], sel[c]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        if (solver.eigenvalues()(0) < best_e) {
            best_e = solver.eigenvalues()(0);
            best.energy = best_e;
            best.parity = cls == 0 ? Parity::positive : Parity::negative;
            best.amplitudes = Eigen::VectorXd::Zero(dim);
            for (std::size_t r = 0; r < sel.size(); ++r)
                best.amplitudes(sel[r]) = solver.eigenvectors()(r, 0);
        }
    }
    return best;
}

/// Pair reduced density from collective expectations (all pairs equivalent):
///   <s_z>       = <S_z>/n
///   <s_z s_z>   = (<S_z^2> - n/4)/(n(n-1))
///   alpha       = <S_-^2>/(n(n-1))
///   beta        = (<S_- S_+> - n/2 + <S_z>)/(n(n-1))
inline XState lmg_pair_density(const CollectiveState& st) {
    const int n = st.n;
    const double S = 0.5 * n;
    double sz = 0.0, sz2 = 0.0, sm2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double M = i - S;
        const double w = st.amplitudes(i) * st.amplitudes(i);
        sz += M * w;
        sz2 += M * M * w;
        if (i >= 2) {
            // <M-2| S_-^2 |M>
            const double c =
                std::sqrt((S + M) * (S - M + 1.0) * (S + M - 1.0) * (S - M + 2.0));
            sm2 += st.amplitudes(i - 2) * st.amplitudes(i) * c;
        }
    }
    const double smsp = S * (S + 1.0) - sz2 - sz;
    const double pairs = static_cast<double>(n) * (n - 1);
    return xstate_from_correlators(sz / n, sz / n, (sz2 - 0.25 * n) / pairs, sm2 / pairs,
                                   (smsp - 0.5 * n + sz) / pairs);
}

}  // namespace spinchain
