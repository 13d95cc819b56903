#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/aligned_mixture.hpp"
#include "spinchain/discord.hpp"
#include "spinchain/ed_oracle.hpp"
#include "spinchain/jw_chain.hpp"
#include "spinchain/lmg.hpp"
#include "spinchain/minimize.hpp"
#include "spinchain/xstate.hpp"

// Validation suites shared by the `validate` CLI subcommand and the
// acceptance test binary: oracle equivalence (free-fermion and collective
// solutions vs brute-force diagonalization), invariant property batches,
// and the acceptance checklist with its pinned tolerances.

namespace spinchain {

struct CheckResult {
    std::string id;
    bool pass = false;
    std::string details;
};

inline std::string format_check(const CheckResult& r) {
    return (r.pass ? std::string("PASS  ") : std::string("FAIL  ")) + r.id + "  " + r.details;
}

/// Random valid XState: Dirichlet populations, coherences uniform within
/// their positivity bounds.
template <typename Rng>
XState random_xstate(Rng& rng) {
    std::exponential_distribution<double> exp1(1.0);
    double p[4];
    double tot = 0.0;
    for (double& v : p) {
        v = exp1(rng);
        tot += v;
    }
    for (double& v : p) v /= tot;
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double alpha = uni(rng) * std::sqrt(p[0] * p[1]);
    const double beta = uni(rng) * std::sqrt(p[2] * p[3]);
    return xstate_from_elements(p[0], p[1], p[2], p[3], alpha, beta);
}

namespace detail {

inline double max_element_diff(const XState& l, const XState& r) {
    return std::max({std::abs(l.a - r.a), std::abs(l.b - r.b), std::abs(l.c - r.c),
                     std::abs(l.cp - r.cp), std::abs(l.alpha - r.alpha),
                     std::abs(l.beta - r.beta)});
}

// Acceptance field grid: 21 points with a golden-ratio offset so the grid
// never lands on a parity crossing.
inline std::vector<double> acceptance_fields(double jx) {
    std::vector<double> b(21);
    for (int m = 0; m < 21; ++m) b[m] = (m + 0.6180339887498949) * (1.5 * jx / 21.0);
    return b;
}

inline std::string fmtg(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Unmeasured-side marginal before/after measurement, via dense matrices and
// explicit projectors (independent of the closed-form engine path).
inline double marginal_invariance_error(const XState& x, double gamma, double phi) {
    using C4 = Eigen::Matrix4cd;
    const C4 rho = to_matrix(x).cast<std::complex<double>>();
    const std::complex<double> ephi(std::cos(phi), std::sin(phi));
    Eigen::Vector2cd k0, k1;
    k0 << std::cos(gamma / 2.0), ephi * std::sin(gamma / 2.0);
    k1 << -std::conj(ephi) * std::sin(gamma / 2.0), std::cos(gamma / 2.0);
    C4 rp = C4::Zero();
    for (const auto& k : {k0, k1}) {
        Eigen::Matrix2cd proj = k * k.adjoint();
        C4 P = C4::Zero();
        P.block<2, 2>(0, 0) = proj;
        P.block<2, 2>(2, 2) = proj;
        rp += P * rho * P;
    }
    Eigen::Matrix2cd ra, rpa;
    ra << rho(0, 0) + rho(1, 1), rho(0, 2) + rho(1, 3), rho(2, 0) + rho(3, 1),
        rho(2, 2) + rho(3, 3);
    rpa << rp(0, 0) + rp(1, 1), rp(0, 2) + rp(1, 3), rp(2, 0) + rp(3, 1), rp(2, 2) + rp(3, 3);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> sa(ra), sp(rpa);
    return (sa.eigenvalues() - sp.eigenvalues()).cwiseAbs().maxCoeff();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Oracle suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> oracle_suite() {
    std::vector<CheckResult> out;
    const auto fields = std::vector<double>{0.2330, 0.6180, 0.9560};
    for (int n : {4, 6, 8, 10}) {
        double worst_jw = 0.0, worst_lmg = 0.0, worst_e = 0.0;
        bool parities_match = true;
        for (double b : fields) {
            ChainSpec spec{n, 1.0, 0.5, b};
            const GroundSector gs = ground_sector(spec);
            const auto ed = build_and_ground(CouplingTable::nearest_neighbor(n, 1.0, 0.5, b));
            parities_match = parities_match && gs.parity == ed.global_parity;
            worst_e = std::max({worst_e, std::abs(gs.energy_plus - ed.energy_plus),
                                std::abs(gs.energy_minus - ed.energy_minus)});
            for (int L = 1; L <= n / 2; ++L)
                worst_jw = std::max(worst_jw,
                                    detail::max_element_diff(
                                        pair_density(spec, L, gs.parity),
                                        reduced_pair(ed.state(gs.parity), 0, L, n)));

            const CollectiveState st = lmg_ground(n, 1.0, 0.5, b);
            const auto edf = build_and_ground(CouplingTable::fully_connected(n, 1.0, 0.5, b));
            parities_match = parities_match && st.parity == edf.global_parity;
            worst_lmg = std::max(worst_lmg,
                                 detail::max_element_diff(lmg_pair_density(st),
                                                          reduced_pair(edf.state(st.parity), 0,
                                                                       n / 2, n)));
            worst_e = std::max(worst_e, std::abs(st.energy - edf.energy(st.parity)));
        }
        out.push_back({"oracle.jw_vs_ed.n" + std::to_string(n),
                       worst_jw < 1e-10 && worst_e < 1e-10 * n && parities_match,
                       "max elem diff " + detail::fmtg(worst_jw) + ", max dE " +
                           detail::fmtg(worst_e) +
                           (parities_match ? ", parity labels agree" : ", PARITY MISMATCH")});
        out.push_back({"oracle.lmg_vs_ed.n" + std::to_string(n), worst_lmg < 1e-10,
                       "max elem diff " + detail::fmtg(worst_lmg)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Invariants suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> invariants_suite() {
    std::vector<CheckResult> out;

    {
        std::mt19937_64 rng(20260809);
        double min_d = 0.0, max_excess = -1.0;
        for (int i = 0; i < 2000; ++i) {
            const XState x = random_xstate(rng);
            const DiscordResult d = discord(x);
            min_d = std::min(min_d, d.discord);
            max_excess = std::max(max_excess, d.discord - d.mutual_information);
        }
        out.push_back({"invariants.discord_bounds",
                       min_d >= 0.0 && max_excess <= 1e-9,
                       "min D " + detail::fmtg(min_d) + ", max D-I " + detail::fmtg(max_excess)});
    }

    {
        double worst = 0.0;
        for (int n : {8, 10})
            for (double b : detail::acceptance_fields(1.0)) {
                ChainSpec spec{n, 1.0, 0.5, b};
                const Parity p = ground_sector(spec).parity;
                double sum = 0.0;
                for (int L = 1; L <= n / 2; ++L) {
                    const double c = concurrence(pair_density(spec, L, p)).value;
                    sum += (L < n / 2 ? 2.0 : 1.0) * c * c;
                }
                worst = std::max(worst, sum);
            }
        out.push_back({"invariants.monogamy", worst <= 1.0 + 1e-12,
                       "max sum_j C_ij^2 = " + detail::fmtg(worst)});
    }

    {
        std::mt19937_64 rng(424242);
        std::uniform_real_distribution<double> ug(0.0, std::numbers::pi / 2.0);
        std::uniform_real_distribution<double> up(0.0, std::numbers::pi);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i)
            worst = std::max(worst, detail::marginal_invariance_error(random_xstate(rng),
                                                                      ug(rng), up(rng)));
        out.push_back({"invariants.marginal_invariance", worst < 1e-12,
                       "max marginal eigenvalue shift " + detail::fmtg(worst)});
    }

    return out;
}

// ---------------------------------------------------------------------------
// Acceptance suite: the release checklist, tolerances pinned in code.
// ---------------------------------------------------------------------------

inline CheckResult acceptance_1_mixture_maximum() {
    const double quarter_pi = std::numbers::pi / 4.0;
    auto neg = [](double t) { return -discord_closed_form(t); };
    double best_t = 0.0, best_v = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = std::numbers::pi / 2.0 * i / 2000;
        const double v = discord_closed_form(t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    const auto [tm, vneg] = golden_section_minimize(neg, best_t - 1e-3, best_t + 1e-3, 1e-12);
    const double dmax = -vneg;
    const bool pass = std::abs(tm - 1.15 * quarter_pi) <= 0.02 && std::abs(dmax - 0.15) <= 0.005;
    return {"acceptance.1.mixture_discord_maximum", pass,
            "argmax " + detail::fmtg(tm) + " rad (1.15*pi/4 = " +
                detail::fmtg(1.15 * quarter_pi) + " +- 0.02), max " + detail::fmtg(dmax) +
                " (0.15 +- 0.005)"};
}

inline CheckResult acceptance_2_closed_form_quarter_pi() {
    const double d18 = discord_closed_form(std::numbers::pi / 4.0);
    const double dnum = discord(mixture_state(std::numbers::pi / 4.0)).discord;
    const bool pass = std::abs(d18 - 0.145) <= 0.003 && std::abs(d18 - dnum) <= 1e-9;
    return {"acceptance.2.quarter_pi_value", pass,
            "Eq.18 " + detail::fmtg(d18) + " (0.145 +- 0.003), |closed - numeric| " +
                detail::fmtg(std::abs(d18 - dnum)) + " (<= 1e-9)"};
}

inline CheckResult acceptance_3_side_limits_n10() {
    const ChainSpec base{10, 1.0, 0.5, 0.0};
    const double bs = factorizing_field(base);
    const double theta = mixture_angle(base);
    double worst_anchor = 0.0, worst_eq23 = 0.0;
    for (int side : {-1, +1}) {
        ChainSpec spec = base;
        spec.b = bs + side * 1e-6;
        const double d = discord(pair_density(spec, 1)).discord;
        const double ref = discord_closed_form_coherent(theta, epsilon_overlap(theta, 10, side));
        const double anchor = side < 0 ? 0.153 : 0.137;
        worst_anchor = std::max(worst_anchor, std::abs(d - anchor));
        worst_eq23 = std::max(worst_eq23, std::abs(d - ref));
    }
    const bool pass = worst_anchor <= 0.002 && worst_eq23 <= 1e-6;
    return {"acceptance.3.side_limits_n10", pass,
            "max |D - anchor| " + detail::fmtg(worst_anchor) + " (<= 0.002), max |D - Eq.23| " +
                detail::fmtg(worst_eq23) + " (<= 1e-6)"};
}

inline CheckResult acceptance_4_oracle_equivalence() {
    double worst = 0.0;
    for (int n : {4, 6, 8, 10})
        for (double chi : {0.25, 0.5, 0.75})
            for (double b : detail::acceptance_fields(1.0)) {
                ChainSpec spec{n, 1.0, chi, b};
                const GroundSector gs = ground_sector(spec);
                const auto ed = build_and_ground(CouplingTable::nearest_neighbor(n, 1.0, chi, b));
                for (int L = 1; L <= n / 2; ++L)
                    worst = std::max(worst, detail::max_element_diff(
                                                pair_density(spec, L, gs.parity),
                                                reduced_pair(ed.state(gs.parity), 0, L, n)));

                const CollectiveState st = lmg_ground(n, 1.0, chi, b);
                const auto edf = build_and_ground(CouplingTable::fully_connected(n, 1.0, chi, b));
                worst = std::max(worst, detail::max_element_diff(
                                            lmg_pair_density(st),
                                            reduced_pair(edf.state(st.parity), 0, n / 2, n)));
            }
    return {"acceptance.4.oracle_equivalence", worst < 1e-10,
            "max elementwise diff " + detail::fmtg(worst) + " (< 1e-10), 12 configs x 21 fields"};
}

inline CheckResult acceptance_5_factorization_residual() {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> uk(0.2, 1.0);
    std::uniform_real_distribution<double> uchi(0.1, 0.9);
    double worst_at = 0.0, best_off = 1e300;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 8;
        std::vector<double> kx(n / 2);
        for (double& v : kx) v = uk(rng);
        const double chi = uchi(rng);
        auto table = CouplingTable::circulant(n, kx, chi, 0.0);
        worst_at = std::max(worst_at, verify_separable_ground(table));
        table.b = 1.1 * factorizing_field(table);
        best_off = std::min(best_off,
                            separability_residual(table, std::acos(std::sqrt(chi))));
    }
    const bool pass = worst_at < 1e-10 && best_off > 1e-4;
    return {"acceptance.5.factorization_residual", pass,
            "max residual at B_s " + detail::fmtg(worst_at) + " (< 1e-10), min at 1.1 B_s " +
                detail::fmtg(best_off) + " (> 1e-4)"};
}

inline CheckResult acceptance_6_L_independence_n100() {
    ChainSpec spec{100, 1.0, 0.5, 0.0};
    spec.b = factorizing_field(spec) + 1e-6;
    const Parity p = ground_sector(spec).parity;
    const Contractions con = contractions(spec, p);
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (int L = 1; L <= 50; ++L) {
        const double d = discord(pair_density(con, L)).discord;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        sum += d;
    }
    const double central = sum / 50.0;
    const bool pass = (hi - lo) < 1e-6 && std::abs(central - 0.145) <= 0.003;
    return {"acceptance.6.L_independence_at_Bs", pass,
            "spread " + detail::fmtg(hi - lo) + " (< 1e-6), central " + detail::fmtg(central) +
                " (0.145 +- 0.003)"};
}

inline CheckResult acceptance_7_parity_transitions() {
    const ChainSpec base{10, 1.0, 0.5, 0.0};
    const double bs = factorizing_field(base);
    int changes = 0;
    int prev = 0;
    const int npts = 4001;
    for (int i = 0; i < npts; ++i) {
        ChainSpec spec = base;
        spec.b = 1e-6 + (bs + 1e-6 - 1e-6) * i / (npts - 1);
        const GroundSector gs = ground_sector(spec);
        const int s = gs.energy_plus < gs.energy_minus ? 1 : -1;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return {"acceptance.7.parity_transitions", changes == 5,
            std::to_string(changes) + " ground-parity changes in (0, B_s] (expected 5 = n/2)"};
}

inline CheckResult acceptance_8_strong_field() {
    const ChainSpec spec{100, 1.0, 0.5, 50.0};
    const XState x = pair_density(spec, 1);
    const double d = discord(x).discord;
    const double e = eof(x);
    const double eta = (spec.jx - spec.jy) / (8.0 * spec.b);
    const double ref = eta * eta * (-std::log2(eta * eta) + std::log2(std::numbers::e) - 2.0);
    const bool pass = std::abs(d / ref - 1.0) <= 0.05 && e > d;
    return {"acceptance.8.strong_field_asymptotics", pass,
            "D/ref = " + detail::fmtg(d / ref) + " (within 5%), E - D = " + detail::fmtg(e - d) +
                " (> 0)"};
}

inline CheckResult acceptance_9_sector_energy_identity() {
    double worst = 0.0;
    for (int n : {8, 10, 100}) {
        ChainSpec spec{n, 1.0, 0.5, 0.0};
        spec.b = factorizing_field(spec);
        const double target = -0.5 * n * spec.jplus();
        const double ep = quasiparticle_spectrum(spec, Parity::positive).sector_energy;
        const double em = quasiparticle_spectrum(spec, Parity::negative).sector_energy;
        worst = std::max({worst, std::abs(ep - target) / n, std::abs(em - target) / n});
    }
    return {"acceptance.9.sector_energy_identity", worst < 1e-12,
            "max |E_pm + n J_+/2|/n = " + detail::fmtg(worst) + " (< 1e-12)"};
}

inline CheckResult acceptance_10_property_suites() {
    std::mt19937_64 rng(1009);
    double min_d = 0.0, max_excess = -1.0;
    for (int i = 0; i < 10000; ++i) {
        const XState x = random_xstate(rng);
        const DiscordResult d = discord(x);
        min_d = std::min(min_d, d.discord);
        max_excess = std::max(max_excess, d.discord - d.mutual_information);
    }

    double worst_monogamy = 0.0;
    for (int n : {4, 6, 8, 10})
        for (double chi : {0.25, 0.5, 0.75})
            for (double b : detail::acceptance_fields(1.0)) {
                ChainSpec spec{n, 1.0, chi, b};
                const Parity p = ground_sector(spec).parity;
                const Contractions con = contractions(spec, p);
                double sum = 0.0;
                for (int L = 1; L <= n / 2; ++L) {
                    const double c = concurrence(pair_density(con, L)).value;
                    sum += (L < n / 2 ? 2.0 : 1.0) * c * c;
                }
                worst_monogamy = std::max(worst_monogamy, sum);
            }

    std::uniform_real_distribution<double> ug(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> up(0.0, std::numbers::pi);
    double worst_marginal = 0.0;
    for (int i = 0; i < 1000; ++i)
        worst_marginal = std::max(
            worst_marginal, detail::marginal_invariance_error(random_xstate(rng), ug(rng), up(rng)));

    const bool pass = min_d >= 0.0 && max_excess <= 1e-9 && worst_monogamy <= 1.0 + 1e-12 &&
                      worst_marginal < 1e-12;
    return {"acceptance.10.property_suites", pass,
            "min D " + detail::fmtg(min_d) + ", max D-I " + detail::fmtg(max_excess) +
                ", max monogamy sum " + detail::fmtg(worst_monogamy) + ", max marginal shift " +
                detail::fmtg(worst_marginal)};
}

inline std::vector<CheckResult> acceptance_suite() {
    return {acceptance_1_mixture_maximum(), acceptance_2_closed_form_quarter_pi(),
            acceptance_3_side_limits_n10(), acceptance_4_oracle_equivalence(),
            acceptance_5_factorization_residual(), acceptance_6_L_independence_n100(),
            acceptance_7_parity_transitions(), acceptance_8_strong_field(),
            acceptance_9_sector_energy_identity(), acceptance_10_property_suites()};
}

}  // namespace spinchain
