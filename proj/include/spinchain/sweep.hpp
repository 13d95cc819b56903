#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spinchain/aligned_mixture.hpp"
#include "spinchain/discord.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/jw_chain.hpp"
#include "spinchain/lmg.hpp"
#include "spinchain/xstate.hpp"

// Field sweeps over the supported models, with deterministic CSV/JSON
// emission. CSV format v1: a comment header naming the generating
// parameters, one header row, then rows
//   b,L,parity,D,E,C,kind,I,a,b_el,c,cp,alpha,beta
// printed with 17 significant digits so parsing recovers doubles exactly.

namespace spinchain {

enum class SweepModel { nn, lmg, mixture, mixture_coherent };
enum class SweepFormat { csv, json };

inline const char* to_string(SweepModel m) {
    switch (m) {
        case SweepModel::nn: return "nn";
        case SweepModel::lmg: return "lmg";
        case SweepModel::mixture: return "mixture";
        default: return "mixture_coherent";
    }
}

struct SweepConfig {
    SweepModel model = SweepModel::nn;
    int n = 0;
    double jx = 1.0;
    double chi = 0.5;  // jy = chi * jx
    double b_min = 0.0;
    double b_max = 1.25;
    int b_steps = 2;                 // number of grid points, >= 2
    std::vector<int> separations = {1};
    std::vector<std::string> outputs;  // empty = full v1 column set
    SweepFormat format = SweepFormat::csv;
    double side_limit_delta = 0.0;   // 0 = derive 1e-6 * jx when side limits requested
    bool side_limits = false;        // append records at B_s -+ delta
    int threads = 0;                 // 0 = hardware concurrency

    double jy() const { return chi * jx; }
};

struct SweepRecord {
    double b = 0.0;
    int L = 0;
    int parity = 0;  // +1 / -1, 0 where no parity applies
    double discord = 0.0;
    double eof = 0.0;
    double concurrence = 0.0;
    ConcurrenceKind kind = ConcurrenceKind::none;
    double mutual_information = 0.0;
    XState state;
    double energy = 0.0;
    bool parity_transition = false;  // parity differs from the previous field point
};

namespace detail {

inline const std::vector<std::string>& v1_columns() {
    static const std::vector<std::string> cols = {"b",  "L",  "parity", "D",  "E",
                                                  "C",  "kind", "I",    "a",  "b_el",
                                                  "c",  "cp", "alpha",  "beta", "energy"};
    return cols;
}

inline void validate(const SweepConfig& cfg) {
    if (cfg.b_steps < 2) throw ConfigError("b_steps must be >= 2");
    if (cfg.jx == 0.0) throw ConfigError("jx must be nonzero");
    if (cfg.model == SweepModel::nn) {
        if (cfg.n < 3) throw ConfigError("nn model requires n >= 3");
        for (int L : cfg.separations)
            if (L < 1 || L > cfg.n / 2)
                throw ConfigError("separation " + std::to_string(L) + " outside 1..n/2");
    }
    if (cfg.model == SweepModel::lmg && cfg.n < 3) throw ConfigError("lmg model requires n >= 3");
    if (cfg.model == SweepModel::mixture_coherent && cfg.n < 3)
        throw ConfigError("mixture_coherent requires n >= 3 for the overlap epsilon");
    if (!(cfg.chi > 0.0)) throw ConfigError("chi must be positive");
    for (const auto& o : cfg.outputs) {
        const auto& cols = v1_columns();
        if (std::find(cols.begin(), cols.end(), o) == cols.end())
            throw ConfigError("unknown output column '" + o + "'");
    }
}

inline SweepRecord record_from_state(double b, int L, int parity, const XState& x,
                                     double energy) {
    SweepRecord r;
    r.b = b;
    r.L = L;
    r.parity = parity;
    const DiscordResult d = spinchain::discord(x);
    r.discord = d.discord;
    r.mutual_information = d.mutual_information;
    const Concurrence c = spinchain::concurrence(x);
    r.concurrence = c.value;
    r.kind = c.kind;
    r.eof = spinchain::eof(c.value);
    r.state = x;
    r.energy = energy;
    return r;
}

// Mixture models map the field to the mean-field angle cos(theta) = |B|/Jx;
// fields beyond Jx have theta = 0 (polarized, zero discord).
inline SweepRecord mixture_record(const SweepConfig& cfg, double b, double bs) {
    const double r = std::min(std::abs(b) / std::abs(cfg.jx), 1.0);
    const double theta = std::acos(r);
    if (cfg.model == SweepModel::mixture)
        return record_from_state(b, 0, 0, mixture_state(theta), 0.0);
    const int side = std::abs(b) < bs ? -1 : +1;
    const double eps = epsilon_overlap(theta, cfg.n, side);
    return record_from_state(b, 0, side, mixture_state_coherent(theta, eps), 0.0);
}

template <typename Fn>
inline void parallel_for(int count, int threads, Fn&& fn) {
    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, std::max(count, 1));
    if (nthreads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += nthreads) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// One record per (B, L), sorted by (B, L). Field points are evaluated in
/// parallel; each thread writes only its own slots, so output is
/// deterministic for a given config.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    detail::validate(cfg);

    std::vector<double> fields(cfg.b_steps);
    for (int i = 0; i < cfg.b_steps; ++i)
        fields[i] = cfg.b_min + (cfg.b_max - cfg.b_min) * i / (cfg.b_steps - 1);
    if (cfg.side_limits) {
        const double bs = factorizing_field(
            ChainSpec{cfg.n > 0 ? cfg.n : 3, cfg.jx, cfg.jy(), 0.0});
        const double delta =
            cfg.side_limit_delta > 0.0 ? cfg.side_limit_delta : 1e-6 * std::abs(cfg.jx);
        for (double b : {bs - delta, bs + delta})
            if (b >= std::min(cfg.b_min, cfg.b_max) && b <= std::max(cfg.b_min, cfg.b_max))
                fields.push_back(b);
        std::sort(fields.begin(), fields.end());
        fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
    }

    const int nb = static_cast<int>(fields.size());
    const int per_field = cfg.model == SweepModel::nn ? static_cast<int>(cfg.separations.size()) : 1;
    std::vector<SweepRecord> records(static_cast<std::size_t>(nb) * per_field);

    const double bs_mix = cfg.model == SweepModel::mixture_coherent
                              ? factorizing_field(ChainSpec{std::max(cfg.n, 3), cfg.jx, cfg.jy(), 0.0})
                              : 0.0;

    detail::parallel_for(nb, cfg.threads, [&](int bi) {
        const double b = fields[bi];
        switch (cfg.model) {
            case SweepModel::nn: {
                ChainSpec spec{cfg.n, cfg.jx, cfg.jy(), b};
                const GroundSector gs = ground_sector(spec);
                const Contractions con = contractions(spec, gs.parity);
                for (int li = 0; li < per_field; ++li) {
                    const int L = cfg.separations[li];
                    const XState x = pair_density(con, L);
                    records[static_cast<std::size_t>(bi) * per_field + li] =
                        detail::record_from_state(b, L, sign(gs.parity), x, gs.energy);
                }
                break;
            }
            case SweepModel::lmg: {
                const CollectiveState st = lmg_ground(cfg.n, cfg.jx, cfg.jy(), b);
                records[bi] = detail::record_from_state(b, 1, sign(st.parity),
                                                        lmg_pair_density(st), st.energy);
                break;
            }
            default:
                records[bi] = detail::mixture_record(cfg, b, bs_mix);
        }
    });

    std::sort(records.begin(), records.end(), [](const SweepRecord& l, const SweepRecord& r) {
        return l.b != r.b ? l.b < r.b : l.L < r.L;
    });
    for (std::size_t i = per_field; i < records.size(); ++i)
        records[i].parity_transition = records[i].parity != records[i - per_field].parity;
    return records;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string record_field(const SweepRecord& r, const std::string& col) {
    if (col == "b") return fmt17(r.b);
    if (col == "L") return std::to_string(r.L);
    if (col == "parity") return std::to_string(r.parity);
    if (col == "D") return fmt17(r.discord);
    if (col == "E") return fmt17(r.eof);
    if (col == "C") return fmt17(r.concurrence);
    if (col == "kind") return to_string(r.kind);
    if (col == "I") return fmt17(r.mutual_information);
    if (col == "a") return fmt17(r.state.a);
    if (col == "b_el") return fmt17(r.state.b);
    if (col == "c") return fmt17(r.state.c);
    if (col == "cp") return fmt17(r.state.cp);
    if (col == "alpha") return fmt17(r.state.alpha);
    if (col == "beta") return fmt17(r.state.beta);
    if (col == "energy") return fmt17(r.energy);
    throw ConfigError("unknown column '" + col + "'");
}

inline std::vector<std::string> active_columns(const SweepConfig& cfg) {
    const auto& all = v1_columns();
    if (cfg.outputs.empty())
        return std::vector<std::string>(all.begin(), all.end() - 1);  // v1 set, no energy
    std::vector<std::string> cols;
    for (const auto& c : all)  // keep the fixed v1 relative order
        if (std::find(cfg.outputs.begin(), cfg.outputs.end(), c) != cfg.outputs.end())
            cols.push_back(c);
    return cols;
}

inline std::string params_comment(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "# spinchain-discord v1, model=" << to_string(cfg.model) << ", params=n:" << cfg.n
       << ",jx:" << fmt17(cfg.jx) << ",chi:" << fmt17(cfg.chi) << ",b_min:" << fmt17(cfg.b_min)
       << ",b_max:" << fmt17(cfg.b_max) << ",b_steps:" << cfg.b_steps << ",L:";
    for (std::size_t i = 0; i < cfg.separations.size(); ++i)
        os << (i ? "|" : "") << cfg.separations[i];
    if (cfg.side_limits) os << ",side_limit_delta:" << fmt17(cfg.side_limit_delta);
    return os.str();
}

}  // namespace detail

inline std::string to_csv(const std::vector<SweepRecord>& records, const SweepConfig& cfg) {
    const auto cols = detail::active_columns(cfg);
    std::ostringstream os;
    os << detail::params_comment(cfg) << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : records) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << detail::record_field(r, cols[i]);
        os << "\n";
    }
    return os.str();
}

inline std::string to_json(const std::vector<SweepRecord>& records, const SweepConfig& cfg) {
    const auto cols = detail::active_columns(cfg);
    std::ostringstream os;
    os << "{\n  \"format\": \"spinchain-discord v1\",\n  \"model\": \"" << to_string(cfg.model)
       << "\",\n  \"records\": [\n";
    for (std::size_t ri = 0; ri < records.size(); ++ri) {
        os << "    {";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string v = detail::record_field(records[ri], cols[i]);
            os << (i ? ", " : "") << "\"" << cols[i] << "\": ";
            if (cols[i] == "kind")
                os << "\"" << v << "\"";
            else
                os << v;
        }
        os << ", \"parity_transition\": " << (records[ri].parity_transition ? "true" : "false");
        os << "}" << (ri + 1 < records.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

inline void write_sweep(const std::vector<SweepRecord>& records, const SweepConfig& cfg,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << (cfg.format == SweepFormat::csv ? to_csv(records, cfg) : to_json(records, cfg));
}

// ---------------------------------------------------------------------------
// Figure presets: deterministic CSV data behind each figure of the study.
// ---------------------------------------------------------------------------

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

}  // namespace detail

/// fig2: mixture discord vs theta, plus the two conditional entropies whose
/// difference it is.
inline std::vector<std::filesystem::path> figure_fig2(const std::filesystem::path& dir) {
    const int npts = 401;
    std::ostringstream top, bottom;
    top << "# spinchain-discord v1, figure=fig2_top (mixture discord vs theta)\n"
        << "theta,D\n";
    bottom << "# spinchain-discord v1, figure=fig2_bottom (conditional entropies at gamma=pi/2)\n"
           << "theta,S_measured,S_unmeasured\n";
    for (int i = 0; i < npts; ++i) {
        const double theta = 0.5 * std::numbers::pi * i / (npts - 1);
        const double d = discord_closed_form(theta);
        const XState x = mixture_state(theta);
        const MeasuredSpectrum ms =
            measured_spectrum(x, MeasurementAxis{std::numbers::pi / 2.0, 0.0});
        const double s_meas = entropy(std::span<const double>(ms.joint.data(), 4)) -
                              entropy({ms.marginal[0], ms.marginal[1]});
        const auto ev = spectrum(x);
        const double s_un = entropy(std::span<const double>(ev.data(), 4)) -
                            entropy(reduce(x, Site::second));
        top << detail::fmt17(theta) << "," << detail::fmt17(d) << "\n";
        bottom << detail::fmt17(theta) << "," << detail::fmt17(s_meas) << ","
               << detail::fmt17(s_un) << "\n";
    }
    detail::write_text(dir / "fig2_top.csv", top.str());
    detail::write_text(dir / "fig2_bottom.csv", bottom.str());
    return {dir / "fig2_top.csv", dir / "fig2_bottom.csv"};
}

/// fig3: coherent-mixture discord and EoF vs theta for eps in {0.2, 0, -0.2},
/// and vs eps at theta = pi/4.
inline std::vector<std::filesystem::path> figure_fig3(const std::filesystem::path& dir) {
    const int npts = 401;
    std::ostringstream top, bottom;
    top << "# spinchain-discord v1, figure=fig3_top (coherent mixture vs theta)\n"
        << "theta,D_eps0.2,E_eps0.2,D_eps0,E_eps0,D_epsm0.2,E_epsm0.2\n";
    for (int i = 0; i < npts; ++i) {
        const double theta = 0.5 * std::numbers::pi * i / (npts - 1);
        top << detail::fmt17(theta);
        for (double eps : {0.2, 0.0, -0.2}) {
            const double d = discord_closed_form_coherent(theta, eps);
            const double e = eof(concurrence_coherent(theta, eps));
            top << "," << detail::fmt17(d) << "," << detail::fmt17(e);
        }
        top << "\n";
    }
    bottom << "# spinchain-discord v1, figure=fig3_bottom (theta=pi/4 vs epsilon)\n"
           << "eps,D,E\n";
    for (int i = 0; i < npts; ++i) {
        const double eps = -1.0 + 2.0 * i / (npts - 1);
        bottom << detail::fmt17(eps) << ","
               << detail::fmt17(discord_closed_form_coherent(std::numbers::pi / 4.0, eps)) << ","
               << detail::fmt17(eof(concurrence_coherent(std::numbers::pi / 4.0, eps))) << "\n";
    }
    detail::write_text(dir / "fig3_top.csv", top.str());
    detail::write_text(dir / "fig3_bottom.csv", bottom.str());
    return {dir / "fig3_top.csv", dir / "fig3_bottom.csv"};
}

namespace detail {

inline std::filesystem::path sweep_to_file(SweepConfig cfg, const std::filesystem::path& dir,
                                           const std::string& name) {
    const auto path = dir / name;
    write_sweep(run_sweep(cfg), cfg, path);
    return path;
}

inline SweepConfig chain_fig_config(int n, std::vector<int> seps, bool side_limits) {
    SweepConfig cfg;
    cfg.model = SweepModel::nn;
    cfg.n = n;
    cfg.jx = 1.0;
    cfg.chi = 0.5;
    cfg.b_min = 1.6180339887498949e-4;  // irrational offset keeps the grid off crossings
    cfg.b_max = 1.25 + cfg.b_min;
    cfg.b_steps = 251;
    cfg.separations = std::move(seps);
    cfg.side_limits = side_limits;
    return cfg;
}

}  // namespace detail

/// fig4: n=100 first-neighbor chain; top panel L=1, bottom all separations.
inline std::vector<std::filesystem::path> figure_fig4(const std::filesystem::path& dir) {
    auto top = detail::chain_fig_config(100, {1}, false);
    std::vector<int> all(50);
    for (int i = 0; i < 50; ++i) all[i] = i + 1;
    auto bottom = detail::chain_fig_config(100, all, false);
    bottom.b_steps = 151;
    return {detail::sweep_to_file(top, dir, "fig4_top.csv"),
            detail::sweep_to_file(bottom, dir, "fig4_bottom.csv")};
}

/// fig5: same as fig4 for n=10, with side-limit records at B_s -+ delta.
inline std::vector<std::filesystem::path> figure_fig5(const std::filesystem::path& dir) {
    auto top = detail::chain_fig_config(10, {1}, true);
    auto bottom = detail::chain_fig_config(10, {1, 2, 3, 4, 5}, true);
    return {detail::sweep_to_file(top, dir, "fig5_top.csv"),
            detail::sweep_to_file(bottom, dir, "fig5_bottom.csv")};
}

/// fig6: fully connected vs first-neighbor (L=n/2) vs the mixture model, for
/// n=100 (top, bare mixture) and n=10 (bottom, coherent mixture).
inline std::vector<std::filesystem::path> figure_fig6(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (int n : {100, 10}) {
        const std::string tag = n == 100 ? "top" : "bottom";
        auto lmg_cfg = detail::chain_fig_config(n, {1}, true);
        lmg_cfg.model = SweepModel::lmg;
        files.push_back(detail::sweep_to_file(lmg_cfg, dir, "fig6_" + tag + "_lmg.csv"));

        auto nn_cfg = detail::chain_fig_config(n, {n / 2}, true);
        files.push_back(detail::sweep_to_file(nn_cfg, dir, "fig6_" + tag + "_nn.csv"));

        auto mix_cfg = detail::chain_fig_config(n, {1}, false);
        mix_cfg.model = n == 100 ? SweepModel::mixture : SweepModel::mixture_coherent;
        mix_cfg.b_max = 1.0;  // mean-field angle defined for |B| <= Jx
        files.push_back(detail::sweep_to_file(mix_cfg, dir, "fig6_" + tag + "_mixture.csv"));
    }
    return files;
}

inline std::vector<std::filesystem::path> figure(const std::string& name,
                                                 const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    if (name == "fig2") return figure_fig2(dir);
    if (name == "fig3") return figure_fig3(dir);
    if (name == "fig4") return figure_fig4(dir);
    if (name == "fig5") return figure_fig5(dir);
    if (name == "fig6") return figure_fig6(dir);
    throw ConfigError("unknown figure '" + name + "' (expected fig2..fig6)");
}

}  // namespace spinchain
