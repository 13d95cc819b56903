#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "spinchain/aligned_mixture.hpp"
#include "spinchain/sweep.hpp"

using namespace spinchain;

namespace {

SweepConfig small_nn_config() {
    SweepConfig cfg;
    cfg.model = SweepModel::nn;
    cfg.n = 8;
    cfg.jx = 1.0;
    cfg.chi = 0.5;
    cfg.b_min = 0.0123;
    cfg.b_max = 1.2123;
    cfg.b_steps = 7;
    cfg.separations = {1, 2};
    return cfg;
}

}  // namespace

TEST_CASE("sweep records are sorted and deterministic") {
    const SweepConfig cfg = small_nn_config();
    const auto r1 = run_sweep(cfg);
    const auto r2 = run_sweep(cfg);
    REQUIRE(r1.size() == 14);
    CHECK(to_csv(r1, cfg) == to_csv(r2, cfg));
    for (std::size_t i = 1; i < r1.size(); ++i)
        CHECK((r1[i].b > r1[i - 1].b || (r1[i].b == r1[i - 1].b && r1[i].L > r1[i - 1].L)));
}

TEST_CASE("csv format") {
    const SweepConfig cfg = small_nn_config();
    const auto records = run_sweep(cfg);
    const std::string csv = to_csv(records, cfg);

    SECTION("versioned header and fixed column order") {
        std::istringstream is(csv);
        std::string line;
        std::getline(is, line);
        CHECK(line.rfind("# spinchain-discord v1, model=nn, params=", 0) == 0);
        std::getline(is, line);
        CHECK(line == "b,L,parity,D,E,C,kind,I,a,b_el,c,cp,alpha,beta");
    }

    SECTION("round trip recovers doubles exactly") {
        std::istringstream is(csv);
        std::string line;
        std::getline(is, line);  // comment
        std::getline(is, line);  // header
        std::size_t row = 0;
        while (std::getline(is, line)) {
            std::istringstream ls(line);
            std::string cell;
            std::getline(ls, cell, ',');
            CHECK(std::strtod(cell.c_str(), nullptr) == records[row].b);
            std::getline(ls, cell, ',');  // L
            std::getline(ls, cell, ',');  // parity
            std::getline(ls, cell, ',');
            CHECK(std::strtod(cell.c_str(), nullptr) == records[row].discord);
            ++row;
        }
        CHECK(row == records.size());
    }

    SECTION("output subset keeps the fixed relative order") {
        SweepConfig sub = cfg;
        sub.outputs = {"D", "b", "energy", "parity"};
        const std::string s = to_csv(run_sweep(sub), sub);
        std::istringstream is(s);
        std::string line;
        std::getline(is, line);
        std::getline(is, line);
        CHECK(line == "b,parity,D,energy");
    }
}

TEST_CASE("json output is well formed") {
    SweepConfig cfg = small_nn_config();
    cfg.format = SweepFormat::json;
    cfg.b_steps = 3;
    const auto records = run_sweep(cfg);
    const auto parsed = nlohmann::json::parse(to_json(records, cfg));
    REQUIRE(parsed.at("records").size() == records.size());
    CHECK(parsed.at("records")[0].at("b").get<double>() == records[0].b);
    CHECK(parsed.at("records")[0].contains("parity_transition"));
}

TEST_CASE("sweeps are even in the field") {
    // exactly representable grid points, so the mirrored grid negates bitwise
    SweepConfig pos = small_nn_config();
    pos.b_min = 0.25;
    pos.b_max = 1.25;
    pos.b_steps = 5;
    SweepConfig neg = pos;
    neg.b_min = -pos.b_max;
    neg.b_max = -pos.b_min;
    const auto rp = run_sweep(pos);
    auto rn = run_sweep(neg);
    std::reverse(rn.begin(), rn.end());
    // after reversing, records pair up as (b, L2), (b, L1): flip L order per field
    for (std::size_t i = 0; i + 1 < rn.size(); i += 2) std::swap(rn[i], rn[i + 1]);
    REQUIRE(rp.size() == rn.size());
    for (std::size_t i = 0; i < rp.size(); ++i) {
        CHECK(rp[i].b == Catch::Approx(-rn[i].b).margin(1e-15));
        CHECK(rp[i].L == rn[i].L);
        CHECK(rp[i].discord == rn[i].discord);
        CHECK(rp[i].eof == rn[i].eof);
        CHECK(rp[i].concurrence == rn[i].concurrence);
    }
}

TEST_CASE("side limits at the factorizing field") {
    SweepConfig cfg = small_nn_config();
    cfg.n = 10;
    cfg.separations = {1};
    cfg.b_steps = 3;
    cfg.side_limits = true;
    const auto records = run_sweep(cfg);
    const double bs = std::sqrt(0.5);
    int found = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (std::abs(records[i].b - (bs - 1e-6)) < 1e-12) {
            CHECK(records[i].parity == -1);
            CHECK(records[i].discord == Catch::Approx(0.15300513884224737).margin(1e-5));
            ++found;
        }
        if (std::abs(records[i].b - (bs + 1e-6)) < 1e-12) {
            CHECK(records[i].parity == +1);
            CHECK(records[i].discord == Catch::Approx(0.13677667166050655).margin(1e-5));
            ++found;
        }
    }
    CHECK(found == 2);
}

TEST_CASE("mixture models") {
    SECTION("bare mixture sweep hits the closed form") {
        SweepConfig cfg;
        cfg.model = SweepModel::mixture;
        cfg.n = 0;
        cfg.b_min = std::cos(std::numbers::pi / 4);
        cfg.b_max = 1.0;
        cfg.b_steps = 2;
        const auto records = run_sweep(cfg);
        REQUIRE(records.size() == 2);
        CHECK(records[0].discord ==
              Catch::Approx(discord_closed_form(std::numbers::pi / 4)).margin(1e-9));
        CHECK(records[1].discord == Catch::Approx(0.0).margin(1e-12));  // theta = 0
        CHECK(records[0].L == 0);
        CHECK(records[0].parity == 0);
    }

    SECTION("coherent mixture flips parity at B_s") {
        SweepConfig cfg;
        cfg.model = SweepModel::mixture_coherent;
        cfg.n = 10;
        cfg.b_min = 0.5;
        cfg.b_max = 0.9;
        cfg.b_steps = 5;
        const auto records = run_sweep(cfg);
        for (const auto& r : records) CHECK(r.parity == (r.b < std::sqrt(0.5) ? -1 : +1));
    }
}

TEST_CASE("config validation") {
    SweepConfig cfg = small_nn_config();
    cfg.b_steps = 1;
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg = small_nn_config();
    cfg.separations = {5};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg = small_nn_config();
    cfg.outputs = {"bogus"};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
    cfg = small_nn_config();
    cfg.n = 2;
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("figure emission is deterministic") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spinchain_fig_test";
    fs::create_directories(dir);
    const auto files = figure("fig2", dir);
    REQUIRE(files.size() == 2);
    std::ifstream f1(files[0]);
    std::stringstream s1;
    s1 << f1.rdbuf();
    const auto again = figure("fig2", dir);
    std::ifstream f2(again[0]);
    std::stringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("# spinchain-discord v1, figure=fig2_top", 0) == 0);
    CHECK_THROWS_AS(figure("fig9", dir), ConfigError);
    fs::remove_all(dir);
}
