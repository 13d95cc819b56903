#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "spinchain/aligned_mixture.hpp"
#include "spinchain/discord.hpp"
#include "spinchain/ed_oracle.hpp"

using namespace spinchain;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("two-spin hand check") {
    // H = -Jx s1x s2x at B = 0: eigenvalues -+ Jx/4, both parity sectors
    // reach -Jx/4 (|00> -+ |11| and |01> -+ |10> doublets).
    auto t = CouplingTable::zero(2, 0.0);
    t.jx(0, 1) = t.jx(1, 0) = 1.0;
    const ParityGround pg = build_and_ground(t);
    CHECK(pg.energy_plus == Catch::Approx(-0.25).margin(1e-14));
    CHECK(pg.energy_minus == Catch::Approx(-0.25).margin(1e-14));
}

TEST_CASE("parity blocks decouple exactly") {
    const auto t = CouplingTable::nearest_neighbor(6, 1.0, 0.4, 0.37);
    const Eigen::MatrixXd H = hamiltonian_dense(t);

    SECTION("real symmetric with zero off-parity entries") {
        CHECK((H - H.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (int r = 0; r < H.rows(); ++r)
            for (int c = 0; c < H.cols(); ++c)
                if ((std::popcount(unsigned(r)) & 1) != (std::popcount(unsigned(c)) & 1))
                    CHECK(H(r, c) == 0.0);
    }

    SECTION("block spectra union equals the full spectrum") {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(H);
        std::vector<double> blocks;
        for (int odd = 0; odd < 2; ++odd) {
            std::vector<int> idx;
            for (int m = 0; m < H.rows(); ++m)
                if ((std::popcount(unsigned(m)) & 1) == odd) idx.push_back(m);
            Eigen::MatrixXd blk(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) blk(r, c) = H(idx[r], idx[c]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk);
            for (int k = 0; k < es.eigenvalues().size(); ++k)
                blocks.push_back(es.eigenvalues()(k));
        }
        std::sort(blocks.begin(), blocks.end());
        for (int k = 0; k < H.rows(); ++k)
            CHECK(blocks[k] == Catch::Approx(full.eigenvalues()(k)).margin(1e-10));
    }

    SECTION("parity expectation is +-1 on the ground vectors") {
        const ParityGround pg = build_and_ground(t);
        for (Parity p : {Parity::positive, Parity::negative}) {
            const Eigen::VectorXd& v = pg.state(p);
            double exp_par = 0.0;
            for (int m = 0; m < v.size(); ++m)
                exp_par += (std::popcount(unsigned(m)) % 2 == 0 ? 1.0 : -1.0) * v(m) * v(m);
            CHECK(exp_par == Catch::Approx(sign(p)).margin(1e-10));
        }
    }
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(build_and_ground(CouplingTable::nearest_neighbor(13, 1, 0.5, 0.3)),
                    SizeLimitExceeded);
    CHECK_THROWS_AS(hamiltonian_dense(CouplingTable::nearest_neighbor(15, 1, 0.5, 0.3), true),
                    SizeLimitExceeded);
}

TEST_CASE("reduced pair extraction") {
    SECTION("polarized product states") {
        const Eigen::VectorXd down = product_state(0.0, 6);
        const XState xd = reduced_pair(down, 0, 3, 6);
        CHECK(xd.b == Catch::Approx(1.0).margin(1e-14));  // all spins down: |11><11| in X basis
        const Eigen::VectorXd up = product_state(kPi, 6);
        const XState xu = reduced_pair(up, 1, 4, 6);
        CHECK(xu.a == Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("definite parity states are X form, parity-mixed are not") {
        const auto t = CouplingTable::nearest_neighbor(6, 1.0, 0.5, 0.4);
        const ParityGround pg = build_and_ground(t);
        CHECK_NOTHROW(reduced_pair(pg.state_plus, 0, 2, 6));
        Eigen::VectorXd mixed = (pg.state_plus + pg.state_minus) / std::sqrt(2.0);
        CHECK_THROWS_AS(reduced_pair(mixed, 0, 2, 6), XFormViolation);
    }

    SECTION("|Theta+> reduces exactly to the coherent mixture (spin-flipped)") {
        const int n = 6;
        const double th = kPi / 4;
        for (int sgn : {+1, -1}) {
            const Eigen::VectorXd v = definite_parity_projection(th, n, sgn);
            CHECK(v.norm() == Catch::Approx(1.0).margin(1e-12));
            const XState got = reduced_pair(v, 0, 3, n);
            const XState want =
                spin_flipped(mixture_state_coherent(th, sgn * std::pow(std::cos(th), n - 2)));
            CHECK(got.a == Catch::Approx(want.a).margin(1e-12));
            CHECK(got.b == Catch::Approx(want.b).margin(1e-12));
            CHECK(got.c == Catch::Approx(want.c).margin(1e-12));
            CHECK(got.cp == Catch::Approx(want.cp).margin(1e-12));
            CHECK(got.alpha == Catch::Approx(want.alpha).margin(1e-12));
            CHECK(got.beta == Catch::Approx(want.beta).margin(1e-12));
        }
    }
}

TEST_CASE("definite parity projection") {
    SECTION("overlap equals cos^n theta") {
        const int n = 10;
        const double th = kPi / 4;
        const double ov = product_state(th, n).dot(product_state(-th, n));
        CHECK(ov == Catch::Approx(std::pow(std::cos(th), n)).margin(1e-12));
    }

    SECTION("theta = pi/2: orthogonal components, equal-weight combinations") {
        const Eigen::VectorXd v = definite_parity_projection(kPi / 2, 6, 1);
        CHECK(v.norm() == Catch::Approx(1.0).margin(1e-12));
        CHECK(product_state(kPi / 2, 6).dot(product_state(-kPi / 2, 6)) ==
              Catch::Approx(0.0).margin(1e-14));
    }

    SECTION("degenerate normalization") {
        CHECK_THROWS_AS(definite_parity_projection(0.0, 8, -1), DegenerateNormalization);
    }

    SECTION("reduced pair of |Theta-> at n = 10 has the left side-limit discord") {
        const Eigen::VectorXd v = definite_parity_projection(kPi / 4, 10, -1);
        const double d = discord(reduced_pair(v, 0, 5, 10)).discord;
        CHECK(d == Catch::Approx(0.15300513884224737).margin(1e-9));
    }
}

TEST_CASE("separable ground state verification") {
    SECTION("nearest neighbor, chi = 0.5") {
        const auto t = CouplingTable::nearest_neighbor(8, 1.0, 0.5, 0.0);
        CHECK(verify_separable_ground(t) < 1e-10);
    }

    SECTION("random-range circulant, common chi = 0.25") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(0.2, 1.0);
        std::vector<double> kx(4);
        for (double& v : kx) v = u(rng);
        auto t = CouplingTable::circulant(8, kx, 0.25, 0.0);
        CHECK(verify_separable_ground(t) < 1e-10);

        SECTION("factorization is special to B_s") {
            t.b = 1.1 * factorizing_field(t);
            CHECK(separability_residual(t, std::acos(std::sqrt(0.25))) > 1e-6);
        }

        SECTION("the factorized level is the ground energy") {
            t.b = factorizing_field(t);
            const Eigen::VectorXd v = product_state(std::acos(std::sqrt(0.25)), 8);
            const double e = v.dot(hamiltonian_dense(t) * v);
            CHECK(e == Catch::Approx(build_and_ground(t).ground_energy()).margin(1e-10));
        }
    }

    SECTION("XYZ variant with common (Jy-Jz)/(Jx-Jz)") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.2, 1.0);
        std::vector<double> kx(4);
        for (double& v : kx) v = u(rng);
        const double chi = 0.4, jz_ratio = 0.15;
        auto t = CouplingTable::circulant(8, kx, 0.0, 0.0, jz_ratio);
        // jy chosen so (Jy - Jz)/(Jx - Jz) = chi pairwise
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (i != j) t.jy(i, j) = chi * (t.jx(i, j) - t.jz(i, j)) + t.jz(i, j);
        CHECK(verify_separable_ground(t) < 1e-10);
    }

    SECTION("anisotropy guards") {
        auto bad = CouplingTable::nearest_neighbor(6, 1.0, 1.3, 0.0);
        CHECK_THROWS_AS(factorizing_field(bad), AnisotropyOutOfRange);
        auto nonuniform = CouplingTable::nearest_neighbor(6, 1.0, 0.5, 0.0);
        nonuniform.jx(0, 1) = nonuniform.jx(1, 0) = 2.0;
        nonuniform.jy(0, 1) = nonuniform.jy(1, 0) = 1.0;
        CHECK_THROWS_AS(factorizing_field(nonuniform), AnisotropyOutOfRange);
    }
}
