#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "spinchain/aligned_mixture.hpp"
#include "spinchain/validation.hpp"
#include "spinchain/xstate.hpp"

using namespace spinchain;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("xstate_from_elements validates and normalizes") {
    const XState pure = xstate_from_elements(1, 0, 0, 0, 0, 0);
    CHECK(pure.a == 1.0);
    CHECK(pure.beta == 0.0);

    // theta = pi/2 two-direction mixture: every population and coherence 1/4
    const XState mix = xstate_from_elements(0.25, 0.25, 0.25, 0.25, 0.25, 0.25);
    CHECK(mix.alpha == Catch::Approx(0.25));

    CHECK_THROWS_AS(xstate_from_elements(0.5, 0.5, 0, 0, 0.6, 0), PositivityViolation);
    CHECK_THROWS_AS(xstate_from_elements(0.5, 0.5, 0.1, 0, 0, 0), TraceError);
    CHECK_THROWS_AS(xstate_from_elements(0.6, 0.5, -0.1, 0, 0, 0), PositivityViolation);

    // trace within 1e-9 is renormalized
    const XState renorm = xstate_from_elements(0.5 + 2e-10, 0.5, 0, 0, 0, 0);
    CHECK(renorm.a + renorm.b + renorm.c + renorm.cp == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("xstate_from_correlators maps spin expectations") {
    // fully aligned down
    const XState down = xstate_from_correlators(-0.5, -0.5, 0.25, 0, 0);
    CHECK(down.b == Catch::Approx(1.0));
    CHECK(down.a == Catch::Approx(0.0).margin(1e-15));

    // chain-side correlators of the theta mixture (spins tilted off -z):
    // the result is the spin-flipped image of the Eq.-style mixture state
    const double th = kPi / 4;
    const double ct = std::cos(th);
    const XState x = xstate_from_correlators(-ct / 2, -ct / 2, ct * ct / 4,
                                             std::sin(th) * std::sin(th) / 4,
                                             std::sin(th) * std::sin(th) / 4);
    const XState flipped = spin_flipped(mixture_state(th));
    CHECK(x.a == Catch::Approx(flipped.a).margin(1e-15));
    CHECK(x.b == Catch::Approx(flipped.b).margin(1e-15));
    CHECK(x.alpha == Catch::Approx(flipped.alpha).margin(1e-15));

    // Bell-type (|01> + |10>)/sqrt(2)
    const XState bell = xstate_from_correlators(0, 0, -0.25, 0, 0.5);
    CHECK(bell.c == Catch::Approx(0.5));
    CHECK(bell.cp == Catch::Approx(0.5));
    CHECK(bell.a == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("spectrum closed form and block structure") {
    SECTION("c = c' closed form") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 50; ++i) {
            XState x = random_xstate(rng);
            const double c = 0.5 * (x.c + x.cp);
            x = xstate_from_elements(x.a, x.b, c, c, x.alpha, std::min(std::abs(x.beta), c));
            const auto ev = spectrum(x);
            const double inner_r = std::abs(x.beta);
            const double outer_r =
                std::sqrt(0.25 * (x.a - x.b) * (x.a - x.b) + x.alpha * x.alpha);
            std::array<double, 4> ref = {0.5 * (1 - x.a - x.b) + inner_r,
                                         0.5 * (1 - x.a - x.b) - inner_r,
                                         0.5 * (x.a + x.b) + outer_r,
                                         0.5 * (x.a + x.b) - outer_r};
            std::sort(ref.begin(), ref.end(), std::greater<>());
            for (int k = 0; k < 4; ++k) CHECK(ev[k] == Catch::Approx(ref[k]).margin(1e-14));
        }
    }

    SECTION("theta mixture eigenvalues (1 +- cos^2)/2") {
        const auto ev = spectrum(mixture_state(kPi / 4));
        CHECK(ev[0] == Catch::Approx(0.75).margin(1e-14));
        CHECK(ev[1] == Catch::Approx(0.25).margin(1e-14));
        CHECK(ev[2] == Catch::Approx(0.0).margin(1e-14));
        CHECK(ev[3] == Catch::Approx(0.0).margin(1e-14));
    }

    SECTION("pure |00>") {
        const auto ev = spectrum(xstate_from_elements(1, 0, 0, 0, 0, 0));
        CHECK(ev[0] == 1.0);
        CHECK(ev[3] == 0.0);
    }

    SECTION("agrees with a dense 4x4 eigensolver on random states") {
        std::mt19937_64 rng(12);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const XState x = random_xstate(rng);
            const auto ev = spectrum(x);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(to_matrix(x));
            for (int k = 0; k < 4; ++k)
                worst = std::max(worst, std::abs(ev[k] - solver.eigenvalues()(3 - k)));
        }
        CHECK(worst < 1e-12);
    }

    SECTION("sums to one, entries above -1e-12") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 500; ++i) {
            const auto ev = spectrum(random_xstate(rng));
            CHECK(ev[0] + ev[1] + ev[2] + ev[3] == Catch::Approx(1.0).margin(1e-12));
            CHECK(ev[3] >= -1e-12);
        }
    }
}

TEST_CASE("reduce matches the dense partial trace") {
    SECTION("pinned cases") {
        const XState mix = mixture_state(kPi / 3);
        const QubitState q1 = reduce(mix, Site::first);
        const QubitState q2 = reduce(mix, Site::second);
        CHECK(q1.p0 == Catch::Approx(0.5 * (1 + std::cos(kPi / 3))).margin(1e-14));
        CHECK(q1.p0 == Catch::Approx(q2.p0).margin(1e-15));

        const XState bell = xstate_from_correlators(0, 0, -0.25, 0, 0.5);
        CHECK(reduce(bell, Site::first).p0 == Catch::Approx(0.5));
        CHECK(reduce(bell, Site::second).p1 == Catch::Approx(0.5));
    }

    SECTION("generic c != c' against explicit matrix sums") {
        std::mt19937_64 rng(14);
        for (int i = 0; i < 200; ++i) {
            const XState x = random_xstate(rng);
            const Eigen::Matrix4d rho = to_matrix(x);
            // first site: trace over the second index pair
            const double first_p0 = rho(0, 0) + rho(1, 1);
            const double second_p0 = rho(0, 0) + rho(2, 2);
            CHECK(reduce(x, Site::first).p0 == Catch::Approx(first_p0).margin(1e-15));
            CHECK(reduce(x, Site::second).p0 == Catch::Approx(second_p0).margin(1e-15));
        }
    }
}

TEST_CASE("entropy in bits") {
    CHECK(entropy({1.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(entropy({0.5, 0.5}) == Catch::Approx(1.0).margin(1e-15));
    CHECK(entropy({0.75, 0.25}) == Catch::Approx(0.8112781244591328).margin(1e-15));
    CHECK_THROWS_AS(entropy({0.5, -1e-6}), NegativeEigenvalue);
    CHECK(entropy({1.0, -1e-13}) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("concurrence classification") {
    SECTION("separable mixture has exactly zero concurrence") {
        const Concurrence c = concurrence(mixture_state(1.1));
        CHECK(c.value == 0.0);
        CHECK(c.kind == ConcurrenceKind::none);
    }

    SECTION("coherent mixture follows the closed form") {
        for (double eps : {0.3, -0.3, 0.9, -0.9})
            for (double th : {0.4, kPi / 4, 1.3}) {
                const Concurrence c = concurrence(mixture_state_coherent(th, eps));
                const double ref = std::abs(eps) * std::sin(th) * std::sin(th) /
                                   (1.0 + eps * std::cos(th) * std::cos(th));
                CHECK(c.value == Catch::Approx(ref).margin(1e-12));
                CHECK(c.kind ==
                      (eps > 0 ? ConcurrenceKind::parallel : ConcurrenceKind::antiparallel));
            }
    }

    SECTION("Bell-type state") {
        const Concurrence c = concurrence(xstate_from_correlators(0, 0, -0.25, 0, 0.5));
        CHECK(c.value == Catch::Approx(1.0));
        CHECK(c.kind == ConcurrenceKind::antiparallel);
    }

    SECTION("at most one positive entry") {
        std::mt19937_64 rng(15);
        for (int i = 0; i < 1000; ++i) {
            const XState x = random_xstate(rng);
            const double par = std::abs(x.alpha) - std::sqrt(x.c * x.cp);
            const double anti = std::abs(x.beta) - std::sqrt(x.a * x.b);
            CHECK_FALSE((par > 1e-14 && anti > 1e-14));
        }
    }
}

TEST_CASE("entanglement of formation") {
    CHECK(eof(0.0) == 0.0);
    CHECK(eof(1.0) == Catch::Approx(1.0));
    CHECK(eof(0.5) == Catch::Approx(0.35457890266527003).margin(1e-14));

    SECTION("monotone in C") {
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double e = eof(i / 100.0);
            CHECK(e >= prev);
            prev = e;
        }
    }

    SECTION("pure X states: EoF equals the marginal entropy") {
        std::mt19937_64 rng(16);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const double t = u(rng) * kPi / 2;
            // even-parity family x|00> + w|11>, odd family y|01> + z|10>
            const XState even = xstate_from_elements(
                std::cos(t) * std::cos(t), std::sin(t) * std::sin(t), 0, 0,
                std::cos(t) * std::sin(t), 0);
            const XState odd = xstate_from_elements(
                0, 0, std::cos(t) * std::cos(t), std::sin(t) * std::sin(t), 0,
                std::cos(t) * std::sin(t));
            for (const XState& x : {even, odd}) {
                const QubitState q = reduce(x, Site::first);
                CHECK(eof(concurrence(x).value) ==
                      Catch::Approx(entropy(q)).margin(1e-10));
            }
        }
    }
}
