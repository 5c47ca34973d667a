#include <doctest.h>

#include "ultra/jets.hpp"

using namespace ultra;

TEST_CASE("compact set distances and nearest points") {
    const CompactSet E({{-1.0, 1.0}, {2.0, 3.0}});
    CHECK(E.distance(0.5, 0.0) == 0.0);
    CHECK(E.distance(1.5, 0.0) == doctest::Approx(0.5));
    CHECK(E.distance(complexd(0.0, 0.7)) == doctest::Approx(0.7));
    CHECK(E.distance(complexd(4.0, 3.0)) == doctest::Approx(std::hypot(1.0, 3.0)));
    CHECK(E.nearest(1.5, 0.0) == doctest::Approx(1.0));   // exact tie breaks to the left
    CHECK(E.nearest(1.4, 0.0) == doctest::Approx(1.0));
    CHECK(E.nearest(1.8, 0.0) == doctest::Approx(2.0));
    CHECK(E.diameter() == doctest::Approx(4.0));
    // triangle inequality spot checks
    const complexd z1(0.3, 0.4), z2(2.5, -0.9);
    CHECK(E.distance(z1) <= std::abs(z1 - z2) + E.distance(z2) + 1e-14);
    CHECK_THROWS_AS(CompactSet({}), error);
}

TEST_CASE("taylor_poly reproduces polynomials exactly") {
    const auto E = CompactSet::interval(-1.0, 1.0);
    const UltraJet sq = jet_monomial(2, E);
    const complexd z(0.5, 0.5);
    CHECK(std::abs(taylor_poly(sq, 0.0, 2, z) - z * z) <= 1e-15);
    CHECK(taylor_poly(sq, 0.0, 2, z).imag() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(taylor_poly(sq, 0.3, 0, complexd(0.8, 0.0)).real() == doctest::Approx(0.09));

    // linear in the jet and exact for p >= degree, any base point
    for (int d = 0; d <= 3; ++d) {
        const UltraJet m = jet_monomial(d, E);
        for (double a : {-0.7, 0.0, 0.4})
            for (int p = d; p <= d + 3; ++p) {
                const complexd got = taylor_poly(m, a, p, z);
                CHECK(std::abs(got - std::pow(z, d)) <= 1e-14 * std::max(1.0, std::abs(got)));
            }
    }
}

TEST_CASE("taylor_poly of exp converges at the remainder rate") {
    const auto E = CompactSet::interval(0.0, 1.0);
    const UltraJet ex = jet_exp(E);
    const complexd z(0.3, 0.0);
    CHECK(std::abs(taylor_poly(ex, 0.0, 10, z) - std::exp(0.3)) <= 3e-9);
}

TEST_CASE("remainders") {
    const auto E = CompactSet::interval(0.0, 1.0);
    const UltraJet cube = jet_monomial(3, E);
    for (int alpha = 0; alpha <= 3; ++alpha)
        CHECK(std::abs(remainder(cube, 0.0, 0.8, 3, alpha)) <= 1e-12);

    const UltraJet ex = jet_exp(E);
    CHECK(remainder(ex, 0.0, 1.0, 3, 0) ==
          doctest::Approx(std::exp(1.0) - (1.0 + 1.0 + 0.5 + 1.0 / 6.0)).epsilon(1e-12));
    // |alpha| = p collapses to f^(p)(b) - f^(p)(a)
    CHECK(remainder(ex, 0.0, 1.0, 3, 3) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("remainder is o(|b-a|^{p-alpha}) along a geometric approach") {
    const auto E = CompactSet::interval(0.0, 1.0);
    for (const auto& jet : {jet_exp(E), jet_sin(E)}) {
        for (int p : {2, 3})
            for (int alpha = 0; alpha < p; ++alpha) {
                double prev = std::numeric_limits<double>::infinity();
                for (double step : {0.4, 0.2, 0.1, 0.05}) {
                    const double r = std::abs(remainder(jet, 0.3, 0.3 + step, p, alpha)) /
                                     std::pow(step, p - alpha);
                    CHECK(r < prev);
                    prev = r;
                }
            }
    }
}

TEST_CASE("oracle consistency with finite differences") {
    const auto E = CompactSet::interval(-1.0, 1.0);
    for (const auto& jet : {jet_exp(E), jet_sin(E), jet_lacunary(2.0, E)}) {
        for (double x : {-0.5, 0.0, 0.4}) {
            const double h = 1e-5;
            const double fd = (jet.deriv(0, x + h) - jet.deriv(0, x - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(jet.deriv(1, x)).epsilon(1e-7));
        }
    }
}

TEST_CASE("jet evaluation is bit-identical across calls") {
    const auto E = CompactSet::interval(-1.0, 1.0);
    const UltraJet lac = jet_lacunary(2.0, E);
    for (int k : {0, 3, 17})
        for (double x : {-0.77, 0.123}) {
            const double a = lac.deriv(k, x), b = lac.deriv(k, x);
            CHECK(a == b);
        }
}

TEST_CASE("ultrajet norm check") {
    const auto E = CompactSet::interval(-1.0, 1.0);
    const WeightSequence g2 = seq_gevrey(2.0);

    const auto lac = ultrajet_norm_check(jet_lacunary(2.0, E), g2, 4.0, SamplePlan{24, 9, 12});
    CHECK(lac.verdict == Verdict::holds_at_horizon);

    const auto pol = ultrajet_norm_check(jet_poly({1.0, -2.0, 0.5, 3.0}, E), g2, 1.0,
                                         SamplePlan{16, 9, 10});
    CHECK(pol.verdict == Verdict::holds_at_horizon);
    CHECK(*pol.fitted < 20.0);

    // |f^(k)| = e^x against M_k = 1 at rho = 1/2 forces C >= 2^k
    const auto bad = ultrajet_norm_check(jet_exp(E), seq_bounded(), 0.5, SamplePlan{20, 9, 10});
    CHECK(bad.verdict == Verdict::fails);
}

TEST_CASE("taylor difference check fits a stable D") {
    const auto E = CompactSet::interval(0.0, 1.0);
    const WeightSequence g1 = seq_factorial();
    const auto ex = taylor_diff_check(jet_exp(E), g1, SamplePlan{12, 7, 8});
    CHECK(ex.verdict == Verdict::holds_at_horizon);
    CHECK(*ex.fitted <= 4.0);

    const WeightSequence g2 = seq_gevrey(2.0);
    const auto lac = taylor_diff_check(jet_lacunary(2.0, CompactSet::interval(-1.0, 1.0)), g2,
                                       SamplePlan{12, 7, 8});
    CHECK(lac.verdict == Verdict::holds_at_horizon);
    CHECK(*lac.fitted < 40.0);
}
