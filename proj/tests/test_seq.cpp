#include <doctest.h>

#include "ultra/seq.hpp"

using namespace ultra;

namespace {
std::vector<WeightSequence> catalog() {
    return {seq_bounded(), seq_factorial(), seq_gevrey(1.5), seq_gevrey(2.0), seq_gevrey(3.0),
            seq_qpower(2.0)};
}
} // namespace

TEST_CASE("builtin values") {
    const WeightSequence g2 = seq_gevrey(2.0);
    CHECK(g2.log_M(3) == doctest::Approx(2.0 * std::log(6.0)).epsilon(1e-14));
    CHECK(seq_factorial().log_M(0) == 0.0);
    CHECK(seq_qpower(2.0).log_M(4) == doctest::Approx(16.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(seq_bounded().log_M(17) == 0.0);
    CHECK_THROWS_AS(seq_builtin("gevrey", {0.5}), error);
    CHECK_THROWS_AS(seq_builtin("nope", {}), error);
}

TEST_CASE("mu reconstruction: prefix sums of log mu recover log M") {
    for (const auto& w : catalog()) {
        double acc = 0.0;
        for (int64_t k = 1; k <= 120; ++k) {
            acc += w.log_mu(k);
            CHECK(acc == doctest::Approx(w.log_M(k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("log convexity checks") {
    CHECK(log_convex_check(seq_gevrey(2.0), 100).verdict == Verdict::holds_at_horizon);
    CHECK(log_convex_check(seq_factorial(), 100).verdict == Verdict::holds_at_horizon);

    const auto bad = WeightSequence::from_table("bad", {0.0, std::log(3.0), 0.0});
    const auto rep = log_convex_check(bad, 2);
    CHECK(rep.verdict == Verdict::fails);
    REQUIRE(rep.witness_index.has_value());
    CHECK(*rep.witness_index == 2);
}

TEST_CASE("strong log convexity") {
    CHECK(strongly_log_convex_check(seq_gevrey(2.0), 200).verdict == Verdict::holds_at_horizon);
    // boundary case: mu_k / k is constant 1, non-strict increase accepted
    CHECK(strongly_log_convex_check(seq_factorial(), 200).verdict == Verdict::holds_at_horizon);
}

TEST_CASE("quasianalytic trends") {
    const auto harmonic = quasianalytic_check(seq_factorial(), 4096);
    CHECK(harmonic.verdict == Verdict::divergence_trend);

    const auto g2 = quasianalytic_check(seq_gevrey(2.0), 4096);
    CHECK(g2.verdict == Verdict::convergence_trend);
    REQUIRE(g2.fitted.has_value());
    CHECK(*g2.fitted < 1.645);  // partial sums of 1/k^2 stay below pi^2/6

    WeightSequence tagged = seq_gevrey(2.0);
    tagged.tags().quasianalytic = false;
    CHECK(quasianalytic_check(tagged, 100).verdict == Verdict::holds_symbolically);
}

TEST_CASE("moderate growth") {
    const auto g2 = moderate_growth_check(seq_gevrey(2.0), 200);
    CHECK(g2.verdict == Verdict::holds_at_horizon);
    REQUIRE(g2.fitted.has_value());
    CHECK(*g2.fitted > 6.0);      // approaches e^2 ~ 7.39 from below
    CHECK(*g2.fitted < 7.45);

    CHECK(moderate_growth_check(seq_qpower(2.0), 200).verdict == Verdict::fails);

    const auto b = moderate_growth_check(seq_bounded(), 200);
    CHECK(b.verdict == Verdict::holds_at_horizon);
    CHECK(*b.fitted == doctest::Approx(1.0));
}

TEST_CASE("derivation closed") {
    CHECK(derivation_closed_check(seq_gevrey(2.0), 200).verdict == Verdict::holds_at_horizon);
    const auto qp = derivation_closed_check(seq_qpower(2.0), 200);
    CHECK(qp.verdict == Verdict::holds_at_horizon);
    CHECK(*qp.fitted >= 2.0 * std::log(2.0));                 // sup, attained at k = 1
    CHECK(qp.trend.back().second ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(0.02));  // tail limit 2 log 2
}

TEST_CASE("relations") {
    CHECK(relation_check(seq_factorial(), seq_gevrey(2.0), 200).verdict == Verdict::triangle);
    CHECK(relation_check(seq_gevrey(2.0), seq_gevrey(2.0), 200).verdict == Verdict::equivalent);
    CHECK(relation_check(seq_gevrey(3.0), seq_gevrey(2.0), 200).verdict == Verdict::not_preceq);
}

TEST_CASE("relation_check is reflexive and transitive on the catalog") {
    const auto cat = catalog();
    const auto le = [&](size_t i, size_t j) {
        const Verdict v = relation_check(cat[i], cat[j], 200).verdict;
        return v == Verdict::preceq || v == Verdict::triangle || v == Verdict::equivalent;
    };
    for (size_t i = 0; i < cat.size(); ++i)
        CHECK(relation_check(cat[i], cat[i], 200).verdict == Verdict::equivalent);
    for (size_t i = 0; i < cat.size(); ++i)
        for (size_t j = 0; j < cat.size(); ++j)
            for (size_t k = 0; k < cat.size(); ++k)
                if (le(i, j) && le(j, k)) CHECK(le(i, k));
}

TEST_CASE("lemma basicM parts 1 and 2 on log-convex entries") {
    for (const auto& w : catalog()) {
        if (log_convex_check(w, 120).verdict != Verdict::holds_at_horizon) continue;
        // (1) M_k^{1/k} increasing
        double prev = w.log_M(1);
        for (int64_t k = 2; k <= 120; ++k) {
            const double cur = w.log_M(k) / static_cast<double>(k);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
        // (2) M_j M_k <= M_{j+k}
        for (int64_t j = 0; j <= 60; j += 7)
            for (int64_t k = 0; k <= 60; k += 11)
                CHECK(w.log_M(j) + w.log_M(k) <= w.log_M(j + k) + 1e-9);
    }
}

TEST_CASE("strictInclusion2: k^k <= C rho^k M_k when log m_k / k grows") {
    // the sup sits near k = exp((s - log rho)/(s-1) - 1); horizon 4000 clears it
    for (const auto& w : {seq_gevrey(1.5), seq_gevrey(2.0), seq_gevrey(3.0), seq_qpower(2.0)}) {
        for (double rho : {0.1, 1.0}) {
            std::vector<double> v;
            for (int64_t k = 1; k <= 4000; ++k)
                v.push_back(static_cast<double>(k) * std::log(static_cast<double>(k)) -
                            static_cast<double>(k) * std::log(rho) - w.log_M(k));
            CHECK(bounded_trend(v).bounded);
        }
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(log_convex_check(seq_gevrey(2.0), seq_gevrey(2.0).kmax() + 1), error);
    CHECK_THROWS_AS(WeightSequence::from_table("nonzero", {0.5, 1.0}), error);
}
