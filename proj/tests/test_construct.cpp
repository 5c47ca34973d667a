#include <doctest.h>

#include "ultra/construct.hpp"
#include "ultra/weightfn.hpp"

using namespace ultra;

TEST_CASE("example pair: minimal admissible choices") {
    const ExamplePair p = build_example_pair(3);
    CHECK(p.a[1] == 1);
    CHECK(p.a[2] == 4);
    CHECK(p.a[3] == 16);
    CHECK(p.a[4] == 256);
    CHECK(p.log_b[1] == 0.0);                                        // b_1 = 1
    CHECK(p.log_b[2] == doctest::Approx(16.0 * std::log(2.0)));      // b_2 = 2^16
    CHECK(p.log_b[3] == doctest::Approx(256.0 * std::log(3.0)));     // b_3 = 3^256

    // mu_1 = mu_2 = a_1 b_1 = 1, mu_3 = (a_2 - 1) b_1 = 3
    CHECK(p.mu_side.log_mu(1) == doctest::Approx(0.0));
    CHECK(p.mu_side.log_mu(2) == doctest::Approx(0.0));
    CHECK(p.mu_side.log_mu(3) == doctest::Approx(std::log(3.0)));
    // mu_15 = 2^{-15} * 15 * b_2 = 30
    CHECK(p.mu_side.log_mu(15) == doctest::Approx(std::log(30.0)).epsilon(1e-12));
    // dips are shared: nu_k = mu_k at k = a_{j+1} - 1
    CHECK(p.nu_side.log_mu(15) == doctest::Approx(p.mu_side.log_mu(15)).epsilon(1e-13));

    CHECK_THROWS_AS(build_example_pair(1), error);
    CHECK_THROWS_AS(build_example_pair(5), error);  // log b_4 beyond the binary64 cap
}

TEST_CASE("example pair: prefix sums match term-by-term accumulation") {
    const ExamplePair p = build_example_pair(3);  // kmax = a_4 - 1 = 255
    for (const WeightSequence* w : {&p.mu_side, &p.nu_side}) {
        double acc = 0.0;
        for (int64_t k = 1; k <= 255; ++k) {
            acc += w->log_mu(k);
            if (k <= 64 || (k & (k - 1)) == 0 || k == 15 || k == 255 || k == 256)
                CHECK(w->log_M(k) == doctest::Approx(acc).epsilon(1e-9));
        }
    }
}

TEST_CASE("example pair claim (1): Gamma-bar_nu <= Gamma-under_mu across transitions") {
    const ExamplePair p = build_example_pair(3);
    // 1/t sweeps across b_1 = 1 and b_2 = 65536
    for (double t : logspace(1.0 / (4.0 * 65536.0), 4.0, 60)) {
        const auto gu = gamma_under(p.mu_side, t);
        if (!gu) continue;
        CHECK(gamma_bar(p.nu_side, t) <= *gu);
    }
}

TEST_CASE("example pair claim (2): the qai surrogate equals log j") {
    const ExamplePair p = build_example_pair(3);
    double prev = -1.0;
    for (int j = 1; j <= 3; ++j) {
        const double q = example_qai_surrogate(p, j);
        CHECK(q == doctest::Approx(std::log(static_cast<double>(j))).epsilon(1e-9));
        CHECK(q > prev);
        prev = q;
    }
}

TEST_CASE("example pair claim (3): mu_k / k grows along blocks") {
    const ExamplePair p = build_example_pair(3);
    double prev = 0.0;
    for (int j = 1; j <= 3; ++j) {
        const int64_t k = p.a[static_cast<size_t>(j) + 1] - 1;
        const double v = p.mu_side.log_mu(k) - std::log(static_cast<double>(k));
        CHECK(v >= std::log(static_cast<double>(j)) - 1e-9);  // b_j >= j^{a_{j+1}}
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
}

TEST_CASE("example pair matrix: the mu-ratio condition fails on the sample") {
    const ExamplePair p = build_example_pair(3);
    const WeightMatrix m = make_matrix({p.mu_side, p.nu_side}, {1.0, 2.0});
    const auto reports = matrix_regularity_check(m, 250, logspace(1e-4, 2.0, 9));
    bool found = false;
    for (const auto& rep : reports)
        if (rep.property == "ratio-mu") {
            found = true;
            CHECK(rep.verdict == Verdict::fails);
        }
    CHECK(found);
}

TEST_CASE("quasianalytic Q: block recurrence") {
    const QSequence q = build_quasianalytic_Q(3);
    CHECK(q.alpha[1] == 1);
    CHECK(q.log_tau[1] == 0.0);
    CHECK(q.beta[1] == 3);          // ceil(e)
    CHECK(q.alpha[2] == 3);         // (3-1)*3/2
    CHECK(q.log_tau[2] == 3.0);     // tau_2 = e^3
    CHECK(q.beta[2] > 1000000000);  // ceil(3 e^{e^3}) ~ 1.59e9
    CHECK(q.alpha[3] == (q.beta[2] - 1) / 2 * q.beta[2] +
                            ((q.beta[2] - 1) % 2) * (q.beta[2] / 2));
    CHECK(q.log_tau[3] == static_cast<double>(q.alpha[3]));
    CHECK(q.last_block_open);  // tau_3 = e^{alpha_3} is not representable

    // symbolic tags
    CHECK(quasianalytic_check(q.seq, 1000).verdict == Verdict::holds_symbolically);
    CHECK(derivation_closed_check(q.seq, 1000).verdict == Verdict::holds_symbolically);
}

TEST_CASE("quasianalytic Q: rho increases across junctions and log rho_k <= k") {
    const QSequence q = build_quasianalytic_Q(3);
    CHECK(strongly_log_convex_check(q.seq, 4096).verdict == Verdict::holds_at_horizon);

    std::vector<int64_t> probes = {1, 2, 3, 4, 100, q.beta[2] - 1, q.beta[2], q.beta[2] + 1,
                                   q.alpha[3] - 1, q.alpha[3], q.alpha[3] + 7};
    for (int64_t k : probes) {
        CHECK(q_log_rho(q, k) <= static_cast<double>(k) * (1.0 + 1e-12) + 1e-12);
        if (k > 1) CHECK(q_log_rho(q, k) >= q_log_rho(q, k - 1) - 1e-9);
    }
}

TEST_CASE("quasianalytic Q: per-block mass and Gevrey escape") {
    const QSequence q = build_quasianalytic_Q(3);
    CHECK(q_block_quasianalytic_mass(q, 1) == doctest::Approx(1.5));  // 1/1 + 1/2
    CHECK(q_block_quasianalytic_mass(q, 2) >= 0.9);

    const QEscape e1 = q_gevrey_escape(q, 1);
    CHECK(e1.exact_cancellation);
    CHECK(e1.margin == doctest::Approx(1.0));
    const QEscape e2 = q_gevrey_escape(q, 2);
    CHECK(e2.exact_cancellation);
    CHECK(e2.margin >= 1.0);

    CHECK_THROWS_AS(q_gevrey_escape(q, 3), error);  // beta_3 not representable
}

TEST_CASE("quasianalytic Q: prefix sums match enumeration at small k") {
    const QSequence q = build_quasianalytic_Q(3);
    double acc = 0.0;
    for (int64_t k = 1; k <= 4096; ++k) {
        acc += q_log_rho(q, k);
        if (k <= 8 || (k & (k - 1)) == 0)
            CHECK(q.seq.log_M(k) == doctest::Approx(log_factorial(k) + acc).epsilon(1e-9));
    }
}

TEST_CASE("komatsu refinement: sandwich and preserved properties") {
    const WeightSequence L = seq_factorial(200), M = seq_gevrey(2.0, 200);
    const auto res = komatsu_refine(L, M, logspace(1e-4, 1e8, 400), 50);
    const WeightSequence& Mdot = res.refined;

    for (int64_t k = 0; k <= 50; ++k) {
        CHECK(L.log_M(k) <= Mdot.log_M(k) + 1e-9);
        CHECK(Mdot.log_M(k) <= M.log_M(k) + 1e-9);
    }
    CHECK(strongly_log_convex_check(Mdot, 50).verdict == Verdict::holds_at_horizon);
    CHECK(moderate_growth_check(Mdot, 50).verdict == Verdict::holds_at_horizon);

    // (log Mdot_k - log M_k)/k decreasing tail: Mdot triangle M
    std::vector<double> d;
    for (int64_t k = 1; k <= 50; ++k)
        d.push_back((Mdot.log_M(k) - M.log_M(k)) / static_cast<double>(k));
    for (size_t i = d.size() / 2; i + 1 < d.size(); ++i) CHECK(d[i + 1] <= d[i] + 1e-9);

    CHECK_THROWS_AS(komatsu_refine(M, M, logspace(1e-4, 1e8, 400), 50), error);
}

TEST_CASE("concave descend: audited breakpoint construction") {
    const auto omega = wf_pow(0.5).fn();
    const auto h = [](double t) { return std::pow(t, 2.0 / 3.0); };
    const auto res = concave_descend(omega, h, 2.0, 3e14);
    REQUIRE(res.breakpoints.size() >= 8);

    // sigma continuous at every breakpoint
    for (size_t i = 1; i < res.breakpoints.size(); ++i) {
        const double t = res.breakpoints[i];
        const double below = res.sigma(t * (1.0 - 1e-11));
        const double at = res.sigma(t);
        CHECK(at == doctest::Approx(below).epsilon(1e-8));
    }

    // sigma increasing and sigma(t)/t non-increasing past t_1
    double prev = 0.0, prev_ratio = std::numeric_limits<double>::infinity();
    for (double t : logspace(res.breakpoints.front(), 3e14, 4000)) {
        const double s = res.sigma(t);
        CHECK(s >= prev - 1e-9 * std::max(1.0, prev));
        prev = s;
        const double ratio = s / t;
        CHECK(ratio <= prev_ratio * (1.0 + 1e-9));
        prev_ratio = ratio;
    }

    // omega / sigma and sigma / h decade trends toward 0
    const auto decade_max = [&](const std::function<double(double)>& f, double lo, double hi) {
        double m = 0.0;
        for (double t : logspace(lo, hi, 200)) m = std::max(m, f(t));
        return m;
    };
    const auto r1 = [&](double t) { return omega(t) / res.sigma(t); };
    const auto r2 = [&](double t) { return res.sigma(t) / h(t); };
    CHECK(decade_max(r1, 3e12, 3e14) <= 0.92 * decade_max(r1, 3e10, 3e12));
    CHECK(decade_max(r2, 3e12, 3e14) <= 0.92 * decade_max(r2, 3e10, 3e12));
    CHECK(r1(1e14) <= 0.25 * r1(10.0));
    CHECK(r2(1e14) <= 0.5);
}
