// The four explicit sequence/function constructions, in block representation
// with closed-form log prefix sums.  All free choices are resolved minimally
// (equality / smallest admissible integer) so the outputs are reproducible.
#pragma once

#include <memory>

#include "ultra/assoc.hpp"
#include "ultra/seq.hpp"

namespace ultra {

// ---- counterexample pair (mu/nu) -------------------------------------------
//
// a_{j+1} = max(a_j^2, a_j + 3), b_j = max(j^{a_{j+1}}, b_{j-1} + 1),
// c_j = (b_j/a_j) max{ a_{j+2}-2, (j^{a_{j+1}-1} prod_{l=a_j}^{a_{j+1}-2} l)^{1/(a_{j+1}-a_j-1)} }.
// mu_k = a_j b_j on [a_j, a_{j+1}-1), with the dip
// mu_{a_{j+1}-1} = j^{-a_{j+1}+1} (a_{j+1}-1) b_j; nu has c_j in place of b_j
// and shares the dip value.

struct ExamplePair {
    int J = 0;
    std::vector<int64_t> a;        // a[1..J+2]
    std::vector<double> log_b;     // log_b[1..J]
    std::vector<double> log_c;     // log_c[1..J]
    WeightSequence mu_side;        // M with ratios mu_k
    WeightSequence nu_side;        // N with ratios nu_k
};

namespace detail {
struct ExampleBlocks {
    std::vector<int64_t> a;
    std::vector<double> log_ratio_flat;   // log(a_j b_j) or log(a_j c_j), per block j
    std::vector<double> log_ratio_dip;    // log mu_{a_{j+1}-1}
    std::vector<double> prefix;           // prefix[j] = log M_{a_j - 1}; prefix[1] = log M_0 = 0
    int J = 0;

    double log_mu(int64_t k) const {
        if (k == 0) return 0.0;
        int j = J;
        while (j > 1 && k < a[static_cast<size_t>(j)]) --j;
        const int64_t next = a[static_cast<size_t>(j) + 1];
        return k == next - 1 ? log_ratio_dip[static_cast<size_t>(j)]
                             : log_ratio_flat[static_cast<size_t>(j)];
    }

    double log_M(int64_t k) const {
        if (k == 0) return 0.0;
        int j = J;
        while (j > 1 && k < a[static_cast<size_t>(j)]) --j;
        const int64_t aj = a[static_cast<size_t>(j)];
        const int64_t next = a[static_cast<size_t>(j) + 1];
        double s = prefix[static_cast<size_t>(j)];
        const int64_t flat = std::min(k, next - 2) - aj + 1;
        if (flat > 0) s += static_cast<double>(flat) * log_ratio_flat[static_cast<size_t>(j)];
        if (k == next - 1) s += log_ratio_dip[static_cast<size_t>(j)];
        return s;
    }
};
} // namespace detail

inline ExamplePair build_example_pair(int J) {
    if (J < 2) throw error("build_example_pair: J >= 2 required");
    const double log_cap = 700.0 * std::log(10.0);

    std::vector<int64_t> a(static_cast<size_t>(J) + 3, 0);
    a[1] = 1;
    for (int j = 1; j <= J + 1; ++j) {
        const __int128 sq = static_cast<__int128>(a[static_cast<size_t>(j)]) * a[static_cast<size_t>(j)];
        const __int128 nxt = std::max<__int128>(sq, a[static_cast<size_t>(j)] + 3);
        if (nxt > static_cast<__int128>(int64_t{4} * 1000000000 * 1000000000))
            throw error("build_example_pair: block boundaries exceed the index range");
        a[static_cast<size_t>(j) + 1] = static_cast<int64_t>(nxt);
    }

    std::vector<double> log_b(static_cast<size_t>(J) + 1, 0.0);
    log_b[1] = 0.0;  // b_1 = 1
    for (int j = 2; j <= J; ++j) {
        const double cand = static_cast<double>(a[static_cast<size_t>(j) + 1]) * std::log(static_cast<double>(j));
        log_b[static_cast<size_t>(j)] = std::max(cand, std::log(std::exp(log_b[static_cast<size_t>(j) - 1]) + 1.0));
        if (log_b[static_cast<size_t>(j)] > log_cap)
            throw error("build_example_pair: J too large, log b exceeds the binary64 range cap");
    }

    std::vector<double> log_c(static_cast<size_t>(J) + 1, 0.0);
    for (int j = 1; j <= J; ++j) {
        const double aj = static_cast<double>(a[static_cast<size_t>(j)]);
        const double anext = static_cast<double>(a[static_cast<size_t>(j) + 1]);
        const double anext2 = static_cast<double>(a[static_cast<size_t>(j) + 2]);
        const double prod = std::lgamma(anext - 1.0) - std::lgamma(aj);  // sum log l, l = a_j .. a_{j+1}-2
        const double root = ((anext - 1.0) * std::log(static_cast<double>(j)) + prod) / (anext - aj - 1.0);
        log_c[static_cast<size_t>(j)] =
            log_b[static_cast<size_t>(j)] - std::log(aj) + std::max(std::log(anext2 - 2.0), root);
        if (j > 1 && log_c[static_cast<size_t>(j)] <= log_c[static_cast<size_t>(j) - 1])
            throw error("build_example_pair: c_j failed to increase");
    }

    const auto make_blocks = [&](const std::vector<double>& log_w, bool nu) {
        auto blk = std::make_shared<detail::ExampleBlocks>();
        blk->J = J;
        blk->a = a;
        blk->log_ratio_flat.assign(static_cast<size_t>(J) + 1, 0.0);
        blk->log_ratio_dip.assign(static_cast<size_t>(J) + 1, 0.0);
        blk->prefix.assign(static_cast<size_t>(J) + 2, 0.0);
        for (int j = 1; j <= J; ++j) {
            const double lw = nu ? log_c[static_cast<size_t>(j)] : log_w[static_cast<size_t>(j)];
            blk->log_ratio_flat[static_cast<size_t>(j)] = std::log(static_cast<double>(a[static_cast<size_t>(j)])) + lw;
            // the dip value is shared by both sequences: j^{1-a_{j+1}} (a_{j+1}-1) b_j
            blk->log_ratio_dip[static_cast<size_t>(j)] =
                (1.0 - static_cast<double>(a[static_cast<size_t>(j) + 1])) * std::log(static_cast<double>(j)) +
                std::log(static_cast<double>(a[static_cast<size_t>(j) + 1] - 1)) + log_b[static_cast<size_t>(j)];
        }
        for (int j = 1; j <= J; ++j) {
            const int64_t len_flat = a[static_cast<size_t>(j) + 1] - 1 - a[static_cast<size_t>(j)];
            blk->prefix[static_cast<size_t>(j) + 1] = blk->prefix[static_cast<size_t>(j)] +
                static_cast<double>(len_flat) * blk->log_ratio_flat[static_cast<size_t>(j)] +
                blk->log_ratio_dip[static_cast<size_t>(j)];
        }
        return blk;
    };

    auto mu_blk = make_blocks(log_b, false);
    auto nu_blk = make_blocks(log_b, true);
    const int64_t kmax = a[static_cast<size_t>(J) + 1] - 1;

    ExamplePair out;
    out.J = J;
    out.a = a;
    out.log_b = log_b;
    out.log_c = log_c;
    out.mu_side = WeightSequence("example.mu", WeightSequence::Rep::block,
                                 [mu_blk](int64_t k) { return mu_blk->log_M(k); }, kmax);
    out.mu_side.set_mu_evaluator([mu_blk](int64_t k) { return mu_blk->log_mu(k); });
    out.nu_side = WeightSequence("example.nu", WeightSequence::Rep::block,
                                 [nu_blk](int64_t k) { return nu_blk->log_M(k); }, kmax);
    out.nu_side.set_mu_evaluator([nu_blk](int64_t k) { return nu_blk->log_mu(k); });
    return out;
}

// The failure witness of the ratio condition: the quantity
// [log mu_{a_j} - log a_j - log nu_k + log k] / k evaluated at k = a_{j+1}-1.
// It equals log j exactly, so it strictly increases across blocks.
inline double example_qai_surrogate(const ExamplePair& p, int j) {
    if (j < 1 || j > p.J) throw error("example_qai_surrogate: block out of range");
    const int64_t k = p.a[static_cast<size_t>(j) + 1] - 1;
    const double log_mu_aj = p.mu_side.log_mu(p.a[static_cast<size_t>(j)]);
    const double log_nu_k = p.nu_side.log_mu(k);
    return (log_mu_aj - std::log(static_cast<double>(p.a[static_cast<size_t>(j)])) - log_nu_k +
            std::log(static_cast<double>(k))) / static_cast<double>(k);
}

// ---- quasianalytic Q --------------------------------------------------------
//
// Q_k = k! prod rho_j with rho_k = tau_j on A_j = [alpha_j, beta_j) and e^k on
// B_j = [beta_j, alpha_{j+1}), where beta_j = ceil(e^{tau_j} alpha_j),
// alpha_{j+1} = (beta_j - 1) beta_j / 2, tau_{j+1} = e^{alpha_{j+1}}.
// tau_3 already overflows binary64, so the last A-block is left open and only
// its log value (= alpha_J) is stored.

struct QSequence {
    int J = 0;
    std::vector<int64_t> alpha;   // alpha[1..J]
    std::vector<int64_t> beta;    // beta[1..J-1] (beta_J only when representable)
    std::vector<double> log_tau;  // log_tau[1..J]
    bool last_block_open = false;
    WeightSequence seq;
};

namespace detail {
struct QBlocks {
    // flattened block list: [start, end) with either constant log rho or
    // log rho_k = k (ramp), plus log-rho prefix at each start.
    struct B { int64_t start; int64_t end; bool ramp; double log_tau; double prefix; };
    std::vector<B> blocks;

    static double tri_diff(int64_t hi, int64_t lo) {
        // sum_{k=lo}^{hi} k, exact in __int128
        const __int128 a = (static_cast<__int128>(hi) * (hi + 1)) / 2;
        const __int128 b = (static_cast<__int128>(lo) * (lo - 1)) / 2;
        return static_cast<double>(a - b);
    }

    double log_rho_prefix(int64_t k) const {  // sum_{i<=k} log rho_i
        size_t j = 0;
        while (j + 1 < blocks.size() && blocks[j + 1].start <= k) ++j;
        const B& b = blocks[j];
        if (b.ramp) return b.prefix + tri_diff(k, b.start);
        return b.prefix + static_cast<double>(k - b.start + 1) * b.log_tau;
    }

    double log_rho(int64_t k) const {
        size_t j = 0;
        while (j + 1 < blocks.size() && blocks[j + 1].start <= k) ++j;
        return blocks[j].ramp ? static_cast<double>(k) : blocks[j].log_tau;
    }
};
} // namespace detail

inline QSequence build_quasianalytic_Q(int J) {
    if (J < 2) throw error("build_quasianalytic_Q: J >= 2 required");
    QSequence out;
    out.J = J;
    out.alpha.assign(static_cast<size_t>(J) + 1, 0);
    out.beta.assign(static_cast<size_t>(J) + 1, 0);
    out.log_tau.assign(static_cast<size_t>(J) + 1, 0.0);
    out.alpha[1] = 1;
    out.log_tau[1] = 0.0;  // tau_1 = 1

    auto blocks = std::make_shared<detail::QBlocks>();
    double prefix = 0.0;
    bool open = false;
    int64_t kmax = 0;
    for (int j = 1; j <= J; ++j) {
        const int64_t aj = out.alpha[static_cast<size_t>(j)];
        const double lt = out.log_tau[static_cast<size_t>(j)];
        if (lt > 700.0 || j == J) {
            // beta_j not representable (or construction ends): leave A_j open
            blocks->blocks.push_back({aj, int64_t{4} * 1000000000 * 1000000000, false, lt, prefix});
            open = (lt > 700.0) || j == J;
            kmax = int64_t{4} * 1000000000 * 1000000000 - 1;
            out.J = j;
            break;
        }
        const double tau = std::exp(lt);
        const double bd = std::ceil(std::exp(tau) * static_cast<double>(aj));
        if (!(bd < 4.0e18)) {
            blocks->blocks.push_back({aj, int64_t{4} * 1000000000 * 1000000000, false, lt, prefix});
            open = true;
            kmax = int64_t{4} * 1000000000 * 1000000000 - 1;
            out.J = j;
            break;
        }
        const int64_t bj = static_cast<int64_t>(bd);
        out.beta[static_cast<size_t>(j)] = bj;
        blocks->blocks.push_back({aj, bj, false, lt, prefix});
        prefix += static_cast<double>(bj - aj) * lt;
        const int64_t anext = static_cast<int64_t>((static_cast<__int128>(bj - 1) * bj) / 2);
        if (bj < anext) {  // B_j = [beta_j, alpha_{j+1}) non-empty
            blocks->blocks.push_back({bj, anext, true, 0.0, prefix});
            prefix += detail::QBlocks::tri_diff(anext - 1, bj);
        }
        out.alpha[static_cast<size_t>(j) + 1] = anext;
        out.log_tau[static_cast<size_t>(j) + 1] = static_cast<double>(anext);  // tau_{j+1} = e^{alpha_{j+1}}
        kmax = anext - 1;
    }
    out.last_block_open = open;

    WeightSequence::Tags tags;
    tags.log_convex = true;
    tags.strongly_log_convex = true;
    tags.quasianalytic = true;
    tags.derivation_closed = true;  // rho_k <= e^k by construction
    out.seq = WeightSequence("qseq", WeightSequence::Rep::block,
                             [blocks](int64_t k) {
                                 if (k == 0) return 0.0;
                                 return log_factorial(k) + blocks->log_rho_prefix(k);
                             },
                             kmax, tags);
    // mu_k = k rho_k, evaluated from the block data directly
    out.seq.set_mu_evaluator([blocks](int64_t k) {
        return std::log(static_cast<double>(k)) + blocks->log_rho(k);
    });
    return out;
}

inline double q_log_rho(const QSequence& q, int64_t k) {
    if (k < 1) throw error("q_log_rho: k >= 1 required");
    return q.seq.log_mu(k) - std::log(static_cast<double>(k));
}

// Per-block quasianalyticity mass: sum_{k in A_j} 1/(k rho_k)
// = (H(beta_j - 1) - H(alpha_j - 1)) / tau_j, the harmonic closed form.
inline double q_block_quasianalytic_mass(const QSequence& q, int j) {
    if (j < 1 || j >= q.J + 1 || q.beta[static_cast<size_t>(j)] == 0)
        throw error("q_block_quasianalytic_mass: block not closed");
    const auto harmonic = [](int64_t n) {
        if (n <= 0) return 0.0;
        if (n < 32) {
            double s = 0.0;
            for (int64_t k = 1; k <= n; ++k) s += 1.0 / static_cast<double>(k);
            return s;
        }
        const double x = static_cast<double>(n);
        return std::log(x) + 0.57721566490153286060651209 + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x);
    };
    const double mass = harmonic(q.beta[static_cast<size_t>(j)] - 1) - harmonic(q.alpha[static_cast<size_t>(j)] - 1);
    return mass * std::exp(-q.log_tau[static_cast<size_t>(j)]);
}

// Gevrey-escape margin: (1/alpha_{j+1}) log q_{alpha_{j+1}} - ((alpha_{j+1}-1)/2 - 1).
// The B_j ramp cancels the right-hand side exactly (integer identity), so the
// margin is the A-block mass divided by alpha_{j+1}; also returns whether the
// integer cancellation held exactly.
struct QEscape {
    double margin = 0.0;
    bool exact_cancellation = false;
};

inline QEscape q_gevrey_escape(const QSequence& q, int j) {
    if (j < 1 || j + 1 > q.J || q.alpha[static_cast<size_t>(j) + 1] == 0)
        throw error("q_gevrey_escape: alpha_{j+1} not available");
    const int64_t alpha_next = q.alpha[static_cast<size_t>(j) + 1];
    // exact integer identity: sum_{k in B_j} k = alpha(alpha-1)/2 - alpha
    QEscape out;
    const int64_t beta_j = q.beta[static_cast<size_t>(j)];
    const __int128 bsum = (static_cast<__int128>(alpha_next - 1) * alpha_next) / 2 -
                          (static_cast<__int128>(beta_j - 1) * beta_j) / 2;
    const __int128 rhs = (static_cast<__int128>(alpha_next) * (alpha_next - 1)) / 2 -
                         static_cast<__int128>(alpha_next);
    out.exact_cancellation = (bsum == rhs);
    // margin = (sum over A-blocks up to k = alpha_{j+1} of log rho) / alpha_{j+1}
    double a_mass = 0.0;
    for (int i = 1; i <= j; ++i)
        a_mass += static_cast<double>(q.beta[static_cast<size_t>(i)] - q.alpha[static_cast<size_t>(i)]) *
                  q.log_tau[static_cast<size_t>(i)];
    a_mass += q.log_tau[static_cast<size_t>(j) + 1];  // the single term k = alpha_{j+1}
    out.margin = a_mass / static_cast<double>(alpha_next);
    return out;
}

// ---- Komatsu refinement -----------------------------------------------------
//
// Lbar_k = inf_rho C_rho rho^k M_k with C_rho = sup_k L_k / (rho^k M_k), then
// mudot_k / k = max{ sqrt(mu_k/k), max_{j<=k} lambdabar_j / j }.

struct KomatsuResult {
    WeightSequence refined;          // Mdot
    std::vector<double> log_Lbar;    // per k <= horizon
    std::vector<double> log_C_rho;   // per rho grid point
};

inline KomatsuResult komatsu_refine(const WeightSequence& L, const WeightSequence& M,
                                    const std::vector<double>& rho_grid, int64_t horizon) {
    if (rho_grid.size() < 8) throw error("komatsu_refine: rho grid too small");
    if (horizon > L.kmax() || horizon > M.kmax()) throw error("komatsu_refine: horizon exceeds kmax");
    const bool slc = M.tags().strongly_log_convex.value_or(false) ||
                     strongly_log_convex_check(M, horizon).holds();
    if (!slc) throw error("komatsu_refine: M must be strongly log-convex");
    if (relation_check(L, M, horizon).verdict != Verdict::triangle)
        throw error("komatsu_refine: L triangle M required");

    KomatsuResult out;
    out.log_C_rho.reserve(rho_grid.size());
    for (double rho : rho_grid) {
        const double lr = std::log(rho);
        double c = 0.0;  // k = 0 term
        for (int64_t k = 1; k <= horizon; ++k)
            c = std::max(c, L.log_M(k) - static_cast<double>(k) * lr - M.log_M(k));
        out.log_C_rho.push_back(c);
    }

    out.log_Lbar.assign(static_cast<size_t>(horizon) + 1, 0.0);
    for (int64_t k = 1; k <= horizon; ++k) {
        double best = std::numeric_limits<double>::infinity();
        size_t arg = 0;
        for (size_t i = 0; i < rho_grid.size(); ++i) {
            const double v = out.log_C_rho[i] + static_cast<double>(k) * std::log(rho_grid[i]) + M.log_M(k);
            if (v < best) { best = v; arg = i; }
        }
        if (arg == 0 || arg + 1 == rho_grid.size())
            throw error("komatsu_refine: rho grid too narrow (argmin at boundary, k=" + std::to_string(k) + ")");
        out.log_Lbar[static_cast<size_t>(k)] = best;
    }

    std::vector<double> log_Mdot(static_cast<size_t>(horizon) + 1, 0.0);
    double running_ratio = kNegInf;  // max_{j<=k} log(lambdabar_j / j)
    double acc = 0.0;
    for (int64_t k = 1; k <= horizon; ++k) {
        const double log_lambdabar = out.log_Lbar[static_cast<size_t>(k)] - out.log_Lbar[static_cast<size_t>(k) - 1];
        const double logk = std::log(static_cast<double>(k));
        running_ratio = std::max(running_ratio, log_lambdabar - logk);
        const double log_mudot = logk + std::max(0.5 * (M.log_mu(k) - logk), running_ratio);
        acc += log_mudot;
        log_Mdot[static_cast<size_t>(k)] = acc;
    }
    WeightSequence::Tags tags;
    tags.log_convex = true;
    tags.strongly_log_convex = true;  // mudot_k / k is a running max
    out.refined = WeightSequence::from_table(M.name() + ".komatsu", std::move(log_Mdot), tags);
    return out;
}

// ---- concave descend --------------------------------------------------------
//
// omega_1(t) = t sup_{s>=t} omega(s)/s; breakpoints alternate between the
// continuity root j omega_1(t_j)/t_j * t = (j+2) omega_1(t) (odd j) and the
// first grid point past which max(omega_1/t, omega_1/h) <= 1/((j+1)(j+3))
// holds to the end of the range (even j); sigma is j omega_1(t) on odd pieces
// and linear on even pieces.

struct ConcaveDescendResult {
    std::vector<double> breakpoints;  // t_1 < t_2 < ...; sigma piece j lives on [t_{j-1}, t_j)
    std::function<double(double)> omega1;
    std::function<double(double)> sigma;
    bool range_exhausted = false;
    std::string note;
};

inline ConcaveDescendResult concave_descend(const std::function<double(double)>& omega,
                                            const std::function<double(double)>& h,
                                            double t_lo, double t_hi, int grid_n = 4096) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw error("concave_descend: bad range");
    auto grid = std::make_shared<std::vector<double>>(logspace(t_lo, t_hi, grid_n));
    const int n = grid_n;

    // omega(t)/h(t) -> 0 trend on the range
    {
        const double early = omega((*grid)[static_cast<size_t>(n / 8)]) / h((*grid)[static_cast<size_t>(n / 8)]);
        const double late = omega(grid->back()) / h(grid->back());
        if (!(late <= 0.5 * early))
            throw error("concave_descend: omega/h does not tend to 0 on the range");
    }

    auto suffix_ratio = std::make_shared<std::vector<double>>(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const double r = omega((*grid)[static_cast<size_t>(i)]) / (*grid)[static_cast<size_t>(i)];
        (*suffix_ratio)[static_cast<size_t>(i)] =
            i + 1 < n ? std::max(r, (*suffix_ratio)[static_cast<size_t>(i) + 1]) : r;
    }

    const double t1 = t_lo;
    auto omega1 = [grid, suffix_ratio, omega, t1, n](double t) -> double {
        if (t <= 0.0) return 0.0;
        if (t < t1) {
            const double r = std::max(omega(t1) / t1, (*suffix_ratio)[0]);
            return t * r;  // linear interpolation down to (0, 0)
        }
        const auto it = std::lower_bound(grid->begin(), grid->end(), t);
        const size_t idx = static_cast<size_t>(std::min<std::ptrdiff_t>(it - grid->begin(), n - 1));
        return t * std::max(omega(t) / t, (*suffix_ratio)[idx]);
    };

    // suffix max of max(omega1/t, omega1/h) over grid nodes
    std::vector<double> qsuf(static_cast<size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        const double t = (*grid)[static_cast<size_t>(i)];
        const double o1 = omega1(t);
        const double q = std::max(o1 / t, o1 / h(t));
        qsuf[static_cast<size_t>(i)] = i + 1 < n ? std::max(q, qsuf[static_cast<size_t>(i) + 1]) : q;
    }

    ConcaveDescendResult res;
    res.breakpoints.push_back(t1);
    bool exhausted = false;
    for (int j = 1; j < 200 && !exhausted; ++j) {
        const double tj = res.breakpoints.back();
        if (j % 2 == 1) {
            // smallest root t > t_j of  j * (omega1(t_j)/t_j) * t = (j+2) * omega1(t)
            const double slope = static_cast<double>(j) * omega1(tj) / tj;
            const auto F = [&](double t) { return slope * t - (static_cast<double>(j) + 2.0) * omega1(t); };
            double lo = tj, hi = -1.0;
            for (int i = 0; i < n; ++i) {
                const double t = (*grid)[static_cast<size_t>(i)];
                if (t <= tj) continue;
                if (F(t) >= 0.0) { hi = t; break; }
                lo = t;
            }
            if (hi < 0.0) {
                res.note += "no continuity root before range end; ";
                exhausted = true;
                break;
            }
            for (int it = 0; it < 120; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (F(mid) >= 0.0) hi = mid; else lo = mid;
                if ((hi - lo) <= 1e-9 * hi) break;
            }
            res.breakpoints.push_back(hi);
        } else {
            const double th = 1.0 / ((static_cast<double>(j) + 1.0) * (static_cast<double>(j) + 3.0));
            double found = -1.0;
            for (int i = 0; i < n; ++i) {
                const double t = (*grid)[static_cast<size_t>(i)];
                if (t <= tj) continue;
                if (qsuf[static_cast<size_t>(i)] <= th) { found = t; break; }
            }
            if (found < 0.0) {
                res.note += "threshold not reached before range end; ";
                exhausted = true;
                break;
            }
            res.breakpoints.push_back(found);
        }
    }
    res.range_exhausted = exhausted;
    res.note += "tail verified to range end";

    auto bps = std::make_shared<std::vector<double>>(res.breakpoints);
    res.omega1 = omega1;
    res.sigma = [bps, omega1](double t) -> double {
        // piece j >= 1 covers [t_{j-1}, t_j) with t_0 = 0; bps stores t_1, t_2, ...
        size_t cnt = 0;
        while (cnt < bps->size() && t >= (*bps)[cnt]) ++cnt;
        const size_t j = cnt + 1;  // beyond the last breakpoint the final piece extends
        if (j % 2 == 1) return static_cast<double>(j) * omega1(t);
        const double tprev = (*bps)[j - 2];
        return (static_cast<double>(j) - 1.0) * t * omega1(tprev) / tprev;
    };
    return res;
}

} // namespace ultra
