// Log-domain weight sequences M_k = k! m_k = mu_1 ... mu_k and the pointwise
// property checks and pairwise comparisons defined on them.  M_k itself is
// never materialized; every quantity lives in log scale so horizons are only
// limited by the index type.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ultra/common.hpp"

namespace ultra {

enum class Verdict {
    holds_at_horizon,
    fails,
    holds_symbolically,
    divergence_trend,
    convergence_trend,
    inconclusive,
    equivalent,
    preceq,
    triangle,
    not_preceq,
};

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds_at_horizon: return "holds-at-horizon";
        case Verdict::fails: return "fails";
        case Verdict::holds_symbolically: return "holds-symbolically";
        case Verdict::divergence_trend: return "divergence-trend";
        case Verdict::convergence_trend: return "convergence-trend";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::equivalent: return "equivalent";
        case Verdict::preceq: return "preceq";
        case Verdict::triangle: return "triangle";
        case Verdict::not_preceq: return "not-preceq";
    }
    return "?";
}

// Finite-horizon verdict plus the evidence that produced it.  A `fails`
// verdict always carries a witness index; `holds-at-horizon` never claims
// anything beyond the horizon it was computed at.
struct SequenceReport {
    std::string property;
    Verdict verdict = Verdict::inconclusive;
    std::optional<int64_t> witness_index;
    std::optional<double> fitted;
    std::vector<std::pair<double, double>> trend;
    std::string note;

    bool holds() const {
        return verdict == Verdict::holds_at_horizon || verdict == Verdict::holds_symbolically;
    }
};

class WeightSequence {
public:
    enum class Rep { expression, table, block };

    // Symbolic tags set by constructions; absent means "unknown, compute".
    struct Tags {
        std::optional<bool> log_convex;
        std::optional<bool> strongly_log_convex;
        std::optional<bool> quasianalytic;
        std::optional<bool> derivation_closed;
    };

    using Evaluator = std::function<double(int64_t)>;

    WeightSequence() = default;

    WeightSequence(std::string name, Rep rep, Evaluator log_M_fn, int64_t kmax, Tags tags = {})
        : name_(std::move(name)), rep_(rep), log_M_(std::move(log_M_fn)), kmax_(kmax), tags_(tags) {
        if (kmax_ < 1) throw error("WeightSequence: kmax must be >= 1");
        if (log_M_(0) != 0.0) throw error("WeightSequence '" + name_ + "': log M_0 must be 0");
        for (int64_t k : {int64_t{1}, kmax_ / 2 + 1, kmax_}) {
            if (!std::isfinite(log_M_(k)))
                throw error("WeightSequence '" + name_ + "': log M_k not finite at k=" + std::to_string(k));
        }
    }

    static WeightSequence from_table(std::string name, std::vector<double> log_M_values, Tags tags = {}) {
        if (log_M_values.size() < 2) throw error("from_table: need at least 2 entries");
        auto data = std::make_shared<std::vector<double>>(std::move(log_M_values));
        const int64_t kmax = static_cast<int64_t>(data->size()) - 1;
        return WeightSequence(std::move(name), Rep::table,
                              [data](int64_t k) { return (*data)[static_cast<size_t>(k)]; }, kmax, tags);
    }

    const std::string& name() const { return name_; }
    Rep rep() const { return rep_; }
    int64_t kmax() const { return kmax_; }
    const Tags& tags() const { return tags_; }
    Tags& tags() { return tags_; }

    double log_M(int64_t k) const {
        if (k < 0 || k > kmax_) throw error("log_M: index out of range");
        return k == 0 ? 0.0 : log_M_(k);
    }

    // log mu_k = log M_k - log M_{k-1}; mu_0 := 1.  Block representations
    // install a direct evaluator: differencing log M loses precision once the
    // values reach 1e10.
    double log_mu(int64_t k) const {
        if (k == 0) return 0.0;
        if (log_mu_) {
            if (k > kmax_) throw error("log_mu: index out of range");
            return log_mu_(k);
        }
        return log_M(k) - log_M(k - 1);
    }

    double log_m(int64_t k) const { return log_M(k) - log_factorial(k); }

    void set_mu_evaluator(Evaluator log_mu_fn) { log_mu_ = std::move(log_mu_fn); }

private:
    std::string name_;
    Rep rep_ = Rep::expression;
    Evaluator log_M_;
    Evaluator log_mu_;
    int64_t kmax_ = 0;
    Tags tags_;
};

// ---- catalog -------------------------------------------------------------

inline WeightSequence seq_gevrey(double s, int64_t kmax = 100000) {
    if (!(s >= 1.0)) throw error("seq_gevrey: requires s >= 1");
    WeightSequence::Tags tags;
    tags.log_convex = true;
    tags.strongly_log_convex = true;  // mu_k/k = k^{s-1}, non-decreasing
    char buf[32];
    std::snprintf(buf, sizeof buf, "gevrey(%g)", s);
    return WeightSequence(buf, WeightSequence::Rep::expression,
                          [s](int64_t k) { return s * log_factorial(k); }, kmax, tags);
}

inline WeightSequence seq_factorial(int64_t kmax = 100000) {
    WeightSequence::Tags tags;
    tags.log_convex = true;
    tags.strongly_log_convex = true;  // boundary case mu_k/k = 1
    return WeightSequence("factorial", WeightSequence::Rep::expression,
                          [](int64_t k) { return log_factorial(k); }, kmax, tags);
}

inline WeightSequence seq_qpower(double q, int64_t kmax = 100000) {
    if (!(q > 1.0)) throw error("seq_qpower: requires q > 1");
    WeightSequence::Tags tags;
    tags.log_convex = true;  // mu_k = q^{2k-1} increasing
    char buf[32];
    std::snprintf(buf, sizeof buf, "qpower(%g)", q);
    const double lq = std::log(q);
    return WeightSequence(buf, WeightSequence::Rep::expression,
                          [lq](int64_t k) { return static_cast<double>(k) * static_cast<double>(k) * lq; },
                          kmax, tags);
}

inline WeightSequence seq_bounded(int64_t kmax = 100000) {
    WeightSequence::Tags tags;
    tags.log_convex = true;
    return WeightSequence("bounded", WeightSequence::Rep::expression,
                          [](int64_t) { return 0.0; }, kmax, tags);
}

inline WeightSequence seq_builtin(const std::string& name, const std::vector<double>& params) {
    if (name == "gevrey") {
        if (params.size() != 1 || !(params[0] > 1.0)) throw error("gevrey: one parameter s > 1 required");
        return seq_gevrey(params[0]);
    }
    if (name == "factorial") return seq_factorial();
    if (name == "qpower") {
        if (params.size() != 1 || !(params[0] > 1.0)) throw error("qpower: one parameter q > 1 required");
        return seq_qpower(params[0]);
    }
    if (name == "bounded") return seq_bounded();
    throw error("seq_builtin: unknown tag '" + name + "'");
}

// ---- checks ---------------------------------------------------------------

namespace detail {
inline void require_horizon(const WeightSequence& w, int64_t horizon) {
    if (horizon < 2) throw error("horizon must be >= 2");
    if (horizon > w.kmax()) throw error("horizon exceeds kmax of '" + w.name() + "'");
}

inline std::vector<std::pair<double, double>> subsample(const std::vector<double>& v, int64_t k0, size_t cap = 64) {
    std::vector<std::pair<double, double>> out;
    const size_t n = v.size();
    const size_t step = std::max<size_t>(1, n / cap);
    for (size_t i = 0; i < n; i += step)
        out.emplace_back(static_cast<double>(k0 + static_cast<int64_t>(i)), v[i]);
    if ((n - 1) % step != 0) out.emplace_back(static_cast<double>(k0 + static_cast<int64_t>(n) - 1), v[n - 1]);
    return out;
}
} // namespace detail

// mu non-decreasing <=> M log-convex.
inline SequenceReport log_convex_check(const WeightSequence& w, int64_t horizon) {
    detail::require_horizon(w, horizon);
    SequenceReport r;
    r.property = "log-convex";
    std::vector<double> mus;
    mus.reserve(static_cast<size_t>(horizon));
    double prev = w.log_mu(1);
    mus.push_back(prev);
    for (int64_t k = 2; k <= horizon; ++k) {
        const double cur = w.log_mu(k);
        mus.push_back(cur);
        if (cur < prev - kLogTol) {
            r.verdict = Verdict::fails;
            r.witness_index = k;
            r.trend = detail::subsample(mus, 1);
            return r;
        }
        prev = cur;
    }
    r.verdict = Verdict::holds_at_horizon;
    r.trend = detail::subsample(mus, 1);
    return r;
}

// mu_k/k non-decreasing <=> m log-convex ("strongly log-convex" M).
inline SequenceReport strongly_log_convex_check(const WeightSequence& w, int64_t horizon) {
    detail::require_horizon(w, horizon);
    SequenceReport r;
    r.property = "strongly-log-convex";
    std::vector<double> vals;
    vals.reserve(static_cast<size_t>(horizon));
    double prev = w.log_mu(1) - std::log(1.0);
    vals.push_back(prev);
    for (int64_t k = 2; k <= horizon; ++k) {
        const double cur = w.log_mu(k) - std::log(static_cast<double>(k));
        vals.push_back(cur);
        if (cur < prev - kLogTol) {
            r.verdict = Verdict::fails;
            r.witness_index = k;
            r.trend = detail::subsample(vals, 1);
            return r;
        }
        prev = cur;
    }
    r.verdict = Verdict::holds_at_horizon;
    r.trend = detail::subsample(vals, 1);
    return r;
}

// Partial sums of sum 1/mu_k on a dyadic grid; quasianalytic means divergence.
inline SequenceReport quasianalytic_check(const WeightSequence& w, int64_t horizon) {
    detail::require_horizon(w, horizon);
    SequenceReport r;
    r.property = "quasianalytic";
    if (w.tags().quasianalytic.has_value()) {
        r.verdict = Verdict::holds_symbolically;
        r.note = *w.tags().quasianalytic ? "tag: quasianalytic" : "tag: non-quasianalytic";
        r.fitted = *w.tags().quasianalytic ? 1.0 : 0.0;
        return r;
    }
    std::vector<int64_t> grid;
    for (int64_t K = 1; K < horizon; K *= 2) grid.push_back(K);
    grid.push_back(horizon);
    std::vector<double> sums;
    double s = 0.0;
    int64_t k = 1;
    for (int64_t K : grid) {
        for (; k <= K; ++k) s += std::exp(-w.log_mu(k));
        sums.push_back(s);
        r.trend.emplace_back(static_cast<double>(K), s);
    }
    constexpr double eps = 1e-3;
    bool all_increments_big = true;
    bool geometric = sums.size() >= 4;
    for (size_t i = 1; i < sums.size(); ++i) {
        const double inc = sums[i] - sums[i - 1];
        if (inc < eps) all_increments_big = false;
    }
    for (size_t i = sums.size() >= 5 ? sums.size() - 4 : 1; i + 1 < sums.size(); ++i) {
        const double inc0 = sums[i] - sums[i - 1];
        const double inc1 = sums[i + 1] - sums[i];
        if (!(inc1 <= 0.8 * inc0 + 1e-15)) geometric = false;
    }
    r.fitted = s;
    if (all_increments_big) r.verdict = Verdict::divergence_trend;
    else if (geometric) r.verdict = Verdict::convergence_trend;
    else r.verdict = Verdict::inconclusive;
    return r;
}

// r_k = log mu_k - log M_k / k must stay bounded (moderate growth).
inline SequenceReport moderate_growth_check(const WeightSequence& w, int64_t horizon) {
    detail::require_horizon(w, horizon);
    SequenceReport r;
    r.property = "moderate-growth";
    std::vector<double> rk;
    rk.reserve(static_cast<size_t>(horizon));
    for (int64_t k = 1; k <= horizon; ++k)
        rk.push_back(w.log_mu(k) - w.log_M(k) / static_cast<double>(k));
    const TrendStat st = bounded_trend(rk);
    r.fitted = std::exp(st.sup);
    r.trend = detail::subsample(rk, 1);
    if (st.bounded) {
        r.verdict = Verdict::holds_at_horizon;
    } else {
        r.verdict = Verdict::fails;
        r.witness_index = horizon;
        char buf[64];
        std::snprintf(buf, sizeof buf, "tail growth %.3g", st.growth);
        r.note = buf;
    }
    return r;
}

// sup_k log(mu_{k+1}) / k bounded: (M_{k+1}/M_k)^{1/k} bounded.
inline SequenceReport derivation_closed_check(const WeightSequence& w, int64_t horizon) {
    detail::require_horizon(w, horizon);
    SequenceReport r;
    r.property = "derivation-closed";
    if (w.tags().derivation_closed.has_value()) {
        r.verdict = *w.tags().derivation_closed ? Verdict::holds_symbolically : Verdict::fails;
        r.note = "tag: derivation-closed";
        return r;
    }
    if (horizon + 1 > w.kmax()) throw error("derivation_closed_check: horizon+1 exceeds kmax");
    std::vector<double> vk;
    vk.reserve(static_cast<size_t>(horizon));
    for (int64_t k = 1; k <= horizon; ++k)
        vk.push_back(w.log_mu(k + 1) / static_cast<double>(k));
    const TrendStat st = bounded_trend(vk);
    r.fitted = st.sup;
    r.trend = detail::subsample(vk, 1);
    if (st.bounded) r.verdict = Verdict::holds_at_horizon;
    else {
        r.verdict = Verdict::fails;
        r.witness_index = horizon;
    }
    return r;
}

// d_k = (log M_k - log N_k)/k classifies M against N:
//   bounded above            -> M preceq N
//   tends to -infinity       -> M triangle N (strict inclusion)
//   bounded both directions  -> equivalent
inline SequenceReport relation_check(const WeightSequence& M, const WeightSequence& N, int64_t horizon) {
    detail::require_horizon(M, horizon);
    detail::require_horizon(N, horizon);
    SequenceReport r;
    r.property = "relation(" + M.name() + "," + N.name() + ")";
    std::vector<double> d, dn;
    d.reserve(static_cast<size_t>(horizon));
    for (int64_t k = 1; k <= horizon; ++k) {
        d.push_back((M.log_M(k) - N.log_M(k)) / static_cast<double>(k));
        dn.push_back(-d.back());
    }
    r.trend = detail::subsample(d, 1);
    const TrendStat up = bounded_trend(d);
    const TrendStat down = bounded_trend(dn);
    if (up.bounded && down.bounded) {
        r.verdict = Verdict::equivalent;
        r.fitted = std::max(std::abs(up.sup), std::abs(down.sup));
    } else if (decreasing_to_minus_inf(d)) {
        r.verdict = Verdict::triangle;
        r.fitted = d.back();
    } else if (up.bounded) {
        r.verdict = Verdict::preceq;
        r.fitted = up.sup;
    } else {
        r.verdict = Verdict::not_preceq;
        r.witness_index = horizon;
        r.fitted = up.sup;
    }
    return r;
}

} // namespace ultra
