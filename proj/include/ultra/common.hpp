// Shared numeric helpers: trend statistics, golden-section maximization,
// adaptive Simpson quadrature, Gauss-Legendre rules, grid builders.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ultra {

using std::int64_t;

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kLogTol = 1e-12;   // monotonicity tolerance in log domain
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_factorial(int64_t k) {
    return std::lgamma(static_cast<double>(k) + 1.0);
}

inline std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw error("linspace: need at least 2 points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

inline std::vector<double> logspace(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) throw error("logspace: bounds must be positive");
    std::vector<double> v = linspace(std::log(a), std::log(b), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

// Finite-horizon boundedness heuristic: compares the max over the last
// quarter of the samples with the max over the quarter before it.  A bounded
// (or convergent) sequence shows negligible growth, log-growth shows about
// log(4/3), linear growth explodes.
struct TrendStat {
    bool bounded = false;
    double growth = 0.0;   // last-quarter max minus previous-quarter max
    double sup = kNegInf;  // max over all samples
};

inline TrendStat bounded_trend(const std::vector<double>& v, double growth_tol = 0.1) {
    TrendStat s;
    if (v.size() < 8) throw error("bounded_trend: need at least 8 samples");
    const size_t n = v.size();
    const size_t q3 = n / 2, q4 = (3 * n) / 4;
    double m3 = kNegInf, m4 = kNegInf;
    for (size_t i = q3; i < q4; ++i) m3 = std::max(m3, v[i]);
    for (size_t i = q4; i < n; ++i) m4 = std::max(m4, v[i]);
    for (double x : v) s.sup = std::max(s.sup, x);
    s.growth = m4 - m3;
    s.bounded = s.growth <= growth_tol;
    return s;
}

// True when the tail decreases monotonically (up to kLogTol) and the last
// sample sits well below the mid sample: a "tends to -inf" trend.
inline bool decreasing_to_minus_inf(const std::vector<double>& v, double drop = 0.2) {
    if (v.size() < 8) throw error("decreasing_to_minus_inf: need at least 8 samples");
    const size_t n = v.size();
    for (size_t i = n / 2; i + 1 < n; ++i)
        if (v[i + 1] > v[i] + kLogTol) return false;
    return v[n - 1] <= v[n / 2] - drop && v[n - 1] < -0.1;
}

// Golden-section maximization of a unimodal function on [a, b].
// Fixed iteration count keeps results bit-reproducible.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double a, double b, int iters = 160) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double m,
                      double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double m, double b, double fa, double fm, double fb,
                                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, lm, m, fa, flm, fm);
    const double right = simpson(f, m, rm, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-10, int max_depth = 40) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(f, a, m, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

// Gauss-Legendre nodes/weights on [-1, 1], via Newton on the Legendre polynomial.
struct GaussRule {
    std::vector<double> x, w;
};

inline const GaussRule& gauss_legendre(int n) {
    static std::vector<GaussRule> cache(129);
    if (n < 1 || n > 128) throw error("gauss_legendre: order out of range");
    GaussRule& r = cache[static_cast<size_t>(n)];
    if (!r.x.empty()) return r;
    r.x.resize(n); r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::acos(-1.0) * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1; p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[static_cast<size_t>(i)] = x;
        r.w[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
inline double gauss_integrate(const std::function<double(double)>& f, double a,
                              double b, int n = 64) {
    const GaussRule& r = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.w[static_cast<size_t>(i)] * f(c + h * r.x[static_cast<size_t>(i)]);
    return s * h;
}

inline int sprint_g17(char* buf, size_t cap, double v) {
    return std::snprintf(buf, cap, "%.17g", v);
}

} // namespace ultra
