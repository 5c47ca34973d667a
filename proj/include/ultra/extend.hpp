// Dynkin almost-analytic extension in one complex variable: regularized
// distance, the mollified Taylor-field construction, finite-difference
// Wirtinger derivative, decay audits against h_s(rho d(z,E)), Cauchy-Pompeiu
// restriction, and composition of extensions.
#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>

#include "ultra/assoc.hpp"
#include "ultra/jets.hpp"
#include "ultra/seq.hpp"

namespace ultra {

struct GridSpec {
    int nx = 0, ny = 0;
    int iy_zero = 0;  // row index of y = 0 (exact by construction)
    double x0 = 0.0, hx = 0.0, hy = 0.0;

    // Covers [xlo,xhi] x [ylo,yhi]; the y lattice is anchored so that y = 0 is
    // a row (the construction pins F = f there), robust to FP contraction.
    static GridSpec cover(double xlo, double xhi, double ylo, double yhi, int nx, int ny) {
        if (nx < 8 || ny < 8) throw error("GridSpec: degenerate grid");
        GridSpec g;
        g.nx = nx; g.ny = ny;
        g.hx = (xhi - xlo) / (nx - 1);
        g.hy = (yhi - ylo) / (ny - 1);
        g.x0 = xlo;
        g.iy_zero = static_cast<int>(std::lround(-ylo / g.hy));
        return g;
    }

    size_t size() const { return static_cast<size_t>(nx) * static_cast<size_t>(ny); }
    size_t idx(int ix, int iy) const { return static_cast<size_t>(iy) * nx + static_cast<size_t>(ix); }
    double x(int ix) const { return x0 + ix * hx; }
    double y(int iy) const { return (iy - iy_zero) * hy; }
    complexd z(int ix, int iy) const { return {x(ix), y(iy)}; }
};

struct ComplexGridField {
    GridSpec grid;
    CompactSet E = CompactSet::interval(0, 1);
    std::vector<complexd> F;
    std::vector<complexd> dbar;   // filled by dbar_field
    std::vector<double> dist;     // d(z, E)
    std::vector<double> delta;    // regularized distance, 0 on E
    std::vector<int> pdeg;        // truncation degree, -1 on E
    std::vector<double> zhat;     // nearest point of E
    std::string provenance;
    bool dbar_boundary_onesided = false;
};

namespace detail {
inline int env_threads() {
    if (const char* s = std::getenv("ULTRA_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Deterministic parallel row sweep: workers own disjoint row ranges and all
// per-node outputs land in preallocated slots.
inline void parallel_rows(int ny, const std::function<void(int)>& row_fn) {
    const int nthreads = std::min(env_threads(), ny);
    if (nthreads <= 1) {
        for (int iy = 0; iy < ny; ++iy) row_fn(iy);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                const int iy = next.fetch_add(1);
                if (iy >= ny) return;
                row_fn(iy);
            }
        });
    for (auto& th : pool) th.join();
}

// Rotationally invariant bump profile on the unit disk.
inline double bump(double r2) {
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

struct DiskRule {
    std::vector<double> ux, uy, w;
    double total = 0.0;

    explicit DiskRule(int n) {
        const GaussRule& g = gauss_legendre(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = g.x[static_cast<size_t>(i)], y = g.x[static_cast<size_t>(j)];
                const double r2 = x * x + y * y;
                const double wt = g.w[static_cast<size_t>(i)] * g.w[static_cast<size_t>(j)] * bump(r2);
                if (wt > 0.0) {
                    ux.push_back(x);
                    uy.push_back(y);
                    w.push_back(wt);
                    total += wt;
                }
            }
    }
};
} // namespace detail

// ---- regularized distance -----------------------------------------------------

struct RegDistAudit {
    double c1 = 0.0, c2 = 0.0;   // measured delta/d envelope
    double B1 = 0.0, B2 = 0.0;   // fitted first/second derivative constants
    int audited = 0;
};

// delta(z): average of d(., E) over a bump of radius c_mol d(z); the average
// of a 1-Lipschitz function over that ball stays within (1 +- c_mol) d(z).
inline double regularized_distance_at(const CompactSet& E, complexd z, double c_mol,
                                      const detail::DiskRule& rule) {
    const double d = E.distance(z);
    if (d == 0.0) return 0.0;
    const double rad = c_mol * d;
    double acc = 0.0;
    for (size_t q = 0; q < rule.w.size(); ++q)
        acc += rule.w[q] * E.distance(z + complexd(rad * rule.ux[q], rad * rule.uy[q]));
    return acc / rule.total;
}

struct RegDistField {
    std::vector<double> delta;
    RegDistAudit audit;
};

inline RegDistField regularized_distance(const CompactSet& E, const GridSpec& g, double c_mol,
                                         int quad_n = 8) {
    if (!(c_mol > 0.0 && c_mol <= 0.25)) throw error("regularized_distance: c_mol in (0, 1/4]");
    detail::DiskRule rule(quad_n);
    RegDistField out;
    out.delta.assign(g.size(), 0.0);
    detail::parallel_rows(g.ny, [&](int iy) {
        for (int ix = 0; ix < g.nx; ++ix)
            out.delta[g.idx(ix, iy)] = regularized_distance_at(E, g.z(ix, iy), c_mol, rule);
    });

    const double hmax = std::max(g.hx, g.hy);
    double c1 = std::numeric_limits<double>::infinity(), c2 = 0.0, B1 = 0.0, B2 = 0.0;
    int audited = 0;
    for (int iy = 1; iy + 1 < g.ny; ++iy)
        for (int ix = 1; ix + 1 < g.nx; ++ix) {
            const double d = E.distance(g.z(ix, iy));
            if (d < 3.0 * hmax) continue;  // mollification radius under-resolved by the audit stencil
            const double del = out.delta[g.idx(ix, iy)];
            c1 = std::min(c1, del / d);
            c2 = std::max(c2, del / d);
            const double dx = (out.delta[g.idx(ix + 1, iy)] - out.delta[g.idx(ix - 1, iy)]) / (2.0 * g.hx);
            const double dy = (out.delta[g.idx(ix, iy + 1)] - out.delta[g.idx(ix, iy - 1)]) / (2.0 * g.hy);
            B1 = std::max(B1, std::hypot(dx, dy));
            const double dxx = (out.delta[g.idx(ix + 1, iy)] - 2.0 * del + out.delta[g.idx(ix - 1, iy)]) / (g.hx * g.hx);
            const double dyy = (out.delta[g.idx(ix, iy + 1)] - 2.0 * del + out.delta[g.idx(ix, iy - 1)]) / (g.hy * g.hy);
            B2 = std::max(B2, std::max(std::abs(dxx), std::abs(dyy)) * d);
            ++audited;
        }
    if (audited == 0) throw error("regularized_distance: grid too coarse to audit");
    out.audit = {c1, c2, B1, B2, audited};
    return out;
}

// ---- Dynkin extension ----------------------------------------------------------

struct ExtensionConfig {
    double C0 = 1.0;           // jet bound scale (rho of the ultrajet norm)
    double c_mol = 0.25;       // regularized-distance mollification factor
    int quad_n = 12;           // tensor Gauss order for the Psi average
    int delta_quad_n = 8;
    int zhat_lattice = 8192;
    double collar_inner = -1.0;  // defaults: diam(E), 2 diam(E)
    double collar_outer = -1.0;
    double cap_flag_fraction = 0.05;
    bool check_preconditions = true;
};

struct DynkinResult {
    ComplexGridField field;
    double C1 = 1.0;             // Gamma comparison constant (fitted dyadic)
    double C2 = 1.0;             // shift constant of n_{j+1} <= C2^{j+1} s_j
    double cap_hit_fraction = 0.0;
    bool cap_flagged = false;
    SequenceReport norm_precheck;
};

namespace detail {
// smooth 1 -> 0 transition on [0, 1]
inline double smoothstep_c_inf(double v) {
    if (v <= 0.0) return 1.0;
    if (v >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - v));
    const double b = std::exp(-1.0 / v);
    return a / (a + b);
}

struct GammaUnderTable {
    // thr[k] = -(log m_{k+1} - log m_k); Gamma-under(t) = first k with thr[k] <= log t
    std::vector<double> thr;

    GammaUnderTable(const WeightSequence& w, int cap) {
        thr.reserve(static_cast<size_t>(cap) + 1);
        for (int k = 0; k <= cap; ++k)
            thr.push_back(-(w.log_m(k + 1) - w.log_m(k)));
    }

    int eval(double logt, int cap) const {
        for (int k = 0; k <= cap; ++k)
            if (thr[static_cast<size_t>(k)] <= logt + kLogTol) return k;
        return cap + 1;  // beyond cap: caller caps and records
    }
};
} // namespace detail

inline DynkinResult dynkin_extend(const UltraJet& jet, const WeightSequence& M,
                                  const WeightSequence& N, const WeightSequence& S,
                                  const ExtensionConfig& cfg, const GridSpec& g) {
    const CompactSet& E = jet.set();
    const int K = jet.order_cap();
    DynkinResult res;
    res.field.grid = g;
    res.field.E = E;
    res.field.provenance = "dynkin";

    // --- preconditions -------------------------------------------------------
    const double diam = E.diameter();
    if (cfg.check_preconditions) {
        // the probe range reaches 64x below the grid resolution so a large C1
        // cannot trivialize the comparison on a bounded grid
        bool found = false;
        const double t_lo =
            std::max(1e-9, std::min(8.0 * cfg.C0 * std::min(g.hx, g.hy) / 64.0, 1e-4));
        const std::vector<double> tg = logspace(t_lo, 8.0 * cfg.C0 * 4.0 * std::max(1.0, diam), 72);
        for (double C1 = 1.0; C1 <= 64.0 && !found; C1 *= 2.0) {
            bool ok = true;
            for (double t : tg) {
                const auto gu = gamma_under(M, t);
                if (!gu) continue;
                if (gamma_bar(N, C1 * t) > *gu) { ok = false; break; }
            }
            if (ok) { res.C1 = C1; found = true; }
        }
        if (!found) throw error("dynkin_extend: Gamma comparison (countcomp) failed for all dyadic C1");

        double c2 = 1.0;
        for (int j = 0; j + 1 <= K; ++j)
            c2 = std::max(c2, std::exp((N.log_m(j + 1) - S.log_m(j)) / (j + 1)));
        res.C2 = c2;

        res.norm_precheck = ultrajet_norm_check(jet, M, cfg.C0,
                                                SamplePlan{std::min(K, 24), 9, std::min(K - 1, 12)});
        if (res.norm_precheck.verdict == Verdict::fails)
            throw error("dynkin_extend: jet fails the ultrajet norm precheck at rho = C0");
    }

    // --- precomputations -------------------------------------------------------
    const double c2_dist = 1.0 + cfg.c_mol;
    const double r_inner = cfg.collar_inner > 0.0 ? cfg.collar_inner : diam;
    const double r_outer = cfg.collar_outer > 0.0 ? cfg.collar_outer : 2.0 * diam;
    const detail::DiskRule psi_rule(cfg.quad_n);
    const detail::DiskRule delta_rule(cfg.delta_quad_n);
    const detail::GammaUnderTable gut(M, K);

    // Taylor coefficient lattice over E: coeff[i][k] = f^(k)(p_i) / k!
    const int L = cfg.zhat_lattice;
    std::vector<double> lattice_pt(static_cast<size_t>(L));
    std::vector<std::vector<double>> coeff(static_cast<size_t>(L));
    {
        const double lo = E.lo(), hi = E.hi();
        for (int i = 0; i < L; ++i) {
            const double u = lo + (hi - lo) * i / (L - 1);
            const double p = E.nearest(u, 0.0);
            lattice_pt[static_cast<size_t>(i)] = p;
        }
        detail::parallel_rows(L, [&](int i) {
            auto& c = coeff[static_cast<size_t>(i)];
            c.resize(static_cast<size_t>(K) + 1);
            for (int k = 0; k <= K; ++k)
                c[static_cast<size_t>(k)] =
                    jet.deriv(k, lattice_pt[static_cast<size_t>(i)]) * std::exp(-log_factorial(k));
        });
    }
    const double lat_lo = E.lo(), lat_step = (E.hi() - E.lo()) / (L - 1);

    const auto lattice_index = [&](double xhat) {
        int i = static_cast<int>(std::lround((xhat - lat_lo) / lat_step));
        return std::min(std::max(i, 0), L - 1);
    };

    // G(zeta) = T^{p(zeta)}_{zhat(zeta)} f (zeta)
    const auto G_eval = [&](complexd zeta) -> complexd {
        const double dz = E.distance(zeta);
        if (dz == 0.0) return {jet.deriv(0, zeta.real()), 0.0};
        int p = gut.eval(std::log(8.0 * cfg.C0 * dz), K);
        if (p > K) p = K;
        const double xhat = E.nearest(zeta.real(), zeta.imag());
        const int i = lattice_index(xhat);
        const auto& c = coeff[static_cast<size_t>(i)];
        const complexd w = zeta - lattice_pt[static_cast<size_t>(i)];
        complexd acc(c[static_cast<size_t>(p)], 0.0);
        for (int k = p - 1; k >= 0; --k) acc = acc * w + c[static_cast<size_t>(k)];
        return acc;
    };

    // --- node sweep --------------------------------------------------------------
    const size_t nn = g.size();
    res.field.F.assign(nn, complexd(0.0, 0.0));
    res.field.dist.assign(nn, 0.0);
    res.field.delta.assign(nn, 0.0);
    res.field.pdeg.assign(nn, -1);
    res.field.zhat.assign(nn, 0.0);
    std::vector<unsigned char> cap_hit(nn, 0);

    detail::parallel_rows(g.ny, [&](int iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const size_t id = g.idx(ix, iy);
            const complexd z = g.z(ix, iy);
            const double d = E.distance(z);
            res.field.dist[id] = d;
            res.field.zhat[id] = E.nearest(z.real(), z.imag());
            if (d == 0.0) {
                res.field.F[id] = complexd(jet.deriv(0, z.real()), 0.0);  // F = f on E, exact
                continue;
            }
            if (d >= r_outer + 2.0 * std::max(g.hx, g.hy)) continue;  // collar kills it

            const double del = regularized_distance_at(E, z, cfg.c_mol, delta_rule);
            res.field.delta[id] = del;
            const int praw = gut.eval(std::log(8.0 * cfg.C0 * d), K);
            res.field.pdeg[id] = std::min(praw, K);
            if (praw > K) cap_hit[id] = 1;

            // averaging radius: delta/(2 c2) as constructed, clamped from
            // below so the grid resolves it (any radius <= d/2 keeps the
            // sample ball off E and inside the admissible shell)
            const double hmax = std::max(g.hx, g.hy);
            const double rad =
                std::min(0.5 * d, std::max(del / (2.0 * c2_dist), 3.0 * hmax));
            complexd acc(0.0, 0.0);
            for (size_t q = 0; q < psi_rule.w.size(); ++q) {
                const complexd zeta = z + complexd(rad * psi_rule.ux[q], rad * psi_rule.uy[q]);
                acc += psi_rule.w[q] * G_eval(zeta);
            }
            complexd val = acc / psi_rule.total;
            const double kappa = d <= r_inner ? 1.0
                                              : detail::smoothstep_c_inf((d - r_inner) / (r_outer - r_inner));
            res.field.F[id] = val * kappa;
        }
    });

    // cap accounting over near-E nodes
    size_t near = 0, hit = 0;
    for (size_t id = 0; id < nn; ++id) {
        if (res.field.dist[id] > 0.0 && res.field.dist[id] <= 0.1 * diam) {
            ++near;
            hit += cap_hit[id];
        }
    }
    res.cap_hit_fraction = near == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(near);
    res.cap_flagged = res.cap_hit_fraction > cfg.cap_flag_fraction;
    return res;
}

// ---- closed-form fields (for negative controls) -------------------------------

inline ComplexGridField field_from_function(const GridSpec& g, const CompactSet& E,
                                            const std::function<complexd(complexd)>& fn,
                                            std::string provenance = "closed-form") {
    ComplexGridField f;
    f.grid = g;
    f.E = E;
    f.provenance = std::move(provenance);
    f.F.assign(g.size(), complexd(0.0, 0.0));
    f.dist.assign(g.size(), 0.0);
    f.delta.assign(g.size(), 0.0);
    f.pdeg.assign(g.size(), -1);
    f.zhat.assign(g.size(), 0.0);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            const size_t id = g.idx(ix, iy);
            const complexd z = g.z(ix, iy);
            f.F[id] = fn(z);
            f.dist[id] = E.distance(z);
            f.zhat[id] = E.nearest(z.real(), z.imag());
        }
    return f;
}

// ---- Wirtinger derivative -------------------------------------------------------

// dbar F = (d/dx + i d/dy) F / 2 by centered differences: fourth order in the
// interior (the stencil annihilates holomorphic cubics exactly), second order
// on the first ring, one-sided at the boundary (flagged on the field).
inline void dbar_field(ComplexGridField& f) {
    const GridSpec& g = f.grid;
    if (g.nx < 5 || g.ny < 5) throw error("dbar_field: need at least 5 nodes per axis");
    f.dbar.assign(g.size(), complexd(0.0, 0.0));
    const complexd I(0.0, 1.0);
    detail::parallel_rows(g.ny, [&](int iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            complexd fx, fy;
            if (ix >= 2 && ix + 2 < g.nx) {
                fx = (-f.F[g.idx(ix + 2, iy)] + 8.0 * f.F[g.idx(ix + 1, iy)] -
                      8.0 * f.F[g.idx(ix - 1, iy)] + f.F[g.idx(ix - 2, iy)]) / (12.0 * g.hx);
            } else {
                const int ixm = std::max(ix - 1, 0), ixp = std::min(ix + 1, g.nx - 1);
                fx = (f.F[g.idx(ixp, iy)] - f.F[g.idx(ixm, iy)]) / ((ixp - ixm) * g.hx);
            }
            if (iy >= 2 && iy + 2 < g.ny) {
                fy = (-f.F[g.idx(ix, iy + 2)] + 8.0 * f.F[g.idx(ix, iy + 1)] -
                      8.0 * f.F[g.idx(ix, iy - 1)] + f.F[g.idx(ix, iy - 2)]) / (12.0 * g.hy);
            } else {
                const int iym = std::max(iy - 1, 0), iyp = std::min(iy + 1, g.ny - 1);
                fy = (f.F[g.idx(ix, iyp)] - f.F[g.idx(ix, iym)]) / ((iyp - iym) * g.hy);
            }
            f.dbar[g.idx(ix, iy)] = 0.5 * (fx + I * fy);
        }
    });
    f.dbar_boundary_onesided = true;
}

// ---- decay audit -----------------------------------------------------------------

struct DbarAudit {
    double log_A = kNegInf;               // fitted sup of log|dbar F| - log h(rho d)
    std::vector<std::pair<double, double>> decade_profile;  // (log10 d decade, log A)
    bool bounded = false;
    int audited = 0;
};

// Audit against a caller-supplied log h(t).  Excluded: the boundary ring and
// nodes with d < 10h, where the mollification radius (about 0.3 d) is not
// resolved by the grid and finite differences see discretization junk.  The
// profile is binned per half-decade of d.
inline DbarAudit verify_dbar_bound_fn(const ComplexGridField& f,
                                      const std::function<double(double)>& log_h_fn,
                                      double rho_eff) {
    if (f.dbar.empty()) throw error("verify_dbar_bound: dbar channel missing");
    const GridSpec& g = f.grid;
    const double hmax = std::max(g.hx, g.hy);
    std::vector<std::pair<int, double>> bins;  // half-decade of d -> max ratio
    DbarAudit out;
    int finite_ratios = 0;
    for (int iy = 2; iy + 2 < g.ny; ++iy)
        for (int ix = 2; ix + 2 < g.nx; ++ix) {
            const size_t id = g.idx(ix, iy);
            const double d = f.dist[id];
            if (d < 10.0 * hmax) continue;
            const double ad = std::abs(f.dbar[id]);
            const double lh = log_h_fn(rho_eff * d);
            if (!std::isfinite(lh)) continue;
            const double ratio = (ad > 0.0 ? std::log(ad) : -745.0) - lh;
            ++finite_ratios;
            out.log_A = std::max(out.log_A, ratio);
            const int bin = static_cast<int>(std::floor(2.0 * std::log10(d)));
            bool found = false;
            for (auto& [k, v] : bins)
                if (k == bin) { v = std::max(v, ratio); found = true; break; }
            if (!found) bins.emplace_back(bin, ratio);
            ++out.audited;
        }
    if (finite_ratios == 0) throw error("verify_dbar_bound: no audited node produced a finite ratio");
    std::sort(bins.begin(), bins.end());
    for (auto& [k, v] : bins) out.decade_profile.emplace_back(0.5 * static_cast<double>(k), v);
    // bounded: the smallest-d bin does not dominate the rest by more than 2x
    if (bins.size() == 1) out.bounded = true;
    else {
        double rest = kNegInf;
        for (size_t i = 1; i < bins.size(); ++i) rest = std::max(rest, bins[i].second);
        out.bounded = bins.front().second <= rest + std::log(2.0);
    }
    return out;
}

inline DbarAudit verify_dbar_bound(const ComplexGridField& f, const WeightSequence& S,
                                   double rho_eff) {
    return verify_dbar_bound_fn(f, [&S](double t) { return log_h(S, t); }, rho_eff);
}

// ---- Cauchy-Pompeiu restriction --------------------------------------------------

// f^(alpha)(x) = -(alpha!/pi) * integral of dbar F(zeta) / (zeta - x)^{alpha+1};
// compact support makes the boundary term vanish.  The 2h-disk around the
// singularity is dropped: its symmetric leading contribution integrates to
// zero and dbar F vanishes to high order at E anyway.
inline complexd pompeiu_restrict(const ComplexGridField& f, double x, int alpha) {
    if (f.dbar.empty()) throw error("pompeiu_restrict: dbar channel missing");
    const GridSpec& g = f.grid;
    const double h = std::max(g.hx, g.hy);
    if (!f.E.contains(x)) throw error("pompeiu_restrict: x not in E");
    double edge = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : f.E.intervals())
        if (x >= a && x <= b) edge = std::min(x - a, b - x);
    if (edge < 4.0 * h) throw error("pompeiu_restrict: singularity under-resolved near the set edge");

    const double excl = 2.0 * h;
    complexd acc(0.0, 0.0);
    for (int iy = 1; iy + 1 < g.ny; ++iy)
        for (int ix = 1; ix + 1 < g.nx; ++ix) {
            const size_t id = g.idx(ix, iy);
            const complexd zeta = g.z(ix, iy);
            const complexd dz = zeta - x;
            if (std::abs(dz) <= excl) continue;
            complexd pw = dz;
            for (int a = 0; a < alpha; ++a) pw *= dz;
            acc += f.dbar[id] / pw;
        }
    const double pi = std::acos(-1.0);
    return -std::exp(log_factorial(alpha)) / pi * acc * (g.hx * g.hy);
}

// ---- composition ------------------------------------------------------------------

struct CompositionResult {
    ComplexGridField field;
    double lipschitz = 0.0;  // measured Lipschitz estimate of G
    DbarAudit audit;
};

// H = F o G on G's grid by bilinear interpolation of F; the audit runs against
// max(h_F, h_G) at scale max(Lip(G) rho_F, rho_G).
inline CompositionResult compose_extensions(const ComplexGridField& F, const ComplexGridField& G,
                                            const CompactSet& E_inner, const WeightSequence& SF,
                                            const WeightSequence& SG, double rho_F, double rho_G,
                                            bool apply_lipschitz_scale = true) {
    const GridSpec& gf = F.grid;
    const GridSpec& gg = G.grid;

    // bicubic (Catmull-Rom) interpolation: reproduces cubic fields exactly,
    // which keeps polynomial compositions inside the exactness budget
    const auto interpF = [&](complexd w) -> complexd {
        const double fx = (w.real() - gf.x0) / gf.hx;
        const double fy = w.imag() / gf.hy + gf.iy_zero;
        const int ix = static_cast<int>(std::floor(fx));
        const int iy = static_cast<int>(std::floor(fy));
        if (ix < 1 || iy < 1 || ix + 2 >= gf.nx || iy + 2 >= gf.ny)
            throw error("compose_extensions: G escapes F's grid");
        const double ax = fx - ix, ay = fy - iy;
        const auto cr = [](complexd p0, complexd p1, complexd p2, complexd p3, double t) {
            return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                                  t * (3.0 * (p1 - p2) + p3 - p0)));
        };
        complexd rows[4];
        for (int r = -1; r <= 2; ++r)
            rows[r + 1] = cr(F.F[gf.idx(ix - 1, iy + r)], F.F[gf.idx(ix, iy + r)],
                             F.F[gf.idx(ix + 1, iy + r)], F.F[gf.idx(ix + 2, iy + r)], ax);
        return cr(rows[0], rows[1], rows[2], rows[3], ay);
    };

    CompositionResult out;
    out.field.grid = gg;
    out.field.E = E_inner;
    out.field.provenance = "composed";
    out.field.F.assign(gg.size(), complexd(0.0, 0.0));
    out.field.dist.assign(gg.size(), 0.0);
    out.field.delta.assign(gg.size(), 0.0);
    out.field.pdeg.assign(gg.size(), -1);
    out.field.zhat.assign(gg.size(), 0.0);

    double lip = 0.0;
    for (int iy = 1; iy + 1 < gg.ny; ++iy)
        for (int ix = 1; ix + 1 < gg.nx; ++ix) {
            const complexd gx = (G.F[gg.idx(ix + 1, iy)] - G.F[gg.idx(ix - 1, iy)]) / (2.0 * gg.hx);
            const complexd gy = (G.F[gg.idx(ix, iy + 1)] - G.F[gg.idx(ix, iy - 1)]) / (2.0 * gg.hy);
            lip = std::max(lip, std::hypot(std::abs(gx), std::abs(gy)));
        }
    out.lipschitz = lip;

    for (int iy = 0; iy < gg.ny; ++iy)
        for (int ix = 0; ix < gg.nx; ++ix) {
            const size_t id = gg.idx(ix, iy);
            out.field.F[id] = interpF(G.F[id]);
            out.field.dist[id] = E_inner.distance(gg.z(ix, iy));
            out.field.zhat[id] = E_inner.nearest(gg.x(ix), gg.y(iy));
        }
    dbar_field(out.field);

    const double scale = apply_lipschitz_scale ? std::max(lip * rho_F, rho_G) : std::max(rho_F, rho_G);
    const auto log_h_max = [&](double t) { return std::max(log_h(SF, t), log_h(SG, t)); };
    out.audit = verify_dbar_bound_fn(out.field, log_h_max, scale);
    return out;
}

} // namespace ultra
