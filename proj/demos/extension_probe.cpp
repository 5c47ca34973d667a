// Builds a small almost-analytic extension, audits its dbar decay, recovers a
// derivative by the Cauchy-Pompeiu formula, and runs one wave-front probe.
#include <cstdio>

#include "ultra/extend.hpp"
#include "ultra/microlocal.hpp"

using namespace ultra;

int main() {
    const auto E = CompactSet::interval(-1.0, 1.0);
    const WeightSequence g2 = seq_gevrey(2.0);

    ExtensionConfig cfg;
    cfg.C0 = 4.0;
    // the domain must contain the support collar (d <= 2 diam E) for the
    // Pompeiu reconstruction to see all of dbar F
    const GridSpec grid = GridSpec::cover(-5.2, 5.2, -4.2, 4.2, 640, 520);
    auto ext = dynkin_extend(jet_lacunary(2.0, E), g2, g2, g2, cfg, grid);
    dbar_field(ext.field);

    const auto audit = verify_dbar_bound(ext.field, g2, 12.0 * cfg.C0 * ext.C1);
    std::printf("dbar audit: log A = %.3f, bounded = %s, %d nodes\n", audit.log_A,
                audit.bounded ? "yes" : "no", audit.audited);

    const complexd f0 = pompeiu_restrict(ext.field, 0.3, 0);
    std::printf("pompeiu f(0.3) = %.8f (oracle %.8f)\n", f0.real(),
                jet_lacunary(2.0, E).deriv(0, 0.3));

    const auto v = fourier_wf_probe(dist_catalog("heaviside", {0.0}), 0.0, 1,
                                    ProbeWeight::of(g2));
    std::printf("heaviside at (0,+): %s\n", to_string(v.verdict));
    return 0;
}
