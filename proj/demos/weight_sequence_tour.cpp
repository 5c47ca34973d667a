// Tour of the sequence calculus: property checks, associated functions, and
// the counterexample constructions.
#include <cstdio>

#include "ultra/assoc.hpp"
#include "ultra/construct.hpp"
#include "ultra/seq.hpp"

using namespace ultra;

int main() {
    const WeightSequence g2 = seq_gevrey(2.0);
    const WeightSequence fact = seq_factorial();

    std::printf("gevrey(2): quasianalytic -> %s\n",
                to_string(quasianalytic_check(g2, 4096).verdict));
    std::printf("factorial: quasianalytic -> %s\n",
                to_string(quasianalytic_check(fact, 4096).verdict));
    std::printf("moderate growth of gevrey(2): %s (fitted %.3f)\n",
                to_string(moderate_growth_check(g2, 200).verdict),
                *moderate_growth_check(g2, 200).fitted);
    std::printf("factorial vs gevrey(2): %s\n",
                to_string(relation_check(fact, g2, 200).verdict));

    for (double t : {2.0, 0.5, 1.0 / 3.0})
        std::printf("h_m(gevrey2, %.3f): log h = %.6f, Gamma-bar = %lld\n", t, log_h(g2, t),
                    static_cast<long long>(gamma_bar(g2, t)));

    const QSequence q = build_quasianalytic_Q(3);
    std::printf("block sequence: alpha_2 = %lld, beta_2 = %lld, mass(A_1) = %.3f, mass(A_2) = %.4f\n",
                static_cast<long long>(q.alpha[2]), static_cast<long long>(q.beta[2]),
                q_block_quasianalytic_mass(q, 1), q_block_quasianalytic_mass(q, 2));
    return 0;
}
