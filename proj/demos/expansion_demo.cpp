// Shows the two expansions at work. First the divergent large-argument
// series for the log-weighted digamma: the error tracks the first omitted
// term until the optimal truncation point, after which adding terms hurts.
// Then the small-argument expansion of the Lambert sum, whose error drops by
// the predicted power of y with every extra term.

#include <cmath>
#include <cstdio>
#include <lamlog/lamlog.hpp>

using lamlog::cplx;

int main() {
    cplx z(8.0, 0.0);
    lamlog::cdd ref = lamlog::psi1_reference_dd(z);
    std::printf("large-argument expansion at z = 8 (reference from the defining series)\n");
    std::printf("%-4s %-14s %-14s\n", "K", "|error|", "next term");
    for (int k = 1; k <= 14; ++k) {
        lamlog::asym_value_dd a = lamlog::psi1_asymptotic_dd(z, k);
        std::printf("%-4d %-14.3e %-14.3e\n", k, double(abs(ref - a.value)),
                    a.next_term);
    }
    lamlog::asym_value_dd best = lamlog::psi1_asymptotic_auto_dd(z);
    std::printf("auto stop at K = %d, gap %.3e <= 2 x %.3e\n\n", best.terms,
                double(abs(ref - best.value)), best.next_term);

    std::printf("small-argument expansion of the log-weighted Lambert sum\n");
    std::printf("%-8s %-14s %-14s %-14s\n", "y", "K=1", "K=2", "K=3");
    for (int j = 0; j <= 4; ++j) {
        double y = 0.2 * std::pow(2.0, -j);
        lamlog::dd direct = lamlog::log_weighted_lambert_sum_dd(lamlog::dd(y), {});
        std::printf("%-8g", y);
        for (int k = 1; k <= 3; ++k) {
            lamlog::dd e = lamlog::small_y_expansion_dd(lamlog::dd(y), k);
            std::printf(" %-14.3e", std::fabs(double(direct - e)));
        }
        std::printf("\n");
    }
    std::printf("each halving of y divides the K-term error by about 2^(2K+1)\n");
    return 0;
}
