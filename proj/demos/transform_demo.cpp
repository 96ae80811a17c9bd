// Evaluates the log-weighted Lambert series both directly and through its
// digamma-bracket transformation on a small grid, then does the same for the
// reciprocal sum. The point of the transformation: the direct series needs
// O(1/y) terms as y -> 0 while the bracket side keeps its cost flat.

#include <cstdio>
#include <lamlog/lamlog.hpp>

using lamlog::cplx;

int main() {
    lamlog::tolerance tol;
    tol.abs_tol = 0.0;
    tol.rel_tol = 1e-10;

    std::printf("log-weighted sum  sum_n log(n)/(e^{ny}-1)  vs transformed side\n");
    std::printf("%-12s %-22s %-22s %-10s %s\n", "y", "direct", "transformed", "rel err",
                "terms");
    for (cplx y : {cplx(2.0, 0.0), cplx(0.5, 0.0), cplx(0.1, 0.0), cplx(0.3, 0.2)}) {
        lamlog::identity_report r = lamlog::check_log_lambert(y, tol);
        char ylab[32];
        std::snprintf(ylab, sizeof ylab, "%g%+gi", y.real(), y.imag());
        std::printf("%-12s %-22.15g %-22.15g %-10.2e %ld\n", ylab, r.lhs.real(),
                    r.rhs.real(), r.rel_err, r.terms);
    }

    std::printf("\nreciprocal sum  sum_n 1/(e^{ny}-1)  via the digamma bracket\n");
    std::printf("%-12s %-22s %-22s %s\n", "y", "direct", "transformed", "abs err");
    for (double y : {1.0, 3.0, 6.2831853071795865}) {
        lamlog::identity_report r = lamlog::check_reciprocal_lambert(cplx(y, 0.0), tol);
        std::printf("%-12g %-22.15g %-22.15g %.2e\n", y, r.lhs.real(), r.rhs.real(),
                    r.abs_err);
    }
    return 0;
}
