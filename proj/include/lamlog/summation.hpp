#pragma once

#include <cmath>
#include <cstddef>

#include "types.hpp"

namespace lamlog {

// Neumaier-compensated accumulator, componentwise over re/im. The running
// compensation is folded into value() so intermediate reads are accurate.
class kahan_accumulator {
  public:
    void add(cplx x) {
        add_part(sr_, cr_, x.real());
        add_part(si_, ci_, x.imag());
    }
    void add(double x) { add_part(sr_, cr_, x); }
    cplx value() const { return {sr_ + cr_, si_ + ci_}; }
    double real() const { return sr_ + cr_; }

  private:
    static void add_part(double& s, double& c, double x) {
        double t = s + x;
        if (std::fabs(s) >= std::fabs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double sr_ = 0.0, cr_ = 0.0, si_ = 0.0, ci_ = 0.0;
};

// Sums term(0), term(1), ... until |term| stays below the tolerance
// threshold for three consecutive terms. Throws convergence_error with the
// partial value if the term budget runs out first.
template <class F>
sum_result compensated_sum(F&& term, const tolerance& tol) {
    validate(tol);
    kahan_accumulator acc;
    int quiet = 0;
    long n = 0;
    while (n < tol.max_terms) {
        cplx t = term(static_cast<std::size_t>(n));
        acc.add(t);
        ++n;
        double thr = std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value()));
        if (std::abs(t) < thr || t == cplx{}) {
            if (++quiet >= 3) return {acc.value(), n};
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("compensated_sum: term budget exhausted", acc.value(), n);
}

} // namespace lamlog
