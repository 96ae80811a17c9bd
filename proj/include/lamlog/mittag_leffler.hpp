#pragma once

#include <cmath>
#include <stdexcept>

#include "constants.hpp"
#include "double_double.hpp"
#include "gamma.hpp"
#include "quadrature.hpp"
#include "summation.hpp"
#include "types.hpp"

namespace lamlog {

// 1F2-type confluent series sum_k (a)_k / ((b)_k (c)_k) z^k / k! carried in
// complex double-word precision: downstream identities difference it against
// exponentially larger terms.
inline cdd hyp1f2(cplx a, cplx b, cplx c, cplx z, const tolerance& tol) {
    validate(tol);
    if (is_nonpositive_integer(b) || is_nonpositive_integer(c))
        throw std::domain_error("hyp1f2: lower parameter is a nonpositive integer");
    cdd term{cplx(1.0, 0.0)};
    cdd acc = term;
    cdd zz{z};
    double peak = 1.0;
    for (long k = 0; k < tol.max_terms; ++k) {
        double kk = double(k);
        cdd num = cdd(a + cplx(kk, 0.0));
        cdd den = cdd(b + cplx(kk, 0.0)) * cdd(c + cplx(kk, 0.0)) * dd(kk + 1.0);
        term = term * num * zz / den;
        acc = acc + term;
        double mag = std::fabs(term.re.hi) + std::fabs(term.im.hi);
        peak = std::max(peak, mag);
        if (mag < 1e-40 * peak && k > 2) return acc;
    }
    throw convergence_error("hyp1f2: term budget exhausted", to_cplx(acc), tol.max_terms);
}

// E_{2,b}(z) = sum_k z^k / Gamma(2k + b) for real b; reciprocal-Gamma zeros
// at nonpositive integer arguments are honored exactly.
inline cplx mittag_leffler_e2b(cplx z, double b, const tolerance& tol) {
    validate(tol);
    auto nonpos_int = [](double x) { return x <= 0.0 && x == std::floor(x); };
    long k0 = 0;
    while (nonpos_int(2.0 * k0 + b)) ++k0;
    double r = std::tgamma(2.0 * k0 + b);
    cplx p = 1.0;
    for (long i = 0; i < k0; ++i) p *= z;
    kahan_accumulator acc;
    double peak = 0.0;
    for (long k = k0; k < std::min<long>(tol.max_terms, 20000); ++k) {
        cplx term = p / r;
        acc.add(term);
        double mag = std::abs(term);
        peak = std::max(peak, mag);
        if (mag < 1e-18 * peak && mag < std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())) &&
            k > k0 + 2)
            return acc.value();
        p *= z;
        r *= (2.0 * k + b) * (2.0 * k + b + 1.0);
    }
    throw convergence_error("mittag_leffler_e2b: term budget exhausted", acc.value(),
                            tol.max_terms);
}

enum class d2b_mode { series, integral };

// second parameter-derivative of E_{2,b}(w^2) at b = 1, two independent
// routes:
//   series:   sum_k ( psi(2k+1)^2 - psi'(2k+1) ) w^{2k} / (2k)!
//   integral: log^2(w) cosh(w) + 2 Int_0^inf u cos(u) log(u) / (u^2+w^2) du
// the integral route needs Re w > 0; at w = 0 both collapse to
// gamma^2 - pi^2/6
inline cplx ml_d2b_at1(cplx w, d2b_mode mode, const tolerance& tol, long* evals = nullptr) {
    validate(tol);
    if (evals) *evals = 0;
    if (mode == d2b_mode::series) {
        cplx w2 = w * w;
        cplx p = 1.0;
        kahan_accumulator acc;
        double peak = 0.0;
        for (int k = 0; k <= 800; ++k) {
            double psi_v = harmonic(2 * k) - ddc::euler.hi;
            double psi_p = ddc::zeta_two.hi - harmonic2(2 * k);
            cplx term = (psi_v * psi_v - psi_p) * p;
            acc.add(term);
            if (evals) ++*evals;
            double mag = std::abs(term);
            peak = std::max(peak, mag);
            if (mag < 1e-18 * peak &&
                mag < std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())) && k > 2)
                return acc.value();
            p *= w2 / (double(2 * k + 1) * double(2 * k + 2));
        }
        throw convergence_error("ml_d2b_at1: series budget exhausted", acc.value(), 800);
    }
    if (!(w.real() > 0.0))
        throw std::domain_error("ml_d2b_at1: integral route requires Re w > 0");
    cplx w2 = w * w;
    auto f = [w2](double u) -> cplx {
        if (u == 0.0) return {};
        return u * std::cos(u) * std::log(u) / (u * u + w2);
    };
    quad_result q = integrate_oscillatory(f, 0.0, ddc::pi.hi, tol);
    if (evals) *evals = q.n_evals;
    cplx lw = std::log(w);
    return lw * lw * std::cosh(w) + 2.0 * q.value;
}

} // namespace lamlog
