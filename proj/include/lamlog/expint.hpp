#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "double_double.hpp"
#include "gamma.hpp"
#include "summation.hpp"
#include "types.hpp"

namespace lamlog {

namespace detail {

// E1(x) e^x for x >= 4 by modified Lentz on the continued fraction
// 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))); the exponentially scaled value never
// overflows.
inline double e1_scaled_cf(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int k = 1; k <= 300; ++k) {
        double a = -double(k) * double(k);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) return h;
    }
    throw convergence_error("e1: continued fraction stalled", cplx(h, 0.0), 300);
}

// Ei(x) e^{-x} for x >= 35: optimally truncated asymptotic sum k! / x^{k+1}
inline double ei_scaled_asym(double x) {
    double term = 1.0 / x, acc = 0.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 400; ++k) {
        if (std::fabs(term) >= prev) break;
        acc += term;
        prev = std::fabs(term);
        term *= double(k + 1) / x;
    }
    return acc;
}

} // namespace detail

// E1(x), x > 0
inline double e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("e1: requires x > 0");
    if (x >= 4.0) return detail::e1_scaled_cf(x) * std::exp(-x);
    // -gamma - log x - sum (-x)^k/(k k!)
    double acc = -ddc::euler.hi - std::log(x), term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / double(k);
        acc -= term / double(k);
        if (std::fabs(term) < 1e-17 * std::fabs(acc)) break;
    }
    return acc;
}

// Ei(x), x != 0; power series on (-4, 35) excluding 0 (no cancellation worse
// than ~3 digits there), scaled continued fraction / asymptotics outside
inline double ei(double x) {
    if (x == 0.0) throw std::domain_error("ei: singular at x = 0");
    if (x <= -4.0) return -detail::e1_scaled_cf(-x) * std::exp(x);
    if (x >= 35.0) return detail::ei_scaled_asym(x) * std::exp(x);
    double acc = ddc::euler.hi + std::log(std::fabs(x)), term = 1.0;
    for (int k = 1; k <= 160; ++k) {
        term *= x / double(k);
        acc += term / double(k);
        if (std::fabs(term) < 1e-17 * std::max(1.0, std::fabs(acc)) && k > 3) break;
    }
    return acc;
}

namespace detail {

// Shi series: sum_{k>=0} w^{2k+1}/((2k+1)(2k+1)!)
inline cdd shi_series(cdd w) {
    cdd w2 = w * w;
    cdd p = w;          // w^{2k+1}/(2k+1)!
    cdd acc = w;
    double peak = std::fabs(p.re.hi) + std::fabs(p.im.hi);
    for (int k = 1; k <= 300; ++k) {
        p = p * w2 / dd(double(2 * k) * double(2 * k + 1));
        acc = acc + p / dd(double(2 * k + 1));
        double mag = std::fabs(p.re.hi) + std::fabs(p.im.hi);
        peak = std::max(peak, mag);
        if (mag < 1e-45 * peak) break;
    }
    return acc;
}

// Chi series without the gamma + log w head: sum_{k>=1} w^{2k}/((2k)(2k)!)
inline cdd chi_series(cdd w) {
    cdd w2 = w * w;
    cdd p = ldexp(w2, -1); // w^{2k}/(2k)!
    cdd acc = ldexp(w2, -2);
    double peak = std::fabs(p.re.hi) + std::fabs(p.im.hi);
    for (int k = 2; k <= 300; ++k) {
        p = p * w2 / dd(double(2 * k - 1) * double(2 * k));
        acc = acc + p / dd(double(2 * k));
        double mag = std::fabs(p.re.hi) + std::fabs(p.im.hi);
        peak = std::max(peak, mag);
        if (mag < 1e-45 * peak) break;
    }
    return acc;
}

} // namespace detail

// hyperbolic sine and cosine integrals; the double-word core keeps the
// exponential cancellation (~ e^{|w|}) far below double noise on |w| <= 40
inline std::pair<cplx, cplx> shi_chi(cplx z) {
    if (z == cplx{}) throw std::domain_error("shi_chi: log singularity at 0");
    if (std::abs(z) > 40.0) throw std::domain_error("shi_chi: |z| > 40");
    cdd w{z};
    cdd shi = detail::shi_series(w);
    cdd chi = detail::chi_series(w) + cdd(ddc::euler) + log(w);
    return {to_cplx(shi), to_cplx(chi)};
}

// F(w) = sinh(w) Shi(w) - cosh(w) Chi(w), G(w) = cosh(w) Shi(w) - sinh(w) Chi(w).
// Both decay algebraically while every factor grows like e^{Re w}: the value
// must be assembled in extended precision or via exponential integrals.
//   F ~ -sum_{j odd} j! w^{-j-1}        G ~ +sum_{j even} j! w^{-j-1}
struct fg_value {
    cplx F, G;
};

namespace detail {

inline fg_value fg_taylor_dd(cplx z) {
    cdd w{z};
    cdd shi = shi_series(w);
    cdd chi = chi_series(w) + cdd(ddc::euler) + log(w);
    cdd ew = exp(w), emw = exp(-w);
    cdd ch = ldexp(ew + emw, -1), sh = ldexp(ew - emw, -1);
    return {to_cplx(sh * shi - ch * chi), to_cplx(ch * shi - sh * chi)};
}

inline fg_value fg_real_ei(double x) {
    double A = e1_scaled_cf(x);                       // e^x E1(x)
    double B = x >= 35.0 ? ei_scaled_asym(x) : std::exp(-x) * ei(x); // e^{-x} Ei(x)
    return {cplx(0.5 * (A - B), 0.0), cplx(0.5 * (A + B), 0.0)};
}

inline fg_value fg_asymptotic(cplx z) {
    cplx zi = 1.0 / z, z2 = zi * zi;
    cplx F{}, G = zi;
    cplx podd = z2, peven = zi * z2;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 170; j += 2) {
        cplx ft = -factorial(j) * podd;
        cplx gt = factorial(j + 1) * peven;
        double mag = std::abs(ft);
        if (mag >= prev) break;
        F += ft;
        G += gt;
        prev = mag;
        podd *= z2;
        peven *= z2;
    }
    return {F, G};
}

} // namespace detail

// stable evaluation policy: double-word Taylor while the cancellation budget
// holds, exponential-integral route on the real axis beyond it, optimally
// truncated asymptotics otherwise (error ~ e^{-Re w}, reached only when
// Re w > 25)
inline fg_value fg_pair(cplx w) {
    if (!(w.real() > 0.0)) throw std::domain_error("fg_pair: requires Re w > 0");
    if (w.imag() == 0.0 && w.real() > 25.0) return detail::fg_real_ei(w.real());
    if (w.real() <= 25.0 && std::abs(w) <= 90.0) return detail::fg_taylor_dd(w);
    return detail::fg_asymptotic(w);
}

} // namespace lamlog
