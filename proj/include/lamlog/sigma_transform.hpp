#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arith.hpp"
#include "constants.hpp"
#include "double_double.hpp"
#include "gamma.hpp"
#include "lambert.hpp"
#include "summation.hpp"
#include "types.hpp"
#include "zeta.hpp"

namespace lamlog {

namespace detail {

inline bool is_even_integer(cplx a) {
    return a.imag() == 0.0 && a.real() == std::floor(a.real()) &&
           std::fmod(a.real(), 2.0) == 0.0;
}

inline cplx recip_gamma(cplx z) {
    if (is_nonpositive_integer(z)) return {};
    return std::exp(-log_gamma(z));
}

// reciprocal-Gamma seed and the per-step rational factor of the even series
// sum_k X^{2k} / Gamma(1 - a + 2k), carried in double-word components. For
// real a the seed is full double-word; complex a costs the binary64 seed its
// extra word, shrinking the usable cancellation budget.
struct bracket_seed {
    cdd r0;
    long k0 = 0;
    double digit_budget = 0.0;
};

inline bracket_seed make_bracket_seed(cplx a) {
    bracket_seed s;
    if (a.imag() == 0.0) {
        dd one_minus_a = dd(1.0) - dd(a.real());
        long k0 = 0;
        while (is_nonpositive_integer(cplx(one_minus_a.hi + 2.0 * k0, 0.0))) ++k0;
        s.r0 = cdd(dd(1.0) / tgamma(one_minus_a + dd(2.0 * k0)));
        s.k0 = k0;
        s.digit_budget = 30.0;
        return s;
    }
    s.r0 = cdd(recip_gamma(cplx(1.0, 0.0) - a));
    s.k0 = 0;
    s.digit_budget = 12.0;
    return s;
}

} // namespace detail

// single term of the transformed side: (2 pi n)^{-a} ( E(X^2) - X^a cosh X )
// with X = 4 pi^2 n / y and E the even reciprocal-Gamma series. The two
// pieces agree to ~ e^{Re X}, so everything is carried in double-word
// complex arithmetic; err_model estimates the surviving rounding error.
inline cplx divisor_power_bracket(cplx a, cplx y, long n, const detail::bracket_seed& seed,
                                  double* err_model = nullptr) {
    dd four_pi2 = ddc::two_pi * ddc::two_pi;
    cdd x = cdd(four_pi2 * double(n)) / cdd(y);
    cdd x2 = x * x;
    double ax = double(abs(x));

    cdd term = seed.r0;
    for (long i = 0; i < seed.k0; ++i) term = term * x2;
    cdd acc = term;
    double peak = double(abs(term));
    long k = seed.k0;
    for (;; ++k) {
        if (k - seed.k0 > 700)
            throw convergence_error("divisor_power_bracket: series budget exhausted",
                                    to_cplx(acc), k);
        // 1 - a + 2k assembled in double-word steps so a non-representable
        // 1 - Re(a) does not cost the second word
        dd re1 = dd(1.0) - dd(a.real()) + dd(2.0 * k);
        cdd den1{re1, dd(-a.imag())};
        cdd den2{re1 + dd(1.0), dd(-a.imag())};
        term = term * x2 / (den1 * den2);
        acc = acc + term;
        double mag = double(abs(term));
        peak = std::max(peak, mag);
        if (mag < 1e-33 * peak && 2.0 * k > ax) break;
    }

    cdd lx = log(x);
    cdd xa = exp(cdd(a) * lx);
    cdd bracket = acc - xa * cosh(x);
    cdd scale = exp(cdd(-a) * log(cdd(ddc::two_pi * double(n))));
    cdd out = scale * bracket;
    if (err_model) {
        double eps = a.imag() == 0.0 ? 1.2e-32 : 1.1e-16;
        *err_model = eps * std::exp(std::min(x.re.hi, 690.0)) *
                     std::pow(ax, a.real()) * double(abs(scale));
    }
    return to_cplx(out);
}

// left side: sigma_a-weighted exponential sum plus the closed zeta block
inline cplx sigma_exp_side(cplx a, cplx y, const tolerance& tol, long* terms = nullptr) {
    detail::require_right_half_plane(y);
    validate(tol);
    double sigma_y = y.real();
    double ra = std::max(a.real(), 0.0);
    kahan_accumulator acc;
    long used = 0;
    for (long n = 1; n <= tol.max_terms; ++n) {
        acc.add(sigma_c(a, n) * std::exp(-double(n) * y));
        used = n;
        // |sigma_a(n)| <= d(n) n^max(Re a,0) <= 2 n^{Re a + 1/2} fails for
        // tiny n only; 2 n^{Re a + 1} is a safe crude bound
        double bound = 2.0 * std::pow(n + 1.0, ra + 1.0) * std::exp(-(n + 1.0) * sigma_y) /
                       -std::expm1(-sigma_y);
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value()))) break;
        if (n == tol.max_terms)
            throw convergence_error("sigma_exp_side: tail bound not met under budget",
                                    acc.value(), n);
    }
    if (terms) *terms = used;
    cplx two_pi_over_y = ddc::two_pi.hi / y;
    cplx cosec = 1.0 / std::sin(ddc::half_pi.hi * a);
    return acc.value() +
           0.5 * (std::pow(two_pi_over_y, cplx(1.0, 0.0) + a) * cosec + 1.0) * zeta(-a) -
           zeta(cplx(1.0, 0.0) - a) / y;
}

// transformed side: per-n extended-precision brackets while the cancellation
// budget lasts, then the analytic tail in which the n-sum collapses to
// products zeta(a+2j) zeta(2j) minus their computed heads
inline cplx divisor_power_transformed(cplx a, cplx y, double goal_abs, const tolerance& tol,
                                      long* terms = nullptr) {
    detail::require_right_half_plane(y);
    detail::bracket_seed seed = detail::make_bracket_seed(a);
    double ln10 = std::log(10.0);
    dd four_pi2 = ddc::two_pi * ddc::two_pi;
    double re_x1 = (cdd(four_pi2) / cdd(y)).re.hi;

    cplx prefac = ddc::two_pi.hi / (y * std::sin(ddc::half_pi.hi * a));
    double goal_inner = goal_abs / std::abs(prefac);

    if (re_x1 / ln10 + 4.0 > seed.digit_budget)
        throw headroom_error("divisor_power_transformed: cancellation headroom exceeded at n=1",
                             1, re_x1 / ln10 + 4.0);

    kahan_accumulator acc;
    long nn = 0;
    int quiet = 0;
    long n_cap = std::min<long>(400, tol.max_terms);
    for (long n = 1; n <= n_cap; ++n) {
        double digits = double(n) * re_x1 / ln10 + 4.0;
        if (digits > seed.digit_budget) break;
        double err = 0.0;
        cplx sg = sigma_c(a, n);
        cplx b = divisor_power_bracket(a, y, n, seed, &err);
        if (err * std::abs(sg) > 0.5 * goal_inner) break;
        acc.add(sg * b);
        nn = n;
        quiet = std::abs(sg * b) < 0.5 * goal_inner ? quiet + 1 : 0;
        if (quiet >= 2) break;
    }
    if (nn == 0)
        throw headroom_error("divisor_power_transformed: cancellation headroom exceeded at n=1",
                             1, re_x1 / ln10 + 4.0);

    // analytic tail over n > nn
    cplx ratio = y / (four_pi2.hi);
    cplx r2 = ratio * ratio, p = 1.0;
    cplx two_pi_pow = std::exp(-a * ddc::log_two_pi.hi);
    double prev = std::numeric_limits<double>::max();
    for (int j = 1; j <= 32; ++j) {
        p *= r2;
        cplx s = a + cplx(2.0 * j, 0.0);
        cplx head = 0.0;
        for (long n = 1; n <= nn; ++n)
            head += sigma_c(a, n) * std::exp(-s * std::log(double(n)));
        cplx tail_sum = zeta(s) * zeta_even(j) - head;
        cplx t = -two_pi_pow * p * detail::recip_gamma(cplx(1.0, 0.0) - a - cplx(2.0 * j, 0.0)) *
                 tail_sum;
        double mag = std::abs(t);
        if (mag > prev) break;
        acc.add(t);
        prev = mag;
        if (mag < 0.05 * goal_inner) break;
    }
    if (terms) *terms = nn;
    return prefac * acc.value();
}

// dual-route check of the generalized divisor transformation; dd brackets
// buy ~30 digits of cancellation headroom, refusal is honest beyond that
inline identity_report check_divisor_power(cplx a, cplx y, const tolerance& tol) {
    if (!(a.real() > -1.0))
        throw std::domain_error("check_divisor_power: requires Re(a) > -1");
    if (detail::is_even_integer(a))
        throw std::domain_error("check_divisor_power: a must not be an even integer");
    detail::require_right_half_plane(y);
    tolerance inner = tightened(tol, 0.1);
    long lhs_terms = 0, rhs_terms = 0;
    cplx lhs = sigma_exp_side(a, y, inner, &lhs_terms);
    double goal = 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(lhs));
    cplx rhs = divisor_power_transformed(a, y, goal, inner, &rhs_terms);
    std::ostringstream os;
    os.precision(17);
    os << "a=" << a.real() << "," << a.imag() << ";y=" << y.real() << "," << y.imag();
    return make_report("maineqn", "generalized divisor sum transformation", os.str(), lhs, rhs,
                       tol, lhs_terms + rhs_terms, 0);
}

} // namespace lamlog
