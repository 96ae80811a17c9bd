#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arith.hpp"
#include "bernoulli.hpp"
#include "constants.hpp"
#include "double_double.hpp"
#include "gamma.hpp"
#include "psi1.hpp"
#include "summation.hpp"
#include "types.hpp"
#include "zeta.hpp"

namespace lamlog {

namespace detail {

// e^z - 1 without cancellation for small |z|
inline cplx expm1_c(cplx z) {
    double x = z.real(), y = z.imag();
    double em = std::expm1(x);
    double s = std::sin(0.5 * y);
    return {em * std::cos(y) - 2.0 * s * s, (em + 1.0) * std::sin(y)};
}

inline void require_right_half_plane(cplx y) {
    if (!(y.real() > 0.0)) throw std::domain_error("Re(y) must be positive");
}

} // namespace detail

// sum over n of log(n) / (e^{ny} - 1); truncation driven by the geometric
// tail bound log(n+1) e^{-(n+1) Re y} / (1 - e^{-Re y})
inline sum_result log_weighted_lambert_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    double sigma = y.real();
    double geo = 1.0 / -std::expm1(-sigma);
    kahan_accumulator acc;
    for (long n = 2; n <= tol.max_terms; ++n) {
        acc.add(std::log(double(n)) / detail::expm1_c(double(n) * y));
        double bound = std::log(n + 1.0) * std::exp(-(n + 1.0) * sigma) * geo;
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())))
            return {acc.value(), n - 1};
    }
    throw convergence_error("log_weighted_lambert_sum: tail bound not met under budget",
                            acc.value(), tol.max_terms);
}

// real-axis double-word twin, used where binary64 residuals would drown the
// expansion terms being measured
inline dd log_weighted_lambert_sum_dd(dd y, const tolerance& tol) {
    if (!(y.hi > 0.0)) throw std::domain_error("Re(y) must be positive");
    validate(tol);
    double geo = 1.0 / -std::expm1(-y.hi);
    dd acc{};
    for (long n = 2; n <= tol.max_terms; ++n) {
        dd q = exp(-y * double(n));
        acc = acc + log(dd(double(n))) * q / (dd(1.0) - q);
        double bound = std::log(n + 1.0) * std::exp(-(n + 1.0) * y.hi) * geo;
        if (bound < 1e-32 * std::fabs(acc.hi) || (acc.hi != 0.0 && bound == 0.0))
            return acc;
    }
    throw convergence_error("log_weighted_lambert_sum_dd: tail bound not met under budget",
                            cplx(acc.hi, 0.0), tol.max_terms);
}

// sum over n of d(n) log(n) e^{-ny}; equals twice the series above because
// the divisor count regroups the double sum
inline sum_result divisor_log_exp_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    double sigma = y.real();
    kahan_accumulator acc;
    for (long n = 2; n <= tol.max_terms; ++n) {
        acc.add(double(divisor_count(n)) * std::log(double(n)) * std::exp(-double(n) * y));
        // d(m) log m < 2 sqrt(m) log m; bound the remaining geometric block
        double bound = 2.0 * std::sqrt(n + 1.0) * std::log(n + 1.0) *
                       std::exp(-(n + 1.0) * sigma) / -std::expm1(-sigma);
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())))
            return {acc.value(), n - 1};
    }
    throw convergence_error("divisor_log_exp_sum: tail bound not met under budget", acc.value(),
                            tol.max_terms);
}

// sum over n of (gamma + log(ny)) / (e^{ny} - 1)
inline sum_result harmonic_weighted_lambert_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    double sigma = y.real();
    double geo = 1.0 / -std::expm1(-sigma);
    cplx ly = std::log(y);
    kahan_accumulator acc;
    for (long n = 1; n <= tol.max_terms; ++n) {
        cplx w = ddc::euler.hi + std::log(double(n)) + ly;
        acc.add(w / detail::expm1_c(double(n) * y));
        double bound = (std::fabs(ddc::euler.hi + std::log(n + 1.0)) + std::abs(ly) + 1.0) *
                       std::exp(-(n + 1.0) * sigma) * geo;
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())))
            return {acc.value(), n};
    }
    throw convergence_error("harmonic_weighted_lambert_sum: tail bound not met under budget",
                            acc.value(), tol.max_terms);
}

// sum over n of 1 / (e^{ny} - 1)
inline sum_result reciprocal_lambert_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    double sigma = y.real();
    double geo = 1.0 / -std::expm1(-sigma);
    kahan_accumulator acc;
    for (long n = 1; n <= tol.max_terms; ++n) {
        acc.add(1.0 / detail::expm1_c(double(n) * y));
        double bound = std::exp(-(n + 1.0) * sigma) * geo;
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())))
            return {acc.value(), n};
    }
    throw convergence_error("reciprocal_lambert_sum: tail bound not met under budget",
                            acc.value(), tol.max_terms);
}

namespace detail {

// shared truncation point of the two transformed-side series; the remainder
// past it is summed analytically through zeta tails
inline long bracket_cutoff(cplx y) { return std::max<long>(4, (long)std::ceil(std::abs(y))); }

} // namespace detail

// sum over n of { log(2 pi n / y) - (psi(2 pi i n / y) + psi(-2 pi i n / y)) / 2 }.
// Direct terms to the cutoff; the tail expands each bracket with the digamma
// asymptotic, leaving sums of (-1)^k B_{2k}/(2k) (y/2pi)^{2k} n^{-2k}.
inline sum_result digamma_bracket_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    long nn = detail::bracket_cutoff(y);
    cplx u1 = 2.0 * ddc::pi.hi / y;
    kahan_accumulator acc;
    for (long n = 1; n <= nn; ++n) {
        cplx u = double(n) * u1;
        cplx iu = cplx(0.0, 1.0) * u;
        acc.add(std::log(u) - 0.5 * (digamma(iu) + digamma(-iu)));
    }
    cplx r = y / (2.0 * ddc::pi.hi);
    cplx r2 = r * r, p = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 32; ++k) {
        p *= r2;
        cplx term = (k % 2 ? -1.0 : 1.0) * bernoulli_d(2 * k) / (2.0 * k) * p *
                    zeta_tail(2 * k, nn);
        double mag = std::abs(term);
        if (mag > prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-22 * std::max(1.0, std::abs(acc.value()))) break;
    }
    return {acc.value(), nn};
}

// sum over n of { psi1(iu) + psi1(-iu) - (log^2(iu) + log^2(-iu)) / 2 + y/(4n) }
// at u = 2 pi n / y. The y/(4n) piece cancels the leading asymptotic term
// exactly, so the tail starts at n^{-2} log n and is summed via zeta tails.
inline sum_result psi1_bracket_sum(cplx y, const tolerance& tol) {
    detail::require_right_half_plane(y);
    validate(tol);
    long nn = detail::bracket_cutoff(y);
    cplx u1 = 2.0 * ddc::pi.hi / y;
    kahan_accumulator acc;
    for (long n = 1; n <= nn; ++n) {
        cplx u = double(n) * u1;
        cplx iu = cplx(0.0, 1.0) * u;
        cplx la = std::log(iu), lb = std::log(-iu);
        acc.add(psi1(iu) + psi1(-iu) - 0.5 * (la * la + lb * lb) + y / (4.0 * n));
    }
    cplx lu1 = std::log(u1);
    cplx r = y / (2.0 * ddc::pi.hi);
    cplx r2 = r * r, p = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 32; ++k) {
        p *= r2;
        double h = 2.0 * harmonic(2 * k - 2) + 2.0 / (2.0 * k - 1.0);
        cplx term = (k % 2 ? -1.0 : 1.0) * bernoulli_d(2 * k) / (2.0 * k) * p *
                    ((h - 2.0 * lu1) * zeta_tail(2 * k, nn) - 2.0 * zeta_log_tail(2 * k, nn));
        double mag = std::abs(term);
        if (mag > prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-22 * std::max(1.0, std::abs(acc.value()))) break;
    }
    return {acc.value(), nn};
}

// transformed representation of the log-weighted Lambert series: constant
// block plus the two bracket series above
inline cplx transformed_log_lambert(cplx y, const tolerance& tol, long* terms = nullptr) {
    detail::require_right_half_plane(y);
    cplx ly = std::log(y);
    double g = ddc::euler.hi;
    sum_result spsi = digamma_bracket_sum(y, tol);
    sum_result spsi1 = psi1_bracket_sum(y, tol);
    if (terms) *terms = spsi.terms + spsi1.terms;
    return -0.25 * ddc::log_two_pi.hi + (0.5 * ly * ly - 0.5 * g * g + ddc::zeta_two.hi / 2.0) / y -
           2.0 / y * (g + ly) * spsi.value + spsi1.value / y;
}

// dual-route check of the log-weighted transformation
inline identity_report check_log_lambert(cplx y, const tolerance& tol) {
    tolerance inner = tightened(tol, 0.1);
    sum_result lhs = log_weighted_lambert_sum(y, inner);
    long rhs_terms = 0;
    cplx rhs = transformed_log_lambert(y, inner, &rhs_terms);
    return make_report("thm1.1", "Theorem 1.1, first form", detail::fmt_params("y", y),
                       lhs.value, rhs, tol, lhs.terms + rhs_terms, 0);
}

// equivalent rearranged form: the harmonic-weighted sum against the psi1
// bracket series alone. The left side cancels down to the bracket scale, so
// its series is driven to an absolute goal set by the right side, not by the
// (much larger) harmonic sum itself.
inline identity_report check_log_lambert_alt(cplx y, const tolerance& tol) {
    tolerance inner = tightened(tol, 0.1);
    sum_result rhs = psi1_bracket_sum(y, inner);
    double goal = 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(rhs.value));
    tolerance hw_tol = inner;
    hw_tol.rel_tol = 0.0;
    hw_tol.abs_tol = std::max(goal / std::max(std::abs(y), 1e-8), 1e-300);
    sum_result hw = harmonic_weighted_lambert_sum(y, hw_tol);
    cplx ly = std::log(y);
    double g = ddc::euler.hi;
    cplx lhs = y * hw.value - 0.25 * y * ly + y * (0.25 * ddc::log_two_pi.hi - 0.25 * g) +
               0.5 * ly * ly - 0.5 * g * g - ddc::zeta_two.hi / 2.0;
    return make_report("eq1.12", "Theorem 1.1, equivalent form", detail::fmt_params("y", y),
                       lhs, rhs.value, tol, hw.terms + rhs.terms, 0);
}

// reciprocal Lambert sum against its digamma-bracket transformation
inline identity_report check_reciprocal_lambert(cplx y, const tolerance& tol) {
    tolerance inner = tightened(tol, 0.1);
    sum_result lhs = reciprocal_lambert_sum(y, inner);
    sum_result spsi = digamma_bracket_sum(y, inner);
    cplx rhs = 0.25 + (ddc::euler.hi - std::log(y)) / y + 2.0 / y * spsi.value;
    return make_report("wigert", "Wigert's reciprocal transformation",
                       detail::fmt_params("y", y), lhs.value, rhs, tol,
                       lhs.terms + spsi.terms, 0);
}

namespace detail {

// alpha-side block of the odd zeta value transformation
inline double odd_zeta_block(int m, double alpha, const tolerance& tol) {
    double z = zeta(cplx(2.0 * m + 1.0, 0.0)).real();
    kahan_accumulator acc;
    double geo = 1.0 / -std::expm1(-2.0 * alpha);
    for (long n = 1; n <= tol.max_terms; ++n) {
        acc.add(std::pow(double(n), -2.0 * m - 1.0) / std::expm1(2.0 * alpha * n));
        double bound = std::pow(n + 1.0, std::max(0.0, -2.0 * m - 1.0)) *
                       std::exp(-2.0 * (n + 1.0) * alpha) * geo;
        if (bound < 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(acc.value())))
            return 0.5 * z + acc.real();
    }
    throw convergence_error("odd_zeta_block: tail bound not met under budget", acc.value(),
                            tol.max_terms);
}

} // namespace detail

// transformation of the odd zeta value sum between alpha and beta = pi^2/alpha,
// including the finite Bernoulli correction polynomial
inline identity_report check_odd_zeta_transform(int m, double alpha, const tolerance& tol) {
    if (m == 0) throw std::domain_error("check_odd_zeta_transform: m must be nonzero");
    if (!(alpha > 0.0)) throw std::domain_error("check_odd_zeta_transform: alpha must be positive");
    tolerance inner = tightened(tol, 0.1);
    double beta = ddc::pi.hi * ddc::pi.hi / alpha;
    double lhs = std::pow(alpha, -double(m)) * detail::odd_zeta_block(m, alpha, inner);
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    double rhs = sign * std::pow(beta, -double(m)) * detail::odd_zeta_block(m, beta, inner);
    if (m + 1 >= 0) {
        double block = 0.0;
        for (int j = 0; j <= m + 1; ++j) {
            double t = bernoulli_d(2 * j) * bernoulli_d(2 * m + 2 - 2 * j) /
                       (factorial(2 * j) * factorial(2 * m + 2 - 2 * j)) *
                       std::pow(alpha, double(m + 1 - j)) * std::pow(beta, double(j));
            block += (j % 2 ? -t : t);
        }
        rhs -= std::ldexp(block, 2 * m);
    }
    std::ostringstream os;
    os.precision(17);
    os << "m=" << m << ";alpha=" << alpha;
    return make_report("ramanujan", "odd zeta value transformation", os.str(), cplx(lhs, 0.0),
                       cplx(rhs, 0.0), tol, 0, 0);
}

struct expansion_value {
    cplx value{};
    cplx next_term{};
    int terms = 0;
};

namespace detail {

inline cplx small_y_series_term(cplx y, int k) {
    double b = bernoulli_d(2 * k);
    double coef = b / (2.0 * factorial(2 * k)) *
                      (ddc::euler.hi - harmonic(2 * k - 1) + ddc::log_two_pi.hi) +
                  (k % 2 ? -1.0 : 1.0) * zeta_prime_even(k) / std::pow(2.0 * ddc::pi.hi, 2.0 * k);
    return b / double(k) * std::pow(y, 2.0 * k - 1.0) * coef;
}

} // namespace detail

// expansion of the log-weighted Lambert series for small y: closed-form
// block plus the k >= 2 correction sum through k = K; next_term is the first
// omitted summand, the usual truncation error proxy
inline expansion_value small_y_expansion(cplx y, int K) {
    detail::require_right_half_plane(y);
    if (K < 1) throw std::domain_error("small_y_expansion: K must be >= 1");
    cplx ly = std::log(y);
    double g = ddc::euler.hi;
    cplx v = 0.5 * ly * ly / y + (ddc::zeta_two.hi / 2.0 - 0.5 * g * g) / y -
             0.25 * ddc::log_two_pi.hi + y / 12.0 * (glaisher_log() - 1.0 / 12.0);
    for (int k = 2; k <= K; ++k) v += detail::small_y_series_term(y, k);
    return {v, detail::small_y_series_term(y, K + 1), K};
}

// double-word twin on the positive real axis; the closed-form block needs
// the extra word before the k-sum terms become visible at all
inline dd small_y_expansion_dd(dd y, int K) {
    if (!(y.hi > 0.0)) throw std::domain_error("Re(y) must be positive");
    if (K < 1) throw std::domain_error("small_y_expansion_dd: K must be >= 1");
    dd ly = log(y);
    dd v = ldexp(ly * ly / y, -1) +
           (ldexp(ddc::zeta_two, -1) - ldexp(ddc::euler * ddc::euler, -1)) / y -
           ldexp(ddc::log_two_pi, -2) + y * (ddc::log_glaisher - dd(1.0) / dd(12.0)) / 12.0;
    for (int k = 2; k <= K; ++k) {
        dd b = dd(bernoulli_d(2 * k));
        dd coef = b / (2.0 * factorial(2 * k)) *
                      (ddc::euler - dd(harmonic(2 * k - 1)) + ddc::log_two_pi) +
                  dd((k % 2 ? -1.0 : 1.0) * zeta_prime_even(k)) /
                      pow(ddc::two_pi, dd(2.0 * k));
        v = v + b / double(k) * pow(y, dd(2.0 * k - 1.0)) * coef;
    }
    return v;
}

// direct sum against the expansion through k = 3 on the positive real axis;
// the pass bound is ten times the k = 4 term, so both sides run in the
// double-word mode where a gap that small is resolvable at all
inline identity_report check_small_y_expansion(double y) {
    if (!(y > 0.0)) throw std::domain_error("Re(y) must be positive");
    if (!(y < ddc::two_pi.hi))
        throw std::domain_error("check_small_y_expansion: y must lie in (0, 2*pi)");
    tolerance tol{};
    dd direct = log_weighted_lambert_sum_dd(dd(y), tol);
    dd expn = small_y_expansion_dd(dd(y), 3);
    double k4 = std::abs(detail::small_y_series_term(cplx(y, 0.0), 4));
    identity_report r;
    r.id = "thm1.2";
    r.ref = "Theorem 1.2, small-argument expansion";
    r.params = detail::fmt_params("y", cplx(y, 0.0));
    r.lhs = cplx(double(direct), 0.0);
    r.rhs = cplx(double(expn), 0.0);
    r.abs_err = std::fabs(double(direct - expn));
    double scale = std::max(std::abs(r.lhs), std::abs(r.rhs));
    r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
    r.pass = r.abs_err <= 10.0 * k4;
    r.terms = 3;
    r.evals = 0;
    return r;
}

} // namespace lamlog
