#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "constants.hpp"
#include "expint.hpp"
#include "gamma.hpp"
#include "mittag_leffler.hpp"
#include "psi1.hpp"
#include "quadrature.hpp"
#include "summation.hpp"
#include "types.hpp"
#include "zeta.hpp"

namespace lamlog {

// sum over n of the closed form of int_0^inf t cos(t) / (t^2 + n^2 w^2) dt;
// the large-n remainder expands each term and collapses to zeta tails
inline cplx cosine_kernel_sum(cplx w, const tolerance& tol, long* terms = nullptr) {
    if (!(w.real() > 0.0)) throw std::domain_error("cosine_kernel_sum: requires Re(w) > 0");
    validate(tol);
    long nn = std::min<long>(400, std::max<long>(4, (long)std::ceil(32.0 / w.real())));
    kahan_accumulator acc;
    for (long n = 1; n <= nn; ++n) acc.add(fg_pair(double(n) * w).F);
    cplx iw2 = 1.0 / (w * w), p = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 24; ++k) {
        p *= iw2;
        cplx term = -factorial(2 * k - 1) * p * zeta_tail(2 * k, nn);
        double mag = std::abs(term);
        if (mag > prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-18 * std::max(1.0, std::abs(acc.value()))) break;
    }
    if (terms) *terms = nn;
    return acc.value();
}

// closed-form sum of inner integrals against the digamma form; the first few
// inner integrals are re-derived by direct oscillatory quadrature so the
// closed form and the integrator vouch for each other
inline identity_report dgkm_identity_check(cplx w, const tolerance& tol,
                                           bool quad_crosscheck = true) {
    if (!(w.real() > 0.0)) throw std::domain_error("dgkm_identity_check: requires Re(w) > 0");
    tolerance inner = tightened(tol, 0.1);
    long lhs_terms = 0;
    cplx lhs = cosine_kernel_sum(w, inner, &lhs_terms);
    cplx u = w / ddc::two_pi.hi;
    cplx iu = cplx(0.0, 1.0) * u;
    cplx rhs = 0.5 * (std::log(u) - 0.5 * (digamma(iu) + digamma(-iu)));
    identity_report rep =
        make_report("dgkm", "cosine kernel sum in digamma form",
                    detail::fmt_params("w", w), lhs, rhs, tol, lhs_terms, 0);
    if (quad_crosscheck) {
        tolerance qtol = tol;
        qtol.abs_tol = std::max(qtol.abs_tol, 1e-10);
        for (long n = 1; n <= 3; ++n) {
            cplx a2 = double(n) * w * double(n) * w;
            auto f = [a2](double t) -> cplx { return t * std::cos(t) / (t * t + a2); };
            quad_result q = integrate_oscillatory(f, 0.0, ddc::pi.hi, qtol);
            rep.evals += q.n_evals;
            if (std::abs(q.value - fg_pair(double(n) * w).F) > 1e-8) rep.pass = false;
        }
    }
    return rep;
}

struct line_integral_spec {
    double c = 0.5;
    double t_start = 40.0;
    tolerance tol{};
};

namespace detail {

// integrand of the vertical-line representation at s = c + it paired with
// its mirror point; 1/sin(pi s) is evaluated in scaled form so large |t|
// never overflows
inline cplx line_integrand_pair(double c, double t, cplx lz) {
    auto g = [&](cplx s, double sgn) -> cplx {
        // for sgn = +1 (Im s > 0): 1/sin(pi s) = -2i e^{i pi s} / (1 - e^{2 i pi s})
        cplx ipis = cplx(0.0, sgn * ddc::pi.hi) * s;
        cplx scaled = std::exp(ipis - s * lz);
        cplx denom = 1.0 - std::exp(2.0 * ipis);
        cplx q = cplx(0.0, -2.0 * sgn) * scaled / denom;
        return ddc::pi.hi * zeta(cplx(1.0, 0.0) - s) * (ddc::euler.hi - lz + digamma(s)) * q;
    };
    if (t == 0.0) return g(cplx(c, 0.0), 1.0);
    return g(cplx(c, t), 1.0) + g(cplx(c, -t), -1.0);
}

} // namespace detail

// vertical-line integral representation of psi1(z+1) - log^2(z)/2, checked
// against the direct evaluator; the truncation height doubles until the
// exponential tail bound clears the tolerance
inline identity_report kloosterman_line_check(cplx z, const line_integral_spec& spec) {
    if (!(spec.c > 0.0 && spec.c < 1.0))
        throw std::domain_error("kloosterman_line_check: abscissa must lie in (0,1)");
    cplx lz = std::log(z);
    if (std::abs(lz.imag()) >= ddc::pi.hi)
        throw std::domain_error("kloosterman_line_check: z on the branch cut");
    validate(spec.tol);
    tolerance inner = tightened(spec.tol, 0.1);
    double kappa = ddc::pi.hi - std::abs(lz.imag());

    auto f = [&](double t) -> cplx { return detail::line_integrand_pair(spec.c, t, lz); };
    kahan_accumulator acc;
    long evals = 0;
    double t0 = 0.0, t1 = spec.t_start;
    cplx integral{};
    for (int stage = 0;; ++stage) {
        if (stage > 6)
            throw convergence_error("kloosterman_line_check: tail bound not met", integral, evals);
        quad_result q = integrate_adaptive(f, t0, t1, inner);
        acc.add(q.value);
        evals += q.n_evals;
        integral = acc.value() / (2.0 * ddc::pi.hi);
        double tail = std::abs(f(t1)) / kappa / (2.0 * ddc::pi.hi);
        if (tail < 0.5 * std::max(inner.abs_tol, inner.rel_tol * std::abs(integral)) &&
            q.converged)
            break;
        t0 = t1;
        t1 *= 2.0;
    }
    cplx direct = psi1(z + 1.0) - 0.5 * lz * lz;
    std::ostringstream os;
    os.precision(17);
    os << "z=" << z.real() << "," << z.imag() << ";c=" << spec.c;
    return make_report("thm3.2", "vertical line representation", os.str(), direct, integral,
                       spec.tol, 0, evals);
}

// log-kernel analogue of the cosine kernel sum: per-m oscillatory integrals
// to the cutoff, an asymptotic zeta-tail for the rest, against the closed
// psi1 form
inline identity_report analogue_dgkm_check(cplx w, const tolerance& tol) {
    if (!(w.real() > 0.0)) throw std::domain_error("analogue_dgkm_check: requires Re(w) > 0");
    tolerance inner = tightened(tol, 0.1);
    long mm = std::max<long>(3, (long)std::ceil(19.0 / (ddc::two_pi.hi * w.real())));
    cplx lw = std::log(w);
    kahan_accumulator acc;
    long evals = 0;
    for (long m = 1; m <= mm; ++m) {
        cplx a = ddc::two_pi.hi * double(m) * w;
        cplx a2 = a * a;
        auto f = [&](double u) -> cplx {
            if (u == 0.0) return {};
            return u * std::cos(u) * (std::log(u) - lw) / (u * u + a2);
        };
        try {
            quad_result q = integrate_oscillatory(f, 0.0, ddc::pi.hi, inner);
            acc.add(q.value);
            evals += q.n_evals;
        } catch (const convergence_error& e) {
            std::ostringstream os;
            os << "analogue_dgkm_check: inner integral failed at m=" << m;
            throw convergence_error(os.str(), e.partial(), e.terms());
        }
    }
    cplx ptw = 1.0 / (ddc::two_pi.hi * w), p = 1.0;
    cplx ptw2 = ptw * ptw;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 24; ++k) {
        p *= ptw2;
        cplx term = -factorial(2 * k - 1) * (harmonic(2 * k - 1) - ddc::euler.hi - lw) * p *
                    zeta_tail(2 * k, mm);
        double mag = std::abs(term);
        if (mag > prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-18 * std::max(1.0, std::abs(acc.value()))) break;
    }
    cplx lhs = 4.0 * acc.value();

    cplx iw = cplx(0.0, 1.0) * w;
    cplx la = std::log(iw), lb = std::log(-iw);
    cplx rhs = psi1(iw) - 0.5 * la * la + psi1(-iw) - 0.5 * lb * lb +
               ddc::half_pi.hi / w +
               ddc::euler.hi * (digamma(iw) + digamma(-iw) - 2.0 * lw);
    return make_report("thm3.3", "log-kernel analogue sum", detail::fmt_params("w", w), lhs,
                       rhs, tol, mm, evals);
}

// partial sum of psi(2k+1) w^{2k} / (2k)! through K; K < 0 selects the
// factorial-decay stopping rule
inline cplx digamma_weighted_even_series(cplx w, int K = -1) {
    cplx w2 = w * w, p = 1.0;
    kahan_accumulator acc;
    int cap = K >= 0 ? K : 300;
    for (int k = 0; k <= cap; ++k) {
        cplx term = (harmonic(2 * k) - ddc::euler.hi) * p;
        acc.add(term);
        if (K < 0 && k > 2 && std::abs(term) < 1e-17 * std::max(1.0, std::abs(acc.value())))
            break;
        p *= w2 / (double(2 * k + 1) * double(2 * k + 2));
    }
    return acc.value();
}

// oscillatory quadrature against the hyperbolic-integral closed form
inline identity_report check_cosine_kernel_integral(cplx w, const tolerance& tol) {
    if (!(w.real() > 0.0))
        throw std::domain_error("check_cosine_kernel_integral: requires Re(w) > 0");
    tolerance inner = tightened(tol, 0.1);
    cplx w2 = w * w;
    auto f = [w2](double t) -> cplx { return t * std::cos(t) / (t * t + w2); };
    quad_result q = integrate_oscillatory(f, 0.0, ddc::pi.hi, inner);
    cplx rhs = fg_pair(w).F;
    return make_report("lemma4.1", "cosine kernel integral closed form",
                       detail::fmt_params("w", w), q.value, rhs, tol, 0, q.n_evals);
}

// digamma-weighted even series against its closed form F(w) + log(w) cosh(w)
inline identity_report check_digamma_series(cplx w, const tolerance& tol) {
    if (!(w.real() > 0.0)) throw std::domain_error("check_digamma_series: requires Re(w) > 0");
    cplx lhs = digamma_weighted_even_series(w);
    cplx rhs = fg_pair(w).F + std::log(w) * std::cosh(w);
    return make_report("lemma4.2", "digamma weighted even series",
                       detail::fmt_params("w", w), lhs, rhs, tol, 0, 0);
}

// dual-mode check of the second parameter derivative of the even
// Mittag-Leffler family at b = 1
inline identity_report check_ml_param_deriv(cplx w, const tolerance& tol) {
    tolerance inner = tightened(tol, 0.1);
    long terms = 0, evals = 0;
    cplx lhs = ml_d2b_at1(w, d2b_mode::series, inner, &terms);
    cplx rhs = ml_d2b_at1(w, d2b_mode::integral, inner, &evals);
    return make_report("thm4.3", "parameter derivative dual modes",
                       detail::fmt_params("w", w), lhs, rhs, tol, terms, evals);
}

} // namespace lamlog
