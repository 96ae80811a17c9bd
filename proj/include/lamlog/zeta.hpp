#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bernoulli.hpp"
#include "constants.hpp"
#include "gamma.hpp"
#include "summation.hpp"
#include "types.hpp"

namespace lamlog {

namespace detail {

inline cplx pow_ns(double n, cplx s) { // n^{-s}
    if (n == 1.0) return {1.0, 0.0};
    return std::exp(-s * std::log(n));
}

// Euler-Maclaurin zeta and zeta' in one pass, sharing the n^{-s} powers.
// Valid as analytic continuation for Re s > 1 - 2K; the adaptive correction
// depth keeps it accurate for every |Im s| with N ~ 0.62 |Im s|.
inline std::pair<cplx, cplx> zeta_em_pair(cplx s) {
    if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
    const int N = std::max(12, int(std::ceil(0.62 * std::abs(s.imag()))));
    kahan_accumulator zs, zp;
    zs.add(cplx(1.0, 0.0));
    for (int n = 2; n < N; ++n) {
        double ln = std::log(double(n));
        cplx p = std::exp(-s * ln);
        zs.add(p);
        zp.add(-ln * p);
    }
    double lN = std::log(double(N));
    cplx NmS = std::exp(-s * lN);               // N^{-s}
    cplx sm1 = s - 1.0;
    cplx T = NmS * double(N) / sm1;             // N^{1-s}/(s-1)
    zs.add(T);
    zp.add(T * (-lN - 1.0 / sm1));
    zs.add(0.5 * NmS);
    zp.add(-0.5 * lN * NmS);

    // B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}, Pochhammer advanced two factors
    // per step together with its s-derivative
    cplx poch = s, dpoch = 1.0;
    cplx scale = NmS * (1.0 / double(N));       // N^{-s-1}
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 24; ++k) {
        double c = bernoulli_over_factorial(2 * k);
        cplx term = c * poch * scale;   // scale == N^{1-s-2k} here
        cplx dterm = c * (dpoch - poch * lN) * scale;
        double mag = std::abs(term);
        if (mag > prev) break;
        zs.add(term);
        zp.add(dterm);
        if (mag < 1e-18 * std::abs(zs.value()) && std::abs(dterm) < 1e-18 * std::abs(zp.value()))
            break;
        prev = mag;
        cplx a = s + double(2 * k - 1), b = s + double(2 * k);
        dpoch = dpoch * a * b + poch * (a + b);
        poch = poch * a * b;
        scale *= 1.0 / (double(N) * double(N));
    }
    return {zs.value(), zp.value()};
}

// chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) split so the trivial zeros
// stay exact: returns A = 2^s pi^{s-1} Gamma(1-s), sin(pi s/2), cos(pi s/2)
struct reflection_parts {
    cplx A, sin_half, cos_half;
};

inline reflection_parts chi_parts(cplx s) {
    cplx A = std::exp(s * ddc::ln2.hi + (s - 1.0) * ddc::log_two_pi.hi -
                      (s - 1.0) * ddc::ln2.hi + log_gamma(1.0 - s));
    // 2^s pi^{s-1} = exp(s ln2 + (s-1) ln pi); ln pi = ln 2pi - ln 2
    if (s.imag() == 0.0) {
        // reduce before multiplying by pi so sin(pi s/2) vanishes exactly at
        // even integers (the trivial zeros) instead of picking up pi's
        // representation error
        double x = 0.5 * s.real();
        double k = std::round(x);
        double r = x - k;
        double sn = std::sin(ddc::pi.hi * r), cs = std::cos(ddc::pi.hi * r);
        if (std::fmod(k, 2.0) != 0.0) {
            sn = -sn;
            cs = -cs;
        }
        return {A, cplx(sn, 0.0), cplx(cs, 0.0)};
    }
    cplx half = 0.5 * ddc::pi.hi * s;
    return {A, std::sin(half), std::cos(half)};
}

} // namespace detail

// Riemann zeta, full complex plane except s = 1; Re s < 0 goes through the
// functional equation.
inline cplx zeta(cplx s) {
    if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
    if (s.real() >= 0.0) return detail::zeta_em_pair(s).first;
    if (std::fabs(s.imag()) > 300.0)
        throw std::domain_error("zeta: reflection factor overflow");
    detail::reflection_parts rp = detail::chi_parts(s);
    cplx z1 = detail::zeta_em_pair(1.0 - s).first;
    return rp.A * rp.sin_half * z1;
}

inline std::pair<cplx, cplx> zeta_and_prime(cplx s) {
    if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
    if (s.real() >= 0.0) return detail::zeta_em_pair(s);
    if (std::fabs(s.imag()) > 300.0)
        throw std::domain_error("zeta: reflection factor overflow");
    detail::reflection_parts rp = detail::chi_parts(s);
    auto [z1, zp1] = detail::zeta_em_pair(1.0 - s);
    cplx chi = rp.A * rp.sin_half;
    cplx value = chi * z1;
    // zeta'(s) = chi [ (log 2pi - psi(1-s)) zeta(1-s) - zeta'(1-s) ]
    //          + A (pi/2) cos(pi s/2) zeta(1-s)
    cplx deriv = chi * ((ddc::log_two_pi.hi - digamma(1.0 - s)) * z1 - zp1) +
                 rp.A * (0.5 * ddc::pi.hi) * rp.cos_half * z1;
    return {value, deriv};
}

inline cplx zeta_prime(cplx s) { return zeta_and_prime(s).second; }

} // namespace lamlog
