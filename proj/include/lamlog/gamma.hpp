#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bernoulli.hpp"
#include "types.hpp"

namespace lamlog {

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

namespace detail {

// shift so the Stirling series applies: |z| >= radius and Re z >= 1
inline int gamma_shift(cplx z, double radius) {
    int m = 0;
    while (std::abs(z + cplx(double(m), 0.0)) < radius || z.real() + m < 1.0) ++m;
    return m;
}

} // namespace detail

// principal-series log Gamma up to a multiple of 2 pi i (exact under exp);
// poles at z = 0, -1, -2, ... are rejected
inline cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole");
    constexpr double radius = 20.0;
    int m = detail::gamma_shift(z, radius);
    cplx shift = 0.0;
    for (int j = 0; j < m; ++j) shift += std::log(z + cplx(double(j), 0.0));
    cplx w = z + cplx(double(m), 0.0);
    cplx lw = std::log(w);
    cplx acc = (w - 0.5) * lw - w + 0.91893853320467274178; // + log(2 pi)/2
    cplx winv = 1.0 / w, w2 = winv * winv, p = winv;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 17; ++k) {
        cplx term = bernoulli_d(2 * k) / double((2 * k) * (2 * k - 1)) * p;
        double mag = std::abs(term);
        if (mag > prev) break;
        acc += term;
        if (mag < 1e-18 * std::abs(acc)) break;
        prev = mag;
        p *= w2;
    }
    return acc - shift;
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

// psi(z) = d/dz log Gamma(z)
inline cplx digamma(cplx z) {
    if (is_nonpositive_integer(z)) throw std::domain_error("digamma: pole");
    constexpr double radius = 20.0;
    int m = detail::gamma_shift(z, radius);
    cplx shift = 0.0;
    for (int j = 0; j < m; ++j) shift += 1.0 / (z + cplx(double(j), 0.0));
    cplx w = z + cplx(double(m), 0.0);
    cplx acc = std::log(w) - 0.5 / w;
    cplx w2 = 1.0 / (w * w), p = w2;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 17; ++k) {
        cplx term = bernoulli_d(2 * k) / double(2 * k) * p;
        double mag = std::abs(term);
        if (mag > prev) break;
        acc -= term;
        if (mag < 1e-18 * std::abs(acc)) break;
        prev = mag;
        p *= w2;
    }
    return acc - shift;
}

// psi'(z)
inline cplx trigamma(cplx z) {
    if (is_nonpositive_integer(z)) throw std::domain_error("trigamma: pole");
    constexpr double radius = 20.0;
    int m = detail::gamma_shift(z, radius);
    cplx shift = 0.0;
    for (int j = 0; j < m; ++j) {
        cplx u = z + cplx(double(j), 0.0);
        shift += 1.0 / (u * u);
    }
    cplx w = z + cplx(double(m), 0.0);
    cplx winv = 1.0 / w, w2 = winv * winv;
    cplx acc = winv + 0.5 * w2;
    cplx p = winv * w2;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 17; ++k) {
        cplx term = bernoulli_d(2 * k) * p;
        double mag = std::abs(term);
        if (mag > prev) break;
        acc += term;
        if (mag < 1e-18 * std::abs(acc)) break;
        prev = mag;
        p *= w2;
    }
    return acc + shift;
}

// H_n, H_n^(2), n!; all cached
inline double harmonic(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> h(2049, 0.0);
        for (int k = 1; k < 2049; ++k) h[k] = h[k - 1] + 1.0 / k;
        return h;
    }();
    if (n < 0) throw std::domain_error("harmonic: negative index");
    if (n < int(table.size())) return table[n];
    double h = table.back();
    for (int k = int(table.size()); k <= n; ++k) h += 1.0 / k;
    return h;
}

inline double harmonic2(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> h(2049, 0.0);
        for (int k = 1; k < 2049; ++k) h[k] = h[k - 1] + 1.0 / (double(k) * k);
        return h;
    }();
    if (n < 0) throw std::domain_error("harmonic2: negative index");
    if (n < int(table.size())) return table[n];
    double h = table.back();
    for (int k = int(table.size()); k <= n; ++k) h += 1.0 / (double(k) * k);
    return h;
}

inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> f(171, 1.0);
        for (int k = 1; k <= 170; ++k) f[k] = f[k - 1] * k;
        return f;
    }();
    if (n < 0 || n > 170) throw std::domain_error("factorial: index outside [0, 170]");
    return table[n];
}

} // namespace lamlog
