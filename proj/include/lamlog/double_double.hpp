#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>

// Double-word ("double-double") arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2, carrying roughly 32 significant decimal digits. Used
// where identities lose 10..25 digits to cancellation before settling on an
// O(1) answer. Requires FP contraction off in this translation unit so the
// error-free transforms stay exact.

namespace lamlog {

struct twofold {
    double hi, lo;
};

// s.hi + s.lo == a + b exactly
inline twofold two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// requires |a| >= |b| or a == 0
inline twofold fast_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

// p.hi + p.lo == a * b exactly
inline twofold two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

struct dd {
    double hi = 0.0, lo = 0.0;
    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    explicit operator double() const { return hi + lo; }
};

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }

inline dd operator+(dd a, dd b) {
    twofold s = two_sum(a.hi, b.hi);
    twofold t = two_sum(a.lo, b.lo);
    double lo = s.lo + t.hi;
    twofold r = fast_two_sum(s.hi, lo);
    lo = r.lo + t.lo;
    twofold z = fast_two_sum(r.hi, lo);
    return {z.hi, z.lo};
}

inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    twofold p = two_prod(a.hi, b.hi);
    double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
    twofold z = fast_two_sum(p.hi, lo);
    return {z.hi, z.lo};
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    twofold s = fast_two_sum(q1, q2);
    return dd(s.hi, s.lo) + dd(q3);
}

inline dd operator+(dd a, double b) { return a + dd(b); }
inline dd operator+(double a, dd b) { return dd(a) + b; }
inline dd operator-(dd a, double b) { return a - dd(b); }
inline dd operator-(double a, dd b) { return dd(a) - b; }
inline dd operator*(dd a, double b) { return a * dd(b); }
inline dd operator*(double a, dd b) { return dd(a) * b; }
inline dd operator/(dd a, double b) { return a / dd(b); }
inline dd operator/(double a, dd b) { return dd(a) / b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }

inline dd abs(dd a) { return a.hi < 0.0 ? -a : a; }
inline dd ldexp(dd a, int k) { return {std::ldexp(a.hi, k), std::ldexp(a.lo, k)}; }

inline dd sqrt(dd a) {
    if (a.hi == 0.0) return dd(0.0);
    double y = std::sqrt(a.hi);
    dd r = a - dd(y) * dd(y);
    return dd(y) + r / dd(2.0 * y); // one Newton step, ~full double-word accuracy
}

namespace ddc {
// hi parts are the correctly rounded doubles; lo parts the leading residuals.
inline constexpr dd pi{3.141592653589793115998, 1.2246467991473532e-16};
inline constexpr dd half_pi{1.570796326794896557999, 6.123233995736766e-17};
inline constexpr dd two_pi{6.283185307179586231996, 2.4492935982947064e-16};
inline constexpr dd ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr dd euler{0.5772156649015328655494, -4.942915152430645e-18};
inline constexpr dd log_two_pi{1.837877066409345561127, -7.756588316134483e-17};
inline constexpr dd log_glaisher{0.2487544770337842547914, 7.755882066780179e-18};
inline constexpr dd gamma1{-0.07281584548367672771185, 2.851266173998682e-18};
inline constexpr dd gamma2{-0.009690363192872319259008, 7.744776654821997e-19};
inline constexpr dd zeta_two{1.644934066848226406066, 3.040672350398476e-17};
} // namespace ddc

// exp(a) - 1 without the final rounding cliff: argument reduced by 2^9,
// kernel sums e^r - 1, then unscaled via p <- p^2 + 2p.
namespace detail_dd {
inline dd expm1_kernel(dd r) {
    r = ldexp(r, -9);
    dd p = r, term = r;
    for (int i = 2; i <= 14; ++i) {
        term = term * r / dd(double(i));
        p = p + term;
        if (std::fabs(term.hi) < 1e-40) break;
    }
    for (int i = 0; i < 9; ++i) p = p * p + ldexp(p, 1);
    return p;
}
} // namespace detail_dd

inline dd exp(dd a) {
    if (a.hi > 709.0) return dd(std::numeric_limits<double>::infinity());
    if (a.hi < -745.0) return dd(0.0);
    double k = std::floor(a.hi / ddc::ln2.hi + 0.5);
    dd r = a - ddc::ln2 * dd(k);
    dd p = detail_dd::expm1_kernel(r);
    return ldexp(p + dd(1.0), int(k));
}

inline dd expm1(dd a) {
    if (std::fabs(a.hi) < 0.5) return detail_dd::expm1_kernel(a);
    return exp(a) - dd(1.0);
}

// natural log for a > 0, by Newton refinement of the double seed
inline dd log(dd a) {
    double y0 = std::log(a.hi);
    dd r = dd(y0) + (exp(dd(-y0)) * a - dd(1.0));
    r = r + (exp(-r) * a - dd(1.0));
    return r;
}

inline dd pow(dd a, dd b) { return exp(b * log(a)); }

// sin/cos after reduction mod pi/2; intended for moderate |a| (reduction is
// plain double-word, not Payne-Hanek)
inline void sincos(dd a, dd& s, dd& c) {
    double k = std::nearbyint(a.hi / ddc::half_pi.hi);
    dd r = a - ddc::half_pi * dd(k);
    dd r2 = r * r;
    dd ss = r, cc = dd(1.0), term = r;
    for (int i = 1; i <= 15; ++i) {
        term = term * r2 / dd(double(2 * i) * double(2 * i + 1));
        ss = (i % 2) ? ss - term : ss + term;
        if (std::fabs(term.hi) < 1e-36) break;
    }
    term = dd(1.0);
    for (int i = 1; i <= 15; ++i) {
        term = term * r2 / dd(double(2 * i - 1) * double(2 * i));
        cc = (i % 2) ? cc - term : cc + term;
        if (std::fabs(term.hi) < 1e-36) break;
    }
    switch (((long long)k % 4 + 4) % 4) {
        case 0: s = ss;  c = cc;  break;
        case 1: s = cc;  c = -ss; break;
        case 2: s = -ss; c = -cc; break;
        default: s = -cc; c = ss; break;
    }
}

inline dd sin(dd a) { dd s, c; sincos(a, s, c); return s; }
inline dd cos(dd a) { dd s, c; sincos(a, s, c); return c; }

// angle of (x, y), Newton-corrected from the double seed
inline dd atan2(dd y, dd x) {
    double t0 = std::atan2(y.hi, x.hi);
    dd t(t0);
    dd h = sqrt(x * x + y * y);
    for (int i = 0; i < 2; ++i) {
        dd s, c;
        sincos(t, s, c);
        t = t + (y * c - x * s) / h;
    }
    return t;
}

// B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..17; numerators and
// denominators of B_{2k} are exact in double up to 2k = 34.
inline const dd* stirling_coefficients() {
    static const std::array<dd, 18> table = [] {
        std::array<dd, 18> t{};
        const double num[] = {0, 1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611,
                              854513, -236364091, 8553103, -23749461029.0,
                              8615841276005.0, -7709321041217.0, 2577687858367.0};
        const double den[] = {1, 6, 30, 42, 30, 66, 2730, 6, 510, 798, 330,
                              138, 2730, 6, 870, 14322, 510, 6};
        for (int k = 1; k <= 17; ++k)
            t[k] = dd(num[k]) / dd(den[k] * double(2 * k) * double(2 * k - 1));
        return t;
    }();
    return table.data();
}

// log Gamma(x) for real x > 0: shift to x + m >= 30, then Stirling
inline dd lgamma(dd x) {
    dd shift(0.0);
    int m = 0;
    if (x.hi < 30.0) m = int(30.0 - x.hi) + 1;
    for (int j = 0; j < m; ++j) shift = shift + log(x + dd(double(j)));
    dd z = x + dd(double(m));
    dd lz = log(z);
    dd acc = (z - dd(0.5)) * lz - z + ldexp(ddc::log_two_pi, -1);
    const dd* coef = stirling_coefficients();
    dd zinv = dd(1.0) / z, z2 = zinv * zinv, p = zinv;
    for (int k = 1; k <= 17; ++k) {
        dd term = coef[k] * p;
        acc = acc + term;
        if (std::fabs(term.hi) < 1e-38 * std::fabs(acc.hi)) break;
        p = p * z2;
    }
    return acc - shift;
}

// Gamma(x) for real non-pole x (upward recurrence through x <= 0)
inline dd tgamma(dd x) {
    if (x.hi >= 0.5) return exp(lgamma(x));
    dd prod(1.0);
    while (x.hi < 0.5) {
        prod = prod * x;
        x = x + dd(1.0);
    }
    return exp(lgamma(x)) / prod;
}

// complex double-word value
struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r) : re(r) {}
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(double r, double i = 0.0) : re(r), im(i) {}
    explicit cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
};

inline std::complex<double> to_cplx(cdd a) { return {double(a.re), double(a.im)}; }

inline cdd operator-(cdd a) { return {-a.re, -a.im}; }
inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator/(cdd a, cdd b) {
    dd d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline cdd operator*(cdd a, dd b) { return {a.re * b, a.im * b}; }
inline cdd operator*(dd a, cdd b) { return b * a; }
inline cdd operator/(cdd a, dd b) { return {a.re / b, a.im / b}; }

inline dd abs2(cdd a) { return a.re * a.re + a.im * a.im; }
inline dd abs(cdd a) { return sqrt(abs2(a)); }

inline cdd exp(cdd a) {
    dd m = exp(a.re), s, c;
    sincos(a.im, s, c);
    return {m * c, m * s};
}

// principal branch
inline cdd log(cdd a) {
    return {ldexp(log(abs2(a)), -1), atan2(a.im, a.re)};
}

inline cdd ldexp(cdd a, int k) { return {ldexp(a.re, k), ldexp(a.im, k)}; }

inline cdd cosh(cdd a) {
    cdd e = exp(a), f = exp(-a);
    return ldexp(e + f, -1);
}

inline cdd sinh(cdd a) {
    cdd e = exp(a), f = exp(-a);
    return ldexp(e - f, -1);
}

} // namespace lamlog
