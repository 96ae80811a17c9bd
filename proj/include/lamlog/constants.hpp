#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "bernoulli.hpp"
#include "double_double.hpp"
#include "summation.hpp"
#include "types.hpp"

namespace lamlog {

// Closed-form symbolic layer for Euler-Maclaurin tails: finite combinations
// sum c * x^{-p} log^q x, closed under d/dx. Coefficients stay integral, so
// double coefficients are exact through every derivative order used here.
class em_series {
  public:
    static em_series term(int p, int q, double c = 1.0) {
        em_series s;
        s.coef_[{p, q}] = c;
        return s;
    }

    em_series derivative() const {
        em_series out;
        for (const auto& [pq, c] : coef_) {
            auto [p, q] = pq;
            out.coef_[{p + 1, q}] += -double(p) * c;
            if (q >= 1) out.coef_[{p + 1, q - 1}] += double(q) * c;
        }
        return out;
    }

    em_series derivative(int order) const {
        em_series out = *this;
        for (int i = 0; i < order; ++i) out = out.derivative();
        return out;
    }

    double operator()(double x) const {
        double lx = std::log(x);
        kahan_accumulator acc;
        for (const auto& [pq, c] : coef_) {
            auto [p, q] = pq;
            acc.add(c * std::pow(x, -double(p)) * std::pow(lx, double(q)));
        }
        return acc.real();
    }

    dd eval_dd(double x) const {
        dd lx = lamlog::log(dd(x));
        dd acc(0.0);
        for (const auto& [pq, c] : coef_) {
            auto [p, q] = pq;
            dd t(c);
            dd xp = lamlog::exp(double(-p) * lamlog::log(dd(x)));
            t = t * xp;
            for (int i = 0; i < q; ++i) t = t * lx;
            acc = acc + t;
        }
        return acc;
    }

  private:
    std::map<std::pair<int, int>, double> coef_;
};

// gamma_k = lim ( sum_{j<=n} log^k(j)/j - log^{k+1}(n)/(k+1) ), accelerated
// with Euler-Maclaurin corrections at n = 1000; double-word sums because the
// limit emerges from ~4 digits of cancellation for k = 2.
inline double stieltjes(int k) {
    if (k < 0 || k > 8) throw std::domain_error("stieltjes: index outside [0, 8]");
    static const std::vector<double> table = [] {
        std::vector<double> out(9);
        const int n = 1000;
        const int R = 5;
        for (int k = 0; k <= 8; ++k) {
            dd s(0.0);
            for (int j = 1; j <= n; ++j) {
                dd lj = lamlog::log(dd(double(j)));
                dd t = dd(1.0) / dd(double(j));
                for (int i = 0; i < k; ++i) t = t * lj;
                s = s + t;
            }
            dd ln = lamlog::log(dd(double(n)));
            dd sub(1.0);
            for (int i = 0; i <= k; ++i) sub = sub * ln;
            s = s - sub / dd(double(k + 1));
            em_series f = em_series::term(1, k);
            s = s - f.eval_dd(n) * dd(0.5);
            for (int r = 1; r <= R; ++r) {
                double corr = bernoulli_over_factorial(2 * r) * f.derivative(2 * r - 1)(n);
                s = s - dd(corr);
            }
            out[k] = double(s);
        }
        return out;
    }();
    return table[k];
}

// log of the Glaisher-Kinkelin constant:
// lim ( sum_{j<=n} j log j - (n^2/2 + n/2 + 1/12) log n + n^2/4 ),
// EM-corrected at n = 400; double-word sums absorb the ~6 digits lost
// between the 1e5-scale sum and its asymptotic.
inline double glaisher_log() {
    static const double value = [] {
        const int n = 400;
        dd s(0.0);
        for (int j = 2; j <= n; ++j) s = s + dd(double(j)) * lamlog::log(dd(double(j)));
        dd ln = lamlog::log(dd(double(n)));
        dd n2 = dd(double(n)) * dd(double(n));
        s = s - (ldexp(n2, -1) + dd(0.5 * n) + dd(1.0) / dd(12.0)) * ln;
        s = s + ldexp(n2, -2);
        em_series f = em_series::term(-1, 1);
        for (int r = 2; r <= 5; ++r)
            s = s - dd(bernoulli_over_factorial(2 * r) * f.derivative(2 * r - 1)(n));
        return double(s);
    }();
    return value;
}

// zeta(2k) exactly from Bernoulli numbers
inline double zeta_even(int k) {
    if (k < 1 || k > 32) throw std::domain_error("zeta_even: index outside [1, 32]");
    static const std::vector<double> table = [] {
        std::vector<double> v(33, 0.0);
        // Bernoulli form only while (2 pi)^{2k} is still accurate; past that
        // the direct sum needs only a handful of sub-ulp terms anyway.
        for (int k = 1; k <= 4; ++k) {
            double sign = (k % 2 == 1) ? 1.0 : -1.0;
            dd p = ddc::pi * 2.0;
            dd pw = dd(1.0);
            for (int j = 0; j < 2 * k; ++j) pw = pw * p;
            v[k] = double(dd(sign * 0.5) * dd(bernoulli_over_factorial(2 * k)) * pw);
        }
        for (int k = 5; k <= 32; ++k) {
            int nmax = std::max(3, int(std::ceil(std::pow(10.0, 11.0 / k))));
            dd s(0.0);
            for (int n = nmax; n >= 2; --n) s = s + std::pow(double(n), -2.0 * k);
            v[k] = double(dd(1.0) + s);
        }
        return v;
    }();
    return table[k];
}

// zeta'(2k) for k = 1..32 via EM-tailed log-weighted sums: the tail past
// N = 50 of sum log(n) n^{-2k} is integral + f(N)/2 - EM corrections.
inline double zeta_prime_even(int k) {
    if (k < 1 || k > 32) throw std::domain_error("zeta_prime_even: index outside [1, 32]");
    static const std::vector<double> table = [] {
        std::vector<double> v(33, 0.0);
        const int N = 50;
        const int R = 4;
        for (int k = 1; k <= 32; ++k) {
            kahan_accumulator acc;
            for (int n = 2; n < N; ++n)
                acc.add(std::log(double(n)) * std::pow(double(n), -2.0 * k));
            em_series f = em_series::term(2 * k, 1);
            double m = 2.0 * k - 1.0;
            double tail = std::pow(double(N), -m) * (std::log(double(N)) / m + 1.0 / (m * m));
            tail += 0.5 * f(N);
            for (int r = 1; r <= R; ++r)
                tail -= bernoulli_over_factorial(2 * r) * f.derivative(2 * r - 1)(N);
            v[k] = -(acc.real() + tail);
        }
        return v;
    }();
    return table[k];
}

// Tail sums against zeta values: Z_N(m) = sum_{n > N} n^{-m} and
// L_N(m) = sum_{n > N} log(n) n^{-m} (= -zeta'(m) - partial). Small m keeps
// the closed form; large m sums directly since the tail is then tiny and
// fast-converging, avoiding catastrophic cancellation against 1.
inline double zeta_tail(int m, int N) {
    if (m % 2 != 0 || m < 2) throw std::domain_error("zeta_tail: even m >= 2 required");
    if (m <= 6) {
        kahan_accumulator acc;
        acc.add(zeta_even(m / 2));
        for (int n = 1; n <= N; ++n) acc.add(-std::pow(double(n), -double(m)));
        return acc.real();
    }
    kahan_accumulator acc;
    for (int n = N + 1;; ++n) {
        double t = std::pow(double(n), -double(m));
        acc.add(t);
        if (t < 1e-18 * acc.real() || t < 1e-300) break;
    }
    return acc.real();
}

inline double zeta_log_tail(int m, int N) {
    if (m % 2 != 0 || m < 2) throw std::domain_error("zeta_log_tail: even m >= 2 required");
    if (m <= 6) {
        kahan_accumulator acc;
        acc.add(-zeta_prime_even(m / 2));
        for (int n = 2; n <= N; ++n) acc.add(-std::log(double(n)) * std::pow(double(n), -double(m)));
        return acc.real();
    }
    kahan_accumulator acc;
    for (int n = N + 1;; ++n) {
        double t = std::log(double(n)) * std::pow(double(n), -double(m));
        acc.add(t);
        if (t < 1e-18 * acc.real() || t < 1e-300) break;
    }
    return acc.real();
}

} // namespace lamlog
