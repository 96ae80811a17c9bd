#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lamlog {

namespace detail {

// smallest-prime-factor sieve, grown on demand; factorization below stays
// O(log n) for sieved n and falls back to trial division above the cap.
// Growth swaps in a fresh immutable snapshot under a lock so concurrent
// readers keep a stable view
inline std::shared_ptr<const std::vector<std::uint32_t>> spf_sieve(std::uint64_t need) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<std::uint32_t>> cur =
        std::make_shared<const std::vector<std::uint32_t>>(
            std::vector<std::uint32_t>{0, 1});
    std::lock_guard<std::mutex> lock(mu);
    if (need >= cur->size() && need <= (1u << 22)) {
        std::size_t n = std::max<std::size_t>(need + 1, 1024);
        std::vector<std::uint32_t> spf(n, 0);
        spf[1] = 1;
        for (std::size_t i = 2; i < n; ++i) {
            if (spf[i] == 0) {
                for (std::size_t j = i; j < n; j += i)
                    if (spf[j] == 0) spf[j] = std::uint32_t(i);
            }
        }
        cur = std::make_shared<const std::vector<std::uint32_t>>(std::move(spf));
    }
    return cur;
}

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, int>> out;
    auto hold = spf_sieve(n);
    const auto& spf = *hold;
    if (n < spf.size()) {
        while (n > 1) {
            std::uint64_t p = spf[n];
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
        return out;
    }
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace detail

// number of divisors d(n)
inline long divisor_count(std::uint64_t n) {
    long d = 1;
    for (auto [p, e] : detail::factorize(n)) d *= e + 1;
    return d;
}

// divisor power sum sigma_a(n) = sum_{d | n} d^a for real a
inline double sigma(double a, std::uint64_t n) {
    double s = 1.0;
    for (auto [p, e] : detail::factorize(n)) {
        // geometric series 1 + p^a + ... + p^{ea}
        double pa = std::pow(double(p), a);
        double block = 1.0, q = 1.0;
        for (int i = 0; i < e; ++i) { q *= pa; block += q; }
        s *= block;
    }
    return s;
}

// all divisors of n in increasing order
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : detail::factorize(n)) {
        std::size_t base = out.size();
        std::uint64_t q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// sigma_a(n) for complex exponent a; summed in fixed divisor order
inline std::complex<double> sigma_c(std::complex<double> a, std::uint64_t n) {
    if (a.imag() == 0.0) return {sigma(a.real(), n), 0.0};
    std::complex<double> s = 0.0;
    for (std::uint64_t d : divisors(n)) s += std::exp(a * std::log(double(d)));
    return s;
}

} // namespace lamlog
