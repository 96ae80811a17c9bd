#pragma once

#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lamlog {

using rational = boost::multiprecision::cpp_rational;

// B_1 = -1/2 convention; exact values cached up to this index.
inline constexpr int bernoulli_cap = 64;

namespace detail {

// Defining recurrence: sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1.
inline const std::vector<rational>& bernoulli_table() {
    static const std::vector<rational> table = [] {
        std::vector<rational> b(bernoulli_cap + 1);
        b[0] = 1;
        for (int n = 1; n <= bernoulli_cap; ++n) {
            rational s = 0;
            boost::multiprecision::cpp_int c = 1; // C(n+1, k), k ascending
            for (int k = 0; k < n; ++k) {
                s += rational(c) * b[k];
                c = c * (n + 1 - k) / (k + 1);
            }
            b[n] = -s / rational(c); // c == C(n+1, n) == n+1
        }
        return b;
    }();
    return table;
}

} // namespace detail

inline const rational& bernoulli(int n) {
    if (n < 0 || n > bernoulli_cap)
        throw std::domain_error("bernoulli: index outside [0, 64]");
    return detail::bernoulli_table()[n];
}

inline double bernoulli_d(int n) {
    static const std::vector<double> view = [] {
        std::vector<double> v(bernoulli_cap + 1);
        for (int k = 0; k <= bernoulli_cap; ++k)
            v[k] = detail::bernoulli_table()[k].convert_to<double>();
        return v;
    }();
    if (n < 0 || n > bernoulli_cap)
        throw std::domain_error("bernoulli: index outside [0, 64]");
    return view[n];
}

// B_{2k}/(2k)! as doubles; safe against factorial overflow for 2k <= 64.
inline double bernoulli_over_factorial(int two_k) {
    static const std::vector<double> view = [] {
        std::vector<double> v(bernoulli_cap + 1, 0.0);
        rational fact = 1;
        for (int m = 0; m <= bernoulli_cap; ++m) {
            if (m > 0) fact *= m;
            v[m] = (detail::bernoulli_table()[m] / fact).convert_to<double>();
        }
        return v;
    }();
    if (two_k < 0 || two_k > bernoulli_cap)
        throw std::domain_error("bernoulli: index outside [0, 64]");
    return view[two_k];
}

} // namespace lamlog
