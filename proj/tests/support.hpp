#pragma once

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <lamlog/double_double.hpp>

namespace testsup {

using real50 = boost::multiprecision::cpp_bin_float_50;

inline real50 wide(lamlog::dd a) { return real50(a.hi) + real50(a.lo); }

// |a - ref| in units of the reference magnitude (absolute if ref ~ 0)
inline double rel_diff(lamlog::dd a, const real50& ref) {
    real50 d = abs(wide(a) - ref);
    real50 s = abs(ref);
    if (s > 0) d /= s;
    return d.convert_to<double>();
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    double d = std::abs(a - b);
    double s = std::max(std::abs(a), std::abs(b));
    return s > 0 ? d / s : d;
}

} // namespace testsup
