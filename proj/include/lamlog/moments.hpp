#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "lambert.hpp"
#include "quadrature.hpp"
#include "summation.hpp"
#include "types.hpp"
#include "zeta.hpp"

namespace lamlog {

struct moment_params {
    double delta = 0.5;
    tolerance tol{};
    double t_cap = 0.0; // 0 selects the 40/delta default
};

struct moment_report {
    double delta = 0.0;
    cplx value{};
    cplx leading{};
    cplx residual{};
    long evals = 0;
    double t_cap = 0.0;
};

namespace detail {

inline double resolve_t_cap(const moment_params& p) {
    if (!(p.delta > 0.0 && p.delta < ddc::pi.hi))
        throw std::domain_error("moment: delta must lie in (0, pi)");
    validate(p.tol);
    double floor_cap = 40.0 / p.delta;
    if (p.t_cap == 0.0) return floor_cap;
    if (p.t_cap < floor_cap)
        throw std::invalid_argument("moment: t_cap below the 40/delta tail bound");
    return p.t_cap;
}

// fixed panels ~0.5 wide in t, each refined adaptively; panel order and the
// compensated reduction are fixed so results are reproducible
template <typename F>
cplx integrate_damped(F&& f, double t_cap, const tolerance& tol, long* evals) {
    long panels = std::max<long>(1, (long)std::ceil(t_cap / 0.5));
    double h = t_cap / double(panels);
    tolerance panel_tol = tol;
    panel_tol.abs_tol = std::max(tol.abs_tol / double(panels), 1e-300);
    kahan_accumulator acc;
    long used = 0;
    for (long k = 0; k < panels; ++k) {
        double a = double(k) * h;
        quad_result q = integrate_adaptive(f, a, a + h, panel_tol);
        acc.add(q.value);
        used += q.n_evals;
    }
    if (evals) *evals += used;
    return acc.value();
}

} // namespace detail

// conj(zeta(1/2 + it)) * zeta'(1/2 + it); equal to the off-line pairing of
// zeta and zeta' by reflection across the real axis
inline cplx zeta_pair_integrand(double t) {
    if (t < 0.0) throw std::domain_error("zeta_pair_integrand: t must be nonnegative");
    auto zs = zeta_and_prime(cplx(0.5, t));
    return std::conj(zs.first) * zs.second;
}

// closed form of the leading term of the smoothed pair moment
inline cplx moment_leading_term(double delta) {
    if (!(delta > 0.0 && delta < ddc::two_pi.hi))
        throw std::domain_error("moment_leading_term: delta must lie in (0, 2*pi)");
    double l = std::log(ddc::two_pi.hi * delta);
    double g = ddc::euler.hi;
    return cplx((-l * l + g * g - ddc::zeta_two.hi) / (4.0 * std::sin(0.5 * delta)), 0.0);
}

// main term of the smoothed second moment on the critical line
inline cplx second_moment_main_term(double delta) {
    if (!(delta > 0.0 && delta < ddc::two_pi.hi))
        throw std::domain_error("second_moment_main_term: delta must lie in (0, 2*pi)");
    return cplx((ddc::euler.hi - std::log(ddc::two_pi.hi * delta)) /
                    (2.0 * std::sin(0.5 * delta)),
                0.0);
}

inline moment_report smoothed_moment(const moment_params& p) {
    double t_cap = detail::resolve_t_cap(p);
    tolerance inner = tightened(p.tol, 0.1);
    double delta = p.delta;
    auto f = [delta](double t) -> cplx {
        return zeta_pair_integrand(t) * std::exp(-delta * t);
    };
    moment_report rep;
    rep.delta = delta;
    rep.t_cap = t_cap;
    rep.value = detail::integrate_damped(f, t_cap, inner, &rep.evals);
    rep.leading = moment_leading_term(delta);
    rep.residual = rep.value - rep.leading;
    return rep;
}

// the same integral with the roles of zeta and zeta' swapped across the real
// axis; equals the conjugate of smoothed_moment for real delta
inline cplx conjugate_moment(const moment_params& p, long* evals = nullptr) {
    double t_cap = detail::resolve_t_cap(p);
    tolerance inner = tightened(p.tol, 0.1);
    double delta = p.delta;
    auto f = [delta](double t) -> cplx {
        cplx z = zeta(cplx(0.5, t));
        auto zs = zeta_and_prime(cplx(0.5, -t));
        return z * zs.second * std::exp(-delta * t);
    };
    long used = 0;
    cplx v = detail::integrate_damped(f, t_cap, inner, &used);
    if (evals) *evals += used;
    return v;
}

// smoothed |zeta|^2 moment minus its main term; run before the pair moment
// so the critical-line machinery is validated against the classical result
inline moment_report sw2nd_calibration(const moment_params& p) {
    double t_cap = detail::resolve_t_cap(p);
    tolerance inner = tightened(p.tol, 0.1);
    double delta = p.delta;
    auto f = [delta](double t) -> cplx {
        return std::norm(zeta(cplx(0.5, t))) * std::exp(-delta * t);
    };
    moment_report rep;
    rep.delta = delta;
    rep.t_cap = t_cap;
    rep.value = detail::integrate_damped(f, t_cap, inner, &rep.evals);
    rep.leading = second_moment_main_term(delta);
    rep.residual = rep.value - rep.leading;
    return rep;
}

// polynomial extrapolation of (delta, residual) points to delta = 0; the
// residual limit is reported, never asserted against a literal
inline cplx extract_limit(const std::vector<std::pair<double, cplx>>& pts) {
    if (pts.size() < 2) throw std::invalid_argument("extract_limit: need at least two points");
    cplx out{};
    for (size_t i = 0; i < pts.size(); ++i) {
        double num = 1.0, den = 1.0;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            num *= -pts[j].first;
            den *= pts[i].first - pts[j].first;
        }
        out += pts[i].second * (num / den);
    }
    return out;
}

inline cplx rotated_point(double delta) {
    return ddc::two_pi.hi * cplx(std::sin(delta), std::cos(delta) - 1.0);
}

// divisor-weighted route at the rotated point y = 2*pi*(sin d + i(cos d - 1))
inline cplx rotated_series_route(double delta, const tolerance& tol, long* terms = nullptr) {
    if (!(delta > 0.0 && delta < ddc::half_pi.hi))
        throw std::domain_error("rotated_series_route: delta must lie in (0, pi/2)");
    sum_result s = divisor_log_exp_sum(rotated_point(delta), tol);
    if (terms) *terms = s.terms;
    return s.value;
}

// dual evaluation at the rotated point: the divisor-weighted series against
// twice the transformed closed form
inline identity_report rotated_route_check(double delta, const tolerance& tol) {
    if (!(delta > 0.0 && delta < ddc::half_pi.hi))
        throw std::domain_error("rotated_route_check: delta must lie in (0, pi/2)");
    tolerance inner = tightened(tol, 0.1);
    long sterms = 0, tterms = 0;
    cplx y = rotated_point(delta);
    cplx direct = rotated_series_route(delta, inner, &sterms);
    cplx transformed = 2.0 * transformed_log_lambert(y, inner, &tterms);
    std::ostringstream os;
    os.precision(17);
    os << "delta=" << delta << ";y=" << y.real() << "," << y.imag();
    return make_report("rotated", "divisor log series at the rotated point, dual route",
                       os.str(), direct, transformed, tol, sterms + tterms, 0);
}

} // namespace lamlog
