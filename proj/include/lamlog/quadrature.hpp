#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "summation.hpp"
#include "types.hpp"

namespace lamlog {

namespace detail {

// Gauss-Kronrod 7-15 abscissae/weights on [-1, 1]; even indices of xgk are
// Kronrod-only nodes, odd ones carry the embedded Gauss rule.
inline constexpr double gk_xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct panel_value {
    cplx value;
    double err;
};

// one 15-point Kronrod panel; err is |K15 - G7|, a deliberate overestimate
// of the K15 truncation error
template <class F>
panel_value gk15(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx k15 = gk_wgk[7] * fc;
    cplx g7 = gk_wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = h * gk_xgk[j];
        cplx fv = f(c - dx) + f(c + dx);
        k15 += gk_wgk[j] * fv;
        if (j % 2 == 1) g7 += gk_wg[j / 2] * fv;
    }
    return {k15 * h, std::abs((k15 - g7) * h)};
}

} // namespace detail

// Adaptive bisection on [a, b], worst panel first. Touching the eval budget
// returns the best estimate with converged = false rather than throwing.
template <class F>
quad_result integrate_adaptive(F&& f, double a, double b, const tolerance& tol) {
    validate(tol);
    struct seg {
        double err;
        double a, b;
        cplx value;
        bool operator<(const seg& o) const {
            if (err != o.err) return err > o.err; // largest error first
            return a < o.a;
        }
    };
    quad_result out;
    detail::panel_value first = detail::gk15(f, a, b);
    out.n_evals = 15;
    std::multiset<seg> segs{{first.err, a, b, first.value}};
    double total_err = first.err;
    cplx total = first.value;
    const double min_width = 1e-14 * (std::fabs(a) + std::fabs(b) + 1.0);
    while (true) {
        double goal = std::max(tol.abs_tol, tol.rel_tol * std::abs(total));
        if (total_err <= goal) {
            out.converged = true;
            break;
        }
        if (out.n_evals + 30 > tol.max_evals) break;
        seg worst = *segs.begin();
        if (worst.b - worst.a <= min_width) break; // roundoff-limited
        segs.erase(segs.begin());
        double mid = 0.5 * (worst.a + worst.b);
        detail::panel_value left = detail::gk15(f, worst.a, mid);
        detail::panel_value right = detail::gk15(f, mid, worst.b);
        out.n_evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        segs.insert({left.err, worst.a, mid, left.value});
        segs.insert({right.err, mid, worst.b, right.value});
    }
    kahan_accumulator acc;
    total_err = 0.0;
    for (const seg& s : segs) {
        acc.add(s.value);
        total_err += s.err;
    }
    out.value = acc.value();
    out.err_estimate = total_err;
    return out;
}

// [a, inf) for integrands decaying fast enough that doubling windows
// eventually contribute below tolerance; adds a geometric bound on the
// untouched tail into err_estimate.
template <class F>
quad_result integrate_to_inf(F&& f, double a, const tolerance& tol) {
    validate(tol);
    quad_result out;
    kahan_accumulator acc;
    tolerance panel_tol = tol;
    panel_tol.abs_tol = std::max(tol.abs_tol / 16.0, 1e-300);
    double left = a, width = 1.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (int k = 0; k < 64; ++k) {
        quad_result part = integrate_adaptive(f, left, left + width, panel_tol);
        out.n_evals += part.n_evals;
        out.err_estimate += part.err_estimate;
        acc.add(part.value);
        double mag = std::abs(part.value);
        if (mag < std::max(tol.abs_tol / 10.0, tol.rel_tol / 10.0 * std::abs(acc.value()))) {
            if (++quiet >= 3) {
                // bound the remaining tail by the observed decay ratio
                double ratio = prev_mag > 0 ? std::min(mag / prev_mag, 0.9) : 0.5;
                out.err_estimate += mag * ratio / (1.0 - ratio);
                out.converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        if (out.n_evals > tol.max_evals) break;
        prev_mag = mag;
        left += width;
        width *= 2.0;
    }
    out.value = acc.value();
    return out;
}

// Oscillatory tail integration: sums half-period panels [a + k h, a + (k+1) h]
// (h defaults to pi for cos/sin oscillations) and accelerates the partial
// sums with an averaging triangle over a trailing window, which tolerates a
// non-monotone head. Throws convergence_error with the best partial value if
// the panel budget runs out.
template <class F>
quad_result integrate_oscillatory(F&& f, double a, double half_period, const tolerance& tol) {
    validate(tol);
    quad_result out;
    tolerance panel_tol = tol;
    panel_tol.abs_tol = std::max(tol.abs_tol / 32.0, 1e-300);
    panel_tol.rel_tol = 0.0;
    panel_tol.max_evals = 40000;
    const double h = half_period;
    std::vector<cplx> partial;
    std::vector<cplx> window;
    kahan_accumulator acc;
    cplx prev_est{};
    int settled = 0;
    const int max_panels = 400;
    double left = a;
    for (int k = 0; k < max_panels; ++k) {
        quad_result part = integrate_adaptive(f, left, left + h, panel_tol);
        left += h;
        out.n_evals += part.n_evals;
        out.err_estimate += part.err_estimate;
        acc.add(part.value);
        partial.push_back(acc.value());

        // averaging triangle over the trailing window
        std::size_t w = std::min<std::size_t>(partial.size(), 20);
        window.assign(partial.end() - w, partial.end());
        for (std::size_t lvl = 1; lvl < w; ++lvl)
            for (std::size_t i = 0; i + lvl < w; ++i)
                window[i] = 0.5 * (window[i] + window[i + 1]);
        cplx est = window[0];

        if (k >= 4) {
            double delta = std::abs(est - prev_est);
            double goal = std::max(tol.abs_tol, tol.rel_tol * std::abs(est));
            if (delta < 0.25 * goal) {
                if (++settled >= 2) {
                    out.value = est;
                    out.err_estimate += delta + 0.25 * goal;
                    out.converged = true;
                    return out;
                }
            } else {
                settled = 0;
            }
        }
        prev_est = est;
        if (out.n_evals > tol.max_evals) break;
    }
    throw convergence_error("integrate_oscillatory: no acceleration convergence",
                            prev_est, out.n_evals);
}

} // namespace lamlog
