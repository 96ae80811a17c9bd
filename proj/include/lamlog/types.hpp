#pragma once

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace lamlog {

using cplx = std::complex<double>;

namespace detail {

inline std::string fmt_params(const char* name, cplx v) {
    std::ostringstream os;
    os.precision(17);
    os << name << "=" << v.real() << "," << v.imag();
    return os.str();
}

} // namespace detail

// Convergence budget and accuracy targets shared by series and quadrature
// drivers. At least one of abs_tol / rel_tol must be positive; budgets must
// be positive. Stopping rules treat the pair as "whichever is weaker":
// threshold = max(abs_tol, rel_tol * |running value|).
struct tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long   max_terms = 200000;
    long   max_evals = 2000000;
};

inline void validate(const tolerance& tol) {
    if (!(tol.abs_tol > 0.0) && !(tol.rel_tol > 0.0))
        throw std::invalid_argument("tolerance: abs_tol or rel_tol must be positive");
    if (tol.abs_tol < 0.0 || tol.rel_tol < 0.0)
        throw std::invalid_argument("tolerance: negative tolerance");
    if (tol.max_terms <= 0 || tol.max_evals <= 0)
        throw std::invalid_argument("tolerance: budgets must be positive");
}

inline tolerance tightened(tolerance tol, double factor) {
    tol.abs_tol *= factor;
    tol.rel_tol *= factor;
    return tol;
}

struct sum_result {
    cplx value{};
    long terms = 0;
};

struct quad_result {
    cplx   value{};
    double err_estimate = 0.0;
    long   n_evals = 0;
    bool   converged = false;
};

// Raised when a series or acceleration scheme exhausts its budget before
// reaching tolerance; carries the partial value for diagnostics.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, cplx partial, long terms)
        : std::runtime_error(what), partial_(partial), terms_(terms) {}
    cplx partial() const { return partial_; }
    long terms() const { return terms_; }

  private:
    cplx partial_;
    long terms_;
};

// Raised by the main transform evaluator when the requested parameters need
// more cancellation headroom than the extended accumulator provides. Names
// the smallest term index that would breach the budget.
class headroom_error : public std::domain_error {
  public:
    headroom_error(const std::string& what, long n, double digits_needed)
        : std::domain_error(what), n_(n), digits_(digits_needed) {}
    long first_bad_term() const { return n_; }
    double digits_needed() const { return digits_; }

  private:
    long n_;
    double digits_;
};

// One verified identity instance: both sides, errors against the combined
// tolerance, and work counters. `ref` is a human-readable description of the
// relation; `id` is the registry key used by the command line tools.
struct identity_report {
    std::string id;
    std::string ref;
    std::string params;
    cplx lhs{};
    cplx rhs{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
    long terms = 0;
    long evals = 0;
    double wall_ms = 0.0;
};

inline identity_report make_report(std::string id, std::string ref, std::string params,
                                   cplx lhs, cplx rhs, const tolerance& tol,
                                   long terms, long evals) {
    identity_report r;
    r.id = std::move(id);
    r.ref = std::move(ref);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
    r.pass = r.abs_err <= std::max(tol.abs_tol, tol.rel_tol * scale);
    r.terms = terms;
    r.evals = evals;
    return r;
}

} // namespace lamlog
