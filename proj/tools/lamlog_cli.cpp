// Batch front end: identity suites, asymptotic sweeps, and moment runs,
// emitted as JSON or CSV rows. Row order is fixed by the request, never by
// scheduling, so identical configs produce identical bytes at any thread
// count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <lamlog/lamlog.hpp>

namespace {

using lamlog::cplx;
using lamlog::identity_report;
using lamlog::ordered_json;
using lamlog::tolerance;

// configuration mistakes: bad selectors, malformed grids, violated
// preconditions; all exit 2 before any row is computed
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct run_config {
    std::vector<std::string> identities;
    bool all = false;
    std::string fn;
    std::string target;
    std::vector<std::string> y, z, w, a;
    std::vector<long> m;
    std::vector<double> alpha;
    std::vector<double> delta;
    double c = 0.5;
    std::string krange;
    double t_cap = 0.0;
    bool calibrate = false;
    bool rotated = false;
    double abs_tol = -1.0;
    double rel_tol = -1.0;
    std::string format = "json";
    bool format_set = false;
    std::string out;
    int threads = 1;
    long seed = 0;
    bool timing = false;
};

cplx parse_point(const std::string& s) {
    const char* p = s.c_str();
    char* end = nullptr;
    double re = std::strtod(p, &end);
    if (end == p)
        throw usage_error("bad grid value '" + s + "': expected re or re,im");
    double im = 0.0;
    if (*end == ',') {
        const char* q = end + 1;
        im = std::strtod(q, &end);
        if (end == q)
            throw usage_error("bad grid value '" + s + "': expected re or re,im");
    }
    while (*end == ' ') ++end;
    if (*end != '\0')
        throw usage_error("bad grid value '" + s + "': trailing characters");
    return {re, im};
}

std::vector<cplx> parse_grid(const std::vector<std::string>& raw) {
    std::vector<cplx> out;
    out.reserve(raw.size());
    for (const auto& s : raw) out.push_back(parse_point(s));
    return out;
}

// "a..b", "k1,k2,...", or a single integer
std::vector<int> parse_k_list(const std::string& s) {
    auto parse_int = [&](const std::string& t) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t, &pos);
        } catch (const std::exception&) {
            throw usage_error("bad K value '" + t + "'");
        }
        if (pos != t.size()) throw usage_error("bad K value '" + t + "'");
        if (v < 1 || v > 30) throw usage_error("K must lie in [1, 30]");
        return v;
    };
    std::vector<int> out;
    auto dots = s.find("..");
    if (dots != std::string::npos) {
        int lo = parse_int(s.substr(0, dots));
        int hi = parse_int(s.substr(dots + 2));
        if (lo > hi) throw usage_error("bad K range '" + s + "': lo > hi");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_int(tok));
    if (out.empty()) throw usage_error("empty K list");
    return out;
}

tolerance rel_only(double r) {
    tolerance t;
    t.abs_tol = 0.0;
    t.rel_tol = r;
    return t;
}

tolerance abs_only(double a) {
    tolerance t;
    t.abs_tol = a;
    t.rel_tol = 0.0;
    return t;
}

tolerance apply_overrides(tolerance t, const run_config& cfg) {
    if (cfg.abs_tol >= 0.0) t.abs_tol = cfg.abs_tol;
    if (cfg.rel_tol >= 0.0) t.rel_tol = cfg.rel_tol;
    try {
        lamlog::validate(t);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    return t;
}

// ---- ordered worker pool -------------------------------------------------

struct row_out {
    ordered_json row;
    bool ok = false;   // no runtime error
    bool pass = true;  // identity rows: pass flag; other rows stay true
    std::string note;
};

std::vector<row_out> run_pool(const std::vector<std::function<row_out()>>& tasks,
                              int threads) {
    std::vector<row_out> out(tasks.size());
    int n = std::min<int>(threads, int(tasks.size()));
    if (n <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
        return out;
    }
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < tasks.size();) out[i] = tasks[i]();
    };
    std::vector<std::thread> pool;
    pool.reserve(size_t(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

// schema-shaped row for a computation that refused or failed to converge;
// the reason goes to stderr, not into the row
ordered_json error_row(const std::string& id, const std::string& ref,
                       const std::string& params, cplx partial, long terms) {
    identity_report r;
    r.id = id;
    r.ref = ref;
    r.params = params;
    r.lhs = partial;
    r.rhs = cplx(quiet_nan, quiet_nan);
    r.abs_err = quiet_nan;
    r.rel_err = quiet_nan;
    r.pass = false;
    r.terms = terms;
    r.evals = 0;
    return to_json(r);
}

std::function<row_out()> wrap_identity(const std::string& id, const std::string& ref,
                                       std::string params, bool timing,
                                       std::function<identity_report()> body) {
    return [id, ref, params = std::move(params), timing,
            body = std::move(body)]() -> row_out {
        row_out o;
        try {
            auto t0 = std::chrono::steady_clock::now();
            identity_report r = body();
            auto t1 = std::chrono::steady_clock::now();
            if (timing)
                r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            o.row = to_json(r);
            o.ok = true;
            o.pass = r.pass;
        } catch (const lamlog::convergence_error& e) {
            o.row = error_row(id, ref, params, e.partial(), e.terms());
            o.pass = false;
            o.note = e.what();
        } catch (const lamlog::headroom_error& e) {
            o.row = error_row(id, ref, params, cplx(quiet_nan, quiet_nan),
                              e.first_bad_term());
            o.pass = false;
            o.note = e.what();
        } catch (const std::exception& e) {
            o.row = error_row(id, ref, params, cplx(quiet_nan, quiet_nan), 0);
            o.pass = false;
            o.note = e.what();
        }
        return o;
    };
}

std::string fmt_point(const char* name, cplx v) {
    std::ostringstream os;
    os.precision(17);
    os << name << "=" << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    return os.str();
}

// ---- verify --------------------------------------------------------------

const std::vector<std::string>& all_identities() {
    static const std::vector<std::string> ids = {
        "thm1.1", "eq1.12",   "wigert",   "ramanujan", "maineqn",
        "thm1.2", "dgkm",     "thm3.1",   "thm3.2",    "thm3.3",
        "lemma4.1", "lemma4.2", "thm4.3", "rotated"};
    return ids;
}

void require_positive_real(const std::vector<cplx>& grid, const char* what) {
    for (cplx v : grid)
        if (!(v.real() > 0.0))
            throw usage_error(std::string("Re(") + what + ") must be positive");
}

void require_off_cut(const std::vector<cplx>& grid, const char* what) {
    for (cplx v : grid)
        if (v.imag() == 0.0 && v.real() <= 0.0)
            throw usage_error(std::string(what) +
                              " must avoid the branch cut (-inf, 0]");
}

std::vector<std::function<row_out()>> verify_tasks(const std::string& id,
                                                   const run_config& cfg) {
    std::vector<std::function<row_out()>> tasks;
    auto grid_or = [&](const std::vector<std::string>& raw,
                       std::vector<cplx> dflt) -> std::vector<cplx> {
        if (raw.empty()) return dflt;
        return parse_grid(raw);
    };

    if (id == "thm1.1" || id == "eq1.12" || id == "wigert") {
        std::vector<cplx> dflt;
        tolerance tol;
        std::string ref;
        if (id == "thm1.1") {
            dflt = {{1, 0}, {0.5, 0}, {3, 2}, {0.3, 0.2}};
            tol = rel_only(1e-9);
            ref = "Theorem 1.1, first form";
        } else if (id == "eq1.12") {
            dflt = {{1, 0}, {0.5, 0}, {3, 2}, {0.3, 0.2}};
            tol = rel_only(1e-8);
            ref = "Theorem 1.1, equivalent form";
        } else {
            dflt = {{1, 0}, {lamlog::ddc::two_pi.hi, 0}, {5, 3}};
            tol = rel_only(1e-10);
            ref = "Wigert's reciprocal transformation";
        }
        std::vector<cplx> grid = grid_or(cfg.y, dflt);
        require_positive_real(grid, "y");
        tol = apply_overrides(tol, cfg);
        for (cplx y : grid) {
            auto body = [id, y, tol]() {
                if (id == "thm1.1") return lamlog::check_log_lambert(y, tol);
                if (id == "eq1.12") return lamlog::check_log_lambert_alt(y, tol);
                return lamlog::check_reciprocal_lambert(y, tol);
            };
            tasks.push_back(wrap_identity(id, ref, fmt_point("y", y), cfg.timing, body));
        }
        return tasks;
    }

    if (id == "ramanujan") {
        std::vector<long> ms = cfg.m;
        std::vector<double> als = cfg.alpha;
        if (ms.empty() && als.empty()) {
            ms = {1, 2};
            als = {lamlog::ddc::pi.hi, lamlog::ddc::half_pi.hi};
        }
        if (ms.size() != als.size())
            throw usage_error("ramanujan: --m and --alpha need one value per point");
        tolerance tol = apply_overrides(rel_only(1e-10), cfg);
        for (size_t i = 0; i < ms.size(); ++i) {
            long m = ms[i];
            double al = als[i];
            if (m < 1) throw usage_error("ramanujan: m must be a positive integer");
            if (!(al > 0.0)) throw usage_error("ramanujan: alpha must be positive");
            std::ostringstream os;
            os.precision(17);
            os << "m=" << m << ";alpha=" << al;
            auto body = [m, al, tol]() {
                return lamlog::check_odd_zeta_transform(int(m), al, tol);
            };
            tasks.push_back(wrap_identity(id, "odd zeta value transformation", os.str(),
                                          cfg.timing, body));
        }
        return tasks;
    }

    if (id == "maineqn") {
        std::vector<cplx> as = cfg.a.empty()
                                   ? std::vector<cplx>{{0.5, 0}, {1.5, 0}}
                                   : parse_grid(cfg.a);
        std::vector<cplx> ys =
            cfg.y.empty() ? std::vector<cplx>(as.size(), cplx(8, 0)) : parse_grid(cfg.y);
        if (as.size() != ys.size())
            throw usage_error("maineqn: --a and --y need one value per point");
        require_positive_real(ys, "y");
        for (cplx a : as) {
            if (!(a.real() > -1.0))
                throw usage_error("maineqn: Re(a) must exceed -1");
            if (a.imag() == 0.0) {
                double r = std::round(a.real() / 2.0) * 2.0;
                if (a.real() == r)
                    throw usage_error("maineqn: even integer a hits a cosec pole");
            }
        }
        tolerance tol = apply_overrides(rel_only(1e-6), cfg);
        for (size_t i = 0; i < as.size(); ++i) {
            cplx a = as[i], y = ys[i];
            std::string params = fmt_point("a", a) + ";" + fmt_point("y", y);
            auto body = [a, y, tol]() { return lamlog::check_divisor_power(a, y, tol); };
            tasks.push_back(wrap_identity(id, "generalized divisor sum transformation",
                                          params, cfg.timing, body));
        }
        return tasks;
    }

    if (id == "thm1.2") {
        std::vector<cplx> grid = grid_or(cfg.y, {{0.05, 0}});
        for (cplx y : grid) {
            if (y.imag() != 0.0 || !(y.real() > 0.0) ||
                !(y.real() < lamlog::ddc::two_pi.hi))
                throw usage_error("thm1.2 verification needs real y in (0, 2*pi)");
        }
        for (cplx y : grid) {
            double yr = y.real();
            auto body = [yr]() { return lamlog::check_small_y_expansion(yr); };
            tasks.push_back(wrap_identity(id, "Theorem 1.2, small-argument expansion",
                                          fmt_point("y", y), cfg.timing, body));
        }
        return tasks;
    }

    if (id == "dgkm" || id == "thm3.3" || id == "thm4.3" || id == "lemma4.1" ||
        id == "lemma4.2") {
        std::vector<cplx> dflt;
        tolerance tol;
        std::string ref;
        if (id == "dgkm") {
            dflt = {{1, 0}, {2, 0}, {1, 1}};
            tol = abs_only(1e-8);
            ref = "cosine kernel sum in digamma form";
        } else if (id == "thm3.3") {
            dflt = {{1, 0}, {2, 0}};
            tol = abs_only(1e-6);
            ref = "log-kernel analogue sum";
        } else if (id == "thm4.3") {
            dflt = {{0.5, 0}, {1, 0}, {2, 0}};
            tol = abs_only(1e-8);
            ref = "parameter derivative dual modes";
        } else if (id == "lemma4.1") {
            dflt = {{0.5, 0}, {1, 0}, {2, 0}};
            tol = abs_only(1e-8);
            ref = "cosine kernel integral closed form";
        } else {
            dflt = {{0.5, 0}, {1, 0}, {2, 0}};
            tol = abs_only(1e-8);
            ref = "digamma weighted even series";
        }
        std::vector<cplx> grid = grid_or(cfg.w, dflt);
        require_positive_real(grid, "w");
        tol = apply_overrides(tol, cfg);
        for (cplx w : grid) {
            auto body = [id, w, tol]() {
                if (id == "dgkm") return lamlog::dgkm_identity_check(w, tol);
                if (id == "thm3.3") return lamlog::analogue_dgkm_check(w, tol);
                if (id == "thm4.3") return lamlog::check_ml_param_deriv(w, tol);
                if (id == "lemma4.1") return lamlog::check_cosine_kernel_integral(w, tol);
                return lamlog::check_digamma_series(w, tol);
            };
            tasks.push_back(wrap_identity(id, ref, fmt_point("w", w), cfg.timing, body));
        }
        return tasks;
    }

    if (id == "thm3.2") {
        std::vector<cplx> grid = grid_or(cfg.z, {{2, 0}, {1, 1}});
        require_off_cut(grid, "z");
        if (!(cfg.c > 0.0 && cfg.c < 1.0))
            throw usage_error("thm3.2: c must lie in (0, 1)");
        lamlog::line_integral_spec spec;
        spec.c = cfg.c;
        spec.tol = apply_overrides(abs_only(1e-8), cfg);
        for (cplx z : grid) {
            auto body = [z, spec]() { return lamlog::kloosterman_line_check(z, spec); };
            tasks.push_back(wrap_identity(id, "vertical line representation",
                                          fmt_point("z", z), cfg.timing, body));
        }
        return tasks;
    }

    if (id == "thm3.1") {
        std::vector<cplx> grid = grid_or(cfg.z, {{0, 20}, {-15, 15}, {30, 0}});
        require_off_cut(grid, "z");
        for (cplx z : grid) {
            auto body = [z]() { return lamlog::check_psi1_asymptotic(z); };
            tasks.push_back(wrap_identity(id, "Theorem 3.1, optimal truncation",
                                          fmt_point("z", z), cfg.timing, body));
        }
        return tasks;
    }

    if (id == "rotated") {
        std::vector<double> ds = cfg.delta.empty() ? std::vector<double>{0.3} : cfg.delta;
        tolerance tol = apply_overrides(abs_only(1e-8), cfg);
        for (double d : ds) {
            if (!(d > 0.0 && d < lamlog::ddc::half_pi.hi))
                throw usage_error("delta must lie in (0, pi/2)");
            std::ostringstream os;
            os.precision(17);
            os << "delta=" << d;
            auto body = [d, tol]() { return lamlog::rotated_route_check(d, tol); };
            tasks.push_back(
                wrap_identity(id, "divisor log series at the rotated point, dual route",
                              os.str(), cfg.timing, body));
        }
        return tasks;
    }

    throw usage_error("unknown identity '" + id + "'");
}

void write_doc(const run_config& cfg, const std::vector<ordered_json>& rows,
               const std::string& default_out = "") {
    std::string doc = lamlog::render_rows(rows, cfg.format == "csv");
    std::string path = cfg.out.empty() ? default_out : cfg.out;
    if (path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw usage_error("cannot open output file '" + path + "'");
    f << doc;
    std::cerr << rows.size() << " rows -> " << path << "\n";
}

int emit_and_status(const run_config& cfg, const std::vector<row_out>& results,
                    const std::string& default_out = "") {
    std::vector<ordered_json> rows;
    rows.reserve(results.size());
    bool all_pass = true;
    for (size_t i = 0; i < results.size(); ++i) {
        rows.push_back(results[i].row);
        if (!results[i].pass || !results[i].ok) all_pass = false;
        if (!results[i].note.empty())
            std::cerr << "row " << i << ": " << results[i].note << "\n";
    }
    write_doc(cfg, rows, default_out);
    return all_pass ? 0 : 1;
}

int run_verify(const run_config& cfg, const std::string& default_out = "") {
    std::vector<std::string> ids = cfg.all ? all_identities() : cfg.identities;
    if (ids.empty()) throw usage_error("verify: pass --identity <name> or --all");
    std::vector<std::function<row_out()>> tasks;
    for (const auto& id : ids) {
        auto t = verify_tasks(id, cfg);
        tasks.insert(tasks.end(), std::make_move_iterator(t.begin()),
                     std::make_move_iterator(t.end()));
    }
    return emit_and_status(cfg, run_pool(tasks, cfg.threads), default_out);
}

// ---- asympt ----------------------------------------------------------------

int run_asympt(const run_config& cfg) {
    if (cfg.target != "thm1.2" && cfg.target != "thm3.1")
        throw usage_error("asympt: --target must be thm1.2 or thm3.1");
    bool small_y = cfg.target == "thm1.2";
    const std::vector<std::string>& raw = small_y ? cfg.y : cfg.z;
    if (raw.empty())
        throw usage_error(std::string("asympt: empty grid, pass --") +
                          (small_y ? "y" : "z"));
    std::vector<cplx> grid = parse_grid(raw);
    if (small_y)
        require_positive_real(grid, "y");  // |arg y| < pi/2
    else
        require_off_cut(grid, "z");
    std::vector<int> ks =
        parse_k_list(cfg.krange.empty() ? (small_y ? "1..4" : "1..6") : cfg.krange);

    const char* pname = small_y ? "y" : "z";
    std::string target = cfg.target;
    auto make_row = [pname, target](cplx pt, int k, cplx direct, cplx expn,
                                    double adiff, double next) {
        ordered_json row;
        row["target"] = target;
        row[pname] = lamlog::complex_json(pt);
        row["K"] = k;
        row["direct"] = lamlog::complex_json(direct);
        row["expansion"] = lamlog::complex_json(expn);
        row["abs_diff"] = adiff;
        row["next_term"] = next;
        return row;
    };
    std::vector<std::function<row_out()>> tasks;
    for (cplx pt : grid) {
        for (int k : ks) {
            tasks.push_back([=]() -> row_out {
                row_out o;
                try {
                    cplx direct, expn;
                    double adiff = 0.0, next = 0.0;
                    if (small_y) {
                        if (pt.imag() == 0.0) {
                            lamlog::dd d = lamlog::log_weighted_lambert_sum_dd(
                                lamlog::dd(pt.real()), {});
                            lamlog::dd e =
                                lamlog::small_y_expansion_dd(lamlog::dd(pt.real()), k);
                            direct = cplx(double(d), 0.0);
                            expn = cplx(double(e), 0.0);
                            adiff = std::fabs(double(d - e));
                        } else {
                            direct =
                                lamlog::log_weighted_lambert_sum(pt, rel_only(1e-14)).value;
                            expn = lamlog::small_y_expansion(pt, k).value;
                            adiff = std::abs(direct - expn);
                        }
                        next = std::abs(lamlog::small_y_expansion(pt, k).next_term);
                    } else {
                        lamlog::cdd ref = lamlog::psi1_reference_dd(pt);
                        lamlog::asym_value_dd a = lamlog::psi1_asymptotic_dd(pt, k);
                        direct = lamlog::to_cplx(ref);
                        expn = lamlog::to_cplx(a.value);
                        adiff = double(abs(ref - a.value));
                        next = a.next_term;
                    }
                    o.row = make_row(pt, k, direct, expn, adiff, next);
                    o.ok = true;
                } catch (const std::exception& e) {
                    o.row = make_row(pt, k, cplx(quiet_nan, quiet_nan),
                                     cplx(quiet_nan, quiet_nan), quiet_nan, quiet_nan);
                    o.pass = false;
                    o.note = e.what();
                }
                return o;
            });
        }
    }
    run_config out_cfg = cfg;
    if (!cfg.format_set) out_cfg.format = "csv";  // sweep tables default to CSV
    return emit_and_status(out_cfg, run_pool(tasks, cfg.threads));
}

// ---- moment ----------------------------------------------------------------

ordered_json moment_row(const char* id, const char* ref, const lamlog::moment_report& r,
                        const cplx* rotated) {
    ordered_json row;
    row["identity"] = id;
    row["paper_ref"] = ref;
    ordered_json body = lamlog::to_json(r, rotated);
    for (auto it = body.begin(); it != body.end(); ++it) row[it.key()] = it.value();
    return row;
}

int run_moment(const run_config& cfg) {
    std::vector<double> ds = cfg.delta.empty() ? std::vector<double>{0.4, 0.2, 0.1}
                                               : cfg.delta;
    for (double d : ds)
        if (!(d > 0.0 && d < lamlog::ddc::half_pi.hi))
            throw usage_error("delta must lie in (0, pi/2)");
    if (cfg.t_cap != 0.0)
        for (double d : ds)
            if (cfg.t_cap < 40.0 / d)
                throw usage_error("t_cap below the 40/delta tail bound");

    auto params_for = [&](double d) {
        lamlog::moment_params p;
        p.delta = d;
        p.t_cap = cfg.t_cap;
        if (cfg.abs_tol >= 0.0) p.tol.abs_tol = cfg.abs_tol;
        if (cfg.rel_tol >= 0.0) p.tol.rel_tol = cfg.rel_tol;
        return p;
    };

    struct mrow {
        lamlog::moment_report rep;
        cplx rot{};
        bool ok = false;
        std::string note;
    };
    auto batch = [&](bool calibration) {
        std::vector<std::function<row_out()>> tasks;
        auto shared = std::make_shared<std::vector<mrow>>(ds.size());
        for (size_t i = 0; i < ds.size(); ++i) {
            double d = ds[i];
            tasks.push_back([=]() -> row_out {
                row_out o;
                mrow& m = (*shared)[i];
                try {
                    m.rep = calibration ? lamlog::sw2nd_calibration(params_for(d))
                                        : lamlog::smoothed_moment(params_for(d));
                    if (cfg.rotated) m.rot = lamlog::rotated_series_route(d, {});
                    m.ok = true;
                    o.ok = true;
                } catch (const std::exception& e) {
                    m.rep.delta = d;
                    m.note = e.what();
                    o.pass = false;
                    o.note = e.what();
                }
                return o;
            });
        }
        run_pool(tasks, cfg.threads);
        return shared;
    };

    std::vector<ordered_json> rows;
    bool any_fail = false;
    auto emit_batch = [&](const std::vector<mrow>& ms, const char* id, const char* ref) {
        // the residual limit is a grid-level quantity; repeated per row to
        // keep the table rectangular
        cplx d0{};
        bool have_d0 = false;
        if (ms.size() >= 2) {
            std::vector<std::pair<double, cplx>> pts;
            for (const auto& m : ms)
                if (m.ok) pts.emplace_back(m.rep.delta, m.rep.residual);
            if (pts.size() >= 2) {
                d0 = lamlog::extract_limit(pts);
                have_d0 = true;
            }
        }
        for (size_t i = 0; i < ms.size(); ++i) {
            const mrow& m = ms[i];
            ordered_json row = moment_row(id, ref, m.rep, cfg.rotated ? &m.rot : nullptr);
            if (have_d0) row["d0"] = lamlog::complex_json(d0);
            rows.push_back(std::move(row));
            if (!m.ok) {
                any_fail = true;
                std::cerr << id << " delta=" << ds[i] << ": " << m.note << "\n";
            }
        }
        if (ms.size() >= 3 && !any_fail) {
            std::vector<mrow> sorted = ms;
            std::sort(sorted.begin(), sorted.end(),
                      [](const mrow& a, const mrow& b) { return a.rep.delta > b.rep.delta; });
            double s1 = std::abs(sorted[1].rep.residual - sorted[0].rep.residual);
            double s2 = std::abs(sorted[2].rep.residual - sorted[1].rep.residual);
            std::cerr << id << " residual Cauchy steps: " << s1 << " -> " << s2
                      << (s2 < s1 ? " (contracting)" : " (NOT contracting)") << "\n";
        }
        return have_d0 ? d0 : cplx(quiet_nan, quiet_nan);
    };

    if (cfg.calibrate) {
        auto cal = batch(true);
        emit_batch(*cal, "eq1.9", "second moment calibration");
        bool cal_ok = true;
        for (const auto& m : *cal) cal_ok = cal_ok && m.ok;
        if (cal_ok && cal->size() >= 3) {
            // Cauchy gate on the calibration residuals, largest delta first
            std::vector<mrow> sorted = *cal;
            std::sort(sorted.begin(), sorted.end(),
                      [](const mrow& a, const mrow& b) { return a.rep.delta > b.rep.delta; });
            double step1 =
                std::abs(sorted[1].rep.residual - sorted[0].rep.residual);
            double step2 =
                std::abs(sorted[2].rep.residual - sorted[1].rep.residual);
            if (!(step2 < step1)) {
                std::cerr << "calibration failed: residual steps not contracting ("
                          << step1 << " -> " << step2 << ")\n";
                cal_ok = false;
            }
        }
        if (!cal_ok) {
            write_doc(cfg, rows);
            std::cerr << "calibration failed; zeta pair moment run aborted\n";
            return 1;
        }
    }

    auto pairm = batch(false);
    cplx d0 = emit_batch(*pairm, "thm1.3", "zeta pair smoothed moment");
    if (pairm->size() >= 2 && !any_fail)
        std::cerr << "d0 = " << d0.real() << (d0.imag() < 0 ? "" : "+") << d0.imag()
                  << "i (residual limit over " << pairm->size() << " deltas)\n";
    write_doc(cfg, rows);
    return any_fail ? 1 : 0;
}

// ---- eval ------------------------------------------------------------------

int run_eval(const run_config& cfg) {
    using fn_t = std::function<std::pair<cplx, long>(cplx)>;
    static const std::map<std::string, fn_t> fns = {
        {"psi1", [](cplx z) { return std::make_pair(lamlog::psi1(z), 0L); }},
        {"psi1_reference",
         [](cplx z) { return std::make_pair(lamlog::psi1_reference(z), 0L); }},
        {"digamma", [](cplx z) { return std::make_pair(lamlog::digamma(z), 0L); }},
        {"trigamma", [](cplx z) { return std::make_pair(lamlog::trigamma(z), 0L); }},
        {"log_gamma", [](cplx z) { return std::make_pair(lamlog::log_gamma(z), 0L); }},
        {"zeta", [](cplx z) { return std::make_pair(lamlog::zeta(z), 0L); }},
        {"zeta_prime", [](cplx z) { return std::make_pair(lamlog::zeta_prime(z), 0L); }},
        {"lambert_log",
         [](cplx z) {
             auto s = lamlog::log_weighted_lambert_sum(z, {});
             return std::make_pair(s.value, s.terms);
         }},
        {"lambert_recip",
         [](cplx z) {
             auto s = lamlog::reciprocal_lambert_sum(z, {});
             return std::make_pair(s.value, s.terms);
         }},
        {"divisor_log",
         [](cplx z) {
             auto s = lamlog::divisor_log_exp_sum(z, {});
             return std::make_pair(s.value, s.terms);
         }},
        {"kernel_sum",
         [](cplx z) {
             long t = 0;
             cplx v = lamlog::cosine_kernel_sum(z, {}, &t);
             return std::make_pair(v, t);
         }},
    };
    auto it = fns.find(cfg.fn);
    if (it == fns.end()) {
        std::string names;
        for (const auto& [k, v] : fns) names += (names.empty() ? "" : ", ") + k;
        throw usage_error("eval: unknown --fn '" + cfg.fn + "' (known: " + names + ")");
    }
    if (cfg.z.empty()) throw usage_error("eval: empty grid, pass --z");
    std::vector<cplx> grid = parse_grid(cfg.z);

    std::vector<std::function<row_out()>> tasks;
    for (cplx z : grid) {
        fn_t f = it->second;
        std::string fn = cfg.fn;
        tasks.push_back([=]() -> row_out {
            row_out o;
            ordered_json row;
            row["fn"] = fn;
            row["params"] = fmt_point("z", z);
            try {
                auto [v, terms] = f(z);
                row["value"] = lamlog::complex_json(v);
                row["terms"] = terms;
                o.ok = true;
            } catch (const std::exception& e) {
                row["value"] = lamlog::complex_json(cplx(quiet_nan, quiet_nan));
                row["terms"] = 0;
                o.pass = false;
                o.note = e.what();
            }
            o.row = std::move(row);
            return o;
        });
    }
    return emit_and_status(cfg, run_pool(tasks, cfg.threads));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambert series identity checker and sweep driver"};
    app.get_formatter()->column_width(34);

    run_config cfg;
    std::string command;
    app.add_option("command", command, "eval | verify | asympt | moment | report")
        ->required();
    app.add_option("--identity", cfg.identities, "identity selector (repeatable)");
    app.add_flag("--all", cfg.all, "verify every known identity");
    app.add_option("--fn", cfg.fn, "eval: function name");
    app.add_option("--target", cfg.target, "asympt: thm1.2 | thm3.1");
    app.add_option("--y", cfg.y, "grid point re[,im] (repeatable)");
    app.add_option("--z", cfg.z, "grid point re[,im] (repeatable)");
    app.add_option("--w", cfg.w, "grid point re[,im] (repeatable)");
    app.add_option("--a", cfg.a, "exponent re[,im] (repeatable)");
    app.add_option("--m", cfg.m, "ramanujan: odd zeta index list")->delimiter(',');
    app.add_option("--alpha", cfg.alpha, "ramanujan: alpha list")->delimiter(',');
    app.add_option("--delta", cfg.delta, "moment: delta list")->delimiter(',');
    app.add_option("--c", cfg.c, "thm3.2: line abscissa in (0,1)");
    app.add_option("--K", cfg.krange, "asympt: K range, e.g. 1..6 or 2,4");
    app.add_option("--t-cap", cfg.t_cap, "moment: integration cap (0 = 40/delta)");
    app.add_flag("--calibrate", cfg.calibrate, "moment: gate on the |zeta|^2 suite");
    app.add_flag("--rotated", cfg.rotated, "moment: add rotated-series column");
    app.add_option("--abs-tol", cfg.abs_tol, "override absolute tolerance");
    app.add_option("--rel-tol", cfg.rel_tol, "override relative tolerance");
    auto* fmt_opt = app.add_option("--format", cfg.format, "json | csv")
                        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--threads", cfg.threads, "worker threads")
        ->envname("LAMLOG_THREADS");
    app.add_option("--seed", cfg.seed, "seed for randomized sweeps (reserved)");
    app.add_flag("--timing", cfg.timing, "record wall_ms per row (non-reproducible)");
    app.set_config("--config", "", "key=value file, # comments; flags win");
    // keep "re,im" grid values intact: config arrays use ';', or repeat the key
    app.get_config_formatter_base()->arrayDelimiter(';');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.format_set = fmt_opt->count() > 0;
    if (cfg.threads < 1) cfg.threads = 1;

    try {
        if (command == "verify") return run_verify(cfg);
        if (command == "asympt") return run_asympt(cfg);
        if (command == "moment") return run_moment(cfg);
        if (command == "eval") return run_eval(cfg);
        if (command == "report") {
            run_config rc = cfg;
            rc.all = true;
            std::string dflt =
                "lamlog_report." + std::string(cfg.format == "csv" ? "csv" : "json");
            return run_verify(rc, dflt);
        }
        throw usage_error("unknown command '" + command + "'");
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
