#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mvf/arith/interval_sum.hpp"
#include "mvf/constants/ln_g.hpp"
#include "mvf/core/parallel.hpp"
#include "mvf/numeric/gauss_legendre.hpp"
#include "mvf/perron/line_zeta.hpp"

namespace mvf {

/// F(s) = zeta(s)^a zeta(2s)^b G(s) in double, principal powers.
///
/// |t| <= 100 uses the Mobius route for ln G; higher up the line it switches
/// to direct prime sums, whose tail bound is larger but still ~1e-10 at Re s >= 1.1.
inline Complex<double> F_eval(MultFn fn, const Complex<double>& s) {
    if (!(s.re > 0.55)) throw domain_error("F_eval: requires Re s > 0.55");
    if (s.re <= 1.0 && std::abs(s.im) < 1e-9) throw domain_error("F_eval: s on the real segment (1/2, 1]");
    const NumericForm<double> form(rule_of(fn), 40);
    Complex<double> lg;
    if (std::abs(s.im) <= 100) {
        lg = LnGEvaluator<double>()(form, s).value;
    } else {
        const DirectLnG direct;
        lg = direct.evaluate(form, direct.prime_sums(s)).value;
    }
    const Complex<double> z1 = zeta(s), z2 = zeta(s * 2.0);
    return exp(log(z1) * form.a + log(z2) * form.b + lg);
}

/// F on the line Re s = sigma for several functions at once.
///
/// On Re s > 1, |Im log zeta(s)| <= log zeta(Re s); for sigma < 1.3 that stays
/// below pi, so the principal logarithm is the Dirichlet-series branch.
///
/// Unit panels all share the same node offsets c_i, so e^{-i c_i ln n} is
/// tabulated once and a node costs one complex multiply per term.
class LineIntegrand {
public:
    LineIntegrand(std::vector<MultFn> fns, double sigma, double t_max, std::vector<double> offsets = {},
                  LnGConfig cfg = line_config())
        : fns_(std::move(fns)), z1_(sigma, t_max), z2_(2 * sigma, 2 * t_max), lng_(cfg), sigma_(sigma),
          offsets_(std::move(offsets)) {
        if (!(sigma > 1.0 && sigma < 1.3)) throw domain_error("LineIntegrand: sigma must lie in (1, 1.3)");
        for (auto fn : fns_) forms_.emplace_back(rule_of(fn), cfg.order);
        n1_ = detail::auto_terms(Complex<double>(sigma, t_max + 1)) + 1;
        n2_ = detail::auto_terms(Complex<double>(2 * sigma, 2 * t_max + 2)) + 1;
        build(tab1_, n1_, 1.0, [](std::size_t n) { return std::log(static_cast<double>(n)); });
        build(tab2_, n2_, 2.0, [](std::size_t n) { return std::log(static_cast<double>(n)); });
        const auto& lp = lng_.prime_logs();
        build(tabp_, lp.size(), 1.0, [&](std::size_t i) { return lp[i]; });
    }

    static LnGConfig line_config() {
        LnGConfig c;
        c.order = 12;
        return c;
    }

    std::size_t size() const { return fns_.size(); }
    double sigma() const { return sigma_; }
    const std::vector<double>& offsets() const { return offsets_; }

    /// F_j(sigma + it) for every function; raises *tail to the ln G bound.
    std::vector<Complex<double>> operator()(double t, double* tail = nullptr) const {
        const Complex<double> s(sigma_, t);
        const auto ps = lng_.prime_sums(s);
        return combine(z1_(t), z2_(2 * t), ps, tail);
    }

    /// Values at t = lo + offsets()[i] for every offset; lo must be an integer
    /// with |lo| + 1 <= t_max.
    std::vector<std::vector<Complex<double>>> panel(double lo, double* tail = nullptr) const {
        const double tmax = std::abs(lo) + 1.0;
        const std::size_t m1 = std::min(n1_, detail::auto_terms(Complex<double>(sigma_, tmax)) + 1);
        const std::size_t m2 = std::min(n2_, detail::auto_terms(Complex<double>(2 * sigma_, 2 * tmax)) + 1);
        const Base b1 = base(tab1_, lo, m1), b2 = base(tab2_, lo, m2), bp = base(tabp_, lo, tabp_.count);
        std::vector<std::vector<Complex<double>>> out;
        std::vector<Complex<double>> xp(tabp_.count);
        for (std::size_t i = 0; i < offsets_.size(); ++i) {
            const double t = lo + offsets_[i];
            const Complex<double> s(sigma_, t);
            const Complex<double> z1 = finish(s, head(tab1_, b1, i, m1), m1);
            const Complex<double> z2 = finish(s * 2.0, head(tab2_, b2, i, m2), m2);
            const double* cr = &tabp_.cos[i * tabp_.count];
            const double* ci = &tabp_.sin[i * tabp_.count];
            for (std::size_t j = 0; j < tabp_.count; ++j)
                xp[j] = Complex<double>(bp.re[j] * cr[j] - bp.im[j] * ci[j], bp.re[j] * ci[j] + bp.im[j] * cr[j]);
            out.push_back(combine(z1, z2, lng_.prime_sums(s, xp), tail));
        }
        return out;
    }

private:
    // cos/sin of -scale * c_i * L_n for each offset i, and n^-sigma weights folded into the base
    struct Table {
        std::size_t count = 0;
        double scale = 1.0;
        std::vector<double> log, weight, cos, sin;
    };
    struct Base {
        std::vector<double> re, im;  // weight_n e^{-i scale lo L_n}
    };

    template <class Log>
    void build(Table& tab, std::size_t count, double scale, Log&& log_of) {
        tab.count = count;
        tab.scale = scale;
        tab.log.resize(count);
        tab.weight.resize(count);
        for (std::size_t j = 0; j < count; ++j) {
            tab.log[j] = log_of(j);
            tab.weight[j] = std::exp(-scale * sigma_ * tab.log[j]);
        }
        tab.cos.resize(offsets_.size() * count);
        tab.sin.resize(offsets_.size() * count);
        for (std::size_t i = 0; i < offsets_.size(); ++i)
            for (std::size_t j = 0; j < count; ++j) {
                const double ph = -scale * offsets_[i] * tab.log[j];
                tab.cos[i * count + j] = std::cos(ph);
                tab.sin[i * count + j] = std::sin(ph);
            }
    }

    static Base base(const Table& tab, double lo, std::size_t count) {
        Base b;
        b.re.resize(count);
        b.im.resize(count);
        for (std::size_t j = 0; j < count; ++j) {
            const double ph = -tab.scale * lo * tab.log[j];
            b.re[j] = tab.weight[j] * std::cos(ph);
            b.im[j] = tab.weight[j] * std::sin(ph);
        }
        return b;
    }

    // sum_{1 <= n < m} n^-s; the tables are indexed by n with n = 0 unused
    static Complex<double> head(const Table& tab, const Base& b, std::size_t i, std::size_t m) {
        const double* cr = &tab.cos[i * tab.count];
        const double* ci = &tab.sin[i * tab.count];
        double re = 0.0, im = 0.0;
        for (std::size_t n = 1; n < m; ++n) {
            re += b.re[n] * cr[n] - b.im[n] * ci[n];
            im += b.re[n] * ci[n] + b.im[n] * cr[n];
        }
        return {re, im};
    }

    Complex<double> finish(const Complex<double>& s, const Complex<double>& h, std::size_t m) const {
        detail::EmParts<double> parts;
        parts.head = h;
        const Complex<double> n_pow = pow_neg(std::log(static_cast<double>(m)), s);
        if (detail::em_corrections(s, m, n_pow, ZetaConfig<double>{}, parts))
            return parts.head + parts.pole / (s - Complex<double>(1.0)) + parts.rest;
        return zeta(s);
    }

    std::vector<Complex<double>> combine(const Complex<double>& z1, const Complex<double>& z2,
                                         const PrimeSums<double>& ps, double* tail) const {
        const Complex<double> l1 = log(z1), l2 = log(z2);
        std::vector<Complex<double>> out;
        for (const auto& f : forms_) {
            const auto g = lng_.evaluate(f, ps);
            if (tail) *tail = std::max(*tail, g.tail_bound);
            out.push_back(exp(l1 * f.a + l2 * f.b + g.value));
        }
        return out;
    }

    std::vector<MultFn> fns_;
    LineZeta z1_, z2_;
    DirectLnG lng_;
    std::vector<NumericForm<double>> forms_;
    double sigma_;
    std::vector<double> offsets_;
    std::size_t n1_ = 0, n2_ = 0;
    Table tab1_, tab2_, tabp_;
};

struct PerronRun {
    MultFn fn{};
    double x = 0.0;
    double b = 0.0;
    double T = 0.0;
    Complex<double> integral;
    Rational exact;
    double exact_value = 0.0;
    double abs_err = 0.0;
    double bound = 0.0;  ///< x ln x / T
    double ratio = 0.0;  ///< abs_err / bound
};

struct PerronScan {
    MultFn fn{};
    double x = 0.0;
    double b = 0.0;
    std::vector<PerronRun> rows;
    double slope = 0.0;      ///< least-squares slope of ln abs_err against ln T
    double ratio_max = 0.0;  ///< the fitted constant C
    double decay_constant = 0.0;  ///< max over panels of |s| mean|F x^s / s| / x^b
    double tail_bound = 0.0;
    std::size_t panels = 0;
    std::size_t refined = 0;
};

struct PerronOptions {
    double rel_tol = 1e-6;  ///< GL16 vs GL8 agreement, relative to the panel's absolute integral
    int max_depth = 5;
    unsigned threads = default_threads();
};

namespace detail {

inline void check_perron_args(double x, const std::vector<double>& Ts) {
    if (!(x >= 10.5)) throw std::invalid_argument("perron: x must be at least 10.5");
    if (x - std::floor(x) != 0.5) throw std::invalid_argument("perron: x must be a half-integer");
    if (x > 1e12) throw capacity_error("perron: x too large for the exact partial sum");
    if (Ts.empty()) throw std::invalid_argument("perron: no T values");
    for (double T : Ts)
        if (!(T >= 50) || !(T <= 1e6)) throw std::invalid_argument("perron: T must lie in [50, 1e6]");
}

inline double loglog_slope(const std::vector<PerronRun>& rows) {
    if (rows.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double lx = std::log(r.T), ly = std::log(r.abs_err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Truncated Perron integrals (1/2 pi i) int_{b-iT}^{b+iT} F(s) x^s / s ds for
/// every T in Ts, b = 1 + 1/ln x, against the exact sum over n <= x.
///
/// The segment is cut into unit panels on both sides of the real axis; each is
/// integrated by GL16 and checked against GL8, halving panels that disagree.
/// Panel results are summed in a fixed order, so output is thread-independent.
inline std::vector<PerronScan> perron_error_scan(const std::vector<MultFn>& fns, double x, std::vector<double> Ts,
                                                 const PerronOptions& opt = {}) {
    detail::check_perron_args(x, Ts);
    std::sort(Ts.begin(), Ts.end());
    Ts.erase(std::unique(Ts.begin(), Ts.end()), Ts.end());
    const double lx = std::log(x);
    const double b = 1.0 + 1.0 / lx;
    const double xb = std::exp(b * lx);
    // GL16 then GL8 offsets on [0, 1]; unit panels reuse them
    std::vector<double> offsets;
    for (auto [t, wt] : gauss_nodes<16>(0.0, 1.0)) offsets.push_back(t);
    for (auto [t, wt] : gauss_nodes<8>(0.0, 1.0)) offsets.push_back(t);
    const LineIntegrand F(fns, b, Ts.back(), offsets);
    const std::size_t nf = fns.size();

    struct Panel {
        double lo, hi;
        std::size_t group;
    };
    std::vector<Panel> panels;
    double prev = 0.0;
    for (std::size_t k = 0; k < Ts.size(); ++k) {
        for (double a = prev; a < Ts[k]; a += 1.0) {
            const double c = std::min(a + 1.0, Ts[k]);
            panels.push_back({a, c, k});
            panels.push_back({-c, -a, k});
        }
        prev = Ts[k];
    }

    struct PanelResult {
        std::vector<Complex<double>> value;
        double magnitude = 0.0;  // max_j int |g_j|
        double tail = 0.0;
        std::size_t refined = 0;
    };
    std::vector<PanelResult> results(panels.size());

    auto integrand = [&](double t, double& tail) {
        auto vals = F(t, &tail);
        const Complex<double> s(b, t);
        const Complex<double> xs = polar(xb, t * lx) / s * (1.0 / (2.0 * pi<double>()));  // x^s / (2 pi s)
        for (auto& v : vals) v = v * xs;
        return vals;
    };

    const double unit_scale = 1.0 / (2.0 * pi<double>());
    auto integrate = [&](auto& self, double lo, double hi, int depth, PanelResult& out) -> void {
        std::vector<Complex<double>> r16(nf), r8(nf);
        std::vector<double> mag(nf, 0.0);
        const auto n16 = gauss_nodes<16>(lo, hi);
        const auto n8 = gauss_nodes<8>(lo, hi);
        std::vector<std::vector<Complex<double>>> vals;
        if (hi - lo == 1.0 && lo == std::floor(lo)) {
            vals = F.panel(lo, &out.tail);
            for (std::size_t i = 0; i < vals.size(); ++i) {
                const double t = lo + F.offsets()[i];
                const Complex<double> xs = polar(xb, t * lx) / Complex<double>(b, t) * unit_scale;
                for (auto& v : vals[i]) v = v * xs;
            }
        } else {
            for (auto [t, wt] : n16) vals.push_back(integrand(t, out.tail));
            for (auto [t, wt] : n8) vals.push_back(integrand(t, out.tail));
        }
        for (std::size_t i = 0; i < n16.size(); ++i)
            for (std::size_t j = 0; j < nf; ++j) {
                r16[j] += vals[i][j] * n16[i].second;
                mag[j] += abs(vals[i][j]) * n16[i].second;
            }
        for (std::size_t i = 0; i < n8.size(); ++i)
            for (std::size_t j = 0; j < nf; ++j) r8[j] += vals[n16.size() + i][j] * n8[i].second;
        double worst = 0.0;
        for (std::size_t j = 0; j < nf; ++j) worst = std::max(worst, abs(r16[j] - r8[j]) / mag[j]);
        if (worst > opt.rel_tol) {
            if (depth >= opt.max_depth)
                throw precision_error("perron: panel [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                      "] did not converge");
            ++out.refined;
            const double mid = 0.5 * (lo + hi);
            self(self, lo, mid, depth + 1, out);
            self(self, mid, hi, depth + 1, out);
            return;
        }
        for (std::size_t j = 0; j < nf; ++j) {
            out.value[j] += r16[j];
            out.magnitude = std::max(out.magnitude, mag[j]);
        }
    };

    parallel_for(panels.size(), opt.threads, [&](std::size_t i) {
        auto& r = results[i];
        r.value.assign(nf, Complex<double>());
        integrate(integrate, panels[i].lo, panels[i].hi, 0, r);
    });

    const auto exact = interval_sums(fns, 0, static_cast<std::uint64_t>(std::floor(x)));
    std::vector<PerronScan> out(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        out[j].fn = fns[j];
        out[j].x = x;
        out[j].b = b;
        out[j].panels = panels.size();
    }
    std::vector<Complex<double>> running(nf);
    std::size_t next = 0;
    for (std::size_t k = 0; k < Ts.size(); ++k) {
        for (; next < panels.size() && panels[next].group == k; ++next) {
            const auto& r = results[next];
            const auto& p = panels[next];
            const double tmid = std::abs(0.5 * (p.lo + p.hi));
            for (std::size_t j = 0; j < nf; ++j) {
                running[j] += r.value[j];
                out[j].refined += r.refined;
                out[j].tail_bound = std::max(out[j].tail_bound, r.tail);
                const double decay = r.magnitude / (p.hi - p.lo) * std::hypot(b, tmid) * 2.0 * pi<double>() / xb;
                out[j].decay_constant = std::max(out[j].decay_constant, decay);
            }
        }
        for (std::size_t j = 0; j < nf; ++j) {
            PerronRun run;
            run.fn = fns[j];
            run.x = x;
            run.b = b;
            run.T = Ts[k];
            run.integral = running[j];
            run.exact = exact[j].exact;
            run.exact_value = to_double(exact[j].exact);
            run.abs_err = std::abs(running[j].re - run.exact_value);
            run.bound = x * lx / Ts[k];
            run.ratio = run.abs_err / run.bound;
            out[j].rows.push_back(run);
        }
    }
    for (auto& sc : out) {
        sc.slope = detail::loglog_slope(sc.rows);
        for (const auto& r : sc.rows) sc.ratio_max = std::max(sc.ratio_max, r.ratio);
    }
    return out;
}

inline PerronRun perron_truncated(MultFn fn, double x, double T, const PerronOptions& opt = {}) {
    return perron_error_scan({fn}, x, {T}, opt)[0].rows[0];
}

/// T = 100, 200, ..., 6400 and 10^4.
inline std::vector<double> default_perron_heights() {
    std::vector<double> out;
    for (double T = 100; T < 1e4; T *= 2) out.push_back(T);
    out.push_back(1e4);
    return out;
}

}  // namespace mvf
