#include "liegrowth/qdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "liegrowth/errors.hpp"

namespace liegrowth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Values with ln f below this are ceiled exactly; above it the ceiling
// correction is absorbed by a log1p term in the log-space comparisons.
constexpr double kExactLn = 4096.0;

Real real_from_mpz_prec(const mpz_class& z) {
    mpfr_prec_t bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(z.get_mpz_t(), 2)) + 32;
    Real r(Real::Prec{std::max<mpfr_prec_t>(Real::kDefaultPrec, bits)});
    mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

// Exact ceil(exp(ln_v)) with precision escalation until two precisions agree.
template <class EvalLn>
mpz_class stable_ceil_exp(EvalLn eval_ln, double ln_estimate) {
    if (ln_estimate > kExactLn + 1)
        throw StageError("qdim", "exact ceiling requested for a value beyond exp(" +
                                     std::to_string(static_cast<long>(kExactLn)) + ")",
                         "use the log-space checks at this size");
    mpfr_prec_t p = std::max<mpfr_prec_t>(
        256, static_cast<mpfr_prec_t>(ln_estimate * 1.4427) + 128);
    for (int attempt = 0; attempt < 6; ++attempt, p += 256) {
        mpz_class a = exp(eval_ln(p)).ceil_z();
        mpz_class b = exp(eval_ln(p + 128)).ceil_z();
        if (a == b) return a;
    }
    throw InvariantError("ceiling extraction did not stabilize");
}

// Smallest grid value from which all later checks hold.
long suffix_onset(const std::vector<std::pair<long, bool>>& checks) {
    long onset = -1;
    for (auto it = checks.rbegin(); it != checks.rend(); ++it) {
        if (!it->second) break;
        onset = it->first;
    }
    return onset;
}

Real ln2_at(mpfr_prec_t prec = Real::kDefaultPrec) {
    Real two(Real::Prec{prec});
    mpfr_set_si(two.get(), 2, MPFR_RNDN);
    return log(two);
}

}  // namespace

long n_min(int q) {
    if (q < 1) throw ValidationError("hierarchy level must be >= 1");
    if (q <= 3) return 2;
    Real t(1.0);
    for (int i = 0; i < q - 3; ++i) t = exp(t);  // threshold e^e^... (q-3 tiers)
    if (!t.is_finite() || t >= Real(static_cast<long>(1) << 60))
        throw ValidationError("n_min for level " + std::to_string(q) +
                              " exceeds the integer range");
    mpfr_t fl;
    mpfr_init2(fl, t.prec());
    mpfr_floor(fl, t.get());
    long v = mpfr_get_si(fl, MPFR_RNDN);
    mpfr_clear(fl);
    return v + 1;
}

Real iter_log(int k, const Real& x) {
    if (k < 0) throw ValidationError("iter_log needs k >= 0");
    Real cur = x;
    for (int i = 0; i < k; ++i) {
        if (!(cur > Real(0.0)))
            throw ValidationError("iterated log undefined: intermediate <= 0 at depth " +
                                  std::to_string(i));
        cur = log(cur);
    }
    if (!(cur > Real(0.0)))
        throw ValidationError("iterated log result <= 0 at depth " + std::to_string(k));
    return cur;
}

Real iter_log_from_ln(int k, const Real& ln_x) {
    if (k < 1) throw ValidationError("iter_log_from_ln needs k >= 1");
    Real cur = ln_x;
    for (int i = 1; i < k; ++i) {
        if (!(cur > Real(0.0)))
            throw ValidationError("iterated log undefined: intermediate <= 0 at depth " +
                                  std::to_string(i));
        cur = log(cur);
    }
    if (!(cur > Real(0.0)))
        throw ValidationError("iterated log result <= 0 at depth " + std::to_string(k));
    return cur;
}

Real ln_phi(int q, double alpha, const Real& ln_n) {
    if (q < 1) throw ValidationError("hierarchy level must be >= 1");
    if (!(alpha > 0)) throw ValidationError("alpha must be positive");
    if (q == 1) return log(Real(alpha));
    if (!(ln_n > Real(0.0))) throw ValidationError("level >= 2 needs n >= 2 (ln n > 0)");
    switch (q) {
        case 2:
            return Real(alpha) * ln_n;
        case 3:
            return exp(Real(alpha / (alpha + 1.0)) * ln_n);
        default: {
            Real g = iter_log_from_ln(q - 3, ln_n);
            if (!(g > Real(1.0)))
                throw ValidationError("level " + std::to_string(q) +
                                      " needs ln^{(q-3)} n > 1 (n below n_min)");
            Real n = exp(ln_n);
            if (!n.is_finite())
                throw StageError("qdim", "n overflows the floating range",
                                 "use the log-log entry points at this size");
            return n / pow(g, Real(1.0 / alpha));
        }
    }
}

mpz_class phi_ceil(int q, double alpha, long n) {
    if (q == 1) {
        if (n < 1) throw ValidationError("n must be positive");
        return stable_ceil_exp([&](mpfr_prec_t) { return log(Real(alpha)); },
                               std::log(alpha));
    }
    if (n < n_min(q))
        throw ValidationError("n=" + std::to_string(n) + " below n_min(" + std::to_string(q) +
                              ")=" + std::to_string(n_min(q)));
    double estimate = ln_phi(q, alpha, log(Real(n))).to_double();
    return stable_ceil_exp(
        [&](mpfr_prec_t p) {
            Real x(Real::Prec{p});
            mpfr_set_si(x.get(), n, MPFR_RNDN);
            return ln_phi(q, alpha, log(x));
        },
        estimate);
}

AlphaHat alpha_hat_loglog(int q, const Real& ln_n, const Real& lnln_f) {
    if (q < 3) throw ValidationError("log-log inversion needs level >= 3");
    if (!(ln_n > Real(0.0))) throw ValidationError("inversion needs ln n > 0");
    AlphaHat out;
    if (q == 3) {
        Real r = lnln_f / ln_n;
        if (!(r < Real(1.0))) {
            out.status = AlphaHat::Status::above_layer;
            out.value = kInf;
        } else if (!(r > Real(0.0))) {
            out.status = AlphaHat::Status::below_layer;
            out.value = 0.0;
        } else {
            out.value = (r / (Real(1.0) - r)).to_double();
        }
        return out;
    }
    Real num = iter_log_from_ln(q - 2, ln_n);
    Real den = ln_n - lnln_f;  // = ln(n / ln f)
    if (!(den > Real(0.0))) {
        out.status = AlphaHat::Status::above_layer;
        out.value = kInf;
        return out;
    }
    out.value = (num / den).to_double();
    return out;
}

AlphaHat alpha_hat_log(int q, const Real& ln_n, const Real& ln_f) {
    if (q < 1) throw ValidationError("hierarchy level must be >= 1");
    AlphaHat out;
    if (q == 1) {
        out.value = exp(ln_f).to_double();
        return out;
    }
    if (!(ln_n > Real(0.0))) throw ValidationError("inversion needs ln n > 0");
    if (!(ln_f > Real(0.0))) {
        out.status = AlphaHat::Status::below_layer;
        out.value = 0.0;
        return out;
    }
    if (q == 2) {
        out.value = (ln_f / ln_n).to_double();
        return out;
    }
    return alpha_hat_loglog(q, ln_n, log(ln_f));
}

AlphaHat alpha_hat(int q, const GrowthSeries& f, long n) {
    mpz_class v = f.at(n);
    if (v <= 0) throw ValidationError("growth value must be positive at n=" + std::to_string(n));
    return alpha_hat_log(q, log(Real(n)), log(real_from_mpz_prec(v)));
}

DimEstimate dim_estimate(int q, const LogSeries& s, double tail_fraction) {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw ValidationError("tail fraction must lie in (0, 1]");
    if (s.samples.empty()) throw ValidationError("dim_estimate: empty series");
    DimEstimate est;
    est.q = q;
    const std::size_t count = s.samples.size();
    std::size_t tail_len = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(count) * tail_fraction)));
    est.window_begin = count - std::min(tail_len, count);

    est.dim = -kInf;
    est.dimsup = kInf;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& smp = s.samples[i];
        AlphaHat ah;
        int status;
        try {
            ah = alpha_hat_log(q, smp.ln_n, smp.ln_f);
            status = static_cast<int>(ah.status);
        } catch (const ValidationError&) {
            status = 3;  // out of the level's domain (head samples below n_min)
            ah.value = std::numeric_limits<double>::quiet_NaN();
        }
        est.trace.emplace_back(smp.ln_n.to_double(), ah.value);
        est.statuses.push_back(status);
        if (i < est.window_begin || status == 3) continue;
        double v = ah.value;
        if (status == static_cast<int>(AlphaHat::Status::above_layer)) v = kInf;
        if (status == static_cast<int>(AlphaHat::Status::below_layer)) v = 0.0;
        est.dim = std::max(est.dim, v);
        est.dimsup = std::min(est.dimsup, v);
        if (status == static_cast<int>(AlphaHat::Status::ok)) ++est.valid_in_window;
    }
    if (est.valid_in_window < 16)
        throw ValidationError("insufficient samples: need >= 16 valid tail samples, have " +
                              std::to_string(est.valid_in_window));
    return est;
}

LogSeries log_series_from_growth(const GrowthSeries& f) {
    if (!f.has_samples()) throw ValidationError("log series needs a sampled input");
    LogSeries s;
    s.tag = f.tag() + "-log";
    for (const auto& [n, v] : f.samples()) {
        if (n < 1 || v <= 0)
            throw ValidationError("log series needs positive samples at positive n");
        s.samples.push_back({log(Real(n)), log(real_from_mpz_prec(v))});
    }
    return s;
}

LogSeries phi_log_series(int q, double alpha, int k_lo, int k_hi) {
    if (k_lo < 0 || k_hi < k_lo || k_hi >= 62)
        throw ValidationError("phi_log_series: invalid exponent range");
    if ((1L << k_lo) < n_min(q))
        throw ValidationError("phi_log_series: grid starts below n_min(q)");
    LogSeries s;
    s.tag = "phi-q" + std::to_string(q) + "-a" + std::to_string(alpha);
    Real l2 = ln2_at();
    for (int k = k_lo; k <= k_hi; ++k) {
        Real ln_n = Real(static_cast<long>(k)) * l2;
        s.samples.push_back({ln_n, ln_phi(q, alpha, ln_n)});
    }
    return s;
}

Real ln_between_family(int q, const Real& ln_n) {
    if (q < 2) throw ValidationError("between-layers family needs level >= 2");
    if (!(ln_n > Real(0.0))) throw ValidationError("family needs ln n > 0");
    if (q == 2) return ln_n * ln_n;
    Real l = iter_log_from_ln(q - 1, ln_n);
    Real v = exp(ln_n - l * l);  // = n / (ln^{(q-2)} n)^{ln^{(q-1)} n}
    if (!v.is_finite())
        throw StageError("qdim", "family value overflows the floating range",
                         "use the log-log trace path at this size");
    return v;
}

namespace {

// Doubling comparison f(2n) >= n f(n) for integer-valued ceil(exp(ln_f)).
// Exact at small values; above the threshold the sufficient condition
// ln f(2n) >= ln n + ln f(n) + log1p(exp(-ln f(n))) covers the ceilings.
template <class LnAt>
bool ceil_doubling_ok(LnAt ln_at, long n, double* margin) {
    Real lf = ln_at(n, Real::kDefaultPrec);
    Real lf2 = ln_at(2 * n, Real::kDefaultPrec);
    if (lf.to_double() <= kExactLn && lf2.to_double() <= kExactLn) {
        mpz_class a = stable_ceil_exp([&](mpfr_prec_t p) { return ln_at(2 * n, p); },
                                      lf2.to_double());
        mpz_class b = stable_ceil_exp([&](mpfr_prec_t p) { return ln_at(n, p); },
                                      lf.to_double());
        if (margin) {
            Real diff = log(real_from_mpz_prec(a)) - log(real_from_mpz_prec(b)) - log(Real(n));
            *margin = diff.to_double();
        }
        return a >= n * b;
    }
    Real rhs = log(Real(n)) + lf + log1p(exp(-lf));
    if (margin) *margin = (lf2 - rhs).to_double();
    return lf2 >= rhs;
}

// Submultiplicativity f(m+n) <= f(m) f(n) for the ceiled value; the plain
// log-space inequality is sufficient (ceil(B)ceil(C) >= BC >= A implies
// ceil(B)ceil(C) >= ceil(A)).
template <class LnAt>
bool ceil_submult_ok(LnAt ln_at, long m, long n) {
    Real la = ln_at(m + n, Real::kDefaultPrec);
    Real lb = ln_at(m, Real::kDefaultPrec);
    Real lc = ln_at(n, Real::kDefaultPrec);
    if (la.to_double() <= kExactLn && lb.to_double() <= kExactLn &&
        lc.to_double() <= kExactLn) {
        mpz_class a = stable_ceil_exp([&](mpfr_prec_t p) { return ln_at(m + n, p); },
                                      la.to_double());
        mpz_class b = stable_ceil_exp([&](mpfr_prec_t p) { return ln_at(m, p); },
                                      lb.to_double());
        mpz_class c = stable_ceil_exp([&](mpfr_prec_t p) { return ln_at(n, p); },
                                      lc.to_double());
        return a <= b * c;
    }
    return la <= lb + lc;
}

TraceVerdict trace_verdict(const std::vector<double>& values, bool want_increasing,
                           double factor) {
    TraceVerdict v;
    if (values.size() < 4) return v;
    std::size_t begin = values.size() / 2;
    v.monotone = true;
    for (std::size_t i = begin + 1; i < values.size(); ++i) {
        if (want_increasing ? values[i] <= values[i - 1] : values[i] >= values[i - 1]) {
            v.monotone = false;
            break;
        }
    }
    v.tail_first = values[begin];
    v.last = values.back();
    v.passed = v.monotone && (want_increasing ? v.last >= factor * v.tail_first
                                              : v.last <= factor * v.tail_first);
    return v;
}

}  // namespace

CorollariesReport verify_corollaries(int q, double sigma, int max_exp) {
    if (q < 2) throw ValidationError("doubling/family checks need level >= 2");
    if (!(sigma > 0)) throw ValidationError("sigma must be positive");
    if (max_exp < 8 || max_exp > 120) throw ValidationError("max_exp out of range [8,120]");
    CorollariesReport rep;
    rep.q = q;
    rep.sigma = sigma;
    rep.max_exp = max_exp;

    const Real l2const = ln2_at();

    if (q >= 3) {
        rep.doubling_applicable = true;
        long k_start = 1;
        while ((1L << k_start) < n_min(q)) ++k_start;

        auto ln_at = [&](long n, mpfr_prec_t p) {
            Real x(Real::Prec{p});
            mpfr_set_si(x.get(), n, MPFR_RNDN);
            return ln_phi(q, sigma, log(x));
        };

        // Increasing on consecutive dyadic points (monotone ceilings follow
        // from monotone values).
        std::vector<std::pair<long, bool>> inc;
        for (long k = k_start; k < max_exp; ++k)
            inc.emplace_back(k, ln_at(2L << k, Real::kDefaultPrec) >=
                                    ln_at(1L << k, Real::kDefaultPrec));
        rep.increasing_onset = suffix_onset(inc);

        // Submultiplicative over dyadic pairs on the tail.
        std::vector<long> ks;
        for (long k = k_start; k <= max_exp; ++k) ks.push_back(k);
        auto pair_ok = [&](long i, long j) {
            long m = 1L << i, n = 1L << j;
            if (m + n > (1L << max_exp)) return true;  // outside the grid
            return ceil_submult_ok(ln_at, m, n);
        };
        rep.submult_onset = -1;
        for (std::size_t s = 0; s < ks.size(); ++s) {
            bool all = true;
            for (std::size_t i = s; i < ks.size() && all; ++i)
                for (std::size_t j = i; j < ks.size() && all; ++j)
                    if (!pair_ok(ks[i], ks[j])) all = false;
            if (all) {
                rep.submult_onset = ks[s];
                break;
            }
        }

        // phi(2n) >= n phi(n).
        std::vector<std::pair<long, bool>> dbl;
        for (long k = k_start; k < max_exp; ++k) {
            double margin = 0;
            bool ok = ceil_doubling_ok(ln_at, 1L << k, &margin);
            rep.doubling_margins.emplace_back(k, margin);
            dbl.emplace_back(k, ok);
        }
        rep.doubling_onset = suffix_onset(dbl);
        rep.doubling_holds_to_end = rep.doubling_onset >= 0;

        if (q == 3) {
            // phi(2n) = exp(2^s n^s) exactly (s = sigma/(sigma+1)); check the
            // identity and that the bound dominates n*phi(n) from an onset.
            rep.intermediate_checked = true;
            double s = sigma / (sigma + 1.0);
            std::vector<std::pair<long, bool>> inter;
            for (long k = k_start; k < max_exp; ++k) {
                long n = 1L << k;
                Real ln_bound = pow(Real(2.0), Real(s)) * exp(Real(s) * log(Real(n)));
                Real lhs = ln_at(2 * n, Real::kDefaultPrec);
                if (!(abs(lhs - ln_bound) <= Real(1e-9) * ln_bound))
                    throw InvariantError("doubling identity exp(2^s n^s) failed at n=" +
                                         std::to_string(n));
                Real lf = ln_at(n, Real::kDefaultPrec);
                Real rhs = log(Real(n)) + lf + log1p(exp(-lf));
                inter.emplace_back(k, ln_bound >= rhs);
            }
            rep.intermediate_onset = suffix_onset(inter);
        }
    }

    // Between-layers family: doubling along the dyadic grid, traces at the
    // level itself and one above.
    if (q >= 2 && q <= 4) {
        rep.family_applicable = true;
        long fk_start = q == 2 ? 1 : (q == 3 ? 2 : 4);
        auto fam_ln_at = [&](long n, mpfr_prec_t p) {
            Real x(Real::Prec{p});
            mpfr_set_si(x.get(), n, MPFR_RNDN);
            return ln_between_family(q, log(x));
        };
        std::vector<std::pair<long, bool>> dbl;
        for (long k = fk_start; k < max_exp; ++k)
            dbl.emplace_back(k, ceil_doubling_ok(fam_ln_at, 1L << k, nullptr));
        rep.family_doubling_onset = suffix_onset(dbl);
        rep.family_doubling_holds_to_end = rep.family_doubling_onset >= 0;

        std::vector<double> at_q, at_q1;
        if (q <= 3) {
            long k_lo = q == 2 ? 1 : 2;
            for (long k = k_lo; k <= 96; ++k) {
                Real ln_n = Real(k) * l2const;
                Real ln_f = ln_between_family(q, ln_n);
                at_q.push_back(alpha_hat_log(q, ln_n, ln_f).value);
                at_q1.push_back(alpha_hat_log(q + 1, ln_n, ln_f).value);
            }
        } else {
            // Doubly-dyadic n = 2^(2^j): even ln f overflows the exponent
            // range, so invert from ln ln f = ln n - (ln^{(3)} n)^2.  ln n
            // itself reaches 2^512, so carry enough extra precision that
            // the O(1) correction survives the subtraction.
            const mpfr_prec_t tp = 512 + Real::kDefaultPrec;
            const Real tl2 = ln2_at(tp);
            for (long j = 2; j <= 512; ++j) {
                Real ln_n = Real::pow2(j, tp) * tl2;
                Real l3 = iter_log_from_ln(3, ln_n);
                Real lnln_f = ln_n - l3 * l3;
                at_q.push_back(alpha_hat_loglog(4, ln_n, lnln_f).value);
                at_q1.push_back(alpha_hat_loglog(5, ln_n, lnln_f).value);
            }
        }
        rep.diverging = trace_verdict(at_q, /*want_increasing=*/true, 1.05);
        rep.vanishing = trace_verdict(at_q1, /*want_increasing=*/false, 0.95);
    }
    return rep;
}

LayerGapReport layer_gap_demo() {
    const Real l2const = ln2_at();
    LogSeries s;
    s.tag = "npowlogn-log";
    for (long k = 1; k <= 4608; ++k) {
        Real ln_n = Real(k) * l2const;
        s.samples.push_back({ln_n, ln_n * ln_n});
    }
    LayerGapReport rep;
    DimEstimate d2 = dim_estimate(2, s);
    DimEstimate d3 = dim_estimate(3, s);
    rep.dim2 = d2.dim;
    rep.dimsup2 = d2.dimsup;
    rep.dim3 = d3.dim;
    rep.dimsup3 = d3.dimsup;
    rep.pass = rep.dim2 > 100.0 && rep.dim3 < 0.01;
    return rep;
}

}  // namespace liegrowth
