#include "liegrowth/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liegrowth/errors.hpp"

namespace liegrowth {

namespace {

Real real_from_mpz(const mpz_class& z, mpfr_prec_t min_prec = Real::kDefaultPrec) {
    mpfr_prec_t bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(z.get_mpz_t(), 2)) + 32;
    Real r(Real::Prec{std::max(min_prec, bits)});
    mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real real_si(long n, mpfr_prec_t prec) {
    Real r(Real::Prec{prec});
    mpfr_set_si(r.get(), n, MPFR_RNDN);
    return r;
}

// Smallest sampled value from which `ok` stays true through the end of the
// list; -1 when even the last entry fails.
long suffix_onset(const std::vector<std::pair<long, bool>>& checks) {
    long onset = -1;
    for (auto it = checks.rbegin(); it != checks.rend(); ++it) {
        if (!it->second) break;
        onset = it->first;
    }
    return onset;
}

}  // namespace

std::optional<PreceqWitness> preceq_witness(const GrowthSeries& f, const GrowthSeries& g,
                                            long lo, long hi, int cmax, int dmax) {
    if (lo < 1 || hi < lo) throw ValidationError("preceq: empty or invalid range");
    if (cmax < 1 || dmax < 1) throw ValidationError("preceq: bounds must be >= 1");
    std::vector<long> ns = f.points(lo, hi);
    if (ns.empty()) throw ValidationError("preceq: f has no samples in range");
    for (int c = 1; c <= cmax; ++c) {
        for (int d = 1; d <= dmax; ++d) {
            bool all_ok = true;
            for (long n : ns) {
                if (!g.defined_at(d * n))
                    throw ValidationError("insufficient samples: g undefined at n=" +
                                          std::to_string(d * n));
                if (f.at(n) > c * g.at(d * n)) {
                    all_ok = false;
                    break;
                }
            }
            if (all_ok) return PreceqWitness{c, d};
        }
    }
    return std::nullopt;
}

std::optional<std::pair<PreceqWitness, PreceqWitness>> equivalence_witness(
    const GrowthSeries& f, const GrowthSeries& g, long lo, long hi, int cmax, int dmax) {
    auto fg = preceq_witness(f, g, lo, hi, cmax, dmax);
    if (!fg) return std::nullopt;
    auto gf = preceq_witness(g, f, lo, hi, cmax, dmax);
    if (!gf) return std::nullopt;
    return std::make_pair(*fg, *gf);
}

std::vector<std::pair<long, long>> check_submultiplicative(const GrowthSeries& f, long lo,
                                                           long hi) {
    if (lo < 1 || hi < lo) throw ValidationError("submultiplicative: invalid range");
    std::vector<std::pair<long, long>> violations;
    for (long m = lo; m <= hi; ++m) {
        for (long n = m; m + n <= hi; ++n) {
            if (!f.defined_at(m) || !f.defined_at(n) || !f.defined_at(m + n))
                throw ValidationError("submultiplicative: missing sample in [" +
                                      std::to_string(lo) + "," + std::to_string(hi) + "]");
            if (f.at(m + n) > f.at(m) * f.at(n)) violations.emplace_back(m, n);
        }
    }
    return violations;
}

SelectT select_t(const GrowthSeries& f, long lo, long hi, int tmax) {
    if (lo < 1 || hi < lo) throw ValidationError("select_t: invalid range");
    const std::vector<long> pts = f.points(lo, hi);
    for (int t = 1; t <= tmax; ++t) {
        std::vector<std::pair<long, bool>> checks;
        for (long n : pts) {
            if (t >= 60 || n > (hi >> t)) continue;  // need 2^t * n within range
            long scaled = n << t;
            if (!f.defined_at(scaled)) continue;
            checks.emplace_back(n, f.at(scaled) >= n * f.at(n));
        }
        if (checks.empty()) continue;
        // Large t shrinks the checkable prefix until nothing can refute it;
        // that is vacuous evidence.  Insist the scaled comparisons still
        // reach at least half of the sampled points.
        if (checks.size() < pts.size() / 2) continue;
        long onset = suffix_onset(checks);
        if (onset < 0) continue;
        size_t idx = 0;
        while (idx < checks.size() && checks[idx].first < onset) ++idx;
        if (idx <= checks.size() / 2) return SelectT{t, onset};
    }
    throw ValidationError("condition f ~ nf not evidenced for t <= " + std::to_string(tmax));
}

RealSeries f_prime(const GrowthSeries& f, int t, const std::vector<long>& points) {
    if (t < 1) throw ValidationError("f_prime: t must be >= 1");
    RealSeries out;
    out.tag = f.tag() + "-prime-t" + std::to_string(t);
    out.t = t;
    for (long n : points) {
        if (n < 1) throw ValidationError("f_prime: points must be >= 1");
        // Precision has to cover the largest term exactly enough; gather first.
        std::vector<mpz_class> terms;
        for (int i = 0; i < t; ++i) {
            long scaled = n << i;
            if (!f.defined_at(scaled))
                throw ValidationError("f_prime: f undefined at n=" + std::to_string(scaled));
            terms.push_back(f.at(scaled));
        }
        mpfr_prec_t prec = Real::kDefaultPrec;
        for (const auto& z : terms)
            prec = std::max<mpfr_prec_t>(prec, mpz_sizeinbase(z.get_mpz_t(), 2) + 64);
        Real sum(Real::Prec{prec});
        for (int i = 0; i < t; ++i) {
            Real weight = (i == 0) ? real_si(1, prec)
                                   : pow(real_si(n, prec),
                                         Real(-static_cast<double>(i) / t));
            sum = sum + weight * real_from_mpz(terms[i], prec);
        }
        out.values.emplace(n, std::move(sum));
    }
    return out;
}

RealSeries f_prime_dyadic(const GrowthSeries& f, int t, int k_lo, int k_hi) {
    if (k_lo < 0 || k_hi < k_lo || k_hi >= 62)
        throw ValidationError("f_prime_dyadic: invalid exponent range");
    std::vector<long> points;
    for (int k = k_lo; k <= k_hi; ++k) points.push_back(1L << k);
    return f_prime(f, t, points);
}

ConditionsReport check_conditions(const RealSeries& fp, double eps, double c_tol) {
    ConditionsReport rep;
    rep.eps = eps;
    rep.c_tol = c_tol;
    const int t = fp.t;
    const Real slack_lo(1.0 - eps), slack_hi(1.0 + eps);

    // Condition (a) over every sampled n whose double is also sampled.
    std::vector<std::pair<long, bool>> a_checks;
    for (const auto& [n, v] : fp.values) {
        auto dbl = fp.values.find(2 * n);
        if (dbl == fp.values.end()) continue;
        Real rhs = Real(0.5) * pow(Real(n), Real(1.0 / t)) * v;
        a_checks.emplace_back(n, dbl->second >= rhs * slack_lo);
    }
    rep.a_onset = suffix_onset(a_checks);
    if (rep.a_onset >= 0) {
        size_t idx = 0;
        while (idx < a_checks.size() && a_checks[idx].first < rep.a_onset) ++idx;
        rep.a_onset_in_first_half = idx <= a_checks.size() / 2;
        rep.a_worst_margin = std::numeric_limits<double>::infinity();
        rep.a_decay_ok = true;
        for (const auto& [n, ok] : a_checks) {
            if (n < rep.a_onset) continue;
            (void)ok;
            const Real& v = fp.values.at(n);
            const Real& d = fp.values.at(2 * n);
            Real rhs = Real(0.5) * pow(Real(n), Real(1.0 / t)) * v;
            rep.a_worst_margin = std::min(rep.a_worst_margin, (d / rhs).to_double());
            // Consequence: the condition-(c) ratio decays at rate 2 n^{-1/t}.
            if (!(v / d <= Real(2.0) * pow(Real(n), Real(-1.0 / t)) * slack_hi))
                rep.a_decay_ok = false;
        }
    }

    // Dyadic exponents present in the sample set.
    std::vector<long> exps;
    for (const auto& [n, v] : fp.values)
        if (n >= 1 && (n & (n - 1)) == 0) exps.push_back(static_cast<long>(std::lround(std::log2(static_cast<double>(n)))));
    std::sort(exps.begin(), exps.end());

    // Condition (b): rho_k = f'(2^{k+1}) / f'(2^k)^2 against 2^{-k/2} and 1.
    std::vector<std::pair<long, bool>> b_strong, b_weak;
    for (size_t i = 0; i + 1 < exps.size(); ++i) {
        if (exps[i + 1] != exps[i] + 1) continue;
        long k = exps[i];
        const Real& a = fp.values.at(1L << k);
        const Real& b = fp.values.at(1L << (k + 1));
        Real rho = b / (a * a);
        rep.b_ratios.emplace_back(k, rho.to_double());
        b_strong.emplace_back(k, rho <= pow(Real(2.0), Real(-0.5 * k)) * slack_hi);
        b_weak.emplace_back(k, rho <= slack_hi);
    }
    rep.b_strong_onset = suffix_onset(b_strong);
    rep.b_weak_onset = suffix_onset(b_weak);
    if (rep.b_strong_onset >= 0) {
        rep.b_strong_worst = 0.0;
        for (size_t i = 0; i + 1 < exps.size(); ++i) {
            if (exps[i + 1] != exps[i] + 1 || exps[i] < rep.b_strong_onset) continue;
            long k = exps[i];
            const Real& a = fp.values.at(1L << k);
            const Real& b = fp.values.at(1L << (k + 1));
            Real scaled = (b / (a * a)) * pow(Real(2.0), Real(0.5 * k));
            rep.b_strong_worst = std::max(rep.b_strong_worst, scaled.to_double());
        }
    }

    // Condition (c): partial products of (1 + u_k), u_k = f'(2^k)/f'(2^{k+1}).
    Real product(1.0);
    Real prev_u(0.0);
    bool have_prev = false;
    for (size_t i = 0; i + 1 < exps.size(); ++i) {
        if (exps[i + 1] != exps[i] + 1) continue;
        long k = exps[i];
        Real u = fp.values.at(1L << k) / fp.values.at(1L << (k + 1));
        product = product * (Real(1.0) + u);
        rep.c_partials.emplace_back(k, product.to_double());
        if (have_prev && prev_u > Real(0.0))
            rep.c_ratio_decay = std::max(rep.c_ratio_decay, (u / prev_u).to_double());
        prev_u = u;
        have_prev = true;
    }
    if (!rep.c_partials.empty()) {
        rep.c_product = rep.c_partials.back().second;
        for (const auto& [k, p] : rep.c_partials) {
            if (std::fabs(rep.c_product - p) < c_tol) {
                rep.c_stable_from = k;
                break;
            }
        }
        rep.c_converged =
            rep.c_stable_from >= 0 && rep.c_stable_from < rep.c_partials.back().first;
    }
    return rep;
}

}  // namespace liegrowth
