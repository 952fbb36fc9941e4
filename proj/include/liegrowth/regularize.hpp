#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "liegrowth/real.hpp"
#include "liegrowth/series.hpp"

namespace liegrowth {

// Witness for f(n) <= C * g(D * n) over a sampled range.
struct PreceqWitness {
    int C = 0;
    int D = 0;
};

// Lexicographically least (C, D) with C, D >= 1 such that
// f(n) <= C * g(D*n) for every sampled n in [lo, hi].  Returns nullopt when
// no witness exists within the caps.  Both series must be defined on the
// needed sample points (ValidationError otherwise).
std::optional<PreceqWitness> preceq_witness(const GrowthSeries& f, const GrowthSeries& g,
                                            long lo, long hi, int cmax = 64, int dmax = 64);

// Witnesses in both directions, or nullopt when either direction fails.
std::optional<std::pair<PreceqWitness, PreceqWitness>> equivalence_witness(
    const GrowthSeries& f, const GrowthSeries& g, long lo, long hi, int cmax = 64,
    int dmax = 64);

// All pairs m <= n in [lo, hi] with m + n <= hi and f(m + n) > f(m) * f(n).
std::vector<std::pair<long, long>> check_submultiplicative(const GrowthSeries& f, long lo,
                                                           long hi);

// Smallest t >= 1 such that f(2^t * n) >= n * f(n) for all sampled n past an
// onset no later than halfway through the checked range.  Candidate t values
// whose scaled comparisons reach fewer than half of the sampled points are
// rejected as vacuous.  Reports the onset.
struct SelectT {
    int t = 0;
    long onset = 0;
};
SelectT select_t(const GrowthSeries& f, long lo, long hi, int tmax = 10);

// Regularized series f'(n) = sum_{i=0}^{t-1} n^{-i/t} * f(2^i * n), kept in
// high-precision floating point (values of f can run to thousands of bits).
struct RealSeries {
    std::string tag;
    int t = 1;
    std::map<long, Real> values;
};
RealSeries f_prime(const GrowthSeries& f, int t, const std::vector<long>& points);

// Convenience: f' evaluated on a dyadic grid n = 2^k, k in [k_lo, k_hi].
RealSeries f_prime_dyadic(const GrowthSeries& f, int t, int k_lo, int k_hi);

// Numerical report for the three regularity conditions of a regularized
// series.  All comparisons carry a relative slack of eps.
//   (a) f'(2n) >= (1/2) n^{1/t} f'(n) over sampled n,
//   (b) dyadic ratios rho_k = f'(2^{k+1}) / f'(2^k)^2, strong bound 2^{-k/2}
//       and weak bound 1,
//   (c) partial products of prod_k (1 + f'(2^k)/f'(2^{k+1}))  (convergence).
struct ConditionsReport {
    double eps = 1e-9;

    long a_onset = -1;                // smallest sampled n from which (a) holds throughout
    bool a_onset_in_first_half = false;
    double a_worst_margin = 0.0;      // min of lhs/rhs past the onset
    bool a_decay_ok = false;          // r_n = f'(n)/f'(2n) <= 2 n^{-1/t} past the onset

    long b_strong_onset = -1;         // exponent k from which rho_k <= 2^{-k/2}
    long b_weak_onset = -1;           // exponent k from which rho_k <= 1
    double b_strong_worst = 0.0;      // max of rho_k * 2^{k/2} past the strong onset
    std::vector<std::pair<long, double>> b_ratios;

    double c_product = 0.0;           // final partial product
    long c_stable_from = -1;          // exponent from which |P_end - P_k| < c_tol
    bool c_converged = false;
    double c_ratio_decay = 0.0;       // max of u_{k+1}/u_k (geometric decay rate)
    double c_tol = 1e-6;
    std::vector<std::pair<long, double>> c_partials;
};
ConditionsReport check_conditions(const RealSeries& fp, double eps = 1e-9,
                                  double c_tol = 1e-6);

}  // namespace liegrowth
