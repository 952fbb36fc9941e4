#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "liegrowth/real.hpp"
#include "liegrowth/series.hpp"

namespace liegrowth {

// Smallest admissible argument for level q: 2 for q <= 3, else the smallest n
// with ln^{(q-3)} n > 1.  Levels whose threshold exceeds the integer range
// are rejected (log-space entry points below still work there).
long n_min(int q);

// k-fold iterated logarithm; every intermediate (and the result) must stay
// positive.
Real iter_log(int k, const Real& x);
// Same, but starting from ln x (useful when x itself is out of range).
Real iter_log_from_ln(int k, const Real& ln_x);

// ln of the hierarchy function at the given ln n:
//   q=1: ln alpha,  q=2: alpha ln n,  q=3: n^{alpha/(alpha+1)},
//   q>=4: n / (ln^{(q-3)} n)^{1/alpha}.
// Domain guards: alpha > 0; ln n > 0 for q >= 2; ln^{(q-3)} n > 1 for q >= 4.
Real ln_phi(int q, double alpha, const Real& ln_n);

// Exact ceil(Phi^q_alpha(n)).  Managed precision; the value must stay below
// exp(2^20) to keep the ceiling extraction sane (plenty for every grid here).
mpz_class phi_ceil(int q, double alpha, long n);

// Level inversion: the unique alpha with Phi^q_alpha(n) = f(n).
struct AlphaHat {
    enum class Status { ok, above_layer, below_layer };
    Status status = Status::ok;
    double value = 0.0;  // meaningful when ok
};
// From (ln n, ln f); q = 2 needs only these.
AlphaHat alpha_hat_log(int q, const Real& ln_n, const Real& ln_f);
// From (ln n, ln ln f); valid for q >= 3, reaches grids where even ln f
// overflows the floating exponent range.
AlphaHat alpha_hat_loglog(int q, const Real& ln_n, const Real& lnln_f);
// Convenience on integer-valued series.
AlphaHat alpha_hat(int q, const GrowthSeries& f, long n);

// Tail-window surrogate for Dim (limsup of alpha_hat) and Dimsup (liminf).
struct DimEstimate {
    int q = 0;
    double dim = 0.0;     // max alpha_hat over the tail window
    double dimsup = 0.0;  // min over the tail window
    std::size_t window_begin = 0;  // index of the first tail sample
    std::size_t valid_in_window = 0;
    std::vector<std::pair<double, double>> trace;  // (ln n, alpha_hat) per sample
    std::vector<int> statuses;                     // AlphaHat::Status per sample
};
// Needs >= 16 samples with ok status inside the tail window.  Above-layer
// samples push the estimates to +inf, below-layer ones to 0.
DimEstimate dim_estimate(int q, const LogSeries& s, double tail_fraction = 0.5);

LogSeries log_series_from_growth(const GrowthSeries& f);
// ln Phi^q_alpha on the dyadic grid n = 2^k, k in [k_lo, k_hi].
LogSeries phi_log_series(int q, double alpha, int k_lo, int k_hi);

// ln of the between-layers family at ln n:
//   q=2: (ln n)^2  (that is n^{ln n});  q>=3: n * exp(-(ln^{(q-1)} n)^2),
// equivalently n / (ln^{(q-2)} n)^{ln^{(q-1)} n}.
Real ln_between_family(int q, const Real& ln_n);

// Verdict over the tail of an alpha_hat trace.
struct TraceVerdict {
    bool monotone = false;   // strictly along the tail
    double tail_first = 0.0;
    double last = 0.0;
    bool passed = false;
};

// Numeric report: the doubling law and the between-layers family at one level.
struct CorollariesReport {
    int q = 0;
    double sigma = 0.0;
    int max_exp = 24;

    // Doubling-law section for ceil(Phi^q_sigma), q >= 3, on n = 2^k.
    bool doubling_applicable = false;
    long increasing_onset = -1;   // exponent from which phi(2^{k+1}) >= phi(2^k)
    long submult_onset = -1;      // exponent i0: all dyadic pairs >= i0 submultiplicative
    long doubling_onset = -1;     // exponent from which phi(2n) >= n phi(n)
    bool doubling_holds_to_end = false;
    std::vector<std::pair<long, double>> doubling_margins;  // (k, log-space margin)
    // q = 3 only: phi(2n) >= exp(2^s n^s) >= n phi(n), s = sigma/(sigma+1).
    bool intermediate_checked = false;
    long intermediate_onset = -1;

    // Between-layers family at this q: doubling plus the two traces.
    bool family_applicable = false;
    long family_doubling_onset = -1;
    bool family_doubling_holds_to_end = false;
    TraceVerdict diverging;   // alpha_hat at level q along the family grid
    TraceVerdict vanishing;   // alpha_hat at level q+1
};
CorollariesReport verify_corollaries(int q, double sigma, int max_exp = 24);

// The n^{ln n} separation: Dim at level 2 blows up while Dim at level 3
// collapses, on a dyadic log-space grid.
struct LayerGapReport {
    double dim2 = 0.0, dimsup2 = 0.0;
    double dim3 = 0.0, dimsup3 = 0.0;
    bool pass = false;  // dim2 > 100 and dim3 < 0.01
};
LayerGapReport layer_gap_demo();

}  // namespace liegrowth
