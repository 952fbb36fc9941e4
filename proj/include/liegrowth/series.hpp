#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "liegrowth/real.hpp"

namespace liegrowth {

// Integer-valued sampled growth function.  Either a finite table of samples,
// a closed form (eval), or both (samples memoize nothing; eval is consulted
// for missing points).
class GrowthSeries {
public:
    GrowthSeries() = default;
    explicit GrowthSeries(std::string tag) : tag_(std::move(tag)) {}

    const std::string& tag() const { return tag_; }
    void set_tag(std::string t) { tag_ = std::move(t); }

    void set_value(long n, mpz_class v) { values_[n] = std::move(v); }
    void set_eval(std::function<mpz_class(long)> f) { eval_ = std::move(f); }

    bool defined_at(long n) const;
    mpz_class at(long n) const;  // ValidationError when undefined

    bool has_samples() const { return !values_.empty(); }
    const std::map<long, mpz_class>& samples() const { return values_; }

    // Sample points inside [lo, hi]: the stored keys when there are samples,
    // otherwise every integer (closed form).
    std::vector<long> points(long lo, long hi) const;

private:
    std::string tag_;
    std::map<long, mpz_class> values_;
    std::function<mpz_class(long)> eval_;
};

// Two-column CSV with a versioned comment header.
void write_series_csv(const std::string& path, const GrowthSeries& s);
GrowthSeries read_series_csv(const std::string& path);

// Log-space sampled growth function for grids where f itself is astronomically
// large: stores (ln n, ln f(n)) pairs, ascending in ln n.
struct LogSample {
    Real ln_n;
    Real ln_f;
};

struct LogSeries {
    std::string tag;
    std::vector<LogSample> samples;
};

// Built-in closed forms.
GrowthSeries formula_pow2();                 // 2^n
GrowthSeries formula_poly(int k);            // n^k
GrowthSeries formula_constant(long c);       // c
GrowthSeries formula_npowlogn();             // ceil(n^{ln n}), exact

// ln of n^{ln n} at a given ln n: (ln n)^2.  Exact-ceiling corrections are
// below any tolerance used on large grids (relative error < exp(-(ln n)^2)).
Real ln_npowlogn(const Real& ln_n);

}  // namespace liegrowth
