#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace liegrowth {

// Thin RAII wrapper around an mpfr_t.  All growth-function evaluation runs
// through this type so that n in the range of 2^4096 and beyond, and values
// like exp(n / log n), stay representable.  Default precision is 256 bits;
// ceiling extraction of large formula values bumps it locally.
class Real {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 256;

    // Tag for the precision-selecting constructor (mpfr_prec_t is a plain
    // integer type and would collide with the value constructors).
    struct Prec {
        mpfr_prec_t bits;
    };

    Real() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
    explicit Real(Prec p) { mpfr_init2(v_, p.bits); mpfr_set_zero(v_, 1); }
    Real(double d) { mpfr_init2(v_, kDefaultPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
    Real(long n) { mpfr_init2(v_, kDefaultPrec); mpfr_set_si(v_, n, MPFR_RNDN); }
    Real(int n) : Real(static_cast<long>(n)) {}
    Real(const mpz_class& z) {
        mpfr_init2(v_, kDefaultPrec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, kDefaultPrec);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(Real o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real with_prec(const Real& o, mpfr_prec_t prec) {
        Real r(Prec{prec});
        mpfr_set(r.v_, o.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    // Exact ceiling as an integer.  Caller must ensure the value fits the
    // working precision (see phi_ceil in qdim for the managed variant).
    mpz_class ceil_z() const {
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_ceil(t, v_);
        mpz_class out;
        mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return out;
    }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
    Real operator-() const {
        Real r(Prec{prec()});
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend Real log(const Real& a) { return un(mpfr_log, a); }
    friend Real exp(const Real& a) { return un(mpfr_exp, a); }
    friend Real log1p(const Real& a) { return un(mpfr_log1p, a); }
    friend Real sqrt(const Real& a) { return un(mpfr_sqrt, a); }
    friend Real abs(const Real& a) { return un(mpfr_abs, a); }
    friend Real pow(const Real& a, const Real& b) { return bin(mpfr_pow, a, b); }

    // 2^k as a Real at the given precision; k may be large.
    static Real pow2(long k, mpfr_prec_t prec = kDefaultPrec) {
        Real r(Prec{prec});
        mpfr_set_ui_2exp(r.v_, 1, k, MPFR_RNDN);
        return r;
    }

private:
    template <class F>
    static Real bin(F f, const Real& a, const Real& b) {
        Real r(Prec{std::max(a.prec(), b.prec())});
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    template <class F>
    static Real un(F f, const Real& a) {
        Real r(Prec{a.prec()});
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

}  // namespace liegrowth
