#pragma once

// Interval arithmetic with outward-directed rounding on mpfr endpoints.
// Every operation returns an enclosure of the exact image of its operand
// intervals. Threshold comparisons are three-valued; Undecided is a real
// outcome and is never collapsed by the callers.

#include <gmp.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "gcdim/real.hpp"

namespace gcdim {

enum class Cmp { Less, Greater, Undecided };

class Ball {
public:
    Ball() : Ball(128) {}
    explicit Ball(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static Ball exact(long v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_si(b.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(b.hi_.get(), v, MPFR_RNDU);
        return b;
    }
    static Ball exact(const Real& v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set(b.lo_.get(), v.get(), MPFR_RNDD);
        mpfr_set(b.hi_.get(), v.get(), MPFR_RNDU);
        return b;
    }
    static Ball from_mpz(mpz_srcptr v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_z(b.lo_.get(), v, MPFR_RNDD);
        mpfr_set_z(b.hi_.get(), v, MPFR_RNDU);
        return b;
    }
    static Ball from_mpq(mpq_srcptr v, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_q(b.lo_.get(), v, MPFR_RNDD);
        mpfr_set_q(b.hi_.get(), v, MPFR_RNDU);
        return b;
    }
    // Decimal string, outward rounded; accepts e.g. "3.334369".
    static Ball from_decimal(const std::string& s, mpfr_prec_t prec) {
        Ball b(prec);
        if (mpfr_set_str(b.lo_.get(), s.c_str(), 10, MPFR_RNDD) != 0 &&
            mpfr_nan_p(b.lo_.get()))
            throw std::invalid_argument("bad decimal: " + s);
        mpfr_set_str(b.hi_.get(), s.c_str(), 10, MPFR_RNDU);
        return b;
    }
    static Ball endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set(b.lo_.get(), lo.get(), MPFR_RNDD);
        mpfr_set(b.hi_.get(), hi.get(), MPFR_RNDU);
        return b;
    }

    mpfr_prec_t prec() const { return lo_.prec(); }
    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    Real& lo() { return lo_; }
    Real& hi() { return hi_; }

    bool valid() const { return mpfr_cmp(lo_.get(), hi_.get()) <= 0; }
    bool contains_zero() const {
        return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
    }
    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }

    bool contains(const Ball& o) const {
        return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 &&
               mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
    }
    bool contains(const Real& v) const {
        return mpfr_cmp(lo_.get(), v.get()) <= 0 && mpfr_cmp(hi_.get(), v.get()) >= 0;
    }
    bool contains_q(mpq_srcptr q) const {
        return mpfr_cmp_q(lo_.get(), q) <= 0 && mpfr_cmp_q(hi_.get(), q) >= 0;
    }

    Real width() const {
        Real w(prec());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }
    Real mid() const {
        Real m(prec());
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }

    // Three-valued comparison against an exact rational threshold.
    Cmp cmp_q(mpq_srcptr t) const {
        if (mpfr_cmp_q(hi_.get(), t) < 0) return Cmp::Less;
        if (mpfr_cmp_q(lo_.get(), t) > 0) return Cmp::Greater;
        return Cmp::Undecided;
    }
    Cmp cmp(const Ball& o) const {
        if (mpfr_cmp(hi_.get(), o.lo_.get()) < 0) return Cmp::Less;
        if (mpfr_cmp(lo_.get(), o.hi_.get()) > 0) return Cmp::Greater;
        return Cmp::Undecided;
    }
    Cmp cmp_si(long v) const {
        if (mpfr_cmp_si(hi_.get(), v) < 0) return Cmp::Less;
        if (mpfr_cmp_si(lo_.get(), v) > 0) return Cmp::Greater;
        return Cmp::Undecided;
    }

    Ball operator+(const Ball& o) const {
        Ball r(prec());
        mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return r;
    }
    Ball operator-(const Ball& o) const {
        Ball r(prec());
        mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
        return r;
    }
    Ball operator-() const {
        Ball r(prec());
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        return r;
    }

    Ball operator*(const Ball& o) const {
        // Sign-dispatched endpoint products; only the mixed/mixed case needs
        // four products.
        Ball r(prec());
        const mpfr_srcptr al = lo_.get(), ah = hi_.get();
        const mpfr_srcptr bl = o.lo_.get(), bh = o.hi_.get();
        const int sal = mpfr_sgn(al), sah = mpfr_sgn(ah);
        const int sbl = mpfr_sgn(bl), sbh = mpfr_sgn(bh);
        if (sal >= 0) {                       // a >= 0
            if (sbl >= 0) {                   // b >= 0
                mpfr_mul(r.lo_.get(), al, bl, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), ah, bh, MPFR_RNDU);
            } else if (sbh <= 0) {            // b <= 0
                mpfr_mul(r.lo_.get(), ah, bl, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), al, bh, MPFR_RNDU);
            } else {                          // b straddles 0
                mpfr_mul(r.lo_.get(), ah, bl, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), ah, bh, MPFR_RNDU);
            }
        } else if (sah <= 0) {                // a <= 0
            if (sbl >= 0) {
                mpfr_mul(r.lo_.get(), al, bh, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), ah, bl, MPFR_RNDU);
            } else if (sbh <= 0) {
                mpfr_mul(r.lo_.get(), ah, bh, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), al, bl, MPFR_RNDU);
            } else {
                mpfr_mul(r.lo_.get(), al, bh, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), al, bl, MPFR_RNDU);
            }
        } else {                              // a straddles 0
            if (sbl >= 0) {
                mpfr_mul(r.lo_.get(), al, bh, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), ah, bh, MPFR_RNDU);
            } else if (sbh <= 0) {
                mpfr_mul(r.lo_.get(), ah, bl, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), al, bl, MPFR_RNDU);
            } else {
                mpfr_t t;
                mpfr_init2(t, prec());
                mpfr_mul(r.lo_.get(), al, bh, MPFR_RNDD);
                mpfr_mul(t, ah, bl, MPFR_RNDD);
                mpfr_min(r.lo_.get(), r.lo_.get(), t, MPFR_RNDD);
                mpfr_mul(r.hi_.get(), al, bl, MPFR_RNDU);
                mpfr_mul(t, ah, bh, MPFR_RNDU);
                mpfr_max(r.hi_.get(), r.hi_.get(), t, MPFR_RNDU);
                mpfr_clear(t);
            }
        }
        return r;
    }

    Ball operator/(const Ball& o) const {
        if (o.contains_zero()) throw std::domain_error("Ball division by interval containing 0");
        Ball r(prec());
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_div(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_div(t, lo_.get(), o.hi_.get(), MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t, MPFR_RNDD);
        mpfr_div(t, hi_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t, MPFR_RNDD);
        mpfr_div(t, hi_.get(), o.hi_.get(), MPFR_RNDD);
        mpfr_min(r.lo_.get(), r.lo_.get(), t, MPFR_RNDD);

        mpfr_div(r.hi_.get(), lo_.get(), o.lo_.get(), MPFR_RNDU);
        mpfr_div(t, lo_.get(), o.hi_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t, MPFR_RNDU);
        mpfr_div(t, hi_.get(), o.lo_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t, MPFR_RNDU);
        mpfr_div(t, hi_.get(), o.hi_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    Ball& operator+=(const Ball& o) { *this = *this + o; return *this; }
    Ball& operator-=(const Ball& o) { *this = *this - o; return *this; }
    Ball& operator*=(const Ball& o) { *this = *this * o; return *this; }

    Ball add_si(long v) const {
        Ball r(prec());
        mpfr_add_si(r.lo_.get(), lo_.get(), v, MPFR_RNDD);
        mpfr_add_si(r.hi_.get(), hi_.get(), v, MPFR_RNDU);
        return r;
    }
    Ball mul_si(long v) const {
        Ball r(prec());
        if (v >= 0) {
            mpfr_mul_si(r.lo_.get(), lo_.get(), v, MPFR_RNDD);
            mpfr_mul_si(r.hi_.get(), hi_.get(), v, MPFR_RNDU);
        } else {
            mpfr_mul_si(r.lo_.get(), hi_.get(), v, MPFR_RNDD);
            mpfr_mul_si(r.hi_.get(), lo_.get(), v, MPFR_RNDU);
        }
        return r;
    }
    Ball mul_2si(long k) const {  // exact scaling by 2^k
        Ball r(prec());
        mpfr_mul_2si(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
        mpfr_mul_2si(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
        return r;
    }

    Ball recip() const {
        if (contains_zero()) throw std::domain_error("Ball recip of interval containing 0");
        Ball r(prec());
        mpfr_ui_div(r.lo_.get(), 1, hi_.get(), MPFR_RNDD);
        mpfr_ui_div(r.hi_.get(), 1, lo_.get(), MPFR_RNDU);
        return r;
    }

    Ball sqrt() const {
        if (mpfr_sgn(lo_.get()) < 0) throw std::domain_error("Ball sqrt of negative interval");
        Ball r(prec());
        mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    Ball sqr() const {
        Ball r(prec());
        if (mpfr_sgn(lo_.get()) >= 0) {
            mpfr_sqr(r.lo_.get(), lo_.get(), MPFR_RNDD);
            mpfr_sqr(r.hi_.get(), hi_.get(), MPFR_RNDU);
        } else if (mpfr_sgn(hi_.get()) <= 0) {
            mpfr_sqr(r.lo_.get(), hi_.get(), MPFR_RNDD);
            mpfr_sqr(r.hi_.get(), lo_.get(), MPFR_RNDU);
        } else {
            mpfr_set_zero(r.lo_.get(), 1);
            mpfr_sqr(r.hi_.get(), lo_.get(), MPFR_RNDU);
            mpfr_t t;
            mpfr_init2(t, prec());
            mpfr_sqr(t, hi_.get(), MPFR_RNDU);
            mpfr_max(r.hi_.get(), r.hi_.get(), t, MPFR_RNDU);
            mpfr_clear(t);
        }
        return r;
    }

    Ball log() const {
        if (mpfr_sgn(lo_.get()) <= 0) throw std::domain_error("Ball log needs positive interval");
        Ball r(prec());
        mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }
    Ball exp() const {
        Ball r(prec());
        mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }
    // x^t for positive x via exp(t*log x); t any real ball.
    Ball pow(const Ball& t) const { return (log() * t).exp(); }

    Ball abs() const {
        Ball r(prec());
        if (mpfr_sgn(lo_.get()) >= 0) return *this;
        if (mpfr_sgn(hi_.get()) <= 0) return -*this;
        mpfr_set_zero(r.lo_.get(), 1);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        mpfr_max(r.hi_.get(), r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    Real mag() const {  // sup |x| over the interval, rounded up
        Real m(prec());
        mpfr_abs(m.get(), lo_.get(), MPFR_RNDU);
        mpfr_t t;
        mpfr_init2(t, prec());
        mpfr_abs(t, hi_.get(), MPFR_RNDU);
        mpfr_max(m.get(), m.get(), t, MPFR_RNDU);
        mpfr_clear(t);
        return m;
    }

    static Ball hull(const Ball& a, const Ball& b) {
        Ball r(a.prec());
        mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }

    void hull_in(const Ball& b) {
        mpfr_min(lo_.get(), lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_max(hi_.get(), hi_.get(), b.hi_.get(), MPFR_RNDU);
    }

    std::string str(size_t digits = 20) const {
        return "[" + lo_.str(digits, MPFR_RNDD) + ", " + hi_.str(digits, MPFR_RNDU) + "]";
    }
    // Decimal endpoints with explicit outward rounding, fixed-point style.
    std::string lo_decimal(int digits) const { return decimal_endpoint(lo_, digits, MPFR_RNDD); }
    std::string hi_decimal(int digits) const { return decimal_endpoint(hi_, digits, MPFR_RNDU); }

private:
    static std::string decimal_endpoint(const Real& v, int digits, mpfr_rnd_t rnd) {
        char buf[128];
        mpfr_snprintf(buf, sizeof(buf), rnd == MPFR_RNDD ? "%.*RDf" : "%.*RUf", digits, v.get());
        return std::string(buf);
    }

    Real lo_, hi_;
};

}  // namespace gcdim
