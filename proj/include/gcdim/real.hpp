#pragma once

// Thin RAII wrapper around mpfr_t. A Real carries its own precision; results
// of arithmetic take the precision of the destination. Rounding is explicit
// where it matters (the Ball type drives directed rounding through raw mpfr
// calls), everything else uses round-to-nearest.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace gcdim {

class Real {
public:
    Real() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
    Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }

    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, 2);
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    void set_prec(mpfr_prec_t p) { mpfr_set_prec(x_, p); }  // destroys value

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }

    int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator==(const Real& o) const { return cmp(o) == 0; }

    std::string str(size_t digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const {
        if (mpfr_nan_p(x_)) return "nan";
        if (mpfr_inf_p(x_)) return mpfr_sgn(x_) > 0 ? "inf" : "-inf";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, x_, rnd);
        std::string mant(s);
        mpfr_free_str(s);
        bool neg = !mant.empty() && mant[0] == '-';
        std::string body = neg ? mant.substr(1) : mant;
        std::string out = neg ? "-" : "";
        if (mpfr_zero_p(x_)) return "0";
        out += "0." + body + "e" + std::to_string(static_cast<long>(e));
        return out;
    }

private:
    mpfr_t x_;
};

}  // namespace gcdim
