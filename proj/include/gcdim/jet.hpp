#pragma once

// Truncated Taylor series ("jets") over Ball coefficients, used to bound
// transfer-operator images and their derivatives on sub-intervals. A jet of
// length L holds the Taylor coefficients f_0..f_{L-1} of a function expanded
// at a point (or at an interval of points, which encloses the coefficients
// at every point of the interval).

#include <stdexcept>
#include <vector>

#include "gcdim/ball.hpp"

namespace gcdim {

struct Jet {
    std::vector<Ball> c;

    Jet() = default;
    Jet(size_t len, mpfr_prec_t prec) : c(len, Ball(prec)) {
        for (auto& b : c) {
            mpfr_set_zero(b.lo().get(), 1);
            mpfr_set_zero(b.hi().get(), 1);
        }
    }
    size_t len() const { return c.size(); }
    mpfr_prec_t prec() const { return c.empty() ? 128 : c[0].prec(); }

    static Jet constant(const Ball& v, size_t len) {
        Jet j(len, v.prec());
        j.c[0] = v;
        return j;
    }
    // a + b*(x - x0) evaluated as a jet at x0 (or at an interval of centers)
    static Jet linear(const Ball& value_at_center, const Ball& slope, size_t len) {
        Jet j(len, value_at_center.prec());
        j.c[0] = value_at_center;
        if (len > 1) j.c[1] = slope;
        return j;
    }

    Jet operator+(const Jet& o) const {
        Jet r(len(), prec());
        for (size_t k = 0; k < len(); ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    Jet& operator+=(const Jet& o) {
        for (size_t k = 0; k < len(); ++k) c[k] += o.c[k];
        return *this;
    }
    Jet operator-(const Jet& o) const {
        Jet r(len(), prec());
        for (size_t k = 0; k < len(); ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r(len(), prec());
        for (size_t k = 0; k < len(); ++k)
            for (size_t j = 0; j + k < len(); ++j) r.c[j + k] += c[k] * o.c[j];
        return r;
    }
    Jet scaled(const Ball& s) const {
        Jet r(len(), prec());
        for (size_t k = 0; k < len(); ++k) r.c[k] = c[k] * s;
        return r;
    }

    // Formal derivative, one order shorter.
    Jet derivative() const {
        if (len() < 2) throw std::logic_error("jet derivative needs length >= 2");
        Jet r(len() - 1, prec());
        for (size_t k = 1; k < len(); ++k) r.c[k - 1] = c[k].mul_si(static_cast<long>(k));
        return r;
    }

    Jet truncated(size_t new_len) const {
        Jet r(new_len, prec());
        for (size_t k = 0; k < new_len && k < len(); ++k) r.c[k] = c[k];
        return r;
    }
};

inline Jet jet_div(const Jet& a, const Jet& b) {
    Jet q(a.len(), a.prec());
    Ball inv_b0 = b.c[0].recip();
    for (size_t k = 0; k < a.len(); ++k) {
        Ball acc = a.c[k];
        for (size_t j = 0; j < k; ++j) acc -= q.c[j] * b.c[k - j];
        q.c[k] = acc * inv_b0;
    }
    return q;
}

inline Jet jet_log(const Jet& u) {
    Jet l(u.len(), u.prec());
    l.c[0] = u.c[0].log();
    Ball inv_u0 = u.c[0].recip();
    for (size_t k = 1; k < u.len(); ++k) {
        // k*u_k = sum_{j=1..k} j*l_j*u_{k-j}
        Ball acc = u.c[k].mul_si(static_cast<long>(k));
        for (size_t j = 1; j < k; ++j) acc -= l.c[j].mul_si(static_cast<long>(j)) * u.c[k - j];
        acc = acc * inv_u0;
        mpfr_div_si(acc.lo().get(), acc.lo().get(), static_cast<long>(k), MPFR_RNDD);
        mpfr_div_si(acc.hi().get(), acc.hi().get(), static_cast<long>(k), MPFR_RNDU);
        l.c[k] = acc;
    }
    return l;
}

inline Jet jet_exp(const Jet& a) {
    Jet e(a.len(), a.prec());
    e.c[0] = a.c[0].exp();
    for (size_t k = 1; k < a.len(); ++k) {
        Ball acc(a.prec());
        mpfr_set_zero(acc.lo().get(), 1);
        mpfr_set_zero(acc.hi().get(), 1);
        for (size_t j = 1; j <= k; ++j) acc += a.c[j].mul_si(static_cast<long>(j)) * e.c[k - j];
        mpfr_div_si(acc.lo().get(), acc.lo().get(), static_cast<long>(k), MPFR_RNDD);
        mpfr_div_si(acc.hi().get(), acc.hi().get(), static_cast<long>(k), MPFR_RNDU);
        e.c[k] = acc;
    }
    return e;
}

// u^e for a positive jet u and constant exponent e.
inline Jet jet_pow(const Jet& u, const Ball& e) {
    return jet_exp(jet_log(u).scaled(e));
}

// Polynomial with point coefficients evaluated on a jet (Horner).
inline Jet jet_poly_eval(const std::vector<Real>& coeffs, const Jet& x) {
    const mpfr_prec_t prec = x.prec();
    Jet acc = Jet::constant(Ball::exact(coeffs.back(), prec), x.len());
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = acc * x;
        acc.c[0] += Ball::exact(coeffs[i], prec);
    }
    return acc;
}

// Polynomial with point coefficients on a plain ball (interval Horner).
inline Ball poly_eval_ball(const std::vector<Real>& coeffs, const Ball& x) {
    const mpfr_prec_t prec = x.prec();
    Ball acc = Ball::exact(coeffs.back(), prec);
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
        acc = acc * x;
        acc += Ball::exact(coeffs[i], prec);
    }
    return acc;
}

}  // namespace gcdim
