#pragma once

// Continuants and integer Moebius maps x -> (p_cur + p_prev*x)/(q_cur + q_prev*x)
// representing compositions T_{a1} o ... o T_{an} of the digit maps
// T_a(x) = 1/(a+x). Coefficients are convergent numerators/denominators, so
// the determinant is +-1 and the denominator is positive on [0,1].

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "gcdim/ball.hpp"
#include "gcdim/words.hpp"

namespace gcdim {

// Continuant pair (K(w), K(w minus last digit)); K(empty) = 1, K_prev(empty) = 0.
template <typename Int>
inline std::pair<Int, Int> continuants_t(const Word& w) {
    Int prev = 0, cur = 1;
    for (Digit d : w) {
        Int next = Int(d) * cur + prev;
        prev = cur;
        cur = std::move(next);
    }
    return {cur, prev};
}

inline std::pair<mpz_class, mpz_class> continuants(const Word& w) {
    return continuants_t<mpz_class>(w);
}

// Cylinder length |I(w)| = 1/(q(q+q')), exact.
inline mpq_class cylinder_length(const Word& w) {
    if (w.empty()) throw std::invalid_argument("cylinder of the empty word is undefined");
    auto [q, qp] = continuants(w);
    mpq_class r(1, 1);
    mpz_class den = q * (q + qp);
    r = mpq_class(mpz_class(1), den);
    r.canonicalize();
    return r;
}

template <typename Int>
struct MoebiusMapT {
    // x -> (p_cur + p_prev*x) / (q_cur + q_prev*x)
    Int p_prev, p_cur, q_prev, q_cur;

    static MoebiusMapT identity() { return {Int(1), Int(0), Int(0), Int(1)}; }

    // Right-compose with T_d: this := this o T_d.
    void push_digit(Digit d) {
        Int np = p_prev + Int(d) * p_cur;
        p_prev = p_cur;
        p_cur = std::move(np);
        Int nq = q_prev + Int(d) * q_cur;
        q_prev = q_cur;
        q_cur = std::move(nq);
    }

    void pop_to(const MoebiusMapT& saved) { *this = saved; }

    Int det() const { return p_prev * q_cur - p_cur * q_prev; }

    // Exact value at a rational point, as a rational.
    mpq_class apply_q(const mpq_class& x) const
        requires std::is_same_v<Int, mpz_class>
    {
        mpq_class num = mpq_class(p_cur) + mpq_class(p_prev) * x;
        mpq_class den = mpq_class(q_cur) + mpq_class(q_prev) * x;
        mpq_class r = num / den;
        r.canonicalize();
        return r;
    }

    mpq_class value_at_zero() const
        requires std::is_same_v<Int, mpz_class>
    {
        mpq_class r(p_cur, q_cur);
        r.canonicalize();
        return r;
    }
};

using MoebiusMap = MoebiusMapT<mpz_class>;
using MoebiusMap64 = MoebiusMapT<uint64_t>;

inline MoebiusMap compose(const Word& w) {
    if (w.empty()) throw std::invalid_argument("compose of the empty word");
    MoebiusMap m = MoebiusMap::identity();
    for (Digit d : w) m.push_digit(d);
    return m;
}

inline Ball ball_from_int(const mpz_class& z, mpfr_prec_t prec) {
    return Ball::from_mpz(z.get_mpz_t(), prec);
}

// Enclosure of T(x) over a ball x in [0,1].
inline Ball moebius_apply(const MoebiusMap& m, const Ball& x) {
    mpfr_prec_t prec = x.prec();
    Ball num = ball_from_int(m.p_cur, prec) + ball_from_int(m.p_prev, prec) * x;
    Ball den = ball_from_int(m.q_cur, prec) + ball_from_int(m.q_prev, prec) * x;
    return num / den;
}

// |T'(x)| = 1 / (q_cur + q_prev*x)^2 over a ball x.
inline Ball moebius_abs_deriv(const MoebiusMap& m, const Ball& x) {
    mpfr_prec_t prec = x.prec();
    Ball den = ball_from_int(m.q_cur, prec) + ball_from_int(m.q_prev, prec) * x;
    return den.sqr().recip();
}

}  // namespace gcdim
