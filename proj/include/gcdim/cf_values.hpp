#pragma once

// Rigorous evaluation of (eventually) periodic continued fractions, of the
// two-sided values lambda0 = [a0; a1, ...] + [0; a-1, a-2, ...], and of the
// interval J(pointed word) over extensions with digits in {1,2}.

#include <stdexcept>

#include "gcdim/ball.hpp"
#include "gcdim/moebius.hpp"
#include "gcdim/words.hpp"

namespace gcdim {

// Enclosure of [0; preperiod, period, period, ...]. The periodic part is the
// attracting fixed point of its Moebius map; we solve the quadratic
// q_prev*x^2 + (q_cur - p_prev)*x - p_cur = 0 with an exact integer
// discriminant, then push the root through the preperiod map.
inline Ball eval_periodic(const TailSpec& t, mpfr_prec_t prec) {
    MoebiusMap per = compose(t.period);
    mpz_class a = per.q_prev;
    mpz_class b = per.q_cur - per.p_prev;
    mpz_class disc = b * b + 4 * a * per.p_cur;
    if (a <= 0) throw std::logic_error("periodic tail: nonpositive quadratic coefficient");
    Ball root = (ball_from_int(disc, prec).sqrt() - ball_from_int(b, prec)) /
                ball_from_int(2 * a, prec);
    if (t.preperiod.empty()) return root;
    return moebius_apply(compose(t.preperiod), root);
}

// [0; digits..., tail]
inline Ball cf_value(const Word& digits, const TailSpec& tail, mpfr_prec_t prec) {
    Ball t = eval_periodic(tail, prec);
    if (digits.empty()) return t;
    return moebius_apply(compose(digits), t);
}

// lambda0 of the bi-infinite sequence  (left reversed) . backward(center) a0 forward(center) . right
// = a0 + [0; forward digits, right tail] + [0; backward digits, left tail].
inline Ball lambda0(const TailSpec& left, const PointedWord& center, const TailSpec& right,
                    mpfr_prec_t prec) {
    Ball fwd = cf_value(center.forward(), right, prec);
    Ball bwd = cf_value(center.backward(), left, prec);
    return fwd + bwd + Ball::exact(static_cast<long>(center.a0()), prec);
}

// Hull of lambda0 over all {1,2}-extensions of a pointed word. The sup of a
// continued-fraction tail over {1,2} sequences is [0;(12)~] and the inf is
// [0;(21)~]; which one maximises the completed value flips with the parity
// of the number of fixed digits on that side.
inline Ball j_interval(const PointedWord& pw, mpfr_prec_t prec) {
    for (Digit d : pw.word)
        if (d != 1 && d != 2)
            throw std::invalid_argument("j_interval is specific to the alphabet {1,2}");

    const size_t j = pw.digits_after();
    const size_t k = pw.digits_before();
    const bool j_even = (j % 2 == 0);
    const bool k_even = (k % 2 == 0);

    TailSpec fwd_hi = j_even ? tail_12() : tail_21();
    TailSpec fwd_lo = j_even ? tail_21() : tail_12();
    TailSpec bwd_hi = k_even ? tail_12() : tail_21();
    TailSpec bwd_lo = k_even ? tail_21() : tail_12();

    Ball upper = lambda0(bwd_hi, pw, fwd_hi, prec);
    Ball lower = lambda0(bwd_lo, pw, fwd_lo, prec);
    return Ball::endpoints(lower.lo(), upper.hi(), prec);
}

}  // namespace gcdim
