#pragma once

// Rigorous min-max certification: lift the reduced eigenvector to a family of
// positive polynomials, bound the operator-image-to-test-function ratios
// Q_k/p_k on a uniform partition of [0,1] with ball arithmetic and a
// degree-4 Taylor model for the derivative of the ratio, and decide whether
// the ratios clear 1 from above (lower certificate) or below (upper).

#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcdim/ball.hpp"
#include "gcdim/certify_kernel.hpp"
#include "gcdim/decimal.hpp"
#include "gcdim/jet.hpp"
#include "gcdim/subshift.hpp"
#include "gcdim/transfer.hpp"

namespace gcdim {

struct TestFunctionFamily {
    size_t m = 0;
    mpfr_prec_t prec = 128;
    std::vector<uint32_t> live_cols;            // block -> original column class
    std::vector<int32_t> col_block;             // column class -> block or -1
    std::vector<std::vector<Real>> coeffs;      // per block: m frozen coefficients
    Real min_value;                             // rigorous positive lower bound on [0,1]
};

namespace detail {

// Rigorous lower bound of a polynomial on [lo,hi] by adaptive bisection.
// Returns a lower bound that is > 0, or throws if positivity cannot be
// established within the depth budget.
inline void poly_min_positive(const std::vector<Real>& coeffs, const Ball& dom, int depth,
                              Real& best_min, mpfr_prec_t prec) {
    Ball v = poly_eval_ball(coeffs, dom);
    if (v.is_positive()) {
        if (mpfr_cmp(v.lo().get(), best_min.get()) < 0)
            mpfr_set(best_min.get(), v.lo().get(), MPFR_RNDD);
        return;
    }
    if (depth <= 0)
        throw std::runtime_error("candidate not positive; increase m or precision");
    Real mid = dom.mid();
    Ball left = Ball::endpoints(dom.lo(), mid, prec);
    Ball right = Ball::endpoints(mid, dom.hi(), prec);
    poly_min_positive(coeffs, left, depth - 1, best_min, prec);
    poly_min_positive(coeffs, right, depth - 1, best_min, prec);
}

}  // namespace detail

// Interpolate the eigenvector through the collocation basis and freeze the
// polynomial coefficients; verify positivity on [0,1] rigorously.
inline TestFunctionFamily lift_eigvec(const EigenPair& pair, const CollocationBasis& basis,
                                      const ReducedBt& bt) {
    const mpfr_prec_t prec = basis.prec;
    const size_t m = basis.m;
    if (pair.vector.size() != bt.dim())
        throw std::invalid_argument("lift_eigvec: eigenvector/matrix size mismatch");
    TestFunctionFamily tf;
    tf.m = m;
    tf.prec = prec;
    tf.live_cols = bt.live_cols;
    tf.col_block = bt.col_block;
    tf.coeffs.assign(bt.K_live, std::vector<Real>(m, Real(prec)));
    Real tmp(prec);
    for (size_t blk = 0; blk < bt.K_live; ++blk)
        for (size_t j = 0; j < m; ++j) {
            Real& acc = tf.coeffs[blk][j];
            mpfr_set_zero(acc.get(), 1);
            for (size_t l = 0; l < m; ++l) {
                mpfr_mul(tmp.get(), pair.vector[blk * m + l].get(), basis.coeffs[l][j].get(),
                         MPFR_RNDN);
                mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDN);
            }
        }
    Real best(prec);
    mpfr_set_inf(best.get(), 1);
    Ball dom(prec);
    mpfr_set_zero(dom.lo().get(), 1);
    mpfr_set_si(dom.hi().get(), 1, MPFR_RNDU);
    for (size_t blk = 0; blk < bt.K_live; ++blk)
        detail::poly_min_positive(tf.coeffs[blk], dom, 16, best, prec);
    tf.min_value = best;
    return tf;
}

namespace detail {

// Per-word contribution |T_w'(x)|^t * p_C(w)(T_w(x)) as a jet in x.
// exponent = -2t; the weight is (q_cur + q_prev x)^(-2t).
inline Jet word_contrib_jet(const MoebiusMap64& mm, const Ball& exponent,
                            const std::vector<Real>& poly, const Jet& xjet) {
    const mpfr_prec_t prec = xjet.prec();
    const size_t len = xjet.len();
    auto b64 = [&](uint64_t v) {
        Ball b(prec);
        mpfr_set_ui(b.lo().get(), static_cast<unsigned long>(v), MPFR_RNDD);
        mpfr_set_ui(b.hi().get(), static_cast<unsigned long>(v), MPFR_RNDU);
        return b;
    };
    Ball qp = b64(mm.q_prev), qc = b64(mm.q_cur);
    Ball pp = b64(mm.p_prev), pc = b64(mm.p_cur);
    // u = qc + qp*x, num = pc + pp*x as jets in (x - x0)
    Jet u(len, prec), num(len, prec);
    u.c[0] = qc + qp * xjet.c[0];
    num.c[0] = pc + pp * xjet.c[0];
    if (len > 1) {
        u.c[1] = qp;
        num.c[1] = pp;
    }
    Jet w = jet_pow(u, exponent);
    Jet tx = jet_div(num, u);
    Jet px = jet_poly_eval(poly, tx);
    return w * px;
}

}  // namespace detail

// Lazily evaluated operator image: Q_k jets at an arbitrary point/interval
// jet, one per live column class. Sums over the live allowed words.
inline std::vector<Jet> apply_operator_jets(const TestFunctionFamily& tf, const Ball& exponent,
                                            const ForbiddenSet& F, size_t n,
                                            const ReducedMarkov& rm, const Jet& xjet) {
    const mpfr_prec_t prec = tf.prec;
    const size_t len = xjet.len();
    std::vector<Jet> row_sum(rm.K_rows, Jet(len, prec));
    size_t idx = 0;
    std::vector<MoebiusMap64> stack{MoebiusMap64::identity()};
    detail::PrefixAutomaton aut(F);
    Word cur;
    std::vector<int> sstack{0};
    std::function<void()> rec = [&]() {
        if (cur.size() == n) {
            size_t i = idx++;
            if (!rm.word_live[i]) return;
            const auto& poly = tf.coeffs[tf.col_block[rm.col_map[i]]];
            row_sum[rm.row_map[i]] += detail::word_contrib_jet(stack.back(), exponent, poly, xjet);
            return;
        }
        for (Digit d = 1; d <= F.alphabet_max; ++d) {
            int ns = aut.step(sstack.back(), d);
            if (aut.dead(ns)) continue;
            cur.push_back(d);
            sstack.push_back(ns);
            MoebiusMap64 nm = stack.back();
            nm.push_digit(d);
            stack.push_back(nm);
            rec();
            stack.pop_back();
            cur.pop_back();
            sstack.pop_back();
        }
    };
    rec();
    std::vector<Jet> q(tf.live_cols.size(), Jet(len, prec));
    for (size_t blk = 0; blk < tf.live_cols.size(); ++blk) {
        uint32_t cc = tf.live_cols[blk];
        for (uint32_t r = 0; r < rm.K_rows; ++r)
            if (rm.row_live[r] && rm.mhat[r * rm.K + cc]) q[blk] += row_sum[r];
    }
    return q;
}

enum class Direction { LOWER, UPPER, UNDECIDED };

struct RatioBounds {
    Ball ratio;          // global [min, max] over classes and sub-intervals
    Direction direction = Direction::UNDECIDED;
    size_t partition = 0;
    bool positive_ok = true;
};

// Bound Q_k/p_k over a uniform partition of [0,1] into P sub-intervals.
// On each sub-interval: midpoint value +- half-width * sup|d/dx (Q/p)|, the
// derivative bounded through N = Q'p - Qp' with a cubic Taylor expansion at
// the midpoint and an interval remainder (four derivatives of Q in total).
inline RatioBounds certify_ratios(const TestFunctionFamily& tf, const std::string& t_decimal,
                                  const ForbiddenSet& F, size_t n, const ReducedMarkov& rm,
                                  size_t P, unsigned threads = 1) {
    const mpfr_prec_t prec = tf.prec;
    if (P < 16) throw std::invalid_argument("certify: partition must be >= 16");
    Ball exponent = Ball::from_mpq(mpq_class(t_decimal_to_mpq(t_decimal)).get_mpq_t(), prec)
                        .mul_si(-2);

    Real global_lo(prec), global_hi(prec);
    mpfr_set_inf(global_lo.get(), 1);
    mpfr_set_inf(global_hi.get(), -1);
    std::mutex merge_mu;
    std::atomic<bool> positive_ok{true};

    parallel_for_static(P, threads, [&](unsigned, size_t interval_idx) {
        // sub-interval [i/P, (i+1)/P]
        Ball X(prec);
        mpfr_set_ui(X.lo().get(), static_cast<unsigned long>(interval_idx), MPFR_RNDD);
        mpfr_div_ui(X.lo().get(), X.lo().get(), static_cast<unsigned long>(P), MPFR_RNDD);
        mpfr_set_ui(X.hi().get(), static_cast<unsigned long>(interval_idx + 1), MPFR_RNDU);
        mpfr_div_ui(X.hi().get(), X.hi().get(), static_cast<unsigned long>(P), MPFR_RNDU);
        Real c = X.mid();
        Ball cball = Ball::exact(c, prec);
        // h >= max(c - lo, hi - c)
        Real h(prec), t2(prec);
        mpfr_sub(h.get(), X.hi().get(), c.get(), MPFR_RNDU);
        mpfr_sub(t2.get(), c.get(), X.lo().get(), MPFR_RNDU);
        mpfr_max(h.get(), h.get(), t2.get(), MPFR_RNDU);

        // fused sweep accumulating both jets per live row class
        std::vector<IvJet> rowC_iv(rm.K_rows), rowX_iv(rm.K_rows);
        for (auto& j : rowC_iv) j.init(prec, 4);
        for (auto& j : rowX_iv) j.init(prec, 5);
        {
            CertKernel kC(prec, 4), kX(prec, 5);
            kC.set_exponent(exponent.lo().get(), exponent.hi().get());
            kX.set_exponent(exponent.lo().get(), exponent.hi().get());
            kC.set_point(c.get(), c.get());
            kX.set_point(X.lo().get(), X.hi().get());
            size_t idx = 0;
            std::vector<MoebiusMap64> stack{MoebiusMap64::identity()};
            detail::PrefixAutomaton aut(F);
            Word cur;
            std::vector<int> sstack{0};
            std::function<void()> rec = [&]() {
                if (cur.size() == n) {
                    size_t i = idx++;
                    if (!rm.word_live[i]) return;
                    const auto& poly = tf.coeffs[tf.col_block[rm.col_map[i]]];
                    kC.accumulate_contrib(stack.back(), poly, rowC_iv[rm.row_map[i]]);
                    kX.accumulate_contrib(stack.back(), poly, rowX_iv[rm.row_map[i]]);
                    return;
                }
                for (Digit d = 1; d <= F.alphabet_max; ++d) {
                    int ns = aut.step(sstack.back(), d);
                    if (aut.dead(ns)) continue;
                    cur.push_back(d);
                    sstack.push_back(ns);
                    MoebiusMap64 nm = stack.back();
                    nm.push_digit(d);
                    stack.push_back(nm);
                    rec();
                    stack.pop_back();
                    cur.pop_back();
                    sstack.pop_back();
                }
            };
            rec();
        }
        // convert accumulators to Jets for the per-class reduction
        Jet xC = Jet::linear(cball, Ball::exact(1L, prec), 4);
        Jet xX = Jet::linear(X, Ball::exact(1L, prec), 5);
        std::vector<Jet> rowC(rm.K_rows, Jet(4, prec)), rowX(rm.K_rows, Jet(5, prec));
        for (size_t r = 0; r < rm.K_rows; ++r) {
            for (int k = 0; k < 4; ++k) {
                mpfr_set(rowC[r].c[k].lo().get(), rowC_iv[r].lo[k], MPFR_RNDD);
                mpfr_set(rowC[r].c[k].hi().get(), rowC_iv[r].hi[k], MPFR_RNDU);
            }
            for (int k = 0; k < 5; ++k) {
                mpfr_set(rowX[r].c[k].lo().get(), rowX_iv[r].lo[k], MPFR_RNDD);
                mpfr_set(rowX[r].c[k].hi().get(), rowX_iv[r].hi[k], MPFR_RNDU);
            }
            rowC_iv[r].clear();
            rowX_iv[r].clear();
        }

        Real local_lo(prec), local_hi(prec);
        mpfr_set_inf(local_lo.get(), 1);
        mpfr_set_inf(local_hi.get(), -1);

        for (size_t blk = 0; blk < tf.live_cols.size(); ++blk) {
            uint32_t cc = tf.live_cols[blk];
            Jet QC(4, prec), QX(5, prec);
            for (uint32_t r = 0; r < rm.K_rows; ++r)
                if (rm.row_live[r] && rm.mhat[r * rm.K + cc]) {
                    QC += rowC[r];
                    QX += rowX[r];
                }
            Jet pC = jet_poly_eval(tf.coeffs[blk], xC);
            Jet pX = jet_poly_eval(tf.coeffs[blk], xX);

            // N = Q'p - Qp', cubic model: N0..N2 at the midpoint, N3 over X
            Jet NC = QC.derivative() * pC.truncated(3) - QC.truncated(3) * pC.derivative();
            Jet NX = QX.derivative() * pX.truncated(4) - QX.truncated(4) * pX.derivative();

            Real supN(prec), term(prec);
            mpfr_set(supN.get(), NC.c[0].mag().get(), MPFR_RNDU);
            mpfr_mul(term.get(), NC.c[1].mag().get(), h.get(), MPFR_RNDU);
            mpfr_add(supN.get(), supN.get(), term.get(), MPFR_RNDU);
            mpfr_mul(term.get(), NC.c[2].mag().get(), h.get(), MPFR_RNDU);
            mpfr_mul(term.get(), term.get(), h.get(), MPFR_RNDU);
            mpfr_add(supN.get(), supN.get(), term.get(), MPFR_RNDU);
            mpfr_mul(term.get(), NX.c[3].mag().get(), h.get(), MPFR_RNDU);
            mpfr_mul(term.get(), term.get(), h.get(), MPFR_RNDU);
            mpfr_mul(term.get(), term.get(), h.get(), MPFR_RNDU);
            mpfr_add(supN.get(), supN.get(), term.get(), MPFR_RNDU);

            Ball p_on_X = poly_eval_ball(tf.coeffs[blk], X);
            if (!p_on_X.is_positive() || pC.c[0].contains_zero()) {
                positive_ok = false;
                continue;
            }

            // |(Q/p)'| <= supN / (inf p)^2 ; ratio on X = ratio(c) +- h * that
            Real denom(prec);
            mpfr_sqr(denom.get(), p_on_X.lo().get(), MPFR_RNDD);
            Real delta(prec);
            mpfr_div(delta.get(), supN.get(), denom.get(), MPFR_RNDU);
            mpfr_mul(delta.get(), delta.get(), h.get(), MPFR_RNDU);

            Ball ratio_c = QC.c[0] / pC.c[0];
            Real lo(prec), hi(prec);
            mpfr_sub(lo.get(), ratio_c.lo().get(), delta.get(), MPFR_RNDD);
            mpfr_add(hi.get(), ratio_c.hi().get(), delta.get(), MPFR_RNDU);
            mpfr_min(local_lo.get(), local_lo.get(), lo.get(), MPFR_RNDD);
            mpfr_max(local_hi.get(), local_hi.get(), hi.get(), MPFR_RNDU);
        }

        std::lock_guard<std::mutex> lock(merge_mu);
        mpfr_min(global_lo.get(), global_lo.get(), local_lo.get(), MPFR_RNDD);
        mpfr_max(global_hi.get(), global_hi.get(), local_hi.get(), MPFR_RNDU);
    });

    RatioBounds rb;
    rb.partition = P;
    rb.positive_ok = positive_ok.load();
    rb.ratio = Ball::endpoints(global_lo, global_hi, prec);
    if (!rb.positive_ok) {
        rb.direction = Direction::UNDECIDED;
        return rb;
    }
    if (mpfr_cmp_si(global_lo.get(), 1) > 0) rb.direction = Direction::LOWER;
    else if (mpfr_cmp_si(global_hi.get(), 1) < 0) rb.direction = Direction::UPPER;
    else rb.direction = Direction::UNDECIDED;
    return rb;
}

struct DimensionCertificate {
    std::string set_name;
    std::string t_decimal;
    Direction direction = Direction::UNDECIDED;
    Ball ratio;
    size_t partition = 0;
    mpfr_prec_t precision = 128;
    size_t degree_m = 0;
    size_t allowed_words = 0;
    size_t live_words = 0;
    size_t K = 0;
    size_t K_live = 0;
    int escalations = 0;
    bool n_overridden = false;
    uint64_t provenance = 0;
    double eigen_estimate = 0.0;
    double wall_seconds = 0.0;
};

inline const char* direction_name(Direction d) {
    switch (d) {
        case Direction::LOWER: return "LOWER";
        case Direction::UPPER: return "UPPER";
        default: return "UNDECIDED";
    }
}

}  // namespace gcdim
