#pragma once

// Allocation-free inner loop for the certification sweep. A scratch-owning
// kernel evaluates one word's contribution jet in place; endpoints live in
// flat mpfr arrays and every operation rounds outward. Semantics match the
// Jet/Ball path (which stays as the readable reference and test oracle).

#include <mpfr.h>

#include <cstdint>
#include <vector>

#include "gcdim/moebius.hpp"
#include "gcdim/real.hpp"

namespace gcdim {

// interval endpoints at fixed precision, manual lifetime
struct IvJet {
    static constexpr int kMax = 5;
    int len = 0;
    mpfr_t lo[kMax], hi[kMax];

    void init(mpfr_prec_t prec, int l) {
        len = l;
        for (int k = 0; k < kMax; ++k) {
            mpfr_init2(lo[k], prec);
            mpfr_init2(hi[k], prec);
            mpfr_set_zero(lo[k], 1);
            mpfr_set_zero(hi[k], 1);
        }
    }
    void clear() {
        for (int k = 0; k < kMax; ++k) {
            mpfr_clear(lo[k]);
            mpfr_clear(hi[k]);
        }
    }
    void zero() {
        for (int k = 0; k < len; ++k) {
            mpfr_set_zero(lo[k], 1);
            mpfr_set_zero(hi[k], 1);
        }
    }
};

class CertKernel {
public:
    CertKernel(mpfr_prec_t prec, int len) : prec_(prec), len_(len) {
        for (IvJet* j : {&u_, &num_, &lg_, &w_, &tx_, &acc_, &mulscratch_, &contrib_})
            j->init(prec, len);
        mpfr_init2(s1_, prec);
        mpfr_init2(s2_, prec);
        mpfr_init2(s3_, prec);
        mpfr_init2(s4_, prec);
        mpfr_init2(s5_, prec);
        mpfr_init2(s6_, prec);
        mpfr_init2(elo_, prec);
        mpfr_init2(ehi_, prec);
        mpfr_init2(x0lo_, prec);
        mpfr_init2(x0hi_, prec);
    }
    ~CertKernel() {
        for (IvJet* j : {&u_, &num_, &lg_, &w_, &tx_, &acc_, &mulscratch_, &contrib_}) j->clear();
        mpfr_clear(s1_);
        mpfr_clear(s2_);
        mpfr_clear(s3_);
        mpfr_clear(s4_);
        mpfr_clear(s5_);
        mpfr_clear(s6_);
        mpfr_clear(elo_);
        mpfr_clear(ehi_);
        mpfr_clear(x0lo_);
        mpfr_clear(x0hi_);
    }
    CertKernel(const CertKernel&) = delete;
    CertKernel& operator=(const CertKernel&) = delete;

    // exponent = -2t and the evaluation point (interval for coefficient 0)
    void set_exponent(mpfr_srcptr elo, mpfr_srcptr ehi) {
        mpfr_set(elo_, elo, MPFR_RNDD);
        mpfr_set(ehi_, ehi, MPFR_RNDU);
    }
    void set_point(mpfr_srcptr xlo, mpfr_srcptr xhi) {
        mpfr_set(x0lo_, xlo, MPFR_RNDD);
        mpfr_set(x0hi_, xhi, MPFR_RNDU);
    }

    // contribution jet of one word: (qc+qp x)^(-2t) * poly(T(x)); adds the
    // result into sum (an IvJet of the same length).
    void accumulate_contrib(const MoebiusMap64& mm, const std::vector<Real>& poly_coeffs,
                            IvJet& sum) {
        // u = qc + qp*x (linear), num = pc + pp*x
        iv_linear(u_, mm.q_cur, mm.q_prev);
        iv_linear(num_, mm.p_cur, mm.p_prev);
        jet_log_linear(lg_, u_);
        jet_scale(lg_, elo_, ehi_);
        jet_exp(w_, lg_);
        jet_div_linear(tx_, num_, u_);
        jet_poly(acc_, poly_coeffs, tx_);
        jet_mul(contrib_, w_, acc_);
        for (int k = 0; k < len_; ++k) {
            mpfr_add(sum.lo[k], sum.lo[k], contrib_.lo[k], MPFR_RNDD);
            mpfr_add(sum.hi[k], sum.hi[k], contrib_.hi[k], MPFR_RNDU);
        }
    }

    // dst = a * b (truncated product); dst must not alias a or b.
    void jet_mul(IvJet& dst, const IvJet& a, const IvJet& b) {
        dst.zero();
        for (int k = 0; k < len_; ++k)
            for (int j = 0; j + k < len_; ++j) {
                iv_mul(s1_, s2_, a.lo[k], a.hi[k], b.lo[j], b.hi[j]);
                mpfr_add(dst.lo[j + k], dst.lo[j + k], s1_, MPFR_RNDD);
                mpfr_add(dst.hi[j + k], dst.hi[j + k], s2_, MPFR_RNDU);
            }
    }

private:
    void iv_linear(IvJet& dst, uint64_t c0, uint64_t c1) {
        dst.zero();
        // c0 + c1*x with x = [x0lo_, x0hi_] (both nonnegative here)
        mpfr_set_ui(s1_, static_cast<unsigned long>(c1), MPFR_RNDD);
        mpfr_mul(s2_, s1_, x0lo_, MPFR_RNDD);
        mpfr_add_ui(dst.lo[0], s2_, static_cast<unsigned long>(c0), MPFR_RNDD);
        mpfr_mul(s2_, s1_, x0hi_, MPFR_RNDU);
        mpfr_add_ui(dst.hi[0], s2_, static_cast<unsigned long>(c0), MPFR_RNDU);
        if (len_ > 1) {
            mpfr_set_ui(dst.lo[1], static_cast<unsigned long>(c1), MPFR_RNDD);
            mpfr_set_ui(dst.hi[1], static_cast<unsigned long>(c1), MPFR_RNDU);
        }
    }

    // log of a linear positive jet: L0 = log u0; L_k = (-1)^(k+1) rho^k / k,
    // rho = u1/u0.
    void jet_log_linear(IvJet& dst, const IvJet& u) {
        dst.zero();
        mpfr_log(dst.lo[0], u.lo[0], MPFR_RNDD);
        mpfr_log(dst.hi[0], u.hi[0], MPFR_RNDU);
        if (len_ < 2) return;
        // rho = u1/u0, u positive increasing: rho in [u1lo/u0hi, u1hi/u0lo]
        mpfr_div(s1_, u.lo[1], u.hi[0], MPFR_RNDD);  // rho lo
        mpfr_div(s2_, u.hi[1], u.lo[0], MPFR_RNDU);  // rho hi
        // power accumulators (rho >= 0)
        mpfr_set(dst.lo[1], s1_, MPFR_RNDD);
        mpfr_set(dst.hi[1], s2_, MPFR_RNDU);
        mpfr_set(s3_, s1_, MPFR_RNDD);
        mpfr_set(s4_, s2_, MPFR_RNDU);
        int sign = -1;  // next term: -rho^2/2
        for (int k = 2; k < len_; ++k) {
            mpfr_mul(s3_, s3_, s1_, MPFR_RNDD);  // rho^k lower
            mpfr_mul(s4_, s4_, s2_, MPFR_RNDU);  // rho^k upper
            if (sign < 0) {
                mpfr_div_si(dst.hi[k], s3_, -static_cast<long>(k), MPFR_RNDU);
                mpfr_div_si(dst.lo[k], s4_, -static_cast<long>(k), MPFR_RNDD);
            } else {
                mpfr_div_si(dst.lo[k], s3_, static_cast<long>(k), MPFR_RNDD);
                mpfr_div_si(dst.hi[k], s4_, static_cast<long>(k), MPFR_RNDU);
            }
            sign = -sign;
        }
    }

    // dst *= constant interval [clo, chi]
    void jet_scale(IvJet& dst, mpfr_srcptr clo, mpfr_srcptr chi) {
        for (int k = 0; k < len_; ++k) {
            iv_mul(s1_, s2_, dst.lo[k], dst.hi[k], clo, chi);
            mpfr_set(dst.lo[k], s1_, MPFR_RNDD);
            mpfr_set(dst.hi[k], s2_, MPFR_RNDU);
        }
    }

    // dst = exp(a)
    void jet_exp(IvJet& dst, const IvJet& a) {
        dst.zero();
        mpfr_exp(dst.lo[0], a.lo[0], MPFR_RNDD);
        mpfr_exp(dst.hi[0], a.hi[0], MPFR_RNDU);
        for (int k = 1; k < len_; ++k) {
            mpfr_set_zero(s3_, 1);
            mpfr_set_zero(s4_, 1);
            for (int j = 1; j <= k; ++j) {
                iv_mul(s1_, s2_, a.lo[j], a.hi[j], dst.lo[k - j], dst.hi[k - j]);
                mpfr_mul_si(s1_, s1_, j, MPFR_RNDD);
                mpfr_mul_si(s2_, s2_, j, MPFR_RNDU);
                mpfr_add(s3_, s3_, s1_, MPFR_RNDD);
                mpfr_add(s4_, s4_, s2_, MPFR_RNDU);
            }
            mpfr_div_si(dst.lo[k], s3_, k, MPFR_RNDD);
            mpfr_div_si(dst.hi[k], s4_, k, MPFR_RNDU);
        }
    }

    // dst = num/u for linear num and positive linear u:
    // q0 = num0/u0; q1 = (num1 - q0*u1)/u0; q_k = -q_{k-1}*u1/u0 for k >= 2.
    void jet_div_linear(IvJet& dst, const IvJet& num, const IvJet& u) {
        dst.zero();
        iv_div(dst.lo[0], dst.hi[0], num.lo[0], num.hi[0], u.lo[0], u.hi[0]);
        if (len_ < 2) return;
        iv_mul(s1_, s2_, dst.lo[0], dst.hi[0], u.lo[1], u.hi[1]);
        mpfr_sub(s3_, num.lo[1], s2_, MPFR_RNDD);
        mpfr_sub(s4_, num.hi[1], s1_, MPFR_RNDU);
        iv_div(dst.lo[1], dst.hi[1], s3_, s4_, u.lo[0], u.hi[0]);
        for (int k = 2; k < len_; ++k) {
            iv_mul(s1_, s2_, dst.lo[k - 1], dst.hi[k - 1], u.lo[1], u.hi[1]);
            mpfr_neg(s3_, s2_, MPFR_RNDD);
            mpfr_neg(s4_, s1_, MPFR_RNDU);
            iv_div(dst.lo[k], dst.hi[k], s3_, s4_, u.lo[0], u.hi[0]);
        }
    }

    // Horner with frozen point coefficients; dst must not alias tx.
    void jet_poly(IvJet& dst, const std::vector<Real>& coeffs, const IvJet& tx) {
        dst.zero();
        const size_t mm = coeffs.size();
        mpfr_set(dst.lo[0], coeffs[mm - 1].get(), MPFR_RNDD);
        mpfr_set(dst.hi[0], coeffs[mm - 1].get(), MPFR_RNDU);
        for (size_t i = mm - 1; i-- > 0;) {
            jet_mul(mulscratch_, dst, tx);
            for (int k = 0; k < len_; ++k) {
                mpfr_set(dst.lo[k], mulscratch_.lo[k], MPFR_RNDD);
                mpfr_set(dst.hi[k], mulscratch_.hi[k], MPFR_RNDU);
            }
            mpfr_add(dst.lo[0], dst.lo[0], coeffs[i].get(), MPFR_RNDD);
            mpfr_add(dst.hi[0], dst.hi[0], coeffs[i].get(), MPFR_RNDU);
        }
    }

    // outward interval multiply into (rlo, rhi); scratch-free sign dispatch
    void iv_mul(mpfr_ptr rlo, mpfr_ptr rhi, mpfr_srcptr al, mpfr_srcptr ah, mpfr_srcptr bl,
                mpfr_srcptr bh) {
        const int sal = mpfr_sgn(al), sah = mpfr_sgn(ah);
        const int sbl = mpfr_sgn(bl), sbh = mpfr_sgn(bh);
        if (sal >= 0) {
            if (sbl >= 0) {
                mpfr_mul(rlo, al, bl, MPFR_RNDD);
                mpfr_mul(rhi, ah, bh, MPFR_RNDU);
            } else if (sbh <= 0) {
                mpfr_mul(rlo, ah, bl, MPFR_RNDD);
                mpfr_mul(rhi, al, bh, MPFR_RNDU);
            } else {
                mpfr_mul(rlo, ah, bl, MPFR_RNDD);
                mpfr_mul(rhi, ah, bh, MPFR_RNDU);
            }
        } else if (sah <= 0) {
            if (sbl >= 0) {
                mpfr_mul(rlo, al, bh, MPFR_RNDD);
                mpfr_mul(rhi, ah, bl, MPFR_RNDU);
            } else if (sbh <= 0) {
                mpfr_mul(rlo, ah, bh, MPFR_RNDD);
                mpfr_mul(rhi, al, bl, MPFR_RNDU);
            } else {
                mpfr_mul(rlo, al, bh, MPFR_RNDD);
                mpfr_mul(rhi, al, bl, MPFR_RNDU);
            }
        } else {
            if (sbl >= 0) {
                mpfr_mul(rlo, al, bh, MPFR_RNDD);
                mpfr_mul(rhi, ah, bh, MPFR_RNDU);
            } else if (sbh <= 0) {
                mpfr_mul(rlo, ah, bl, MPFR_RNDD);
                mpfr_mul(rhi, al, bl, MPFR_RNDU);
            } else {
                // both straddle zero: need all four products (dedicated scratch)
                mpfr_mul(s5_, al, bh, MPFR_RNDD);
                mpfr_mul(s6_, ah, bl, MPFR_RNDD);
                mpfr_min(rlo, s5_, s6_, MPFR_RNDD);
                mpfr_mul(s5_, al, bl, MPFR_RNDU);
                mpfr_mul(s6_, ah, bh, MPFR_RNDU);
                mpfr_max(rhi, s5_, s6_, MPFR_RNDU);
            }
        }
    }

    // outward division (b must not straddle zero; here b > 0 always)
    void iv_div(mpfr_ptr rlo, mpfr_ptr rhi, mpfr_srcptr al, mpfr_srcptr ah, mpfr_srcptr bl,
                mpfr_srcptr bh) {
        if (mpfr_sgn(al) >= 0) {
            mpfr_div(rlo, al, bh, MPFR_RNDD);
            mpfr_div(rhi, ah, bl, MPFR_RNDU);
        } else if (mpfr_sgn(ah) <= 0) {
            mpfr_div(rlo, al, bl, MPFR_RNDD);
            mpfr_div(rhi, ah, bh, MPFR_RNDU);
        } else {
            mpfr_div(rlo, al, bl, MPFR_RNDD);
            mpfr_div(rhi, ah, bl, MPFR_RNDU);
        }
    }

    mpfr_prec_t prec_;
    int len_;
    IvJet u_, num_, lg_, w_, tx_, acc_, mulscratch_, contrib_;
    mpfr_t s1_, s2_, s3_, s4_, s5_, s6_, elo_, ehi_, x0lo_, x0hi_;
};

}  // namespace gcdim
