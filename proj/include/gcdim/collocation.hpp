#pragma once

// Chebyshev collocation on [0,1]: nodes x_k = (1 + cos(pi(2k-1)/2m))/2 and
// the Lagrange cardinal basis p_l with p_l(x_k) = delta_lk. Node values are
// evaluated with the barycentric formula; the power-basis coefficients of
// each cardinal polynomial are kept for the certification stage, which needs
// polynomials with frozen point coefficients.

#include <stdexcept>
#include <vector>

#include "gcdim/ball.hpp"
#include "gcdim/real.hpp"

namespace gcdim {

struct CollocationBasis {
    size_t m = 0;
    mpfr_prec_t prec = 128;
    std::vector<Real> nodes;                  // x_1..x_m (descending in x)
    std::vector<Real> bary_w;                 // barycentric weights
    std::vector<std::vector<Real>> coeffs;    // coeffs[l][j]: coefficient of x^j in p_l

    // Cardinal values p_l(y) for all l at a point y, written into out (m Reals
    // of matching precision); sum and term are caller scratch. Exact node hits
    // short-circuit to the delta property.
    void eval_all(const Real& y, std::vector<Real>& out, Real& sum, Real& term) const {
        for (size_t k = 0; k < m; ++k)
            if (mpfr_cmp(y.get(), nodes[k].get()) == 0) {
                for (size_t l = 0; l < m; ++l)
                    mpfr_set_si(out[l].get(), l == k ? 1 : 0, MPFR_RNDN);
                return;
            }
        mpfr_set_zero(sum.get(), 1);
        for (size_t k = 0; k < m; ++k) {
            mpfr_sub(term.get(), y.get(), nodes[k].get(), MPFR_RNDN);
            mpfr_div(out[k].get(), bary_w[k].get(), term.get(), MPFR_RNDN);
            mpfr_add(sum.get(), sum.get(), out[k].get(), MPFR_RNDN);
        }
        for (size_t l = 0; l < m; ++l) mpfr_div(out[l].get(), out[l].get(), sum.get(), MPFR_RNDN);
    }
};

inline CollocationBasis chebyshev_basis(size_t m, mpfr_prec_t prec) {
    if (m < 1) throw std::invalid_argument("chebyshev_basis: m must be >= 1");
    if (m > 64) throw std::invalid_argument("chebyshev_basis: m must be <= 64");
    CollocationBasis b;
    b.m = m;
    b.prec = prec;
    b.nodes.assign(m, Real(prec));
    Real pi(prec), angle(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (size_t k = 1; k <= m; ++k) {
        mpfr_mul_si(angle.get(), pi.get(), static_cast<long>(2 * k - 1), MPFR_RNDN);
        mpfr_div_si(angle.get(), angle.get(), static_cast<long>(2 * m), MPFR_RNDN);
        mpfr_cos(b.nodes[k - 1].get(), angle.get(), MPFR_RNDN);
        mpfr_add_si(b.nodes[k - 1].get(), b.nodes[k - 1].get(), 1, MPFR_RNDN);
        mpfr_div_2ui(b.nodes[k - 1].get(), b.nodes[k - 1].get(), 1, MPFR_RNDN);
    }
    // barycentric weights w_l = 1 / prod_{k != l} (x_l - x_k)
    b.bary_w.assign(m, Real(prec));
    Real diff(prec);
    for (size_t l = 0; l < m; ++l) {
        Real prod(1.0, prec);
        for (size_t k = 0; k < m; ++k) {
            if (k == l) continue;
            mpfr_sub(diff.get(), b.nodes[l].get(), b.nodes[k].get(), MPFR_RNDN);
            mpfr_mul(prod.get(), prod.get(), diff.get(), MPFR_RNDN);
        }
        mpfr_si_div(b.bary_w[l].get(), 1, prod.get(), MPFR_RNDN);
    }
    // power-basis coefficients: p_l = w_l * prod_{k != l} (x - x_k)
    b.coeffs.assign(m, std::vector<Real>(m, Real(prec)));
    for (size_t l = 0; l < m; ++l) {
        std::vector<Real> poly(m, Real(prec));
        mpfr_set_si(poly[0].get(), 1, MPFR_RNDN);
        size_t deg = 0;
        Real tmp(prec);
        for (size_t k = 0; k < m; ++k) {
            if (k == l) continue;
            // poly := poly * (x - x_k):  new[j] = old[j-1] - x_k*old[j]
            for (size_t j = deg + 1; j > 0; --j) {
                if (j <= deg) {
                    mpfr_mul(tmp.get(), poly[j].get(), b.nodes[k].get(), MPFR_RNDN);
                    mpfr_sub(poly[j].get(), poly[j - 1].get(), tmp.get(), MPFR_RNDN);
                } else {
                    mpfr_set(poly[j].get(), poly[j - 1].get(), MPFR_RNDN);
                }
            }
            mpfr_mul(tmp.get(), poly[0].get(), b.nodes[k].get(), MPFR_RNDN);
            mpfr_neg(poly[0].get(), tmp.get(), MPFR_RNDN);
            ++deg;
        }
        for (size_t j = 0; j < m; ++j)
            mpfr_mul(b.coeffs[l][j].get(), poly[j].get(), b.bary_w[l].get(), MPFR_RNDN);
    }
    return b;
}

}  // namespace gcdim
