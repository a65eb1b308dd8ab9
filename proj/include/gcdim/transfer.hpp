#pragma once

// Collocation discretization of the weighted transfer operator: per-word
// m x m blocks B^{w,t}(i,l) = |T_w'(x_i)|^t * p_l(T_w(x_i)) accumulated
// directly into the reduced matrix, and its leading eigenpair by power
// iteration. Entries are high-precision point values; rigor enters later in
// the certification stage, which only uses the eigenvector as a candidate.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcdim/collocation.hpp"
#include "gcdim/decimal.hpp"
#include "gcdim/moebius.hpp"
#include "gcdim/parallel.hpp"
#include "gcdim/real.hpp"
#include "gcdim/subshift.hpp"

namespace gcdim {

// Single-word block at point nodes (used by tests and small expansions).
inline std::vector<std::vector<Real>> block(const Word& w, const Real& t,
                                            const CollocationBasis& basis) {
    const mpfr_prec_t prec = basis.prec;
    MoebiusMap mb = compose(w);
    std::vector<std::vector<Real>> out(basis.m, std::vector<Real>(basis.m, Real(prec)));
    Real u(prec), tx(prec), wgt(prec), e(prec), s1(prec), s2(prec);
    std::vector<Real> cardinal(basis.m, Real(prec));
    Real qc(prec), qp(prec), pc(prec), pp(prec);
    mpfr_set_z(qc.get(), mb.q_cur.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(qp.get(), mb.q_prev.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(pc.get(), mb.p_cur.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(pp.get(), mb.p_prev.get_mpz_t(), MPFR_RNDN);
    for (size_t i = 0; i < basis.m; ++i) {
        mpfr_fma(u.get(), qp.get(), basis.nodes[i].get(), qc.get(), MPFR_RNDN);
        mpfr_fma(tx.get(), pp.get(), basis.nodes[i].get(), pc.get(), MPFR_RNDN);
        mpfr_div(tx.get(), tx.get(), u.get(), MPFR_RNDN);
        // |T'(x_i)|^t = u^(-2t)
        mpfr_log(e.get(), u.get(), MPFR_RNDN);
        mpfr_mul(e.get(), e.get(), t.get(), MPFR_RNDN);
        mpfr_mul_si(e.get(), e.get(), -2, MPFR_RNDN);
        mpfr_exp(wgt.get(), e.get(), MPFR_RNDN);
        basis.eval_all(tx, cardinal, s1, s2);
        for (size_t l = 0; l < basis.m; ++l)
            mpfr_mul(out[i][l].get(), wgt.get(), cardinal[l].get(), MPFR_RNDN);
    }
    return out;
}

struct ReducedBt {
    size_t m = 0;
    mpfr_prec_t prec = 128;
    std::string t_decimal;
    size_t K_live = 0;                    // live column classes = block count
    std::vector<uint32_t> live_cols;      // original column class id per block
    std::vector<int32_t> col_block;       // original class id -> block index or -1
    std::vector<Real> mat;                // (K_live*m)^2 row-major
    uint64_t provenance = 0;
    bool has_negative_entries = false;

    size_t dim() const { return K_live * m; }
    const Real& at(size_t i, size_t j) const { return mat[i * dim() + j]; }
    Real& at(size_t i, size_t j) { return mat[i * dim() + j]; }
};

inline uint64_t fnv1a(const void* data, size_t len, uint64_t h = 1469598103934665603ULL) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

inline uint64_t hash_problem(const ForbiddenSet& F, size_t n) {
    uint64_t h = fnv1a(&F.alphabet_max, sizeof(F.alphabet_max));
    for (const auto& w : F.words) {
        h = fnv1a(w.data(), w.size(), h);
        uint8_t sep = 0;
        h = fnv1a(&sep, 1, h);
    }
    h = fnv1a(&n, sizeof(n), h);
    return h;
}

// Streaming assembly over the live allowed words. Per-word blocks are summed
// into buckets keyed by the word's (row class, column class) pair, and the
// buckets are folded through the compatibility matrix at the end; the full
// unreduced matrix is never formed. Deterministic for a fixed thread count:
// DFS subtrees are assigned statically and partials merge in worker order.
inline ReducedBt assemble_reduced_bt(const ForbiddenSet& F, size_t n, const ReducedMarkov& rm,
                                     const CollocationBasis& basis, const std::string& t_decimal,
                                     unsigned threads = 1) {
    const mpfr_prec_t prec = basis.prec;
    const size_t m = basis.m;

    ReducedBt bt;
    bt.m = m;
    bt.prec = prec;
    bt.t_decimal = t_decimal;
    bt.col_block.assign(rm.K, -1);
    for (uint32_t c = 0; c < rm.K; ++c)
        if (rm.col_live[c]) {
            bt.col_block[c] = static_cast<int32_t>(bt.live_cols.size());
            bt.live_cols.push_back(c);
        }
    bt.K_live = bt.live_cols.size();
    bt.provenance = hash_problem(F, n);
    bt.provenance = fnv1a(t_decimal.data(), t_decimal.size(), bt.provenance);
    bt.provenance = fnv1a(&m, sizeof(m), bt.provenance);

    Real t(prec);
    mpq_class tq(t_decimal_to_mpq(t_decimal));
    mpfr_set_q(t.get(), tq.get_mpq_t(), MPFR_RNDN);

    // pair index per word (prepass; shared read-only by workers)
    const size_t np = rm.pairs.size();
    std::vector<uint32_t> pair_of_word(rm.word_live.size());
    {
        std::map<std::pair<uint32_t, uint32_t>, uint32_t> pair_idx;
        for (uint32_t p = 0; p < np; ++p) pair_idx[rm.pairs[p]] = p;
        for (size_t i = 0; i < rm.word_live.size(); ++i)
            pair_of_word[i] = pair_idx.at({rm.row_map[i], rm.col_map[i]});
    }

    // Each worker re-runs the allowed-word DFS with incremental continuant
    // state and handles the leaves whose index is congruent to its id.
    std::vector<std::vector<Real>> partial(threads);
    std::vector<std::vector<uint8_t>> touched(threads);
    for (unsigned w = 0; w < threads; ++w) {
        partial[w].assign(np * m * m, Real(prec));
        touched[w].assign(np, 0);
    }

    parallel_for_static(threads, threads, [&](unsigned, size_t worker) {
        const unsigned wid = static_cast<unsigned>(worker);
        Real u(prec), tx(prec), wgt(prec), e(prec), tmp(prec), s1(prec), s2(prec);
        std::vector<Real> cardinal(m, Real(prec));
        size_t idx = 0;
        std::vector<MoebiusMap64> stack{MoebiusMap64::identity()};
        detail::PrefixAutomaton aut(F);
        Word cur;
        std::vector<int> sstack{0};
        std::function<void()> rec = [&]() {
            if (cur.size() == n) {
                size_t i = idx++;
                if (i % threads != wid) return;
                if (!rm.word_live[i]) return;
                uint32_t p = pair_of_word[i];
                touched[wid][p] = 1;
                const MoebiusMap64& mm = stack.back();
                Real* blockp = &partial[wid][static_cast<size_t>(p) * m * m];
                for (size_t ni = 0; ni < m; ++ni) {
                    mpfr_set_ui(tmp.get(), static_cast<unsigned long>(mm.q_prev), MPFR_RNDN);
                    mpfr_set_ui(u.get(), static_cast<unsigned long>(mm.q_cur), MPFR_RNDN);
                    mpfr_fma(u.get(), tmp.get(), basis.nodes[ni].get(), u.get(), MPFR_RNDN);
                    mpfr_set_ui(tmp.get(), static_cast<unsigned long>(mm.p_prev), MPFR_RNDN);
                    mpfr_set_ui(tx.get(), static_cast<unsigned long>(mm.p_cur), MPFR_RNDN);
                    mpfr_fma(tx.get(), tmp.get(), basis.nodes[ni].get(), tx.get(), MPFR_RNDN);
                    mpfr_div(tx.get(), tx.get(), u.get(), MPFR_RNDN);
                    mpfr_log(e.get(), u.get(), MPFR_RNDN);
                    mpfr_mul(e.get(), e.get(), t.get(), MPFR_RNDN);
                    mpfr_mul_si(e.get(), e.get(), -2, MPFR_RNDN);
                    mpfr_exp(wgt.get(), e.get(), MPFR_RNDN);
                    basis.eval_all(tx, cardinal, s1, s2);
                    for (size_t l = 0; l < m; ++l) {
                        mpfr_mul(tmp.get(), wgt.get(), cardinal[l].get(), MPFR_RNDN);
                        mpfr_add(blockp[ni * m + l].get(), blockp[ni * m + l].get(), tmp.get(),
                                 MPFR_RNDN);
                    }
                }
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
    });

    // merge worker partials in worker order
    std::vector<Real> G = std::move(partial[0]);
    std::vector<uint8_t> pair_touched = std::move(touched[0]);
    for (unsigned w = 1; w < threads; ++w) {
        for (size_t p = 0; p < np; ++p) {
            if (!touched[w][p]) continue;
            pair_touched[p] = 1;
            for (size_t e2 = 0; e2 < m * m; ++e2)
                mpfr_add(G[p * m * m + e2].get(), G[p * m * m + e2].get(),
                         partial[w][p * m * m + e2].get(), MPFR_RNDN);
        }
        partial[w].clear();
        partial[w].shrink_to_fit();
    }
    partial.clear();

    // fold buckets through the compatibility matrix:
    // Bt(block c, block l) += mhat[r][orig(c)] * G[(r, l)]
    const size_t dim = bt.K_live * m;
    bt.mat.assign(dim * dim, Real(prec));
    for (size_t p = 0; p < np; ++p) {
        if (!pair_touched[p]) continue;
        uint32_t r = rm.pairs[p].first;
        int32_t lblk = bt.col_block[rm.pairs[p].second];
        if (lblk < 0) continue;
        const Real* g = &G[p * m * m];
        for (size_t cblk = 0; cblk < bt.K_live; ++cblk) {
            if (!rm.mhat[r * rm.K + bt.live_cols[cblk]]) continue;
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) {
                    Real& dst = bt.mat[(cblk * m + i) * dim + (static_cast<size_t>(lblk) * m + j)];
                    mpfr_add(dst.get(), dst.get(), g[i * m + j].get(), MPFR_RNDN);
                }
        }
    }
    for (const Real& v : bt.mat)
        if (v.sign() < 0) { bt.has_negative_entries = true; break; }
    return bt;
}

struct EigenPair {
    Real eigenvalue;           // Collatz midpoint estimate
    Real lambda_lo, lambda_hi; // Collatz-Wielandt bounds from the last iterate
    std::vector<Real> vector;  // sup-norm 1
    Real residual;
    size_t iterations = 0;
    bool positive = true;
};

// Power iteration from the all-ones vector with sup-norm normalization.
// Warm-started in hardware doubles; finishes at full precision. Stops when
// successive normalized iterates differ by < 10^log10_tol in sup norm.
inline EigenPair leading_eig(const ReducedBt& bt, double log10_tol, size_t max_iters,
                             unsigned threads = 1) {
    const size_t dim = bt.dim();
    const mpfr_prec_t prec = bt.prec;

    std::vector<double> dmat(dim * dim);
    for (size_t i = 0; i < dim * dim; ++i) dmat[i] = bt.mat[i].to_double();
    std::vector<double> dv(dim, 1.0), dw(dim);
    for (size_t it = 0; it < 20000; ++it) {
        parallel_for_static(dim, threads, [&](unsigned, size_t r) {
            double acc = 0;
            const double* row = &dmat[r * dim];
            for (size_t j = 0; j < dim; ++j) acc += row[j] * dv[j];
            dw[r] = acc;
        });
        double nrm = 0;
        for (double x : dw) nrm = std::max(nrm, std::fabs(x));
        if (nrm == 0) break;
        double diff = 0;
        for (size_t j = 0; j < dim; ++j) {
            dw[j] /= nrm;
            diff = std::max(diff, std::fabs(dw[j] - dv[j]));
        }
        dv = dw;
        if (diff < 1e-14) break;
    }
    dmat.clear();

    std::vector<Real> v(dim, Real(prec)), w(dim, Real(prec));
    for (size_t j = 0; j < dim; ++j) mpfr_set_d(v[j].get(), dv[j], MPFR_RNDN);

    Real tol(prec);
    mpfr_set_d(tol.get(), log10_tol, MPFR_RNDN);
    mpfr_exp10(tol.get(), tol.get(), MPFR_RNDN);

    Real nrm(prec), diff(prec), tmp(prec);
    EigenPair out{Real(prec), Real(prec), Real(prec), {}, Real(prec), 0, true};
    bool converged = false;
    for (size_t it = 0; it < max_iters; ++it) {
        parallel_for_static(dim, threads, [&](unsigned, size_t r) {
            Real acc(prec);
            mpfr_set_zero(acc.get(), 1);
            const Real* row = &bt.mat[r * dim];
            for (size_t j = 0; j < dim; ++j)
                mpfr_fma(acc.get(), row[j].get(), v[j].get(), acc.get(), MPFR_RNDN);
            mpfr_set(w[r].get(), acc.get(), MPFR_RNDN);
        });
        mpfr_set_zero(nrm.get(), 1);
        for (size_t j = 0; j < dim; ++j) {
            mpfr_abs(tmp.get(), w[j].get(), MPFR_RNDN);
            mpfr_max(nrm.get(), nrm.get(), tmp.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(nrm.get())) throw std::runtime_error("power iteration: zero image");
        mpfr_set_zero(diff.get(), 1);
        for (size_t j = 0; j < dim; ++j) {
            mpfr_div(w[j].get(), w[j].get(), nrm.get(), MPFR_RNDN);
            mpfr_sub(tmp.get(), w[j].get(), v[j].get(), MPFR_RNDN);
            mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
            mpfr_max(diff.get(), diff.get(), tmp.get(), MPFR_RNDN);
        }
        std::swap(v, w);
        out.iterations = it + 1;
        if (mpfr_cmp(diff.get(), tol.get()) < 0) { converged = true; break; }
    }
    if (!converged)
        throw std::runtime_error("power iteration did not converge; last diff " +
                                 diff.str(8));

    // Collatz-Wielandt bounds min/max (Bv)_i / v_i over positive entries.
    Real lo(prec), hi(prec);
    mpfr_set_inf(lo.get(), 1);
    mpfr_set_inf(hi.get(), -1);
    Real resid(prec);
    mpfr_set_zero(resid.get(), 1);
    std::vector<Real> bv(dim, Real(prec));
    parallel_for_static(dim, threads, [&](unsigned, size_t r) {
        Real acc(prec);
        mpfr_set_zero(acc.get(), 1);
        const Real* row = &bt.mat[r * dim];
        for (size_t j = 0; j < dim; ++j)
            mpfr_fma(acc.get(), row[j].get(), v[j].get(), acc.get(), MPFR_RNDN);
        mpfr_set(bv[r].get(), acc.get(), MPFR_RNDN);
    });
    for (size_t j = 0; j < dim; ++j) {
        if (v[j].sign() <= 0) { out.positive = false; continue; }
        mpfr_div(tmp.get(), bv[j].get(), v[j].get(), MPFR_RNDN);
        mpfr_min(lo.get(), lo.get(), tmp.get(), MPFR_RNDN);
        mpfr_max(hi.get(), hi.get(), tmp.get(), MPFR_RNDN);
    }
    out.lambda_lo = lo;
    out.lambda_hi = hi;
    mpfr_add(out.eigenvalue.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(out.eigenvalue.get(), out.eigenvalue.get(), 1, MPFR_RNDN);
    for (size_t j = 0; j < dim; ++j) {
        mpfr_fms(tmp.get(), out.eigenvalue.get(), v[j].get(), bv[j].get(), MPFR_RNDN);
        mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
        mpfr_max(resid.get(), resid.get(), tmp.get(), MPFR_RNDN);
    }
    out.residual = resid;
    out.vector = std::move(v);
    return out;
}

}  // namespace gcdim
