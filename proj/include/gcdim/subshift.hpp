#pragma once

// Forbidden-word bookkeeping for subshifts of finite type on digit alphabets:
// normalized forbidden sets, allowed-word enumeration via a trie automaton
// with failure links, prefix/suffix equivalence classes, and the reduced
// compatibility matrix with expansion maps R and C.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcdim/words.hpp"

namespace gcdim {

struct ForbiddenSet {
    int alphabet_max = 2;
    std::vector<Word> words;          // normalized: sorted, no word a subword of another
    bool closed_under_reversal = false;

    size_t max_len() const {
        size_t m = 0;
        for (const auto& w : words) m = std::max(m, w.size());
        return m;
    }
    // Default composition length n = max forbidden length - 1.
    size_t default_n() const { return words.empty() ? 1 : max_len() - 1; }
};

// Normalize: optionally add reverses, dedupe, drop words containing another
// forbidden word as a subword, sort lexicographically.
inline ForbiddenSet make_forbidden_set(int alphabet_max, std::vector<Word> in,
                                       bool include_reverses) {
    std::set<Word> ws;
    for (auto& w : in) {
        if (w.empty()) throw std::invalid_argument("empty forbidden word");
        for (Digit d : w)
            if (d < 1 || d > alphabet_max)
                throw std::invalid_argument("forbidden word digit outside alphabet: " +
                                            word_to_string(w));
        ws.insert(w);
        if (include_reverses) ws.insert(reversed(w));
    }
    std::vector<Word> kept;
    for (const auto& w : ws) {
        bool redundant = false;
        for (const auto& v : ws)
            if (v != w && contains_subword(w, v)) { redundant = true; break; }
        if (!redundant) kept.push_back(w);
    }
    std::sort(kept.begin(), kept.end());
    bool closed = true;
    std::set<Word> final_set(kept.begin(), kept.end());
    for (const auto& w : kept)
        if (!final_set.count(reversed(w))) { closed = false; break; }
    ForbiddenSet f;
    f.alphabet_max = alphabet_max;
    f.words = std::move(kept);
    f.closed_under_reversal = closed;
    return f;
}

// Brute-force compatibility oracle: the concatenation w1.w2 must not contain
// a forbidden word across the boundary (w1, w2 themselves assumed allowed).
inline bool compatible(const Word& w1, const Word& w2, const ForbiddenSet& F) {
    Word cat = w1;
    cat.insert(cat.end(), w2.begin(), w2.end());
    for (const auto& f : F.words)
        if (contains_subword(cat, f)) return false;
    return true;
}

namespace detail {

// Trie over forbidden-word prefixes with failure links (Aho-Corasick).
// State = longest suffix of the word read so far that is a forbidden-word
// prefix. Terminal states mean a forbidden word just completed.
struct PrefixAutomaton {
    struct State {
        std::vector<int> next;   // per digit 1..amax
        bool terminal = false;
        int depth = 0;
        int fail = 0;
    };
    int amax;
    std::vector<State> states;

    PrefixAutomaton(const ForbiddenSet& F) : amax(F.alphabet_max) {
        states.push_back(State{std::vector<int>(amax + 1, -1), false, 0, 0});
        for (const auto& w : F.words) {
            int s = 0;
            for (Digit d : w) {
                if (states[s].next[d] < 0) {
                    states.push_back(State{std::vector<int>(amax + 1, -1), false,
                                           states[s].depth + 1, 0});
                    states[s].next[d] = static_cast<int>(states.size()) - 1;
                }
                s = states[s].next[d];
            }
            states[s].terminal = true;
        }
        // BFS failure links; goto function completed in place.
        std::vector<int> queue;
        for (Digit d = 1; d <= amax; ++d) {
            int t = states[0].next[d];
            if (t < 0) states[0].next[d] = 0;
            else { states[t].fail = 0; queue.push_back(t); }
        }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int s = queue[qi];
            states[s].terminal = states[s].terminal || states[states[s].fail].terminal;
            for (Digit d = 1; d <= amax; ++d) {
                int t = states[s].next[d];
                int f = states[states[s].fail].next[d];
                if (t < 0) states[s].next[d] = f;
                else { states[t].fail = f; queue.push_back(t); }
            }
        }
    }

    int step(int s, Digit d) const { return states[s].next[d]; }
    bool dead(int s) const { return states[s].terminal; }
};

}  // namespace detail

struct AllowedWords {
    size_t n = 0;
    int alphabet_max = 2;
    std::vector<Word> words;  // sorted lexicographically

    size_t count() const { return words.size(); }
};

// DFS enumeration of all length-n words avoiding F, in lexicographic order.
// visit(word) is called at every leaf. Cost O(#A * n) automaton steps.
inline void for_each_allowed(const ForbiddenSet& F, size_t n,
                             const std::function<void(const Word&)>& visit) {
    if (n < 1) throw std::invalid_argument("allowed_words: n must be >= 1");
    detail::PrefixAutomaton aut(F);
    Word cur;
    cur.reserve(n);
    std::vector<int> state_stack{0};
    std::function<void()> rec = [&]() {
        if (cur.size() == n) { visit(cur); return; }
        for (Digit d = 1; d <= F.alphabet_max; ++d) {
            int ns = aut.step(state_stack.back(), d);
            if (aut.dead(ns)) continue;
            cur.push_back(d);
            state_stack.push_back(ns);
            rec();
            cur.pop_back();
            state_stack.pop_back();
        }
    };
    rec();
}

inline AllowedWords allowed_words(const ForbiddenSet& F, size_t n) {
    AllowedWords a;
    a.n = n;
    a.alphabet_max = F.alphabet_max;
    for_each_allowed(F, n, [&](const Word& w) { a.words.push_back(w); });
    return a;
}

inline size_t count_allowed(const ForbiddenSet& F, size_t n) {
    size_t c = 0;
    for_each_allowed(F, n, [&](const Word&) { ++c; });
    return c;
}

// ---------------------------------------------------------------------------
// Equivalence classes and the reduced matrix.
//
// For an allowed word w:
//   PF_w = { proper prefixes p of forbidden words : p is a suffix of w }
//   SF_w = { proper suffixes s of forbidden words : s is a prefix of w }
// PF_w decides which words may follow w (the row of w in the compatibility
// matrix M), SF_w decides which words may precede it (the column).
// Encoding: prefix p of forbidden word f_j -> pair (j, |f_j|-|p|); suffix s
// of f_j -> pair (j, |s|). w1.w2 completes f_j across the boundary exactly
// when the encodings of PF_{w1} and SF_{w2} intersect.
// ---------------------------------------------------------------------------

struct ReducedMarkov {
    size_t K = 0;                      // unique columns (== unique rows when reversal-closed)
    size_t K_rows = 0;
    std::vector<uint8_t> mhat;         // K_rows x K, row-major: mhat[r*K+c]
    std::vector<uint32_t> row_map;     // allowed-word index -> row class R
    std::vector<uint32_t> col_map;     // allowed-word index -> column class C
    std::vector<uint32_t> row_rep;     // class -> index of lexicographically smallest member
    std::vector<uint32_t> col_rep;
    size_t raw_prefix_classes = 0;     // class counts before column/row dedup
    size_t raw_suffix_classes = 0;
    bool irreducible = true;           // on the full word digraph

    // Essential core: words that admit arbitrarily long extensions both ways.
    // Finite words outside the core index transient states of the transition
    // matrix (zero rows/columns and their cascade); they carry no mass of the
    // limit set and are skipped by the spectral stages. Liveness is decided
    // on (row class, column class) pairs, which words map onto.
    std::vector<std::pair<uint32_t, uint32_t>> pairs;  // occurring (R,C) pairs
    std::vector<uint8_t> pair_live;
    std::vector<uint8_t> word_live;    // per allowed-word index
    std::vector<uint8_t> col_live;     // column class has a live member
    std::vector<uint8_t> row_live;
    size_t live_count = 0;
    bool core_irreducible = true;

    uint8_t m_entry(size_t j, size_t k) const { return mhat[row_map[j] * K + col_map[k]]; }
    uint8_t mhat_at(size_t r, size_t c) const { return mhat[r * K + c]; }
};

namespace detail {

using PairCode = uint32_t;  // (forbidden word index << 8) | length

struct ClassTable {
    // signature (sorted vector of PairCode) -> class id
    std::map<std::vector<PairCode>, uint32_t> ids;
    std::vector<std::vector<PairCode>> sigs;

    uint32_t intern(std::vector<PairCode> sig) {
        std::sort(sig.begin(), sig.end());
        sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        auto it = ids.find(sig);
        if (it != ids.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(sigs.size());
        ids.emplace(sig, id);
        sigs.push_back(std::move(sig));
        return id;
    }
};

inline bool signatures_disjoint(const std::vector<PairCode>& a, const std::vector<PairCode>& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

}  // namespace detail

// Streaming classification of allowed words. Enumerates words in lexicographic
// order, assigns raw prefix/suffix classes on the fly, then dedupes identical
// rows/columns of the class compatibility matrix. visit(word, index) is
// optional and is called in enumeration order.
inline ReducedMarkov reduced_markov(
    const ForbiddenSet& F, size_t n,
    const std::function<void(const Word&, size_t)>& visit = nullptr,
    size_t* out_count = nullptr) {
    detail::PrefixAutomaton aut(F);

    // Proper prefixes/suffixes of forbidden words, with their pair encodings.
    // prefix_sig_of_state[s]: encoding of the set of forbidden-prefixes that
    // are suffixes of any word ending in automaton state s (follow fail links).
    const size_t nf = F.words.size();
    std::vector<std::vector<detail::PairCode>> state_sig(aut.states.size());
    {
        // map trie state -> the prefix it spells (depth digits); enumerate via DFS
        std::vector<Word> spell(aut.states.size());
        std::vector<int> todo{0};
        while (!todo.empty()) {
            int s = todo.back();
            todo.pop_back();
            for (Digit d = 1; d <= F.alphabet_max; ++d) {
                int t = aut.states[s].next[d];
                if (t != 0 && aut.states[t].depth == aut.states[s].depth + 1 &&
                    spell[t].empty() && t != s) {
                    spell[t] = spell[s];
                    spell[t].push_back(d);
                    todo.push_back(t);
                }
            }
        }
        // encoding of a single prefix word p: all (j, |f_j|-|p|) with p a prefix of f_j
        auto encode_prefix = [&](const Word& p) {
            std::vector<detail::PairCode> sig;
            for (size_t j = 0; j < nf; ++j) {
                const Word& f = F.words[j];
                if (p.size() < f.size() &&
                    std::equal(p.begin(), p.end(), f.begin()))
                    sig.push_back(static_cast<detail::PairCode>((j << 8) | (f.size() - p.size())));
            }
            return sig;
        };
        for (size_t s = 0; s < aut.states.size(); ++s) {
            // union over fail chain of encodings of the spelled prefixes
            std::vector<detail::PairCode> sig;
            int t = static_cast<int>(s);
            while (t != 0) {
                auto one = encode_prefix(spell[t]);
                sig.insert(sig.end(), one.begin(), one.end());
                t = aut.states[t].fail;
            }
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            state_sig[s] = std::move(sig);
        }
    }

    // Proper suffixes of forbidden words, bucketed by length; suffix s of f_j
    // encodes to (j, |s|). Matched incrementally along the DFS path: a suffix
    // of length d is tested once per depth-d node, so SF_w costs O(1) at the
    // leaves.
    struct Suffix {
        Word w;
        std::vector<detail::PairCode> codes;
    };
    std::vector<std::vector<Suffix>> suffix_by_len(n + 1);
    {
        std::map<Word, std::vector<detail::PairCode>> by_word;
        for (size_t j = 0; j < nf; ++j) {
            const Word& f = F.words[j];
            for (size_t len = 1; len < f.size() && len <= n; ++len) {
                Word s(f.end() - len, f.end());
                by_word[s].push_back(static_cast<detail::PairCode>((j << 8) | len));
            }
        }
        for (auto& [w, codes] : by_word)
            suffix_by_len[w.size()].push_back({w, std::move(codes)});
    }

    detail::ClassTable row_classes, col_classes;
    std::vector<uint32_t> raw_row_of_word, raw_col_of_word;
    size_t count = 0;

    Word cur;
    cur.reserve(n);
    std::vector<int> state_stack{0};
    std::vector<detail::PairCode> csig;          // accumulated SF codes along the path
    std::vector<size_t> csig_added;              // per-depth count for rewind
    std::function<void()> rec = [&]() {
        if (cur.size() == n) {
            uint32_t c = col_classes.intern(csig);
            uint32_t r = row_classes.intern(state_sig[state_stack.back()]);
            if (visit) visit(cur, count);
            raw_row_of_word.push_back(r);
            raw_col_of_word.push_back(c);
            ++count;
            return;
        }
        for (Digit d = 1; d <= F.alphabet_max; ++d) {
            int ns = aut.step(state_stack.back(), d);
            if (aut.dead(ns)) continue;
            cur.push_back(d);
            state_stack.push_back(ns);
            size_t added = 0;
            for (const auto& s : suffix_by_len[cur.size()])
                if (std::equal(s.w.begin(), s.w.end(), cur.begin())) {
                    csig.insert(csig.end(), s.codes.begin(), s.codes.end());
                    added += s.codes.size();
                }
            csig_added.push_back(added);
            rec();
            csig.resize(csig.size() - csig_added.back());
            csig_added.pop_back();
            cur.pop_back();
            state_stack.pop_back();
        }
    };
    rec();
    if (out_count) *out_count = count;
    if (count == 0) throw std::runtime_error("empty subshift: no allowed words");

    const size_t nr = row_classes.sigs.size();
    const size_t nc = col_classes.sigs.size();

    // Raw class compatibility matrix.
    std::vector<uint8_t> raw(nr * nc);
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c)
            raw[r * nc + c] =
                detail::signatures_disjoint(row_classes.sigs[r], col_classes.sigs[c]) ? 1 : 0;

    // Dedupe identical columns, then identical rows, of the raw class matrix.
    auto dedupe = [](size_t outer, size_t inner, auto get) {
        std::map<std::vector<uint8_t>, uint32_t> seen;
        std::vector<uint32_t> remap(outer);
        uint32_t next = 0;
        for (size_t i = 0; i < outer; ++i) {
            std::vector<uint8_t> key(inner);
            for (size_t j = 0; j < inner; ++j) key[j] = get(i, j);
            auto it = seen.find(key);
            if (it == seen.end()) { seen.emplace(std::move(key), next); remap[i] = next++; }
            else remap[i] = it->second;
        }
        return std::pair{remap, static_cast<size_t>(next)};
    };
    auto [col_remap, K] = dedupe(nc, nr, [&](size_t c, size_t r) { return raw[r * nc + c]; });
    auto [row_remap, K_rows] = dedupe(nr, nc, [&](size_t r, size_t c) { return raw[r * nc + c]; });

    ReducedMarkov rm;
    rm.K = K;
    rm.K_rows = K_rows;
    rm.raw_prefix_classes = nr;
    rm.raw_suffix_classes = nc;
    rm.mhat.assign(K_rows * K, 0);
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c)
            rm.mhat[row_remap[r] * K + col_remap[c]] = raw[r * nc + c];
    rm.row_map.resize(count);
    rm.col_map.resize(count);
    rm.row_rep.assign(K_rows, UINT32_MAX);
    rm.col_rep.assign(K, UINT32_MAX);
    for (size_t i = 0; i < count; ++i) {
        uint32_t r = row_remap[raw_row_of_word[i]];
        uint32_t c = col_remap[raw_col_of_word[i]];
        rm.row_map[i] = r;
        rm.col_map[i] = c;
        if (rm.row_rep[r] == UINT32_MAX) rm.row_rep[r] = static_cast<uint32_t>(i);
        if (rm.col_rep[c] == UINT32_MAX) rm.col_rep[c] = static_cast<uint32_t>(i);
    }

    // Occurring (row class, column class) pairs; words with equal pairs are
    // interchangeable in the transition digraph.
    {
        std::set<std::pair<uint32_t, uint32_t>> pair_set;
        for (size_t i = 0; i < count; ++i) pair_set.insert({rm.row_map[i], rm.col_map[i]});
        rm.pairs.assign(pair_set.begin(), pair_set.end());
    }
    const size_t np = rm.pairs.size();

    // Essential core on the pair graph: drop pairs with no successor or no
    // predecessor among the surviving pairs, to a fixpoint. A pair (r,c) has
    // a successor iff mhat[r][c'] = 1 for some column class c' that still has
    // a live pair, and symmetrically for predecessors.
    rm.pair_live.assign(np, 1);
    {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<uint8_t> col_has_live(K, 0), row_has_live(K_rows, 0);
            for (size_t p = 0; p < np; ++p)
                if (rm.pair_live[p]) {
                    row_has_live[rm.pairs[p].first] = 1;
                    col_has_live[rm.pairs[p].second] = 1;
                }
            std::vector<uint8_t> row_ok(K_rows, 0), col_ok(K, 0);
            for (size_t r = 0; r < K_rows; ++r)
                for (size_t c = 0; c < K; ++c)
                    if (rm.mhat[r * K + c] && col_has_live[c]) { row_ok[r] = 1; break; }
            for (size_t c = 0; c < K; ++c)
                for (size_t r = 0; r < K_rows; ++r)
                    if (rm.mhat[r * K + c] && row_has_live[r]) { col_ok[c] = 1; break; }
            for (size_t p = 0; p < np; ++p)
                if (rm.pair_live[p] && (!row_ok[rm.pairs[p].first] || !col_ok[rm.pairs[p].second])) {
                    rm.pair_live[p] = 0;
                    changed = true;
                }
        }
    }
    {
        std::map<std::pair<uint32_t, uint32_t>, size_t> pair_index;
        for (size_t p = 0; p < np; ++p) pair_index[rm.pairs[p]] = p;
        rm.word_live.resize(count);
        rm.col_live.assign(K, 0);
        rm.row_live.assign(K_rows, 0);
        for (size_t i = 0; i < count; ++i) {
            size_t p = pair_index[{rm.row_map[i], rm.col_map[i]}];
            rm.word_live[i] = rm.pair_live[p];
            if (rm.pair_live[p]) {
                ++rm.live_count;
                rm.col_live[rm.col_map[i]] = 1;
                rm.row_live[rm.row_map[i]] = 1;
            }
        }
    }

    // Strong connectivity, full graph and core (warning-level diagnostics).
    // BFS at class granularity: once a column class is entered, all its pairs
    // become reachable at once.
    auto reach_all = [&](bool forward, bool live_only) {
        std::vector<std::vector<uint32_t>> by_col(K), by_row(K_rows);
        size_t total = 0, start = np;
        for (size_t p = 0; p < np; ++p) {
            if (live_only && !rm.pair_live[p]) continue;
            by_col[rm.pairs[p].second].push_back(static_cast<uint32_t>(p));
            by_row[rm.pairs[p].first].push_back(static_cast<uint32_t>(p));
            ++total;
            if (start == np) start = p;
        }
        if (total == 0) return false;
        std::vector<uint8_t> seen(np, 0), entered_col(K, 0), entered_row(K_rows, 0);
        std::vector<uint32_t> st{static_cast<uint32_t>(start)};
        seen[start] = 1;
        size_t cnt = 1;
        while (!st.empty()) {
            uint32_t v = st.back();
            st.pop_back();
            if (forward) {
                uint32_t r = rm.pairs[v].first;
                for (size_t c = 0; c < K; ++c) {
                    if (!rm.mhat[r * K + c] || entered_col[c]) continue;
                    entered_col[c] = 1;
                    for (uint32_t u : by_col[c])
                        if (!seen[u]) { seen[u] = 1; ++cnt; st.push_back(u); }
                }
            } else {
                uint32_t c = rm.pairs[v].second;
                for (size_t r = 0; r < K_rows; ++r) {
                    if (!rm.mhat[r * K + c] || entered_row[r]) continue;
                    entered_row[r] = 1;
                    for (uint32_t u : by_row[r])
                        if (!seen[u]) { seen[u] = 1; ++cnt; st.push_back(u); }
                }
            }
        }
        return cnt == total;
    };
    rm.irreducible = reach_all(true, false) && reach_all(false, false);
    rm.core_irreducible = reach_all(true, true) && reach_all(false, true);
    return rm;
}

// Total number of distinct proper suffixes of the forbidden words (the S in
// the class-count bound K <= S+1).
inline size_t distinct_suffix_count(const ForbiddenSet& F) {
    std::set<Word> s;
    for (const auto& f : F.words)
        for (size_t len = 1; len < f.size(); ++len)
            s.insert(Word(f.end() - len, f.end()));
    return s.size();
}

}  // namespace gcdim
