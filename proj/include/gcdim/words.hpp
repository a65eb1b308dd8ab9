#pragma once

// Digit strings over a small alphabet {1,...,amax}, pointed words (a word
// with a marked zero position, written "212*12"), and eventually periodic
// tail specifications.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcdim {

using Digit = uint8_t;
using Word = std::vector<Digit>;

inline Word word_from_string(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c < '1' || c > '9') throw std::invalid_argument("bad digit in word: " + s);
        w.push_back(static_cast<Digit>(c - '0'));
    }
    return w;
}

inline std::string word_to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Digit d : w) s.push_back(static_cast<char>('0' + d));
    return s;
}

inline Word reversed(const Word& w) {
    Word r(w.rbegin(), w.rend());
    return r;
}

inline bool contains_subword(const Word& w, const Word& sub) {
    if (sub.empty() || sub.size() > w.size()) return false;
    return std::search(w.begin(), w.end(), sub.begin(), sub.end()) != w.end();
}

inline Digit max_digit(const Word& w) {
    Digit m = 0;
    for (Digit d : w) m = std::max(m, d);
    return m;
}

// A finite window of a bi-infinite sequence; zero_index marks the digit a0.
struct PointedWord {
    Word word;
    size_t zero_index = 0;

    PointedWord() = default;
    PointedWord(Word w, size_t z) : word(std::move(w)), zero_index(z) {
        if (word.empty() || zero_index >= word.size())
            throw std::invalid_argument("pointed word: zero index out of range");
    }

    // Parse "212*12": the digit preceding '*' is a0.
    static PointedWord parse(const std::string& s) {
        auto star = s.find('*');
        if (star == std::string::npos || star == 0)
            throw std::invalid_argument("pointed word needs a digit before '*': " + s);
        std::string digits = s.substr(0, star) + s.substr(star + 1);
        return PointedWord(word_from_string(digits), star - 1);
    }

    std::string str() const {
        std::string s = word_to_string(word);
        s.insert(zero_index + 1, 1, '*');
        return s;
    }

    size_t digits_before() const { return zero_index; }                    // k
    size_t digits_after() const { return word.size() - zero_index - 1; }   // j
    Digit a0() const { return word[zero_index]; }

    // Digits a1 a2 ... (to the right of the mark).
    Word forward() const { return Word(word.begin() + zero_index + 1, word.end()); }
    // Digits a-1 a-2 ... (to the left of the mark, read outward).
    Word backward() const {
        Word b(word.begin(), word.begin() + zero_index);
        std::reverse(b.begin(), b.end());
        return b;
    }

    // Reversal of the underlying string keeping the marked digit marked.
    PointedWord reversed_keep_zero() const {
        Word r = reversed(word);
        return PointedWord(std::move(r), word.size() - 1 - zero_index);
    }

    PointedWord append(Digit d) const {
        Word w = word;
        w.push_back(d);
        return PointedWord(std::move(w), zero_index);
    }
    PointedWord prepend(Digit d) const {
        Word w;
        w.reserve(word.size() + 1);
        w.push_back(d);
        w.insert(w.end(), word.begin(), word.end());
        return PointedWord(std::move(w), zero_index + 1);
    }

    bool operator==(const PointedWord& o) const {
        return zero_index == o.zero_index && word == o.word;
    }
};

// Eventually periodic continued-fraction tail [0; preperiod, period, period, ...].
struct TailSpec {
    Word preperiod;
    Word period;

    TailSpec() = default;
    TailSpec(Word pre, Word per) : preperiod(std::move(pre)), period(std::move(per)) {
        if (period.empty()) throw std::invalid_argument("tail period must be nonempty");
    }
    static TailSpec pure(Word per) { return TailSpec(Word{}, std::move(per)); }

    std::string str() const {
        std::string s = "[0;";
        if (!preperiod.empty()) s += word_to_string(preperiod) + ",";
        s += "(" + word_to_string(period) + ")~]";
        return s;
    }
};

// The two extremal tails over the alphabet {1,2}: alternating 1,2,... and 2,1,...
inline TailSpec tail_12() { return TailSpec::pure(Word{1, 2}); }
inline TailSpec tail_21() { return TailSpec::pure(Word{2, 1}); }

}  // namespace gcdim
