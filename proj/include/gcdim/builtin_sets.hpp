#pragma once

// Built-in forbidden-word sets for the Markov-threshold Cantor sets studied
// by the toolkit. Each named set lists base strings; reverses are added by
// normalization. OMEGA has no built-in list: its words come from an external
// file supplied by the caller.

#include <stdexcept>
#include <string>
#include <vector>

#include "gcdim/subshift.hpp"
#include "gcdim/words.hpp"

namespace gcdim {

// The 14 base strings of the threshold-3.334369 search tree.
inline const std::vector<std::string>& b1_strings() {
    static const std::vector<std::string> v = {
        "21212",
        "21112121",
        "12111212",
        "211121222",
        "111112121",
        "111212111",
        "21112122112",
        "222111212211",
        "12211112121122",
        "112211121221111",
        "22111121211221",
        "21122111212211",
        "2111212211112",
        "22221111212112222",
    };
    return v;
}

// B2 = B1 plus the two refinements excluded at threshold 3.334369 from the
// deeper subdivision of vertices 16 and 17.
inline const std::vector<std::string>& b2_extra_strings() {
    static const std::vector<std::string> v = {
        "111122111212211122",
        "221221112122111111",
    };
    return v;
}

// Roots of the refinement trees near 3.334384 (pointed forms).
inline const char* kR1 = "222211112*12112221";
inline const char* kR2 = "1111221112*12211122";
inline const char* kR3 = "221221112*122111111";

// X = B1 plus ten continuations excluded at threshold 3.334384009.
inline const std::vector<std::string>& x_extra_strings() {
    static const std::vector<std::string> v = {
        // continuations of R1
        "12222111121211222112",
        "121222211112121122211",
        "2122221111212112221111",
        // continuations of R2
        "21111221112122111221",
        "1211112211121221112222",
        // continuations of R3
        "2212211121221111112",
        "21221221112122111111",
        "122122111212211111111",
        "111221221112122111111122",
        "22221221112122111111112",
    };
    return v;
}

// Y = B1 plus eleven continuations excluded at threshold 3.3343846357.
inline const std::vector<std::string>& y_extra_strings() {
    static const std::vector<std::string> v = {
        // continuations of R2
        "21111221112122111221",
        "21211112211121221112222",
        // continuations of R3
        "2212211121221111112",
        "21221221112122111111",
        "122122111212211111111",
        "111221221112122111111122",
        "22221221112122111111112",
        // continuations of R1
        "212222111121211222112",
        "1112222111121211222112",
        "12122221111212112221111",
        "21222211112121122211112",
    };
    return v;
}

inline std::vector<Word> words_from_strings(const std::vector<std::string>& ss) {
    std::vector<Word> w;
    w.reserve(ss.size());
    for (const auto& s : ss) w.push_back(word_from_string(s));
    return w;
}

struct NamedSet {
    std::string name;
    int alphabet_max;
    ForbiddenSet forbidden;
};

// name in {E2, B1, B2, X, Y}; OMEGA requires an external word list.
inline NamedSet builtin_set(const std::string& name) {
    auto build = [](const std::string& nm, int amax, std::vector<Word> words) {
        NamedSet s;
        s.name = nm;
        s.alphabet_max = amax;
        s.forbidden = make_forbidden_set(amax, std::move(words), /*include_reverses=*/true);
        return s;
    };
    if (name == "E2") return build("E2", 2, {});
    if (name == "B1") return build("B1", 2, words_from_strings(b1_strings()));
    if (name == "B2") {
        auto ws = words_from_strings(b1_strings());
        for (const auto& s : b2_extra_strings()) ws.push_back(word_from_string(s));
        return build("B2", 2, std::move(ws));
    }
    if (name == "X") {
        auto ws = words_from_strings(b1_strings());
        for (const auto& s : x_extra_strings()) ws.push_back(word_from_string(s));
        return build("X", 2, std::move(ws));
    }
    if (name == "Y") {
        auto ws = words_from_strings(b1_strings());
        for (const auto& s : y_extra_strings()) ws.push_back(word_from_string(s));
        return build("Y", 2, std::move(ws));
    }
    throw std::invalid_argument("unknown built-in set: " + name);
}

inline NamedSet omega_set_from_words(std::vector<Word> words) {
    NamedSet s;
    s.name = "OMEGA";
    s.alphabet_max = 3;
    s.forbidden = make_forbidden_set(3, std::move(words), /*include_reverses=*/true);
    return s;
}

}  // namespace gcdim
