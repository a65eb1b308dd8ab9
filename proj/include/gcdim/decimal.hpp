#pragma once

// Exact decimal-string handling. Thresholds and exponents enter the toolkit
// as decimal strings and are converted once to exact rationals; they are
// never round-tripped through binary floating point.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace gcdim {

inline mpq_class t_decimal_to_mpq(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty decimal string");
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = (s[i] == '-'); ++i; }
    std::string digits;
    long frac_digits = -1;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (frac_digits >= 0) throw std::invalid_argument("bad decimal: " + s);
            frac_digits = 0;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits.push_back(s[i]);
            if (frac_digits >= 0) ++frac_digits;
        } else if (s[i] == '/') {
            // exact rationals like "1/63" are accepted as-is
            mpq_class q(s);
            q.canonicalize();
            return q;
        } else {
            throw std::invalid_argument("bad decimal: " + s);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal: " + s);
    mpz_class num(digits);
    mpz_class den = 1;
    for (long k = 0; k < (frac_digits < 0 ? 0 : frac_digits); ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

}  // namespace gcdim
