#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace sosk49 {

// All ring arithmetic runs on arbitrary-precision integers; rationals appear
// only in the lattice machinery (Gram matrices, LDL pivots).
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from(long v) { return Int(v); }

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// floor(a / b), b > 0.
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// ceil(a / b), b > 0.
inline Int cdiv(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a) {
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// 2-adic valuation of a nonzero integer (count of trailing zero bits).
inline unsigned long twoadic_valuation(const Int& x) {
    // mpz_scan1 sees negative values in two's complement, which has the same
    // trailing-zero count as |x|.
    return mpz_scan1(x.get_mpz_t(), 0);
}

inline bool is_odd(const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }
inline bool is_even(const Int& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

inline bool lex_less(const std::array<Int, 3>& x, const std::array<Int, 3>& y) {
    for (int i = 0; i < 3; ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace sosk49
