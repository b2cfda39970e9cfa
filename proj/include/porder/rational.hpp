#pragma once

// Exact arithmetic primitives: arbitrary-precision integers/rationals,
// p-adic valuations, and the error taxonomy used across the library.

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace porder {

using Int = mpz_class;
using Rat = mpq_class;

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad structure constants, non-prime p, broken group table,
// unparseable file contents.  Raised while *configuring* objects.
struct ValidationError : Error {
    using Error::Error;
};

// A documented operation precondition does not hold (e.g. conductor of a
// non-overorder, dual w.r.t. a degenerate form).
struct PreconditionError : Error {
    using Error::Error;
};

// Rank-deficient input where a full-rank lattice is required.
struct DegenerateLatticeError : Error {
    using Error::Error;
};

// Inverse/determinant of a singular matrix.
struct SingularMatrixError : Error {
    using Error::Error;
};

// An explicit resource or iteration guard tripped (enumeration too large,
// chain failed to terminate within the step budget).
struct GuardError : Error {
    using Error::Error;
};

// A postcondition that should hold by theory failed: indicates a bug, never
// bad user input.
struct InternalError : Error {
    using Error::Error;
};

// Valuation of zero.
inline constexpr long val_infinity = std::numeric_limits<long>::max();

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// A validated prime.  Constructing one from a composite throws, so every
// downstream routine may assume primality.
struct Prime {
    long v;

    explicit Prime(long p) : v(p) {
        if (!is_prime_long(p))
            throw ValidationError("p = " + std::to_string(p) + " is not prime");
    }

    explicit operator long() const { return v; }
    friend bool operator==(Prime a, Prime b) { return a.v == b.v; }
    friend bool operator!=(Prime a, Prime b) { return a.v != b.v; }
};

// p^e for e >= 0.
inline Int int_pow(long p, long e) {
    if (e < 0) throw InternalError("int_pow: negative exponent");
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    return r;
}

// v_p(x) for an integer; v_p(0) = val_infinity.
inline long pval(const Int& x, Prime p) {
    if (x == 0) return val_infinity;
    Int q;
    Int pp(p.v);
    return static_cast<long>(
        mpz_remove(q.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

// v_p(x) for a rational; v_p(0) = val_infinity.
inline long pval(const Rat& x, Prime p) {
    if (x == 0) return val_infinity;
    return pval(x.get_num(), p) - pval(x.get_den(), p);
}

// x is in Z_(p) (denominator prime to p).
inline bool p_integral(const Rat& x, Prime p) {
    return x == 0 || pval(x, p) >= 0;
}

// x / p^v_p(x): the prime-to-p part (x != 0).
inline Int strip_p(const Int& x, Prime p) {
    if (x == 0) throw InternalError("strip_p: zero");
    Int q;
    Int pp(p.v);
    mpz_remove(q.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
    return q;
}

// Parse "a" or "a/b" with optional sign; rejects anything else.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw ValidationError("empty rational literal");
    auto digits = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!digits(num) || !digits(den))
        throw ValidationError("bad rational literal '" + s + "'");
    Rat r;
    if (r.set_str(num + "/" + den, 10) != 0 || r.get_den() == 0)
        throw ValidationError("bad rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

// Canonical "a" / "a/b" form.
inline std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace porder
