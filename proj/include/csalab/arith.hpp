#pragma once

// Exact integer and Q/Z arithmetic: arbitrary-precision integers, gcd/lcm,
// p-adic valuations, primality, and reduced fractions mod 1 (the value
// group of Hasse invariants).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csalab {

using bigint = boost::multiprecision::cpp_int;

// Violated preconditions / malformed inputs.  The CLI maps this to exit 2.
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& msg)
        : std::runtime_error("precondition: " + msg) {}
};

// Internal mathematical invariants that can never fail on valid inputs;
// a throw here means an implementation bug.  The CLI maps this to exit 3.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& msg)
        : std::runtime_error("consistency: " + msg) {}
};

inline bigint gcd(const bigint& a, const bigint& b) {
    return boost::multiprecision::gcd(a, b);
}

inline bigint lcm(const bigint& a, const bigint& b) {
    return boost::multiprecision::lcm(a, b);
}

// gcd(0,0) is 0 by convention; callers that divide by a gcd use this form.
inline bigint positive_gcd(const bigint& a, const bigint& b) {
    bigint g = gcd(a, b);
    if (g == 0)
        throw precondition_error("gcd(0,0) where a positive gcd is required");
    return g;
}

namespace detail {

inline bool miller_rabin_witness(const bigint& n, const bigint& d, unsigned r,
                                 const bigint& a) {
    bigint x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

} // namespace detail

// Deterministic below 2^64 (the 12-base Miller-Rabin set is exact there);
// above that threshold the same test runs with the first 25 prime bases,
// a fixed-round probabilistic check.
inline bool is_prime(const bigint& n) {
    static const unsigned small_bases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                           29, 31, 37, 41, 43, 47, 53, 59, 61,
                                           67, 71, 73, 79, 83, 89, 97};
    if (n < 2) return false;
    for (unsigned p : small_bases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    bigint d = n - 1;
    unsigned r = 0;
    while (d % 2 == 0) { d /= 2; ++r; }
    const bool deterministic = n < (bigint(1) << 64);
    const std::size_t base_count = deterministic ? 12 : 25;
    for (std::size_t i = 0; i < base_count; ++i)
        if (detail::miller_rabin_witness(n, d, r, small_bases[i])) return false;
    return true;
}

// Exact exponent e with p^e | n, p^{e+1} ∤ n.
inline bigint exact_valuation(const bigint& p, const bigint& n) {
    if (!is_prime(p)) throw precondition_error("valuation base " + p.str() + " is not prime");
    if (n == 0) throw precondition_error("valuation of 0 is undefined");
    bigint m = boost::multiprecision::abs(n);
    bigint e = 0;
    while (m % p == 0) { m /= p; ++e; }
    return e;
}

// Distinct prime factors in ascending order, by trial division up to 10^6
// and a primality check on the cofactor.  Numbers with two large factors
// are outside the intended desk scale and are refused.
inline std::vector<bigint> prime_factors(bigint v) {
    std::vector<bigint> primes;
    v = boost::multiprecision::abs(v);
    for (bigint p = 2; p * p <= v && p < 1000000; ++p)
        if (v % p == 0) {
            primes.push_back(p);
            while (v % p == 0) v /= p;
        }
    if (v > 1) {
        if (!is_prime(v)) throw precondition_error("cannot factor " + v.str());
        primes.push_back(v);
    }
    return primes;
}

// Given a | b: does a/(a,d) divide b/(b,d)?  (Always true; kept as a
// checked operation so the property is testable on its own.)
inline bool reduced_divides(const bigint& a, const bigint& b, const bigint& d) {
    if (a <= 0 || b <= 0 || d <= 0) throw precondition_error("reduced_divides needs positive arguments");
    if (b % a != 0) throw precondition_error("reduced_divides: " + a.str() + " does not divide " + b.str());
    return (b / gcd(b, d)) % (a / gcd(a, d)) == 0;
}

// Exact rational in lowest terms with positive denominator.
class rational {
public:
    rational() : num_(0), den_(1) {}

    rational(bigint num, bigint den) {
        if (den == 0) throw precondition_error("zero denominator");
        if (den < 0) { den = -den; num = -num; }
        bigint g = gcd(boost::multiprecision::abs(num), den);
        if (g == 0) g = 1;
        num_ = num / g;
        den_ = den / g;
    }

    explicit rational(bigint num) : num_(std::move(num)), den_(1) {}

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool negative() const { return num_ < 0; }

    friend bool operator==(const rational& a, const rational& b) = default;

    std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

    static rational parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return rational(bigint(text));
            return rational(bigint(text.substr(0, slash)), bigint(text.substr(slash + 1)));
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const precondition_error*>(&e)) throw;
            throw precondition_error("malformed rational '" + text + "'");
        }
    }

private:
    bigint num_;
    bigint den_;
};

// An element of Q/Z in lowest terms: 0 <= num < den, gcd(num, den) = 1.
// This is the value group of Hasse invariants; its order function realizes
// the local Schur index.
class rational_mod_one {
public:
    rational_mod_one() : num_(0), den_(1) {}

    rational_mod_one(bigint num, bigint den) {
        if (den == 0) throw precondition_error("zero denominator");
        if (den < 0) { den = -den; num = -num; }
        num %= den;
        if (num < 0) num += den;
        bigint g = gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    const bigint& num() const { return num_; }
    const bigint& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    // Smallest k >= 1 with k*x integral: the reduced denominator.
    const bigint& order() const { return den_; }

    friend rational_mod_one operator+(const rational_mod_one& x, const rational_mod_one& y) {
        return rational_mod_one(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    rational_mod_one operator-() const { return rational_mod_one(-num_, den_); }
    friend rational_mod_one operator-(const rational_mod_one& x, const rational_mod_one& y) {
        return x + (-y);
    }
    // Integer scaling k*x in Q/Z.
    friend rational_mod_one operator*(const bigint& k, const rational_mod_one& x) {
        return rational_mod_one(k * x.num_, x.den_);
    }

    friend bool operator==(const rational_mod_one& x, const rational_mod_one& y) = default;

    std::string str() const { return num_.str() + "/" + den_.str(); }

    // Accepts "n", "n/d", optional leading '-'; value is reduced mod 1.
    static rational_mod_one parse(const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return rational_mod_one(bigint(text), 1);
            return rational_mod_one(bigint(text.substr(0, slash)),
                                    bigint(text.substr(slash + 1)));
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const precondition_error*>(&e)) throw;
            throw precondition_error("malformed rational '" + text + "'");
        }
    }

private:
    bigint num_;
    bigint den_;
};

} // namespace csalab
