#pragma once

// Symbolic generic division algebras of degree N and mixed classes
// E^c ⊗ (arithmetic class).  The only index fact used about powers of the
// generic algebra is index(E^c) = N/(N, c); a mixed index is the product
// of that with the restricted arithmetic index.

#include <csalab/arith.hpp>
#include <csalab/brauer.hpp>
#include <csalab/field.hpp>

#include <optional>
#include <utility>

namespace csalab {

class generic_algebra {
public:
    explicit generic_algebra(bigint degree) : degree_(std::move(degree)) {
        if (degree_ < 1) throw precondition_error("generic algebra degree must be positive");
    }

    const bigint& degree() const { return degree_; }

    friend bool operator==(const generic_algebra& a, const generic_algebra& b) = default;

private:
    bigint degree_;
};

// index(E^b) for E generic of degree N.
inline bigint ud_power_index(const bigint& n, const bigint& b) {
    if (n < 1) throw precondition_error("ud_power_index needs N >= 1");
    bigint r = b % n;
    if (r < 0) r += n;
    return n / gcd(n, r);  // gcd(N, 0) = N gives 1 for split powers
}

// index(E^{1+a+b}): the generic factor left after both twists.
inline bigint n_ab(const bigint& n, const bigint& a, const bigint& b) {
    if (n < 1) throw precondition_error("n_ab needs N >= 1");
    if (a < 0 || b < 0) throw precondition_error("n_ab needs non-negative exponents");
    return n / gcd(n, 1 + a + b);
}

// E^c ⊗ arith.  A declared degree, when present, pins the arithmetic part
// as a division algebra of that degree over the target of mixed_index;
// composite intermediate classes leave it unset.
class mixed_class {
public:
    mixed_class(generic_algebra generic, const bigint& c, brauer_class arith,
                std::optional<bigint> declared_arith_degree = {})
        : generic_(std::move(generic)), arith_(std::move(arith)),
          declared_(std::move(declared_arith_degree)) {
        c_ = c % generic_.degree();
        if (c_ < 0) c_ += generic_.degree();
        if (declared_ && *declared_ < 1)
            throw precondition_error("declared degree must be positive");
    }

    // Purely arithmetic class: trivial generic part.
    static mixed_class pure(brauer_class arith, std::optional<bigint> declared_degree = {}) {
        return mixed_class(generic_algebra(1), 0, std::move(arith), std::move(declared_degree));
    }

    const generic_algebra& generic() const { return generic_; }
    const bigint& exponent() const { return c_; }
    const brauer_class& arith() const { return arith_; }
    const std::optional<bigint>& declared_arith_degree() const { return declared_; }

private:
    generic_algebra generic_;
    bigint c_;
    brauer_class arith_;
    std::optional<bigint> declared_;
};

// index(arith ⊗ target) · index(E^c).  The product form is only proven
// when the arithmetic factor is a division algebra over the target, so a
// declared degree must match the restricted index exactly.
inline bigint mixed_index(const mixed_class& m, const abelian_field& target) {
    const bigint s = index(restrict_to(m.arith(), target));
    if (m.declared_arith_degree() && *m.declared_arith_degree() != s)
        throw precondition_error(
            "arithmetic part is not a division algebra of the declared degree over the target");
    return s * ud_power_index(m.generic().degree(), m.exponent());
}

// Powers of a single generic algebra combine; distinct generic algebras
// never multiply (a trivial generic part is the identity).
inline mixed_class tensor(const mixed_class& x, const mixed_class& y) {
    const bool xp = x.generic().degree() == 1;
    const bool yp = y.generic().degree() == 1;
    if (!xp && !yp && !(x.generic() == y.generic()))
        throw precondition_error("product of distinct generic algebras");
    const generic_algebra& g = xp ? y.generic() : x.generic();
    return mixed_class(g, x.exponent() + y.exponent(), tensor(x.arith(), y.arith()));
}

} // namespace csalab
