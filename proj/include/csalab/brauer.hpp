#pragma once

// Brauer classes of abelian number fields via Hasse invariants.  A class
// stores one invariant per rational place, carried uniformly by every
// place of the field above it; that is exactly the shape of classes
// extended from Q, and it is closed under tensor, opposite, power and
// restriction.  Index equals exponent here: the lcm of invariant orders.

#include <csalab/arith.hpp>
#include <csalab/field.hpp>
#include <csalab/groupring.hpp>

#include <map>
#include <utility>
#include <vector>

namespace csalab {

class brauer_class {
public:
    explicit brauer_class(abelian_field base, std::map<place, rational_mod_one> inv = {})
        : base_(std::move(base)) {
        rational_mod_one sum;
        for (const auto& [v, x] : inv) {
            if (x.is_zero()) continue;
            if (v.is_real()) {
                if (!(x == rational_mod_one(1, 2)))
                    throw precondition_error("real-place invariant must be 0 or 1/2");
                if (!base_.totally_real())
                    throw precondition_error("nonzero real invariant over a field with complex places");
            }
            sum = sum + base_.place_count(v) * x;
            inv_.emplace(v, x);
        }
        if (!sum.is_zero())
            throw precondition_error("invariants violate the reciprocity sum");
    }

    const abelian_field& base() const { return base_; }

    // Nonzero invariants only, keyed by finite primes then the real place.
    const std::map<place, rational_mod_one>& invariants() const { return inv_; }

    rational_mod_one invariant_at(const place& v) const {
        auto it = inv_.find(v);
        return it == inv_.end() ? rational_mod_one() : it->second;
    }

    bool is_trivial() const { return inv_.empty(); }

    friend bool operator==(const brauer_class& a, const brauer_class& b) = default;

private:
    abelian_field base_;
    std::map<place, rational_mod_one> inv_;
};

// Schur index; equals the exponent (lcm of local invariant orders).
inline bigint index(const brauer_class& c) {
    bigint n = 1;
    for (const auto& [v, x] : c.invariants()) n = lcm(n, x.order());
    return n;
}

inline brauer_class tensor(const brauer_class& a, const brauer_class& b) {
    if (!(a.base() == b.base()))
        throw precondition_error("tensor of classes over different base fields");
    auto inv = a.invariants();
    for (const auto& [v, x] : b.invariants()) {
        auto [it, fresh] = inv.emplace(v, x);
        if (!fresh) it->second = it->second + x;
    }
    return brauer_class(a.base(), std::move(inv));
}

inline brauer_class power(const brauer_class& c, const bigint& k) {
    std::map<place, rational_mod_one> inv;
    for (const auto& [v, x] : c.invariants()) inv.emplace(v, k * x);
    return brauer_class(c.base(), std::move(inv));
}

inline brauer_class opposite(const brauer_class& c) { return power(c, -1); }

// Scalar extension along K ⊆ K': each invariant is scaled by the relative
// local degree.
inline brauer_class restrict_to(const brauer_class& c, const abelian_field& bigger) {
    if (!bigger.contains(c.base()))
        throw precondition_error("restriction target does not contain the base field");
    std::map<place, rational_mod_one> inv;
    for (const auto& [v, x] : c.invariants()) {
        const bigint below = c.base().local_degree(v);
        const bigint above = bigger.local_degree(v);
        if (above % below != 0)
            throw consistency_error("local degree not multiplicative in a tower");
        inv.emplace(v, (above / below) * x);
    }
    return brauer_class(bigger, std::move(inv));
}

inline bool splits(const brauer_class& c, const abelian_field& k) {
    return index(restrict_to(c, k)) == 1;
}

// Δ(L/Q, a): cyclic L/Q with a chosen generator σ of its Galois group and
// the relation z^n = a.
struct cyclic_data {
    abelian_field field;
    bigint generator;  // unit whose class generates Gal(L/Q)
    rational a;
};

// Invariants: 0 at unramified primes away from a; j·v_q(a)/n at
// unramified q with Frob_q = σ^j; 1/2 at the real place iff L is
// imaginary and a < 0.  Ramified primes (those dividing the conductor)
// are never computed locally: when exactly one is undetermined it is
// forced by the reciprocity sum, otherwise the construction refuses.
inline brauer_class cyclic_algebra(const cyclic_data& d) {
    if (d.a.is_zero()) throw precondition_error("cyclic algebra with a = 0");
    const galois_context ctx = d.field.galois();
    const std::size_t n = ctx.group()->order();
    const std::size_t sigma = ctx.element_of(d.generator);
    if (element_order(*ctx.group(), sigma) != n)
        throw precondition_error("generator class does not generate the Galois group");
    if (d.a.num() == 1 && d.a.den() == 1) return brauer_class(abelian_field{});

    const bigint m = d.field.conductor();
    std::map<place, rational_mod_one> inv;
    rational_mod_one sum;
    auto support = prime_factors(d.a.num());
    for (const bigint& p : prime_factors(d.a.den())) support.push_back(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (const bigint& p : support) {
        if (m % p == 0) continue;  // ramified, resolved below
        const bigint v = exact_valuation(p, d.a.num()) - exact_valuation(p, d.a.den());
        if (v == 0) continue;
        const std::size_t target = ctx.frobenius(p);
        std::size_t power_of_sigma = 0, j = 0;
        while (power_of_sigma != target) {
            power_of_sigma = ctx.group()->mul(power_of_sigma, sigma);
            ++j;
        }
        rational_mod_one x(bigint(j) * v, bigint(n));
        if (x.is_zero()) continue;
        inv.emplace(place(p), x);
        sum = sum + x;
    }
    if (!d.field.totally_real() && d.a.negative()) {
        inv.emplace(place::real(), rational_mod_one(1, 2));
        sum = sum + rational_mod_one(1, 2);
    }
    std::vector<bigint> undetermined = prime_factors(m);
    if (undetermined.size() > 1)
        throw precondition_error("more than one ramified prime; invariants are underdetermined");
    if (undetermined.empty()) {
        if (!sum.is_zero()) throw consistency_error("unramified invariants do not sum to zero");
    } else {
        const rational_mod_one forced = -sum;
        if (!forced.is_zero()) inv.emplace(place(undetermined[0]), forced);
    }
    return brauer_class(abelian_field{}, std::move(inv));
}

} // namespace csalab
