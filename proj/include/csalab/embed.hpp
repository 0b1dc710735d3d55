#pragma once

// Embedding decision for division algebras over abelian number fields, and
// the two-algebras-with-no-common-host construction built from layers of
// real cyclotomic subfields.

#include <csalab/generic.hpp>

#include <utility>
#include <vector>

namespace csalab {

// Can D (a division algebra class over k) sit inside an algebra of class e
// and degree mixed_index(e, f) over the smaller field f?
struct embed_instance {
    mixed_class e;
    abelian_field f;
    brauer_class d;
    abelian_field k;
};

struct embed_report {
    bool embeddable = false;
    bigint ambient_degree;   // degree of e over f
    bigint sub_degree;       // degree of d over k
    bigint relative_degree;  // [k : f]
    bigint n;                // ambient_degree / (sub_degree · relative_degree)
    bigint achieved;         // index of (e ⊗ k) ⊗ opposite(d)
};

// Criterion: d embeds iff the index of (e ⊗_f k) ⊗_k opposite(d) divides n.
// A dividing index must equal n exactly; anything smaller is a consistency
// failure, not a stronger embedding.
inline embed_report embed_check(const embed_instance& inst) {
    if (inst.e.arith().base() != inst.f)
        throw precondition_error("ambient class does not live over the declared base field");
    if (inst.d.base() != inst.k)
        throw precondition_error("candidate subalgebra does not live over its declared field");
    if (!inst.k.contains(inst.f))
        throw precondition_error("subalgebra field does not contain the base field");

    embed_report rep;
    rep.ambient_degree = mixed_index(inst.e, inst.f);
    rep.sub_degree = index(inst.d);
    rep.relative_degree = inst.k.degree() / inst.f.degree();
    const bigint ab = rep.sub_degree * rep.relative_degree;
    if (rep.ambient_degree % ab != 0)
        throw precondition_error("ambient degree " + rep.ambient_degree.str() +
                                 " is not a multiple of " + ab.str());
    rep.n = rep.ambient_degree / ab;

    mixed_class shifted(inst.e.generic(), inst.e.exponent(),
                        tensor(restrict_to(inst.e.arith(), inst.k), opposite(inst.d)));
    rep.achieved = mixed_index(shifted, inst.k);
    rep.embeddable = rep.n % rep.achieved == 0;
    if (rep.embeddable && rep.achieved != rep.n)
        throw consistency_error("achieved index " + rep.achieved.str() +
                                " divides n = " + rep.n.str() + " but is not equal to it");
    return rep;
}

// Totally real layer of p-power conductor: the fixed field of the unique
// subgroup of order p-1 in (Z/p^{n+1})^×, of degree p^n over Q.
inline abelian_field real_cyclotomic_layer(const bigint& p, std::size_t n) {
    if (!is_prime(p) || p == 2) throw precondition_error("layer tower needs an odd prime");
    if (n == 0) return abelian_field{};
    bigint m = 1;
    for (std::size_t i = 0; i <= n; ++i) m *= p;
    std::vector<bigint> fixing;
    for (bigint u = 1; u < m; ++u)
        if (u % p != 0 && boost::multiprecision::powm(u, p - 1, m) == 1) fixing.push_back(u);
    return abelian_field(m, fixing);
}

struct counterexample_report {
    bigint p1, p2;
    std::size_t level = 0;
    brauer_class d1{abelian_field{}};
    brauer_class d2{abelian_field{}};
    abelian_field splitting_layer;    // L, the degree-p2 layer; a maximal
                                      // subfield of any degree-p2 host of d2
    bool d2_splits_over_layer = false;
    std::vector<bigint> d1_indices;   // over layers 0..level
    std::vector<bigint> d2_indices;
};

// Two division algebras that cannot sit inside one division algebra: d1 of
// degree p1 stays division over every layer (layer degrees are powers of
// p2), while d2 of degree p2 dies over the first layer already.  A common
// host would contain both the layer and d2's image, a contradiction.
inline counterexample_report counterexample_run(const bigint& p1, const bigint& p2,
                                                std::size_t level) {
    if (!is_prime(p1) || !is_prime(p2)) throw precondition_error("p1 and p2 must be prime");
    if (p1 == p2) throw precondition_error("p1 and p2 must differ");
    if (p2 == 2) throw precondition_error("p2 = 2 layer tower not supported");

    counterexample_report rep;
    rep.p1 = p1;
    rep.p2 = p2;
    rep.level = level;
    rep.splitting_layer = real_cyclotomic_layer(p2, 1);

    rep.d1 = p1 == 2 ? brauer_class(abelian_field{}, {{place(2), rational_mod_one(1, 2)},
                                                      {place::real(), rational_mod_one(1, 2)}})
                     : brauer_class(abelian_field{}, {{place(2), rational_mod_one(1, p1)},
                                                      {place(3), rational_mod_one(p1 - 1, p1)}});

    // Split by the layer: invariants at the two smallest primes whose
    // Frobenius generates the layer's (prime-order) Galois group.
    const galois_context ctx = rep.splitting_layer.galois();
    std::vector<bigint> anchors;
    for (bigint q = 2; anchors.size() < 2; ++q) {
        if (!is_prime(q) || q == p2) continue;
        if (ctx.frobenius(q) != 0) anchors.push_back(q);
    }
    rep.d2 = brauer_class(abelian_field{}, {{place(anchors[0]), rational_mod_one(1, p2)},
                                            {place(anchors[1]), rational_mod_one(p2 - 1, p2)}});

    rep.d2_splits_over_layer = splits(rep.d2, rep.splitting_layer);
    if (!rep.d2_splits_over_layer)
        throw consistency_error("constructed class is not split by its layer");

    for (std::size_t n = 0; n <= level; ++n) {
        const abelian_field layer = real_cyclotomic_layer(p2, n);
        rep.d1_indices.push_back(index(restrict_to(rep.d1, layer)));
        rep.d2_indices.push_back(index(restrict_to(rep.d2, layer)));
        if (rep.d1_indices.back() != p1)
            throw consistency_error("first class lost its index over layer " +
                                    std::to_string(n));
        const bigint want = n == 0 ? p2 : bigint(1);
        if (rep.d2_indices.back() != want)
            throw consistency_error("second class has unexpected index over layer " +
                                    std::to_string(n));
    }
    return rep;
}

} // namespace csalab
