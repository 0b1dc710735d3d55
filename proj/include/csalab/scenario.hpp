#pragma once

// Two division algebra classes pulled into one generic host of degree N:
// the transfer scenario evaluates the index expression over pairs of group
// ring elements, checks every term is divisible by N, and certifies the
// divisibility prime by prime with an exact valuation ledger.

#include <csalab/embed.hpp>
#include <csalab/reduction.hpp>

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

namespace csalab {

struct scenario_side {
    brauer_class cls;     // extended from Q
    abelian_field field;  // K, the class's own field of definition
    bigint d;             // index of cls over K
    bigint e;             // [K : Q]
    bigint m;             // d·e
    bigint n;             // N/m, the coefficient modulus target
    bigint r;             // N·d, the coefficient modulus
    galois_context bridge;
    transfer_setup setup;
};

// Hypotheses: both classes extended from Q (nothing is moved by either
// Galois group), coprime conductors (the two bridge fields are linearly
// disjoint), and N a multiple of lcm(m₁², m₂²).
class transfer_scenario {
public:
    transfer_scenario(const brauer_class& d1, const abelian_field& k1,
                      const brauer_class& d2, const abelian_field& k2, bigint total)
        : one_(make_side(d1, k1, total)), two_(make_side(d2, k2, total)),
          total_(std::move(total)) {
        if (gcd(k1.conductor(), k2.conductor()) != 1)
            throw precondition_error("scenario fields must have coprime conductors");
        const bigint step = lcm(one_.m * one_.m, two_.m * two_.m);
        if (total_ % step != 0)
            throw precondition_error("N = " + total_.str() + " is not a multiple of " +
                                     step.str());
    }

    const scenario_side& first() const { return one_; }
    const scenario_side& second() const { return two_; }
    const bigint& total() const { return total_; }

private:
    static scenario_side make_side(const brauer_class& cls, const abelian_field& field,
                                   const bigint& total) {
        if (total < 1) throw precondition_error("N must be positive");
        if (!cls.base().is_rationals())
            throw precondition_error("scenario classes must be extended from the rationals");
        const bigint d = index(restrict_to(cls, field));
        const bigint e = field.degree();
        const bigint m = d * e;
        galois_context bridge = field.galois();
        auto space = std::make_shared<coset_space>(subgroup::trivial(bridge.group()));
        transfer_setup setup(std::move(space), total * d, total / m, bridge);
        return {cls, field, d, e, m, total / m, total * d, std::move(bridge),
                std::move(setup)};
    }

    scenario_side one_, two_;
    bigint total_;
};

// Index of (D₁^a ⊗ D₂^b) over K(α,β) times the leftover generic factor;
// the enumeration engine supplies [K(α):F][K(β):F]·|α|·|β|.  The index
// factor is memoized on (a mod index₁, b mod index₂, both stabilizers).
inline double_oracle scenario_oracle(const transfer_scenario& sc) {
    using memo_key = std::tuple<bigint, bigint, std::vector<std::size_t>,
                                std::vector<std::size_t>>;
    auto cache = std::make_shared<std::map<memo_key, bigint>>();
    const scenario_side& x = sc.first();
    const scenario_side& y = sc.second();
    const bigint n_total = sc.total();
    const bigint p1 = index(x.cls), p2 = index(y.cls);
    return [cache, x, y, n_total, p1, p2](const group_ring_element& alpha,
                                          const group_ring_element& beta) -> bigint {
        const bigint a = coefficient_sum(alpha);
        const bigint b = coefficient_sum(beta);
        const subgroup sa = stabilizer(alpha), sb = stabilizer(beta);
        memo_key key{a % p1, b % p2, sa.members(), sb.members()};
        auto it = cache->find(key);
        bigint s;
        if (it != cache->end()) {
            s = it->second;
        } else {
            const abelian_field joint =
                compositum(x.bridge.fixed_field(sa), y.bridge.fixed_field(sb));
            s = index(restrict_to(tensor(power(x.cls, a), power(y.cls, b)), joint));
            cache->emplace(std::move(key), s);
        }
        return s * n_ab(n_total, a, b);
    };
}

inline bigint scenario_term(const transfer_scenario& sc, const group_ring_element& alpha,
                            const group_ring_element& beta) {
    return term_value(sc.first().setup, sc.second().setup, alpha, beta, scenario_oracle(sc));
}

enum class certificate_case { unit_sum, two_coprime_summands, single_summand };

// Exact p-adic ledger behind "N divides the term".  claimed is the proven
// lower bound for v_p(term); which ledger entries are meaningful depends
// on the case tag.
struct valuation_certificate {
    bigint p;
    certificate_case tag = certificate_case::unit_sum;
    bigint a, b;             // coefficient sums of the recorded pair
    bigint s;                // v_p(N)
    bigint t1, t2;           // v_p(n₁), v_p(n₂)
    bigint term_valuation;   // v_p of the full term
    bigint claimed;          // certified bound: s ≤ claimed ≤ term_valuation
    bool swapped = false;    // single-summand ledger ran with the sides exchanged
    bigint s1, s2, s3;       // v_p of n, d, e on the normalized side
    bigint u1, u2, u3, u4;   // index and degree valuations over K(α,β)
};

namespace detail {

inline void certify_check(bool ok, const char* what) {
    if (!ok) throw consistency_error(std::string("certificate ledger: ") + what);
}

} // namespace detail

// Classify why p^{v_p(N)} divides the term at (α, β) and verify every
// inequality of the classification on exact valuations.
inline valuation_certificate certify(const transfer_scenario& sc,
                                     const group_ring_element& alpha,
                                     const group_ring_element& beta, const bigint& p) {
    const bigint n_total = sc.total();
    if (exact_valuation(p, n_total) == 0)
        throw precondition_error(p.str() + " does not divide N = " + n_total.str());

    valuation_certificate cert;
    cert.p = p;
    cert.a = coefficient_sum(alpha);
    cert.b = coefficient_sum(beta);
    cert.s = exact_valuation(p, n_total);
    cert.t1 = exact_valuation(p, sc.first().n);
    cert.t2 = exact_valuation(p, sc.second().n);
    cert.term_valuation = exact_valuation(p, scenario_term(sc, alpha, beta));
    detail::certify_check(2 * cert.t1 >= cert.s && 2 * cert.t2 >= cert.s &&
                              cert.t1 + cert.t2 >= cert.s,
                          "coefficient moduli valuations below the scenario floor");

    if ((1 + cert.a + cert.b) % p != 0) {
        cert.tag = certificate_case::unit_sum;
        cert.claimed = cert.s;
        detail::certify_check(
            exact_valuation(p, n_ab(n_total, cert.a, cert.b)) == cert.s,
            "leftover generic factor misses the full power of p");
        detail::certify_check(cert.term_valuation >= cert.claimed,
                              "term valuation below the unit-sum bound");
        return cert;
    }

    std::vector<std::size_t> coprime1, coprime2;
    for (std::size_t c = 0; c < alpha.coeffs().size(); ++c)
        if (alpha.coeffs()[c] % p != 0) coprime1.push_back(c);
    for (std::size_t c = 0; c < beta.coeffs().size(); ++c)
        if (beta.coeffs()[c] % p != 0) coprime2.push_back(c);
    detail::certify_check(!coprime1.empty() || !coprime2.empty(),
                          "p divides 1+a+b yet every summand");

    if (coprime1.size() + coprime2.size() >= 2) {
        cert.tag = certificate_case::two_coprime_summands;
        cert.claimed = bigint(coprime1.size()) * cert.t1 + bigint(coprime2.size()) * cert.t2;
        detail::certify_check(cert.claimed >= cert.s, "two coprime summands bound below s");
        const bigint weights = weight(alpha, sc.first().n) * weight(beta, sc.second().n);
        detail::certify_check(exact_valuation(p, weights) >= cert.claimed,
                              "weight valuation below the coprime-summand count");
        detail::certify_check(cert.term_valuation >= cert.claimed,
                              "term valuation below the weight bound");
        return cert;
    }

    cert.tag = certificate_case::single_summand;
    cert.swapped = coprime1.empty();
    const scenario_side& x = cert.swapped ? sc.second() : sc.first();
    const scenario_side& y = cert.swapped ? sc.first() : sc.second();
    const group_ring_element& ax = cert.swapped ? beta : alpha;
    const group_ring_element& by = cert.swapped ? alpha : beta;
    const std::size_t spot = cert.swapped ? coprime2.front() : coprime1.front();

    // Move the coprime coefficient to the trivial coset; the stabilizer
    // must then sit inside the fixed subgroup, so K(α) contains K.
    const std::size_t g = ax.space().representative(spot);
    const group_ring_element moved = translate(ax.space().group().inv(g), ax);
    const subgroup stab = stabilizer(moved);
    for (std::size_t member : stab.members())
        detail::certify_check(ax.space().sub().contains(member),
                              "normalized stabilizer escapes the fixed subgroup");
    const abelian_field k_alpha = x.bridge.fixed_field(stab);
    detail::certify_check(k_alpha.contains(x.field), "K(α) does not contain K");

    const abelian_field f1 = sc.first().bridge.fixed_field(stabilizer(alpha));
    const abelian_field f2 = sc.second().bridge.fixed_field(stabilizer(beta));
    const abelian_field joint = compositum(f1, f2);
    detail::certify_check(joint.degree() == f1.degree() * f2.degree(),
                          "bridge fields are not linearly disjoint");

    const bigint unit_coeff = moved.coeffs().front();
    std::vector<bigint> rest = moved.coeffs();
    rest.front() = 0;
    const group_ring_element shaved(ax.space_handle(), ax.modulus(), std::move(rest));

    cert.s1 = exact_valuation(p, x.n);
    cert.s2 = exact_valuation(p, x.d);
    cert.s3 = exact_valuation(p, x.e);
    detail::certify_check(cert.s1 + cert.s2 + cert.s3 == cert.s,
                          "N valuation does not split across n, d, e");

    const bigint base_index = index(restrict_to(x.cls, joint));
    cert.u1 = exact_valuation(p, base_index);
    cert.u2 = exact_valuation(
        p, index(restrict_to(tensor(power(x.cls, coefficient_sum(shaved)),
                                    power(y.cls, coefficient_sum(by))),
                             joint)));
    cert.u3 = exact_valuation(p, index(restrict_to(power(x.cls, unit_coeff), joint)));
    detail::certify_check(cert.u3 == cert.u1,
                          "coprime power changed the p-part of the index");
    detail::certify_check(joint.degree() % x.field.degree() == 0,
                          "joint field degree not divisible by [K:Q]");
    const bigint over_k = joint.degree() / x.field.degree();
    cert.u4 = exact_valuation(p, over_k);

    const bigint shaved_weights = weight(shaved, x.n) * weight(by, y.n);
    detail::certify_check(exact_valuation(p, shaved_weights) >= cert.u2,
                          "twisted product index exceeds the shaved weights");
    detail::certify_check(cert.u1 + cert.u4 >= cert.s2,
                          "index reduction bound misses v_p(d)");
    detail::certify_check((base_index * over_k) % x.d == 0,
                          "d does not divide index·relative degree");

    // Only the p-part transfers: the shaved weights control the rest
    // product at p alone, so the assembled bound is a valuation statement.
    const bigint full_index = index(restrict_to(
        tensor(power(x.cls, coefficient_sum(ax)), power(y.cls, coefficient_sum(by))),
        joint));
    detail::certify_check(exact_valuation(p, full_index * over_k * shaved_weights) >= cert.s2,
                          "assembled product misses the p-part of d");

    cert.claimed = cert.s1 + cert.s3 + cert.u1 + cert.u4;
    detail::certify_check(cert.claimed >= cert.s, "single-summand bound below s");
    detail::certify_check(cert.term_valuation >= cert.claimed,
                          "term valuation below the ledger bound");
    return cert;
}

inline std::vector<valuation_certificate> certify_all(const transfer_scenario& sc,
                                                      const group_ring_element& alpha,
                                                      const group_ring_element& beta) {
    std::vector<valuation_certificate> out;
    for (const bigint& p : prime_factors(sc.total())) out.push_back(certify(sc, alpha, beta, p));
    return out;
}

struct divisibility_outcome {
    reduction_report report;
    std::size_t certified_pairs = 0;
};

// Every enumerated term must be divisible by N, and the gcd must come out
// to exactly N with the zero pair as witness (its term is N itself).
inline divisibility_outcome run_divisibility(const transfer_scenario& sc,
                                             const enumeration_options& options = {},
                                             bool certify_each = false) {
    const bigint n_total = sc.total();
    divisibility_outcome out;
    auto observer = [&](const group_ring_element& alpha, const group_ring_element& beta,
                        const bigint& term) {
        if (term % n_total != 0)
            throw consistency_error("term " + term.str() + " is not divisible by N = " +
                                    n_total.str());
        if (certify_each) {
            certify_all(sc, alpha, beta);
            ++out.certified_pairs;
        }
    };
    out.report = reduce_double(sc.first().setup, sc.second().setup, scenario_oracle(sc),
                               options, observer);
    if (out.report.gcd_value != n_total)
        throw consistency_error("enumerated gcd " + out.report.gcd_value.str() +
                                " differs from N = " + n_total.str());
    const std::vector<bigint> zero1(sc.first().setup.space()->count(), 0);
    const std::vector<bigint> zero2(sc.second().setup.space()->count(), 0);
    if (out.report.witness_alpha != zero1 || out.report.witness_beta != zero2)
        throw consistency_error("witness is not the zero pair");
    return out;
}

struct pipeline_report {
    bigint total;
    bigint d1, e1, n1, d2, e2, n2;
    divisibility_outcome divisibility;
    embed_report host1, host2;  // each class against the pure generic host
};

// End to end: assemble the scenario, verify the divisibility of every
// enumerated term (certifying prime by prime when asked), and check each
// class against the generic host of degree N: the twisting algebra
// (host ⊗ K) ⊗ D° has degree N·d, a multiple of n.
inline pipeline_report run_pipeline(const brauer_class& d1, const abelian_field& k1,
                                    const brauer_class& d2, const abelian_field& k2,
                                    const bigint& total,
                                    const enumeration_options& options = {},
                                    bool certify_each = true) {
    transfer_scenario sc(d1, k1, d2, k2, total);
    pipeline_report rep;
    rep.total = total;
    rep.d1 = sc.first().d;
    rep.e1 = sc.first().e;
    rep.n1 = sc.first().n;
    rep.d2 = sc.second().d;
    rep.e2 = sc.second().e;
    rep.n2 = sc.second().n;
    rep.divisibility = run_divisibility(sc, options, certify_each);

    auto host_side = [&](const scenario_side& side) {
        embed_instance inst{mixed_class(generic_algebra(total), 1, brauer_class(abelian_field{})),
                            abelian_field{}, restrict_to(side.cls, side.field), side.field};
        embed_report host = embed_check(inst);
        if (host.achieved != total * side.d)
            throw consistency_error("twisting algebra degree " + host.achieved.str() +
                                    " differs from N·d = " + bigint(total * side.d).str());
        if (host.achieved % side.n != 0)
            throw consistency_error("twisting algebra degree is not a multiple of n");
        return host;
    };
    rep.host1 = host_side(sc.first());
    rep.host2 = host_side(sc.second());
    return rep;
}

} // namespace csalab
