#include <catch_amalgamated.hpp>

#include <csalab/scenario.hpp>

#include <random>
#include <vector>

using namespace csalab;

namespace {

const abelian_field Q{};
const abelian_field gauss(4, {});
const abelian_field cubic9(9, {8});
const abelian_field cubic7(7, {6});
const abelian_field root2(8, {7});

brauer_class quaternion() {
    return brauer_class(Q, {{place(2), rational_mod_one(1, 2)},
                            {place::real(), rational_mod_one(1, 2)}});
}

brauer_class quartic_class() {
    return brauer_class(Q, {{place(2), rational_mod_one(1, 4)},
                            {place(3), rational_mod_one(3, 4)}});
}

} // namespace

TEST_CASE("embedding criterion") {
    // A degree-2 subfield stand-in: the trivial algebra over Q(i) inside
    // the quartic class, headroom n = 4/(1·2) = 2.
    auto pos = embed_check({mixed_class::pure(quartic_class()), Q, brauer_class(gauss), gauss});
    CHECK(pos.embeddable);
    CHECK(pos.ambient_degree == 4);
    CHECK(pos.sub_degree == 1);
    CHECK(pos.relative_degree == 2);
    CHECK(pos.n == 2);
    CHECK(pos.achieved == 2);

    // The rational quaternions do not sit inside the quartic class.
    auto q5 = brauer_class(Q, {{place(2), rational_mod_one(1, 2)},
                               {place(5), rational_mod_one(1, 2)}});
    auto neg = embed_check({mixed_class::pure(quartic_class()), Q, q5, Q});
    CHECK_FALSE(neg.embeddable);
    CHECK(neg.n == 2);
    CHECK(neg.achieved == 4);

    // An algebra embeds in itself.
    auto self = embed_check({mixed_class::pure(quaternion()), Q, quaternion(), Q});
    CHECK(self.embeddable);
    CHECK(self.n == 1);
    CHECK(self.achieved == 1);

    // The restriction of the ambient class is a maximal commutative-step
    // image: full headroom is used, achieved = n exactly.
    auto max_sub = embed_check(
        {mixed_class::pure(quartic_class()), Q, restrict_to(quartic_class(), gauss), gauss});
    CHECK(max_sub.embeddable);
    CHECK(max_sub.n == 1);

    // Mixed ambient: generic degree contributes to both sides.
    auto mixed = embed_check(
        {mixed_class(generic_algebra(6), 4, quaternion()), Q, brauer_class(Q), Q});
    CHECK(mixed.embeddable);
    CHECK(mixed.ambient_degree == 6);
    CHECK(mixed.n == 6);
    CHECK(mixed.achieved == 6);

    CHECK_THROWS_AS(
        embed_check({mixed_class::pure(quaternion()), Q, brauer_class(Q), gauss}),
        precondition_error);  // class not over its declared field
    CHECK_THROWS_AS(
        embed_check({mixed_class::pure(quartic_class()), gauss, brauer_class(root2), root2}),
        precondition_error);  // field containment failure
    auto d3 = brauer_class(Q, {{place(2), rational_mod_one(1, 3)},
                               {place(5), rational_mod_one(2, 3)}});
    CHECK_THROWS_AS(embed_check({mixed_class::pure(quaternion()), Q, d3, Q}),
                    precondition_error);  // 3 does not divide the ambient degree 2
}

TEST_CASE("embedding headroom rider on randomized instances") {
    std::mt19937_64 rng(20260814);
    const std::vector<abelian_field> towers = {Q, gauss, cubic9, root2, cubic7};
    const std::vector<brauer_class> pool = {
        brauer_class(Q), quaternion(), quartic_class(),
        brauer_class(Q, {{place(2), rational_mod_one(1, 3)},
                         {place(5), rational_mod_one(2, 3)}}),
        brauer_class(Q, {{place(3), rational_mod_one(1, 2)},
                         {place(7), rational_mod_one(1, 2)}})};

    int valid = 0;
    while (valid < 400) {
        const abelian_field& k = towers[rng() % towers.size()];
        const brauer_class& seed = pool[rng() % pool.size()];
        // Half the draws can embed by construction, half are independent.
        const brauer_class d = restrict_to(rng() % 2 ? seed : pool[rng() % pool.size()], k);
        mixed_class e(generic_algebra(1 + bigint(rng() % 4)), bigint(rng() % 4), seed);

        const bigint ab = index(d) * k.degree();
        if (mixed_index(e, Q) % ab != 0) continue;
        auto rep = embed_check({e, Q, d, k});  // rider violations throw inside
        CHECK(rep.n * ab == rep.ambient_degree);
        if (rep.embeddable) CHECK(rep.achieved == rep.n);
        ++valid;
    }
}

TEST_CASE("real cyclotomic layers") {
    CHECK(real_cyclotomic_layer(3, 0) == Q);
    CHECK(real_cyclotomic_layer(3, 1) == cubic9);
    auto l2 = real_cyclotomic_layer(3, 2);
    CHECK(l2.conductor() == 27);
    CHECK(l2.degree() == 9);
    CHECK(l2.totally_real());
    CHECK(l2.contains(cubic9));
    auto f5 = real_cyclotomic_layer(5, 1);
    CHECK(f5.conductor() == 25);
    CHECK(f5.degree() == 5);
    CHECK_THROWS_AS(real_cyclotomic_layer(2, 1), precondition_error);
    CHECK_THROWS_AS(real_cyclotomic_layer(6, 1), precondition_error);
}

TEST_CASE("no common host construction") {
    auto rep = counterexample_run(2, 3, 3);
    CHECK(rep.d1 == quaternion());
    CHECK(rep.d2 == brauer_class(Q, {{place(2), rational_mod_one(1, 3)},
                                     {place(5), rational_mod_one(2, 3)}}));
    CHECK(rep.splitting_layer == cubic9);
    CHECK(rep.d2_splits_over_layer);
    CHECK(rep.d1_indices == std::vector<bigint>{2, 2, 2, 2});
    CHECK(rep.d2_indices == std::vector<bigint>{3, 1, 1, 1});

    // Independent Frobenius orders behind those indices: 2 and 5 generate
    // (Z/27)^× (orders 18), so their classes in the degree-9 layer quotient
    // have full order 9; odd local degrees keep order-2 invariants alive
    // and multiples of 3 kill order-3 ones.
    CHECK(real_cyclotomic_layer(3, 2).local_degree(place(2)) == 9);
    CHECK(real_cyclotomic_layer(3, 2).local_degree(place(5)) == 9);
    CHECK(cubic9.local_degree(place(2)) == 3);
    CHECK(cubic9.local_degree(place(5)) == 3);

    auto deg0 = counterexample_run(2, 3, 0);
    CHECK(deg0.d1_indices == std::vector<bigint>{2});
    CHECK(deg0.d2_indices == std::vector<bigint>{3});

    auto alt = counterexample_run(3, 5, 1);
    CHECK(alt.d1 == brauer_class(Q, {{place(2), rational_mod_one(1, 3)},
                                     {place(3), rational_mod_one(2, 3)}}));
    CHECK(alt.d2 == brauer_class(Q, {{place(2), rational_mod_one(1, 5)},
                                     {place(3), rational_mod_one(4, 5)}}));
    CHECK(alt.d1_indices == std::vector<bigint>{3, 3});
    CHECK(alt.d2_indices == std::vector<bigint>{5, 1});

    CHECK_THROWS_AS(counterexample_run(3, 2, 1), precondition_error);
    CHECK_THROWS_AS(counterexample_run(4, 3, 1), precondition_error);
    CHECK_THROWS_AS(counterexample_run(3, 3, 1), precondition_error);
}

TEST_CASE("transfer scenario assembly") {
    transfer_scenario sc(quaternion(), Q, brauer_class(Q), Q, 4);
    CHECK(sc.first().d == 2);
    CHECK(sc.first().e == 1);
    CHECK(sc.first().m == 2);
    CHECK(sc.first().n == 2);
    CHECK(sc.first().r == 8);
    CHECK(sc.second().d == 1);
    CHECK(sc.second().n == 4);
    CHECK(sc.second().r == 4);

    CHECK_THROWS_AS(transfer_scenario(quaternion(), Q, brauer_class(Q), Q, 2),
                    precondition_error);  // N must be a multiple of m₁² = 4
    CHECK_THROWS_AS(
        transfer_scenario(quaternion(), gauss, brauer_class(Q), abelian_field(20, {}), 16),
        precondition_error);  // overlapping conductors
    CHECK_THROWS_AS(
        transfer_scenario(restrict_to(quaternion(), gauss), gauss, brauer_class(Q), Q, 16),
        precondition_error);  // class not extended from Q
}

TEST_CASE("scenario terms") {
    transfer_scenario sc(quaternion(), Q, brauer_class(Q), Q, 4);
    auto alpha = [&](bigint c) { return sc.first().setup.element({std::move(c)}); };
    auto beta = [&](bigint c) { return sc.second().setup.element({std::move(c)}); };

    CHECK(scenario_term(sc, alpha(1), beta(2)) == 8);
    CHECK(scenario_term(sc, alpha(0), beta(0)) == 4);
    CHECK(scenario_term(sc, alpha(1), beta(1)) == 64);

    // Exhaustively: 32 pairs, all divisible by 4, gcd exactly 4.
    auto outcome = run_divisibility(sc, {}, true);
    CHECK(outcome.report.terms == 32);
    CHECK(outcome.report.gcd_value == 4);
    CHECK(outcome.report.exhaustive);
    CHECK(outcome.certified_pairs == 32);
    CHECK(*outcome.report.witness_alpha == std::vector<bigint>{0});
    CHECK(*outcome.report.witness_beta == std::vector<bigint>{0});

    // Fully trivial inputs: the gcd is N for any N.
    transfer_scenario triv(brauer_class(Q), Q, brauer_class(Q), Q, 5);
    auto t = run_divisibility(triv);
    CHECK(t.report.gcd_value == 5);
    CHECK(t.report.terms == 25);
}

TEST_CASE("valuation certificates") {
    transfer_scenario sc(quaternion(), Q, brauer_class(Q), Q, 4);
    auto alpha = [&](bigint c) { return sc.first().setup.element({std::move(c)}); };
    auto beta = [&](bigint c) { return sc.second().setup.element({std::move(c)}); };

    // Single coprime summand: the full ledger of the worked example.
    auto single = certify(sc, alpha(1), beta(2), 2);
    CHECK(single.tag == certificate_case::single_summand);
    CHECK_FALSE(single.swapped);
    CHECK(single.s == 2);
    CHECK(single.t1 == 1);
    CHECK(single.t2 == 2);
    CHECK(single.s1 == 1);
    CHECK(single.s2 == 1);
    CHECK(single.s3 == 0);
    CHECK(single.u1 == 1);
    CHECK(single.u2 == 0);
    CHECK(single.u3 == 1);
    CHECK(single.u4 == 0);
    CHECK(single.claimed == 2);
    CHECK(single.term_valuation == 3);

    // 1 + 1 + 1 = 3 is odd, so the unit-sum case wins at p = 2; the
    // weight product still carries v₂ = 3 ≥ s on its own.
    auto unit = certify(sc, alpha(1), beta(1), 2);
    CHECK(unit.tag == certificate_case::unit_sum);
    CHECK(unit.claimed == 2);
    CHECK(unit.term_valuation == 6);
    const bigint weights =
        weight(alpha(1), sc.first().n) * weight(beta(1), sc.second().n);
    CHECK(exact_valuation(2, weights) == 3);

    // Coprime coefficient on the second side only: the ledger swaps.
    auto swapped = certify(sc, alpha(2), beta(1), 2);
    CHECK(swapped.tag == certificate_case::single_summand);
    CHECK(swapped.swapped);
    CHECK(swapped.s1 == 2);
    CHECK(swapped.s2 == 0);
    CHECK(swapped.s3 == 0);
    CHECK(swapped.claimed == 2);
    CHECK(swapped.term_valuation == 2);

    CHECK_THROWS_AS(certify(sc, alpha(1), beta(2), 3), precondition_error);

    // Two coprime summands on a two-coset side.
    transfer_scenario wide(brauer_class(Q, {{place(2), rational_mod_one(1, 2)},
                                            {place(5), rational_mod_one(1, 2)}}),
                           gauss, brauer_class(Q), Q, 16);
    CHECK(wide.first().d == 2);  // the invariant at 5 survives over Q(i)
    CHECK(wide.first().n == 4);
    auto two = certify(wide, wide.first().setup.element({1, 1}),
                       wide.second().setup.element({1}), 2);
    CHECK(two.tag == certificate_case::two_coprime_summands);
    CHECK(two.s == 4);
    CHECK(two.t1 == 2);
    CHECK(two.t2 == 4);
    CHECK(two.claimed == 8);
    CHECK(two.term_valuation == 10);

    auto all = certify_all(sc, alpha(1), beta(2));
    REQUIRE(all.size() == 1);
    CHECK(all[0].p == 2);
}

TEST_CASE("scenario sweep") {
    std::mt19937_64 rng(1234);
    const std::vector<brauer_class> pool = {
        brauer_class(Q), quaternion(), quartic_class(),
        brauer_class(Q, {{place(2), rational_mod_one(1, 3)},
                         {place(5), rational_mod_one(2, 3)}}),
        brauer_class(Q, {{place(2), rational_mod_one(1, 2)},
                         {place(5), rational_mod_one(1, 2)}})};
    const std::vector<abelian_field> left = {Q, cubic9, cubic7};
    const std::vector<abelian_field> right = {Q, gauss, root2};

    for (int trial = 0; trial < 300; ++trial) {
        const brauer_class& d1 = pool[rng() % pool.size()];
        const brauer_class& d2 = pool[rng() % pool.size()];
        const abelian_field& k1 = left[rng() % left.size()];
        const abelian_field& k2 = right[rng() % right.size()];
        const bigint m1 = index(restrict_to(d1, k1)) * k1.degree();
        const bigint m2 = index(restrict_to(d2, k2)) * k2.degree();
        const bigint total = lcm(m1 * m1, m2 * m2) * (1 + bigint(rng() % 3));
        transfer_scenario sc(d1, k1, d2, k2, total);

        std::vector<bigint> ca(sc.first().setup.space()->count());
        std::vector<bigint> cb(sc.second().setup.space()->count());
        for (auto& c : ca) c = bigint(rng() % 1000);
        for (auto& c : cb) c = bigint(rng() % 1000);
        auto alpha = sc.first().setup.element(ca);
        auto beta = sc.second().setup.element(cb);

        CHECK(scenario_term(sc, alpha, beta) % total == 0);
        for (const auto& cert : certify_all(sc, alpha, beta)) {
            CHECK(cert.claimed >= cert.s);
            CHECK(cert.term_valuation >= cert.claimed);
        }
    }
}

TEST_CASE("pipeline") {
    auto rep = run_pipeline(quaternion(), Q, brauer_class(Q), Q, 4);
    CHECK(rep.divisibility.report.gcd_value == 4);
    CHECK(rep.divisibility.certified_pairs == 32);
    CHECK(rep.d1 == 2);
    CHECK(rep.n1 == 2);
    CHECK(rep.host1.achieved == 8);
    CHECK_FALSE(rep.host1.embeddable);
    CHECK(rep.host2.achieved == 4);
    CHECK(rep.host2.embeddable);

    auto triv = run_pipeline(brauer_class(Q), Q, brauer_class(Q), Q, 3);
    CHECK(triv.divisibility.report.gcd_value == 3);
    CHECK(triv.host1.embeddable);
    CHECK(triv.host1.achieved == 3);

    CHECK_THROWS_AS(run_pipeline(quaternion(), Q, brauer_class(Q), Q, 2),
                    precondition_error);
}
