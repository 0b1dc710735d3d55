#include <catch_amalgamated.hpp>

#include <csalab/groupring.hpp>

#include "support/catalog.hpp"

#include <memory>
#include <random>

using namespace csalab;

namespace {

group_ptr share(finite_group g) { return std::make_shared<const finite_group>(std::move(g)); }

coset_space_ptr space_of(group_ptr g, std::vector<std::size_t> members) {
    return std::make_shared<const coset_space>(subgroup(g, std::move(members)));
}

} // namespace

TEST_CASE("table validation") {
    CHECK_THROWS_AS(finite_group({}), precondition_error);
    CHECK_THROWS_AS(finite_group({{0, 1}, {1, 1}}), precondition_error);      // no inverse row
    CHECK_THROWS_AS(finite_group({{1, 0}, {0, 1}}), precondition_error);      // identity not at 0
    CHECK_THROWS_AS(finite_group({{0, 1}, {1, 2}}), precondition_error);      // out of range
    CHECK_NOTHROW(finite_group({{0, 1}, {1, 0}}));
    // Latin square with identity that fails associativity: build from a
    // non-associative loop of order 5.
    CHECK_THROWS_AS(finite_group({{0, 1, 2, 3, 4},
                                  {1, 0, 3, 4, 2},
                                  {2, 4, 0, 1, 3},
                                  {3, 2, 4, 0, 1},
                                  {4, 3, 1, 2, 0}}),
                    precondition_error);
}

TEST_CASE("constructors produce expected structures") {
    CHECK(finite_group::cyclic(6).order() == 6);
    CHECK(finite_group::abelian({2, 3}).order() == 6);
    CHECK(finite_group::dihedral(4).order() == 8);
    CHECK(finite_group::dicyclic(2).order() == 8);
    CHECK(finite_group::from_permutations(3, {{1, 2, 0}, {1, 0, 2}}).order() == 6);

    auto d4 = finite_group::dihedral(4);
    bool commutative = true;
    for (std::size_t a = 0; a < 8 && commutative; ++a)
        for (std::size_t b = 0; b < 8 && commutative; ++b)
            commutative = d4.mul(a, b) == d4.mul(b, a);
    CHECK_FALSE(commutative);

    // Quaternion group: exactly one element of order 2.
    auto q8 = finite_group::dicyclic(2);
    int order2 = 0;
    for (std::size_t a = 1; a < 8; ++a)
        if (q8.mul(a, a) == 0) ++order2;
    CHECK(order2 == 1);
}

TEST_CASE("subgroups") {
    auto c6 = share(finite_group::cyclic(6));
    CHECK_THROWS_AS(subgroup(c6, {0, 1}), precondition_error);  // not closed
    CHECK_THROWS_AS(subgroup(c6, {2, 4}), precondition_error);  // no identity
    subgroup h(c6, {0, 2, 4});
    CHECK(h.size() == 3);
    CHECK(h.index() == 2);
    CHECK(subgroup::generated(c6, {2}) == h);
    CHECK(subgroup::trivial(c6).size() == 1);
    CHECK(subgroup::full(c6).size() == 6);

    CHECK(all_subgroups(c6).size() == 4);
    CHECK(all_subgroups(share(finite_group::dicyclic(2))).size() == 6);
    CHECK(all_subgroups(share(finite_group::dihedral(4))).size() == 10);
    CHECK(all_subgroups(share(finite_group::cyclic(12))).size() == 6);
    auto a4 = share(finite_group::from_permutations(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}));
    CHECK(all_subgroups(a4).size() == 10);
}

TEST_CASE("coset space structure") {
    auto s3 = share(finite_group::dihedral(3));
    for (const auto& h : all_subgroups(s3)) {
        coset_space sp(h);
        CHECK(sp.count() == h.index());
        CHECK(sp.representative(0) == 0);  // coset 0 is H
        for (std::size_t m : h.members()) CHECK(sp.coset_of(m) == 0);
        // Transitivity: from coset 0 every coset is reachable.
        std::vector<bool> hit(sp.count(), false);
        for (std::size_t g = 0; g < s3->order(); ++g) hit[sp.act(g, 0)] = true;
        for (bool b : hit) CHECK(b);
    }
}

TEST_CASE("translate") {
    auto c3 = share(finite_group::cyclic(3));
    auto sp = space_of(c3, {0});
    group_ring_element alpha(sp, 2, {1, 0, 0});
    CHECK(translate(0, alpha) == alpha);
    CHECK(translate(1, alpha) == group_ring_element(sp, 2, {0, 1, 0}));
    group_ring_element constant(sp, 5, {3, 3, 3});
    for (std::size_t g = 0; g < 3; ++g) CHECK(translate(g, constant) == constant);

    // Action law g(hα) = (gh)α across a nonabelian example.
    auto d4 = share(finite_group::dihedral(4));
    auto spd = space_of(d4, {0, 5});
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        std::vector<bigint> coeffs(spd->count());
        for (auto& c : coeffs) c = bigint(rng() % 6);
        group_ring_element a(spd, 6, coeffs);
        std::size_t g = rng() % 8, h = rng() % 8;
        CHECK(translate(g, translate(h, a)) == translate(d4->mul(g, h), a));
    }
}

TEST_CASE("stabilizer and fixed_degree") {
    auto c3 = share(finite_group::cyclic(3));
    auto sp = space_of(c3, {0});
    CHECK(stabilizer(group_ring_element(sp, 4, {0, 0, 0})).size() == 3);
    CHECK(stabilizer(group_ring_element(sp, 4, {1, 1, 1})).size() == 3);
    CHECK(stabilizer(group_ring_element(sp, 4, {1, 0, 0})).size() == 1);
    CHECK(fixed_degree(group_ring_element(sp, 4, {0, 0, 0})) == 1);
    CHECK(fixed_degree(group_ring_element(sp, 4, {1, 0, 0})) == 3);
    CHECK(fixed_degree(group_ring_element(sp, 4, {1, 1, 1})) == 1);
}

TEST_CASE("orbits") {
    auto c4 = share(finite_group::cyclic(4));
    auto sp = space_of(c4, {0});
    CHECK(orbits(subgroup::full(c4), *sp).size() == 1);
    CHECK(orbits(subgroup::trivial(c4), *sp).size() == 4);
    auto two = orbits(subgroup(c4, {0, 2}), *sp);
    REQUIRE(two.size() == 2);
    CHECK(two[0].size() == 2);
    CHECK(two[1].size() == 2);
}

TEST_CASE("weight and coefficient_sum") {
    auto c3 = share(finite_group::cyclic(3));
    auto sp3 = space_of(c3, {0});
    CHECK(weight(group_ring_element(sp3, 5, {0, 0, 0}), 7) == 1);
    CHECK(weight(group_ring_element(sp3, 2, {1, 0, 0}), 3) == 3);
    auto c2 = share(finite_group::cyclic(2));
    auto sp2 = space_of(c2, {0});
    CHECK(weight(group_ring_element(sp2, 8, {2, 1}), 4) == 8);
    CHECK_THROWS_AS(weight(group_ring_element(sp2, 8, {2, 1}), 0), precondition_error);

    CHECK(coefficient_sum(group_ring_element(sp3, 5, {0, 0, 0})) == 0);
    CHECK(coefficient_sum(group_ring_element(sp3, 5, {1, 1, 1})) == 3);
    CHECK(coefficient_sum(group_ring_element(sp2, 8, {2, 1})) == 3);
    // Canonicalization: -1 mod 8 is 7.
    CHECK(coefficient_sum(group_ring_element(sp2, 8, {-1, 1})) == 8);
}

TEST_CASE("element properties across all groups of order <= 12") {
    std::mt19937_64 rng(20240814);
    for (const auto& [name, g] : catalog::groups_up_to(12)) {
        INFO(name);
        for (const auto& h : all_subgroups(g)) {
            auto sp = std::make_shared<const coset_space>(h);
            for (bigint r : {2, 3, 4, 6}) {
                for (int trial = 0; trial < 8; ++trial) {
                    std::vector<bigint> coeffs(sp->count());
                    for (auto& c : coeffs) c = bigint(rng()) % r;
                    group_ring_element alpha(sp, r, coeffs);
                    auto stab = stabilizer(alpha);

                    // Coefficients are constant on stabilizer orbits.
                    for (const auto& orbit : orbits(stab, *sp))
                        for (std::size_t c : orbit)
                            CHECK(alpha.coeffs()[c] == alpha.coeffs()[orbit[0]]);

                    // Conjugation covariance of the stabilizer.
                    std::size_t e = rng() % g->order();
                    auto moved = stabilizer(translate(e, alpha));
                    std::vector<std::size_t> conj;
                    for (std::size_t s : stab.members())
                        conj.push_back(g->mul(g->mul(e, s), g->inv(e)));
                    std::sort(conj.begin(), conj.end());
                    CHECK(moved.members() == conj);
                    CHECK(fixed_degree(translate(e, alpha)) == fixed_degree(alpha));

                    // Weight invariance and divisibility.
                    bigint n = 1 + bigint(rng() % 6);
                    CHECK(weight(translate(e, alpha), n) == weight(alpha, n));
                    bigint cap = 1;
                    for (std::size_t i = 0; i < sp->count(); ++i) cap *= n;
                    CHECK(cap % weight(alpha, n) == 0);
                    bool all_divisible = true;
                    for (const auto& c : alpha.coeffs())
                        if (c % n != 0) all_divisible = false;
                    CHECK((weight(alpha, n) == 1) == all_divisible);
                }
            }
        }
    }
}
