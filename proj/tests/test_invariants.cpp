#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "nlab/invariants.hpp"
#include "nlab/nielsen.hpp"

using namespace nlab;

TEST_CASE("determinant invariant for abelian vectors") {
    split_group g(group_spec::abelian({4, 2}));
    auto dv = det_invariant(g, {g.encode({1, 1}, 0), g.encode({2, 1}, 0)});
    CHECK(dv.modulus == 2);
    CHECK(dv.value == 1);

    auto de = det_invariant(g, {g.encode({1, 0}, 0), g.encode({0, 1}, 0)});
    CHECK(de.value == 1);

    split_group z55(group_spec::abelian({5, 5}));
    auto d2 = det_invariant(z55, {z55.encode({2, 0}, 0), z55.encode({0, 1}, 0)});
    CHECK(d2.modulus == 5);
    CHECK(d2.value == 2); // 2 = min(2, 3) up to sign

    CHECK_THROWS_AS(det_invariant(z55, {z55.encode({1, 0}, 0)}), rank_mismatch);
    split_group z6(group_spec::abelian({2, 3}));
    CHECK_THROWS_AS(det_invariant(z6, {z6.encode({1, 0}, 0), z6.encode({0, 1}, 0)}), rank_mismatch);
}

TEST_CASE("determinant is a Nielsen invariant on abelian groups") {
    split_group g(group_spec::abelian({4, 4}));
    auto orb = nielsen_orbits(g, 2);
    std::vector<det_invariant_value> per_class(orb.class_count(), {-1, -1});
    std::set<std::pair<long long, long long>> seen;
    bool constant = true, separating = true;
    std::map<std::pair<long long, long long>, int> owner;
    orb.for_each_member([&](const std::vector<uint32_t>& v, int cls) {
        auto dv = det_invariant(g, v);
        if (per_class[cls].modulus < 0)
            per_class[cls] = dv;
        else if (!(per_class[cls] == dv))
            constant = false;
        auto [it, inserted] = owner.emplace(std::make_pair(dv.modulus, dv.value), cls);
        if (!inserted && it->second != cls) separating = false;
    });
    CHECK(constant);
    CHECK(separating);
    CHECK(orb.class_count() == std::max<long long>(totient(4) / 2, 1));
}

TEST_CASE("D_a values in the quotient") {
    auto rg = ring_group::metacyclic(5, 2, 4);
    const split_group& g = rg.group();
    uint32_t b = g.encode({1}, 0);
    uint32_t a = g.encode({0}, 1);
    // reference pair (b, a): D_a = 1
    CHECK(d_a(rg, b, a) == rg.lambda().project(rg.ring().one()));
    // ((2,0),(0,1)): D_a = 2
    CHECK(d_a(rg, g.encode({2}, 0), a) == rg.lambda().project(rg.ring().from_int(2)));
}

TEST_CASE("commutator identity holds for all pairs") {
    for (auto rg : {ring_group::metacyclic(5, 2, 4), ring_group::metacyclic(9, 3, 4),
                    ring_group::lamplighter(2, 3)}) {
        const split_group& g = rg.group();
        const finite_ring& r = rg.ring();
        long long lhs_scale = r.sub(r.one(), rg.alpha());
        for (long long x = 0; x < g.size(); ++x)
            for (long long y = 0; y < g.size(); ++y) {
                uint32_t comm = g.commutator(static_cast<uint32_t>(x), static_cast<uint32_t>(y));
                REQUIRE(g.cyc(comm) == 0);
                REQUIRE(rg.ring_pair(comm).first ==
                        r.mul(lhs_scale, d_a_in_ring(rg, static_cast<uint32_t>(x),
                                                     static_cast<uint32_t>(y))));
            }
    }
}

TEST_CASE("delta invariant separates and identifies pairs") {
    auto rg = ring_group::metacyclic(5, 2, 4);
    const split_group& g = rg.group();
    uint32_t b = g.encode({1}, 0), a = g.encode({0}, 1);
    auto d1 = delta_invariant(rg, b, a);
    auto d2 = delta_invariant(rg, g.encode({2}, 0), a);
    auto d4 = delta_invariant(rg, g.encode({4}, 0), a);
    CHECK(d1 == delta_invariant(rg, b, a));
    CHECK_FALSE(d1 == d2);
    CHECK(d1 == d4); // 4 = -1 lies in T_Lambda

    CHECK_THROWS_AS(delta_invariant(rg, g.encode({1}, 0), g.encode({2}, 0)), not_generating);
}

TEST_CASE("delta is Aut(F_2)-invariant") {
    for (auto rg : {ring_group::metacyclic(5, 2, 4), ring_group::lamplighter(2, 3)}) {
        const split_group& g = rg.group();
        auto vs = enumerate_Vn(g, 2);
        for (const auto& v : vs) {
            auto base = delta_invariant(rg, v[0], v[1], false);
            auto l12 = apply_move(g, v, nielsen_move::L(0, 1));
            auto i1 = apply_move(g, v, nielsen_move::I(0));
            REQUIRE(delta_invariant(rg, l12[0], l12[1], false) == base);
            REQUIRE(delta_invariant(rg, i1[0], i1[1], false) == base);
        }
    }
}

TEST_CASE("delta attains exactly the unit cosets") {
    for (auto rg : {ring_group::metacyclic(5, 2, 4), ring_group::lamplighter(3, 2)}) {
        auto vs = enumerate_Vn(rg.group(), 2);
        std::set<int> attained;
        for (const auto& v : vs) attained.insert(delta_invariant(rg, v[0], v[1], false).coset_rep);
        REQUIRE(static_cast<long long>(attained.size()) == rg.n2_unit_quotient());
    }
}

TEST_CASE("pair equivalence matches the orbit partition") {
    auto rg = ring_group::metacyclic(5, 2, 4);
    const split_group& g = rg.group();
    uint32_t b = g.encode({1}, 0), a = g.encode({0}, 1);
    CHECK(pairs_equivalent(rg, b, a, b, a));
    CHECK_FALSE(pairs_equivalent(rg, b, a, g.encode({2}, 0), a));
    CHECK(pairs_equivalent(rg, b, a, g.encode({4}, 0), a));

    auto orb = nielsen_orbits(g, 2);
    auto vs = enumerate_Vn(g, 2);
    for (std::size_t i = 0; i < vs.size(); i += 7)
        for (std::size_t j = 0; j < vs.size(); j += 11) {
            bool same = orb.class_of(vs[i]) == orb.class_of(vs[j]);
            REQUIRE(pairs_equivalent(rg, vs[i][0], vs[i][1], vs[j][0], vs[j][1], false) == same);
        }
}

TEST_CASE("generation through the invariant when nu is nilpotent") {
    auto rg = ring_group::metacyclic(5, 2, 4); // nu = 0
    const split_group& g = rg.group();
    CHECK(nu_is_nilpotent(rg));
    CHECK(generates_by_invariant(rg, g.encode({1}, 0), g.encode({0}, 1)));
    CHECK_FALSE(generates_by_invariant(rg, g.encode({1}, 0), g.encode({2}, 0)));

    auto rg9 = ring_group::metacyclic(9, 3, 4); // nu = 3, nilpotent
    CHECK(nu_is_nilpotent(rg9));
    const split_group& g9 = rg9.group();
    for (long long x = 0; x < g9.size(); ++x)
        for (long long y = 0; y < g9.size(); ++y)
            REQUIRE(generates_by_invariant(rg9, static_cast<uint32_t>(x), static_cast<uint32_t>(y)) ==
                    pair_generates(rg9, static_cast<uint32_t>(x), static_cast<uint32_t>(y)));

    auto ab = ring_group::metacyclic(3, 2, 1); // nu = 2, a unit: not nilpotent
    CHECK_FALSE(nu_is_nilpotent(ab));
    CHECK_THROWS_AS(generates_by_invariant(ab, 0, 1), nu_not_nilpotent);
}
