#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nlab/nielsen.hpp"
#include "nlab/tsystems.hpp"

using namespace nlab;

TEST_CASE("brute-force automorphism groups of pinned groups") {
    CHECK(aut_group_bruteforce(split_group(group_spec::metacyclic(5, 2, 4))).size() == 20);
    CHECK(aut_group_bruteforce(split_group(group_spec::abelian({2, 2}))).size() == 6);
    CHECK(aut_group_bruteforce(split_group(group_spec::abelian({5}))).size() == 4);
    CHECK_THROWS_AS(aut_group_bruteforce(split_group(group_spec::lamplighter(4, 3)), 100),
                    search_budget_exceeded);
}

TEST_CASE("dihedral automorphism groups have order n phi(n)") {
    for (long long n : {4, 5, 6, 7, 8, 9}) {
        split_group dn(group_spec::metacyclic(n, 2, n - 1));
        REQUIRE(static_cast<long long>(aut_group_bruteforce(dn).size()) == n * totient(n));
    }
}

TEST_CASE("the two presentations of Z_2 wr Z_2 agree") {
    // Z_2 wr Z_2 is the dihedral group of order 8
    split_group wreath(group_spec::lamplighter(2, 2));
    split_group dihedral(group_spec::metacyclic(4, 2, 3));
    CHECK(wreath.size() == dihedral.size());
    CHECK(aut_group_bruteforce(wreath).size() == aut_group_bruteforce(dihedral).size());
    CHECK(nielsen_orbits(wreath, 2).class_count() == nielsen_orbits(dihedral, 2).class_count());
    CHECK(count_Vn(wreath, 2) == count_Vn(dihedral, 2));
}

TEST_CASE("constructed automorphisms are multiplicative") {
    split_group g(group_spec::metacyclic(8, 2, 3));
    auto auts = aut_group_bruteforce(g);
    std::mt19937 rng(3);
    for (const auto& phi : auts)
        for (int s = 0; s < 50; ++s) {
            uint32_t x = static_cast<uint32_t>(rng() % g.size());
            uint32_t y = static_cast<uint32_t>(rng() % g.size());
            REQUIRE(phi(g.mul(x, y)) == g.mul(phi(x), phi(y)));
        }
}

TEST_CASE("structured generators") {
    auto rg = ring_group::metacyclic(5, 2, 4);
    auto sg = structured_gens(rg);
    // nu = 0 in Z_5, so every module element gives a derivation twist
    CHECK(sg.derivation_twists.size() == 5);
    CHECK(sg.unit_scalings.size() == 4);
    CHECK(sg.characteristic_verified);

    // the identity is among the unit scalings (u = 1)
    bool has_identity = false;
    for (const auto& a : sg.unit_scalings) {
        bool id = true;
        for (long long e = 0; e < rg.group().size(); ++e)
            id = id && a.img[e] == static_cast<uint32_t>(e);
        has_identity = has_identity || id;
    }
    CHECK(has_identity);

    auto rg43 = ring_group::lamplighter(4, 3);
    auto sg43 = structured_gens(rg43);
    CHECK(sg43.power_twists.size() == 2); // alpha -> alpha^k for k in {1, 2}
}

TEST_CASE("structured generators appear in the brute-force list") {
    for (auto rg : {ring_group::metacyclic(5, 2, 4), ring_group::lamplighter(2, 3)}) {
        auto brute = aut_group_bruteforce(rg.group());
        auto sg = structured_gens(rg);
        for (const automorphism* a : sg.all()) {
            bool found = false;
            for (const auto& b : brute) found = found || b.img == a->img;
            REQUIRE(found);
        }
    }
}

TEST_CASE("T-system counts") {
    {
        split_group g(group_spec::metacyclic(5, 2, 4));
        auto orb = nielsen_orbits(g, 2);
        CHECK(tsystems(g, orb, aut_backend::bruteforce).count == 1);
        auto st = tsystems(g, orb, aut_backend::structured);
        CHECK(st.count == 1);
        CHECK_FALSE(st.upper_bound_only);
    }
    {
        split_group g(group_spec::lamplighter(4, 3));
        auto orb = nielsen_orbits(g, 2);
        CHECK(tsystems(g, orb, aut_backend::bruteforce).count == 1);
    }
    {
        split_group g(group_spec::abelian({5, 5}));
        auto orb = nielsen_orbits(g, 2);
        CHECK(orb.class_count() == 2);
        CHECK(tsystems(g, orb, aut_backend::bruteforce).count == 1);
    }
}

TEST_CASE("T-count never exceeds the Nielsen count and structured never undercounts") {
    for (long long k : {5, 7, 8}) {
        split_group g(group_spec::metacyclic(k, 2, k - 1));
        auto orb = nielsen_orbits(g, 2);
        auto brute = tsystems(g, orb, aut_backend::bruteforce);
        auto structured = tsystems(g, orb, aut_backend::structured);
        REQUIRE(brute.count <= orb.class_count());
        REQUIRE(structured.count >= brute.count);
    }
}
