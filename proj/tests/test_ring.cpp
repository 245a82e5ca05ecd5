#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nlab/ring.hpp"

using namespace nlab;

namespace {
finite_ring zk(long long k) { return finite_ring(k, {mod_reduce(-1, k), 1}); } // Z_k as Z_k[X]/(X-1)
} // namespace

TEST_CASE("ring creation and sizes") {
    CHECK(finite_ring(2, {1, 1, 1}).size() == 4);
    CHECK(finite_ring(4, {1, 1, 1}).size() == 16);
    CHECK(finite_ring(5, {1, 1}).size() == 5);
    CHECK_THROWS_AS(finite_ring(5, {1, 2}), not_monic);
    CHECK_THROWS_AS(finite_ring(1, {0, 1}), bad_modulus);
    CHECK_THROWS_AS(finite_ring(5, {3}), not_monic); // degree 0
}

TEST_CASE("ring multiplication agrees between table and direct paths") {
    finite_ring r(4, {3, 2, 1}); // within table cap
    finite_ring big(101, {5, 3, 1}); // 10201 elements, no tables
    std::mt19937 rng(3);
    for (int s = 0; s < 200; ++s) {
        long long a = rng() % big.size(), b = rng() % big.size();
        // associativity and commutativity spot checks
        long long c = rng() % big.size();
        CHECK(big.mul(a, b) == big.mul(b, a));
        CHECK(big.mul(big.mul(a, b), c) == big.mul(a, big.mul(b, c)));
        CHECK(big.mul(a, big.one()) == a);
        CHECK(big.add(a, big.neg(a)) == big.zero());
    }
    CHECK(r.mul(r.gen(), r.gen()) == r.index({1, 2})); // X^2 = -2X - 3 = 2X + 1 over Z_4
}

TEST_CASE("partial ladders") {
    finite_ring z9 = zk(9);
    CHECK(partial_ladder(z9, z9.from_int(2), 3) == z9.from_int(7));
    CHECK(partial_ladder(z9, z9.from_int(2), 0) == z9.zero());
    CHECK(partial_ladder(z9, z9.from_int(5), 0) == z9.zero());
    // l = -1: -u^{-1}; for u = 2 mod 9 the inverse is 5, so the ladder is 4
    CHECK(partial_ladder(z9, z9.from_int(2), -1) == z9.from_int(4));
    // (1 - u) ladder(-1) = 1 - u^{-1}
    long long u = z9.from_int(2);
    CHECK(z9.mul(z9.sub(z9.one(), u), partial_ladder(z9, u, -1)) ==
          z9.sub(z9.one(), z9.inverse(u)));
    CHECK_THROWS_AS(partial_ladder(z9, z9.from_int(3), -2), non_unit);
}

TEST_CASE("norm elements") {
    finite_ring z5 = zk(5);
    CHECK(norm_element(z5, z5.from_int(4), 2) == z5.zero());
    finite_ring z8 = zk(8);
    CHECK(norm_element(z8, z8.from_int(3), 2) == z8.from_int(4));
    finite_ring r(2, {1, 0, 1}); // Z_2[X]/(X^2+1)
    CHECK(norm_element(r, r.gen(), 2) == r.index({1, 1}));
    CHECK_THROWS_AS(norm_element(z8, z8.from_int(3), 3), order_mismatch);
}

TEST_CASE("telescoping identity on random rings") {
    std::mt19937 rng(17);
    std::vector<finite_ring> pool;
    for (long long k : {2, 3, 4, 5, 7, 9, 16, 99}) pool.push_back(zk(k));
    pool.emplace_back(2, std::vector<long long>{1, 1, 1});
    pool.emplace_back(3, std::vector<long long>{2, 0, 1});
    for (int s = 0; s < 2000; ++s) {
        const finite_ring& r = pool[rng() % pool.size()];
        long long u = rng() % r.size();
        if (!r.is_unit(u)) continue;
        long long l = static_cast<long long>(rng() % 41) - 20;
        long long rhs = l >= 0 ? r.sub(r.one(), r.pow(u, l))
                               : r.sub(r.one(), r.inverse(r.pow(u, -l)));
        REQUIRE(r.mul(r.sub(r.one(), u), partial_ladder(r, u, l)) == rhs);
    }
}

TEST_CASE("unit tables") {
    finite_ring r(2, {1, 0, 1}); // Z_2[X]/(X^2-1) = Z_2[X]/(X^2+1)
    auto t = unit_table(r);
    CHECK(t.order() == 2);
    CHECK(t.contains(r.one()));
    CHECK(t.contains(r.gen()));
    CHECK(unit_table(zk(5)).order() == 4);
    CHECK(unit_table(finite_ring(2, {1, 1, 1})).order() == 3); // F_4
    CHECK_THROWS_AS(unit_table(finite_ring(2, std::vector<long long>(21, 1)), 1'000'000),
                    ring_too_large);
}

TEST_CASE("unit counts through maximal ideals") {
    finite_ring r(4, {1, 1, 1});
    CHECK(unit_count_by_maximal_ideals(r) == 12);
    CHECK(unit_count_by_maximal_ideals(r) == unit_table(r).order());
    finite_ring f4(2, {1, 1, 1});
    CHECK(unit_count_by_maximal_ideals(f4) == 3);
    finite_ring lam(2, {1, 1}); // Lambda of the smallest wreath product, size 2
    CHECK(unit_count_by_maximal_ideals(lam) == 1);

    std::mt19937 rng(29);
    for (int s = 0; s < 50; ++s) {
        long long k = 2 + rng() % 30;
        finite_ring rr = zk(k);
        REQUIRE(unit_count_by_maximal_ideals(rr) == unit_table(rr).order());
    }
}

TEST_CASE("unit quotient sizes") {
    finite_ring z5 = zk(5);
    auto t5 = unit_table(z5);
    CHECK(unit_quotient_size(z5, t5, {z5.from_int(-1), z5.from_int(-1)}) == 2);
    finite_ring f4(2, {1, 1, 1});
    auto t4 = unit_table(f4);
    CHECK(unit_quotient_size(f4, t4, {f4.one(), f4.gen()}) == 1);
    CHECK(unit_quotient_size(z5, t5, t5.elems) == 1);
    CHECK_THROWS_AS(unit_quotient_size(z5, t5, {z5.zero()}), non_unit_generator);
}

TEST_CASE("cyclotomic unit rank") {
    CHECK(unit_rank_cyclotomic({1, 2, 3, 6}) == 0);
    CHECK(unit_rank_cyclotomic({5}) == 1);
    CHECK(unit_rank_cyclotomic({1, 2}) == 0);
    CHECK(unit_rank_cyclotomic({7, 9}) == 4);
}

TEST_CASE("principal quotients") {
    finite_ring r(5, {4, 0, 1}); // Z_5[X]/(X^2-1)
    quotient_ring lam(r, r.index({1, 1}));
    CHECK(lam.size() == 5);

    quotient_ring full(r, r.zero());
    CHECK(full.size() == r.size());

    quotient_ring trivial(r, r.one());
    CHECK(trivial.size() == 1);
    CHECK(trivial.unit_count() == 1);
}

TEST_CASE("projection to the quotient is a ring map with unit images") {
    std::vector<std::pair<finite_ring, std::vector<long long>>> cases = {
        {finite_ring(3, {2, 0, 1}), {1, 1}},          // 9 elements
        {finite_ring(5, {4, 0, 0, 1}), {1, 1, 1}},    // 125 elements, group ring of Z_3
        {finite_ring(31, {30, 1}), {17}},             // Z_31
    };
    for (auto& [r, nu_coeffs] : cases) {
        quotient_ring q(r, r.index(nu_coeffs));
        for (long long a = 0; a < r.size(); ++a) {
            for (long long b = 0; b < r.size(); ++b) {
                REQUIRE(q.project(r.mul(a, b)) == q.mul(q.project(a), q.project(b)));
                REQUIRE(q.project(r.add(a, b)) == q.add(q.project(a), q.project(b)));
            }
            if (r.is_unit(a)) REQUIRE(q.is_unit(q.project(a)));
        }
    }
}

TEST_CASE("trivial units form a subgroup of bounded order") {
    // T = <-1, alpha> in R = Z_k[X]/(X^l - 1) has order dividing 2l
    for (long long k : {2, 3, 4, 5})
        for (long long l : {2, 3, 4}) {
            std::vector<long long> f(l + 1, 0);
            f[0] = mod_reduce(-1, k);
            f[l] = 1;
            finite_ring r(k, f);
            auto t = closure_under<long long>({r.neg(r.one()), r.gen()}, r.one(),
                                              [&r](long long a, long long b) { return r.mul(a, b); });
            REQUIRE(2 * l % static_cast<long long>(t.size()) == 0);
        }
}
