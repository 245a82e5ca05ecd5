#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "nlab/group.hpp"
#include "nlab/nielsen.hpp"
#include "nlab/ring_group.hpp"

namespace nlab {

// Determinant invariant for a generating k-vector of an abelian group with a
// fixed cyclic decomposition: the determinant over Z_d of the coordinate
// matrix, d = gcd of the factor orders, stored up to sign as min(v, d - v).
struct det_invariant_value {
    long long modulus = 1;
    long long value = 0; // canonical representative, 0 <= value <= modulus/2
    bool operator==(const det_invariant_value&) const = default;
};

inline long long det_mod(std::vector<std::vector<long long>> m, long long d) {
    if (d == 1) return 0;
    const int n = static_cast<int>(m.size());
    for (auto& row : m)
        for (auto& v : row) v = mod_reduce(v, d);
    // fraction-free elimination via gcd pivoting (d need not be prime)
    long long det = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        // clear the column below with Euclidean steps (row swaps flip the sign)
        for (int r = pivot + 1; r < n; ++r) {
            while (m[r][c] != 0) {
                long long q = m[pivot][c] / m[r][c];
                for (int j = c; j < n; ++j) m[pivot][j] = mod_reduce(m[pivot][j] - q * m[r][j], d);
                std::swap(m[pivot], m[r]);
                det = mod_reduce(-det, d);
            }
        }
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = mod_reduce(-det, d);
        }
        det = mul_mod(det, m[c][c], d);
        if (det == 0) return 0;
    }
    return det;
}

inline det_invariant_value canonical_pm(long long v, long long d) {
    if (d == 0) return {0, v < 0 ? -v : v}; // over the integers: absolute value
    v = mod_reduce(v, d);
    return {d, std::min(v, mod_reduce(-v, d))};
}

// The group must be abelian and the vector size must equal both the number of
// factors in its fixed cyclic decomposition (module factors plus C when l > 1)
// and the rank of the group.
inline det_invariant_value det_invariant(const split_group& g, const std::vector<uint32_t>& vec) {
    if (!g.abelian()) throw rank_mismatch("det_invariant: group is not abelian");
    std::vector<long long> factors = g.spec().factors;
    if (g.cyclic_order() > 1) factors.push_back(g.cyclic_order());
    const int k = static_cast<int>(factors.size());
    if (static_cast<int>(vec.size()) != k || rank(g) != k)
        throw rank_mismatch("det_invariant: decomposition size, rank and vector size must agree");
    long long d = 0;
    for (long long f : factors) d = std::gcd(d, f);
    std::vector<std::vector<long long>> m;
    for (uint32_t e : vec) {
        auto [mv, c] = g.decode(e);
        if (g.cyclic_order() > 1) mv.push_back(c);
        m.push_back(std::move(mv));
    }
    return canonical_pm(det_mod(std::move(m), d), d);
}

// --- invariants for G = R x| C --------------------------------------------------

// D_a(g, g') = r d_a(c') - r' d_a(c) with d_a(a^k) = 1 + alpha + ... + alpha^{k-1},
// computed in R. Well defined in Lambda = R/nu R regardless of exponent lifts.
inline long long d_a_in_ring(const ring_group& rg, uint32_t g1, uint32_t g2) {
    const finite_ring& r = rg.ring();
    auto [r1, c1] = rg.ring_pair(g1);
    auto [r2, c2] = rg.ring_pair(g2);
    long long lad2 = partial_ladder(r, rg.alpha(), c2);
    long long lad1 = partial_ladder(r, rg.alpha(), c1);
    return r.sub(r.mul(r1, lad2), r.mul(r2, lad1));
}

// Image of D_a in Lambda (a coset id of the quotient ring).
inline int d_a(const ring_group& rg, uint32_t g1, uint32_t g2) {
    return rg.lambda().project(d_a_in_ring(rg, g1, g2));
}

// Delta_a: the coset T_Lambda * D_a(g), canonicalized as the least unit coset id.
struct delta_invariant_value {
    int coset_rep = -1; // least coset id in T_Lambda * D_a
    bool operator==(const delta_invariant_value&) const = default;
};

inline delta_invariant_value delta_of_value(const ring_group& rg, int da) {
    int best = -1;
    for (int t : rg.t_lambda()) {
        int v = rg.lambda().mul(t, da);
        if (best < 0 || v < best) best = v;
    }
    return {best};
}

inline bool pair_generates(const ring_group& rg, uint32_t g1, uint32_t g2) {
    auto closure = subgroup_closure(rg.group(), {g1, g2});
    return static_cast<long long>(closure.size()) == rg.group().size();
}

inline delta_invariant_value delta_invariant(const ring_group& rg, uint32_t g1, uint32_t g2,
                                             bool check_generates = true) {
    if (check_generates && !pair_generates(rg, g1, g2))
        throw not_generating("delta_invariant: pair does not generate");
    return delta_of_value(rg, d_a(rg, g1, g2));
}

// Abelianized determinant of a pair, over Z_d with d = gcd(|R_C|, l).
inline det_invariant_value det_ab_pair(const ring_group& rg, uint32_t g1, uint32_t g2) {
    long long e = rg.rc_order();
    long long d = std::gcd(e, rg.cyclic_order());
    auto [r1, c1] = rg.ring_pair(g1);
    auto [r2, c2] = rg.ring_pair(g2);
    long long x1 = rg.rc_dlog(rg.rc().project(r1));
    long long x2 = rg.rc_dlog(rg.rc().project(r2));
    long long det = mod_reduce(x1 * c2 - x2 * c1, d == 0 ? 1 : d);
    return canonical_pm(det, d == 0 ? 1 : d);
}

// Complete equivalence test for generating pairs: abelianized determinants agree
// up to sign and the Delta_a cosets coincide.
inline bool pairs_equivalent(const ring_group& rg, uint32_t g1, uint32_t g2, uint32_t h1,
                             uint32_t h2, bool check_generates = true) {
    if (check_generates && (!pair_generates(rg, g1, g2) || !pair_generates(rg, h1, h2)))
        throw not_generating("pairs_equivalent: input does not generate");
    return det_ab_pair(rg, g1, g2) == det_ab_pair(rg, h1, h2) &&
           delta_invariant(rg, g1, g2, false) == delta_invariant(rg, h1, h2, false);
}

inline bool nu_is_nilpotent(const ring_group& rg) {
    const finite_ring& r = rg.ring();
    long long x = rg.nu();
    for (long long sz = r.size(); sz > 0; sz >>= 1) {
        if (x == r.zero()) return true;
        x = r.mul(x, x);
    }
    return x == r.zero();
}

// Generation test through the invariant: sigma(g) must generate C and D_a(g)
// must be a unit of Lambda. Valid when nu is nilpotent.
inline bool generates_by_invariant(const ring_group& rg, uint32_t g1, uint32_t g2) {
    if (!nu_is_nilpotent(rg))
        throw nu_not_nilpotent("generates_by_invariant: nu is not nilpotent; use the closure test");
    long long c1 = rg.group().cyc(g1), c2 = rg.group().cyc(g2);
    long long l = rg.cyclic_order();
    if (std::gcd(std::gcd(c1, c2), l) != 1) return false;
    return rg.lambda().is_unit(d_a(rg, g1, g2));
}

} // namespace nlab
