#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "nlab/group.hpp"
#include "nlab/nielsen.hpp"
#include "nlab/ring_group.hpp"

namespace nlab {

// An automorphism stored as a permutation of element indices, verified
// multiplicative on all pairs at construction.
struct automorphism {
    std::vector<uint32_t> img;

    uint32_t operator()(uint32_t e) const { return img[e]; }
};

inline bool is_automorphism(const split_group& g, const std::vector<uint32_t>& img) {
    std::vector<char> seen(g.size(), 0);
    for (uint32_t v : img) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    for (long long a = 0; a < g.size(); ++a)
        for (long long b = 0; b < g.size(); ++b)
            if (img[g.mul(static_cast<uint32_t>(a), static_cast<uint32_t>(b))] !=
                g.mul(img[a], img[b]))
                return false;
    return true;
}

inline automorphism make_automorphism(const split_group& g, std::vector<uint32_t> img) {
    if (!is_automorphism(g, img)) throw error("make_automorphism: map is not an automorphism");
    return {std::move(img)};
}

// All automorphisms, by exhausting candidate images of a fixed generating pair.
// Every element is reached from the pair by a breadth-first word; a candidate
// image pair extends along the same words and is checked for multiplicativity.
inline std::vector<automorphism> aut_group_bruteforce(const split_group& g,
                                                      long long group_cap = 256) {
    if (g.size() > group_cap) throw search_budget_exceeded("aut_group_bruteforce: group exceeds cap");

    // generating pair (may be degenerate for cyclic groups)
    uint32_t g1 = 0, g2 = 0;
    {
        bool found = false;
        for (long long a = 0; a < g.size() && !found; ++a)
            for (long long b = a; b < g.size() && !found; ++b) {
                auto cl = subgroup_closure(g, {static_cast<uint32_t>(a), static_cast<uint32_t>(b)});
                if (static_cast<long long>(cl.size()) == g.size()) {
                    g1 = static_cast<uint32_t>(a);
                    g2 = static_cast<uint32_t>(b);
                    found = true;
                }
            }
        if (!found) throw search_budget_exceeded("aut_group_bruteforce: no generating pair");
    }

    // breadth-first parents: elem = parent * gen
    std::vector<int32_t> parent(g.size(), -1);
    std::vector<int8_t> via(g.size(), -1);
    std::vector<uint32_t> order;
    parent[g.identity()] = static_cast<int32_t>(g.identity());
    via[g.identity()] = -1;
    order.push_back(g.identity());
    const uint32_t gens[2] = {g1, g2};
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int t = 0; t < 2; ++t) {
            uint32_t nxt = g.mul(order[head], gens[t]);
            if (parent[nxt] < 0 && nxt != g.identity()) {
                parent[nxt] = static_cast<int32_t>(order[head]);
                via[nxt] = static_cast<int8_t>(t);
                order.push_back(nxt);
            }
        }

    std::vector<automorphism> auts;
    std::vector<uint32_t> img(g.size());
    std::vector<char> seen(g.size());
    for (long long h1 = 0; h1 < g.size(); ++h1)
        for (long long h2 = 0; h2 < g.size(); ++h2) {
            const uint32_t him[2] = {static_cast<uint32_t>(h1), static_cast<uint32_t>(h2)};
            img[g.identity()] = g.identity();
            for (std::size_t i = 1; i < order.size(); ++i) {
                uint32_t e = order[i];
                img[e] = g.mul(img[parent[e]], him[via[e]]);
            }
            // bijectivity
            std::fill(seen.begin(), seen.end(), 0);
            bool ok = true;
            for (uint32_t v : img) {
                if (seen[v]) {
                    ok = false;
                    break;
                }
                seen[v] = 1;
            }
            // multiplicativity against the generators extends to all words
            for (long long e = 0; e < g.size() && ok; ++e)
                for (int t = 0; t < 2; ++t)
                    if (img[g.mul(static_cast<uint32_t>(e), gens[t])] !=
                        g.mul(img[e], him[t])) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            auts.push_back(make_automorphism(g, img)); // full pairwise verification
        }
    return auts;
}

// Structured generators for G = R x| C with M identified with R:
//   - derivation twists X_d, one per m with nu * m = 0, acting by
//     (m', c) -> (m' + ladder_alpha(c) * m, c);
//   - unit scalings Y_u, (m', c) -> (u m', c), one per unit u;
//   - power twists Y_theta for alpha -> alpha^k a ring automorphism,
//     (m', c) -> (theta(m'), k c).
struct structured_aut_gens {
    std::vector<automorphism> derivation_twists;
    std::vector<automorphism> unit_scalings;
    std::vector<automorphism> power_twists;
    bool characteristic_verified = false; // when true the generators span Aut(G)

    std::vector<const automorphism*> all() const {
        std::vector<const automorphism*> out;
        for (const auto& a : derivation_twists) out.push_back(&a);
        for (const auto& a : unit_scalings) out.push_back(&a);
        for (const auto& a : power_twists) out.push_back(&a);
        return out;
    }
};

inline structured_aut_gens structured_gens(const ring_group& rg) {
    const split_group& g = rg.group();
    const finite_ring& r = rg.ring();
    structured_aut_gens out;

    // X_d for each m0 in the annihilator of nu
    std::vector<long long> ladders(rg.cyclic_order());
    for (long long c = 0; c < rg.cyclic_order(); ++c) ladders[c] = partial_ladder(r, rg.alpha(), c);
    for (long long m0 = 0; m0 < r.size(); ++m0) {
        if (r.mul(rg.nu(), m0) != r.zero()) continue;
        std::vector<uint32_t> img(g.size());
        for (long long e = 0; e < g.size(); ++e) {
            auto [rr, c] = rg.ring_pair(static_cast<uint32_t>(e));
            img[e] = rg.group_elem(r.add(rr, r.mul(ladders[c], m0)), c);
        }
        out.derivation_twists.push_back(make_automorphism(g, std::move(img)));
    }

    // Y_u for units u
    for (long long u = 0; u < r.size(); ++u) {
        if (!r.is_unit(u)) continue;
        std::vector<uint32_t> img(g.size());
        for (long long e = 0; e < g.size(); ++e) {
            auto [rr, c] = rg.ring_pair(static_cast<uint32_t>(e));
            img[e] = rg.group_elem(r.mul(u, rr), c);
        }
        out.unit_scalings.push_back(make_automorphism(g, std::move(img)));
    }

    // Y_theta for alpha -> alpha^k a ring automorphism (k coprime to |C|)
    for (long long k = 1; k < rg.cyclic_order(); ++k) {
        if (std::gcd(k, rg.cyclic_order()) != 1) continue;
        long long ak = r.pow(rg.alpha(), k);
        // X -> alpha^k extends to a ring map iff the modulus polynomial vanishes at alpha^k
        {
            long long acc = r.zero(), pw2 = r.one();
            for (long long fc : r.modulus_poly()) {
                acc = r.add(acc, r.mul(r.from_int(fc), pw2));
                pw2 = r.mul(pw2, ak);
            }
            if (acc != r.zero()) continue;
        }
        // theta: sum c_i X^i -> sum c_i (alpha^k)^i; an automorphism iff bijective
        std::vector<long long> theta(r.size());
        std::vector<char> hit(r.size(), 0);
        bool bij = true;
        for (long long e = 0; e < r.size() && bij; ++e) {
            auto coeffs = r.coeffs(e);
            long long acc = r.zero(), pw = r.one();
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                acc = r.add(acc, r.mul(r.from_int(coeffs[i]), pw));
                pw = r.mul(pw, ak);
            }
            theta[e] = acc;
            if (hit[acc]) bij = false;
            hit[acc] = 1;
        }
        if (!bij) continue;
        std::vector<uint32_t> img(g.size());
        for (long long e = 0; e < g.size(); ++e) {
            auto [rr, c] = rg.ring_pair(static_cast<uint32_t>(e));
            img[e] = rg.group_elem(theta[rr], mod_reduce(k * c, rg.cyclic_order()));
        }
        out.power_twists.push_back(make_automorphism(g, std::move(img)));
    }

    // The generators span Aut(G) when R is characteristic in G: alpha of full
    // order and (1 - alpha^k)^2 != 0 whenever alpha^k != 1.
    bool characteristic = true;
    long long pw = r.one();
    for (long long k = 1; k < rg.cyclic_order(); ++k) {
        pw = r.mul(pw, rg.alpha());
        if (pw == r.one()) {
            characteristic = false; // alpha order below |C|
            break;
        }
        long long oneminus = r.sub(r.one(), pw);
        if (r.mul(oneminus, oneminus) == r.zero()) {
            characteristic = false;
            break;
        }
    }
    out.characteristic_verified = characteristic;
    return out;
}

struct tsystem_result {
    long long count = 0;
    bool upper_bound_only = false;
    std::vector<long long> orbit_sizes; // in Nielsen classes per T-system
};

// Orbits of the Nielsen classes under the given automorphisms.
inline tsystem_result tsystem_count(const split_group&, const nielsen_orbits_result& orbits,
                                    const std::vector<const automorphism*>& auts,
                                    bool generators_span_aut) {
    const long long nclasses = orbits.class_count();
    std::vector<int> parent(nclasses);
    for (long long i = 0; i < nclasses; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<uint32_t> image;
    for (long long c = 0; c < nclasses; ++c) {
        const auto& rep = orbits.partition().classes[c].rep;
        for (const automorphism* phi : auts) {
            image.clear();
            for (uint32_t e : rep) image.push_back((*phi)(e));
            int other = orbits.class_of(image);
            int a = find(static_cast<int>(c)), b = find(other);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }

    tsystem_result out;
    out.upper_bound_only = !generators_span_aut;
    std::vector<long long> sizes(nclasses, 0);
    for (long long c = 0; c < nclasses; ++c) ++sizes[find(static_cast<int>(c))];
    for (long long c = 0; c < nclasses; ++c)
        if (sizes[c] > 0) {
            ++out.count;
            out.orbit_sizes.push_back(sizes[c]);
        }
    return out;
}

// Convenience: count T_n-systems with the requested backend.
enum class aut_backend { bruteforce, structured };

inline tsystem_result tsystems(const split_group& g, const nielsen_orbits_result& orbits,
                               aut_backend backend, long long aut_cap = 256) {
    if (backend == aut_backend::bruteforce) {
        auto auts = aut_group_bruteforce(g, aut_cap);
        std::vector<const automorphism*> ptrs;
        for (const auto& a : auts) ptrs.push_back(&a);
        return tsystem_count(g, orbits, ptrs, true);
    }
    ring_group rg = ring_group::from_spec(g.spec());
    auto gens = structured_gens(rg);
    // note: orbits must have been computed on an identically-shaped group
    return tsystem_count(g, orbits, gens.all(), gens.characteristic_verified);
}

} // namespace nlab
