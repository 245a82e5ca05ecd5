#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "nlab/errors.hpp"

namespace nlab {

inline long long mod_reduce(long long v, long long d) {
    if (d == 0) return v; // modulus 0 models the integers
    v %= d;
    if (v < 0) v += d;
    return v;
}

inline long long mul_mod(long long a, long long b, long long d) {
    if (d == 0) return a * b;
    return static_cast<long long>(static_cast<__int128>(a) * b % d);
}

inline long long pow_mod(long long base, long long exp, long long d) {
    base = mod_reduce(base, d);
    long long acc = mod_reduce(1, d);
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, base, d);
        base = mul_mod(base, base, d);
        exp >>= 1;
    }
    return acc;
}

// Extended Euclid: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline long long inverse_mod(long long a, long long d) {
    a = mod_reduce(a, d);
    long long x, y;
    long long g = ext_gcd(a, d, x, y);
    if (g != 1) throw non_unit("inverse_mod: element is not a unit");
    return mod_reduce(x, d);
}

struct prime_power {
    long long prime;
    int exponent;
    bool operator==(const prime_power&) const = default;
};

using factorization = std::vector<prime_power>;

// Trial division. Inputs are group orders and moduli at desk scale.
inline factorization factorize(long long n) {
    if (n < 1) throw bad_modulus("factorize: input must be positive");
    factorization out;
    for (long long p : {2LL, 3LL}) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.push_back({p, e});
    }
    for (long long p = 5; p * p <= n; p += 6) {
        for (long long q : {p, p + 2}) {
            int e = 0;
            while (n % q == 0) n /= q, ++e;
            if (e) out.push_back({q, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> ps;
    for (const auto& pp : factorize(n)) ps.push_back(pp.prime);
    return ps;
}

// Euler totient, extended by totient(0) = 2 (the unit count of the integers).
inline long long totient(long long d) {
    if (d == 0) return 2;
    long long out = d;
    for (const auto& pp : factorize(d)) out = out / pp.prime * (pp.prime - 1);
    return out;
}

// Element of Z_d, with d = 0 modelling the integers.
struct zmod {
    long long mod = 0;
    long long value = 0;

    zmod() = default;
    zmod(long long d, long long v) : mod(d), value(mod_reduce(v, d)) {}

    zmod operator+(const zmod& o) const { return check(o), zmod(mod, value + o.value); }
    zmod operator-(const zmod& o) const { return check(o), zmod(mod, value - o.value); }
    zmod operator*(const zmod& o) const { return check(o), zmod(mod, mul_mod(value, o.value, mod)); }
    zmod operator-() const { return zmod(mod, -value); }
    bool operator==(const zmod&) const = default;

    bool is_unit() const {
        if (mod == 0) return value == 1 || value == -1;
        return std::gcd(value, mod) == 1;
    }
    zmod inverse() const {
        if (mod == 0) {
            if (!is_unit()) throw non_unit("zmod: inverse over the integers");
            return *this;
        }
        return zmod(mod, inverse_mod(value, mod));
    }

private:
    void check(const zmod& o) const {
        if (mod != o.mod) throw bad_modulus("zmod: mixed moduli");
    }
};

// Closure of a generating set inside a finite group given by its product map.
template <typename Elem, typename Mul, typename Hash = std::hash<Elem>>
std::vector<Elem> closure_under(const std::vector<Elem>& gens, Elem identity, Mul mul) {
    std::unordered_set<Elem, Hash> seen{identity};
    std::vector<Elem> order{identity};
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const Elem& g : gens) {
            Elem next = mul(order[head], g);
            if (seen.insert(next).second) order.push_back(next);
        }
    }
    return order;
}

// Order of the subgroup of Z_d^x generated by `gens`.
inline long long unit_subgroup_order(long long d, const std::vector<long long>& gens) {
    if (d < 1) throw bad_modulus("unit_subgroup_order: modulus must be positive");
    std::vector<long long> reduced;
    for (long long g : gens) {
        long long v = mod_reduce(g, d);
        if (std::gcd(v, d) != 1) throw non_unit_generator("unit_subgroup_order: generator is not a unit");
        reduced.push_back(v);
    }
    auto elems = closure_under<long long>(reduced, mod_reduce(1, d),
                                          [d](long long a, long long b) { return mul_mod(a, b, d); });
    return static_cast<long long>(elems.size());
}

// Invariant factor decomposition of a direct product of cyclic groups.
// Factors equal to 1 are dropped; the result is an increasing divisibility chain.
inline std::vector<long long> invariant_factors_of_cyclics(std::vector<long long> orders) {
    std::vector<factorization> facs;
    std::size_t slots = 0;
    for (long long d : orders) {
        if (d <= 0) throw bad_modulus("invariant_factors_of_cyclics: orders must be finite and positive");
        facs.push_back(factorize(d));
        slots = std::max(slots, static_cast<std::size_t>(1) * facs.back().size());
    }
    // Per prime, sort exponents descending; invariant factor j collects the j-th largest of each prime.
    std::vector<std::pair<long long, std::vector<int>>> by_prime;
    for (const auto& f : facs)
        for (const auto& pp : f) {
            auto it = std::find_if(by_prime.begin(), by_prime.end(),
                                   [&](const auto& e) { return e.first == pp.prime; });
            if (it == by_prime.end())
                by_prime.push_back({pp.prime, {pp.exponent}});
            else
                it->second.push_back(pp.exponent);
        }
    std::size_t rank = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.rbegin(), es.rend());
        rank = std::max(rank, es.size());
    }
    std::vector<long long> inv(rank, 1);
    for (const auto& [p, es] : by_prime)
        for (std::size_t j = 0; j < es.size(); ++j) {
            long long q = 1;
            for (int t = 0; t < es[j]; ++t) q *= p;
            inv[j] *= q;
        }
    std::sort(inv.begin(), inv.end());
    return inv;
}

} // namespace nlab
