#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlab/arith.hpp"
#include "nlab/errors.hpp"
#include "nlab/polyfp.hpp"

namespace nlab {

// Finite commutative ring Z_k[X]/(f) with f monic of degree m >= 1.
// Elements are indexed 0 .. k^m - 1 by their coefficient vector in mixed radix
// base k, lowest coefficient least significant.
class finite_ring {
public:
    finite_ring(long long k, std::vector<long long> f) : k_(k), f_(std::move(f)) {
        if (k_ < 2) throw bad_modulus("finite_ring: coefficient modulus must be >= 2");
        for (auto& c : f_) c = mod_reduce(c, k_);
        while (f_.size() > 1 && f_.back() == 0) f_.pop_back();
        if (f_.size() < 2) throw not_monic("finite_ring: modulus polynomial must have degree >= 1");
        if (f_.back() != 1) throw not_monic("finite_ring: modulus polynomial must be monic");
        m_ = static_cast<int>(f_.size()) - 1;
        size_ = 1;
        for (int i = 0; i < m_; ++i) {
            if (size_ > (1LL << 62) / k_) throw ring_too_large("finite_ring: element count overflows");
            size_ *= k_;
        }
        for (long long p : prime_divisors(k_)) {
            primes_.push_back(p);
            f_mod_p_.emplace_back(p, f_);
        }
        build_tables_if_small();
    }

    long long modulus() const { return k_; }
    int degree() const { return m_; }
    long long size() const { return size_; }
    const std::vector<long long>& modulus_poly() const { return f_; }

    std::vector<long long> coeffs(long long idx) const {
        std::vector<long long> c(m_);
        for (int i = 0; i < m_; ++i) {
            c[i] = idx % k_;
            idx /= k_;
        }
        return c;
    }

    long long index(const std::vector<long long>& c) const {
        long long idx = 0;
        for (int i = m_ - 1; i >= 0; --i) idx = idx * k_ + mod_reduce(i < static_cast<int>(c.size()) ? c[i] : 0, k_);
        return idx;
    }

    long long zero() const { return 0; }
    long long one() const { return index({1}); }
    long long from_int(long long n) const { return index({mod_reduce(n, k_)}); }

    // Image of X. For degree-1 moduli X is congruent to -f[0].
    long long gen() const {
        if (m_ == 1) return index({mod_reduce(-f_[0], k_)});
        std::vector<long long> c(m_, 0);
        c[1] = 1;
        return index(c);
    }

    long long add(long long a, long long b) const {
        if (add_table_) return (*add_table_)[a * size_ + b];
        return add_slow(a, b);
    }
    long long mul(long long a, long long b) const {
        if (mul_table_) return (*mul_table_)[a * size_ + b];
        return mul_slow(a, b);
    }
    long long neg(long long a) const {
        auto c = coeffs(a);
        for (auto& v : c) v = mod_reduce(-v, k_);
        return index(c);
    }
    long long sub(long long a, long long b) const { return add(a, neg(b)); }

    long long pow(long long a, long long e) const {
        long long acc = one();
        while (e > 0) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }

    // Units are detected prime by prime: u is invertible iff gcd(u mod p, f mod p) = 1
    // for every prime p dividing k (the kernel of reduction mod p is nilpotent).
    bool is_unit(long long a) const {
        auto c = coeffs(a);
        for (std::size_t t = 0; t < primes_.size(); ++t) {
            poly_fp u(primes_[t], c);
            if (poly_gcd(u, f_mod_p_[t]).deg() != 0) return false;
        }
        return true;
    }

    long long inverse(long long a) const {
        if (!is_unit(a)) throw non_unit("finite_ring: inverse of a non-unit");
        if (m_ == 1) return index({inverse_mod(coeffs(a)[0], k_)});
        // Finite unit group: a^{ord-1} is the inverse.
        long long prev = one(), cur = a;
        while (cur != one()) {
            prev = cur;
            cur = mul(cur, a);
        }
        return prev;
    }

    std::string describe() const {
        std::string s = "Z" + std::to_string(k_) + "[X]/(";
        bool first = true;
        for (int i = m_; i >= 0; --i) {
            if (f_[i] == 0) continue;
            if (!first) s += "+";
            first = false;
            if (i == 0 || f_[i] != 1) s += std::to_string(f_[i]);
            if (i >= 1) s += "X";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s + ")";
    }

private:
    long long add_slow(long long a, long long b) const {
        auto ca = coeffs(a), cb = coeffs(b);
        for (int i = 0; i < m_; ++i) ca[i] = mod_reduce(ca[i] + cb[i], k_);
        return index(ca);
    }

    long long mul_slow(long long a, long long b) const {
        auto ca = coeffs(a), cb = coeffs(b);
        std::vector<long long> prod(2 * m_ - 1, 0);
        for (int i = 0; i < m_; ++i) {
            if (ca[i] == 0) continue;
            for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % k_;
        }
        // reduce by the monic modulus
        for (int i = 2 * m_ - 2; i >= m_; --i) {
            long long c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (int j = 0; j < m_; ++j) prod[i - m_ + j] = mod_reduce(prod[i - m_ + j] - c * f_[j], k_);
        }
        prod.resize(m_);
        return index(prod);
    }

    void build_tables_if_small() {
        if (size_ > table_cap) return;
        add_table_.emplace(size_ * size_);
        mul_table_.emplace(size_ * size_);
        for (long long a = 0; a < size_; ++a)
            for (long long b = 0; b < size_; ++b) {
                (*add_table_)[a * size_ + b] = add_slow(a, b);
                (*mul_table_)[a * size_ + b] = mul_slow(a, b);
            }
    }

    static constexpr long long table_cap = 512;

    long long k_;
    std::vector<long long> f_;
    int m_ = 0;
    long long size_ = 0;
    std::optional<std::vector<long long>> add_table_, mul_table_;
    std::vector<long long> primes_;
    std::vector<poly_fp> f_mod_p_;
};

inline finite_ring ring_create(long long k, const std::vector<long long>& f) { return finite_ring(k, f); }

// The geometric ladder 1 + u + ... + u^{l-1}, extended to l <= 0.
inline long long partial_ladder(const finite_ring& r, long long u, long long l) {
    if (l == 0) return r.zero();
    if (l < 0) {
        if (!r.is_unit(u)) throw non_unit("partial_ladder: negative length needs a unit");
        long long ui = r.inverse(u);
        return r.neg(r.mul(ui, partial_ladder(r, ui, -l)));
    }
    long long acc = r.zero(), pw = r.one();
    for (long long i = 0; i < l; ++i) {
        acc = r.add(acc, pw);
        pw = r.mul(pw, u);
    }
    return acc;
}

// nu(G) = 1 + alpha + ... + alpha^{l-1}; requires alpha^l = 1.
inline long long norm_element(const finite_ring& r, long long alpha, long long l) {
    if (r.pow(alpha, l) != r.one()) throw order_mismatch("norm_element: alpha^l != 1");
    return partial_ladder(r, alpha, l);
}

struct unit_group_table {
    std::vector<long long> elems; // ascending element indices
    std::unordered_map<long long, int> pos;

    bool contains(long long e) const { return pos.count(e) != 0; }
    long long order() const { return static_cast<long long>(elems.size()); }
};

inline unit_group_table unit_table(const finite_ring& r, long long cap = 1'000'000) {
    if (r.size() > cap) throw ring_too_large("unit_table: ring exceeds enumeration cap");
    unit_group_table t;
    for (long long e = 0; e < r.size(); ++e)
        if (r.is_unit(e)) {
            t.pos.emplace(e, static_cast<int>(t.elems.size()));
            t.elems.push_back(e);
        }
    return t;
}

// |R^x| from the residue fields of the maximal ideals: each maximal ideal is
// (p, g) for a prime p | k and a monic irreducible factor g of f mod p, with
// residue field of size p^{deg g}.
inline long long unit_count_by_maximal_ideals(const finite_ring& r) {
    long long count = r.size();
    for (long long p : prime_divisors(r.modulus())) {
        poly_fp fp(p, r.modulus_poly());
        for (const auto& dc : distinct_degree_profile(fp)) {
            long long q = 1;
            for (int i = 0; i < dc.degree; ++i) q *= p;
            for (int i = 0; i < dc.count; ++i) {
                count /= q;       // exact: v_p(|R|) dominates the removed powers
                count *= (q - 1);
            }
        }
    }
    return count;
}

// Index |R^x : <gens>|.
inline long long unit_quotient_size(const finite_ring& r, const unit_group_table& units,
                                    const std::vector<long long>& gens) {
    for (long long g : gens)
        if (!units.contains(g)) throw non_unit_generator("unit_quotient_size: generator is not a unit");
    auto sub = closure_under<long long>(gens, r.one(), [&r](long long a, long long b) { return r.mul(a, b); });
    return units.order() / static_cast<long long>(sub.size());
}

// Torsion-free unit rank of the cyclotomic product ring attached to a divisor
// set D: sum over d in D, d > 2 of (phi(d)/2 - 1).
inline long long unit_rank_cyclotomic(const std::vector<long long>& d_set) {
    if (d_set.empty()) throw bad_modulus("unit_rank_cyclotomic: empty divisor set");
    long long rank = 0;
    for (long long d : d_set)
        if (d > 2) rank += totient(d) / 2 - 1;
    return rank;
}

// Quotient R / nu R as an explicit coset table. Cosets are numbered in order of
// their least element; coset 0 is the ideal itself.
class quotient_ring {
public:
    quotient_ring(const finite_ring& base, long long nu) : base_(&base) {
        std::vector<char> in_ideal(base.size(), 0);
        for (long long x = 0; x < base.size(); ++x) in_ideal[base.mul(nu, x)] = 1;
        ideal_.clear();
        for (long long x = 0; x < base.size(); ++x)
            if (in_ideal[x]) ideal_.push_back(x);

        coset_of_.assign(base.size(), -1);
        for (long long x = 0; x < base.size(); ++x) {
            if (coset_of_[x] >= 0) continue;
            int id = static_cast<int>(reps_.size());
            reps_.push_back(x);
            for (long long i : ideal_) coset_of_[base.add(x, i)] = id;
        }
    }

    const finite_ring& base() const { return *base_; }
    long long size() const { return static_cast<long long>(reps_.size()); }
    long long ideal_size() const { return static_cast<long long>(ideal_.size()); }

    int project(long long elem) const { return coset_of_[elem]; }
    long long rep(int coset) const { return reps_[coset]; }

    int zero() const { return coset_of_[base_->zero()]; }
    int one() const { return coset_of_[base_->one()]; }
    int add(int a, int b) const { return coset_of_[base_->add(reps_[a], reps_[b])]; }
    int mul(int a, int b) const { return coset_of_[base_->mul(reps_[a], reps_[b])]; }
    int neg(int a) const { return coset_of_[base_->neg(reps_[a])]; }

    // Unit cosets, by exhaustive pairing.
    const std::vector<int>& units() const {
        if (units_.empty() && !units_done_) {
            for (int a = 0; a < size(); ++a)
                for (int b = a; b < size(); ++b)
                    if (mul(a, b) == one()) {
                        units_.push_back(a);
                        if (b != a) units_.push_back(b);
                        break;
                    }
            std::sort(units_.begin(), units_.end());
            units_.erase(std::unique(units_.begin(), units_.end()), units_.end());
            units_done_ = true;
        }
        return units_;
    }
    long long unit_count() const { return static_cast<long long>(units().size()); }

    bool is_unit(int a) const {
        const auto& u = units();
        return std::binary_search(u.begin(), u.end(), a);
    }

private:
    const finite_ring* base_;
    std::vector<long long> ideal_;
    std::vector<int> coset_of_;
    std::vector<long long> reps_;
    mutable std::vector<int> units_;
    mutable bool units_done_ = false;
};

inline quotient_ring quotient_by_principal(const finite_ring& r, long long nu) { return quotient_ring(r, nu); }

} // namespace nlab
