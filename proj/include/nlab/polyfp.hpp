#pragma once

#include <cassert>
#include <vector>

#include "nlab/arith.hpp"
#include "nlab/errors.hpp"

namespace nlab {

// Univariate polynomial over F_p, coefficients in [0, p), lowest degree first.
// The zero polynomial has an empty coefficient list.
struct poly_fp {
    long long p = 2;
    std::vector<long long> c;

    poly_fp() = default;
    poly_fp(long long p_, std::vector<long long> coeffs) : p(p_), c(std::move(coeffs)) { trim(); }

    static poly_fp zero(long long p) { return poly_fp(p, {}); }
    static poly_fp one(long long p) { return poly_fp(p, {1}); }
    static poly_fp x(long long p) { return poly_fp(p, {0, 1}); }
    // 1 + X + ... + X^{l-1}
    static poly_fp sigma(long long p, long long l) { return poly_fp(p, std::vector<long long>(l, 1)); }
    static poly_fp x_pow_minus_one(long long p, long long l) {
        std::vector<long long> c(l + 1, 0);
        c[0] = p - 1;
        c[l] = 1;
        return poly_fp(p, std::move(c));
    }

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    long long lead() const { return c.back(); }

    void trim() {
        for (auto& v : c) v = mod_reduce(v, p);
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const poly_fp& o) const { return p == o.p && c == o.c; }
};

inline void require_same_char(const poly_fp& f, const poly_fp& g) {
    if (f.p != g.p) throw char_mismatch("polynomials over different prime fields");
}

inline poly_fp poly_add(const poly_fp& f, const poly_fp& g) {
    require_same_char(f, g);
    std::vector<long long> c(std::max(f.c.size(), g.c.size()), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) c[i] += f.c[i];
    for (std::size_t i = 0; i < g.c.size(); ++i) c[i] += g.c[i];
    return poly_fp(f.p, std::move(c));
}

inline poly_fp poly_sub(const poly_fp& f, const poly_fp& g) {
    require_same_char(f, g);
    std::vector<long long> c(std::max(f.c.size(), g.c.size()), 0);
    for (std::size_t i = 0; i < f.c.size(); ++i) c[i] += f.c[i];
    for (std::size_t i = 0; i < g.c.size(); ++i) c[i] -= g.c[i];
    return poly_fp(f.p, std::move(c));
}

inline poly_fp poly_mul(const poly_fp& f, const poly_fp& g) {
    require_same_char(f, g);
    if (f.is_zero() || g.is_zero()) return poly_fp::zero(f.p);
    std::vector<long long> c(f.c.size() + g.c.size() - 1, 0);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < g.c.size(); ++j)
            c[i + j] = (c[i + j] + f.c[i] * g.c[j]) % f.p;
    return poly_fp(f.p, std::move(c));
}

inline poly_fp poly_scale(const poly_fp& f, long long s) {
    std::vector<long long> c = f.c;
    for (auto& v : c) v = mul_mod(v, s, f.p);
    return poly_fp(f.p, std::move(c));
}

inline poly_fp monic(const poly_fp& f) {
    if (f.is_zero()) return f;
    return poly_scale(f, inverse_mod(f.lead(), f.p));
}

// f = q*g + r with deg r < deg g.
inline void poly_divmod(const poly_fp& f, const poly_fp& g, poly_fp& q, poly_fp& r) {
    require_same_char(f, g);
    if (g.is_zero()) throw zero_polynomial("poly_divmod: division by zero");
    long long p = f.p;
    std::vector<long long> rem = f.c;
    std::vector<long long> quo;
    long long inv_lead = inverse_mod(g.lead(), p);
    int dg = g.deg();
    if (f.deg() >= dg) quo.assign(f.deg() - dg + 1, 0);
    for (int i = f.deg(); i >= dg; --i) {
        long long coef = mod_reduce(rem[i], p);
        if (coef == 0) continue;
        long long factor = mul_mod(coef, inv_lead, p);
        quo[i - dg] = factor;
        for (int j = 0; j <= dg; ++j)
            rem[i - dg + j] = mod_reduce(rem[i - dg + j] - factor * g.c[j], p);
    }
    q = poly_fp(p, std::move(quo));
    r = poly_fp(p, std::move(rem));
}

inline poly_fp poly_mod(const poly_fp& f, const poly_fp& g) {
    poly_fp q, r;
    poly_divmod(f, g, q, r);
    return r;
}

inline poly_fp poly_div(const poly_fp& f, const poly_fp& g) {
    poly_fp q, r;
    poly_divmod(f, g, q, r);
    return q;
}

inline bool divides(const poly_fp& g, const poly_fp& f) {
    return poly_mod(f, g).is_zero();
}

// Monic gcd; gcd(f, 0) is the monic normalization of f.
inline poly_fp poly_gcd(poly_fp f, poly_fp g) {
    require_same_char(f, g);
    while (!g.is_zero()) {
        poly_fp r = poly_mod(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f);
}

inline poly_fp derivative(const poly_fp& f) {
    if (f.deg() < 1) return poly_fp::zero(f.p);
    std::vector<long long> c(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i) c[i - 1] = mul_mod(f.c[i], static_cast<long long>(i), f.p);
    return poly_fp(f.p, std::move(c));
}

// base^exp mod m.
inline poly_fp poly_pow_mod(poly_fp base, long long exp, const poly_fp& m) {
    poly_fp acc = poly_mod(poly_fp::one(base.p), m);
    base = poly_mod(base, m);
    while (exp > 0) {
        if (exp & 1) acc = poly_mod(poly_mul(acc, base), m);
        exp >>= 1;
        if (exp) base = poly_mod(poly_mul(base, base), m);
    }
    return acc;
}

// In characteristic p a polynomial with zero derivative is g(X^p); this recovers g.
// Coefficients of F_p are their own p-th roots.
inline poly_fp pth_root(const poly_fp& f) {
    std::vector<long long> c;
    for (std::size_t i = 0; i < f.c.size(); i += f.p) c.push_back(f.c[i]);
    return poly_fp(f.p, std::move(c));
}

// Product of the distinct monic irreducible factors of f.
inline poly_fp squarefree_part(const poly_fp& f) {
    if (f.is_zero()) throw zero_polynomial("squarefree_part of zero");
    if (f.deg() == 0) return poly_fp::one(f.p);
    poly_fp df = derivative(f);
    if (df.is_zero()) return squarefree_part(pth_root(f));
    poly_fp g = poly_gcd(f, df);
    poly_fp w = monic(poly_div(f, g));
    // w carries each factor of f not killed by the derivative; the p-th power part
    // survives inside g and is recovered by descent.
    poly_fp rest = g;
    while (true) {
        poly_fp h = poly_gcd(rest, w);
        if (h.deg() == 0) break;
        rest = poly_div(rest, h);
    }
    if (rest.deg() > 0) {
        // rest collects the factors of multiplicity divisible by p; it is a p-th power.
        return poly_mul(w, squarefree_part(pth_root(rest)));
    }
    return w;
}

struct degree_count {
    int degree;
    int count;
    bool operator==(const degree_count&) const = default;
};

using factor_degree_profile = std::vector<degree_count>;

// For each d, the number of distinct monic irreducible factors of f of degree d,
// by distinct-degree splitting of the squarefree part.
inline factor_degree_profile distinct_degree_profile(const poly_fp& f) {
    if (f.is_zero()) throw zero_polynomial("distinct_degree_profile of zero");
    if (f.deg() < 1) throw zero_polynomial("distinct_degree_profile needs degree >= 1");
    poly_fp rest = squarefree_part(f);
    factor_degree_profile out;
    poly_fp h = poly_mod(poly_fp::x(f.p), rest); // X^{p^d} mod rest, built incrementally
    for (int d = 1; rest.deg() >= 2 * d; ++d) {
        h = poly_pow_mod(h, f.p, rest);
        poly_fp block = poly_gcd(poly_sub(h, poly_fp::x(f.p)), rest);
        if (block.deg() > 0) {
            out.push_back({d, block.deg() / d});
            rest = poly_div(rest, block);
            h = poly_mod(h, rest);
        }
    }
    if (rest.deg() > 0) out.push_back({rest.deg(), 1});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.degree < b.degree; });
    return out;
}

// Factor-degree profile of 1 + X + ... + X^{l-1} over F_p.
inline factor_degree_profile nu_count(long long p, long long l) {
    return distinct_degree_profile(poly_fp::sigma(p, l));
}

// Factor-degree profile of X^l - 1 over F_p.
inline factor_degree_profile mu_count(long long p, long long l) {
    return distinct_degree_profile(poly_fp::x_pow_minus_one(p, l));
}

// --- Smith normal form over F_p[X] ------------------------------------------

using poly_matrix = std::vector<std::vector<poly_fp>>;

namespace detail {

inline void snf_swap_rows(poly_matrix& m, int a, int b) { std::swap(m[a], m[b]); }
inline void snf_swap_cols(poly_matrix& m, int a, int b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

// row[a] -= q * row[b]
inline void snf_row_sub(poly_matrix& m, int a, int b, const poly_fp& q) {
    for (std::size_t j = 0; j < m[a].size(); ++j) m[a][j] = poly_sub(m[a][j], poly_mul(q, m[b][j]));
}
inline void snf_col_sub(poly_matrix& m, int a, int b, const poly_fp& q) {
    for (auto& row : m) row[a] = poly_sub(row[a], poly_mul(q, row[b]));
}

} // namespace detail

// Smith normal form of a square matrix over the Euclidean domain F_p[X].
// Returns the full diagonal, monic, in divisibility order (units included).
inline std::vector<poly_fp> smith_diagonal(poly_matrix m, long long p) {
    const int n = static_cast<int>(m.size());
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n) throw non_square_matrix("smith_diagonal: matrix is not square");

    for (int t = 0; t < n; ++t) {
        while (true) {
            // Deterministic pivot: minimal-degree nonzero entry, first in row-major order.
            int pr = -1, pc = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j)
                    if (!m[i][j].is_zero() && (pr < 0 || m[i][j].deg() < m[pr][pc].deg())) pr = i, pc = j;
            if (pr < 0) break; // submatrix is zero
            detail::snf_swap_rows(m, t, pr);
            detail::snf_swap_cols(m, t, pc);

            bool clean = true;
            for (int i = t + 1; i < n; ++i)
                if (!m[i][t].is_zero()) {
                    detail::snf_row_sub(m, i, t, poly_div(m[i][t], m[t][t]));
                    clean = clean && m[i][t].is_zero();
                }
            for (int j = t + 1; j < n; ++j)
                if (!m[t][j].is_zero()) {
                    detail::snf_col_sub(m, j, t, poly_div(m[t][j], m[t][t]));
                    clean = clean && m[t][j].is_zero();
                }
            if (!clean) continue;

            // Pivot must divide the rest of the submatrix.
            int br = -1;
            for (int i = t + 1; i < n && br < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (!divides(m[t][t], m[i][j])) {
                        br = i;
                        break;
                    }
            if (br < 0) break;
            detail::snf_row_sub(m, t, br, poly_scale(poly_fp::one(p), p - 1)); // add offending row
            continue;
        }
        m[t][t] = monic(m[t][t]);
    }

    std::vector<poly_fp> diag;
    for (int t = 0; t < n; ++t) diag.push_back(m[t][t]);
    return diag;
}

// Nonunit invariant factors of the F_p[X]-module F_p^d defined by the square
// matrix A (entries in [0, p)), i.e. the Smith normal form of XI - A.
inline std::vector<poly_fp> smith_invariant_factors(const std::vector<std::vector<long long>>& a, long long p) {
    const int n = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw non_square_matrix("smith_invariant_factors: matrix is not square");
    poly_matrix m(n, std::vector<poly_fp>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long c0 = mod_reduce(-a[i][j], p);
            m[i][j] = (i == j) ? poly_fp(p, {c0, 1}) : poly_fp(p, {c0});
        }
    auto diag = smith_diagonal(std::move(m), p);
    std::vector<poly_fp> out;
    for (auto& f : diag)
        if (f.deg() >= 1) out.push_back(f);
    for (std::size_t i = 0; i + 1 < out.size(); ++i) assert(divides(out[i], out[i + 1]));
    return out;
}

} // namespace nlab
