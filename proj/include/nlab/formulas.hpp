#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nlab/arith.hpp"
#include "nlab/group.hpp"
#include "nlab/polyfp.hpp"
#include "nlab/ring.hpp"

#include "json.hpp"

namespace nlab {

struct rational {
    long long num = 0;
    long long den = 1;

    rational() = default;
    rational(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    bool is_integer() const { return den == 1; }
    bool equals_integer(long long v) const { return den == 1 && num == v; }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
    bool operator==(const rational&) const = default;
};

struct formula_value {
    enum class kind { finite, infinite, open };
    kind k = kind::finite;
    long long n = 0;

    static formula_value of(long long v) { return {kind::finite, v}; }
    static formula_value infinite() { return {kind::infinite, 0}; }
    static formula_value open() { return {kind::open, 0}; }

    bool is_finite() const { return k == kind::finite; }
    std::string str() const {
        if (k == kind::infinite) return "INFINITE";
        if (k == kind::open) return "OPEN";
        return std::to_string(n);
    }
    bool operator==(const formula_value&) const = default;
};

struct hypothesis {
    std::string condition;
    bool holds = true;
};

struct formula_report {
    std::string quantity;                 // n_2 | n_3 | t_2 | V2_size | class_size | unit_rank
    formula_value value;                  // the authoritative value
    std::optional<rational> closed_form;  // the literal closed formula, when it differs in kind
    std::vector<hypothesis> hypotheses;
    std::string rule;                     // identifier of the counting rule used
    std::vector<std::string> caveats;
    std::map<std::string, long long> details;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["quantity"] = quantity;
        if (value.k == formula_value::kind::finite)
            j["value"] = value.n;
        else
            j["value"] = value.str();
        if (closed_form) j["closed_form"] = closed_form->str();
        j["hypotheses"] = nlohmann::json::array();
        for (const auto& h : hypotheses) j["hypotheses"].push_back({{"condition", h.condition}, {"holds", h.holds}});
        j["rule"] = rule;
        j["caveats"] = caveats;
        j["details"] = details;
        return j;
    }
};

// |R^x| for a ring of the given size whose maximal ideals have residue fields
// recorded in (prime, profile) pairs; exact integer arithmetic.
inline long long unit_count_from_profiles(
    long long ring_size, const std::vector<std::pair<long long, factor_degree_profile>>& profiles) {
    long long count = ring_size;
    for (const auto& [p, profile] : profiles)
        for (const auto& dc : profile) {
            long long q = 1;
            for (int i = 0; i < dc.degree; ++i) q *= p;
            for (int i = 0; i < dc.count; ++i) {
                count /= q;
                count *= q - 1;
            }
        }
    return count;
}

// --- soluble Baumslag-Solitar groups BS(1, l) -----------------------------------

inline formula_report formula_bs(long long l) {
    if (l == 0) throw bad_action("formula_bs: l must be nonzero");
    formula_report rep;
    rep.quantity = "n_2";
    rep.rule = "bs.prime-power-exponent";
    long long al = l < 0 ? -l : l;
    auto fac = factorize(al);
    bool prime_power = fac.size() <= 1;
    rep.hypotheses.push_back({"|l| is a prime power", prime_power});
    if (prime_power) {
        long long d = fac.empty() ? 0 : fac[0].exponent;
        rep.value = formula_value::of(std::max<long long>(d, 1));
    } else {
        rep.value = formula_value::infinite();
    }
    rep.details["t_2"] = 1;
    rep.details["n_3"] = 1;
    return rep;
}

// --- split metacyclic groups Z_k x|_alpha Z_l ------------------------------------

inline formula_report formula_metacyclic(long long k, long long l, long long alpha) {
    if (k < 1 || l < 1) throw bad_action("formula_metacyclic: k, l must be >= 1");
    alpha = mod_reduce(alpha, k);
    if (std::gcd(alpha, k) != 1) throw bad_action("formula_metacyclic: alpha is not a unit mod k");
    if (pow_mod(alpha, l, k) != mod_reduce(1, k))
        throw bad_action("formula_metacyclic: alpha^l != 1 mod k");

    formula_report rep;
    rep.quantity = "n_2";
    rep.rule = "metacyclic.totient-quotient";
    rep.hypotheses.push_back({"alpha is a unit mod k", true});
    rep.hypotheses.push_back({"alpha^l = 1 mod k", true});

    // lambda = gcd(k, integer lift of 1 + alpha + ... + alpha^{l-1});
    // the lift choice is irrelevant modulo k.
    long long lift = 0, pw = mod_reduce(1, k);
    for (long long i = 0; i < l; ++i) {
        lift += pw;
        pw = mul_mod(pw, alpha, k);
    }
    long long lambda = std::gcd(k, lift);
    long long omega = unit_subgroup_order(lambda, {-1, alpha});
    rep.value = formula_value::of(totient(lambda) / omega);
    rep.details["lambda"] = lambda;
    rep.details["omega"] = omega;

    long long e = std::gcd(k, mod_reduce(1 - alpha, k) == 0 ? k : mod_reduce(1 - alpha, k));
    rep.details["e"] = e;
    // |V_2| = (k phi(k))/(e phi(e)) |V_2(Z_e x Z_l)|; both ratios are integral
    long long v2ab = count_Vn(split_group(group_spec::abelian({e, l})), 2);
    long long v2 = (k / e) * (totient(k) / totient(e)) * v2ab;
    rep.details["V2_size"] = v2;
    rep.details["V2_ab"] = v2ab;
    rep.details["t_2"] = 1;
    rep.details["n_3"] = 1;
    return rep;
}

// --- lamplighter groups Z_k wr Z_l ----------------------------------------------

// Shared data for the finite lamplighter counts.
struct lamplighter_data {
    long long k, l;
    long long l_prime;             // 2l unless k = 2
    long long lambda_size;         // k^{l-1}
    long long lambda_units;        // |Lambda^x| from the sigma_l factor profile
    long long t_lambda;            // |T_Lambda| by closure in Lambda
    long long n2_true;             // |Lambda^x| / |T_Lambda|
    rational printed;              // (k^{l-1} / l') prod (1 - p^-d)^{nu}
};

inline lamplighter_data lamplighter_counts(long long k, long long l) {
    if (k < 2 || l < 2) throw bad_action("lamplighter_counts: k, l must be >= 2");
    lamplighter_data d{};
    d.k = k;
    d.l = l;
    d.l_prime = (k == 2) ? l : 2 * l;
    d.lambda_size = 1;
    for (long long i = 0; i + 1 < l; ++i) {
        if (d.lambda_size > (1LL << 60) / k)
            throw search_budget_exceeded("lamplighter_counts: k^(l-1) too large");
        d.lambda_size *= k;
    }

    std::vector<std::pair<long long, factor_degree_profile>> profiles;
    for (long long p : prime_divisors(k)) profiles.push_back({p, nu_count(p, l)});
    d.lambda_units = unit_count_from_profiles(d.lambda_size, profiles);

    // Lambda is presented by the monic polynomial 1 + X + ... + X^{l-1} over Z_k.
    finite_ring lambda(k, std::vector<long long>(l, 1));
    unit_group_table units = unit_table(lambda);
    if (units.order() != d.lambda_units)
        throw error("lamplighter_counts: unit count mismatch between profile and table");
    auto t = closure_under<long long>({lambda.neg(lambda.one()), lambda.gen()}, lambda.one(),
                                      [&lambda](long long a, long long b) { return lambda.mul(a, b); });
    d.t_lambda = static_cast<long long>(t.size());
    d.n2_true = d.lambda_units / d.t_lambda;
    d.printed = rational(d.lambda_units, d.l_prime);
    return d;
}

// n_2 of a finite lamplighter: the literal closed formula next to the
// unit-quotient count, with a caveat when they disagree (they provably do for
// l = 2, where the image of a in Lambda is -1 and |T_Lambda| < l').
inline formula_report formula_lamplighter_finite(long long k, long long l) {
    auto d = lamplighter_counts(k, l);
    formula_report rep;
    rep.quantity = "n_2";
    rep.rule = "lamplighter.unit-quotient";
    rep.hypotheses.push_back({"k finite and >= 2", true});
    rep.hypotheses.push_back({"l finite and >= 2", true});
    rep.value = formula_value::of(d.n2_true);
    rep.closed_form = d.printed;
    rep.details["lambda_size"] = d.lambda_size;
    rep.details["lambda_units"] = d.lambda_units;
    rep.details["t_lambda"] = d.t_lambda;
    rep.details["l_prime"] = d.l_prime;
    rep.details["t_2"] = 1;
    rep.details["n_3"] = 1;
    if (!d.printed.equals_integer(d.n2_true))
        rep.caveats.push_back("closed form " + d.printed.str() + " differs from the unit-quotient count " +
                              std::to_string(d.n2_true) + " (l' != |T_Lambda|, an l = 2 effect)");
    return rep;
}

// |V_2(Z_k wr Z_l)| and the per-class size.
inline formula_report formula_lamplighter_V2(long long k, long long l) {
    auto d = lamplighter_counts(k, l);
    formula_report rep;
    rep.quantity = "V2_size";
    rep.rule = "lamplighter.v2-product";
    rep.hypotheses.push_back({"k finite and >= 2", true});
    rep.hypotheses.push_back({"l finite and >= 2", true});

    long long ring_size = d.lambda_size * k; // k^l
    std::vector<std::pair<long long, factor_degree_profile>> profiles;
    for (long long p : prime_divisors(k)) profiles.push_back({p, mu_count(p, l)});
    long long ring_units = unit_count_from_profiles(ring_size, profiles);

    std::vector<long long> f(l + 1, 0);
    f[0] = mod_reduce(-1, k);
    f[l] = 1;
    finite_ring r(k, f);
    if (unit_table(r).order() != ring_units)
        throw error("formula_lamplighter_V2: unit count mismatch between profile and table");

    long long v2ab = count_Vn(split_group(group_spec::abelian({k, l})), 2);
    // phi(k) divides |R^x| (units surject onto Z_k^x), keeping this integral
    long long v2 = d.lambda_size * (ring_units / totient(k)) * v2ab;
    rep.value = formula_value::of(v2);
    rep.details["ring_units"] = ring_units;
    rep.details["V2_ab"] = v2ab;

    long long class_size_printed = d.l_prime * d.lambda_size * v2ab;
    long long class_size_true = v2 / d.n2_true;
    rep.details["class_size"] = class_size_true;
    rep.details["class_size_closed_form"] = class_size_printed;
    if (class_size_printed != class_size_true) {
        std::string why = l == 2 ? "l' != |T_Lambda| at l = 2"
                                 : "X - 1 divides both X^l - 1 and 1 + ... + X^(l-1) when a prime "
                                   "divides both k and l, so one mu/nu exponent does not cancel";
        rep.caveats.push_back("closed-form class size " + std::to_string(class_size_printed) +
                              " differs from |V_2|/n_2 = " + std::to_string(class_size_true) + " (" +
                              why + ")");
    }
    return rep;
}

// Lamplighters with an infinite side; the convention k = 0 or l = 0 denotes Z.
inline formula_report formula_lamplighter_mixed(long long k, long long l) {
    if (k == 1 || l == 1 || k < 0 || l < 0)
        throw bad_action("formula_lamplighter_mixed: sides must be 0 (infinite) or >= 2");
    formula_report rep;
    rep.quantity = "n_2";
    if (k > 0 && l > 0) return formula_lamplighter_finite(k, l);

    if (k > 0 && l == 0) {
        rep.rule = "lamplighter.infinite-base";
        auto fac = factorize(k);
        bool kp = fac.size() == 1 && fac[0].exponent == 1;
        rep.hypotheses.push_back({"k prime", kp});
        rep.value = kp ? formula_value::of(std::max<long long>((k - 1) / 2, 1))
                       : formula_value::infinite();
        rep.details["n_3"] = 1;
        rep.details["t_2"] = 1;
        return rep;
    }
    if (k == 0 && l > 0) {
        rep.rule = "lamplighter.infinite-lamps";
        bool special = l == 2 || l == 3 || l == 4 || l == 6;
        rep.hypotheses.push_back({"l in {2,3,4,6} (trivial units of the cyclotomic quotient)", special});
        rep.value = special ? formula_value::of(1) : formula_value::infinite();
        std::vector<long long> divisors;
        for (long long d = 2; d <= l; ++d)
            if (l % d == 0) divisors.push_back(d);
        rep.details["unit_rank"] = unit_rank_cyclotomic(divisors);
        rep.details["n_3"] = 1;
        rep.details["t_2"] = 1;
        return rep;
    }
    // Z wr Z
    rep.rule = "lamplighter.z-wr-z";
    rep.value = formula_value::of(1);
    rep.details["t_2"] = 1;
    rep.caveats.push_back(
        "n_3 is OPEN: equal to 1 exactly when SL_2 = E_2 over the integral Laurent polynomial ring");
    return rep;
}

// --- F_p^d x| Z ------------------------------------------------------------------

inline long long det_mod_p(std::vector<std::vector<long long>> m, long long p) {
    const int n = static_cast<int>(m.size());
    long long det = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (mod_reduce(m[r][c], p) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = mod_reduce(-det, p);
        }
        long long inv = inverse_mod(m[c][c], p);
        det = mul_mod(det, m[c][c], p);
        for (int r = c + 1; r < n; ++r) {
            long long f = mul_mod(mod_reduce(m[r][c], p), inv, p);
            for (int j = c; j < n; ++j) m[r][j] = mod_reduce(m[r][j] - f * m[c][j], p);
        }
    }
    return det;
}

// n_{rk}(F_p^d x|_A Z) = |R^x / <-1, X>| with R = F_p[X]/(P), P the first
// nonunit invariant factor of A. When the module is cyclic P is the full
// characteristic polynomial; otherwise the same quotient over R/(a_1) counts
// classes at n = rk(G).
inline formula_report formula_fpd_semidirect_Z(long long p, const std::vector<std::vector<long long>>& a) {
    if (det_mod_p(a, p) == 0) throw singular_action("formula_fpd_semidirect_Z: A is singular mod p");
    auto inv = smith_invariant_factors(a, p);
    if (inv.empty()) throw singular_action("formula_fpd_semidirect_Z: no nonunit invariant factor");
    formula_report rep;
    rep.rule = "fpd.unit-quotient";
    bool cyclic = inv.size() == 1;
    rep.hypotheses.push_back({"A invertible over F_p", true});
    rep.hypotheses.push_back({"module cyclic over F_p[X]", cyclic});
    const poly_fp& first = inv.front();
    finite_ring r(p, first.c);
    unit_group_table units = unit_table(r);
    if (unit_count_by_maximal_ideals(r) != units.order())
        throw error("formula_fpd_semidirect_Z: unit count mismatch between ideal product and table");
    long long t = static_cast<long long>(
        closure_under<long long>({r.neg(r.one()), r.gen()}, r.one(),
                                 [&r](long long x, long long y) { return r.mul(x, y); })
            .size());
    long long rank_g = static_cast<long long>(inv.size()) + 1;
    rep.quantity = "n_" + std::to_string(rank_g);
    rep.value = formula_value::of(units.order() / t);
    rep.details["rank"] = rank_g;
    rep.details["ring_size"] = r.size();
    rep.details["ring_units"] = units.order();
    rep.details["trivial_units"] = t;
    rep.details["first_factor_degree"] = first.deg();
    rep.details["n_above_rank"] = 1;
    if (!cyclic)
        rep.caveats.push_back("module not cyclic: count taken over the quotient by the first invariant factor");
    rep.caveats.push_back(
        "unit count follows |R| prod_m (1 - 1/|R/m|) over maximal ideals, cross-checked by "
        "exhaustive enumeration; the exponent variant prod (1 - p^(d_i - k)) misstates the "
        "residue sizes (it already fails for deg P = 1) and is not used");
    return rep;
}

} // namespace nlab
