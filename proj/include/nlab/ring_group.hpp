#pragma once

#include <memory>
#include <optional>

#include "nlab/group.hpp"
#include "nlab/ring.hpp"

namespace nlab {

// A split group G = R x|_alpha C whose module is the ring itself, together with
// the ring-side data needed by the two-generator invariants: R, alpha, the norm
// element, Lambda = R/nu R with its trivial-unit image, and R_C = R/(1-alpha)R.
//
// Two canonical shapes are recognized:
//   metacyclic  Z_k x| Z_l           R = Z_k[X]/(X - alpha)
//   lamplighter Z_k wr Z_l           R = Z_k[X]/(X^l - 1)
// For other specs the module is not identified with a ring here.
class ring_group {
public:
    enum class shape { metacyclic, lamplighter };

    static ring_group metacyclic(long long k, long long l, long long alpha) {
        std::vector<long long> f = {mod_reduce(-alpha, k), 1};
        return ring_group(shape::metacyclic, group_spec::metacyclic(k, l, alpha),
                          std::make_shared<finite_ring>(k, f), l);
    }

    static ring_group lamplighter(long long k, long long l) {
        std::vector<long long> f(l + 1, 0);
        f[0] = mod_reduce(-1, k);
        f[l] = 1;
        return ring_group(shape::lamplighter, group_spec::lamplighter(k, l),
                          std::make_shared<finite_ring>(k, f), l);
    }

    // Recognize a spec as one of the canonical ring-module shapes.
    static ring_group from_spec(const group_spec& s) {
        if (s.l >= 2 && s.factors.size() == 1)
            return metacyclic(s.factors[0], s.l, s.action[0][0]);
        if (s.l >= 2 && static_cast<long long>(s.factors.size()) == s.l) {
            long long k = s.factors[0];
            bool uniform = true;
            for (long long d : s.factors) uniform = uniform && d == k;
            bool is_shift = uniform;
            for (std::size_t i = 0; i < s.factors.size() && is_shift; ++i)
                for (std::size_t j = 0; j < s.factors.size(); ++j)
                    if (mod_reduce(s.action[i][j], k) != ((i == (j + 1) % s.factors.size()) ? 1 : 0)) {
                        is_shift = false;
                        break;
                    }
            if (is_shift) return lamplighter(k, s.l);
        }
        throw module_not_cyclic("ring_group: spec is not in a recognized R x| C shape");
    }

    const split_group& group() const { return *group_; }
    const finite_ring& ring() const { return *ring_; }
    long long alpha() const { return alpha_; }
    long long nu() const { return nu_; }
    long long cyclic_order() const { return l_; }
    const quotient_ring& lambda() const { return *lambda_; }
    const quotient_ring& rc() const { return *rc_; }

    // trivial units of Lambda: image of <-1, alpha>
    const std::vector<int>& t_lambda() const { return t_lambda_; }
    long long lambda_unit_count() const { return lambda_->unit_count(); }
    long long n2_unit_quotient() const { return lambda_->unit_count() / static_cast<long long>(t_lambda_.size()); }

    // module vector <-> ring element
    long long ring_of_module(const std::vector<long long>& m) const { return ring_->index(m); }
    std::vector<long long> module_of_ring(long long e) const { return ring_->coeffs(e); }

    // group element (m, c) -> (r, c) with r in R
    std::pair<long long, long long> ring_pair(uint32_t g) const {
        auto [m, c] = group_->decode(g);
        return {ring_of_module(m), c};
    }
    uint32_t group_elem(long long r, long long c) const {
        return group_->encode(module_of_ring(r), c);
    }

    // additive discrete log in R_C = R/(1-alpha)R, which is cyclic on the image of 1
    long long rc_order() const { return rc_->size(); }
    long long rc_dlog(int coset) const { return rc_dlog_[coset]; }

    std::string describe() const { return group_->describe(); }
    shape kind() const { return kind_; }

private:
    ring_group(shape kind, group_spec spec, std::shared_ptr<finite_ring> ring, long long l)
        : kind_(kind), ring_(std::move(ring)), l_(l) {
        group_ = std::make_shared<split_group>(std::move(spec));
        alpha_ = ring_->gen();
        nu_ = norm_element(*ring_, alpha_, l_);
        lambda_ = std::make_shared<quotient_ring>(*ring_, nu_);
        long long one_minus_alpha = ring_->sub(ring_->one(), alpha_);
        rc_ = std::make_shared<quotient_ring>(*ring_, one_minus_alpha);

        // T_Lambda
        std::vector<int> gens = {lambda_->project(ring_->neg(ring_->one())), lambda_->project(alpha_)};
        t_lambda_ = closure_under<int>(gens, lambda_->one(),
                                       [this](int a, int b) { return lambda_->mul(a, b); });
        std::sort(t_lambda_.begin(), t_lambda_.end());
        lambda_->units(); // materialize now; reads after construction stay const

        // R_C is generated additively by the image of 1
        rc_dlog_.assign(rc_->size(), -1);
        int cur = rc_->zero();
        int one = rc_->project(ring_->one());
        for (long long j = 0; j < rc_->size(); ++j) {
            if (rc_dlog_[cur] >= 0) throw module_not_cyclic("ring_group: R_C not cyclic on 1");
            rc_dlog_[cur] = j;
            cur = rc_->add(cur, one);
        }
    }

    shape kind_;
    std::shared_ptr<const finite_ring> ring_;
    long long l_;
    std::shared_ptr<split_group> group_;
    long long alpha_ = 0, nu_ = 0;
    std::shared_ptr<quotient_ring> lambda_, rc_;
    std::vector<int> t_lambda_;
    std::vector<long long> rc_dlog_;
};

} // namespace nlab
