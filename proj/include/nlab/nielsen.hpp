#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlab/group.hpp"
#include "nlab/ring_group.hpp"

#include "json.hpp"

namespace nlab {

// Elementary transformation on generating vectors: L(i,j) replaces g_i by
// g_j * g_i; I(i) replaces g_i by its inverse. Indices are 0-based.
struct nielsen_move {
    bool invert = false;
    int i = 0;
    int j = 0;

    static nielsen_move L(int i, int j) { return {false, i, j}; }
    static nielsen_move I(int i) { return {true, i, i}; }
};

inline std::vector<uint32_t> apply_move(const split_group& g, std::vector<uint32_t> vec,
                                        const nielsen_move& mv) {
    const int n = static_cast<int>(vec.size());
    if (mv.i < 0 || mv.i >= n || mv.j < 0 || mv.j >= n || (!mv.invert && mv.i == mv.j))
        throw bad_index("apply_move: bad move indices");
    if (mv.invert)
        vec[mv.i] = g.inv(vec[mv.i]);
    else
        vec[mv.i] = g.mul(vec[mv.j], vec[mv.i]);
    return vec;
}

struct orbit_class {
    std::vector<uint32_t> rep; // least tuple in the class, componentwise encoding
    long long size = 0;
};

struct orbit_partition {
    int n = 0;
    std::vector<orbit_class> classes;
    long long total = 0;

    long long class_count() const { return static_cast<long long>(classes.size()); }
};

namespace detail {

// Union-find over the dense tuple space; -1 marks tuples outside the set.
struct tuple_union_find {
    std::vector<int32_t> parent;

    int32_t find(int32_t x) {
        int32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            int32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

// Orbits of V_n(G) under the elementary transformations, by a single union-find
// pass over all move edges.
class nielsen_orbits_result {
public:
    nielsen_orbits_result(const split_group& g, int n, long long max_tuples)
        : g_(&g), n_(n) {
        space_ = tuple_space_size(g, n, max_tuples);
        if (space_ < 0) throw search_budget_exceeded("nielsen_orbits: tuple space exceeds budget");
        uf_.parent.assign(space_, -1);

        generation_tester tester(g);
        std::vector<uint32_t> tuple(n, 0);
        for (long long t = 0; t < space_; ++t) {
            decode_tuple(t, tuple);
            if (tester.generates(tuple)) uf_.parent[t] = static_cast<int32_t>(t);
        }

        auto unite_move = [&](long long from, long long to) {
            // elementary moves preserve generation; a miss here would mean the
            // membership pass and the move pass disagree
            if (uf_.parent[to] < 0)
                throw error("nielsen_orbits: move left the generating set");
            uf_.unite(static_cast<int32_t>(from), static_cast<int32_t>(to));
        };
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            decode_tuple(t, tuple);
            for (int i = 0; i < n; ++i) {
                long long stride = strides_[i];
                uint32_t gi = tuple[i];
                long long other = g.inv(gi);
                unite_move(t, t + (other - static_cast<long long>(gi)) * stride);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    other = g.mul(tuple[j], gi);
                    unite_move(t, t + (other - static_cast<long long>(gi)) * stride);
                }
            }
        }

        // canonical class ids in order of least representative
        std::vector<long long> root_first;
        std::vector<long long> sizes;
        class_id_of_root_.clear();
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            int32_t root = uf_.find(static_cast<int32_t>(t));
            auto it = class_id_of_root_.find(root);
            if (it == class_id_of_root_.end()) {
                class_id_of_root_.emplace(root, static_cast<int>(root_first.size()));
                root_first.push_back(t);
                sizes.push_back(1);
            } else {
                ++sizes[it->second];
            }
            ++partition_.total;
        }
        partition_.n = n;
        for (std::size_t c = 0; c < root_first.size(); ++c) {
            orbit_class cls;
            decode_tuple(root_first[c], tuple);
            cls.rep = tuple;
            cls.size = sizes[c];
            partition_.classes.push_back(std::move(cls));
        }
    }

    const orbit_partition& partition() const { return partition_; }
    long long class_count() const { return partition_.class_count(); }
    long long total() const { return partition_.total; }

    bool contains(const std::vector<uint32_t>& tuple) const {
        return uf_.parent[encode_tuple(tuple)] >= 0;
    }

    int class_of(const std::vector<uint32_t>& tuple) const {
        long long t = encode_tuple(tuple);
        if (uf_.parent[t] < 0) throw not_generating("class_of: tuple is not a generating vector");
        int32_t root = const_cast<detail::tuple_union_find&>(uf_).find(static_cast<int32_t>(t));
        return class_id_of_root_.at(root);
    }

    // enumerate members of the partition class by class id
    template <typename F>
    void for_each_member(F&& fn) const {
        std::vector<uint32_t> tuple(n_, 0);
        auto& uf = const_cast<detail::tuple_union_find&>(uf_);
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            decode_tuple(t, tuple);
            fn(tuple, class_id_of_root_.at(uf.find(static_cast<int32_t>(t))));
        }
    }

private:
    void decode_tuple(long long t, std::vector<uint32_t>& out) const {
        for (int i = n_ - 1; i >= 0; --i) {
            out[i] = static_cast<uint32_t>(t % g_->size());
            t /= g_->size();
        }
    }

    long long encode_tuple(const std::vector<uint32_t>& tuple) const {
        long long t = 0;
        for (int i = 0; i < n_; ++i) t = t * g_->size() + tuple[i];
        return t;
    }

    const split_group* g_;
    int n_;
    long long space_ = 0;
    std::vector<long long> strides_ = compute_strides();
    detail::tuple_union_find uf_;
    orbit_partition partition_;
    std::unordered_map<int32_t, int> class_id_of_root_;

    std::vector<long long> compute_strides() const {
        std::vector<long long> s(n_, 1);
        for (int i = n_ - 2; i >= 0; --i) s[i] = s[i + 1] * g_->size();
        return s;
    }
};

inline nielsen_orbits_result nielsen_orbits(const split_group& g, int n,
                                            long long max_tuples = 20'000'000) {
    return nielsen_orbits_result(g, n, max_tuples);
}

inline nlohmann::json orbit_partition_to_json(const split_group& g, const orbit_partition& p,
                                              const std::string& tag = "") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cls : p.classes) {
        nlohmann::json rep = nlohmann::json::array();
        for (uint32_t e : cls.rep) {
            auto [m, c] = g.decode(e);
            rep.push_back(nlohmann::json::array({m, c}));
        }
        nlohmann::json entry = {{"rep", rep}, {"size", cls.size}};
        if (!tag.empty()) entry["tag"] = tag;
        arr.push_back(std::move(entry));
    }
    return arr;
}

// --- Gamma_n(R)-orbits of unimodular rows --------------------------------------

// Orbits of Um_n(R) under right multiplication by the elementary matrices
// E_ij(1) and the diagonal matrices D_i(alpha), D_i(-1). For n = 1 only the
// diagonal moves act (E_1 is trivial), so orbits are the cosets of T.
class gamma_orbits_result {
public:
    gamma_orbits_result(const finite_ring& r, long long alpha, int n, long long max_rows)
        : r_(&r), n_(n) {
        space_ = 1;
        for (int i = 0; i < n; ++i) {
            if (space_ > max_rows / r.size() + 1) space_ = -1;
            else space_ *= r.size();
            if (space_ > max_rows || space_ < 0)
                throw search_budget_exceeded("gamma_orbits: row space exceeds budget");
        }
        strides_.assign(n, 1);
        for (int i = n - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * r.size();

        build_principal_ideals();

        uf_.parent.assign(space_, -1);
        std::vector<long long> row(n, 0);
        for (long long t = 0; t < space_; ++t) {
            decode_row(t, row);
            if (unimodular(row)) uf_.parent[t] = static_cast<int32_t>(t);
        }

        long long minus_one = r.neg(r.one());
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            decode_row(t, row);
            for (int i = 0; i < n_; ++i) {
                // D_i(alpha), D_i(-1): invertible scalings keep the row unimodular
                unite_changed(t, i, row[i], r.mul(row[i], alpha));
                unite_changed(t, i, row[i], r.mul(row[i], minus_one));
                // E_ji(1) adds row[j] into slot i; cover all ordered pairs
                for (int j = 0; j < n_; ++j) {
                    if (j == i) continue;
                    unite_changed(t, i, row[i], r.add(row[i], row[j]));
                }
            }
        }

        std::vector<long long> root_first;
        std::vector<long long> sizes;
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            int32_t root = uf_.find(static_cast<int32_t>(t));
            auto it = class_id_of_root_.find(root);
            if (it == class_id_of_root_.end()) {
                class_id_of_root_.emplace(root, static_cast<int>(root_first.size()));
                root_first.push_back(t);
                sizes.push_back(1);
            } else {
                ++sizes[it->second];
            }
            ++total_;
        }
        for (std::size_t c = 0; c < root_first.size(); ++c) {
            decode_row(root_first[c], row);
            reps_.push_back(row);
            class_sizes_.push_back(sizes[c]);
        }
    }

    long long orbit_count() const { return static_cast<long long>(reps_.size()); }
    long long total_rows() const { return total_; }
    const std::vector<std::vector<long long>>& reps() const { return reps_; }
    const std::vector<long long>& class_sizes() const { return class_sizes_; }

    bool contains(const std::vector<long long>& row) const { return uf_.parent[encode_row(row)] >= 0; }

    int orbit_of(const std::vector<long long>& row) const {
        long long t = encode_row(row);
        if (uf_.parent[t] < 0) throw not_generating("orbit_of: row is not unimodular");
        int32_t root = const_cast<detail::tuple_union_find&>(uf_).find(static_cast<int32_t>(t));
        return class_id_of_root_.at(root);
    }

    template <typename F>
    void for_each_row(F&& fn) const {
        std::vector<long long> row(n_, 0);
        auto& uf = const_cast<detail::tuple_union_find&>(uf_);
        for (long long t = 0; t < space_; ++t) {
            if (uf_.parent[t] < 0) continue;
            decode_row(t, row);
            fn(row, class_id_of_root_.at(uf.find(static_cast<int32_t>(t))));
        }
    }

private:
    void build_principal_ideals() {
        const long long sz = r_->size();
        const std::size_t words = (sz + 63) / 64;
        ideal_bits_.assign(sz * words, 0);
        words_ = words;
        for (long long x = 0; x < sz; ++x) {
            uint64_t* bits = &ideal_bits_[x * words];
            for (long long y = 0; y < sz; ++y) {
                long long v = r_->mul(x, y);
                bits[v >> 6] |= 1ULL << (v & 63);
            }
        }
    }

    bool unimodular(const std::vector<long long>& row) const {
        if (n_ == 1) return r_->is_unit(row[0]);
        // 1 must lie in the sum of the principal ideals; fold incrementally.
        std::vector<uint64_t> sum(words_, 0);
        const uint64_t* first = &ideal_bits_[row[0] * words_];
        std::copy(first, first + words_, sum.begin());
        for (int i = 1; i + 1 < n_; ++i) {
            std::vector<uint64_t> next(words_, 0);
            const uint64_t* ideal = &ideal_bits_[row[i] * words_];
            for (long long a = 0; a < r_->size(); ++a) {
                if (!(sum[a >> 6] & (1ULL << (a & 63)))) continue;
                for (long long b = 0; b < r_->size(); ++b)
                    if (ideal[b >> 6] & (1ULL << (b & 63))) {
                        long long v = r_->add(a, b);
                        next[v >> 6] |= 1ULL << (v & 63);
                    }
            }
            sum.swap(next);
        }
        const uint64_t* last = &ideal_bits_[row[n_ - 1] * words_];
        for (long long a = 0; a < r_->size(); ++a) {
            if (!(sum[a >> 6] & (1ULL << (a & 63)))) continue;
            long long need = r_->sub(r_->one(), a);
            if (last[need >> 6] & (1ULL << (need & 63))) return true;
        }
        return false;
    }

    void unite_changed(long long t, int i, long long oldv, long long newv) {
        if (oldv == newv) return;
        long long to = t + (newv - oldv) * strides_[i];
        if (uf_.parent[to] < 0) throw error("gamma_orbits: move left the unimodular rows");
        uf_.unite(static_cast<int32_t>(t), static_cast<int32_t>(to));
    }

    void decode_row(long long t, std::vector<long long>& out) const {
        for (int i = n_ - 1; i >= 0; --i) {
            out[i] = t % r_->size();
            t /= r_->size();
        }
    }
    long long encode_row(const std::vector<long long>& row) const {
        long long t = 0;
        for (int i = 0; i < n_; ++i) t = t * r_->size() + row[i];
        return t;
    }

    const finite_ring* r_;
    int n_;
    long long space_ = 0, total_ = 0;
    std::size_t words_ = 0;
    std::vector<long long> strides_;
    std::vector<uint64_t> ideal_bits_;
    detail::tuple_union_find uf_;
    std::unordered_map<int32_t, int> class_id_of_root_;
    std::vector<std::vector<long long>> reps_;
    std::vector<long long> class_sizes_;
};

inline gamma_orbits_result gamma_orbits(const finite_ring& r, long long alpha, int n,
                                        long long max_rows = 2'000'000) {
    return gamma_orbits_result(r, alpha, n, max_rows);
}

// --- the map Phi_a and property N_n(a) -----------------------------------------

struct phi_a_report {
    bool well_defined = true;   // Gamma-equivalent rows land in one Nielsen class
    bool surjective = true;     // every Nielsen class contains an a-row
    bool injective = true;      // empirical only; not asserted by theory for finite C
    long long gamma_orbit_count = 0;
    long long nielsen_class_count = 0;
};

// Cross-check of the correspondence row |-> (row, a) between Gamma_{n-1}(R)
// orbits of unimodular rows and Nielsen classes of generating n-vectors.
inline phi_a_report phi_a_check(const ring_group& rg, const gamma_orbits_result& rows,
                                const nielsen_orbits_result& vecs) {
    const split_group& g = rg.group();
    const int n = vecs.partition().n;
    phi_a_report rep;
    rep.gamma_orbit_count = rows.orbit_count();
    rep.nielsen_class_count = vecs.class_count();

    uint32_t a_elem = g.encode(std::vector<long long>(g.module_rank(), 0), 1);
    std::vector<int> image_class(rows.orbit_count(), -1);
    std::vector<char> hit(vecs.class_count(), 0);

    rows.for_each_row([&](const std::vector<long long>& row, int orbit) {
        std::vector<uint32_t> tuple;
        tuple.reserve(n);
        for (long long r : row) tuple.push_back(rg.group_elem(r, 0));
        tuple.push_back(a_elem);
        int cls = vecs.class_of(tuple);
        hit[cls] = 1;
        if (image_class[orbit] < 0)
            image_class[orbit] = cls;
        else if (image_class[orbit] != cls)
            rep.well_defined = false;
    });

    for (char h : hit)
        if (!h) rep.surjective = false;
    std::vector<char> used(vecs.class_count(), 0);
    for (int cls : image_class) {
        if (cls < 0) continue;
        if (used[cls]) rep.injective = false;
        used[cls] = 1;
    }
    return rep;
}

struct nna_report {
    bool holds = false;
    int clause = 0; // 1, 3 or 4 per the characterization; 0 = none
    std::string detail;
};

// Characterization of property N_n(a) for finite G: every generating n-vector
// reduces to (m_1, ..., m_{n-1}, a). Clause (ii) (infinite C) never fires here;
// for finite M_C, "M_C free of rank rk(G)-1" means M_C trivial and rk(G) = 1.
inline nna_report property_Nna(const split_group& g, int n, long long max_tuples = 20'000'000) {
    nna_report rep;
    long long rk_gab = g.ab().rank();
    if (n > rk_gab) {
        rep.holds = true;
        rep.clause = 1;
        rep.detail = "n exceeds the abelianized rank";
        return rep;
    }
    int rk_g = rank(g, max_tuples);
    long long rk_mc = static_cast<long long>(g.ab().mc_factors.size());
    bool mc_trivial = rk_mc == 0;
    bool mc_free_of_rank = mc_trivial && rk_g == 1; // only Z^0 is realizable for finite M_C
    if (rk_g > rk_mc && !mc_free_of_rank) {
        rep.holds = true;
        rep.clause = 3;
        rep.detail = "rk(G) exceeds rk(M_C) and M_C is not free of rank rk(G)-1";
        return rep;
    }
    long long l = g.cyclic_order();
    if ((l == 2 || l == 3 || l == 4 || l == 6) && mc_free_of_rank) {
        rep.holds = true;
        rep.clause = 4;
        rep.detail = "|C| in {2,3,4,6} with M_C free of rank rk(G)-1";
        return rep;
    }
    rep.detail = "no clause applies";
    return rep;
}

// Exhaustive arbitration for property N_n(a): does every Nielsen class contain
// an a-row?
inline bool every_class_has_a_row(const split_group& g, const nielsen_orbits_result& vecs) {
    const int n = vecs.partition().n;
    std::vector<char> hit(vecs.class_count(), 0);
    uint32_t a_elem = g.encode(std::vector<long long>(g.module_rank(), 0), 1);
    vecs.for_each_member([&](const std::vector<uint32_t>& tuple, int cls) {
        if (tuple[n - 1] != a_elem) return;
        for (int i = 0; i + 1 < n; ++i)
            if (g.cyc(tuple[i]) != 0) return;
        hit[cls] = 1;
    });
    for (char h : hit)
        if (!h) return false;
    return true;
}

} // namespace nlab
