// nielsen-lab: Nielsen equivalence classes and T-systems of generating vectors
// for finite split abelian-by-cyclic groups, by exact orbit enumeration, with
// closed-form counts cross-checked against brute force.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlab/formulas.hpp"
#include "nlab/invariants.hpp"
#include "nlab/nielsen.hpp"
#include "nlab/tsystems.hpp"
#include "nlab/verify.hpp"

using nlohmann::json;
using namespace nlab;

namespace {

group_spec load_group_spec(const std::string& group_file, const std::string& inline_spec) {
    if (!group_file.empty()) {
        std::ifstream in(group_file);
        if (!in) throw spec_parse_error("cannot open group spec file: " + group_file);
        json j;
        in >> j;
        return group_spec::from_json(j);
    }
    if (!inline_spec.empty()) return group_spec::from_json(json::parse(inline_spec));
    throw spec_parse_error("a group spec is required (--group FILE or --spec JSON)");
}

std::vector<uint32_t> parse_pair(const split_group& g, const std::string& text) {
    json j = json::parse(text);
    std::vector<uint32_t> out;
    for (const auto& e : j) {
        if (e.is_number_integer()) {
            long long idx = e.get<long long>();
            if (idx < 0 || idx >= g.size()) throw spec_parse_error("element index out of range");
            out.push_back(static_cast<uint32_t>(idx));
        } else {
            std::vector<long long> m = e.at(0).get<std::vector<long long>>();
            out.push_back(g.encode(m, e.at(1).get<long long>()));
        }
    }
    return out;
}

long long parse_side(const std::string& s) {
    if (s == "inf" || s == "INF" || s == "infinite" || s == "0") return 0;
    return std::stoll(s);
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // flat key=value table for non-JSON output of single reports
    std::function<void(const json&, std::string)> walk = [&](const json& node, std::string prefix) {
        if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
                walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
            std::cout << prefix << " = " << node.dump() << "\n";
        } else {
            std::cout << prefix << " = " << (node.is_string() ? node.get<std::string>() : node.dump())
                      << "\n";
        }
    };
    walk(j, "");
}

json profile_json(const factor_degree_profile& profile) {
    json arr = json::array();
    for (const auto& dc : profile) arr.push_back(json::array({dc.degree, dc.count}));
    return arr;
}

// n_n(G) through the complete invariants, without orbit search.
std::optional<long long> count_by_invariant(const group_spec& spec, int n, long long max_tuples) {
    split_group g(spec);
    if (g.abelian()) {
        std::vector<long long> orders = g.spec().factors;
        if (g.cyclic_order() > 1) orders.push_back(g.cyclic_order());
        auto inv = invariant_factors_of_cyclics(orders);
        int k = static_cast<int>(inv.size());
        if (n > k) return 1;
        if (n < k) return std::nullopt;
        // distinct +/- determinant values over V_k
        auto vs = enumerate_Vn(g, n, max_tuples);
        std::set<std::pair<long long, long long>> dets;
        for (const auto& v : vs) {
            auto dv = det_invariant(g, v);
            dets.insert({dv.modulus, dv.value});
        }
        return static_cast<long long>(dets.size());
    }
    if (n != 2) return std::nullopt;
    ring_group rg = ring_group::from_spec(spec);
    auto vs = enumerate_Vn(rg.group(), 2, max_tuples);
    std::set<std::pair<std::pair<long long, long long>, int>> values;
    for (const auto& v : vs) {
        auto det = det_ab_pair(rg, v[0], v[1]);
        auto del = delta_invariant(rg, v[0], v[1], false);
        values.insert({{det.modulus, det.value}, del.coset_rep});
    }
    return static_cast<long long>(values.size());
}

std::optional<formula_report> count_by_formula(const group_spec& spec, int n) {
    split_group g(spec);
    if (g.abelian()) {
        std::vector<long long> orders = g.spec().factors;
        if (g.cyclic_order() > 1) orders.push_back(g.cyclic_order());
        auto inv = invariant_factors_of_cyclics(orders);
        int k = static_cast<int>(inv.size());
        formula_report rep;
        rep.quantity = "n_" + std::to_string(n);
        rep.rule = "abelian.invariant-factors";
        if (n > k)
            rep.value = formula_value::of(1);
        else if (n == k)
            rep.value = formula_value::of(std::max<long long>(totient(inv.front()) / 2, 1));
        else
            return std::nullopt;
        return rep;
    }
    if (n == 2) {
        ring_group rg = ring_group::from_spec(spec);
        if (rg.kind() == ring_group::shape::metacyclic) {
            const auto& s = rg.group().spec();
            return formula_metacyclic(s.factors[0], s.l, s.action[0][0]);
        }
        return formula_lamplighter_finite(rg.ring().modulus(), rg.cyclic_order());
    }
    if (n == 3) {
        // finite C: one class above rank two
        formula_report rep;
        rep.quantity = "n_3";
        rep.rule = "ge2-collapse";
        rep.value = formula_value::of(1);
        return rep;
    }
    return std::nullopt;
}

int cmd_count(const std::string& group_file, const std::string& inline_spec, int n,
              const std::string& method, bool dump_classes, long long max_tuples,
              const std::string& format) {
    group_spec spec = load_group_spec(group_file, inline_spec);
    split_group g(spec);
    json out;
    out["group"] = spec.to_json();
    out["n"] = n;
    json methods;
    std::vector<long long> agreed;

    if (method == "bfs" || method == "all") {
        auto orb = nielsen_orbits(g, n, max_tuples);
        methods["bfs"] = orb.class_count();
        agreed.push_back(orb.class_count());
        if (dump_classes) out["classes"] = orbit_partition_to_json(g, orb.partition());
    }
    if (method == "invariant" || method == "all") {
        auto c = count_by_invariant(spec, n, max_tuples);
        if (c) {
            methods["invariant"] = *c;
            agreed.push_back(*c);
        } else if (method == "invariant") {
            throw spec_parse_error("invariant method not applicable to this group/n");
        }
    }
    if (method == "formula" || method == "all") {
        auto fr = count_by_formula(spec, n);
        if (fr) {
            methods["formula"] = fr->value.is_finite() ? json(fr->value.n) : json(fr->value.str());
            methods["formula_report"] = fr->to_json();
            if (fr->value.is_finite()) agreed.push_back(fr->value.n);
        } else if (method == "formula") {
            throw spec_parse_error("no closed formula for this group/n");
        }
    }
    out["methods"] = methods;
    bool agree = true;
    for (long long v : agreed) agree = agree && v == agreed.front();
    out["agree"] = agree;
    if (!agree) out["disagreement"] = "methods returned different counts";
    emit(out, format);
    return agree ? 0 : 1;
}

int cmd_tsystems(const std::string& group_file, const std::string& inline_spec, int n,
                 const std::string& backend, bool dump_classes, long long max_tuples,
                 long long aut_cap, const std::string& format) {
    group_spec spec = load_group_spec(group_file, inline_spec);
    split_group g(spec);
    auto orb = nielsen_orbits(g, n, max_tuples);
    auto res = tsystems(g, orb, backend == "structured" ? aut_backend::structured : aut_backend::bruteforce,
                        aut_cap);
    json out;
    out["group"] = spec.to_json();
    out["n"] = n;
    out["backend"] = backend;
    out["nielsen_classes"] = orb.class_count();
    out["tsystems"] = res.count;
    out["upper_bound_only"] = res.upper_bound_only;
    if (dump_classes) out["classes"] = orbit_partition_to_json(g, orb.partition(), "tsystem");
    emit(out, format);
    return 0;
}

int cmd_check_pair(const std::string& group_file, const std::string& inline_spec,
                   const std::string& pair1, const std::string& pair2, bool confirm_bfs,
                   long long max_tuples, const std::string& format) {
    group_spec spec = load_group_spec(group_file, inline_spec);
    ring_group rg = ring_group::from_spec(spec);
    const split_group& g = rg.group();
    auto p1 = parse_pair(g, pair1);
    auto p2 = parse_pair(g, pair2);
    if (p1.size() != 2 || p2.size() != 2) throw spec_parse_error("check-pair expects two pairs");

    json out;
    out["group"] = spec.to_json();
    bool eq = pairs_equivalent(rg, p1[0], p1[1], p2[0], p2[1]);
    auto det1 = det_ab_pair(rg, p1[0], p1[1]);
    auto det2 = det_ab_pair(rg, p2[0], p2[1]);
    auto del1 = delta_invariant(rg, p1[0], p1[1], false);
    auto del2 = delta_invariant(rg, p2[0], p2[1], false);
    out["equivalent"] = eq;
    out["det"] = {{"pair1", det1.value}, {"pair2", det2.value}, {"modulus", det1.modulus}};
    out["delta"] = {{"pair1", del1.coset_rep}, {"pair2", del2.coset_rep}};
    if (confirm_bfs) {
        auto orb = nielsen_orbits(g, 2, max_tuples);
        out["bfs_confirmed"] = (orb.class_of(p1) == orb.class_of(p2)) == eq;
    }
    emit(out, format);
    return 0;
}

int cmd_verify(const std::string& suite, verify_options opts, const std::string& format) {
    std::vector<suite_report> reports;
    if (suite == "metacyclic" || suite == "all") reports.push_back(verify_metacyclic(opts));
    if (suite == "lamplighter" || suite == "all") reports.push_back(verify_lamplighter(opts));
    if (suite == "abelian" || suite == "all") reports.push_back(verify_abelian(opts));
    if (suite == "properties" || suite == "all") reports.push_back(verify_properties(opts));
    if (reports.empty()) throw spec_parse_error("unknown suite: " + suite);

    bool ok = true;
    if (format == "json") {
        json out = json::array();
        for (const auto& r : reports) {
            out.push_back(r.to_json());
            ok = ok && r.ok();
        }
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        for (const auto& r : reports) {
            std::cout << r.to_csv();
            ok = ok && r.ok();
        }
    } else {
        for (const auto& r : reports) {
            std::cout << r.to_table();
            ok = ok && r.ok();
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nielsen equivalence classes and T-systems of finite abelian-by-cyclic groups"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));

    long long max_tuples = 20'000'000;
    app.add_option("--max-tuples", max_tuples, "orbit search budget in tuples");

    std::string group_file, inline_spec;

    auto add_group_opts = [&](CLI::App* cmd) {
        cmd->add_option("--group", group_file, "path to a group spec JSON file");
        cmd->add_option("--spec", inline_spec, "inline group spec JSON");
    };

    // count
    auto* count = app.add_subcommand("count", "count Nielsen classes of generating n-vectors");
    int n = 2;
    std::string method = "all";
    bool dump_classes = false;
    add_group_opts(count);
    count->add_option("--n", n, "vector length");
    count->add_option("--method", method)->check(CLI::IsMember({"bfs", "invariant", "formula", "all"}));
    count->add_flag("--classes", dump_classes, "include the class list in the output");

    // tsystems
    auto* tsys = app.add_subcommand("tsystems", "count T-systems of generating n-vectors");
    int tn = 2;
    std::string backend = "bruteforce";
    long long aut_cap = 256;
    bool tsys_classes = false;
    add_group_opts(tsys);
    tsys->add_option("--n", tn, "vector length");
    tsys->add_option("--backend", backend)->check(CLI::IsMember({"bruteforce", "structured"}));
    tsys->add_option("--aut-cap", aut_cap, "brute-force automorphism group size cap");
    tsys->add_flag("--classes", tsys_classes, "include the Nielsen class list, tagged tsystem");

    // check-pair
    auto* chk = app.add_subcommand("check-pair", "decide Nielsen equivalence of two generating pairs");
    std::string pair1, pair2;
    bool confirm_bfs = false;
    add_group_opts(chk);
    chk->add_option("--pair1", pair1, "first pair, JSON [[m..],c] entries or element indices")->required();
    chk->add_option("--pair2", pair2, "second pair")->required();
    chk->add_flag("--bfs", confirm_bfs, "confirm the verdict by orbit search");

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    verify_options vopts;
    ver->add_option("--suite", suite)
        ->check(CLI::IsMember({"metacyclic", "lamplighter", "abelian", "properties", "all"}));
    ver->add_option("--kmax", vopts.metacyclic_kmax, "metacyclic k bound");
    ver->add_option("--lmax", vopts.metacyclic_lmax, "metacyclic l bound");
    ver->add_option("--lamp-kmax", vopts.lamplighter_kmax, "lamplighter k bound");
    ver->add_option("--lamp-lmax", vopts.lamplighter_lmax, "lamplighter l bound");
    ver->add_option("--order-max", vopts.abelian_order_max, "abelian order bound");
    ver->add_option("--seed", vopts.seed, "seed for sampled property tests");
    ver->add_option("--threads", vopts.threads, "worker pool size (NIELSEN_LAB_THREADS overrides)");

    // formula
    auto* formula = app.add_subcommand("formula", "evaluate a closed-form count");
    auto* fbs = formula->add_subcommand("bs", "soluble Baumslag-Solitar BS(1, l)");
    long long bs_l = 2;
    fbs->add_option("--l", bs_l)->required();
    auto* fmc = formula->add_subcommand("metacyclic", "Z_k x|_alpha Z_l");
    long long mk = 2, ml = 2, malpha = 1;
    fmc->add_option("--k", mk)->required();
    fmc->add_option("--l", ml)->required();
    fmc->add_option("--alpha", malpha)->required();
    auto* flamp = formula->add_subcommand("lamplighter", "Z_k wr Z_l; 0 or 'inf' marks an infinite side");
    std::string lk = "2", ll = "2";
    flamp->add_option("--k", lk)->required();
    flamp->add_option("--l", ll)->required();
    bool lamp_v2 = false;
    flamp->add_flag("--v2", lamp_v2, "report |V_2| and class size instead of n_2");
    auto* ffpd = formula->add_subcommand("fpd", "F_p^d x|_A Z");
    long long fp = 2;
    std::string matrix;
    ffpd->add_option("--p", fp)->required();
    ffpd->add_option("--matrix", matrix, "rows separated by ';', entries by ','")->required();

    // factor-profile
    auto* prof = app.add_subcommand("factor-profile", "distinct irreducible factor counts by degree");
    long long pp = 2, pl = 2;
    std::string kind = "nu";
    prof->add_option("--p", pp)->required();
    prof->add_option("--l", pl)->required();
    prof->add_option("--kind", kind)->check(CLI::IsMember({"nu", "mu"}));

    // aut
    auto* aut = app.add_subcommand("aut", "brute-force automorphism group order");
    long long aut_cap2 = 256;
    add_group_opts(aut);
    aut->add_option("--aut-cap", aut_cap2, "group size cap");

    // global options (--format, --max-tuples) remain usable after a subcommand
    for (CLI::App* sc : {count, tsys, chk, ver, formula, fbs, fmc, flamp, ffpd, prof, aut})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (count->parsed())
            return cmd_count(group_file, inline_spec, n, method, dump_classes, max_tuples, format);
        if (tsys->parsed())
            return cmd_tsystems(group_file, inline_spec, tn, backend, tsys_classes, max_tuples,
                                aut_cap, format);
        if (chk->parsed())
            return cmd_check_pair(group_file, inline_spec, pair1, pair2, confirm_bfs, max_tuples, format);
        if (ver->parsed()) return cmd_verify(suite, vopts, format);
        if (formula->parsed()) {
            formula_report rep;
            if (fbs->parsed())
                rep = formula_bs(bs_l);
            else if (fmc->parsed())
                rep = formula_metacyclic(mk, ml, malpha);
            else if (flamp->parsed()) {
                long long k = parse_side(lk), l = parse_side(ll);
                if (lamp_v2) {
                    if (k == 0 || l == 0) throw bad_action("--v2 needs both sides finite");
                    rep = formula_lamplighter_V2(k, l);
                } else {
                    rep = (k == 0 || l == 0) ? formula_lamplighter_mixed(k, l)
                                             : formula_lamplighter_finite(k, l);
                }
            } else if (ffpd->parsed()) {
                std::vector<std::vector<long long>> a;
                std::stringstream rows(matrix);
                std::string row;
                while (std::getline(rows, row, ';')) {
                    std::vector<long long> r;
                    std::stringstream cells(row);
                    std::string cell;
                    while (std::getline(cells, cell, ',')) r.push_back(std::stoll(cell));
                    a.push_back(std::move(r));
                }
                rep = formula_fpd_semidirect_Z(fp, a);
            } else {
                std::cerr << "formula: choose a subcommand (bs|metacyclic|lamplighter|fpd)\n";
                return 2;
            }
            emit(rep.to_json(), format);
            return 0;
        }
        if (prof->parsed()) {
            auto profile = kind == "nu" ? nu_count(pp, pl) : mu_count(pp, pl);
            json out = {{"p", pp}, {"l", pl}, {"kind", kind}, {"profile", profile_json(profile)}};
            emit(out, format);
            return 0;
        }
        if (aut->parsed()) {
            group_spec spec = load_group_spec(group_file, inline_spec);
            split_group g(spec);
            auto auts = aut_group_bruteforce(g, aut_cap2);
            json out = {{"group", spec.to_json()}, {"order", auts.size()}};
            emit(out, format);
            return 0;
        }
    } catch (const nlab::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
