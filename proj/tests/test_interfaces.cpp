#include <catch2/catch_amalgamated.hpp>

#include "nlab/verify.hpp"

using namespace nlab;

TEST_CASE("suite reports render to every output format") {
    suite_report rep;
    rep.name = "demo";
    rep.add({"G1", "n2", "2", "2", check_status::pass, ""});
    rep.add({"G2", "n2", "1", "1/2", check_status::caveat, "closed form, l = 2"});
    rep.add({"G3", "n3", "1", "", check_status::skip, "budget"});

    auto j = rep.to_json();
    CHECK(j["suite"] == "demo");
    CHECK(j["pass"] == 1);
    CHECK(j["caveat"] == 1);
    CHECK(j["skip"] == 1);
    CHECK(j["fail"] == 0);
    REQUIRE(j["lines"].size() == 3);
    CHECK(j["lines"][1]["status"] == "CAVEAT");

    auto csv = rep.to_csv();
    CHECK(csv.find("group,check,expected,got,status,note") == 0);
    CHECK(csv.find("\"closed form, l = 2\"") != std::string::npos); // comma gets quoted

    auto table = rep.to_table();
    CHECK(table.find("CAVEAT") != std::string::npos);
    CHECK(table.find("demo: 1 pass, 0 fail, 1 caveat, 1 skip") != std::string::npos);

    CHECK(rep.ok());
    rep.add({"G4", "n2", "2", "3", check_status::fail, ""});
    CHECK_FALSE(rep.ok());
}

TEST_CASE("worker pool merges results in job order") {
    verify_options opts;
    opts.threads = 3;
    std::vector<std::function<std::vector<check_line>()>> jobs;
    for (int i = 0; i < 20; ++i)
        jobs.push_back([i] {
            return std::vector<check_line>{
                {"job" + std::to_string(i), "id", "", "", check_status::pass, ""}};
        });
    auto lines = run_check_jobs(opts, jobs);
    REQUIRE(lines.size() == 20);
    for (int i = 0; i < 20; ++i) REQUIRE(lines[i].group == "job" + std::to_string(i));
}

TEST_CASE("abelian decompositions enumerate divisibility chains") {
    std::vector<std::vector<long long>> out;
    abelian_decompositions(16, out);
    // every chain divides, multiplies to <= 16, first factor >= 2
    for (const auto& d : out) {
        long long prod = 1;
        for (std::size_t i = 0; i < d.size(); ++i) {
            REQUIRE(d[i] >= 2);
            if (i) REQUIRE(d[i] % d[i - 1] == 0);
            prod *= d[i];
        }
        REQUIRE(prod <= 16);
    }
    // spot membership
    auto has = [&](std::vector<long long> v) {
        return std::find(out.begin(), out.end(), v) != out.end();
    };
    CHECK(has({2, 2, 2, 2}));
    CHECK(has({4, 4}));
    CHECK(has({16}));
    CHECK_FALSE(has({2, 3})); // 3 is not a multiple of 2
}

TEST_CASE("small verification slices stay green") {
    verify_options opts;
    opts.metacyclic_kmax = 6;
    opts.metacyclic_lmax = 3;
    opts.lamplighter_kmax = 3;
    opts.lamplighter_lmax = 2;
    opts.abelian_order_max = 24;
    auto mc = verify_metacyclic(opts);
    CHECK(mc.ok());
    CHECK(mc.count(check_status::pass) > 0);
    auto lamp = verify_lamplighter(opts);
    CHECK(lamp.ok());
    CHECK(lamp.count(check_status::caveat) > 0); // the l = 2 closed form
    auto ab = verify_abelian(opts);
    CHECK(ab.ok());
}
