#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulb/pipeline.hpp"

#include <fstream>
#include <sstream>

using namespace ulb;

namespace {

const char* kL9a10 =
    "PD[X[4,14,5,13],X[12,6,13,5],X[6,12,7,11],X[2,9,3,10],X[8,1,9,2],X[18,3,15,4],"
    "X[10,18,11,17],X[14,15,1,16],X[16,8,17,7]]";

LinkRecord l9a10_record() {
    LinkRecord r;
    r.name = "L9a10";
    r.components = 2;
    r.signatures = std::vector<long>{1, 1};
    r.nullity = 0;
    r.determinant = Integer(48);
    r.homology = FiniteAbelianGroup::from_factors({Integer(48)});
    r.pd = pd_from_text(kL9a10);
    r.known_upper_bound = 3;
    return r;
}

LinkRecord l9a10_mirror_record() {
    LinkRecord r = l9a10_record();
    r.name = "L9a10-mirror";
    r.signatures = std::vector<long>{-1, -1};
    r.pd = mirror(*r.pd);
    return r;
}

LinkRecord hopf_record() {
    LinkRecord r;
    r.name = "L2a1";
    r.components = 2;
    r.signatures = std::vector<long>{-1, 1};
    r.nullity = 0;
    r.determinant = Integer(2);
    r.homology = FiniteAbelianGroup::from_factors({Integer(2)});
    r.pd = pd_from_text("PD[X[4,2,3,1],X[2,4,1,3]]");
    r.known_upper_bound = 1;
    return r;
}

} // namespace

TEST_CASE("bound_from_signature") {
    CHECK(bound_from_signature(-3, 0, 2) == std::pair<long, long>{2, 0});
    CHECK(bound_from_signature(0, 1, 2) == std::pair<long, long>{0, 0});
    CHECK(bound_from_signature(0, 2, 3) == std::pair<long, long>{0, 0});
    CHECK(bound_from_signature(1, 0, 2).second == 1);
    CHECK(bound_from_signature(1, 0, 2).first == 0);
    CHECK(bound_from_signature(5, 0, 2) == std::pair<long, long>{0, 3});
}

TEST_CASE("lemma_det_bound") {
    auto [b30, note30] = lemma_det_bound(2, 0, Integer(30));
    CHECK(b30 == 2); // 15 is not a perfect square
    auto [b2, note2] = lemma_det_bound(2, 0, Integer(2));
    CHECK(b2 == 1); // 2 = 2 * 1^2
    auto [b0, note0] = lemma_det_bound(3, 2, Integer(0));
    CHECK(b0 == 0);
    auto [b16, n16] = lemma_det_bound(3, 0, Integer(16));
    CHECK(b16 == 2); // 16 = 4 * 2^2
    auto [b40, n40] = lemma_det_bound(2, 0, Integer(40));
    CHECK(b40 == 2); // 20 is not a perfect square
}

TEST_CASE("lemma_sublinks_bound") {
    SublinkTree unknot;
    unknot.u_min = 0;
    unknot.cstar_min = 0;

    SublinkTree pair;
    pair.children = {unknot, unknot};
    pair.lk = 3;
    CHECK(lemma_sublinks_bound(pair).first == 3);

    SublinkTree a;
    a.u_min = 1;
    a.cstar_min = 1;
    SublinkTree mixed;
    mixed.children = {a, unknot};
    mixed.lk = 2;
    CHECK(lemma_sublinks_bound(mixed).first == 3);

    // 3-chain of unknots with consecutive linking number 1: split one end off
    // at a time.
    SublinkTree two;
    two.children = {unknot, unknot};
    two.lk = 1;
    SublinkTree chain;
    chain.children = {two, unknot};
    chain.lk = 1;
    CHECK(lemma_sublinks_bound(chain).first == 2);

    SublinkTree bad;
    bad.children = {unknot, unknot, unknot};
    CHECK_THROWS_AS(lemma_sublinks_bound(bad), std::invalid_argument);
    SublinkTree empty_leaf;
    CHECK_THROWS_AS(lemma_sublinks_bound(empty_leaf), std::invalid_argument);
}

TEST_CASE("lemma_kohn_check") {
    LinkRecord det40;
    det40.name = "x";
    det40.components = 2;
    det40.signatures = std::vector<long>{-3, -3};
    det40.determinant = Integer(40);
    det40.homology = FiniteAbelianGroup::from_factors({Integer(40)});
    CHECK(lemma_kohn_check(det40) == KohnCase::cstar_ge_3);

    LinkRecord det30;
    det30.name = "y";
    det30.components = 2;
    det30.determinant = Integer(30);
    det30.homology = FiniteAbelianGroup::from_factors({Integer(30)});
    CHECK(lemma_kohn_check(det30) == KohnCase::cstar_ge_3);

    auto det48 = l9a10_record();
    CHECK(lemma_kohn_check(det48) == KohnCase::not_obstructed_iii);

    LinkRecord det8;
    det8.name = "z";
    det8.components = 2;
    det8.determinant = Integer(8);
    det8.homology = FiniteAbelianGroup::from_factors({Integer(8)});
    CHECK(lemma_kohn_check(det8) == KohnCase::not_obstructed_i); // 8 = 2*2^2

    LinkRecord noncyclic;
    noncyclic.name = "w";
    noncyclic.components = 2;
    noncyclic.determinant = Integer(16);
    noncyclic.homology = FiniteAbelianGroup::from_factors({Integer(4), Integer(4)});
    CHECK(lemma_kohn_check(noncyclic) == KohnCase::inapplicable);

    LinkRecord threecomp;
    threecomp.name = "v";
    threecomp.components = 3;
    threecomp.determinant = Integer(30);
    threecomp.homology = FiniteAbelianGroup::from_factors({Integer(30)});
    CHECK(lemma_kohn_check(threecomp) == KohnCase::inapplicable);
}

TEST_CASE("qa_candidates") {
    CHECK(qa_candidates(Integer(48)) == std::vector<long>{4, 13});
    CHECK(qa_candidates(Integer(40)) == std::vector<long>{11});
    CHECK(qa_candidates(Integer(30)).empty());
    CHECK(qa_candidates(Integer(4)) == std::vector<long>{2});
}

TEST_CASE("run_obstruction on L9a10") {
    auto r = l9a10_record();
    // sigma = +1, equality at p = 0: two negative double points.
    auto v02 = run_obstruction(r, CrossingBudget{0, 2});
    CHECK(v02.outcome == ObstructionRun::Outcome::obstructed);
    bool embedding_rule = false, linking_rule = false;
    for (const auto& e : v02.provenance) {
        if (e.rule == "corollary-embedding") embedding_rule = true;
        if (e.rule == "linking-form") linking_rule = true;
    }
    CHECK(embedding_rule);
    CHECK(linking_rule);

    // The mirror record with signature -1 and one double point of each sign.
    auto m = l9a10_mirror_record();
    auto v11 = run_obstruction(m, CrossingBudget{1, 1});
    CHECK(v11.outcome == ObstructionRun::Outcome::obstructed);

    // Non-equality budget.
    auto v20 = run_obstruction(r, CrossingBudget{2, 0});
    CHECK(v20.outcome == ObstructionRun::Outcome::inconclusive);
}

TEST_CASE("goeritz-only records run the obstruction branches") {
    LinkRecord r = l9a10_record();
    r.pd.reset();
    GoeritzData g;
    g.white_gram = IntMatrix{{2, -1, 0, 0, -1, 0}, {-1, 2, -1, 0, 0, 0}, {0, -1, 3, -1, 0, 0},
                             {0, 0, -1, 3, -1, -1}, {-1, 0, 0, -1, 3, 0}, {0, 0, 0, -1, 0, 2}};
    g.black_gram = IntMatrix{{-5, 1, 1}, {1, -4, 2}, {1, 2, -4}};
    g.determinant = Integer(48);
    g.nullity_zero = true;
    r.goeritz = g;
    auto v = run_obstruction(r, CrossingBudget{0, 2});
    CHECK(v.outcome == ObstructionRun::Outcome::obstructed);
    auto verdict = evaluate_record(r);
    CHECK(verdict.lower_bound_cstar == 3);
}

TEST_CASE("run_obstruction on an unlink-like record") {
    LinkRecord r;
    r.name = "unlink2";
    r.components = 2;
    r.signatures = std::vector<long>{0, 0};
    r.nullity = 1;
    r.determinant = Integer(0);
    auto v = run_obstruction(r, CrossingBudget{0, 0});
    CHECK(v.outcome != ObstructionRun::Outcome::obstructed);
}

TEST_CASE("embedding branch is monotone in the budget") {
    // With a fixed orientation, enlarging (p, n) pointwise can only keep the
    // embedding test passing: every smaller-rank embedding extends by
    // padding.  The Hopf link passes at (1,0) and stays passing.
    auto r = hopf_record();
    for (long extra = 0; extra <= 2; ++extra) {
        auto v = run_obstruction(r, CrossingBudget{1, extra});
        CHECK(v.outcome == ObstructionRun::Outcome::not_obstructed);
    }
}

TEST_CASE("evaluate_record reproduces the featured bounds") {
    auto v = evaluate_record(l9a10_record());
    CHECK(v.lower_bound_cstar == 3);
    CHECK(v.lower_bound_u == 3);
    REQUIRE(v.matched_upper.has_value());
    CHECK(*v.matched_upper == 3);
    CHECK(!v.provenance.empty());

    auto h = evaluate_record(hopf_record());
    CHECK(h.lower_bound_cstar == 1);
    CHECK(h.lower_bound_u == 1);
}

TEST_CASE("record json round trip and validation") {
    std::string good = R"({
      "name": "L9a2", "components": 2, "signatures": [-3, -3], "nullity": 0,
      "determinant": 40, "homology": [40], "known_upper_bound": 3
    })";
    auto r = record_from_json_text(good);
    CHECK(r.name == "L9a2");
    CHECK(lemma_kohn_check(r) == KohnCase::cstar_ge_3);
    auto v = evaluate_record(r);
    CHECK(v.lower_bound_cstar == 3);

    // |homology| != determinant
    CHECK_THROWS_AS(record_from_json_text(R"({"name":"bad","determinant":40,"homology":[20]})"),
                    std::invalid_argument);
    // signature count mismatch
    CHECK_THROWS_AS(
        record_from_json_text(R"({"name":"bad","components":2,"signatures":[1,1,1]})"),
        std::invalid_argument);
    // nullity/determinant inconsistency
    CHECK_THROWS_AS(
        record_from_json_text(R"({"name":"bad","determinant":0,"nullity":0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(record_from_json_text("{"), std::invalid_argument);
}

TEST_CASE("dataset loads and the table is well formed") {
    std::ifstream in(DATASET_PATH);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    auto records = dataset_from_json_text(os.str());
    CHECK(records.size() == 130);

    auto tsv = table_tsv(records);
    std::istringstream lines(tsv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "name\tk\tcstar_lower\tu_lower\tdataset_u\trules");
    std::size_t rows = 0;
    std::string prev;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find('\t') != std::string::npos);
    }
    CHECK(rows == records.size());

    // Computed lower bounds never exceed the tabulated unlinking number.
    for (const auto& r : records) {
        auto v = evaluate_record(r);
        REQUIRE(r.known_upper_bound.has_value());
        CHECK(v.lower_bound_u <= *r.known_upper_bound);
        if (v.lower_bound_cstar > 0) CHECK(!v.provenance.empty());
    }
}
