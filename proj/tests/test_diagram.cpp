#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulb/char_cosets.hpp"
#include "ulb/diagram.hpp"
#include "ulb/lattice.hpp"

#include "published_values.hpp"

#include <set>

using namespace ulb;

namespace {

// Alternating diagrams with verified invariants (dataset links).
const char* kHopf = "PD[X[4,2,3,1],X[2,4,1,3]]";
const char* kT24 = "PD[X[8,4,5,3],X[2,6,3,5],X[6,2,7,1],X[4,8,1,7]]";
const char* kT26 = "PD[X[12,6,7,5],X[4,8,5,7],X[8,4,9,3],X[2,10,3,9],X[10,2,11,1],X[6,12,1,11]]";
const char* kTrefoil = "PD[X[2,5,3,6],X[4,1,5,2],X[6,3,1,4]]";
const char* kChain3 = "PD[X[6,4,5,3],X[2,6,3,5],X[4,8,1,7],X[8,2,7,1]]";
const char* kFig8 = "PD[X[2,7,3,8],X[6,3,7,4],X[4,2,5,1],X[8,6,1,5]]";
const char* kWhitehead = "PD[X[10,4,5,3],X[2,6,3,5],X[4,7,1,8],X[8,1,9,2],X[6,9,7,10]]";
const char* kBorromean =
    "PD[X[8,4,5,3],X[2,11,3,12],X[10,8,11,7],X[12,5,9,6],X[6,1,7,2],X[4,10,1,9]]";
const char* kL9a10 =
    "PD[X[4,14,5,13],X[12,6,13,5],X[6,12,7,11],X[2,9,3,10],X[8,1,9,2],X[18,3,15,4],"
    "X[10,18,11,17],X[14,15,1,16],X[16,8,17,7]]";

// A 2-component unlink diagram with a clasp of two like crossings.
const char* kUnlink2 = "PD[X[1,3,2,4],X[2,3,1,4]]";

std::vector<const char*> alternating_codes() {
    return {kHopf, kT24, kT26, kTrefoil, kChain3, kFig8, kWhitehead, kBorromean, kL9a10};
}

const IntMatrix& negdef_gram(const GoeritzData& g) {
    return definiteness(g.white_gram) == Definiteness::negative ? g.white_gram : g.black_gram;
}

const IntMatrix& posdef_gram(const GoeritzData& g) {
    return definiteness(g.white_gram) == Definiteness::positive ? g.white_gram : g.black_gram;
}

} // namespace

TEST_CASE("pd text parsing") {
    auto a = pd_from_text("PD[X[1,4,2,3],X[3,2,4,1]]");
    CHECK(a.crossings.size() == 2);
    CHECK(a.crossings[0] == std::array<int, 4>{1, 4, 2, 3});
    auto b = pd_from_text(" pd[ x[1,4,2,3] , x[3,2,4,1] ] ");
    CHECK(b.crossings == a.crossings);
    auto c = pd_from_text("[[1,4,2,3],[3,2,4,1]]");
    CHECK(c.crossings == a.crossings);

    CHECK_THROWS_AS(pd_from_text("PD[]"), PDError);
    CHECK_THROWS_AS(pd_from_text("PD[X[1,2,3]]"), PDError);
    CHECK_THROWS_AS(pd_from_text("PD[X[1,4,2,3],X[3,2,4,1]] junk"), PDError);
    CHECK_THROWS_AS(pd_from_text("nonsense"), PDError);
}

TEST_CASE("validation rejects malformed codes") {
    // label 5 occurs once
    CHECK_THROWS_AS(analyze(pd_from_text("PD[X[1,4,2,3],X[3,2,4,5]]")), PDError);
    // split diagram: two disjoint Hopf-like pieces
    CHECK_THROWS_AS(
        analyze(pd_from_text("PD[X[4,2,3,1],X[2,4,1,3],X[8,6,7,5],X[6,8,5,7]]")), PDError);
    // nonplanar gluing fails the Euler check
    CHECK_THROWS_AS(analyze(pd_from_text("PD[X[1,2,3,4],X[3,4,1,2]]")), PDError);
}

TEST_CASE("faces and euler check on all dataset codes") {
    for (const char* pd : alternating_codes()) {
        auto a = analyze(pd_from_text(pd));
        CHECK(a.num_faces == a.code.crossings.size() + 2);
        // corners around each crossing alternate colors
        for (std::size_t c = 0; c < a.code.crossings.size(); ++c) {
            CHECK(a.corner_color(c, 0) == a.corner_color(c, 2));
            CHECK(a.corner_color(c, 1) == a.corner_color(c, 3));
            CHECK(a.corner_color(c, 0) != a.corner_color(c, 1));
        }
    }
}

TEST_CASE("hopf link data") {
    auto code = pd_from_text(kHopf);
    auto a = analyze(code);
    CHECK(a.num_components == 2);
    auto g = goeritz_from_pd(code);
    CHECK(g.white_gram.rows() == 1);
    CHECK(g.black_gram.rows() == 1);
    CHECK(abs(g.white_gram(0, 0)) == 2);
    CHECK(abs(g.black_gram(0, 0)) == 2);
    CHECK(g.determinant == 2);

    // The orientation with linking number +1 is the positive Hopf link with
    // signature -1 (Seifert matrix (-1), symmetrized (-2)).
    for (const std::vector<int>& eps : {std::vector<int>{1, 1}, std::vector<int>{1, -1}}) {
        long lk = linking_numbers(code, eps).at({0, 1});
        long sig = signature_gl(code, eps);
        if (lk == 1) CHECK(sig == -1);
        if (lk == -1) CHECK(sig == 1);
    }
}

TEST_CASE("L9a10 diagram reproduces the published Goeritz matrices") {
    auto code = pd_from_text(kL9a10);
    auto a = analyze(code);
    CHECK(a.num_components == 2);
    auto g = goeritz_from_pd(code);
    CHECK(g.determinant == 48);
    CHECK(linking_numbers(code).at({0, 1}) == 0);

    const IntMatrix& pos = posdef_gram(g);
    const IntMatrix& neg = negdef_gram(g);
    REQUIRE(pos.rows() == 6);
    REQUIRE(neg.rows() == 3);
    CHECK(is_isometric(pos, published::kGoeritz6));
    CHECK(is_isometric(-neg, published::kGoeritz3));

    CHECK(quasi_orientation_signatures(code) == std::vector<long>{1, 1});
    CHECK(quasi_orientation_signatures(mirror(code)) == std::vector<long>{-1, -1});

    // The mirror diagram carries the positive-definite 3x3 form.
    auto gm = goeritz_from_pd(mirror(code));
    CHECK(is_isometric(posdef_gram(gm), published::kGoeritz3));
}

TEST_CASE("two goeritz matrices present the same group") {
    for (const char* pd : alternating_codes()) {
        auto g = goeritz_from_pd(pd_from_text(pd));
        auto fw = smith_normal_form(g.white_gram).invariant_factors;
        auto fb = smith_normal_form(g.black_gram).invariant_factors;
        // strip unit factors
        std::multiset<Integer> sw, sb;
        for (const auto& f : fw)
            if (f != 1) sw.insert(f);
        for (const auto& f : fb)
            if (f != 1) sb.insert(f);
        CHECK(sw == sb);
    }
}

TEST_CASE("alternating definiteness") {
    for (const char* pd : alternating_codes()) {
        auto g = goeritz_from_pd(pd_from_text(pd));
        auto dw = definiteness(g.white_gram);
        auto db = definiteness(g.black_gram);
        bool wp = dw == Definiteness::positive, bp = db == Definiteness::positive;
        bool wn = dw == Definiteness::negative, bn = db == Definiteness::negative;
        CHECK(((wp && bn) || (wn && bp)));
    }
}

TEST_CASE("mirror antisymmetry of the signature") {
    for (const char* pd : alternating_codes()) {
        auto code = pd_from_text(pd);
        auto m = mirror(code);
        auto a = analyze(code);
        const std::size_t k = a.num_components;
        for (std::size_t mask = 0; mask < (std::size_t{1} << (k - 1)); ++mask) {
            std::vector<int> eps(k, 1);
            for (std::size_t i = 1; i < k; ++i)
                if (mask & (std::size_t{1} << (i - 1))) eps[i] = -1;
            CHECK(signature_gl(m, eps) == -signature_gl(code, eps));
        }
        // definiteness swaps under mirroring
        auto g = goeritz_from_pd(code);
        auto gm = goeritz_from_pd(m);
        CHECK(definiteness(posdef_gram(g)) == definiteness(posdef_gram(gm)));
        CHECK(posdef_gram(g).rows() + posdef_gram(gm).rows() ==
              g.white_gram.rows() + g.black_gram.rows());
    }
}

TEST_CASE("spin rho equals -sigma/4 on the alternating dataset") {
    // For nonsplit alternating links the spin correction terms are exactly
    // -sigma/4 across quasi-orientations.
    for (const char* pd : alternating_codes()) {
        auto code = pd_from_text(pd);
        auto g = goeritz_from_pd(code);
        auto table = d_invariants_alternating(negdef_gram(g));
        std::multiset<Rational> spin_d;
        for (const auto& e : table.spin_elements) spin_d.insert(table.values.at(e));
        std::multiset<Rational> expected;
        for (long s : quasi_orientation_signatures(code)) expected.insert(Rational(-s) / 4);
        CHECK(spin_d == expected);
        // and the mod-2 statement
        for (const auto& v : spin_d) {
            bool ok = false;
            for (long s : quasi_orientation_signatures(code))
                if (congruent_mod2(v, Rational(-s) / 4)) ok = true;
            CHECK(ok);
        }
    }
}

TEST_CASE("signature examples") {
    // trefoil: one chirality has sigma -2, the other +2
    auto tre = pd_from_text(kTrefoil);
    long st = signature_gl(tre);
    CHECK(abs(Integer(st)) == 2);
    CHECK(signature_gl(mirror(tre)) == -st);

    CHECK(signature_gl(pd_from_text(kFig8)) == 0);

    // (2,4) torus link signatures over quasi-orientations
    auto t24 = pd_from_text(kT24);
    auto sigs = quasi_orientation_signatures(t24);
    CHECK((sigs == std::vector<long>{-3, -1} || sigs == std::vector<long>{-1, 3}));

    CHECK(quasi_orientation_signatures(pd_from_text(kBorromean)) ==
          std::vector<long>{0, 0, 0, 0});
}

TEST_CASE("linking numbers") {
    CHECK(abs(Integer(linking_numbers(pd_from_text(kT24)).at({0, 1}))) == 2);
    CHECK(abs(Integer(linking_numbers(pd_from_text(kT26)).at({0, 1}))) == 3);
    CHECK(linking_numbers(pd_from_text(kWhitehead)).at({0, 1}) == 0);
    auto bor = linking_numbers(pd_from_text(kBorromean));
    for (const auto& [pr, v] : bor) CHECK(v == 0);
    // 3-chain: middle component links both ends
    auto chain = linking_numbers(pd_from_text(kChain3));
    std::multiset<long> vals;
    for (const auto& [pr, v] : chain) vals.insert(std::abs(v));
    CHECK(vals == std::multiset<long>{0, 1, 1});
}

TEST_CASE("determinant and nullity") {
    auto g = goeritz_from_pd(pd_from_text(kL9a10));
    auto [det, nz] = determinant_and_nullity(g);
    CHECK(det == 48);
    CHECK(nz);

    auto unlink = goeritz_from_pd(pd_from_text(kUnlink2));
    auto [det0, nz0] = determinant_and_nullity(unlink);
    CHECK(det0 == 0);
    CHECK_FALSE(nz0);
}

TEST_CASE("dataset determinants") {
    auto det_of = [](const char* pd) { return goeritz_from_pd(pd_from_text(pd)).determinant; };
    CHECK(det_of(kHopf) == 2);
    CHECK(det_of(kT24) == 4);
    CHECK(det_of(kT26) == 6);
    CHECK(det_of(kTrefoil) == 3);
    CHECK(det_of(kFig8) == 5);
    CHECK(det_of(kWhitehead) == 8);
    CHECK(det_of(kBorromean) == 16);
    auto bor = smith_normal_form(goeritz_from_pd(pd_from_text(kBorromean)).white_gram);
    std::vector<Integer> nontrivial;
    for (const auto& f : bor.invariant_factors)
        if (f != 1) nontrivial.push_back(f);
    CHECK(nontrivial == std::vector<Integer>{4, 4});
}
