#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ulb/lattice.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace ulb;

namespace {

const IntMatrix G3{{5, -1, -1}, {-1, 4, -2}, {-1, -2, 4}};
const IntMatrix G6{{2, -1, 0, 0, -1, 0}, {-1, 2, -1, 0, 0, 0}, {0, -1, 3, -1, 0, 0},
                   {0, 0, -1, 3, -1, -1}, {-1, 0, 0, -1, 3, 0}, {0, 0, 0, -1, 0, 2}};

// The published embedding lists for the two Goeritz lattices of L9a10.
const std::vector<IntMatrix> kZ6Lists = {
    IntMatrix{{2, 1, 0, 0, 0, 0}, {0, -1, 1, 1, 1, 0}, {0, -1, -1, -1, -1, 0}},
    IntMatrix{{2, 1, 0, 0, 0, 0}, {-1, 1, 1, 1, 0, 0}, {0, -1, -1, 0, 1, 1}},
    IntMatrix{{1, 1, 1, 1, 1, 0}, {1, -1, -1, 0, 0, 1}, {-1, 1, -1, 0, 0, -1}},
    IntMatrix{{1, 1, 1, 1, 1, 0}, {1, -1, -1, 0, 0, 1}, {-1, 0, 0, 1, -1, -1}},
};

const std::vector<IntMatrix> kZ9Lists = {
    IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0},
              {0, -1, 1, 0, 0, 0, 0, 0, 0},
              {0, 0, -1, 1, 1, 0, 0, 0, 0},
              {0, 0, 0, 0, -1, 1, 1, 0, 0},
              {-1, 0, 0, -1, 1, 0, 0, 0, 0},
              {0, 0, 0, 0, 0, 0, -1, 1, 0}},
    IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0},
              {0, -1, 1, 0, 0, 0, 0, 0, 0},
              {0, 0, -1, 1, 1, 0, 0, 0, 0},
              {0, 0, 0, 0, -1, 1, 1, 0, 0},
              {-1, 0, 0, 0, 0, 0, -1, 1, 0},
              {0, 0, 0, -1, 1, 0, 0, 0, 0}},
    IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0},
              {0, -1, 1, 0, 0, 0, 0, 0, 0},
              {0, 0, -1, 1, 1, 0, 0, 0, 0},
              {0, 0, 0, 0, -1, 1, 1, 0, 0},
              {-1, 0, 0, 0, 0, 0, -1, 1, 0},
              {0, 0, 0, 0, 0, -1, 0, 0, 1}},
    IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0},
              {0, -1, 1, 0, 0, 0, 0, 0, 0},
              {0, 0, -1, 1, 1, 0, 0, 0, 0},
              {0, 0, 0, 0, -1, 1, 1, 0, 0},
              {-1, 0, 0, 0, 0, 0, -1, 1, 0},
              {0, 0, 0, 0, 0, 0, -1, -1, 0}},
    IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0},
              {0, -1, 1, 0, 0, 0, 0, 0, 0},
              {-1, 1, 0, 1, 0, 0, 0, 0, 0},
              {0, 0, 0, -1, 1, 1, 0, 0, 0},
              {0, -1, -1, 1, 0, 0, 0, 0, 0},
              {0, 0, 0, 0, -1, 0, 1, 0, 0}}};

std::vector<Integer> vec(std::initializer_list<long> v) {
    return std::vector<Integer>(v.begin(), v.end());
}

// Independent brute-force class count: enumerate all image tuples with
// coordinates bounded by isqrt of the diagonal, then quotient by explicitly
// generated signed permutations.
std::size_t brute_force_class_count(const IntMatrix& gram, std::size_t N) {
    const std::size_t m = gram.rows();
    long bound = 0;
    long maxdiag = 0;
    for (std::size_t i = 0; i < m; ++i) maxdiag = std::max(maxdiag, (long)gram(i, i).get_si());
    while ((bound + 1) * (bound + 1) <= maxdiag) ++bound;

    std::vector<std::vector<long>> coords;
    std::vector<long> cur(N);
    std::function<void(std::size_t)> gen = [&](std::size_t c) {
        if (c == N) {
            coords.push_back(cur);
            return;
        }
        for (long v = -bound; v <= bound; ++v) {
            cur[c] = v;
            gen(c + 1);
        }
    };
    gen(0);

    std::vector<IntMatrix> tuples;
    std::vector<std::size_t> pick(m);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            IntMatrix E(m, N);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < N; ++c) E(r, c) = coords[pick[r]][c];
            tuples.push_back(E);
            return;
        }
        for (std::size_t a = 0; a < coords.size(); ++a) {
            long norm = 0;
            for (long v : coords[a]) norm += v * v;
            if (norm != gram(i, i).get_si()) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                long d = 0;
                for (std::size_t c = 0; c < N; ++c) d += coords[a][c] * coords[pick[j]][c];
                if (d != gram(i, j).get_si()) ok = false;
            }
            if (!ok) continue;
            pick[i] = a;
            rec(i + 1);
        }
    };
    rec(0);
    if (tuples.empty()) return 0;

    // All signed permutation matrices of size N (as column maps).
    std::vector<std::vector<std::pair<std::size_t, int>>> sp; // col j <- (src, sign)
    std::vector<std::size_t> perm(N);
    for (std::size_t i = 0; i < N; ++i) perm[i] = i;
    do {
        for (std::size_t mask = 0; mask < (std::size_t{1} << N); ++mask) {
            std::vector<std::pair<std::size_t, int>> mp(N);
            for (std::size_t j = 0; j < N; ++j) mp[j] = {perm[j], (mask >> j) & 1 ? -1 : 1};
            sp.push_back(mp);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto min_image = [&](const IntMatrix& E) {
        IntMatrix best = E;
        for (const auto& mp : sp) {
            IntMatrix F(m, N);
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t i = 0; i < m; ++i)
                    F(i, j) = Integer(mp[j].second) * E(i, mp[j].first);
            if (F < best) best = F;
        }
        return best;
    };

    std::set<IntMatrix> classes;
    for (const auto& E : tuples) classes.insert(min_image(E));
    return classes.size();
}

} // namespace

TEST_CASE("trivial embeddings") {
    auto e = orthogonal_embeddings(Lattice::from_gram(IntMatrix{{1}}), 1);
    REQUIRE(e.size() == 1);
    CHECK(e[0].images == IntMatrix{{1}});

    CHECK_THROWS_AS(orthogonal_embeddings(Lattice::from_gram(IntMatrix{{-1}}), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(orthogonal_embeddings(Lattice::from_gram(IntMatrix{{1, 1}, {1, 1}}), 2),
                    std::invalid_argument);
}

TEST_CASE("published Z^6 embedding classes of the 3x3 Goeritz lattice") {
    auto classes = orthogonal_embeddings(Lattice::from_gram(G3), 6);
    CHECK(classes.size() == 6);
    for (const auto& E : classes) CHECK(E.images * E.images.transpose() == G3);

    // Each published list lands in a distinct class.
    std::set<IntMatrix> canon;
    for (const auto& E : classes) canon.insert(E.images);
    std::set<IntMatrix> published;
    for (const auto& M : kZ6Lists) {
        CHECK(M * M.transpose() == G3);
        IntMatrix c = signed_permutation_canonical(M);
        CHECK(canon.count(c) == 1);
        published.insert(c);
    }
    CHECK(published.size() == 4);

    // Viewed as unordered sets of lattice vectors the classes reduce to the
    // published four, one per published list.
    auto sets = embedding_set_classes(classes, G3);
    CHECK(sets.size() == 4);
    for (const auto& group : sets) {
        std::size_t hits = 0;
        for (std::size_t idx : group) hits += published.count(classes[idx].images);
        CHECK(hits == 1);
    }
}

TEST_CASE("published Z^9 embedding classes of the 6x6 Goeritz lattice") {
    auto classes = orthogonal_embeddings(Lattice::from_gram(G6), 9);
    CHECK(classes.size() == 5);

    std::set<IntMatrix> canon;
    for (const auto& E : classes) canon.insert(E.images);
    std::set<IntMatrix> published;
    for (const auto& M : kZ9Lists) {
        CHECK(M * M.transpose() == G6);
        published.insert(signed_permutation_canonical(M));
    }
    CHECK(published.size() == 5);
    CHECK(published == canon);
}

TEST_CASE("embedding completeness against brute force") {
    struct Case {
        IntMatrix gram;
        std::size_t N;
    };
    std::vector<Case> cases = {
        {IntMatrix{{1}}, 2},      {IntMatrix{{2}}, 3},
        {IntMatrix{{4}}, 4},      {IntMatrix{{1, 0}, {0, 1}}, 3},
        {IntMatrix{{2, 1}, {1, 2}}, 3}, {IntMatrix{{2, 0}, {0, 2}}, 4},
        {IntMatrix{{3, 1}, {1, 3}}, 4}, {IntMatrix{{5, 0}, {0, 5}}, 3},
        {IntMatrix{{6, 2}, {2, 6}}, 4},
    };
    for (const auto& c : cases) {
        CAPTURE(c.gram.to_string());
        auto mine = orthogonal_embeddings(Lattice::from_gram(c.gram), c.N);
        CHECK(mine.size() == brute_force_class_count(c.gram, c.N));
    }
}

TEST_CASE("orthogonal complement") {
    Embedding e1{IntMatrix{{1, 0}}, 2};
    auto c1 = orthogonal_complement(e1);
    CHECK(c1.gram == IntMatrix{{1}});

    auto classes = orthogonal_embeddings(Lattice::from_gram(G3), 6);
    for (const auto& E : classes) {
        auto C = orthogonal_complement(E);
        CHECK(C.basis.rows() == 3);
        CHECK((E.images * C.basis.transpose()).is_zero());
        CHECK(rank(E.images.vstack(C.basis)) == 6);
    }
}

TEST_CASE("vectors_of_norm") {
    auto v2 = vectors_of_norm(IntMatrix::identity(2), 2);
    REQUIRE(v2.size() == 2); // (1,1) and (1,-1) up to sign
    CHECK(std::count(v2.begin(), v2.end(), vec({1, 1})) == 1);
    CHECK(std::count(v2.begin(), v2.end(), vec({1, -1})) == 1);

    auto v311 = vectors_of_norm(IntMatrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2);
    CHECK(v311.size() == 2);
    for (const auto& v : v311) CHECK(v[0] == 0);

    CHECK(vectors_of_norm(IntMatrix{{4}}, 3).empty());
    CHECK(vectors_of_norm(IntMatrix{{4}}, 4).size() == 1);
}

TEST_CASE("norm-two orthogonal sets") {
    // Standard Z^2: the only pair up to sign and order is {(1,1),(1,-1)}.
    ComplementData z2{IntMatrix::identity(2), IntMatrix::identity(2)};
    auto sets = norm_two_orthogonal_sets(z2, 2);
    REQUIRE(sets.size() == 1);
    CHECK(sets[0] == IntMatrix{{1, 1}, {1, -1}});

    // <3> + Z^2 contains pairs, none primitive.
    ComplementData c311{IntMatrix::identity(3), IntMatrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    auto pairs = norm_two_orthogonal_sets(c311, 2);
    REQUIRE(pairs.size() == 1);
    CHECK_FALSE(is_primitive_sublattice(pairs[0], c311));

    // Degenerate gram: the null direction is ignored.
    ComplementData degen{IntMatrix::identity(2), IntMatrix{{1, 1}, {1, 1}}};
    CHECK(norm_two_orthogonal_sets(degen, 1).empty());
    ComplementData degen2{IntMatrix::identity(3), IntMatrix{{2, 0, 0}, {0, 0, 0}, {0, 0, 2}}};
    auto single = norm_two_orthogonal_sets(degen2, 2);
    REQUIRE(single.size() == 1);
    CHECK(single[0](0, 1) == 0);
    CHECK(single[0](1, 1) == 0);

    CHECK_THROWS_AS(
        norm_two_orthogonal_sets(ComplementData{IntMatrix::identity(1), IntMatrix{{-2}}}, 1),
        std::invalid_argument);
}

TEST_CASE("complements of the published Z^9 classes") {
    auto classes = orthogonal_embeddings(Lattice::from_gram(G6), 9);
    REQUIRE(classes.size() == 5);
    std::size_t with_pairs = 0;
    IntMatrix diag311{{3, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& E : classes) {
        auto C = orthogonal_complement(E);
        auto pairs = norm_two_orthogonal_sets(C, 2);
        if (pairs.empty()) continue;
        ++with_pairs;
        // This must be the class isometric to <3> + Z^2 and every pair of
        // orthogonal square-2 vectors spans a non-primitive sublattice.
        CHECK(is_isometric(C.gram, diag311));
        for (const auto& p : pairs) CHECK_FALSE(is_primitive_sublattice(p, C));
    }
    CHECK(with_pairs == 1);
}

TEST_CASE("primitivity") {
    CHECK(is_primitive_sublattice(IntMatrix{{1, 0, 0}, {0, 1, 0}}));
    CHECK_FALSE(is_primitive_sublattice(IntMatrix{{2}}));
    CHECK_THROWS_AS(is_primitive_sublattice(IntMatrix{{1, 1}, {2, 2}}), std::invalid_argument);

    // Agreement with direct torsion computation on random instances.
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> val(-4, 4);
    std::uniform_int_distribution<std::size_t> nd(1, 4);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = nd(rng);
        std::size_t m = std::uniform_int_distribution<std::size_t>(1, n)(rng);
        IntMatrix V(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) V(i, j) = val(rng);
        if (rank(V) != m) continue;
        auto s = smith_normal_form(V);
        bool torsion_free = true;
        for (const auto& f : s.invariant_factors)
            if (f > 1) torsion_free = false;
        CHECK(is_primitive_sublattice(V) == torsion_free);
    }
}

TEST_CASE("automorphisms and isometry") {
    // Z^2 has the dihedral group of order 8.
    CHECK(lattice_automorphisms(IntMatrix::identity(2)).size() == 8);
    // <1> + <2> only allows coordinate sign flips.
    CHECK(lattice_automorphisms(IntMatrix{{1, 0}, {0, 2}}).size() == 4);

    CHECK(is_isometric(IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, -1}, {-1, 2}}));
    CHECK_FALSE(is_isometric(IntMatrix{{1, 0}, {0, 4}}, IntMatrix{{2, 1}, {1, 2}}));
    CHECK_FALSE(is_isometric(IntMatrix{{1}}, IntMatrix{{2}}));
    // Same determinant, not isometric.
    CHECK_FALSE(is_isometric(IntMatrix{{1, 0}, {0, 4}}, IntMatrix{{2, 0}, {0, 2}}));
}
