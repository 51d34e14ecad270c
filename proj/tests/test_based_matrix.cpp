#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "vknot/based_matrix.hpp"
#include "vknot/invariants.hpp"
#include "vknot/moves.hpp"
#include "vknot/parallel.hpp"

using namespace vknot;

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix b3_expected() {
    return {{0, 2, 2, -2, -2},
            {-2, 0, 0, -2, -3},
            {-2, 0, 0, -1, -2},
            {2, 2, 1, 0, 0},
            {2, 3, 2, 0, 0}};
}

Matrix b4_expected() {
    return {{0, 2, 2, -2, -2},
            {-2, 0, 0, -3, -2},
            {-2, 0, 0, -2, -1},
            {2, 3, 2, 0, 0},
            {2, 2, 1, 0, 0}};
}

// stuck for plain eliminations, but an N switch unlocks a pair deletion
SBM n_unlock_matrix() {
    return SBM{{{0, -1, -1, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}, {-1, -1, -1, 0}}};
}

// primitive SBM whose homology class holds two primitives related by N
SBM two_primitive_class() { return SBM{{{0, -1, 1}, {1, 0, 1}, {-1, -1, 0}}}; }

// d annihilating-like, ordinary core element g available for the switch
SBM annih_d_with_core() {
    return SBM{{{0, 1, 0, 0}, {-1, 0, -1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}};
}

// --- test-only oracles: exhaustive search over elimination orders ---

std::vector<std::vector<int>> all_single_eliminations(const Matrix& b,
                                                      const std::set<int>& protected_idx) {
    int n = static_cast<int>(b.size());
    auto zero_row = [&](int g) {
        for (int v : b[g])
            if (v) return false;
        return true;
    };
    auto sum_to_s = [&](int g1, int g2) {
        for (int h = 0; h < n; ++h)
            if (b[g1][h] + b[g2][h] != b[0][h]) return false;
        return true;
    };
    std::vector<std::vector<int>> out;
    for (int g = 0; g < n; ++g) {
        if (protected_idx.count(g)) continue;
        if (zero_row(g)) out.push_back({g});
        if (b[g] == b[0]) out.push_back({g});
        for (int h = g + 1; h < n; ++h)
            if (!protected_idx.count(h) && sum_to_s(g, h)) out.push_back({g, h});
    }
    return out;
}

Matrix drop_rows(const Matrix& b, std::vector<int> idxs) {
    std::sort(idxs.begin(), idxs.end());
    std::vector<int> keep;
    for (int i = 0; i < (int)b.size(); ++i)
        if (!std::binary_search(idxs.begin(), idxs.end(), i)) keep.push_back(i);
    Matrix out(keep.size(), std::vector<int>(keep.size()));
    for (int i = 0; i < (int)keep.size(); ++i)
        for (int j = 0; j < (int)keep.size(); ++j) out[i][j] = b[keep[i]][keep[j]];
    return out;
}

void all_primitives_bm(const Matrix& b, std::set<Matrix>& out) {
    auto elims = all_single_eliminations(b, {0});
    if (elims.empty()) {
        out.insert(canonical_form(BasedMatrix{b}));
        return;
    }
    for (const auto& e : elims) all_primitives_bm(drop_rows(b, e), out);
}

Matrix reorder_last(const Matrix& b, int idx) {
    int n = static_cast<int>(b.size());
    std::vector<int> perm;
    for (int i = 0; i < n; ++i)
        if (i != idx) perm.push_back(i);
    perm.push_back(idx);
    Matrix out(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = b[perm[i]][perm[j]];
    return out;
}

// explores every elimination order and every reachable d designation
void all_primitives_sbm(const Matrix& b, std::set<Matrix>& out, std::set<Matrix>& seen) {
    if (!seen.insert(b).second) return;
    int n = static_cast<int>(b.size());
    // reachable d designations (N orbit)
    std::set<int> orbit = {n - 1};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int di : std::set<int>(orbit))
            for (int g = 1; g < n; ++g) {
                if (orbit.count(g)) continue;
                bool comp = true;
                for (int h = 0; h < n; ++h)
                    if (b[g][h] + b[di][h] != b[0][h]) comp = false;
                if (comp) {
                    orbit.insert(g);
                    grew = true;
                }
            }
    }
    bool any = false;
    for (int di : orbit) {
        Matrix m = reorder_last(b, di);
        for (const auto& e : all_single_eliminations(m, {0, n - 1})) {
            any = true;
            all_primitives_sbm(drop_rows(m, e), out, seen);
        }
    }
    if (!any)
        for (int di : orbit) out.insert(canonical_form(SBM{reorder_last(b, di)}));
}

bool related_by_iso_or_one_move(const SBM& a, const SBM& b) {
    if (is_isomorphic(a, b)) return true;
    for (int g : switch_candidates(a))
        if (is_isomorphic(switch_N(a, g), b)) return true;
    if (classify_element(a, a.d_index()) == ElementClass::annihilating_like &&
        is_isomorphic(move_D(a, DMove::d12), b))
        return true;
    // core-like includes the coinciding annihilating-like case
    bool core = a.b[a.d_index()] == a.b[0];
    if (core && is_isomorphic(move_D(a, DMove::d21), b)) return true;
    return false;
}

SBM random_tower(Rng& rng, const SBM& seed, int steps) {
    SBM m = seed;
    for (int i = 0; i < steps; ++i) {
        int kind = static_cast<int>(rng.below(3));
        if (kind == 0) {
            m = extend(m, ExtensionKind::M1);
        } else if (kind == 1) {
            m = extend(m, ExtensionKind::M2);
        } else {
            std::vector<int> row(m.size());
            for (auto& v : row) v = rng.range(-2, 2);
            m = extend(m, ExtensionKind::M3, {row});
        }
    }
    return m;
}

}  // namespace

TEST_CASE("from_string basics") {
    CHECK(from_string(parse_virtual_string("")).b == Matrix{{0}});
    CHECK(from_string(parse_virtual_string("1t 1h")).b == Matrix{{0, 0}, {0, 0}});

    // the left worked-example string with d treated as an ordinary arrow
    auto left = testutil::load_singular("glue3.str");
    CHECK(from_string(left.base).b == b3_expected());
}

TEST_CASE("worked-example matrices reproduce exactly") {
    auto left = testutil::load_singular("glue3.str");
    auto right = testutil::load_singular("glue4.str");
    SBM b3 = from_singular_string(left);
    SBM b4 = from_singular_string(right);
    CHECK(b3.b == b3_expected());
    CHECK(b4.b == b4_expected());
    CHECK(b3.b == parse_matrix(testutil::read_file("b3.mat")));
    CHECK(b4.b == parse_matrix(testutil::read_file("b4.mat")));

    // the (1,3) entry decomposes as ab.cd = -1, eps = -1
    auto dec = linking_decomposition(left.base, 1, 3);
    CHECK(dec.ab_cd == -1);
    CHECK(dec.eps == -1);
    CHECK(dec.value() == -2);
    // and the unlinked pair (1,2)
    auto dec12 = linking_decomposition(left.base, 1, 2);
    CHECK(dec12.eps == 0);
    CHECK(dec12.value() == 0);

    CHECK(from_singular_string(SingularVirtualString{parse_virtual_string("1t 1h"), 1}).b ==
          Matrix{{0, 0}, {0, 0}});
}

TEST_CASE("classify_element") {
    SBM b3{b3_expected()};
    CHECK(classify_element(b3, b3.d_index()) == ElementClass::none);  // "d is clearly not ..-like"
    CHECK(classify_element(b3, 1) == ElementClass::none);

    auto m1 = extend(BasedMatrix{{{0, 1}, {-1, 0}}}, ExtensionKind::M1);
    CHECK(classify_element(m1, m1.size() - 1) == ElementClass::annihilating);
    auto m2 = extend(BasedMatrix{{{0, 1}, {-1, 0}}}, ExtensionKind::M2);
    CHECK(classify_element(m2, m2.size() - 1) == ElementClass::core);

    SBM zero2{{{0, 0}, {0, 0}}};
    CHECK(classify_element(zero2, 1) == ElementClass::annihilating_like);
    CHECK(classify_element(zero2, 0) == ElementClass::annihilating_like);
    CHECK_THROWS_AS(classify_element(zero2, 7), Error);
}

TEST_CASE("complementary pairs and extensions") {
    CHECK(complementary_pairs(BasedMatrix{{{0}}}).empty());
    CHECK(complementary_pairs(SBM{b3_expected()}).empty());  // primitive
    CHECK(switch_candidates(SBM{b3_expected()}).empty());

    SBM b3{b3_expected()};
    std::vector<int> row = {1, 0, -2, 3, 1};
    auto ext = extend(b3, ExtensionKind::M3, {row});
    CHECK(ext.size() == 7);
    CHECK(is_skew_symmetric(ext.b));
    // the fresh pair sits just before d and is complementary
    auto pairs = complementary_pairs(ext);
    CHECK(std::find(pairs.begin(), pairs.end(), std::pair{4, 5}) != pairs.end());

    // parameter validation
    CHECK_THROWS_AS(extend(b3, ExtensionKind::M3), Error);
    CHECK_THROWS_AS(extend(b3, ExtensionKind::M3, {std::vector<int>(3, 0)}), Error);
    std::vector<int> bad = {9, 9, 9, 9, 9};
    CHECK_THROWS_AS(extend(b3, ExtensionKind::M1, {bad}), Error);
    CHECK_THROWS_AS(extend(b3, ExtensionKind::M2, {bad}), Error);
    std::vector<int> srow = b3.b[0];
    CHECK_THROWS_AS(extend(b3, ExtensionKind::M3, {row, srow}), Error);  // wrong second row

    auto m1 = extend(b3, ExtensionKind::M1, {std::vector<int>(5, 0)});
    CHECK(m1.size() == 6);
    CHECK(classify_element(m1, m1.size() - 2) == ElementClass::annihilating);
}

TEST_CASE("extensions keep d last") {
    SBM b3{b3_expected()};
    auto m = extend(b3, ExtensionKind::M2);
    // d stays last; its entries against the old non-d elements are unchanged
    // and the fresh core element sits just before it
    for (int j = 0; j < b3.size() - 1; ++j)
        CHECK(m.b[m.d_index()][j] == b3.b[b3.d_index()][j]);
    CHECK(classify_element(m, m.size() - 2) == ElementClass::core);
}

TEST_CASE("reduce_primitive") {
    BasedMatrix seed{{{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}}};
    auto grown = extend(extend(seed, ExtensionKind::M1), ExtensionKind::M2);
    CHECK(is_isomorphic(reduce_primitive(grown), reduce_primitive(seed)));

    CHECK(reduce_primitive(from_string(parse_virtual_string("1t 1h"))).b == Matrix{{0}});

    // Kishino golden: primitive of size 5, equal to the raw matrix
    auto kish = shadow(testutil::load_knot("kishino.gauss"));
    auto golden = parse_matrix(testutil::read_file("kishino_bm.mat"));
    CHECK(from_string(kish).b == golden);
    auto prim = reduce_primitive(from_string(kish));
    CHECK(prim.b == golden);
    CHECK(prim.size() == 5);
    CHECK(is_primitive(prim));

    // exhaustive elimination-order oracle: unique primitive up to iso
    Rng rng(101);
    for (int t = 0; t < 40; ++t) {
        BasedMatrix m{random_sbm(rng, rng.range(2, 5)).b};
        auto grown2 = m;
        for (int i = 0; i < rng.range(0, 2); ++i) {
            int k = static_cast<int>(rng.below(3));
            if (k == 2) {
                std::vector<int> row(grown2.size());
                for (auto& v : row) v = rng.range(-2, 2);
                grown2 = extend(grown2, ExtensionKind::M3, {row});
            } else {
                grown2 = extend(grown2, k ? ExtensionKind::M2 : ExtensionKind::M1);
            }
        }
        std::set<Matrix> prims;
        all_primitives_bm(grown2.b, prims);
        CHECK(prims.size() == 1);
        CHECK(*prims.begin() == canonical_form(reduce_primitive(grown2)));
    }
}

TEST_CASE("switch_N") {
    SBM m = annih_d_with_core();
    REQUIRE(switch_candidates(m) == std::vector<int>{2});
    auto sw = switch_N(m, 2);
    CHECK(classify_element(sw, sw.d_index()) == ElementClass::core_like);

    // N twice is an isomorphism
    auto cand = switch_candidates(sw);
    REQUIRE(!cand.empty());
    CHECK(is_isomorphic(switch_N(sw, cand[0]), m));

    SBM p = two_primitive_class();
    REQUIRE(switch_candidates(p) == std::vector<int>{1});
    auto q = switch_N(p, 1);
    CHECK(!is_isomorphic(p, q));  // two distinct primitives in one class
    CHECK(homologous_sbm(p, q));
    auto back = switch_candidates(q);
    REQUIRE(!back.empty());
    CHECK(is_isomorphic(switch_N(q, back[0]), p));

    CHECK_THROWS_AS(switch_N(SBM{b3_expected()}, 1), Error);
    CHECK_THROWS_AS(switch_N(m, 0), Error);
}

TEST_CASE("move_D") {
    SBM zero2{{{0, 0}, {0, 0}}};
    auto d12 = move_D(zero2, DMove::d12);
    CHECK(d12.b == zero2.b);  // D12 and D21 coincide when s is annihilating-like
    CHECK(move_D(zero2, DMove::d21).b == zero2.b);

    SBM core_d = switch_N(annih_d_with_core(), 2);
    auto down = move_D(core_d, DMove::d21);
    CHECK(classify_element(down, down.d_index()) == ElementClass::annihilating_like);
    auto up = move_D(down, DMove::d12);
    CHECK(is_isomorphic(up, core_d));  // D12 then D21 inverse up to iso
    CHECK(is_isomorphic(move_D(up, DMove::d21), down));

    CHECK_THROWS_AS(move_D(SBM{b3_expected()}, DMove::d12), Error);
    CHECK_THROWS_AS(move_D(SBM{b3_expected()}, DMove::d21), Error);
}

TEST_CASE("reduce_primitive_sbm") {
    SBM b3{b3_expected()};
    CHECK(reduce_primitive_sbm(b3).b == b3.b);  // primitive fixed point
    CHECK(is_primitive(b3));
    CHECK(is_primitive(SBM{b4_expected()}));

    auto grown = extend(b3, ExtensionKind::M3, {std::vector<int>{1, 0, -2, 3, 1}});
    CHECK(is_isomorphic(reduce_primitive_sbm(grown), b3));

    // stuck case: only an N switch unlocks the complementary pair
    SBM m = n_unlock_matrix();
    CHECK(all_single_eliminations(m.b, {0, 3}).empty());
    auto p = reduce_primitive_sbm(m);
    CHECK(p.size() == 2);
    CHECK(p.b == Matrix{{0, -1}, {1, 0}});

    // exhaustive-order oracle agreement on random towers
    Rng rng(55);
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        SBM seed = reduce_primitive_sbm(random_sbm(rng, rng.range(2, 4)));
        SBM grown2 = random_tower(rng, seed, rng.range(1, 2));
        if (grown2.size() > 8) continue;
        std::set<Matrix> prims, seen;
        all_primitives_sbm(grown2.b, prims, seen);
        ++checked;
        CHECK(!prims.empty());
        CHECK(prims.size() <= 2);  // at most a pair per homology class
        CHECK(prims.count(canonical_form(reduce_primitive_sbm(grown2))) == 1);
        for (const auto& a : prims)
            for (const auto& b : prims)
                CHECK(related_by_iso_or_one_move(SBM{a}, SBM{b}));
    }
    CHECK(checked >= 20);

    // n_unlock matrix under the exhaustive oracle as well
    std::set<Matrix> prims, seen;
    all_primitives_sbm(n_unlock_matrix().b, prims, seen);
    CHECK(prims.count(canonical_form(p)) == 1);
}

TEST_CASE("is_isomorphic") {
    SBM b3{b3_expected()}, b4{b4_expected()};
    CHECK_FALSE(is_isomorphic(b3, b4));
    CHECK(is_isomorphic(b3, b3));

    // permuted copy (fixing s and d)
    Matrix perm = b3.b;
    std::vector<int> p = {0, 2, 1, 3, 4};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) perm[i][j] = b3.b[p[i]][p[j]];
    CHECK(is_isomorphic(SBM{perm}, b3));

    CHECK_FALSE(is_isomorphic(SBM{{{0, 0}, {0, 0}}}, b3));  // size mismatch

    BasedMatrix a{{{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}}};
    Matrix pb = a.b;
    std::vector<int> q = {0, 2, 1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pb[i][j] = a.b[q[i]][q[j]];
    CHECK(is_isomorphic(BasedMatrix{pb}, a));
    // moving s is not an isomorphism: b(s,.) differs
    CHECK_FALSE(is_isomorphic(a, BasedMatrix{{{0, -1, 3}, {1, 0, 2}, {-3, -2, 0}}}));
}

TEST_CASE("homologous") {
    BasedMatrix m{{{0, 2, -1}, {-2, 0, 1}, {1, -1, 0}}};
    std::vector<int> row = {1, -1, 0};
    auto grown = extend(extend(m, ExtensionKind::M3, {row}), ExtensionKind::M1);
    CHECK(homologous(m, grown));
    CHECK(homologous(m, m));

    auto kish = reduce_primitive(from_string(shadow(testutil::load_knot("kishino.gauss"))));
    CHECK_FALSE(homologous(BasedMatrix{{{0}}}, kish));
}

TEST_CASE("homologous_sbm") {
    SBM b3{b3_expected()}, b4{b4_expected()};
    CHECK_FALSE(homologous_sbm(b3, b4));
    CHECK(homologous_sbm(b3, extend(b3, ExtensionKind::M2)));

    SBM p = two_primitive_class();
    CHECK(homologous_sbm(p, switch_N(p, 1)));

    SBM core_d = switch_N(annih_d_with_core(), 2);
    CHECK(homologous_sbm(core_d, move_D(core_d, DMove::d21)));
}

TEST_CASE("homology relations are reflexive and symmetric") {
    Rng rng(93);
    for (int t = 0; t < 40; ++t) {
        SBM a = random_sbm(rng, rng.range(2, 5));
        SBM b = rng.below(2) ? random_tower(rng, a, rng.range(1, 3))
                             : random_sbm(rng, rng.range(2, 5));
        CHECK(homologous_sbm(a, a));
        CHECK(homologous_sbm(a, b) == homologous_sbm(b, a));
        BasedMatrix ba{a.b}, bb{b.b};
        CHECK(homologous(ba, ba));
        CHECK(homologous(ba, bb) == homologous(bb, ba));
    }
}

TEST_CASE("fingerprints") {
    auto trivial = fingerprint_flat(parse_virtual_string(""));
    CHECK(fingerprint_flat(parse_virtual_string("1t 1h")) == trivial);

    auto kish = shadow(testutil::load_knot("kishino.gauss"));
    CHECK(fingerprint_flat(kish) != trivial);

    auto left = testutil::load_singular("glue3.str");
    auto right = testutil::load_singular("glue4.str");
    CHECK(fingerprint_singular(left) != fingerprint_singular(right));

    // the lone singular kink: one class whatever the representative
    auto kink = parse_singular_string("*1t *1h");
    CHECK(fingerprint_singular(kink) == fingerprint_singular(parse_singular_string("2t 2h *1t *1h")));
    CHECK(fingerprint_singular(kink) != fingerprint_singular(left));
    CHECK(from_singular_string(kink).b == Matrix{{0, 0}, {0, 0}});

    // s-ii moves the preferred marker without changing the class
    auto insts = enumerate_moves(left, KindSet{MoveKind::s_switch});
    for (const auto& m : insts)
        CHECK(fingerprint_singular(apply_move(left, m)) == fingerprint_singular(left));

    // kink gluing: placement independence of the class fingerprint
    Rng rng(77);
    for (int t = 0; t < 10; ++t) {
        auto d = random_diagram(rng, rng.range(1, 4));
        auto sh = shadow(d);
        ArrowId fresh = sh.rank() + 1;
        std::set<Fingerprint> fps;
        for (int g = 0; g <= (int)sh.word.size(); ++g) {
            VirtualString w;
            w.word.assign(sh.word.begin(), sh.word.begin() + g);
            w.word.push_back({fresh, Role::tail});
            w.word.push_back({fresh, Role::head});
            w.word.insert(w.word.end(), sh.word.begin() + g, sh.word.end());
            fps.insert(fingerprint_singular({w, fresh}));
        }
        CHECK(fps.size() == 1);
    }
}

TEST_CASE("dual route: matrix b(e,s) equals smoothing intersection index") {
    Rng rng(31);
    for (int t = 0; t < 60; ++t) {
        auto s = random_string(rng, rng.range(1, 7));
        auto m = from_string(s);
        auto ar = s.arrows();
        for (int i = 0; i < (int)ar.size(); ++i)
            CHECK(m.b[i + 1][0] == intersection_index(smooth(s, ar[i])));
    }
}

TEST_CASE("skew symmetry preserved by every operation") {
    Rng rng(87);
    for (int t = 0; t < 40; ++t) {
        auto s = random_string(rng, rng.range(0, 6));
        CHECK(is_skew_symmetric(from_string(s).b));
        SBM m = random_sbm(rng, rng.range(2, 5));
        auto grown = random_tower(rng, m, rng.range(1, 3));
        CHECK(is_skew_symmetric(grown.b));
        CHECK(is_skew_symmetric(reduce_primitive_sbm(grown).b));
        for (int g : switch_candidates(grown)) CHECK(is_skew_symmetric(switch_N(grown, g).b));
    }
}

TEST_CASE("canonical form is permutation invariant and brute-force minimal") {
    Rng rng(401);
    for (int t = 0; t < 200; ++t) {
        int n = rng.range(2, 6);
        SBM m = random_sbm(rng, n);
        // random permutation fixing s and d
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 2; i > 1; --i) std::swap(perm[i], perm[1 + rng.below(i)]);
        Matrix pb(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pb[i][j] = m.b[perm[i]][perm[j]];
        CHECK(canonical_form(SBM{pb}) == canonical_form(m));
        CHECK(is_isomorphic(SBM{pb}, m));

        // brute-force minimal key oracle
        auto key_of = [&](const Matrix& b, const std::vector<int>& mid) {
            std::vector<int> key;
            std::vector<int> pref = {0};
            for (int idx : mid) {
                for (int q : pref) key.push_back(b[q][idx]);
                pref.push_back(idx);
            }
            for (int q : pref) key.push_back(b[q][n - 1]);
            return key;
        };
        std::vector<int> mid;
        for (int i = 1; i < n - 1; ++i) mid.push_back(i);
        std::vector<int> best;
        bool first = true;
        std::sort(mid.begin(), mid.end());
        do {
            auto k = key_of(m.b, mid);
            if (first || k < best) {
                best = k;
                first = false;
            }
        } while (std::next_permutation(mid.begin(), mid.end()));
        auto canon = canonical_form(m);
        std::vector<int> cmid;
        for (int i = 1; i < n - 1; ++i) cmid.push_back(i);
        CHECK(key_of(canon, cmid) == best);
    }
}

TEST_CASE("matrix text format") {
    auto m = parse_matrix("0 1\n-1 0\n");
    CHECK(m == Matrix{{0, 1}, {-1, 0}});
    CHECK(serialize_matrix(m) == "0 1\n-1 0\n");
    CHECK_THROWS_AS(parse_matrix("0 1\n1 0\n"), Error);
    CHECK_THROWS_AS(parse_matrix("0 1 0\n-1 0\n"), Error);
}
