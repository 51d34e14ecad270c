#include "vknot/moves.hpp"

#include <algorithm>
#include <map>

#include "vknot/rng.hpp"

namespace vknot {

const KindSet knot_moves = {MoveKind::r1_insert, MoveKind::r1_delete, MoveKind::r2_insert,
                            MoveKind::r2_delete, MoveKind::r3};
const KindSet knot_moves_cc = {MoveKind::r1_insert, MoveKind::r1_delete, MoveKind::r2_insert,
                               MoveKind::r2_delete, MoveKind::r3, MoveKind::cc};
const KindSet string_moves = {MoveKind::si_insert, MoveKind::si_delete, MoveKind::sii_insert,
                              MoveKind::sii_delete, MoveKind::siii};
const KindSet singular_moves = {MoveKind::si_insert, MoveKind::si_delete, MoveKind::sii_insert,
                                MoveKind::sii_delete, MoveKind::siii, MoveKind::s_switch};

namespace {

int fresh_id(const std::vector<ArrowId>& used, int offset = 0) {
    int mx = 0;
    for (ArrowId a : used) mx = std::max(mx, a);
    return mx + 1 + offset;
}

bool adjacent_cyclic(int n, int a, int b) {
    return n >= 2 && ((a + 1) % n == b || (b + 1) % n == a);
}

}  // namespace

// ------------------------------------------------------ gauss diagram moves

namespace {

// The eight oriented R3 configurations. Strand T passes over M and B, and M
// passes over B; each strand direction flips independently. sign(u=TM) is +
// iff T and M agree, sign(v=TB) + iff T and B disagree, sign(w=MB) + iff M
// and B disagree; the block lists each strand's two passes in traversal
// order. Applying the move swaps the two tokens of every block.
struct R3Template {
    int s_tm, s_tb, s_mb;
    // blocks as pairs of (chord selector 0=u,1=v,2=w ; pass 0=O,1=U)
    int blk[3][2][2];
};

std::vector<R3Template> make_r3_templates() {
    std::vector<R3Template> out;
    for (int dT : {1, -1})
        for (int dM : {1, -1})
            for (int dB : {1, -1}) {
                R3Template t{};
                t.s_tm = (dT == dM) ? 1 : -1;
                t.s_tb = (dT != dB) ? 1 : -1;
                t.s_mb = (dM != dB) ? 1 : -1;
                // T block: passes over B then over M when moving right
                int tb0[2] = {1, 0}, tb1[2] = {0, 0};  // v:O, u:O
                int mb0[2] = {2, 0}, mb1[2] = {0, 1};  // w:O, u:U
                int bb0[2] = {1, 1}, bb1[2] = {2, 1};  // v:U, w:U
                auto fill = [&](int which, const int* a, const int* b, bool forward) {
                    const int* first = forward ? a : b;
                    const int* second = forward ? b : a;
                    t.blk[which][0][0] = first[0];
                    t.blk[which][0][1] = first[1];
                    t.blk[which][1][0] = second[0];
                    t.blk[which][1][1] = second[1];
                };
                fill(0, tb0, tb1, dT == 1);
                fill(1, mb0, mb1, dM == 1);
                fill(2, bb0, bb1, dB == 1);
                out.push_back(t);
            }
    return out;
}

const std::vector<R3Template>& r3_templates() {
    static const std::vector<R3Template> t = make_r3_templates();
    return t;
}

std::map<std::pair<ArrowId, Pass>, int> pass_positions(const SignedGaussDiagram& d) {
    std::map<std::pair<ArrowId, Pass>, int> pos;
    for (int i = 0; i < (int)d.word.size(); ++i) pos[{d.word[i].id, d.word[i].pass}] = i;
    return pos;
}

}  // namespace

std::vector<MoveInstance> enumerate_moves(const SignedGaussDiagram& d, const KindSet& kinds) {
    std::vector<MoveInstance> out;
    int n = static_cast<int>(d.word.size());
    std::vector<ArrowId> classical;
    for (const auto& [id, s] : d.sign) classical.push_back(id);

    if (kinds.count(MoveKind::r1_insert)) {
        int gaps = std::max(n, 1);
        for (int g = 0; g < gaps; ++g)
            for (int first = 0; first < 2; ++first)
                for (int s : {1, -1}) out.push_back({MoveKind::r1_insert, {g, first, s}});
    }
    if (kinds.count(MoveKind::r1_delete)) {
        auto pos = pass_positions(d);
        for (ArrowId c : classical)
            if (adjacent_cyclic(n, pos[{c, Pass::over}], pos[{c, Pass::under}]))
                out.push_back({MoveKind::r1_delete, {c}});
    }
    if (kinds.count(MoveKind::r2_insert)) {
        int gaps = std::max(n, 1);
        for (int gO = 0; gO < gaps; ++gO)
            for (int gU = 0; gU < gaps; ++gU)
                for (int uorder = 0; uorder < 2; ++uorder)
                    for (int s : {1, -1})
                        out.push_back({MoveKind::r2_insert, {gO, gU, uorder, s}});
    }
    if (kinds.count(MoveKind::r2_delete)) {
        auto pos = pass_positions(d);
        for (ArrowId p : classical)
            for (ArrowId q : classical) {
                if (p == q || d.sign.at(p) != -d.sign.at(q)) continue;
                if ((pos[{p, Pass::over}] + 1) % n != pos[{q, Pass::over}]) continue;
                if (adjacent_cyclic(n, pos[{p, Pass::under}], pos[{q, Pass::under}]))
                    out.push_back({MoveKind::r2_delete, {p, q}});
            }
    }
    if (kinds.count(MoveKind::r3)) {
        auto pos = pass_positions(d);
        for (ArrowId u : classical)
            for (ArrowId v : classical)
                for (ArrowId w : classical) {
                    if (u == v || u == w || v == w) continue;
                    for (const auto& t : r3_templates()) {
                        if (d.sign.at(u) != t.s_tm || d.sign.at(v) != t.s_tb ||
                            d.sign.at(w) != t.s_mb)
                            continue;
                        ArrowId ids[3] = {u, v, w};
                        bool ok = true;
                        std::vector<int> params;
                        for (int b = 0; b < 3 && ok; ++b) {
                            auto tok = [&](int k) {
                                return std::pair<ArrowId, Pass>{
                                    ids[t.blk[b][k][0]],
                                    t.blk[b][k][1] == 0 ? Pass::over : Pass::under};
                            };
                            int a = pos[tok(0)], bb = pos[tok(1)];
                            if ((a + 1) % n != bb) ok = false;
                            params.push_back(a);
                            params.push_back(bb);
                        }
                        if (ok) out.push_back({MoveKind::r3, params});
                    }
                }
    }
    if (kinds.count(MoveKind::cc)) {
        for (ArrowId c : classical) out.push_back({MoveKind::cc, {c}});
    }
    return out;
}

SignedGaussDiagram apply_move(const SignedGaussDiagram& d, const MoveInstance& m) {
    auto valid = enumerate_moves(d, {m.kind});
    if (std::find(valid.begin(), valid.end(), m) == valid.end())
        throw Error("apply_move: stale or non-applicable instance");

    SignedGaussDiagram out = d;
    switch (m.kind) {
        case MoveKind::r1_insert: {
            int g = m.p[0], first = m.p[1], s = m.p[2];
            ArrowId id = fresh_id(d.chords());
            std::vector<SignedGaussDiagram::Token> ins = {
                {id, first == 0 ? Pass::over : Pass::under},
                {id, first == 0 ? Pass::under : Pass::over}};
            out.word.insert(out.word.begin() + g, ins.begin(), ins.end());
            out.sign[id] = s;
            return out;
        }
        case MoveKind::r1_delete:
        case MoveKind::r2_delete: {
            std::set<ArrowId> rm(m.p.begin(), m.p.end());
            out.word.clear();
            for (const auto& t : d.word)
                if (!rm.count(t.id)) out.word.push_back(t);
            for (ArrowId c : rm) out.sign.erase(c);
            return out;
        }
        case MoveKind::r2_insert: {
            int gO = m.p[0], gU = m.p[1], uorder = m.p[2], s = m.p[3];
            ArrowId p = fresh_id(d.chords()), q = fresh_id(d.chords(), 1);
            std::vector<SignedGaussDiagram::Token> insO = {{p, Pass::over}, {q, Pass::over}};
            std::vector<SignedGaussDiagram::Token> insU = {{p, Pass::under}, {q, Pass::under}};
            if (uorder == 1) std::swap(insU[0], insU[1]);
            out.word.clear();
            int n = static_cast<int>(d.word.size());
            for (int i = 0; i <= n; ++i) {
                if (i == gO) out.word.insert(out.word.end(), insO.begin(), insO.end());
                if (i == gU) out.word.insert(out.word.end(), insU.begin(), insU.end());
                if (i < n) out.word.push_back(d.word[i]);
            }
            out.sign[p] = s;
            out.sign[q] = -s;
            return out;
        }
        case MoveKind::r3: {
            for (int b = 0; b < 3; ++b) std::swap(out.word[m.p[2 * b]], out.word[m.p[2 * b + 1]]);
            return out;
        }
        case MoveKind::cc:
            return cc_move(d, m.p[0]);
        default:
            throw Error("apply_move: kind not applicable to Gauss diagrams");
    }
}

// ------------------------------------------------------------- flat moves

namespace {

struct Loc {
    int circle, pos;
};

struct LinkIndex {
    std::map<std::pair<ArrowId, Role>, Loc> at;
    explicit LinkIndex(const FlatLink& l) {
        for (int c = 0; c < (int)l.circles.size(); ++c)
            for (int i = 0; i < (int)l.circles[c].size(); ++i)
                at[{l.circles[c][i].id, l.circles[c][i].role}] = {c, i};
    }
};

bool adjacent(const FlatLink& l, const Loc& a, const Loc& b) {
    if (a.circle != b.circle) return false;
    return adjacent_cyclic(static_cast<int>(l.circles[a.circle].size()), a.pos, b.pos);
}

FlatLink remove_arrows(const FlatLink& l, const std::set<ArrowId>& rm) {
    FlatLink out;
    out.ordered = l.ordered;
    for (const auto& c : l.circles) {
        out.circles.emplace_back();
        for (const auto& e : c)
            if (!rm.count(e.id)) out.circles.back().push_back(e);
    }
    return out;
}

}  // namespace

std::vector<MoveInstance> enumerate_moves(const FlatLink& l, const KindSet& kinds) {
    std::vector<MoveInstance> out;
    int nc = static_cast<int>(l.circles.size());
    auto arrows = l.arrows();

    if (kinds.count(MoveKind::si_insert)) {
        for (int c = 0; c < nc; ++c) {
            int gaps = std::max<int>(l.circles[c].size(), 1);
            for (int g = 0; g < gaps; ++g)
                for (int order = 0; order < 2; ++order)
                    out.push_back({MoveKind::si_insert, {c, g, order}});
        }
    }
    if (kinds.count(MoveKind::si_delete)) {
        LinkIndex ix(l);
        for (ArrowId a : arrows)
            if (adjacent(l, ix.at.at({a, Role::tail}), ix.at.at({a, Role::head})))
                out.push_back({MoveKind::si_delete, {a}});
    }
    if (kinds.count(MoveKind::sii_insert)) {
        std::vector<std::pair<int, int>> sites;
        for (int c = 0; c < nc; ++c) {
            int gaps = std::max<int>(l.circles[c].size(), 1);
            for (int g = 0; g < gaps; ++g) sites.push_back({c, g});
        }
        for (const auto& s1 : sites)
            for (const auto& s2 : sites)
                for (int o1 = 0; o1 < 2; ++o1)
                    for (int o2 = 0; o2 < 2; ++o2)
                        out.push_back(
                            {MoveKind::sii_insert, {s1.first, s1.second, o1, s2.first, s2.second, o2}});
    }
    if (kinds.count(MoveKind::sii_delete)) {
        LinkIndex ix(l);
        for (ArrowId e : arrows)
            for (ArrowId f : arrows) {
                if (e >= f) continue;
                if (adjacent(l, ix.at.at({e, Role::tail}), ix.at.at({f, Role::head})) &&
                    adjacent(l, ix.at.at({e, Role::head}), ix.at.at({f, Role::tail})))
                    out.push_back({MoveKind::sii_delete, {e, f}});
            }
    }
    if (kinds.count(MoveKind::siii)) {
        // Directed triangle head(e_i) -> tail(e_i+1), and the three sites must
        // be uniformly oriented along the circle (all head-before-tail or all
        // tail-before-head). Mixed-orientation triangles are not shadows of
        // any triangle slide and do change the homotopy class.
        LinkIndex ix(l);
        auto site = [&](ArrowId e, ArrowId f) -> int {
            // head(e) adjacent to tail(f): +1 head first, -1 tail first, 0 not a site
            Loc h = ix.at.at({e, Role::head}), t = ix.at.at({f, Role::tail});
            if (h.circle != t.circle) return 0;
            int n = static_cast<int>(l.circles[h.circle].size());
            if (n >= 2 && (h.pos + 1) % n == t.pos) return 1;
            if (n >= 2 && (t.pos + 1) % n == h.pos) return -1;
            return 0;
        };
        for (ArrowId a : arrows)
            for (ArrowId b : arrows)
                for (ArrowId c : arrows) {
                    if (a == b || a == c || b == c) continue;
                    if (a > b || a > c) continue;  // canonical rotation of the triple
                    int s1 = site(a, b), s2 = site(b, c), s3 = site(c, a);
                    if (s1 != 0 && s1 == s2 && s2 == s3)
                        out.push_back({MoveKind::siii, {a, b, c}});
                }
    }
    return out;
}

FlatLink apply_move(const FlatLink& l, const MoveInstance& m) {
    auto valid = enumerate_moves(l, {m.kind});
    if (std::find(valid.begin(), valid.end(), m) == valid.end())
        throw Error("apply_move: stale or non-applicable instance");

    switch (m.kind) {
        case MoveKind::si_insert: {
            int c = m.p[0], g = m.p[1], order = m.p[2];
            FlatLink out = l;
            ArrowId id = fresh_id(l.arrows());
            std::vector<Endpoint> ins = {{id, Role::tail}, {id, Role::head}};
            if (order == 1) std::swap(ins[0], ins[1]);
            out.circles[c].insert(out.circles[c].begin() + g, ins.begin(), ins.end());
            return out;
        }
        case MoveKind::si_delete:
            return remove_arrows(l, {m.p[0]});
        case MoveKind::sii_insert: {
            int c1 = m.p[0], g1 = m.p[1], o1 = m.p[2];
            int c2 = m.p[3], g2 = m.p[4], o2 = m.p[5];
            ArrowId e1 = fresh_id(l.arrows()), e2 = fresh_id(l.arrows(), 1);
            // site 1 carries (tail e1, head e2), site 2 carries (head e1, tail e2)
            std::vector<Endpoint> s1 = {{e1, Role::tail}, {e2, Role::head}};
            std::vector<Endpoint> s2 = {{e1, Role::head}, {e2, Role::tail}};
            if (o1 == 1) std::swap(s1[0], s1[1]);
            if (o2 == 1) std::swap(s2[0], s2[1]);
            FlatLink out = l;
            for (int c = 0; c < (int)out.circles.size(); ++c) {
                const auto& old = l.circles[c];
                int n = static_cast<int>(old.size());
                std::vector<Endpoint> rebuilt;
                for (int i = 0; i <= n; ++i) {
                    if (c == c1 && i == g1) rebuilt.insert(rebuilt.end(), s1.begin(), s1.end());
                    if (c == c2 && i == g2) rebuilt.insert(rebuilt.end(), s2.begin(), s2.end());
                    if (i < n) rebuilt.push_back(old[i]);
                }
                out.circles[c] = rebuilt;
            }
            return out;
        }
        case MoveKind::sii_delete:
            return remove_arrows(l, {m.p[0], m.p[1]});
        case MoveKind::siii: {
            LinkIndex ix(l);
            ArrowId a = m.p[0], b = m.p[1], c = m.p[2];
            FlatLink out = l;
            auto swap_site = [&](Loc x, Loc y) {
                std::swap(out.circles[x.circle][x.pos], out.circles[y.circle][y.pos]);
            };
            swap_site(ix.at.at({a, Role::head}), ix.at.at({b, Role::tail}));
            swap_site(ix.at.at({b, Role::head}), ix.at.at({c, Role::tail}));
            swap_site(ix.at.at({c, Role::head}), ix.at.at({a, Role::tail}));
            return out;
        }
        default:
            throw Error("apply_move: kind not applicable to flat links");
    }
}

std::vector<MoveInstance> enumerate_moves(const VirtualString& s, const KindSet& kinds) {
    return enumerate_moves(FlatLink{{s.word}, true}, kinds);
}

VirtualString apply_move(const VirtualString& s, const MoveInstance& m) {
    FlatLink out = apply_move(FlatLink{{s.word}, true}, m);
    return {out.circles[0]};
}

std::vector<MoveInstance> enumerate_moves(const SingularVirtualString& s, const KindSet& kinds) {
    KindSet plain;
    for (MoveKind k : kinds)
        if (k != MoveKind::s_switch && k != MoveKind::si_delete && k != MoveKind::sii_delete)
            plain.insert(k);
    auto out = enumerate_moves(s.base, plain);

    // deletions must spare the preferred arrow
    if (kinds.count(MoveKind::si_delete)) {
        for (auto& m : enumerate_moves(s.base, KindSet{MoveKind::si_delete}))
            if (m.p[0] != s.preferred) out.push_back(m);
    }
    if (kinds.count(MoveKind::sii_delete)) {
        for (auto& m : enumerate_moves(s.base, KindSet{MoveKind::sii_delete}))
            if (m.p[0] != s.preferred && m.p[1] != s.preferred) out.push_back(m);
    }
    if (kinds.count(MoveKind::s_switch)) {
        const auto& w = s.base.word;
        int n = static_cast<int>(w.size());
        int td = s.base.tail_pos(s.preferred), hd = s.base.head_pos(s.preferred);
        for (ArrowId f : s.base.arrows()) {
            if (f == s.preferred) continue;
            int tf = s.base.tail_pos(f), hf = s.base.head_pos(f);
            if (adjacent_cyclic(n, td, hf) && adjacent_cyclic(n, tf, hd))
                out.push_back({MoveKind::s_switch, {f}});
        }
    }
    return out;
}

SingularVirtualString apply_move(const SingularVirtualString& s, const MoveInstance& m) {
    if (m.kind == MoveKind::s_switch) {
        auto valid = enumerate_moves(s, {MoveKind::s_switch});
        if (std::find(valid.begin(), valid.end(), m) == valid.end())
            throw Error("apply_move: stale or non-applicable instance");
        return {s.base, m.p[0]};
    }
    if ((m.kind == MoveKind::si_delete && m.p[0] == s.preferred) ||
        (m.kind == MoveKind::sii_delete && (m.p[0] == s.preferred || m.p[1] == s.preferred)))
        throw Error("apply_move: move would delete the preferred arrow");
    return {apply_move(s.base, m), s.preferred};
}

// ------------------------------------------------------------ random walk

namespace {

template <class D>
D walk_impl(D d, int steps, std::uint64_t seed, const KindSet& kinds) {
    if (steps < 0) throw Error("random_walk: negative step count");
    Rng rng(seed);
    for (int i = 0; i < steps; ++i) {
        auto insts = enumerate_moves(d, kinds);
        if (insts.empty()) continue;
        d = apply_move(d, rng.pick(insts));
    }
    return d;
}

}  // namespace

SignedGaussDiagram random_walk(const SignedGaussDiagram& d, int steps, std::uint64_t seed,
                               const KindSet& kinds) {
    return walk_impl(d, steps, seed, kinds);
}

VirtualString random_walk(const VirtualString& s, int steps, std::uint64_t seed,
                          const KindSet& kinds) {
    return walk_impl(s, steps, seed, kinds);
}

SingularVirtualString random_walk(const SingularVirtualString& s, int steps, std::uint64_t seed,
                                  const KindSet& kinds) {
    return walk_impl(s, steps, seed, kinds);
}

// -------------------------------------------------------------- normalize

FlatLink normalize(const FlatLink& l) {
    FlatLink cur = l;
    while (true) {
        // isolated arrows, lowest (circle, position) first
        bool changed = false;
        for (int c = 0; c < (int)cur.circles.size() && !changed; ++c) {
            const auto& circ = cur.circles[c];
            int n = static_cast<int>(circ.size());
            for (int i = 0; i < n && !changed; ++i) {
                if (n >= 2 && circ[i].id == circ[(i + 1) % n].id) {
                    cur = remove_arrows(cur, {circ[i].id});
                    changed = true;
                }
            }
        }
        if (changed) continue;

        auto cancelling = enumerate_moves(cur, KindSet{MoveKind::sii_delete});
        if (cancelling.empty()) return cur;
        // lowest endpoint position first
        LinkIndex ix(cur);
        auto key = [&](const MoveInstance& m) {
            Loc best{1 << 30, 1 << 30};
            for (ArrowId a : {m.p[0], m.p[1]})
                for (Role r : {Role::tail, Role::head}) {
                    Loc loc = ix.at.at({a, r});
                    if (std::pair(loc.circle, loc.pos) < std::pair(best.circle, best.pos))
                        best = loc;
                }
            return std::pair(best.circle, best.pos);
        };
        auto it = std::min_element(cancelling.begin(), cancelling.end(),
                                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
        cur = apply_move(cur, *it);
    }
}

VirtualString normalize(const VirtualString& s) {
    FlatLink out = normalize(FlatLink{{s.word}, true});
    return {out.circles[0]};
}

}  // namespace vknot
