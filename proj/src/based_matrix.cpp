#include "vknot/based_matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace vknot {

bool is_skew_symmetric(const std::vector<std::vector<int>>& b) {
    int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[i].size()) != n) return false;
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i]) return false;
    }
    return true;
}

void check_valid(const BasedMatrix& m) {
    if (m.size() < 1) throw Error("based matrix needs at least the s element");
    if (!is_skew_symmetric(m.b)) throw Error("based matrix is not skew-symmetric");
}

void check_valid(const SBM& m) {
    if (m.size() < 2) throw Error("SBM needs distinct s and d");
    if (!is_skew_symmetric(m.b)) throw Error("SBM is not skew-symmetric");
}

std::vector<std::vector<int>> parse_matrix(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<int> row;
        int v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(row);
    }
    if (!is_skew_symmetric(rows)) throw Error("matrix is not square skew-symmetric");
    return rows;
}

std::string serialize_matrix(const std::vector<std::vector<int>>& b) {
    std::string out;
    for (const auto& row : b) {
        for (int j = 0; j < (int)row.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(row[j]);
        }
        out += '\n';
    }
    return out;
}

// ------------------------------------------------------- string -> matrix

namespace {

// membership bitmap of the open arc (a,b), exclusive
std::vector<char> arc_mask(int n, int a, int b) {
    std::vector<char> in(n, 0);
    for (int i = (a + 1) % n; i != b; i = (i + 1) % n) in[i] = 1;
    return in;
}

}  // namespace

int arc_intersection_index(const VirtualString& s, ArrowId e) {
    int n = static_cast<int>(s.word.size());
    int t = s.tail_pos(e), h = s.head_pos(e);
    auto comp1 = arc_mask(n, t, h);  // tail->head arc = component 1
    int idx = 0;
    for (ArrowId f : s.arrows()) {
        if (f == e) continue;
        bool t1 = comp1[s.tail_pos(f)], h1 = comp1[s.head_pos(f)];
        if (t1 && !h1) ++idx;   // tail on component 1, head on component 2
        if (!t1 && h1) --idx;
    }
    return idx;
}

LinkingDecomposition linking_decomposition(const VirtualString& s, ArrowId e, ArrowId f) {
    if (e == f) throw Error("linking_decomposition: arrows must be distinct");
    int n = static_cast<int>(s.word.size());
    int te = s.tail_pos(e), he = s.head_pos(e);
    int tf = s.tail_pos(f), hf = s.head_pos(f);
    auto in_e = arc_mask(n, te, he);  // (ab)^o
    auto in_f = arc_mask(n, tf, hf);  // (cd)^o

    int cnt1 = 0, cnt2 = 0;
    for (ArrowId g : s.arrows()) {
        int tg = s.tail_pos(g), hg = s.head_pos(g);
        if (in_e[tg] && in_f[hg]) ++cnt1;
        if (in_f[tg] && in_e[hg]) ++cnt2;
    }
    int eps = 0;
    if (in_e[tf] != in_e[hf]) eps = in_e[tf] ? 1 : -1;
    return {cnt1 - cnt2, eps};
}

BasedMatrix from_string(const VirtualString& s) {
    auto ar = s.arrows();
    int n = static_cast<int>(ar.size()) + 1;
    BasedMatrix m;
    m.b.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n - 1; ++i) {
        int v = arc_intersection_index(s, ar[i]);
        m.b[i + 1][0] = v;
        m.b[0][i + 1] = -v;
    }
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            if (i != j) m.b[i + 1][j + 1] = linking_decomposition(s, ar[i], ar[j]).value();
    return m;
}

SBM from_singular_string(const SingularVirtualString& s) {
    std::vector<ArrowId> ar;
    for (ArrowId a : s.base.arrows())
        if (a != s.preferred) ar.push_back(a);
    bool found = ar.size() + 1 == s.base.arrows().size();
    if (!found) throw Error("preferred arrow is not part of the string");
    ar.push_back(s.preferred);

    int n = static_cast<int>(ar.size()) + 1;
    SBM m;
    m.b.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n - 1; ++i) {
        int v = arc_intersection_index(s.base, ar[i]);
        m.b[i + 1][0] = v;
        m.b[0][i + 1] = -v;
    }
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            if (i != j) m.b[i + 1][j + 1] = linking_decomposition(s.base, ar[i], ar[j]).value();
    return m;
}

// ----------------------------------------------- special elements, moves

namespace {

bool zero_row(const std::vector<std::vector<int>>& b, int g) {
    for (int v : b[g])
        if (v != 0) return false;
    return true;
}

bool rows_equal(const std::vector<std::vector<int>>& b, int g, int h) {
    return b[g] == b[h];
}

bool rows_sum_to_s(const std::vector<std::vector<int>>& b, int g1, int g2) {
    int n = static_cast<int>(b.size());
    for (int h = 0; h < n; ++h)
        if (b[g1][h] + b[g2][h] != b[0][h]) return false;
    return true;
}

std::vector<std::vector<int>> drop(const std::vector<std::vector<int>>& b, std::vector<int> idxs) {
    std::sort(idxs.begin(), idxs.end());
    int n = static_cast<int>(b.size());
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(idxs.begin(), idxs.end(), i)) keep.push_back(i);
    std::vector<std::vector<int>> out(keep.size(), std::vector<int>(keep.size()));
    for (int i = 0; i < (int)keep.size(); ++i)
        for (int j = 0; j < (int)keep.size(); ++j) out[i][j] = b[keep[i]][keep[j]];
    return out;
}

std::vector<std::vector<int>> permuted(const std::vector<std::vector<int>>& b,
                                       const std::vector<int>& perm) {
    int n = static_cast<int>(b.size());
    std::vector<std::vector<int>> out(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = b[perm[i]][perm[j]];
    return out;
}

// lowest-index elimination among the unprotected elements, or empty
std::vector<int> find_elimination(const std::vector<std::vector<int>>& b,
                                  const std::set<int>& protected_idx) {
    int n = static_cast<int>(b.size());
    std::vector<int> cand;
    for (int g = 0; g < n; ++g)
        if (!protected_idx.count(g)) cand.push_back(g);
    for (int g : cand)
        if (zero_row(b, g)) return {g};
    for (int g : cand)
        if (rows_equal(b, g, 0)) return {g};
    for (int i = 0; i < (int)cand.size(); ++i)
        for (int j = i + 1; j < (int)cand.size(); ++j)
            if (rows_sum_to_s(b, cand[i], cand[j])) return {cand[i], cand[j]};
    return {};
}

std::vector<std::vector<int>> extend_impl(const std::vector<std::vector<int>>& b,
                                          ExtensionKind kind,
                                          const std::vector<std::vector<int>>& rows,
                                          int d_index) {
    int n = static_cast<int>(b.size());
    auto expect_len = [&](const std::vector<int>& r) {
        if (static_cast<int>(r.size()) != n)
            throw Error("extension row has wrong length");
    };
    if (kind == ExtensionKind::M1 || kind == ExtensionKind::M2) {
        std::vector<int> row(n, 0);
        if (kind == ExtensionKind::M2) row = b[0];
        if (!rows.empty()) {
            expect_len(rows[0]);
            if (rows[0] != row) throw Error("extension row violates the defining constraint");
        }
        std::vector<std::vector<int>> out(n + 1, std::vector<int>(n + 1, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i][j] = b[i][j];
        for (int h = 0; h < n; ++h) {
            out[n][h] = row[h];
            out[h][n] = -row[h];
        }
        return out;
    }
    // M3: rows r_i and r_j with r_i + r_j = s-row over the old set;
    // the pair's mutual entry is forced to r_i(s).
    if (rows.empty()) throw Error("M3 needs the new element's row");
    expect_len(rows[0]);
    std::vector<int> ri = rows[0], rj(n);
    for (int h = 0; h < n; ++h) rj[h] = b[0][h] - ri[h];
    if (rows.size() > 1) {
        expect_len(rows[1]);
        if (rows[1] != rj) throw Error("M3 rows do not sum to the s-row");
    }
    int gij = ri[0];
    std::vector<std::vector<int>> out(n + 2, std::vector<int>(n + 2, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = b[i][j];
    for (int h = 0; h < n; ++h) {
        out[n][h] = ri[h];
        out[h][n] = -ri[h];
        out[n + 1][h] = rj[h];
        out[h][n + 1] = -rj[h];
    }
    out[n][n + 1] = gij;
    out[n + 1][n] = -gij;
    (void)d_index;
    return out;
}

// reorder so the element currently at from_idx becomes the last index
std::vector<std::vector<int>> to_last(const std::vector<std::vector<int>>& b, int from_idx) {
    int n = static_cast<int>(b.size());
    std::vector<int> perm;
    for (int i = 0; i < n; ++i)
        if (i != from_idx) perm.push_back(i);
    perm.push_back(from_idx);
    return permuted(b, perm);
}

}  // namespace

ElementClass classify_element(const BasedMatrix& m, int g) {
    if (g < 0 || g >= m.size()) throw Error("classify_element: index out of range");
    if (g == 0) return zero_row(m.b, 0) ? ElementClass::annihilating_like : ElementClass::none;
    if (zero_row(m.b, g)) return ElementClass::annihilating;
    if (rows_equal(m.b, g, 0)) return ElementClass::core;
    return ElementClass::none;
}

ElementClass classify_element(const SBM& m, int g) {
    if (g < 0 || g >= m.size()) throw Error("classify_element: index out of range");
    bool distinguished = (g == 0 || g == m.d_index());
    if (distinguished) {
        if (zero_row(m.b, g)) return ElementClass::annihilating_like;
        if (g == m.d_index() && rows_equal(m.b, g, 0)) return ElementClass::core_like;
        return ElementClass::none;
    }
    if (zero_row(m.b, g)) return ElementClass::annihilating;
    if (rows_equal(m.b, g, 0)) return ElementClass::core;
    return ElementClass::none;
}

namespace {

std::vector<std::pair<int, int>> pairs_impl(const std::vector<std::vector<int>>& b,
                                            const std::set<int>& excluded) {
    int n = static_cast<int>(b.size());
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        if (excluded.count(i)) continue;
        for (int j = i + 1; j < n; ++j) {
            if (excluded.count(j)) continue;
            if (rows_sum_to_s(b, i, j)) out.emplace_back(i, j);
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, int>> complementary_pairs(const BasedMatrix& m) {
    return pairs_impl(m.b, {0});
}

std::vector<std::pair<int, int>> complementary_pairs(const SBM& m) {
    return pairs_impl(m.b, {0, m.d_index()});
}

std::vector<int> switch_candidates(const SBM& m) {
    int d = m.d_index();
    std::vector<int> out;
    for (int g = 1; g < d; ++g)
        if (rows_sum_to_s(m.b, g, d)) out.push_back(g);
    return out;
}

BasedMatrix extend(const BasedMatrix& m, ExtensionKind kind,
                   const std::vector<std::vector<int>>& rows) {
    return {extend_impl(m.b, kind, rows, -1)};
}

SBM extend(const SBM& m, ExtensionKind kind, const std::vector<std::vector<int>>& rows) {
    // keep d last: new elements are appended, then d is moved back to the end
    auto b = extend_impl(m.b, kind, rows, m.d_index());
    return {to_last(b, m.d_index())};
}

BasedMatrix reduce_primitive(const BasedMatrix& m) {
    check_valid(m);
    auto b = m.b;
    while (true) {
        auto e = find_elimination(b, {0});
        if (e.empty()) return {b};
        b = drop(b, e);
    }
}

SBM switch_N(const SBM& m, int g) {
    check_valid(m);
    int d = m.d_index();
    if (g <= 0 || g >= d) throw Error("switch_N: index is not an ordinary element");
    if (!rows_sum_to_s(m.b, g, d)) throw Error("switch_N: element is not complementary to d");
    return {to_last(m.b, g)};
}

SBM move_D(const SBM& m, DMove dir) {
    check_valid(m);
    int n = m.size(), d = m.d_index();
    // raw predicates, not classify_element: when the s-row is zero, d can be
    // annihilating-like and core-like at once and the two moves coincide
    SBM out = m;
    if (dir == DMove::d12) {
        if (!zero_row(m.b, d)) throw Error("D12 needs an annihilating-like d");
        for (int h = 0; h < n; ++h) {
            int v = (h == d) ? 0 : m.b[0][h];
            out.b[d][h] = v;
            out.b[h][d] = -v;
        }
    } else {
        if (!rows_equal(m.b, d, 0)) throw Error("D21 needs a core-like d");
        for (int h = 0; h < n; ++h) {
            out.b[d][h] = 0;
            out.b[h][d] = 0;
        }
    }
    return out;
}

SBM reduce_primitive_sbm(const SBM& m) {
    check_valid(m);
    auto b = m.b;
    while (true) {
        int d = static_cast<int>(b.size()) - 1;
        auto e = find_elimination(b, {0, d});
        if (!e.empty()) {
            b = drop(b, e);
            continue;
        }
        // BFS over the N-orbit of d designations; N changes no entries, so
        // the orbit is just a set of indices.
        std::set<int> seen = {d};
        std::vector<int> frontier = {d};
        bool advanced = false;
        while (!frontier.empty() && !advanced) {
            std::vector<int> next;
            for (int di : frontier) {
                for (int g = 1; g < (int)b.size(); ++g) {
                    if (g == di || seen.count(g)) continue;
                    if (!rows_sum_to_s(b, g, di)) continue;
                    seen.insert(g);
                    auto b2 = to_last(b, g);
                    auto e2 = find_elimination(b2, {0, (int)b2.size() - 1});
                    if (!e2.empty()) {
                        b = drop(b2, e2);
                        advanced = true;
                        break;
                    }
                    next.push_back(g);
                }
                if (advanced) break;
            }
            frontier = std::move(next);
        }
        if (!advanced) return {b};
    }
}

bool is_primitive(const BasedMatrix& m) {
    return find_elimination(m.b, {0}).empty();
}

bool is_primitive(const SBM& m) {
    return reduce_primitive_sbm(m).size() == m.size();
}

// -------------------------------------------------------- canonical form

namespace {

// Backtracking minimization over permutations of `movable` (indices), with
// index 0 first and `tail` appended. The minimized key lists, per chosen
// element, its entries to s and to the previously chosen elements; equal
// keys determine equal matrices. Interchangeable candidates (identical
// rows) are explored once.
struct Canonicalizer {
    const std::vector<std::vector<int>>& b;
    std::vector<int> movable;
    std::vector<int> tail;
    std::vector<int> best_perm;
    std::vector<int> best_key;
    std::vector<int> cur_perm;
    std::vector<int> cur_key;
    bool have_best = false;

    void run() {
        cur_perm = {0};
        dfs(std::vector<char>(movable.size(), 0));
    }

    void dfs(std::vector<char> used) {
        // prune only when the accumulated key already exceeds the incumbent;
        // a prefix that went strictly below it can never be pruned
        if (have_best) {
            size_t n = std::min(cur_key.size(), best_key.size());
            for (size_t i = 0; i < n; ++i) {
                if (cur_key[i] == best_key[i]) continue;
                if (cur_key[i] > best_key[i]) return;
                break;
            }
        }
        size_t chosen = cur_perm.size() - 1;
        if (chosen == movable.size()) {
            std::vector<int> perm = cur_perm;
            std::vector<int> key = cur_key;
            for (int t : tail) {
                for (int p : perm) key.push_back(b[p][t]);
                perm.push_back(t);
            }
            if (!have_best || key < best_key) {
                best_key = key;
                best_perm = perm;
                have_best = true;
            }
            return;
        }
        // a minimal completion must continue with a minimal border
        std::vector<int> best_border;
        std::vector<int> winners;
        for (size_t c = 0; c < movable.size(); ++c) {
            if (used[c]) continue;
            std::vector<int> border;
            border.reserve(cur_perm.size());
            for (int p : cur_perm) border.push_back(b[p][movable[c]]);
            if (winners.empty() || border < best_border) {
                best_border = border;
                winners = {static_cast<int>(c)};
            } else if (border == best_border) {
                winners.push_back(static_cast<int>(c));
            }
        }
        // dedup interchangeable winners (identical full rows)
        std::vector<int> uniq;
        for (int w : winners) {
            bool dup = false;
            for (int u : uniq)
                if (b[movable[w]] == b[movable[u]]) { dup = true; break; }
            if (!dup) uniq.push_back(w);
        }
        for (int w : uniq) {
            size_t mark = cur_key.size();
            cur_key.insert(cur_key.end(), best_border.begin(), best_border.end());
            cur_perm.push_back(movable[w]);
            used[w] = 1;
            dfs(used);
            used[w] = 0;
            cur_perm.pop_back();
            cur_key.resize(mark);
        }
    }
};

std::vector<std::vector<int>> canon_impl(const std::vector<std::vector<int>>& b, bool fix_last) {
    int n = static_cast<int>(b.size());
    Canonicalizer c{b, {}, {}, {}, {}, {}, {}, false};
    for (int i = 1; i < n - (fix_last ? 1 : 0); ++i) c.movable.push_back(i);
    if (fix_last && n >= 2) c.tail.push_back(n - 1);
    c.run();
    return permuted(b, c.best_perm);
}

}  // namespace

std::vector<std::vector<int>> canonical_form(const BasedMatrix& m) {
    return canon_impl(m.b, false);
}

std::vector<std::vector<int>> canonical_form(const SBM& m) {
    return canon_impl(m.b, true);
}

bool is_isomorphic(const BasedMatrix& a, const BasedMatrix& b) {
    if (a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

bool is_isomorphic(const SBM& a, const SBM& b) {
    if (a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

bool homologous(const BasedMatrix& a, const BasedMatrix& b) {
    return is_isomorphic(reduce_primitive(a), reduce_primitive(b));
}

namespace {

// one-move partners of a primitive SBM: every N switch plus the applicable
// D move (when s is annihilating-like D12 and D21 coincide)
std::vector<SBM> one_move_images(const SBM& p) {
    std::vector<SBM> out;
    for (int g : switch_candidates(p)) out.push_back(switch_N(p, g));
    int d = p.d_index();
    if (zero_row(p.b, d)) out.push_back(move_D(p, DMove::d12));
    if (rows_equal(p.b, d, 0)) out.push_back(move_D(p, DMove::d21));
    return out;
}

}  // namespace

bool homologous_sbm(const SBM& a, const SBM& b) {
    SBM p = reduce_primitive_sbm(a);
    SBM q = reduce_primitive_sbm(b);
    if (is_isomorphic(p, q)) return true;
    for (const auto& img : one_move_images(p))
        if (is_isomorphic(img, q)) return true;
    return false;
}

// ------------------------------------------------------------ fingerprints

namespace {

std::string matrix_bytes(const std::vector<std::vector<int>>& b) {
    std::string out = std::to_string(b.size()) + ":";
    for (const auto& row : b)
        for (int v : row) out += std::to_string(v) + ",";
    return out;
}

}  // namespace

Fingerprint fingerprint_flat(const VirtualString& s) {
    auto prim = reduce_primitive(from_string(s));
    std::string fp = "F" + matrix_bytes(canonical_form(prim));
    // mod-2 index polynomial: sum over arrows of (t^|i(e)| - 1), coefficients mod 2
    std::map<int, int> poly;
    for (ArrowId e : s.arrows()) {
        int i = std::abs(arc_intersection_index(s, e));
        poly[i] ^= 1;
        poly[0] ^= 1;
    }
    fp += "|p2:";
    for (const auto& [exp, c] : poly)
        if (c) fp += std::to_string(exp) + ",";
    return fp;
}

Fingerprint fingerprint_singular(const SingularVirtualString& s) {
    SBM p = reduce_primitive_sbm(from_singular_string(s));
    std::set<std::string> forms;
    forms.insert(matrix_bytes(canonical_form(p)));
    for (const auto& img : one_move_images(p)) forms.insert(matrix_bytes(canonical_form(img)));
    std::string fp = "X";
    for (const auto& f : forms) fp += f + "|";
    return fp;
}

std::string to_hex(const Fingerprint& fp) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(fp.size() * 2);
    for (unsigned char c : fp) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

}  // namespace vknot
