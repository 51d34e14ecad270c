#include "vknot/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vknot {

std::vector<ArrowId> VirtualString::arrows() const {
    std::set<ArrowId> s;
    for (const auto& e : word) s.insert(e.id);
    return {s.begin(), s.end()};
}

int VirtualString::tail_pos(ArrowId id) const {
    for (int i = 0; i < (int)word.size(); ++i)
        if (word[i].id == id && word[i].role == Role::tail) return i;
    throw Error("no tail for arrow " + std::to_string(id));
}

int VirtualString::head_pos(ArrowId id) const {
    for (int i = 0; i < (int)word.size(); ++i)
        if (word[i].id == id && word[i].role == Role::head) return i;
    throw Error("no head for arrow " + std::to_string(id));
}

std::vector<ArrowId> FlatLink::arrows() const {
    std::set<ArrowId> s;
    for (const auto& c : circles)
        for (const auto& e : c) s.insert(e.id);
    return {s.begin(), s.end()};
}

std::pair<int, int> FlatLink::locate(ArrowId id, Role role) const {
    for (int c = 0; c < (int)circles.size(); ++c)
        for (int i = 0; i < (int)circles[c].size(); ++i)
            if (circles[c][i].id == id && circles[c][i].role == role)
                return {c, i};
    throw Error("endpoint not found for arrow " + std::to_string(id));
}

std::vector<ArrowId> SignedGaussDiagram::chords() const {
    std::vector<ArrowId> out;
    for (const auto& [id, s] : sign) out.push_back(id);
    out.insert(out.end(), singular.begin(), singular.end());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- parsing

namespace {

std::vector<std::string> tokenize(const std::string& text) {
    std::string cleaned;
    for (char ch : text) {
        if (ch == '#') break;
        cleaned += (ch == ',') ? ' ' : ch;
    }
    std::istringstream in(cleaned);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool valid_label(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c); });
}

// Numeric labels keep their numeric order; other labels follow in order of
// first appearance. Result is a dense relabeling 1..n.
std::map<std::string, ArrowId> assign_ids(const std::vector<std::string>& labels_in_order) {
    std::vector<std::string> numeric, named;
    std::set<std::string> seen;
    for (const auto& l : labels_in_order) {
        if (!seen.insert(l).second) continue;
        (all_digits(l) ? numeric : named).push_back(l);
    }
    std::sort(numeric.begin(), numeric.end(),
              [](const std::string& a, const std::string& b) { return std::stoll(a) < std::stoll(b); });
    std::map<std::string, ArrowId> ids;
    ArrowId next = 1;
    for (const auto& l : numeric) ids[l] = next++;
    for (const auto& l : named) ids[l] = next++;
    return ids;
}

}  // namespace

std::vector<std::string> read_diagram_lines(const std::string& file_contents) {
    std::vector<std::string> out;
    std::istringstream in(file_contents);
    std::string line;
    while (std::getline(in, line)) {
        if (!tokenize(line).empty()) out.push_back(line);
    }
    return out;
}

SignedGaussDiagram parse_knot(const std::string& text) {
    struct Raw {
        std::string label;
        Pass pass;
        int sign;  // 0 for singular tokens
    };
    std::vector<Raw> raws;
    std::vector<std::string> labels;
    for (const auto& tok : tokenize(text)) {
        if (tok.size() < 2) throw Error("malformed token '" + tok + "'");
        char kind = tok[0];
        if (kind == 'O' || kind == 'U') {
            char sgn = tok.back();
            if (sgn != '+' && sgn != '-') throw Error("missing sign on token '" + tok + "'");
            std::string label = tok.substr(1, tok.size() - 2);
            if (!valid_label(label)) throw Error("malformed token '" + tok + "'");
            raws.push_back({label, kind == 'O' ? Pass::over : Pass::under, sgn == '+' ? 1 : -1});
            labels.push_back(label);
        } else if (kind == 'D') {
            char role = tok.back();
            if (role == '+' || role == '-') throw Error("sign on singular token '" + tok + "'");
            if (role != 't' && role != 'h') throw Error("malformed token '" + tok + "'");
            std::string label = tok.substr(1, tok.size() - 2);
            if (!valid_label(label)) throw Error("malformed token '" + tok + "'");
            raws.push_back({label, role == 't' ? Pass::sing_tail : Pass::sing_head, 0});
            labels.push_back(label);
        } else {
            throw Error("malformed token '" + tok + "'");
        }
    }
    auto ids = assign_ids(labels);

    SignedGaussDiagram d;
    std::map<ArrowId, std::set<Pass>> seen;
    for (const auto& r : raws) {
        ArrowId id = ids[r.label];
        d.word.push_back({id, r.pass});
        if (r.sign != 0) {
            auto it = d.sign.find(id);
            if (it != d.sign.end() && it->second != r.sign)
                throw Error("conflicting signs for chord " + r.label);
            d.sign[id] = r.sign;
        } else {
            d.singular.insert(id);
        }
        if (!seen[id].insert(r.pass).second)
            throw Error("duplicate role for chord " + r.label);
    }
    for (const auto& [label, id] : ids) {
        bool classical = d.sign.count(id), sing = d.singular.count(id);
        if (classical && sing) throw Error("chord " + label + " is both signed and singular");
        const auto& roles = seen[id];
        if (classical && roles.size() != 2)
            throw Error("missing partner endpoint for chord " + label);
        if (sing && roles.size() != 2)
            throw Error("missing partner endpoint for chord " + label);
    }
    return d;
}

std::string serialize_knot(const SignedGaussDiagram& d) {
    std::string out;
    for (const auto& t : d.word) {
        if (!out.empty()) out += ' ';
        switch (t.pass) {
            case Pass::over: out += "O" + std::to_string(t.id) + (d.sign.at(t.id) > 0 ? "+" : "-"); break;
            case Pass::under: out += "U" + std::to_string(t.id) + (d.sign.at(t.id) > 0 ? "+" : "-"); break;
            case Pass::sing_tail: out += "D" + std::to_string(t.id) + "t"; break;
            case Pass::sing_head: out += "D" + std::to_string(t.id) + "h"; break;
        }
    }
    return out;
}

namespace {

struct StrTok {
    std::string label;
    Role role;
    bool starred;
};

std::vector<StrTok> parse_string_tokens(const std::vector<std::string>& toks) {
    std::vector<StrTok> out;
    for (auto tok : toks) {
        bool star = false;
        if (!tok.empty() && tok[0] == '*') {
            star = true;
            tok = tok.substr(1);
        }
        if (tok.size() < 2) throw Error("malformed token '" + tok + "'");
        char role = tok.back();
        if (role != 't' && role != 'h') throw Error("malformed token '" + tok + "'");
        std::string label = tok.substr(0, tok.size() - 1);
        if (!valid_label(label)) throw Error("malformed token '" + tok + "'");
        out.push_back({label, role == 't' ? Role::tail : Role::head, star});
    }
    return out;
}

VirtualString build_string(const std::vector<StrTok>& raw, std::optional<ArrowId>* preferred_out) {
    std::vector<std::string> labels;
    for (const auto& r : raw) labels.push_back(r.label);
    auto ids = assign_ids(labels);

    VirtualString s;
    std::optional<std::string> pref_label;
    std::map<ArrowId, std::set<Role>> seen;
    for (const auto& r : raw) {
        ArrowId id = ids[r.label];
        s.word.push_back({id, r.role});
        if (!seen[id].insert(r.role).second)
            throw Error("duplicate " + std::string(r.role == Role::tail ? "tail" : "head") +
                        " for arrow " + r.label);
        if (r.starred) {
            if (pref_label && *pref_label != r.label)
                throw Error("preferred marker on more than one arrow");
            pref_label = r.label;
        }
    }
    for (const auto& [label, id] : ids)
        if (seen[id].size() != 2) throw Error("missing partner endpoint for arrow " + label);
    if (preferred_out)
        *preferred_out = pref_label ? std::optional<ArrowId>(ids[*pref_label]) : std::nullopt;
    return s;
}

}  // namespace

ParsedString parse_string(const std::string& text) {
    ParsedString out;
    out.str = build_string(parse_string_tokens(tokenize(text)), &out.preferred);
    return out;
}

VirtualString parse_virtual_string(const std::string& text) {
    auto p = parse_string(text);
    if (p.preferred) throw Error("unexpected preferred marker in plain string");
    return p.str;
}

SingularVirtualString parse_singular_string(const std::string& text) {
    auto p = parse_string(text);
    if (!p.preferred) throw Error("singular string needs a preferred arrow");
    return {p.str, *p.preferred};
}

std::string serialize_string(const VirtualString& s) {
    std::string out;
    for (const auto& e : s.word) {
        if (!out.empty()) out += ' ';
        out += std::to_string(e.id) + (e.role == Role::tail ? "t" : "h");
    }
    return out;
}

std::string serialize_string(const SingularVirtualString& s) {
    std::string out;
    for (const auto& e : s.base.word) {
        if (!out.empty()) out += ' ';
        if (e.id == s.preferred) out += '*';
        out += std::to_string(e.id) + (e.role == Role::tail ? "t" : "h");
    }
    return out;
}

FlatLink parse_link(const std::string& text) {
    std::string payload;
    for (char ch : text) {
        if (ch == '#') break;
        payload += ch;
    }
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : payload) {
        if (ch == '/') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);

    std::vector<std::vector<StrTok>> raw;
    std::vector<std::string> labels;
    for (const auto& part : parts) {
        raw.push_back(parse_string_tokens(tokenize(part)));
        for (const auto& r : raw.back()) {
            if (r.starred) throw Error("preferred marker not allowed in link");
            labels.push_back(r.label);
        }
    }
    auto ids = assign_ids(labels);
    FlatLink l;
    std::map<ArrowId, std::set<Role>> seen;
    for (const auto& circ : raw) {
        l.circles.emplace_back();
        for (const auto& r : circ) {
            ArrowId id = ids[r.label];
            l.circles.back().push_back({id, r.role});
            if (!seen[id].insert(r.role).second)
                throw Error("duplicate endpoint for arrow " + r.label);
        }
    }
    for (const auto& [label, id] : ids)
        if (seen[id].size() != 2) throw Error("missing partner endpoint for arrow " + label);
    return l;
}

std::string serialize_link(const FlatLink& l) {
    std::string out;
    for (int c = 0; c < (int)l.circles.size(); ++c) {
        if (c) out += " / ";
        std::string part;
        for (const auto& e : l.circles[c]) {
            if (!part.empty()) part += ' ';
            part += std::to_string(e.id) + (e.role == Role::tail ? "t" : "h");
        }
        out += part;
    }
    return out;
}

// ------------------------------------------------------------- operations

VirtualString shadow(const SignedGaussDiagram& d) {
    if (!d.singular.empty()) throw Error("shadow: diagram has singular chords");
    VirtualString s;
    for (const auto& t : d.word) {
        bool pos = d.sign.at(t.id) > 0;
        if (t.pass == Pass::over)
            s.word.push_back({t.id, pos ? Role::tail : Role::head});
        else
            s.word.push_back({t.id, pos ? Role::head : Role::tail});
    }
    return s;
}

int writhe(const SignedGaussDiagram& d) {
    if (!d.singular.empty()) throw Error("writhe: diagram has singular chords");
    int w = 0;
    for (const auto& [id, s] : d.sign) w += s;
    return w;
}

namespace {

// open arc (a,b) in traversal order, positions only
std::vector<int> open_arc(int n, int a, int b) {
    std::vector<int> out;
    for (int i = (a + 1) % n; i != b; i = (i + 1) % n) out.push_back(i);
    return out;
}

}  // namespace

FlatLink smooth(const VirtualString& s, ArrowId e) {
    int t = s.tail_pos(e), h = s.head_pos(e);
    int n = static_cast<int>(s.word.size());
    FlatLink l;
    l.ordered = true;
    l.circles.resize(2);
    for (int i : open_arc(n, t, h)) l.circles[0].push_back(s.word[i]);
    for (int i : open_arc(n, h, t)) l.circles[1].push_back(s.word[i]);
    return l;
}

VirtualString smooth_inter(const FlatLink& l, ArrowId x) {
    if (l.circles.size() != 2) throw Error("smooth_inter: need exactly two components");
    auto [ct, pt] = l.locate(x, Role::tail);
    auto [ch, ph] = l.locate(x, Role::head);
    if (ct == ch) throw Error("smooth_inter: arrow does not span the components");
    auto rest_after = [&](int c, int p) {
        const auto& circ = l.circles[c];
        std::vector<Endpoint> out;
        int n = static_cast<int>(circ.size());
        for (int k = 1; k < n; ++k) out.push_back(circ[(p + k) % n]);
        return out;
    };
    VirtualString merged;
    for (const auto& e : rest_after(ct, pt))
        if (e.id != x) merged.word.push_back(e);
    for (const auto& e : rest_after(ch, ph))
        if (e.id != x) merged.word.push_back(e);
    return merged;
}

SingularVirtualString glue(const SignedGaussDiagram& d, ArrowId c) {
    if (d.is_singular(c)) throw Error("glue: chord already singular");
    if (!d.sign.count(c)) throw Error("glue: unknown chord " + std::to_string(c));
    return {shadow(d), c};
}

SignedGaussDiagram glue_diagram(const SignedGaussDiagram& d, ArrowId c) {
    if (d.is_singular(c)) throw Error("glue_diagram: chord already singular");
    auto it = d.sign.find(c);
    if (it == d.sign.end()) throw Error("glue_diagram: unknown chord " + std::to_string(c));
    bool pos = it->second > 0;
    SignedGaussDiagram out = d;
    for (auto& t : out.word) {
        if (t.id != c) continue;
        if (t.pass == Pass::over)
            t.pass = pos ? Pass::sing_tail : Pass::sing_head;
        else
            t.pass = pos ? Pass::sing_head : Pass::sing_tail;
    }
    out.sign.erase(c);
    out.singular.insert(c);
    return out;
}

SingularVirtualString kink_glued(const SignedGaussDiagram& d) {
    VirtualString sh = shadow(d);
    ArrowId fresh = 1;
    for (ArrowId a : sh.arrows()) fresh = std::max(fresh, a + 1);
    VirtualString out;
    out.word.push_back({fresh, Role::tail});
    out.word.push_back({fresh, Role::head});
    out.word.insert(out.word.end(), sh.word.begin(), sh.word.end());
    return {out, fresh};
}

FlatLink unknot_union(const VirtualString& s) {
    FlatLink l;
    l.ordered = false;
    l.circles = {s.word, {}};
    return l;
}

SignedGaussDiagram cc_move(const SignedGaussDiagram& d, ArrowId c) {
    if (d.is_singular(c)) throw Error("cc_move: chord is singular");
    auto it = d.sign.find(c);
    if (it == d.sign.end()) throw Error("cc_move: unknown chord " + std::to_string(c));
    SignedGaussDiagram out = d;
    for (auto& t : out.word)
        if (t.id == c) t.pass = (t.pass == Pass::over) ? Pass::under : Pass::over;
    out.sign[c] = -it->second;
    return out;
}

SignedGaussDiagram resolve(const SignedGaussDiagram& d, ArrowId c, int sgn) {
    if (!d.is_singular(c)) throw Error("resolve: chord is not singular");
    if (sgn != 1 && sgn != -1) throw Error("resolve: sign must be +1 or -1");
    SignedGaussDiagram out = d;
    for (auto& t : out.word) {
        if (t.id != c) continue;
        if (t.pass == Pass::sing_tail)
            t.pass = sgn > 0 ? Pass::over : Pass::under;
        else if (t.pass == Pass::sing_head)
            t.pass = sgn > 0 ? Pass::under : Pass::over;
    }
    out.singular.erase(c);
    out.sign[c] = sgn;
    return out;
}

// --------------------------------------------------------- canonical keys

namespace {

// encode one rotation of one circle, renaming ids by first appearance
// across the whole encoding run
struct Renamer {
    std::map<ArrowId, int> map;
    int next = 1;
    int operator()(ArrowId id) {
        auto [it, fresh] = map.try_emplace(id, next);
        if (fresh) ++next;
        return it->second;
    }
};

std::string encode_string_rotation(const std::vector<Endpoint>& w, int rot, Renamer& ren,
                                   ArrowId preferred = 0) {
    std::string out;
    int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) {
        const auto& e = w[(rot + k) % n];
        out += std::to_string(ren(e.id));
        out += (e.role == Role::tail ? 't' : 'h');
        if (e.id == preferred) out += '*';
        out += ' ';
    }
    return out;
}

}  // namespace

std::string canonical_key(const VirtualString& s) {
    int n = static_cast<int>(s.word.size());
    std::string best;
    for (int r = 0; r < std::max(n, 1); ++r) {
        Renamer ren;
        std::string k = encode_string_rotation(s.word, r, ren);
        if (best.empty() || k < best) best = k;
        if (n == 0) break;
    }
    return "S|" + best;
}

std::string canonical_key(const SingularVirtualString& s) {
    int n = static_cast<int>(s.base.word.size());
    std::string best;
    for (int r = 0; r < std::max(n, 1); ++r) {
        Renamer ren;
        std::string k = encode_string_rotation(s.base.word, r, ren, s.preferred);
        if (best.empty() || k < best) best = k;
        if (n == 0) break;
    }
    return "X|" + best;
}

std::string canonical_key(const SignedGaussDiagram& d) {
    int n = static_cast<int>(d.word.size());
    std::string best;
    for (int r = 0; r < std::max(n, 1); ++r) {
        Renamer ren;
        std::string k;
        for (int i = 0; i < n; ++i) {
            const auto& t = d.word[(r + i) % n];
            k += std::to_string(ren(t.id));
            switch (t.pass) {
                case Pass::over: k += (d.sign.at(t.id) > 0 ? "O+" : "O-"); break;
                case Pass::under: k += (d.sign.at(t.id) > 0 ? "U+" : "U-"); break;
                case Pass::sing_tail: k += "Dt"; break;
                case Pass::sing_head: k += "Dh"; break;
            }
            k += ' ';
        }
        if (best.empty() || k < best) best = k;
        if (n == 0) break;
    }
    return "K|" + best;
}

std::string canonical_key(const FlatLink& l) {
    int nc = static_cast<int>(l.circles.size());
    std::vector<int> order(nc);
    for (int i = 0; i < nc; ++i) order[i] = i;

    std::string best;
    do {
        // all rotation combinations of the components in this order
        std::vector<int> sizes;
        for (int i : order) sizes.push_back(std::max<int>(1, l.circles[i].size()));
        std::vector<int> rot(nc, 0);
        while (true) {
            Renamer ren;
            std::string k;
            for (int ci = 0; ci < nc; ++ci) {
                k += encode_string_rotation(l.circles[order[ci]], rot[ci], ren);
                k += "/ ";
            }
            if (best.empty() || k < best) best = k;
            int p = nc - 1;
            while (p >= 0 && ++rot[p] == sizes[p]) rot[p--] = 0;
            if (p < 0) break;
        }
        if (l.ordered) break;
    } while (std::next_permutation(order.begin(), order.end()));
    return std::string(l.ordered ? "LO|" : "LU|") + best;
}

}  // namespace vknot
