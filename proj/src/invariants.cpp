#include "vknot/invariants.hpp"

#include <algorithm>
#include <cstdlib>

namespace vknot {

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) {
        auto it = out.find(e);
        long long v = (it == out.end() ? 0 : it->second) - c;
        if (v == 0)
            out.erase(e);
        else
            out[e] = v;
    }
    return out;
}

Poly poly_mod2(const Poly& p) {
    Poly out;
    for (const auto& [e, c] : p) {
        long long v = ((c % 2) + 2) % 2;
        if (v) out[e] = v;
    }
    return out;
}

bool poly_is_zero(const Poly& p) { return p.empty(); }

std::string render_poly(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p) {
        long long mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (e == 0)
            out += std::to_string(mag);
        else
            out += std::to_string(mag) + "*t^" + std::to_string(e);
    }
    return out;
}

void FormalSum::add(const Fingerprint& fp, long long c) {
    auto it = terms.find(fp);
    long long v = (it == terms.end() ? 0 : it->second) + c;
    if (v == 0) {
        if (it != terms.end()) terms.erase(it);
    } else {
        terms[fp] = v;
    }
}

FormalSum sum_sub(const FormalSum& a, const FormalSum& b) {
    FormalSum out = a;
    for (const auto& [fp, c] : b.terms) out.add(fp, -c);
    return out;
}

std::string render_sum(const FormalSum& s) {
    std::string out;
    for (const auto& [fp, c] : s.terms)
        out += std::to_string(c) + " " + to_hex(fp) + "\n";
    return out;
}

int intersection_index(const FlatLink& l) {
    if (l.circles.size() != 2) throw Error("intersection_index: need exactly two components");
    std::set<ArrowId> t1, h1, t2, h2;
    for (const auto& e : l.circles[0]) (e.role == Role::tail ? t1 : h1).insert(e.id);
    for (const auto& e : l.circles[1]) (e.role == Role::tail ? t2 : h2).insert(e.id);
    int idx = 0;
    for (ArrowId a : t1)
        if (h2.count(a)) ++idx;
    for (ArrowId a : t2)
        if (h1.count(a)) --idx;
    return idx;
}

Poly pt(const SignedGaussDiagram& k) {
    if (!k.singular.empty()) throw Error("pt: diagram has singular chords");
    VirtualString sh = shadow(k);
    Poly out;
    for (const auto& [d, sgn] : k.sign) {
        int i = std::abs(intersection_index(smooth(sh, d)));
        out[i] += sgn;
        out[0] -= sgn;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Poly pt_mod2(const SignedGaussDiagram& k) { return poly_mod2(pt(k)); }

FormalSum bracket_B(const FlatLink& l) {
    if (l.circles.size() != 2) throw Error("bracket_B: need exactly two components");
    std::set<ArrowId> on1, on2;
    for (const auto& e : l.circles[0]) on1.insert(e.id);
    for (const auto& e : l.circles[1]) on2.insert(e.id);
    FormalSum out;
    for (ArrowId x : on1) {
        if (!on2.count(x)) continue;
        bool tail_on_1 = std::any_of(l.circles[0].begin(), l.circles[0].end(), [&](const Endpoint& e) {
            return e.id == x && e.role == Role::tail;
        });
        out.add(fingerprint_flat(smooth_inter(l, x)), tail_on_1 ? 1 : -1);
    }
    return out;
}

Fingerprint fp_link(const FlatLink& l) {
    if (l.circles.size() != 2) throw Error("fp_link: need exactly two components");
    FlatLink n = normalize(l);
    FlatLink swapped{{n.circles[1], n.circles[0]}, true};
    n.ordered = true;
    int i = intersection_index(n);
    std::string enc1 = render_sum(bracket_B(n));
    std::string enc2 = render_sum(bracket_B(swapped));
    return "L|i" + std::to_string(std::abs(i)) + "|" + std::min(enc1, enc2);
}

FormalSum invariant_S(const SignedGaussDiagram& k) {
    if (!k.singular.empty()) throw Error("invariant_S: diagram has singular chords");
    VirtualString sh = shadow(k);
    Fingerprint base = fp_link(unknot_union(sh));
    FormalSum out;
    for (const auto& [d, sgn] : k.sign) {
        out.add(fp_link(smooth(sh, d)), sgn);
        out.add(base, -sgn);
    }
    return out;
}

FormalSum invariant_G(const SignedGaussDiagram& k) {
    if (!k.singular.empty()) throw Error("invariant_G: diagram has singular chords");
    Fingerprint base = fingerprint_singular(kink_glued(k));
    FormalSum out;
    for (const auto& [d, sgn] : k.sign) {
        out.add(fingerprint_singular(glue(k, d)), sgn);
        out.add(base, -sgn);
    }
    return out;
}

Verdict compare_sums(const FormalSum& a, const FormalSum& b) {
    return a == b ? Verdict::equal_at_fingerprint : Verdict::distinct;
}

}  // namespace vknot
