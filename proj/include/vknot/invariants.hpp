#pragma once

#include <map>
#include <string>

#include "vknot/based_matrix.hpp"
#include "vknot/diagram.hpp"
#include "vknot/moves.hpp"

namespace vknot {

// sparse integer polynomial in t, exponent -> coefficient, no zeros stored
using Poly = std::map<int, long long>;

Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mod2(const Poly& p);
bool poly_is_zero(const Poly& p);
// "c0 + c1*t^e1 + ..." with ascending exponents; "0" when empty
std::string render_poly(const Poly& p);

// integer-coefficient formal sum over invariant fingerprints
struct FormalSum {
    std::map<Fingerprint, long long> terms;

    void add(const Fingerprint& fp, long long c);
    bool empty() const { return terms.empty(); }
    bool operator==(const FormalSum&) const = default;
};

FormalSum sum_sub(const FormalSum& a, const FormalSum& b);
// lines "<coeff> <fingerprint-hex>", sorted by fingerprint
std::string render_sum(const FormalSum& s);

enum class Verdict { distinct, equal_at_fingerprint };

// Signed count of the arrows crossing between the two ordered components:
// +1 per tail-on-1/head-on-2 arrow, -1 for the reverse.
int intersection_index(const FlatLink& l);

// p_t(K) = sum over classical crossings d of sign(d) (t^|i(d)| - 1), with
// i(d) the intersection index of the shadow smoothed at d.
Poly pt(const SignedGaussDiagram& k);
Poly pt_mod2(const SignedGaussDiagram& k);

// B(L) = sum over inter-component arrows x of sgn(x) [merged string at x],
// at fingerprint resolution.
FormalSum bracket_B(const FlatLink& l);

// Fingerprint of an unordered two-component flat link: |i| together with
// the lexicographically smaller of the two order-dependent bracket
// encodings, computed after normalize.
Fingerprint fp_link(const FlatLink& l);

// S(K) = sum over crossings d of sign(d) ([smooth at d] - [shadow u unknot])
FormalSum invariant_S(const SignedGaussDiagram& k);

// G(K) = sum over crossings d of sign(d) ([glue at d] - [kink gluing])
FormalSum invariant_G(const SignedGaussDiagram& k);

// Distinct is sound; equality is only at fingerprint resolution.
Verdict compare_sums(const FormalSum& a, const FormalSum& b);

namespace detail {
inline long long sub_value(long long a, long long b) { return a - b; }
inline Poly sub_value(const Poly& a, const Poly& b) { return poly_sub(a, b); }
inline FormalSum sub_value(const FormalSum& a, const FormalSum& b) { return sum_sub(a, b); }
inline bool is_zero_value(long long v) { return v == 0; }
inline bool is_zero_value(const Poly& p) { return poly_is_zero(p); }
inline bool is_zero_value(const FormalSum& s) { return s.empty(); }
}  // namespace detail

// Recursive resolution of all double-points: the value of the invariant's
// n-th derivative on an n-singular diagram. Independent of resolution
// order (the expansion collapses to a parity-signed sum over all 2^n
// resolutions; checked as a property).
template <class F>
auto derivative(F&& v, const SignedGaussDiagram& k) {
    if (k.singular.empty()) return v(k);
    ArrowId c = *k.singular.begin();
    return detail::sub_value(derivative(v, resolve(k, c, 1)), derivative(v, resolve(k, c, -1)));
}

// True iff the derivative vanishes (for a 2-singular diagram this is the
// 4-term alternating sum).
template <class F>
bool degree_one_check(F&& v, const SignedGaussDiagram& k) {
    return detail::is_zero_value(derivative(v, k));
}

}  // namespace vknot
