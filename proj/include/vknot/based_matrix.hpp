#pragma once

#include <string>
#include <vector>

#include "vknot/diagram.hpp"

namespace vknot {

// Skew-symmetric integer matrix over a labeled set with distinguished s at
// index 0. For SBMs the preferred element d sits at the last index.
struct BasedMatrix {
    std::vector<std::vector<int>> b;
    int size() const { return static_cast<int>(b.size()); }
    bool operator==(const BasedMatrix&) const = default;
};

struct SBM {
    std::vector<std::vector<int>> b;  // index 0 = s, last index = d
    int size() const { return static_cast<int>(b.size()); }
    int d_index() const { return size() - 1; }
    bool operator==(const SBM&) const = default;
};

bool is_skew_symmetric(const std::vector<std::vector<int>>& b);
void check_valid(const BasedMatrix& m);
void check_valid(const SBM& m);

// Matrix text format: one row per line, space-separated integers,
// first row = s (last row = d for SBMs).
std::vector<std::vector<int>> parse_matrix(const std::string& text);
std::string serialize_matrix(const std::vector<std::vector<int>>& b);

// --- construction from strings ---

// Intersection index of the smoothing at e computed directly from the word
// (the independent route used to fill b(e,s); smooth()+intersection_index
// is the other route, and the two are cross-checked in tests).
int arc_intersection_index(const VirtualString& s, ArrowId e);

// b(e,f) = ab.cd + eps for distinct arrows e, f; the two summands are
// exposed for the worked-example cross-check.
struct LinkingDecomposition {
    int ab_cd;
    int eps;
    int value() const { return ab_cd + eps; }
};
LinkingDecomposition linking_decomposition(const VirtualString& s, ArrowId e, ArrowId f);

// Rows/columns ordered s, then arrows ascending by id.
BasedMatrix from_string(const VirtualString& s);
// Rows/columns ordered s, non-preferred arrows ascending, preferred last.
SBM from_singular_string(const SingularVirtualString& s);

// --- special elements and elementary extensions ---

enum class ElementClass { annihilating, core, annihilating_like, core_like, none };

ElementClass classify_element(const BasedMatrix& m, int g);
ElementClass classify_element(const SBM& m, int g);

// Unordered pairs {g1,g2} of non-distinguished elements with
// b(g1,.) + b(g2,.) = b(s,.).
std::vector<std::pair<int, int>> complementary_pairs(const BasedMatrix& m);
std::vector<std::pair<int, int>> complementary_pairs(const SBM& m);

// Elements complementary to d (candidates for the singularity switch N).
std::vector<int> switch_candidates(const SBM& m);

enum class ExtensionKind { M1, M2, M3 };

// M1 adds an annihilating element, M2 a core element, M3 a complementary
// pair. Supplied rows (over the old element set) are validated against the
// defining constraints; for M1/M2 they may be omitted. M3 requires row_i
// (row_j defaults to s-row minus row_i and is validated when given).
BasedMatrix extend(const BasedMatrix& m, ExtensionKind kind,
                   const std::vector<std::vector<int>>& rows = {});
SBM extend(const SBM& m, ExtensionKind kind,
           const std::vector<std::vector<int>>& rows = {});

// Greedy elimination of annihilating elements, core elements and
// complementary pairs, lowest index first. The result is primitive and
// homologous to the input.
BasedMatrix reduce_primitive(const BasedMatrix& m);

// Singularity switch: moves the d designation to a complementary element g
// (index into m); matrix entries unchanged, new d reordered last.
SBM switch_N(const SBM& m, int g);

// D12 turns an annihilating-like d into a core-like one, D21 the reverse;
// both keep |G| fixed.
enum class DMove { d12 = 12, d21 = 21 };
SBM move_D(const SBM& m, DMove dir);

// Greedy elimination over G - {s,d}; when stuck, searches the N-orbit of
// d designations breadth-first and continues from any designation that
// unlocks an elimination. Terminates; result is primitive.
SBM reduce_primitive_sbm(const SBM& m);

bool is_primitive(const BasedMatrix& m);
bool is_primitive(const SBM& m);

// Canonical form: exhaustive backtracking minimization over label
// permutations fixing s (and d), with s-row-first pruning and dedup of
// interchangeable (equal-row) elements.
std::vector<std::vector<int>> canonical_form(const BasedMatrix& m);
std::vector<std::vector<int>> canonical_form(const SBM& m);

bool is_isomorphic(const BasedMatrix& a, const BasedMatrix& b);
bool is_isomorphic(const SBM& a, const SBM& b);

bool homologous(const BasedMatrix& a, const BasedMatrix& b);
// True iff the primitives are isomorphic or related by a single N, D12 or
// D21 move followed by an isomorphism.
bool homologous_sbm(const SBM& a, const SBM& b);

// --- fingerprints (opaque byte strings) ---

using Fingerprint = std::string;

// Canonical primitive based matrix plus the mod-2 index polynomial of the
// string; equal for homotopic strings.
Fingerprint fingerprint_flat(const VirtualString& s);

// Canonical forms of the primitive SBM and of its one-move partners (all N
// switches, and D12/D21 where applicable), as a sorted set; equal for
// homotopic singular strings.
Fingerprint fingerprint_singular(const SingularVirtualString& s);

std::string to_hex(const Fingerprint& fp);

}  // namespace vknot
