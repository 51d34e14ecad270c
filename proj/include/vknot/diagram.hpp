#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace vknot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arrow ids are dense 1..n after parsing/normalization.
using ArrowId = int;

enum class Role : unsigned char { tail, head };

struct Endpoint {
    ArrowId id;
    Role role;
    auto operator<=>(const Endpoint&) const = default;
};

// A flat arrow diagram on one oriented circle: the word lists the 2m
// endpoints in traversal order, each arrow appearing once as tail and
// once as head.
struct VirtualString {
    std::vector<Endpoint> word;

    int rank() const { return static_cast<int>(word.size()) / 2; }
    std::vector<ArrowId> arrows() const;
    int tail_pos(ArrowId id) const;
    int head_pos(ArrowId id) const;
    bool operator==(const VirtualString&) const = default;
};

struct SingularVirtualString {
    VirtualString base;
    ArrowId preferred = 0;
    bool operator==(const SingularVirtualString&) const = default;
};

// Several core circles sharing one arrow set; an arrow's tail and head may
// sit on different circles. `ordered` marks links whose component order is
// meaningful (intersection index flips sign under reorder).
struct FlatLink {
    std::vector<std::vector<Endpoint>> circles;
    bool ordered = false;

    std::vector<ArrowId> arrows() const;
    // (circle index, position) of the given endpoint; throws if absent
    std::pair<int, int> locate(ArrowId id, Role role) const;
    bool operator==(const FlatLink&) const = default;
};

enum class Pass : unsigned char { over, under, sing_tail, sing_head };

// Signed Gauss diagram of a virtual knot. Classical chords carry a sign;
// singular chords (double-points) are unsigned and store the direction of
// their positive resolution via the sing_tail/sing_head passes.
struct SignedGaussDiagram {
    struct Token {
        ArrowId id;
        Pass pass;
        auto operator<=>(const Token&) const = default;
    };

    std::vector<Token> word;
    std::map<ArrowId, int> sign;  // classical chords only, values +1/-1
    std::set<ArrowId> singular;

    int rank() const { return static_cast<int>(sign.size() + singular.size()); }
    std::vector<ArrowId> chords() const;  // all ids, ascending
    bool is_singular(ArrowId id) const { return singular.count(id) != 0; }
    bool operator==(const SignedGaussDiagram&) const = default;
};

// --- parsing / serialization (one diagram per line, '#' comments) ---
//
// Knot grammar: O<id><sign> | U<id><sign> | D<id>t | D<id>h, sign in {+,-}.
// String grammar: <id>t | <id>h, preferred arrow's tokens prefixed '*'.
// Link grammar: string tokens, components separated by '/'.
// Labels are alphanumeric; numeric labels keep their numeric order, other
// labels follow in order of first appearance; ids come out dense 1..n.

SignedGaussDiagram parse_knot(const std::string& text);
std::string serialize_knot(const SignedGaussDiagram& d);

struct ParsedString {
    VirtualString str;
    std::optional<ArrowId> preferred;
};
ParsedString parse_string(const std::string& text);
VirtualString parse_virtual_string(const std::string& text);          // rejects '*'
SingularVirtualString parse_singular_string(const std::string& text); // requires '*'
std::string serialize_string(const VirtualString& s);
std::string serialize_string(const SingularVirtualString& s);

FlatLink parse_link(const std::string& text);
std::string serialize_link(const FlatLink& l);

// Strips comments/blank lines; returns remaining payload lines.
std::vector<std::string> read_diagram_lines(const std::string& file_contents);

// --- structural operations ---

// Shadow map: positive chords keep their over->under direction, negative
// chords are reversed, signs dropped. Rejects singular chords.
VirtualString shadow(const SignedGaussDiagram& d);

int writhe(const SignedGaussDiagram& d);

// Orientation-respecting smoothing at arrow e. Component 1 is the circle
// closed up from the arc running tail(e) -> head(e); this is the "right-hand
// curve" calibrated against the worked b3 matrix (see README).
FlatLink smooth(const VirtualString& s, ArrowId e);

// Smoothing a 2-component link at an inter-component arrow merges the two
// circles into one (used by the bracket invariant).
VirtualString smooth_inter(const FlatLink& l, ArrowId x);

// Gluing: the flat singular string whose preferred arrow is chord c's
// shadow arrow.
SingularVirtualString glue(const SignedGaussDiagram& d, ArrowId c);

// Gauss-diagram level gluing: chord c becomes a double-point whose stored
// direction is its shadow arrow.
SignedGaussDiagram glue_diagram(const SignedGaussDiagram& d, ArrowId c);

// Shadow plus one extra arrow inserted at the basepoint (tail first),
// marked preferred; models gluing at an R1 kink.
SingularVirtualString kink_glued(const SignedGaussDiagram& d);

// Union of the string with an unlinked arrowless circle (unordered).
FlatLink unknot_union(const VirtualString& s);

// Crossing change: chord direction reversed, sign negated.
SignedGaussDiagram cc_move(const SignedGaussDiagram& d, ArrowId c);

// Resolve double-point c into a classical crossing: +1 keeps the stored
// direction, -1 reverses it, so both resolutions share one shadow arrow.
SignedGaussDiagram resolve(const SignedGaussDiagram& d, ArrowId c, int sgn);

// --- canonical keys: equality up to rotation and id renaming ---

std::string canonical_key(const VirtualString& s);
std::string canonical_key(const SingularVirtualString& s);
std::string canonical_key(const SignedGaussDiagram& d);
// For unordered links minimizes over component orders as well.
std::string canonical_key(const FlatLink& l);

template <class T>
bool structurally_equal(const T& a, const T& b) {
    return canonical_key(a) == canonical_key(b);
}

}  // namespace vknot
