#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "vknot/diagram.hpp"

namespace vknot {

// Gauss-diagram moves (signed) and flat string moves. The implemented set:
//   r1_*   isolated chord insert/delete, two directions x two signs
//   r2_*   chord pair with adjacent over-passes and adjacent under-passes,
//          opposite signs, both relative orders
//   r3     the eight oriented triangle slides (signs and passes preserved,
//          the two passes on each of the three strands swap order)
//   cc     crossing change
//   si_*   flat move (i): arrow with adjacent endpoints
//   sii_*  flat move (ii): arrow pair (a,b),(b',a') with empty arcs aa', bb'
//   siii   flat move (iii): directed triangle, head(e_i) next to tail(e_i+1)
//   s_switch  (s-ii): preferred-arrow designation switch
// Inverses of si/sii never remove the preferred arrow of a singular string.
enum class MoveKind {
    r1_insert,
    r1_delete,
    r2_insert,
    r2_delete,
    r3,
    cc,
    si_insert,
    si_delete,
    sii_insert,
    sii_delete,
    siii,
    s_switch,
};

struct MoveInstance {
    MoveKind kind;
    std::vector<int> p;  // parameters, meaning depends on kind
    bool operator==(const MoveInstance&) const = default;
};

using KindSet = std::set<MoveKind>;

extern const KindSet knot_moves;          // r1/r2/r3
extern const KindSet knot_moves_cc;       // r1/r2/r3 + cc
extern const KindSet string_moves;        // si/sii/siii
extern const KindSet singular_moves;      // si/sii/siii + s_switch

std::vector<MoveInstance> enumerate_moves(const SignedGaussDiagram& d, const KindSet& kinds);
SignedGaussDiagram apply_move(const SignedGaussDiagram& d, const MoveInstance& m);

std::vector<MoveInstance> enumerate_moves(const FlatLink& l, const KindSet& kinds);
FlatLink apply_move(const FlatLink& l, const MoveInstance& m);

std::vector<MoveInstance> enumerate_moves(const VirtualString& s, const KindSet& kinds);
VirtualString apply_move(const VirtualString& s, const MoveInstance& m);

std::vector<MoveInstance> enumerate_moves(const SingularVirtualString& s, const KindSet& kinds);
SingularVirtualString apply_move(const SingularVirtualString& s, const MoveInstance& m);

// Deterministic uniform walk: each step picks uniformly among the
// enumerated instances (identity step when none apply).
SignedGaussDiagram random_walk(const SignedGaussDiagram& d, int steps, std::uint64_t seed,
                               const KindSet& kinds);
VirtualString random_walk(const VirtualString& s, int steps, std::uint64_t seed,
                          const KindSet& kinds);
SingularVirtualString random_walk(const SingularVirtualString& s, int steps, std::uint64_t seed,
                                  const KindSet& kinds);

// Greedy inverse-(i)/(ii) reduction, lowest endpoint position first, until
// no instance applies. Never removes circles, only arrows.
FlatLink normalize(const FlatLink& l);
VirtualString normalize(const VirtualString& s);

}  // namespace vknot
