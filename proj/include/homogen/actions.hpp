#pragma once

#include "homogen/classd.hpp"
#include "homogen/core.hpp"
#include "homogen/perms.hpp"

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace homogen {

struct ThreeSetCheck {
    bool ok = true;
    // On failure: a 3-set each of whose pairs is swapped, with one swapping
    // element index per pair (pairs in the order 01, 02, 12).
    std::array<int, 3> violating{-1, -1, -1};
    std::array<int, 3> swappers{-1, -1, -1};
};

/// True iff every 3-set of points contains a pair that no group element
/// swaps. Exactly the condition under which a G-invariant I3-free
/// orientation of the point set exists.
ThreeSetCheck check_three_set_condition(const GroupAction& a);

/// G-invariant, irreflexive, asymmetric, I3-free orientation: each 2-set
/// orbit whose representative (least member) is not swapped by any element
/// is oriented ascending at the representative and closed under the action.
/// Unswapped-pair coverage means: no edge between u,v implies some element
/// swaps them. Throws InputError carrying the violating triple if the
/// three-set condition fails.
std::set<std::pair<int, int>> orient_from_action(const GroupAction& a);

struct FourSetCheck {
    bool ok = true;
    std::optional<std::vector<int>> violating; // 4-set, sorted
    // Chosen enumeration per orbit representative (lexicographically least
    // admissible one).
    std::map<std::vector<int>, std::array<int, 4>> rep_enumerations;
};

/// True iff every 4-set U has an enumeration v0,v1,v2,v3 under which every
/// element of the setwise-minus-pointwise stabilizer acts on U as the double
/// transposition (v0 v2)(v1 v3). Exactly the condition under which a
/// G-invariant complete quad pairing of the point set exists.
FourSetCheck check_four_set_condition(const GroupAction& a);

/// G-invariant complete quad pairing: per 4-set orbit, the representative's
/// least admissible enumeration (v0,v1,v2,v3) contributes the orbit of
/// (v0,v1,v2,v3) and of its partner. Throws InputError with the violating
/// 4-set if the four-set condition fails.
std::set<STuple> quad_pairing_from_action(const GroupAction& a);

struct GroupRefusal {
    SmallSubgroupWitness witness;
};

struct GroupStructure {
    Structure structure;  // on the group's own element list
    GroupAction action;   // left regular action, faithful, by automorphisms
};

/// Class-D structure on the group itself (left regular action acting by
/// automorphisms), or a refusal witnessing a C4 or C2xC2 subgroup; exactly
/// one of the two exists.
std::variant<GroupStructure, GroupRefusal> d_structure_on_group(const PermGroup& g);

/// An action of Aut(A) on an abstract point set in which every point
/// stabilizer is the pointwise stabilizer of an "anchor": a >= 4-element
/// vertex set of the ambient structure A. anchor_table[v] is the full fixed
/// set of the stabilizer of v inside the natural action on A.
struct AnchoredAction {
    GroupAction base;     // Aut(ambient) acting on the points
    Structure ambient;    // A; base.group == automorphism_group(ambient)
    std::vector<std::vector<int>> anchor_table;

    /// Checks anchors (size >= 4 and pointwise stabilizer match),
    /// equivariance of the anchor table, and (optionally) faithfulness.
    void validate(bool require_faithful = true) const;
};

/// The fixed set in the ambient structure of the stabilizer of v.
std::vector<int> anchor(const AnchoredAction& a, int v);

/// Element indices of the stabilizer of a point.
std::vector<int> point_stabilizer_elements(const GroupAction& a, int v);

/// Vertices of {0..degree-1} fixed by every one of the given elements.
std::vector<int> fixed_vertices(const PermGroup& g, const std::vector<int>& element_indices);

/// Transitive anchored action: the Aut(A)-orbit of the ascending enumeration
/// of a_prime inside distinct tuples of A^{|a_prime|}, points ordered
/// lexicographically by tuple. The stabilizer of the representative is the
/// pointwise stabilizer of a_prime. Requires |a_prime| >= 4 and A in class D.
/// Throws InputError when the resulting orbit action is not faithful.
AnchoredAction build_anchored_orbit(const Structure& a, const std::vector<int>& a_prime);

/// As orient_from_action, with the precondition discharged by anchoredness;
/// a condition failure here is an IntegrityError, not an input error.
std::set<std::pair<int, int>> orient_anchored(const AnchoredAction& a);

/// A G-invariant partial quad pairing supported on a union P of 4-set
/// orbits, complete on each member of P.
struct PartialQuadPairing {
    std::set<std::vector<int>> covered; // P, each 4-set sorted
    std::set<STuple> tuples;
};

/// Extends the partial pairing to a G-invariant complete quad pairing on all
/// points: uncovered orbits are filled through their representative's least
/// admissible enumeration. Invalid partial input is an InputError; a missing
/// admissible enumeration on a valid anchored action is an IntegrityError.
std::set<STuple> complete_quad_pairing(const AnchoredAction& a, const PartialQuadPairing& partial);

} // namespace homogen
