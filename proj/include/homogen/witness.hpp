#pragma once

#include "homogen/classd.hpp"
#include "homogen/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homogen {

/// The 6-vertex ultrahomogeneous digraph-with-loops whose age admits no
/// group extension at the two-loop pair: vertices a, a', b0, b1, b2, b3 in
/// that order, R = two loops, a->b0, a->b2, a'->b1, a'->b3, and the directed
/// 4-cycle on the b's.
Structure remark_structure();

/// A group extension of an embedding: every automorphism of the image
/// extends to an automorphism of the host, compatibly with composition.
struct GroupExtensionData {
    PermGroup source;              // Aut of the induced image structure
    PermGroup target;              // Aut of the host
    std::vector<int> element_map;  // source element index -> target element index
    std::vector<int> image_points; // sorted image of the embedding in the host
};

/// Replays a claimed extension: injectivity, the homomorphism law on the
/// full multiplication table, and that every image element extends its
/// source pointwise. Throws IntegrityError on any failure.
void verify_group_extension(const Structure& m, const GroupExtensionData& data);

struct GroupExtensionVerdict {
    bool extends = false;
    std::optional<GroupExtensionData> data; // present on success
    std::vector<std::string> trace;         // refutation notes on failure
};

/// Decides by exhaustive search whether the automorphisms of the image of
/// the embedding extend to automorphisms of m compatibly with composition.
GroupExtensionVerdict check_group_extension(const Structure& a, const Structure& m,
                                            const std::vector<int>& embedding);

struct AgeClassEntry {
    std::vector<int> class_subset; // first subset of the isomorphism class
    Structure representative;
    int class_size = 0;                                  // subsets in the class
    std::vector<std::pair<std::vector<int>, bool>> embeddings; // map, extends?
    bool any_extension = false;
};

struct AgeExtensionReport {
    bool extensible = true; // every class admits some extension
    std::vector<AgeClassEntry> classes;
};

/// For every isomorphism class of nonempty induced substructures of m and
/// every embedding of it into m, records the group-extension verdict.
AgeExtensionReport age_group_extension_report(const Structure& m, int cap = 8);

struct UniversalityEntry {
    std::vector<int> class_subset;
    Structure representative;
    std::size_t aut_order = 0;
    bool embeds = false; // Aut(rep) embeds abstractly in Aut(m)
};

struct UniversalityReport {
    bool universal = true;
    std::size_t host_aut_order = 0;
    std::vector<UniversalityEntry> entries;
};

/// For every isomorphism class in the age of m, decides by brute force
/// whether its automorphism group embeds abstractly into Aut(m).
UniversalityReport finite_universality_report(const Structure& m, int cap = 8);

/// The 4-point class-D configuration that blocks group extensions: points
/// x, y, z, v with edges (x,y), (x,z), (v,y), (z,v), no edge between x and
/// v, and the canonical quad pairing.
Structure obstruction_config();

struct ObstructionVerdict {
    bool ok = true;
    int embeddings_checked = 0;
    std::size_t automorphisms_checked = 0;
    std::vector<std::string> derivation;
};

/// Asserts that no automorphism of m restricts, on any embedded copy of the
/// configuration, to the swap of y and z fixing x. Throws InputError when m
/// is outside class D or contains no copy; a found swap is an
/// IntegrityError (it would falsify the obstruction argument).
ObstructionVerdict verify_obstruction(const Structure& m);

} // namespace homogen
