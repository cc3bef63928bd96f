#pragma once

#include "homogen/actions.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homogen {

/// A class-D structure together with an anchored action of Aut(A) by
/// automorphisms on its domain. The stages of the equivariant construction
/// are all of this shape.
struct AnchoredStage {
    Structure structure;
    AnchoredAction action;

    /// Full invariant check: structure in class D, every group element an
    /// automorphism, action faithful and anchored.
    void validate() const;
};

/// A one-point-extension request: realize a new point whose quantifier-free
/// type over base_set is link. The extension base_set ∪ {*} must be in
/// class D relative to the induced substructure on base_set.
struct ExtensionTask {
    std::vector<int> base_set; // sorted, equals link.base
    LinkType link;
};

void validate_task(const Structure& m, const ExtensionTask& task);

struct ExtendResult {
    AnchoredStage stage;
    int realizing_vertex;
};

/// Adjoins a fresh transitive anchored orbit containing a point e realizing
/// the task over its base: e is wired to the base by the link, to every
/// other old point by an outgoing edge, the wiring is transported
/// equivariantly over the orbit, the orbit interior is oriented
/// swap-compatibly, and the quad pairing is completed orbit by orbit.
/// Requires a nonempty base (the empty type is realized in place by the
/// build loop, never by adjunction).
ExtendResult extend_by_one_type(const AnchoredStage& b0, const ExtensionTask& task);

/// Stage zero: the orbit of the full-domain enumeration (a free orbit, so
/// the action is always faithful), oriented and paired invariantly.
AnchoredStage initial_stage(const Structure& a);

/// All class-D-consistent one-point types over base_set in m, in a fixed
/// deterministic order (edge states ascending, pairing digits ascending).
std::vector<LinkType> enumerate_link_types(const Structure& m, const std::vector<int>& base_set);

struct RealizedEntry {
    ExtensionTask task;
    int vertex = -1;     // realizing vertex, -1 when unrealized
    bool realized = false;
    bool in_place = false; // realized by an existing vertex (empty base)
};

struct BuildReport {
    std::vector<int> stage_sizes; // initial stage, then after each adjunction
    std::vector<RealizedEntry> log;
    bool complete = true;   // false when the vertex budget cut the run short
    bool faithful = false;
    bool in_class_d = false;
};

struct BuildOutcome {
    AnchoredStage stage;
    BuildReport report;
};

/// Bookkeeping construction: per round, every one-point type over every
/// subset (of size <= size_bound) of the round-start structure is realized.
/// Tasks are processed FIFO in (|base|, lexicographic base, lexicographic
/// type) order. Requires |A| >= 4 and A in class D; structures smaller than
/// 4 are served by small_group_embedding instead.
BuildOutcome build_universal_action(const Structure& a, int rounds, int size_bound,
                                    std::optional<int> vertex_budget = std::nullopt);

struct ExtensionCheckEntry {
    std::vector<int> base;
    LinkType link;
    bool realized = false;
    int witness = -1;
};

struct ExtensionCheckReport {
    bool all_realized = true;
    int checked = 0;
    int unrealized = 0;
    std::vector<ExtensionCheckEntry> entries; // unrealized first; all entries kept
};

/// For every subset C (|C| <= size_bound) of the given domain (defaults to
/// the whole structure) and every class-D-consistent one-point type over C,
/// reports whether some vertex of m realizes it.
ExtensionCheckReport verify_extension_property(const Structure& m, int size_bound,
                                               std::optional<std::vector<int>> restrict_domain =
                                                   std::nullopt);

struct SmallGroupEmbedding {
    PermGroup aut_a;               // automorphism group of the input
    Structure host;                // class-D structure on C6
    GroupAction host_action;       // C6 acting regularly by automorphisms
    std::vector<int> into_c6;      // element index of aut_a -> element index of C6
};

/// Handles |A| < 4: Aut(A) is 1, C2 or C3; embed it into C6 and return the
/// class-D structure on C6 with its faithful regular action.
SmallGroupEmbedding small_group_embedding(const Structure& a);

struct TowerStage {
    int k = 0;
    Structure graph; // undirected
    std::map<std::vector<int>, int> new_vertex_of_subset;
    // The pushed-forward automorphisms: pairs (previous-stage element,
    // its extension), restricted to the image of Aut of stage zero.
    std::vector<std::pair<Permutation, Permutation>> eta;
};

/// Witness-adjunction tower over a loop-free undirected graph: stage k adds
/// one vertex per subset F of stage k-1, adjacent to exactly F, with no
/// edges among new vertices. eta extends automorphisms via v_F -> v_{g(F)};
/// the chain starts from the full automorphism group of the seed. Throws
/// CapacityError when 2^(stage size) exceeds the budget.
std::vector<TowerStage> rado_tower(const Structure& a, int k, std::uint64_t budget);

/// The extension of a previous-stage automorphism to a tower stage.
Permutation extend_tower_automorphism(const TowerStage& stage, int prev_n, const Permutation& g);

} // namespace homogen
