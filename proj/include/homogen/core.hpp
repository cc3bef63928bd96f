#pragma once

#include "homogen/perms.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace homogen {

/// Placeholder for the not-yet-adjoined point in a LinkType tuple.
inline constexpr int kStar = -1;

using STuple = std::array<int, 4>;

/// Partner of a 4-tuple: (a,b,c,d) -> (c,d,a,b). The relation S is always
/// closed under this map.
STuple partner(const STuple& t);

/// The lexicographically smaller of a tuple and its partner; S is serialized
/// by these representatives only.
STuple canonical_s(const STuple& t);

/// A finite relational structure over {R binary, S 4-ary}. The domain is
/// always {0..n-1}; named vertices exist only in the file format.
///
/// R is a general binary relation at the type level: loops are admitted when
/// allow_loops is set, and symmetric pairs when undirected is set (undirected
/// graphs store both directions of each edge). Class membership predicates
/// impose irreflexivity and asymmetry separately.
struct Structure {
    std::string name = "s";
    int n = 0;
    bool allow_loops = false;
    bool undirected = false;
    std::set<std::pair<int, int>> r;
    std::set<STuple> s;

    bool has_r(int u, int v) const { return r.count({u, v}) > 0; }
    bool has_s(const STuple& t) const { return s.count(t) > 0; }
    /// True when u,v carry no R atom in either direction.
    bool no_edge(int u, int v) const { return !has_r(u, v) && !has_r(v, u); }

    void add_r(int u, int v);
    void add_s(const STuple& t); // inserts the partner too

    /// Full invariant check; throws InputError on violation.
    void validate() const;

    bool operator==(const Structure& o) const {
        return n == o.n && allow_loops == o.allow_loops && undirected == o.undirected &&
               r == o.r && s == o.s;
    }
};

// Text format (bit-exact, line oriented, '#' starts a comment):
//
//   structure <name>
//   n <count>
//   flags allow_loops undirected     # optional, present flags sorted
//   R <u> <v>
//   S <a> <b> <c> <d>                # canonical representative only
//   end
//
// Relation lines are emitted sorted lexicographically as strings. Vertex
// tokens are either indices or names; names are mapped to indices in order
// of first appearance. Undirected structures serialize each edge once
// (smaller endpoint first) and the loader restores the reverse direction.
std::string serialize_structure(const Structure& s);
Structure parse_structure(const std::string& text);
Structure load_structure(const std::string& path);

/// An injective vertex map that preserves and reflects R and S atom-by-atom.
struct Embedding {
    std::vector<int> map; // image of each source vertex
};

bool is_embedding(const Structure& a, const Structure& m, const std::vector<int>& map);

/// All embeddings of a into m, in lexicographic order of the image list.
std::vector<Embedding> find_embeddings(const Structure& a, const Structure& m);

bool are_isomorphic(const Structure& a, const Structure& b);

struct Induced {
    Structure structure;
    std::vector<int> old_of_new; // new index -> original vertex, increasing
};

/// Substructure induced on the given vertices, renumbered by increasing
/// original index.
Induced induced_substructure(const Structure& m, const std::vector<int>& vertices);

/// Quantifier-free type of one point over a parameter set: the R atoms
/// between v and base, and the S tuples inside base ∪ {v} containing v,
/// with v replaced by kStar.
struct LinkType {
    std::vector<int> base;      // sorted parameter vertices
    std::set<int> r_in;         // c with an edge c -> v
    std::set<int> r_out;        // c with an edge v -> c
    std::set<STuple> s_tuples;  // entries are base vertices or kStar

    bool operator==(const LinkType&) const = default;
};

LinkType qftp(const Structure& m, int v, const std::vector<int>& base);

/// True iff w realizes t over t.base, i.e. qftp(m, w, t.base) == t.
bool realizes(const Structure& m, int w, const LinkType& t);

/// Full automorphism group, found by backtracking over partial vertex maps
/// (vertices in decreasing total R-degree, ties by index). Deterministic:
/// the element list of the result is sorted.
PermGroup automorphism_group(const Structure& m);

struct UltrahomogeneityReport {
    bool ultrahomogeneous = true;
    // On failure: an isomorphism between induced substructures with no
    // automorphism extension.
    std::vector<int> domain_subset;
    std::vector<int> partial_map; // aligned with domain_subset
};

/// Exhaustive check that every isomorphism between induced substructures
/// extends to an automorphism.
UltrahomogeneityReport is_ultrahomogeneous(const Structure& m);

} // namespace homogen
