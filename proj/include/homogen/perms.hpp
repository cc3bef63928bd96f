#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace homogen {

/// A bijection of {0..n-1}, stored as its image list.
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> imgs) : images(std::move(imgs)) {}
    static Permutation identity(int n);

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int x) const { return images[x]; }
    bool is_identity() const;
    int order() const;
    Permutation inverse() const;

    auto operator<=>(const Permutation&) const = default;
};

/// g after h: compose(g, h)(x) == g(h(x)). Group products are read the same
/// way: the product g*h acts by "apply h, then g".
Permutation compose(const Permutation& g, const Permutation& h);

/// A finitely generated permutation group with its full element closure.
/// Elements are kept sorted by image list, so every query is deterministic.
struct PermGroup {
    int degree = 0;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;

    std::size_t order() const { return elements.size(); }
    bool is_trivial() const { return elements.size() == 1; }
    int index_of(const Permutation& p) const; // -1 if absent
    int multiply(int a, int b) const;         // index of elements[a] ∘ elements[b]
    int inverse_of(int a) const;
    int identity_index() const;
    int element_order(int a) const;
};

/// Group-order cap for closures; default 20160, HOMOGEN_CLOSURE_CAP overrides.
std::size_t closure_cap();

/// Breadth-first word closure of the generators. Throws InputError on a
/// degree mismatch and CapacityError when the closure exceeds the cap.
PermGroup closure(std::vector<Permutation> generators, std::size_t cap = closure_cap());

PermGroup trivial_group(int degree);

/// An action of a PermGroup on an abstract point set {0..num_points-1}.
/// Points are opaque indices; point_labels, when present, carries a
/// human-readable name per point. element_maps is aligned with
/// group.elements, so act(i, v) is a table lookup.
struct GroupAction {
    PermGroup group;
    int num_points = 0;
    std::vector<std::vector<int>> element_maps;
    std::vector<int> generator_elements; // element indices of group.generators
    std::vector<std::string> point_labels;

    int act(int element_index, int point) const { return element_maps[element_index][point]; }
    bool is_faithful() const;

    /// Checks the action laws: identity acts trivially and
    /// act(g*h, v) == act(g, act(h, v)) over all closure elements.
    void validate() const;
};

/// The group acting on {0..degree-1} by its own permutations.
GroupAction natural_action(const PermGroup& g);

/// The group acting on its own element list by left multiplication.
/// Free and transitive.
GroupAction left_regular_action(const PermGroup& g);

/// Builds the per-element maps from per-generator maps by closing words.
/// generator_maps[i] must describe how generators[i] moves the points.
GroupAction action_from_generator_maps(const PermGroup& g, int num_points,
                                       const std::vector<std::vector<int>>& generator_maps,
                                       std::vector<std::string> labels = {});

/// Orbits of the induced action on k-subsets of the point set. Each k-set is
/// sorted; each orbit is sorted; orbits are ordered by their least member.
/// k = 1 gives point orbits.
std::vector<std::vector<std::vector<int>>> orbits_on_ksets(const GroupAction& a, int k);

std::vector<int> orbit_of_kset(const GroupAction& a, std::vector<int> kset); // least member helper
std::vector<std::vector<int>> orbit_set_of_kset(const GroupAction& a, const std::vector<int>& kset);

/// Subgroups realized as element filters over the closure: the returned
/// group's generator list is the filtered element list itself.
PermGroup pointwise_stabilizer(const GroupAction& a, const std::vector<int>& points);
PermGroup setwise_stabilizer(const GroupAction& a, const std::vector<int>& points);

struct SmallSubgroupWitness {
    std::string kind; // "C4" or "C2xC2"
    std::vector<Permutation> subgroup; // the four elements
};

/// Witness for a subgroup isomorphic to C4 or C2 x C2: an element of order
/// four, or two distinct commuting involutions. nullopt when none exists.
std::optional<SmallSubgroupWitness> find_c4_or_klein(const PermGroup& g);

/// A small generating set (element indices) found greedily over the sorted
/// element list; empty for the trivial group.
std::vector<int> small_generating_set(const PermGroup& g);

/// Extends generator images to a map on all of h by words, then verifies the
/// homomorphism law on the full multiplication table and injectivity.
/// nullopt when the images are inconsistent or the map is not injective.
std::optional<std::vector<int>> homomorphism_from_generator_images(const PermGroup& h,
                                                                   const PermGroup& k,
                                                                   const std::vector<int>& gens,
                                                                   const std::vector<int>& images);

/// An abstract group embedding h -> k as an element-index map, found by
/// backtracking over generator images (order-preserving candidates only)
/// and verified on the full multiplication table. nullopt when h does not
/// embed in k.
std::optional<std::vector<int>> find_group_embedding(const PermGroup& h, const PermGroup& k);

// --- bundled catalog -------------------------------------------------------

/// Named small groups used throughout the test suites. Cyclic groups come in
/// their natural representation, direct products and the dicyclic group in
/// their regular representation.
std::vector<std::string> catalog_names();
PermGroup catalog_group(const std::string& name);

// --- file formats ----------------------------------------------------------
//
//   perm <n>: i0 i1 ... i(n-1)
//
//   group <name>
//   perm <n>: ...
//   end
//
//   action <name> over <groupname>
//   points <m>
//   map <generator-index>: j0 ... j(m-1)
//   end

std::string serialize_permutation(const Permutation& p);
Permutation parse_permutation_line(const std::string& line);

std::string serialize_group(const std::string& name, const PermGroup& g);
std::pair<std::string, PermGroup> parse_group(const std::string& text);
std::pair<std::string, PermGroup> load_group(const std::string& path);

std::string serialize_action(const std::string& name, const std::string& group_name,
                             const GroupAction& a);
GroupAction parse_action(const std::string& text, const PermGroup& g);

} // namespace homogen
