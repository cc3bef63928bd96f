#pragma once

#include "homogen/builder.hpp"
#include "homogen/classd.hpp"
#include "homogen/core.hpp"
#include "homogen/perms.hpp"

#include <numeric>
#include <vector>

namespace homogen::testutil {

/// 4-vertex class-D structure: directed 4-cycle with the canonical pairing.
/// Aut = {id, (0 2)(1 3)}.
inline Structure a4() {
    Structure a;
    a.name = "a4";
    a.n = 4;
    a.add_r(0, 1);
    a.add_r(1, 2);
    a.add_r(2, 3);
    a.add_r(3, 0);
    a.add_s({0, 1, 2, 3});
    return a;
}

inline Structure directed_path(int k) {
    Structure p;
    p.name = "path" + std::to_string(k);
    p.n = k;
    for (int i = 0; i + 1 < k; ++i) p.add_r(i, i + 1);
    return p;
}

inline Structure undirected_path(int k) {
    Structure p;
    p.name = "upath" + std::to_string(k);
    p.n = k;
    p.undirected = true;
    for (int i = 0; i + 1 < k; ++i) p.add_r(i, i + 1);
    return p;
}

inline Structure edgeless(int k) {
    Structure p;
    p.name = "edgeless" + std::to_string(k);
    p.n = k;
    return p;
}

/// The action extended by points every element fixes.
inline GroupAction with_fixed_points(const GroupAction& a, int extra) {
    GroupAction out = a;
    out.num_points += extra;
    for (auto& m : out.element_maps)
        for (int i = 0; i < extra; ++i) m.push_back(a.num_points + i);
    out.point_labels.clear();
    return out;
}

/// Direct relation-transport automorphism test (the definitional oracle).
inline bool transports_relations(const Structure& st, const std::vector<int>& images) {
    for (const auto& [u, v] : st.r)
        if (!st.has_r(images[u], images[v])) return false;
    for (const auto& t : st.s)
        if (!st.has_s({images[t[0]], images[t[1]], images[t[2]], images[t[3]]})) return false;
    // A bijection preserving finite relations also reflects them.
    return true;
}

/// Brute-force automorphism list over all n! permutations.
inline std::vector<Permutation> brute_force_automorphisms(const Structure& st) {
    std::vector<int> images(st.n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        if (transports_relations(st, images)) out.push_back(Permutation(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

} // namespace homogen::testutil
