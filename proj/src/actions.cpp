#include "homogen/actions.hpp"

#include "homogen/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace homogen {

namespace {

int find_swapper(const GroupAction& a, int u, int v) {
    for (std::size_t i = 0; i < a.element_maps.size(); ++i)
        if (a.act(static_cast<int>(i), u) == v && a.act(static_cast<int>(i), v) == u)
            return static_cast<int>(i);
    return -1;
}

std::string set_to_string(const std::vector<int>& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

} // namespace

ThreeSetCheck check_three_set_condition(const GroupAction& a) {
    ThreeSetCheck check;
    for (int x = 0; x < a.num_points; ++x)
        for (int y = x + 1; y < a.num_points; ++y)
            for (int z = y + 1; z < a.num_points; ++z) {
                int sxy = find_swapper(a, x, y);
                if (sxy < 0) continue;
                int sxz = find_swapper(a, x, z);
                if (sxz < 0) continue;
                int syz = find_swapper(a, y, z);
                if (syz < 0) continue;
                check.ok = false;
                check.violating = {x, y, z};
                check.swappers = {sxy, sxz, syz};
                return check;
            }
    return check;
}

std::set<std::pair<int, int>> orient_from_action(const GroupAction& a) {
    ThreeSetCheck pre = check_three_set_condition(a);
    if (!pre.ok)
        throw InputError("orient_from_action: every pair of " +
                         set_to_string({pre.violating.begin(), pre.violating.end()}) +
                         " is swapped by some group element");

    std::set<std::pair<int, int>> r;
    for (const auto& orbit : orbits_on_ksets(a, 2)) {
        int u = orbit.front()[0], v = orbit.front()[1]; // least 2-set, ascending
        if (find_swapper(a, u, v) >= 0) continue;
        for (const auto& m : a.element_maps) r.insert({m[u], m[v]});
    }
    // The swap-free choice of representatives makes this irreflexive and
    // asymmetric; a violation would mean the orbit logic is broken.
    for (const auto& [u, v] : r)
        if (u == v || r.count({v, u}))
            throw IntegrityError("orient_from_action: produced a loop or symmetric pair");
    return r;
}

FourSetCheck check_four_set_condition(const GroupAction& a) {
    FourSetCheck check;
    if (a.num_points < 4) return check;

    for (const auto& orbit : orbits_on_ksets(a, 4)) {
        const std::vector<int>& rep = orbit.front();
        // Elements stabilizing the representative setwise but not pointwise.
        std::vector<int> movers;
        for (std::size_t i = 0; i < a.element_maps.size(); ++i) {
            bool setwise = true, pointwise = true;
            for (int v : rep) {
                int img = a.act(static_cast<int>(i), v);
                if (img != v) pointwise = false;
                if (!std::binary_search(rep.begin(), rep.end(), img)) setwise = false;
            }
            if (setwise && !pointwise) movers.push_back(static_cast<int>(i));
        }

        std::array<int, 4> chosen{rep[0], rep[1], rep[2], rep[3]};
        if (!movers.empty()) {
            // All movers must act on the 4-set as one double transposition.
            auto act_pattern = [&](int e) {
                std::array<int, 4> img{};
                for (int i = 0; i < 4; ++i) img[i] = a.act(e, rep[i]);
                return img;
            };
            auto is_double_transposition = [&](const std::array<int, 4>& img) {
                for (int i = 0; i < 4; ++i) {
                    if (img[i] == rep[i]) return false;
                    int j = static_cast<int>(std::find(rep.begin(), rep.end(), img[i]) - rep.begin());
                    if (img[j] != rep[i]) return false;
                }
                return true;
            };
            std::array<int, 4> first = act_pattern(movers.front());
            bool fine = is_double_transposition(first);
            for (std::size_t k = 1; fine && k < movers.size(); ++k)
                if (act_pattern(movers[k]) != first) fine = false;
            if (!fine) {
                check.ok = false;
                check.violating = rep;
                check.rep_enumerations.clear();
                return check;
            }
            // delta(v) for v in the 4-set.
            auto delta = [&](int v) {
                int i = static_cast<int>(std::find(rep.begin(), rep.end(), v) - rep.begin());
                return first[i];
            };
            // Admissible enumerations have v2 = delta(v0), v3 = delta(v1);
            // the least one takes v0 = min, then the least remaining v1.
            int v0 = rep[0];
            int v2 = delta(v0);
            std::vector<int> rest;
            for (int v : rep)
                if (v != v0 && v != v2) rest.push_back(v);
            chosen = {v0, rest[0], v2, delta(rest[0])};
        }
        check.rep_enumerations.emplace(rep, chosen);
    }
    return check;
}

std::set<STuple> quad_pairing_from_action(const GroupAction& a) {
    FourSetCheck pre = check_four_set_condition(a);
    if (!pre.ok)
        throw InputError("quad_pairing_from_action: 4-set " + set_to_string(*pre.violating) +
                         " admits no compatible enumeration");
    std::set<STuple> s;
    for (const auto& [rep, enumr] : pre.rep_enumerations) {
        STuple t{enumr[0], enumr[1], enumr[2], enumr[3]};
        STuple u = partner(t);
        for (const auto& m : a.element_maps) {
            s.insert({m[t[0]], m[t[1]], m[t[2]], m[t[3]]});
            s.insert({m[u[0]], m[u[1]], m[u[2]], m[u[3]]});
        }
    }
    return s;
}

std::variant<GroupStructure, GroupRefusal> d_structure_on_group(const PermGroup& g) {
    if (auto witness = find_c4_or_klein(g)) return GroupRefusal{*witness};

    GroupStructure out;
    out.action = left_regular_action(g);
    out.structure.name = "group_structure";
    out.structure.n = out.action.num_points;
    try {
        out.structure.r = orient_from_action(out.action);
        if (out.structure.n >= 4) out.structure.s = quad_pairing_from_action(out.action);
    } catch (const InputError& e) {
        // Without a C4 or Klein subgroup both conditions are guaranteed.
        throw IntegrityError(std::string("d_structure_on_group: construction failed on a group "
                                         "without C4/Klein subgroups: ") +
                             e.what());
    }
    if (!is_in_class_d(out.structure))
        throw IntegrityError("d_structure_on_group: result left class D");
    for (const auto& m : out.action.element_maps) {
        for (const auto& [u, v] : out.structure.r)
            if (!out.structure.has_r(m[u], m[v]))
                throw IntegrityError("d_structure_on_group: action does not preserve R");
        for (const auto& t : out.structure.s)
            if (!out.structure.has_s({m[t[0]], m[t[1]], m[t[2]], m[t[3]]}))
                throw IntegrityError("d_structure_on_group: action does not preserve S");
    }
    if (!out.action.is_faithful())
        throw IntegrityError("d_structure_on_group: regular action not faithful");
    return out;
}

// --- anchored actions -----------------------------------------------------------

std::vector<int> point_stabilizer_elements(const GroupAction& a, int v) {
    std::vector<int> stab;
    for (std::size_t i = 0; i < a.element_maps.size(); ++i)
        if (a.act(static_cast<int>(i), v) == v) stab.push_back(static_cast<int>(i));
    return stab;
}

std::vector<int> fixed_vertices(const PermGroup& g, const std::vector<int>& element_indices) {
    std::vector<int> fixed;
    for (int x = 0; x < g.degree; ++x) {
        bool all_fix = true;
        for (int e : element_indices)
            if (g.elements[e](x) != x) {
                all_fix = false;
                break;
            }
        if (all_fix) fixed.push_back(x);
    }
    return fixed;
}

std::vector<int> anchor(const AnchoredAction& a, int v) {
    if (v < 0 || v >= a.base.num_points) throw InputError("anchor: point out of range");
    return a.anchor_table[v];
}

void AnchoredAction::validate(bool require_faithful) const {
    if (require_faithful && !base.is_faithful())
        throw InputError("anchored action: not faithful");
    if (static_cast<int>(anchor_table.size()) != base.num_points)
        throw InputError("anchored action: anchor table size mismatch");
    for (int v = 0; v < base.num_points; ++v) {
        const auto& anch = anchor_table[v];
        if (anch.size() < 4) throw InputError("anchored action: anchor smaller than 4 points");
        // The stabilizer of v must be exactly the pointwise stabilizer of
        // the anchor inside the natural action on the ambient structure.
        auto stab = point_stabilizer_elements(base, v);
        std::vector<int> pointwise;
        for (std::size_t i = 0; i < base.group.order(); ++i) {
            bool fixes = true;
            for (int x : anch)
                if (base.group.elements[i](x) != x) {
                    fixes = false;
                    break;
                }
            if (fixes) pointwise.push_back(static_cast<int>(i));
        }
        if (stab != pointwise)
            throw InputError("anchored action: stabilizer of a point differs from the pointwise "
                             "stabilizer of its anchor");
        // The anchor must be the full fixed set of the stabilizer.
        if (anch != fixed_vertices(base.group, stab))
            throw InputError("anchored action: anchor is not the stabilizer's fixed set");
    }
    // Equivariance: anchor(gv) = g(anchor(v)) for the generators.
    for (int ge : base.generator_elements)
        for (int v = 0; v < base.num_points; ++v) {
            std::vector<int> mapped;
            for (int x : anchor_table[v]) mapped.push_back(base.group.elements[ge](x));
            std::sort(mapped.begin(), mapped.end());
            if (mapped != anchor_table[base.act(ge, v)])
                throw InputError("anchored action: anchor table not equivariant");
        }
}

AnchoredAction build_anchored_orbit(const Structure& a, const std::vector<int>& a_prime) {
    if (a_prime.size() < 4)
        throw InputError("build_anchored_orbit: anchor set needs at least 4 vertices");
    std::vector<int> base_tuple = a_prime;
    std::sort(base_tuple.begin(), base_tuple.end());
    for (std::size_t i = 0; i < base_tuple.size(); ++i) {
        if (base_tuple[i] < 0 || base_tuple[i] >= a.n)
            throw InputError("build_anchored_orbit: vertex out of range");
        if (i > 0 && base_tuple[i] == base_tuple[i - 1])
            throw InputError("build_anchored_orbit: duplicate vertex");
    }
    if (!is_in_class_d(a)) throw InputError("build_anchored_orbit: ambient structure not in class D");

    PermGroup g = automorphism_group(a);

    // Orbit of the ascending enumeration inside distinct tuples of A^k,
    // under the coordinatewise action.
    std::set<std::vector<int>> orbit;
    for (const auto& e : g.elements) {
        std::vector<int> img;
        img.reserve(base_tuple.size());
        for (int x : base_tuple) img.push_back(e(x));
        orbit.insert(img);
    }
    std::vector<std::vector<int>> points(orbit.begin(), orbit.end());

    auto index_of_tuple = [&](const std::vector<int>& t) {
        auto it = std::lower_bound(points.begin(), points.end(), t);
        if (it == points.end() || *it != t)
            throw IntegrityError("build_anchored_orbit: orbit not closed");
        return static_cast<int>(it - points.begin());
    };

    AnchoredAction out;
    out.ambient = a;
    out.base.group = g;
    out.base.num_points = static_cast<int>(points.size());
    out.base.element_maps.assign(g.order(), std::vector<int>(points.size()));
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t p = 0; p < points.size(); ++p) {
            std::vector<int> img;
            img.reserve(points[p].size());
            for (int x : points[p]) img.push_back(g.elements[i](x));
            out.base.element_maps[i][p] = index_of_tuple(img);
        }
    for (const auto& gen : g.generators) {
        int idx = g.index_of(gen);
        out.base.generator_elements.push_back(idx);
    }
    for (const auto& t : points) {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
        os << ')';
        out.base.point_labels.push_back(os.str());
    }

    out.anchor_table.resize(points.size());
    for (int v = 0; v < out.base.num_points; ++v)
        out.anchor_table[v] = fixed_vertices(g, point_stabilizer_elements(out.base, v));

    out.validate(/*require_faithful=*/true);
    return out;
}

std::set<std::pair<int, int>> orient_anchored(const AnchoredAction& a) {
    try {
        auto r = orient_from_action(a.base);
        Structure check;
        check.n = a.base.num_points;
        check.r = r;
        if (!is_i3_free(check).ok)
            throw IntegrityError("orient_anchored: produced orientation is not I3-free");
        return r;
    } catch (const InputError& e) {
        // Anchoredness guarantees the three-set condition; reaching this is
        // a broken invariant, not bad input.
        throw IntegrityError(std::string("orient_anchored: condition failed on an anchored "
                                         "action: ") +
                             e.what());
    }
}

std::set<STuple> complete_quad_pairing(const AnchoredAction& a,
                                       const PartialQuadPairing& partial) {
    const GroupAction& act = a.base;

    // Validate the partial pairing: support inside covered, covered a union
    // of orbits, tuples G-invariant, one full pairing per covered 4-set.
    std::map<std::vector<int>, std::vector<STuple>> tuples_by_set;
    for (const auto& t : partial.tuples) {
        std::vector<int> key{t[0], t[1], t[2], t[3]};
        std::sort(key.begin(), key.end());
        if (std::unique(key.begin(), key.end()) != key.end())
            throw InputError("complete_quad_pairing: tuple entries not distinct");
        if (!partial.covered.count(key))
            throw InputError("complete_quad_pairing: tuple outside the covered orbits");
        tuples_by_set[key].push_back(t);
    }
    std::set<std::vector<int>> orbit_checked;
    for (const auto& u : partial.covered) {
        if (u.size() != 4) throw InputError("complete_quad_pairing: covered member is not a 4-set");
        if (!orbit_checked.count(u)) {
            for (const auto& w : orbit_set_of_kset(act, u)) {
                if (!partial.covered.count(w))
                    throw InputError("complete_quad_pairing: covered set is not a union of orbits");
                orbit_checked.insert(w);
            }
        }
        auto on_u = tuples_by_set[u];
        std::sort(on_u.begin(), on_u.end());
        if (on_u.size() != 2 || partner(on_u[0]) != on_u[1])
            throw InputError("complete_quad_pairing: covered 4-set " + set_to_string(u) +
                             " does not carry exactly one partner pair");
    }
    for (const auto& m : act.element_maps)
        for (const auto& t : partial.tuples)
            if (!partial.tuples.count({m[t[0]], m[t[1]], m[t[2]], m[t[3]]}))
                throw InputError("complete_quad_pairing: partial pairing is not invariant");

    std::set<STuple> s = partial.tuples;
    FourSetCheck cond = check_four_set_condition(act);
    for (const auto& orbit : orbits_on_ksets(act, 4)) {
        if (partial.covered.count(orbit.front())) continue;
        auto it = cond.rep_enumerations.find(orbit.front());
        if (!cond.ok || it == cond.rep_enumerations.end())
            throw IntegrityError("complete_quad_pairing: no admissible enumeration for 4-set " +
                                 set_to_string(cond.violating ? *cond.violating : orbit.front()));
        STuple t{it->second[0], it->second[1], it->second[2], it->second[3]};
        STuple u = partner(t);
        for (const auto& m : act.element_maps) {
            s.insert({m[t[0]], m[t[1]], m[t[2]], m[t[3]]});
            s.insert({m[u[0]], m[u[1]], m[u[2]], m[u[3]]});
        }
    }

    Structure verify;
    verify.n = act.num_points;
    verify.s = s;
    if (!is_quad_paired(verify).ok)
        throw IntegrityError("complete_quad_pairing: completion is not a complete quad pairing");
    return s;
}

} // namespace homogen
