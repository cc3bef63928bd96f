#include "homogen/builder.hpp"

#include "homogen/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace homogen {

namespace {

std::string vset_string(const std::vector<int>& s) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
    return os.str();
}

void for_each_subset(const std::vector<int>& domain, int k,
                     const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == k) {
            emit(cur);
            return;
        }
        for (std::size_t i = start; i < domain.size(); ++i) {
            cur.push_back(domain[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

bool element_is_automorphism(const Structure& st, const std::vector<int>& m) {
    for (const auto& [u, v] : st.r)
        if (!st.has_r(m[u], m[v])) return false;
    for (const auto& t : st.s)
        if (!st.has_s({m[t[0]], m[t[1]], m[t[2]], m[t[3]]})) return false;
    return true;
}

} // namespace

void AnchoredStage::validate() const {
    structure.validate();
    if (structure.n != action.base.num_points)
        throw InputError("stage: structure and action point counts differ");
    if (!is_in_class_d(structure)) throw InputError("stage: structure left class D");
    for (const auto& m : action.base.element_maps)
        if (!element_is_automorphism(structure, m))
            throw InputError("stage: a group element is not an automorphism");
    action.validate(/*require_faithful=*/true);
}

void validate_task(const Structure& m, const ExtensionTask& task) {
    std::vector<int> base = task.base_set;
    std::sort(base.begin(), base.end());
    if (base != task.base_set) throw InputError("task: base_set must be sorted");
    if (task.link.base != task.base_set) throw InputError("task: link.base must equal base_set");
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i] < 0 || base[i] >= m.n) throw InputError("task: base vertex out of range");
        if (i > 0 && base[i] == base[i - 1]) throw InputError("task: duplicate base vertex");
    }

    // The one-point extension described by the link must land in class D
    // relative to the induced substructure on the base.
    Induced ind = induced_substructure(m, base);
    Structure ext = ind.structure;
    const int star = ext.n;
    ext.n += 1;
    std::vector<int> local_of(m.n, -1);
    for (std::size_t i = 0; i < ind.old_of_new.size(); ++i) local_of[ind.old_of_new[i]] = static_cast<int>(i);
    for (int c : task.link.r_out) ext.r.insert({star, local_of[c]});
    for (int c : task.link.r_in) ext.r.insert({local_of[c], star});
    for (const auto& t : task.link.s_tuples) {
        STuple local;
        for (int i = 0; i < 4; ++i) local[i] = (t[i] == kStar) ? star : local_of[t[i]];
        ext.s.insert(local);
    }
    if (!is_in_class_d(ext))
        throw InputError("task: the one-point extension over " + vset_string(base) +
                         " is not in class D");
}

// Orbit of a tuple under the coordinatewise action, points sorted by tuple.
namespace {

struct OrbitPiece {
    std::vector<std::vector<int>> tuples;        // sorted lexicographically
    std::vector<std::vector<int>> element_maps;  // aligned with group elements
    int rep_index = -1;                          // index of the seed tuple
};

OrbitPiece orbit_of_tuple(const PermGroup& g, const std::vector<int>& seed) {
    std::set<std::vector<int>> orbit;
    for (const auto& e : g.elements) {
        std::vector<int> img;
        img.reserve(seed.size());
        for (int x : seed) img.push_back(e(x));
        orbit.insert(img);
    }
    OrbitPiece out;
    out.tuples.assign(orbit.begin(), orbit.end());
    auto index_of = [&](const std::vector<int>& t) {
        auto it = std::lower_bound(out.tuples.begin(), out.tuples.end(), t);
        if (it == out.tuples.end() || *it != t)
            throw IntegrityError("orbit_of_tuple: orbit not closed under the group");
        return static_cast<int>(it - out.tuples.begin());
    };
    out.rep_index = index_of(seed);
    out.element_maps.assign(g.order(), std::vector<int>(out.tuples.size()));
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t p = 0; p < out.tuples.size(); ++p) {
            std::vector<int> img;
            img.reserve(out.tuples[p].size());
            for (int x : out.tuples[p]) img.push_back(g.elements[i](x));
            out.element_maps[i][p] = index_of(img);
        }
    return out;
}

std::string tuple_label(const std::vector<int>& t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

} // namespace

ExtendResult extend_by_one_type(const AnchoredStage& b0, const ExtensionTask& task) {
    validate_task(b0.structure, task);
    if (task.base_set.empty())
        throw InputError("extend_by_one_type: the empty type is realized in place, not adjoined");

    const PermGroup& g = b0.action.base.group;
    const int n0 = b0.structure.n;

    // The anchor of the whole base: its pointwise stabilizer in the ambient
    // structure equals the pointwise stabilizer of the base in the stage.
    std::set<int> anchor_union;
    for (int v : task.base_set)
        for (int x : b0.action.anchor_table[v]) anchor_union.insert(x);
    std::vector<int> a_prime(anchor_union.begin(), anchor_union.end());

    OrbitPiece orbit = orbit_of_tuple(g, a_prime);
    const int n_new = static_cast<int>(orbit.tuples.size());
    const int e = n0 + orbit.rep_index;

    // Merged action on old points followed by the fresh orbit.
    GroupAction merged;
    merged.group = g;
    merged.num_points = n0 + n_new;
    merged.generator_elements = b0.action.base.generator_elements;
    merged.element_maps.assign(g.order(), {});
    for (std::size_t i = 0; i < g.order(); ++i) {
        std::vector<int> m = b0.action.base.element_maps[i];
        m.reserve(n0 + n_new);
        for (int p = 0; p < n_new; ++p) m.push_back(n0 + orbit.element_maps[i][p]);
        merged.element_maps[i] = std::move(m);
    }
    merged.point_labels = b0.action.base.point_labels;
    if (static_cast<int>(merged.point_labels.size()) == n0)
        for (const auto& t : orbit.tuples) merged.point_labels.push_back(tuple_label(t));

    // The stabilizer of e must be exactly the pointwise stabilizer of the base.
    {
        std::vector<int> base_stab;
        for (std::size_t i = 0; i < g.order(); ++i) {
            bool fixes = true;
            for (int v : task.base_set)
                if (b0.action.base.act(static_cast<int>(i), v) != v) {
                    fixes = false;
                    break;
                }
            if (fixes) base_stab.push_back(static_cast<int>(i));
        }
        if (point_stabilizer_elements(merged, e) != base_stab)
            throw IntegrityError("extend_by_one_type: stabilizer of the new point differs from "
                                 "the pointwise stabilizer of the base");
    }

    // --- oriented edges ---------------------------------------------------
    // e's atom toward each old vertex: base atoms from the link, an outgoing
    // edge to everything else; then transported over the whole orbit.
    std::vector<int> e_atom(n0, 1); // 0 none, 1 e->v, 2 v->e
    for (int c : task.base_set) e_atom[c] = 0;
    for (int c : task.link.r_out) e_atom[c] = 1;
    for (int c : task.link.r_in) e_atom[c] = 2;

    std::map<std::pair<int, int>, int> mixed_atom; // (new point, old point) -> state
    for (std::size_t i = 0; i < g.order(); ++i) {
        int u = merged.act(static_cast<int>(i), e);
        for (int v = 0; v < n0; ++v) {
            int w = merged.act(static_cast<int>(i), v);
            auto [it, inserted] = mixed_atom.emplace(std::make_pair(u, w), e_atom[v]);
            if (!inserted && it->second != e_atom[v])
                throw IntegrityError("extend_by_one_type: equivariant edge transport is "
                                     "inconsistent (the base stabilizer claim failed)");
        }
    }

    std::set<std::pair<int, int>> r = b0.structure.r;
    for (const auto& [pair, state] : mixed_atom) {
        if (state == 1) r.insert({pair.first, pair.second});
        else if (state == 2) r.insert({pair.second, pair.first});
    }
    {
        GroupAction local;
        local.group = g;
        local.num_points = n_new;
        local.element_maps = orbit.element_maps;
        local.generator_elements = merged.generator_elements;
        std::set<std::pair<int, int>> internal;
        try {
            internal = orient_from_action(local);
        } catch (const InputError& err) {
            throw IntegrityError(std::string("extend_by_one_type: fresh orbit admits no "
                                             "invariant orientation: ") +
                                 err.what());
        }
        for (const auto& [u, v] : internal) r.insert({n0 + u, n0 + v});
    }

    // --- quad pairing ------------------------------------------------------
    // Start from the old pairing plus the link tuples of e, fill every 4-set
    // with one new point and three old ones orbit by orbit (transport where
    // the orbit already meets link tuples, canonical pairing otherwise), and
    // hand the rest to the generic completion.
    std::set<STuple> s_prime = b0.structure.s;
    std::map<std::vector<int>, std::vector<STuple>> link_on_set;
    for (const auto& t : task.link.s_tuples) {
        STuple global = t;
        for (int& x : global)
            if (x == kStar) x = e;
        s_prime.insert(global);
        std::vector<int> key{global[0], global[1], global[2], global[3]};
        std::sort(key.begin(), key.end());
        link_on_set[key].push_back(global);
    }

    PartialQuadPairing partial;
    partial.tuples = s_prime;
    std::vector<int> old_domain(n0);
    std::iota(old_domain.begin(), old_domain.end(), 0);
    for_each_subset(old_domain, 4,
                    [&](const std::vector<int>& old4) { partial.covered.insert(old4); });

    std::set<std::vector<int>> visited;
    for (int p = 0; p < n_new; ++p) {
        for_each_subset(old_domain, 3, [&](const std::vector<int>& triple) {
            std::vector<int> u = triple;
            u.push_back(n0 + p);
            std::sort(u.begin(), u.end());
            partial.covered.insert(u);
            if (visited.count(u)) return;
            auto orbit_sets = orbit_set_of_kset(merged, u);
            for (const auto& w : orbit_sets) visited.insert(w);

            // Tuples already present on the orbit (they sit on {e} ∪ T with
            // T inside the base) transport across it; otherwise the orbit
            // representative takes the canonical pairing.
            std::vector<STuple> seeds;
            for (const auto& w : orbit_sets) {
                auto it = link_on_set.find(w);
                if (it != link_on_set.end())
                    seeds.insert(seeds.end(), it->second.begin(), it->second.end());
            }
            if (seeds.empty()) {
                const std::vector<int>& rep = orbit_sets.front();
                // With one new point and three old ones, setwise stabilizers
                // fix the 4-set pointwise; the canonical choice is safe.
                auto setw = setwise_stabilizer(merged, rep).elements;
                auto pntw = pointwise_stabilizer(merged, rep).elements;
                if (setw != pntw)
                    throw IntegrityError("extend_by_one_type: a mixed 4-set has a nontrivial "
                                         "setwise stabilizer");
                seeds.push_back({rep[0], rep[1], rep[2], rep[3]});
                seeds.push_back(partner({rep[0], rep[1], rep[2], rep[3]}));
            }
            for (std::size_t i = 0; i < g.order(); ++i) {
                const auto& m = merged.element_maps[i];
                for (const auto& t : seeds)
                    partial.tuples.insert({m[t[0]], m[t[1]], m[t[2]], m[t[3]]});
            }
        });
    }

    // Merged anchored action with anchors for the fresh points.
    AnchoredAction anchored;
    anchored.base = merged;
    anchored.ambient = b0.action.ambient;
    anchored.anchor_table = b0.action.anchor_table;
    for (int p = 0; p < n_new; ++p)
        anchored.anchor_table.push_back(
            fixed_vertices(g, point_stabilizer_elements(merged, n0 + p)));

    std::set<STuple> s_final;
    try {
        s_final = complete_quad_pairing(anchored, partial);
    } catch (const InputError& err) {
        throw IntegrityError(std::string("extend_by_one_type: transported partial pairing is "
                                         "invalid: ") +
                             err.what());
    }

    ExtendResult out;
    out.realizing_vertex = e;
    out.stage.structure.name = b0.structure.name;
    out.stage.structure.n = n0 + n_new;
    out.stage.structure.r = std::move(r);
    out.stage.structure.s = std::move(s_final);
    out.stage.action = std::move(anchored);

    // Stage-level guarantees: monotone over b0, class membership, action by
    // automorphisms, the scheduled type realized at e.
    for (const auto& atom : b0.structure.r)
        if (!out.stage.structure.r.count(atom))
            throw IntegrityError("extend_by_one_type: lost an old R atom");
    for (const auto& atom : b0.structure.s)
        if (!out.stage.structure.s.count(atom))
            throw IntegrityError("extend_by_one_type: lost an old S atom");
    try {
        out.stage.validate();
    } catch (const InputError& err) {
        throw IntegrityError(std::string("extend_by_one_type: stage invariants broken: ") +
                             err.what());
    }
    if (!realizes(out.stage.structure, e, task.link))
        throw IntegrityError("extend_by_one_type: the new point does not realize the task");
    return out;
}

AnchoredStage initial_stage(const Structure& a) {
    if (!is_in_class_d(a)) throw InputError("initial_stage: seed structure not in class D");
    if (a.n < 4)
        throw InputError("initial_stage: seed needs at least 4 vertices; use "
                         "small_group_embedding for smaller seeds");
    std::vector<int> domain(a.n);
    std::iota(domain.begin(), domain.end(), 0);
    AnchoredAction orbit = build_anchored_orbit(a, domain); // free orbit, always faithful

    AnchoredStage st;
    st.structure.name = "stage";
    st.structure.n = orbit.base.num_points;
    st.structure.r = orient_anchored(orbit);
    st.action = orbit;
    if (st.structure.n >= 4) st.structure.s = complete_quad_pairing(orbit, PartialQuadPairing{});
    st.validate();
    return st;
}

std::vector<LinkType> enumerate_link_types(const Structure& m, const std::vector<int>& base_set) {
    std::vector<int> base = base_set;
    std::sort(base.begin(), base.end());
    Induced ind = induced_substructure(m, base);
    const int k = static_cast<int>(base.size());
    const int star = k;

    std::vector<std::array<int, 3>> triples; // 3-subsets of local indices
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) triples.push_back({a, b, c});

    std::vector<LinkType> out;
    std::vector<int> state(k, 0);   // edge state per base vertex
    std::vector<int> digit(triples.size(), 0);

    while (true) {
        Structure ext = ind.structure;
        ext.n = k + 1;
        for (int i = 0; i < k; ++i) {
            if (state[i] == 1) ext.r.insert({star, i});
            else if (state[i] == 2) ext.r.insert({i, star});
        }
        std::vector<STuple> chosen(triples.size());
        for (std::size_t ti = 0; ti < triples.size(); ++ti) {
            std::array<int, 4> pts{triples[ti][0], triples[ti][1], triples[ti][2], star};
            chosen[ti] = quad_pairings_on(pts)[digit[ti]];
            ext.s.insert(chosen[ti]);
            ext.s.insert(partner(chosen[ti]));
        }
        if (is_in_class_d(ext)) {
            LinkType link;
            link.base = base;
            for (int i = 0; i < k; ++i) {
                if (state[i] == 1) link.r_out.insert(base[i]);
                else if (state[i] == 2) link.r_in.insert(base[i]);
            }
            for (const auto& t : chosen) {
                STuple glob, gpart = partner(t);
                for (int i = 0; i < 4; ++i) glob[i] = (t[i] == star) ? kStar : base[t[i]];
                link.s_tuples.insert(glob);
                for (int i = 0; i < 4; ++i)
                    gpart[i] = (gpart[i] == star) ? kStar : base[gpart[i]];
                link.s_tuples.insert(gpart);
            }
            out.push_back(std::move(link));
        }

        // Odometer: edge states first, then pairing digits.
        std::size_t i = 0;
        for (; i < state.size(); ++i) {
            if (++state[i] < 3) break;
            state[i] = 0;
        }
        if (i < state.size()) continue;
        std::size_t d = 0;
        for (; d < digit.size(); ++d) {
            if (++digit[d] < 12) break;
            digit[d] = 0;
        }
        if (d == digit.size()) break;
    }
    return out;
}

BuildOutcome build_universal_action(const Structure& a, int rounds, int size_bound,
                                    std::optional<int> vertex_budget) {
    if (a.n < 4)
        throw InputError("build_universal_action: seeds smaller than 4 vertices are served by "
                         "small_group_embedding");
    BuildOutcome out;
    out.stage = initial_stage(a);
    out.report.stage_sizes.push_back(out.stage.structure.n);

    const std::size_t group_order = out.stage.action.base.group.order();

    for (int round = 1; round <= rounds; ++round) {
        const int snapshot_n = out.stage.structure.n;
        std::vector<int> snapshot_domain(snapshot_n);
        std::iota(snapshot_domain.begin(), snapshot_domain.end(), 0);

        std::deque<ExtensionTask> queue;
        for (int k = 0; k <= std::min(size_bound, snapshot_n); ++k)
            for_each_subset(snapshot_domain, k, [&](const std::vector<int>& c) {
                for (auto& link : enumerate_link_types(out.stage.structure, c))
                    queue.push_back(ExtensionTask{c, std::move(link)});
            });

        bool budget_hit = false;
        while (!queue.empty()) {
            ExtensionTask task = std::move(queue.front());
            queue.pop_front();
            RealizedEntry entry;
            entry.task = task;
            if (task.base_set.empty()) {
                // The empty type holds at any vertex; realize it in place.
                entry.vertex = 0;
                entry.realized = true;
                entry.in_place = true;
            } else if (budget_hit ||
                       (vertex_budget &&
                        out.stage.structure.n + static_cast<int>(group_order) > *vertex_budget)) {
                budget_hit = true;
                entry.realized = false;
            } else {
                ExtendResult ext = extend_by_one_type(out.stage, task);
                out.stage = std::move(ext.stage);
                entry.vertex = ext.realizing_vertex;
                entry.realized = true;
                out.report.stage_sizes.push_back(out.stage.structure.n);
            }
            out.report.log.push_back(std::move(entry));
        }
        if (budget_hit) {
            out.report.complete = false;
            break;
        }
    }

    out.report.faithful = out.stage.action.base.is_faithful();
    out.report.in_class_d = is_in_class_d(out.stage.structure);
    return out;
}

ExtensionCheckReport verify_extension_property(const Structure& m, int size_bound,
                                               std::optional<std::vector<int>> restrict_domain) {
    if (!is_in_class_d(m)) throw InputError("verify_extension_property: structure not in class D");
    std::vector<int> domain;
    if (restrict_domain) {
        domain = *restrict_domain;
        std::sort(domain.begin(), domain.end());
        for (int v : domain)
            if (v < 0 || v >= m.n)
                throw InputError("verify_extension_property: restricted domain out of range");
    } else {
        domain.resize(m.n);
        std::iota(domain.begin(), domain.end(), 0);
    }

    ExtensionCheckReport report;
    for (int k = 0; k <= std::min<int>(size_bound, static_cast<int>(domain.size())); ++k)
        for_each_subset(domain, k, [&](const std::vector<int>& c) {
            std::set<int> in_c(c.begin(), c.end());
            for (auto& link : enumerate_link_types(m, c)) {
                ExtensionCheckEntry entry;
                entry.base = c;
                entry.link = std::move(link);
                for (int w = 0; w < m.n; ++w) {
                    if (in_c.count(w)) continue;
                    if (realizes(m, w, entry.link)) {
                        entry.realized = true;
                        entry.witness = w;
                        break;
                    }
                }
                ++report.checked;
                if (!entry.realized) {
                    report.all_realized = false;
                    ++report.unrealized;
                }
                report.entries.push_back(std::move(entry));
            }
        });
    std::stable_sort(report.entries.begin(), report.entries.end(),
                     [](const ExtensionCheckEntry& x, const ExtensionCheckEntry& y) {
                         return x.realized < y.realized;
                     });
    return report;
}

SmallGroupEmbedding small_group_embedding(const Structure& a) {
    if (a.n >= 4)
        throw InputError("small_group_embedding: only for structures with fewer than 4 vertices");
    if (!is_in_class_d(a)) throw InputError("small_group_embedding: structure not in class D");

    SmallGroupEmbedding out;
    out.aut_a = automorphism_group(a);

    PermGroup c6 = catalog_group("c6");
    auto result = d_structure_on_group(c6);
    if (!std::holds_alternative<GroupStructure>(result))
        throw IntegrityError("small_group_embedding: C6 was refused");
    GroupStructure host = std::get<GroupStructure>(std::move(result));
    out.host = std::move(host.structure);
    out.host_action = std::move(host.action);

    auto embedding = find_group_embedding(out.aut_a, c6);
    if (!embedding)
        throw IntegrityError("small_group_embedding: automorphism group of a <4-vertex class-D "
                             "structure failed to embed in C6");
    out.into_c6 = *embedding;
    return out;
}

// --- witness tower ------------------------------------------------------------

Permutation extend_tower_automorphism(const TowerStage& stage, int prev_n, const Permutation& g) {
    if (g.degree() != prev_n) throw InputError("extend_tower_automorphism: degree mismatch");
    std::vector<int> images(stage.graph.n);
    for (int v = 0; v < prev_n; ++v) images[v] = g(v);
    for (const auto& [subset, v] : stage.new_vertex_of_subset) {
        std::vector<int> mapped;
        mapped.reserve(subset.size());
        for (int x : subset) mapped.push_back(g(x));
        std::sort(mapped.begin(), mapped.end());
        auto it = stage.new_vertex_of_subset.find(mapped);
        if (it == stage.new_vertex_of_subset.end())
            throw IntegrityError("extend_tower_automorphism: image subset missing");
        images[v] = it->second;
    }
    return Permutation(std::move(images));
}

std::vector<TowerStage> rado_tower(const Structure& a, int k, std::uint64_t budget) {
    if (k < 1) throw InputError("rado_tower: need at least one stage");
    if (!a.s.empty()) throw InputError("rado_tower: seed must be a pure graph (no S)");
    for (const auto& [u, v] : a.r) {
        if (u == v) throw InputError("rado_tower: seed must be loop-free");
        if (!a.has_r(v, u)) throw InputError("rado_tower: seed must be a symmetric graph");
    }

    std::vector<TowerStage> stages;
    TowerStage seed;
    seed.k = 0;
    seed.graph = a;
    seed.graph.undirected = true;
    stages.push_back(std::move(seed));

    PermGroup aut0 = automorphism_group(stages.front().graph);
    std::vector<std::pair<Permutation, Permutation>> pushed;
    for (const auto& g : aut0.elements) pushed.push_back({g, g});

    for (int j = 1; j <= k; ++j) {
        const Structure& prev = stages.back().graph;
        const int n_prev = prev.n;
        if (n_prev >= 63 || (1ULL << n_prev) > budget) {
            std::ostringstream os;
            os << "rado_tower: stage " << j << " needs 2^" << n_prev
               << " new vertices, over budget " << budget;
            throw CapacityError(os.str());
        }
        const std::uint64_t new_count = 1ULL << n_prev;

        TowerStage stage;
        stage.k = j;
        stage.graph = prev;
        stage.graph.name = a.name + "_stage" + std::to_string(j);
        stage.graph.n = n_prev + static_cast<int>(new_count);
        for (std::uint64_t mask = 0; mask < new_count; ++mask) {
            int v = n_prev + static_cast<int>(mask);
            std::vector<int> subset;
            for (int i = 0; i < n_prev; ++i)
                if (mask & (1ULL << i)) {
                    subset.push_back(i);
                    stage.graph.r.insert({v, i});
                    stage.graph.r.insert({i, v});
                }
            stage.new_vertex_of_subset.emplace(std::move(subset), v);
        }

        std::vector<std::pair<Permutation, Permutation>> next_pushed;
        for (const auto& [orig, g] : pushed) {
            Permutation ext = extend_tower_automorphism(stage, n_prev, g);
            if (!element_is_automorphism(stage.graph, ext.images))
                throw IntegrityError("rado_tower: extension is not an automorphism");
            stage.eta.push_back({g, ext});
            next_pushed.push_back({orig, ext});
        }
        pushed = std::move(next_pushed);
        stages.push_back(std::move(stage));
    }
    return stages;
}

} // namespace homogen
