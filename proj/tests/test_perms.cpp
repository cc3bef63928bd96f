#include "doctest.h"

#include "homogen/errors.hpp"
#include "homogen/io.hpp"
#include "homogen/perms.hpp"
#include "testutil.hpp"

#include <algorithm>
#include <set>

using namespace homogen;

TEST_CASE("closure basics") {
    PermGroup triv = closure({Permutation::identity(3)});
    CHECK(triv.order() == 1);

    PermGroup c4 = closure({Permutation({1, 2, 3, 0})});
    CHECK(c4.order() == 4);

    // The generator of the automorphism group of the two-loop digraph:
    // a<->a', b_i -> b_{i+1}.
    PermGroup remark_aut = closure({Permutation({1, 0, 3, 4, 5, 2})});
    CHECK(remark_aut.order() == 4);
    bool cyclic = false;
    for (std::size_t i = 0; i < remark_aut.order(); ++i)
        if (remark_aut.element_order(static_cast<int>(i)) == 4) cyclic = true;
    CHECK(cyclic);

    CHECK_THROWS_AS(closure({Permutation({1, 0}), Permutation({0, 1, 2})}), InputError);
    CHECK_THROWS_AS(closure({Permutation({1, 2, 3, 0})}, 3), CapacityError);
    CHECK_THROWS_AS(closure({Permutation({0, 0, 1})}), InputError); // not a bijection
}

TEST_CASE("closure element list is sorted and closed") {
    PermGroup s3 = catalog_group("s3");
    CHECK(s3.order() == 6);
    CHECK(std::is_sorted(s3.elements.begin(), s3.elements.end()));
    for (std::size_t a = 0; a < s3.order(); ++a) {
        CHECK(s3.inverse_of(static_cast<int>(a)) >= 0);
        for (std::size_t b = 0; b < s3.order(); ++b)
            CHECK(s3.multiply(static_cast<int>(a), static_cast<int>(b)) >= 0);
    }
}

TEST_CASE("orbits on k-sets") {
    PermGroup triv = trivial_group(4);
    auto singleton_orbits = orbits_on_ksets(natural_action(triv), 2);
    CHECK(singleton_orbits.size() == 6); // every 2-set its own orbit

    auto s3_orbits = orbits_on_ksets(natural_action(catalog_group("s3")), 2);
    REQUIRE(s3_orbits.size() == 1);
    CHECK(s3_orbits[0].size() == 3);

    PermGroup dbl = closure({Permutation({1, 0, 3, 2})});
    auto points = orbits_on_ksets(natural_action(dbl), 1);
    REQUIRE(points.size() == 2);
    CHECK(points[0] == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(points[1] == std::vector<std::vector<int>>{{2}, {3}});
}

TEST_CASE("orbits against a brute-force oracle") {
    // Apply every group element to every k-set and compare partitions.
    for (const char* name : {"c2", "c4", "s3", "d4", "c2c2", "c6"}) {
        PermGroup g = catalog_group(name);
        if (g.degree > 8) continue;
        GroupAction a = natural_action(g);
        for (int k = 1; k <= std::min(3, a.num_points); ++k) {
            auto fast = orbits_on_ksets(a, k);
            // Oracle: union-find by scanning all element images.
            std::set<std::set<std::vector<int>>> oracle;
            std::vector<int> cur(k);
            std::function<void(int, int)> rec = [&](int start, int depth) {
                if (depth == k) {
                    std::set<std::vector<int>> orbit;
                    for (std::size_t e = 0; e < g.order(); ++e) {
                        std::vector<int> img;
                        for (int v : cur) img.push_back(a.act(static_cast<int>(e), v));
                        std::sort(img.begin(), img.end());
                        orbit.insert(img);
                    }
                    oracle.insert(orbit);
                    return;
                }
                for (int v = start; v < a.num_points; ++v) {
                    cur[depth] = v;
                    rec(v + 1, depth + 1);
                }
            };
            rec(0, 0);
            std::set<std::set<std::vector<int>>> got;
            for (const auto& orbit : fast) got.insert({orbit.begin(), orbit.end()});
            CHECK(got == oracle);
        }
    }
}

TEST_CASE("stabilizers") {
    PermGroup remark_aut = closure({Permutation({1, 0, 3, 4, 5, 2})});
    GroupAction a = natural_action(remark_aut);

    CHECK(pointwise_stabilizer(a, {}).order() == remark_aut.order());

    // The four cycled vertices: setwise stabilized by everything, pointwise
    // only by the identity.
    CHECK(setwise_stabilizer(a, {2, 3, 4, 5}).order() == 4);
    CHECK(pointwise_stabilizer(a, {2, 3, 4, 5}).order() == 1);

    GroupAction reg = left_regular_action(catalog_group("c6"));
    CHECK(pointwise_stabilizer(reg, {1}).order() == 1);
}

TEST_CASE("orbit-stabilizer identity over catalog actions") {
    for (const auto& name : catalog_names()) {
        PermGroup g = catalog_group(name);
        if (g.degree > 8) continue;
        GroupAction a = natural_action(g);
        for (int v = 0; v < a.num_points; ++v) {
            std::set<int> orbit;
            for (std::size_t e = 0; e < g.order(); ++e) orbit.insert(a.act(static_cast<int>(e), v));
            CHECK(orbit.size() * pointwise_stabilizer(a, {v}).order() == g.order());
        }
    }
}

TEST_CASE("left regular actions are free and transitive") {
    CHECK(left_regular_action(trivial_group(1)).num_points == 1);

    GroupAction c3 = left_regular_action(catalog_group("c3"));
    CHECK(c3.num_points == 3);
    CHECK(orbits_on_ksets(c3, 1).size() == 1);

    GroupAction s3 = left_regular_action(catalog_group("s3"));
    CHECK(s3.num_points == 6);
    CHECK(orbits_on_ksets(s3, 1).size() == 1);
    for (int v = 0; v < s3.num_points; ++v)
        CHECK(pointwise_stabilizer(s3, {v}).order() == 1);
    s3.validate();
    CHECK(s3.is_faithful());
}

namespace {

// Independent oracle: enumerate all 4-element subsets closed under the group
// operations and classify them.
bool has_order4_subgroup_by_subsets(const PermGroup& g) {
    const int n = static_cast<int>(g.order());
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c)
                for (int d = c; d < n; ++d) {
                    std::set<int> sub{a, b, c, d};
                    if (sub.size() != 4) continue;
                    if (!sub.count(g.identity_index())) continue;
                    bool closed = true;
                    for (int x : sub) {
                        if (!sub.count(g.inverse_of(x))) closed = false;
                        for (int y : sub)
                            if (!sub.count(g.multiply(x, y))) closed = false;
                    }
                    if (closed) return true; // any order-4 group is C4 or Klein
                }
    return false;
}

} // namespace

TEST_CASE("C4 / Klein detection") {
    CHECK(find_c4_or_klein(catalog_group("c2c2")).has_value());
    CHECK_FALSE(find_c4_or_klein(catalog_group("c6")).has_value());

    auto q8 = find_c4_or_klein(catalog_group("q8"));
    REQUIRE(q8.has_value());
    CHECK(q8->kind == "C4");

    // Witness is a genuine subgroup of order 4.
    PermGroup q8g = catalog_group("q8");
    std::set<int> witness_idx;
    for (const auto& p : q8->subgroup) witness_idx.insert(q8g.index_of(p));
    CHECK(witness_idx.size() == 4);
    for (int x : witness_idx)
        for (int y : witness_idx) CHECK(witness_idx.count(q8g.multiply(x, y)) == 1);
}

TEST_CASE("C4 / Klein detection agrees with the subset-subgroup oracle") {
    for (const auto& name : catalog_names()) {
        PermGroup g = catalog_group(name);
        INFO("group ", name);
        CHECK(find_c4_or_klein(g).has_value() == has_order4_subgroup_by_subsets(g));
    }
}

TEST_CASE("abstract group embeddings") {
    CHECK(find_group_embedding(catalog_group("c2"), catalog_group("c4")).has_value());
    CHECK_FALSE(find_group_embedding(catalog_group("c2c2"), catalog_group("c4")).has_value());
    CHECK(find_group_embedding(catalog_group("c3"), catalog_group("c6")).has_value());
    CHECK_FALSE(find_group_embedding(catalog_group("s3"), catalog_group("c6")).has_value());
    CHECK(find_group_embedding(catalog_group("c1"), catalog_group("s3")).has_value());
    CHECK(find_group_embedding(catalog_group("s3"), catalog_group("d6")).has_value());

    auto map = find_group_embedding(catalog_group("c2"), catalog_group("c6"));
    REQUIRE(map.has_value());
    PermGroup h = catalog_group("c2"), k = catalog_group("c6");
    for (std::size_t a = 0; a < h.order(); ++a)
        for (std::size_t b = 0; b < h.order(); ++b)
            CHECK((*map)[h.multiply(static_cast<int>(a), static_cast<int>(b))] ==
                  k.multiply((*map)[a], (*map)[b]));
}

TEST_CASE("catalog sanity") {
    CHECK(catalog_group("q8").order() == 8);
    CHECK(catalog_group("dic3").order() == 12);
    CHECK(catalog_group("a4").order() == 12);
    CHECK(catalog_group("d6").order() == 12);
    CHECK(catalog_group("c3c3").order() == 9);
    // dic3 has a unique involution (so no Klein) but elements of order 4.
    PermGroup dic3 = catalog_group("dic3");
    int involutions = 0, order4 = 0;
    for (std::size_t i = 0; i < dic3.order(); ++i) {
        int o = dic3.element_order(static_cast<int>(i));
        if (o == 2) ++involutions;
        if (o == 4) ++order4;
    }
    CHECK(involutions == 1);
    CHECK(order4 == 6);
    CHECK_THROWS_AS(catalog_group("nope"), InputError);
}

TEST_CASE("group and action file formats round-trip") {
    for (const auto& name : catalog_names()) {
        PermGroup g = catalog_group(name);
        auto [parsed_name, parsed] = parse_group(serialize_group(name, g));
        CHECK(parsed_name == name);
        CHECK(parsed.elements == g.elements);
        CHECK(serialize_group(parsed_name, parsed) == serialize_group(name, g));
    }

    PermGroup s3 = catalog_group("s3");
    GroupAction reg = left_regular_action(s3);
    std::string text = serialize_action("reg", "s3", reg);
    GroupAction parsed = parse_action(text, s3);
    CHECK(parsed.num_points == reg.num_points);
    CHECK(parsed.element_maps == reg.element_maps);
}

TEST_CASE("bundled group files match the programmatic catalog") {
    for (const auto& name : catalog_names()) {
        std::string path = std::string(HOMOGEN_DATA_DIR) + "/groups/" + name + ".grp";
        auto [fname, g] = load_group(path);
        CHECK(fname == name);
        CHECK(g.elements == catalog_group(name).elements);
    }
}

TEST_CASE("action composition laws hold on generated maps") {
    PermGroup d4 = catalog_group("d4");
    std::vector<std::vector<int>> gen_maps;
    for (const auto& gen : d4.generators) gen_maps.push_back(gen.images);
    GroupAction a = action_from_generator_maps(d4, 4, gen_maps);
    a.validate();
    CHECK(a.element_maps == natural_action(d4).element_maps);
}
