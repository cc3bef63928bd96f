#include "homogen/perms.hpp"

#include "homogen/errors.hpp"
#include "homogen/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace homogen {

Permutation Permutation::identity(int n) {
    std::vector<int> imgs(n);
    std::iota(imgs.begin(), imgs.end(), 0);
    return Permutation(std::move(imgs));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (images[i] != i) return false;
    return true;
}

int Permutation::order() const {
    Permutation p = *this;
    int k = 1;
    while (!p.is_identity()) {
        p = compose(*this, p);
        ++k;
    }
    return k;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images.size());
    for (int i = 0; i < degree(); ++i) inv[images[i]] = i;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& g, const Permutation& h) {
    if (g.degree() != h.degree()) throw InputError("compose: degree mismatch");
    std::vector<int> imgs(g.degree());
    for (int i = 0; i < g.degree(); ++i) imgs[i] = g(h(i));
    return Permutation(std::move(imgs));
}

static void check_is_bijection(const Permutation& p) {
    std::vector<char> seen(p.images.size(), 0);
    for (int x : p.images) {
        if (x < 0 || x >= p.degree() || seen[x])
            throw InputError("permutation image list is not a bijection");
        seen[x] = 1;
    }
}

std::size_t closure_cap() {
    if (const char* env = std::getenv("HOMOGEN_CLOSURE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 20160;
}

PermGroup closure(std::vector<Permutation> generators, std::size_t cap) {
    if (generators.empty()) throw InputError("closure: no generators (degree unknown)");
    const int n = generators.front().degree();
    for (const auto& g : generators) {
        if (g.degree() != n) throw InputError("closure: generator degree mismatch");
        check_is_bijection(g);
    }

    std::set<Permutation> seen;
    std::deque<Permutation> queue;
    Permutation id = Permutation::identity(n);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Permutation cur = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            Permutation next = compose(cur, g);
            if (seen.insert(next).second) {
                if (seen.size() > cap) {
                    std::ostringstream os;
                    os << "closure: group order exceeds cap " << cap;
                    throw CapacityError(os.str());
                }
                queue.push_back(next);
            }
        }
    }

    PermGroup grp;
    grp.degree = n;
    grp.generators = std::move(generators);
    grp.elements.assign(seen.begin(), seen.end()); // std::set iterates sorted
    return grp;
}

PermGroup trivial_group(int degree) {
    return closure({Permutation::identity(degree)});
}

int PermGroup::index_of(const Permutation& p) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || !(*it == p)) return -1;
    return static_cast<int>(it - elements.begin());
}

int PermGroup::multiply(int a, int b) const {
    int idx = index_of(compose(elements[a], elements[b]));
    if (idx < 0) throw IntegrityError("PermGroup::multiply: closure not closed");
    return idx;
}

int PermGroup::inverse_of(int a) const {
    int idx = index_of(elements[a].inverse());
    if (idx < 0) throw IntegrityError("PermGroup::inverse_of: closure not closed");
    return idx;
}

int PermGroup::identity_index() const {
    int idx = index_of(Permutation::identity(degree));
    if (idx < 0) throw IntegrityError("PermGroup: identity missing from closure");
    return idx;
}

int PermGroup::element_order(int a) const { return elements[a].order(); }

// --- actions ----------------------------------------------------------------

bool GroupAction::is_faithful() const {
    std::vector<int> id(num_points);
    std::iota(id.begin(), id.end(), 0);
    int trivial = 0;
    for (const auto& m : element_maps)
        if (m == id) ++trivial;
    return trivial == 1;
}

void GroupAction::validate() const {
    if (static_cast<std::size_t>(group.order()) != element_maps.size())
        throw InputError("action: one map per group element required");
    for (const auto& m : element_maps) {
        if (static_cast<int>(m.size()) != num_points)
            throw InputError("action: map size mismatch");
        std::vector<char> seen(num_points, 0);
        for (int x : m) {
            if (x < 0 || x >= num_points || seen[x])
                throw InputError("action: element map is not a bijection of the points");
            seen[x] = 1;
        }
    }
    int id = group.identity_index();
    for (int v = 0; v < num_points; ++v)
        if (act(id, v) != v) throw InputError("action: identity must act trivially");
    // act(g*h, v) == act(g, act(h, v)) over the whole closure.
    const int order = static_cast<int>(group.order());
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) {
            int ab = group.multiply(a, b);
            for (int v = 0; v < num_points; ++v)
                if (act(ab, v) != act(a, act(b, v)))
                    throw InputError("action: composition law violated");
        }
}

static std::vector<int> find_generator_elements(const PermGroup& g) {
    std::vector<int> idx;
    idx.reserve(g.generators.size());
    for (const auto& gen : g.generators) {
        int i = g.index_of(gen);
        if (i < 0) throw IntegrityError("group generators not contained in closure");
        idx.push_back(i);
    }
    return idx;
}

GroupAction natural_action(const PermGroup& g) {
    GroupAction a;
    a.group = g;
    a.num_points = g.degree;
    a.element_maps.reserve(g.order());
    for (const auto& e : g.elements) a.element_maps.push_back(e.images);
    a.generator_elements = find_generator_elements(g);
    return a;
}

GroupAction left_regular_action(const PermGroup& g) {
    GroupAction a;
    a.group = g;
    a.num_points = static_cast<int>(g.order());
    const int order = a.num_points;
    a.element_maps.assign(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            a.element_maps[i][j] = g.multiply(i, j);
    a.generator_elements = find_generator_elements(g);
    a.point_labels.reserve(order);
    for (int j = 0; j < order; ++j) a.point_labels.push_back(serialize_permutation(g.elements[j]));
    return a;
}

GroupAction action_from_generator_maps(const PermGroup& g, int num_points,
                                       const std::vector<std::vector<int>>& generator_maps,
                                       std::vector<std::string> labels) {
    if (generator_maps.size() != g.generators.size())
        throw InputError("action_from_generator_maps: one map per generator required");

    GroupAction a;
    a.group = g;
    a.num_points = num_points;
    a.point_labels = std::move(labels);
    a.generator_elements = find_generator_elements(g);
    a.element_maps.assign(g.order(), {});

    std::vector<int> id(num_points);
    std::iota(id.begin(), id.end(), 0);

    // BFS over the right Cayley graph, carrying the point map of each word.
    std::vector<char> done(g.order(), 0);
    int id_idx = g.identity_index();
    a.element_maps[id_idx] = id;
    done[id_idx] = 1;
    std::deque<int> queue{id_idx};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (std::size_t gi = 0; gi < generator_maps.size(); ++gi) {
            int next = g.multiply(cur, a.generator_elements[gi]);
            if (done[next]) continue;
            // map(cur*gen) = map(cur) ∘ map(gen)
            std::vector<int> m(num_points);
            for (int v = 0; v < num_points; ++v) m[v] = a.element_maps[cur][generator_maps[gi][v]];
            a.element_maps[next] = std::move(m);
            done[next] = 1;
            queue.push_back(next);
        }
    }
    for (char d : done)
        if (!d) throw InputError("action_from_generator_maps: generators do not generate the group");
    return a;
}

// --- orbits and stabilizers --------------------------------------------------

static void ksubsets(int n, int k, const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            emit(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
}

std::vector<std::vector<int>> orbit_set_of_kset(const GroupAction& a, const std::vector<int>& kset) {
    std::set<std::vector<int>> orbit;
    std::deque<std::vector<int>> queue;
    std::vector<int> start = kset;
    std::sort(start.begin(), start.end());
    orbit.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (int ge : a.generator_elements) {
            std::vector<int> img;
            img.reserve(cur.size());
            for (int v : cur) img.push_back(a.act(ge, v));
            std::sort(img.begin(), img.end());
            if (orbit.insert(img).second) queue.push_back(img);
        }
    }
    return {orbit.begin(), orbit.end()};
}

std::vector<int> orbit_of_kset(const GroupAction& a, std::vector<int> kset) {
    auto orbit = orbit_set_of_kset(a, kset);
    return orbit.front();
}

std::vector<std::vector<std::vector<int>>> orbits_on_ksets(const GroupAction& a, int k) {
    if (k > a.num_points) throw InputError("orbits_on_ksets: k exceeds point count");
    std::vector<std::vector<std::vector<int>>> orbits;
    std::set<std::vector<int>> assigned;
    ksubsets(a.num_points, k, [&](const std::vector<int>& kset) {
        if (assigned.count(kset)) return;
        auto orbit = orbit_set_of_kset(a, kset);
        for (const auto& m : orbit) assigned.insert(m);
        orbits.push_back(std::move(orbit));
    });
    // ksubsets emits in lexicographic order, so orbits are already sorted by
    // least member; keep that as the contract.
    return orbits;
}

PermGroup pointwise_stabilizer(const GroupAction& a, const std::vector<int>& points) {
    PermGroup sub;
    sub.degree = a.group.degree;
    for (std::size_t i = 0; i < a.group.order(); ++i) {
        bool fixes = true;
        for (int v : points)
            if (a.act(static_cast<int>(i), v) != v) {
                fixes = false;
                break;
            }
        if (fixes) sub.elements.push_back(a.group.elements[i]);
    }
    sub.generators = sub.elements;
    return sub;
}

PermGroup setwise_stabilizer(const GroupAction& a, const std::vector<int>& points) {
    std::set<int> target(points.begin(), points.end());
    PermGroup sub;
    sub.degree = a.group.degree;
    for (std::size_t i = 0; i < a.group.order(); ++i) {
        std::set<int> img;
        for (int v : points) img.insert(a.act(static_cast<int>(i), v));
        if (img == target) sub.elements.push_back(a.group.elements[i]);
    }
    sub.generators = sub.elements;
    return sub;
}

std::optional<SmallSubgroupWitness> find_c4_or_klein(const PermGroup& g) {
    for (std::size_t i = 0; i < g.order(); ++i) {
        if (g.element_order(static_cast<int>(i)) == 4) {
            const Permutation& p = g.elements[i];
            return SmallSubgroupWitness{
                "C4", {Permutation::identity(g.degree), p, compose(p, p), p.inverse()}};
        }
    }
    std::vector<int> involutions;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.element_order(static_cast<int>(i)) == 2) involutions.push_back(static_cast<int>(i));
    for (std::size_t x = 0; x < involutions.size(); ++x)
        for (std::size_t y = x + 1; y < involutions.size(); ++y) {
            int a = involutions[x], b = involutions[y];
            if (g.multiply(a, b) == g.multiply(b, a)) {
                return SmallSubgroupWitness{"C2xC2",
                                            {Permutation::identity(g.degree), g.elements[a],
                                             g.elements[b],
                                             g.elements[g.multiply(a, b)]}};
            }
        }
    return std::nullopt;
}

std::vector<int> small_generating_set(const PermGroup& g) {
    std::vector<int> gens;
    std::set<Permutation> span{Permutation::identity(g.degree)};
    for (std::size_t i = 0; i < g.order() && span.size() < g.order(); ++i) {
        if (span.count(g.elements[i])) continue;
        gens.push_back(static_cast<int>(i));
        std::vector<Permutation> gen_perms;
        for (int x : gens) gen_perms.push_back(g.elements[x]);
        PermGroup sub = closure(gen_perms);
        span = std::set<Permutation>(sub.elements.begin(), sub.elements.end());
    }
    return gens;
}

std::optional<std::vector<int>> homomorphism_from_generator_images(const PermGroup& h,
                                                                   const PermGroup& k,
                                                                   const std::vector<int>& gens,
                                                                   const std::vector<int>& images) {
    std::vector<int> phi(h.order(), -1);
    phi[h.identity_index()] = k.identity_index();
    std::deque<int> queue{h.identity_index()};
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            int next = h.multiply(cur, gens[gi]);
            int img = k.multiply(phi[cur], images[gi]);
            if (phi[next] < 0) {
                phi[next] = img;
                queue.push_back(next);
            } else if (phi[next] != img) {
                return std::nullopt;
            }
        }
    }
    for (std::size_t a = 0; a < h.order(); ++a)
        for (std::size_t b = 0; b < h.order(); ++b) {
            int ai = static_cast<int>(a), bi = static_cast<int>(b);
            if (phi[h.multiply(ai, bi)] != k.multiply(phi[ai], phi[bi])) return std::nullopt;
        }
    std::set<int> image_set(phi.begin(), phi.end());
    if (image_set.size() != h.order()) return std::nullopt; // not injective
    return phi;
}

std::optional<std::vector<int>> find_group_embedding(const PermGroup& h, const PermGroup& k) {
    if (k.order() % h.order() != 0) return std::nullopt; // image would violate Lagrange
    std::vector<int> gens = small_generating_set(h);
    if (gens.empty()) return std::vector<int>(1, k.identity_index()); // trivial h

    // Candidate images must have the same order as the generator they stand for.
    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int want = h.element_order(gens[gi]);
        for (std::size_t e = 0; e < k.order(); ++e)
            if (k.element_order(static_cast<int>(e)) == want)
                candidates[gi].push_back(static_cast<int>(e));
        if (candidates[gi].empty()) return std::nullopt;
    }

    std::vector<int> images(gens.size(), -1);
    std::optional<std::vector<int>> found;
    std::function<bool(std::size_t)> rec = [&](std::size_t gi) -> bool {
        if (gi == gens.size()) {
            found = homomorphism_from_generator_images(h, k, gens, images);
            return found.has_value();
        }
        for (int cand : candidates[gi]) {
            images[gi] = cand;
            if (rec(gi + 1)) return true;
        }
        return false;
    };
    rec(0);
    return found;
}

// --- catalog -----------------------------------------------------------------

static Permutation cycle_perm(int n) {
    std::vector<int> imgs(n);
    for (int i = 0; i < n; ++i) imgs[i] = (i + 1) % n;
    return Permutation(std::move(imgs));
}

// Regular representation of Z_a x Z_b on a*b points, index = i*b + j.
static std::vector<Permutation> product_of_cyclics(int a, int b) {
    std::vector<int> ga(a * b), gb(a * b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            ga[i * b + j] = ((i + 1) % a) * b + j;
            gb[i * b + j] = i * b + (j + 1) % b;
        }
    return {Permutation(std::move(ga)), Permutation(std::move(gb))};
}

std::vector<std::string> catalog_names() {
    return {"c1",   "c2",   "c3",   "c4",   "c5",   "c6",  "c7",  "c8",
            "c9",   "c10",  "c11",  "c12",  "c2c2", "c2c4", "c2c6", "c3c3",
            "s3",   "d4",   "d6",   "q8",   "a4",   "dic3"};
}

PermGroup catalog_group(const std::string& name) {
    auto cyclic = [](int n) { return closure({cycle_perm(n)}); };
    if (name == "c1") return trivial_group(1);
    for (int n = 2; n <= 12; ++n)
        if (name == "c" + std::to_string(n)) return cyclic(n);
    if (name == "c2c2") return closure(product_of_cyclics(2, 2));
    if (name == "c2c4") return closure(product_of_cyclics(2, 4));
    if (name == "c2c6") return closure(product_of_cyclics(2, 6));
    if (name == "c3c3") return closure(product_of_cyclics(3, 3));
    if (name == "s3") return closure({Permutation({1, 2, 0}), Permutation({1, 0, 2})});
    if (name == "d4") return closure({Permutation({1, 2, 3, 0}), Permutation({0, 3, 2, 1})});
    if (name == "d6")
        return closure({Permutation({1, 2, 3, 4, 5, 0}), Permutation({0, 5, 4, 3, 2, 1})});
    if (name == "q8") {
        // Regular representation; points 0..7 stand for 1,i,j,k,-1,-i,-j,-k.
        Permutation left_i({1, 4, 3, 6, 5, 0, 7, 2});
        Permutation left_j({2, 7, 4, 1, 6, 3, 0, 5});
        return closure({left_i, left_j});
    }
    if (name == "a4")
        return closure({Permutation({1, 2, 0, 3}), Permutation({1, 0, 3, 2})});
    if (name == "dic3") {
        // Regular representation from <a, b | a^6 = 1, b^2 = a^3, b a b^-1 = a^-1>;
        // points 0..5 stand for a^k, points 6..11 for a^k b.
        Permutation left_a({1, 2, 3, 4, 5, 0, 7, 8, 9, 10, 11, 6});
        Permutation left_b({6, 11, 10, 9, 8, 7, 3, 2, 1, 0, 5, 4});
        return closure({left_a, left_b});
    }
    throw InputError("unknown catalog group: " + name);
}

// --- file formats -------------------------------------------------------------

std::string serialize_permutation(const Permutation& p) {
    std::ostringstream os;
    os << "perm " << p.degree() << ":";
    for (int x : p.images) os << ' ' << x;
    return os.str();
}

static std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

static std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(strip_comment(line));
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

static int parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("expected an integer for ") + what + ", got '" + tok + "'");
    }
}

Permutation parse_permutation_line(const std::string& line) {
    auto toks = tokens_of(line);
    if (toks.size() < 2 || toks[0] != "perm")
        throw InputError("expected 'perm <n>: i0 i1 ...', got '" + line + "'");
    std::string count_tok = toks[1];
    if (!count_tok.empty() && count_tok.back() == ':') count_tok.pop_back();
    int n = parse_int(count_tok, "permutation degree");
    if (static_cast<int>(toks.size()) != n + 2)
        throw InputError("permutation line has wrong image count: '" + line + "'");
    std::vector<int> imgs;
    imgs.reserve(n);
    for (int i = 0; i < n; ++i) imgs.push_back(parse_int(toks[2 + i], "permutation image"));
    Permutation p(std::move(imgs));
    check_is_bijection(p);
    return p;
}

std::string serialize_group(const std::string& name, const PermGroup& g) {
    std::ostringstream os;
    os << "group " << name << "\n";
    for (const auto& gen : g.generators) os << serialize_permutation(gen) << "\n";
    os << "end\n";
    return os.str();
}

std::pair<std::string, PermGroup> load_group(const std::string& path) {
    return parse_group(read_file(path));
}

std::pair<std::string, PermGroup> parse_group(const std::string& text) {
    std::istringstream is(text);
    std::string line, name;
    std::vector<Permutation> gens;
    bool header = false, closed = false;
    while (std::getline(is, line)) {
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 2 || toks[0] != "group")
                throw InputError("group file must start with 'group <name>'");
            name = toks[1];
            header = true;
        } else if (toks[0] == "perm") {
            gens.push_back(parse_permutation_line(line));
        } else if (toks[0] == "end") {
            closed = true;
            break;
        } else {
            throw InputError("unexpected line in group file: '" + line + "'");
        }
    }
    if (!header || !closed) throw InputError("group file missing header or 'end'");
    if (gens.empty()) throw InputError("group file has no generators");
    return {name, closure(std::move(gens))};
}

std::string serialize_action(const std::string& name, const std::string& group_name,
                             const GroupAction& a) {
    std::ostringstream os;
    os << "action " << name << " over " << group_name << "\n";
    os << "points " << a.num_points << "\n";
    for (std::size_t gi = 0; gi < a.generator_elements.size(); ++gi) {
        os << "map " << gi << ":";
        for (int v = 0; v < a.num_points; ++v) os << ' ' << a.act(a.generator_elements[gi], v);
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

GroupAction parse_action(const std::string& text, const PermGroup& g) {
    std::istringstream is(text);
    std::string line;
    bool header = false, closed = false;
    int points = -1;
    std::vector<std::vector<int>> gen_maps(g.generators.size());
    while (std::getline(is, line)) {
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        if (!header) {
            if (toks.size() != 4 || toks[0] != "action" || toks[2] != "over")
                throw InputError("action file must start with 'action <name> over <group>'");
            header = true;
        } else if (toks[0] == "points") {
            if (toks.size() != 2) throw InputError("bad points line");
            points = parse_int(toks[1], "point count");
        } else if (toks[0] == "map") {
            if (points < 0) throw InputError("action file: 'points' must precede 'map'");
            std::string idx_tok = toks[1];
            if (!idx_tok.empty() && idx_tok.back() == ':') idx_tok.pop_back();
            int gi = parse_int(idx_tok, "generator index");
            if (gi < 0 || gi >= static_cast<int>(gen_maps.size()))
                throw InputError("action file: generator index out of range");
            if (static_cast<int>(toks.size()) != points + 2)
                throw InputError("action file: map has wrong point count");
            std::vector<int> m;
            m.reserve(points);
            for (int v = 0; v < points; ++v) m.push_back(parse_int(toks[2 + v], "point image"));
            gen_maps[gi] = std::move(m);
        } else if (toks[0] == "end") {
            closed = true;
            break;
        } else {
            throw InputError("unexpected line in action file: '" + line + "'");
        }
    }
    if (!header || !closed) throw InputError("action file missing header or 'end'");
    for (const auto& m : gen_maps)
        if (m.empty() && points != 0) throw InputError("action file: missing map for a generator");
    return action_from_generator_maps(g, points, gen_maps);
}

} // namespace homogen
