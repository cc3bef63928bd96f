#include "homogen/core.hpp"

#include "homogen/errors.hpp"
#include "homogen/io.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace homogen {

STuple partner(const STuple& t) { return {t[2], t[3], t[0], t[1]}; }

STuple canonical_s(const STuple& t) { return std::min(t, partner(t)); }

void Structure::add_r(int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("add_r: vertex out of range");
    if (u == v && !allow_loops) throw InputError("add_r: loop without allow_loops flag");
    r.insert({u, v});
    if (undirected && u != v) r.insert({v, u});
}

void Structure::add_s(const STuple& t) {
    for (int x : t)
        if (x < 0 || x >= n) throw InputError("add_s: vertex out of range");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (t[i] == t[j]) throw InputError("add_s: tuple entries must be pairwise distinct");
    s.insert(t);
    s.insert(partner(t));
}

void Structure::validate() const {
    if (n < 0) throw InputError("structure: negative vertex count");
    for (const auto& [u, v] : r) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw InputError("structure: R vertex out of range");
        if (u == v && !allow_loops)
            throw InputError("structure: loop (" + std::to_string(u) + "," + std::to_string(u) +
                             ") without allow_loops flag");
        if (undirected && u != v && !has_r(v, u))
            throw InputError("structure: undirected flag set but R is not symmetric");
    }
    for (const auto& t : s) {
        for (int x : t)
            if (x < 0 || x >= n) throw InputError("structure: S vertex out of range");
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (t[i] == t[j]) throw InputError("structure: S tuple entries not distinct");
        if (!has_s(partner(t))) throw InputError("structure: S not closed under the partner map");
    }
}

// --- text format -------------------------------------------------------------

std::string serialize_structure(const Structure& st) {
    std::vector<std::string> lines;
    for (const auto& [u, v] : st.r) {
        if (st.undirected && u > v) continue; // one line per undirected edge
        std::ostringstream os;
        os << "R " << u << ' ' << v;
        lines.push_back(os.str());
    }
    for (const auto& t : st.s) {
        if (canonical_s(t) != t) continue;
        std::ostringstream os;
        os << "S " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3];
        lines.push_back(os.str());
    }
    std::sort(lines.begin(), lines.end());

    std::ostringstream os;
    os << "structure " << st.name << "\n";
    os << "n " << st.n << "\n";
    if (st.allow_loops || st.undirected) {
        os << "flags";
        if (st.allow_loops) os << " allow_loops";
        if (st.undirected) os << " undirected";
        os << "\n";
    }
    for (const auto& l : lines) os << l << "\n";
    os << "end\n";
    return os.str();
}

namespace {

bool is_index_token(const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::vector<std::string> split_tokens(const std::string& line) {
    auto hash = line.find('#');
    std::istringstream is(hash == std::string::npos ? line : line.substr(0, hash));
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

} // namespace

Structure parse_structure(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    Structure st;
    bool have_header = false, have_n = false, closed = false;
    bool uses_names = false, uses_indices = false;
    std::map<std::string, int> name_index;

    auto vertex_of = [&](const std::string& tok) -> int {
        if (is_index_token(tok)) {
            if (uses_names) throw InputError("structure file mixes vertex names and indices");
            uses_indices = true;
            int v = std::stoi(tok);
            if (v >= st.n) throw InputError("structure file: vertex index out of range: " + tok);
            return v;
        }
        if (uses_indices) throw InputError("structure file mixes vertex names and indices");
        uses_names = true;
        auto it = name_index.find(tok);
        if (it != name_index.end()) return it->second;
        int v = static_cast<int>(name_index.size());
        if (v >= st.n) throw InputError("structure file: more vertex names than n");
        name_index.emplace(tok, v);
        return v;
    };

    while (std::getline(is, line)) {
        auto toks = split_tokens(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2 || toks[0] != "structure")
                throw InputError("structure file must start with 'structure <name>'");
            st.name = toks[1];
            have_header = true;
        } else if (!have_n) {
            if (toks.size() != 2 || toks[0] != "n")
                throw InputError("structure file: 'n <count>' must follow the header");
            st.n = std::stoi(toks[1]);
            if (st.n < 0) throw InputError("structure file: negative n");
            have_n = true;
        } else if (toks[0] == "flags") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "allow_loops") st.allow_loops = true;
                else if (toks[i] == "undirected") st.undirected = true;
                else throw InputError("structure file: unknown flag '" + toks[i] + "'");
            }
        } else if (toks[0] == "R") {
            if (toks.size() != 3) throw InputError("structure file: R line needs two vertices");
            st.add_r(vertex_of(toks[1]), vertex_of(toks[2]));
        } else if (toks[0] == "S") {
            if (toks.size() != 5) throw InputError("structure file: S line needs four vertices");
            st.add_s({vertex_of(toks[1]), vertex_of(toks[2]), vertex_of(toks[3]), vertex_of(toks[4])});
        } else if (toks[0] == "end") {
            closed = true;
            break;
        } else {
            throw InputError("structure file: unexpected line '" + line + "'");
        }
    }
    if (!have_header || !have_n || !closed)
        throw InputError("structure file missing header, n, or 'end'");
    st.validate();
    return st;
}

Structure load_structure(const std::string& path) { return parse_structure(read_file(path)); }

// --- substructures and embeddings ---------------------------------------------

Induced induced_substructure(const Structure& m, const std::vector<int>& vertices) {
    std::vector<int> verts = vertices;
    std::sort(verts.begin(), verts.end());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] < 0 || verts[i] >= m.n)
            throw InputError("induced_substructure: vertex out of range");
        if (i > 0 && verts[i] == verts[i - 1])
            throw InputError("induced_substructure: duplicate vertex");
    }
    std::vector<int> new_of_old(m.n, -1);
    for (std::size_t i = 0; i < verts.size(); ++i) new_of_old[verts[i]] = static_cast<int>(i);

    Induced out;
    out.old_of_new = verts;
    out.structure.name = m.name + "_sub";
    out.structure.n = static_cast<int>(verts.size());
    out.structure.allow_loops = m.allow_loops;
    out.structure.undirected = m.undirected;
    for (const auto& [u, v] : m.r)
        if (new_of_old[u] >= 0 && new_of_old[v] >= 0)
            out.structure.r.insert({new_of_old[u], new_of_old[v]});
    for (const auto& t : m.s) {
        bool inside = true;
        for (int x : t)
            if (new_of_old[x] < 0) {
                inside = false;
                break;
            }
        if (inside)
            out.structure.s.insert(
                {new_of_old[t[0]], new_of_old[t[1]], new_of_old[t[2]], new_of_old[t[3]]});
    }
    return out;
}

bool is_embedding(const Structure& a, const Structure& m, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != a.n) return false;
    std::vector<char> used(m.n, 0);
    for (int x : map) {
        if (x < 0 || x >= m.n || used[x]) return false;
        used[x] = 1;
    }
    for (int u = 0; u < a.n; ++u)
        for (int v = 0; v < a.n; ++v)
            if (a.has_r(u, v) != m.has_r(map[u], map[v])) return false;
    // S preserved on source tuples, reflected on tuples inside the image.
    for (const auto& t : a.s)
        if (!m.has_s({map[t[0]], map[t[1]], map[t[2]], map[t[3]]})) return false;
    std::vector<int> pre(m.n, -1);
    for (int u = 0; u < a.n; ++u) pre[map[u]] = u;
    for (const auto& t : m.s) {
        bool inside = true;
        for (int x : t)
            if (pre[x] < 0) {
                inside = false;
                break;
            }
        if (inside && !a.has_s({pre[t[0]], pre[t[1]], pre[t[2]], pre[t[3]]})) return false;
    }
    return true;
}

std::vector<Embedding> find_embeddings(const Structure& a, const Structure& m) {
    std::vector<Embedding> out;
    if (a.n > m.n) return out;
    std::vector<int> map(a.n, -1);
    std::vector<char> used(m.n, 0);

    // Lexicographic backtracking over injections; prefixes are pruned by the
    // atoms they already determine, which keeps the output order identical
    // to a filter over all injections.
    std::function<void(int)> rec = [&](int u) {
        if (u == a.n) {
            if (is_embedding(a, m, map)) out.push_back(Embedding{map});
            return;
        }
        for (int w = 0; w < m.n; ++w) {
            if (used[w]) continue;
            bool ok = a.has_r(u, u) == m.has_r(w, w);
            for (int v = 0; ok && v < u; ++v) {
                if (a.has_r(u, v) != m.has_r(w, map[v])) ok = false;
                if (a.has_r(v, u) != m.has_r(map[v], w)) ok = false;
            }
            if (!ok) continue;
            map[u] = w;
            used[w] = 1;
            rec(u + 1);
            used[w] = 0;
            map[u] = -1;
        }
    };
    rec(0);
    return out;
}

bool are_isomorphic(const Structure& a, const Structure& b) {
    if (a.n != b.n || a.r.size() != b.r.size() || a.s.size() != b.s.size()) return false;
    return !find_embeddings(a, b).empty();
}

// --- qftp / realizes -----------------------------------------------------------

LinkType qftp(const Structure& m, int v, const std::vector<int>& base) {
    if (v < 0 || v >= m.n) throw InputError("qftp: v out of range");
    LinkType t;
    t.base = base;
    std::sort(t.base.begin(), t.base.end());
    for (std::size_t i = 0; i < t.base.size(); ++i) {
        int c = t.base[i];
        if (c < 0 || c >= m.n) throw InputError("qftp: base vertex out of range");
        if (i > 0 && c == t.base[i - 1]) throw InputError("qftp: duplicate base vertex");
        if (c == v) throw InputError("qftp: v must not belong to the base");
    }
    for (int c : t.base) {
        if (m.has_r(c, v)) t.r_in.insert(c);
        if (m.has_r(v, c)) t.r_out.insert(c);
    }
    std::set<int> base_set(t.base.begin(), t.base.end());
    for (const auto& tup : m.s) {
        bool has_v = false, inside = true;
        for (int x : tup) {
            if (x == v) has_v = true;
            else if (!base_set.count(x)) inside = false;
        }
        if (has_v && inside) {
            STuple masked = tup;
            for (int& x : masked)
                if (x == v) x = kStar;
            t.s_tuples.insert(masked);
        }
    }
    return t;
}

bool realizes(const Structure& m, int w, const LinkType& t) {
    for (int c : t.base)
        if (c == w) throw InputError("realizes: w must not belong to the base");
    return qftp(m, w, t.base) == t;
}

// --- automorphisms --------------------------------------------------------------

namespace {

// One incremental consistency pass for a partial map: R atoms between the
// new vertex and everything mapped, plus S tuples that just became fully
// mapped.
bool placement_consistent(const Structure& m, const std::vector<int>& map,
                          const std::vector<int>& placed, int u, int w) {
    if (m.has_r(u, u) != m.has_r(w, w)) return false;
    for (int v : placed) {
        if (m.has_r(u, v) != m.has_r(w, map[v])) return false;
        if (m.has_r(v, u) != m.has_r(map[v], w)) return false;
    }
    return true;
}

bool s_consistent_full(const Structure& m, const std::vector<int>& map) {
    for (const auto& t : m.s)
        if (!m.has_s({map[t[0]], map[t[1]], map[t[2]], map[t[3]]})) return false;
    return true;
}

} // namespace

PermGroup automorphism_group(const Structure& m) {
    if (m.n == 0) {
        PermGroup g;
        g.degree = 0;
        g.generators = {Permutation(std::vector<int>{})};
        g.elements = g.generators;
        return g;
    }
    // Search order: decreasing total R-degree, ties by index.
    std::vector<int> degree(m.n, 0);
    for (const auto& [u, v] : m.r) {
        ++degree[u];
        if (u != v) ++degree[v];
    }
    std::vector<int> order(m.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return degree[a] > degree[b]; });

    std::vector<Permutation> found;
    std::vector<int> map(m.n, -1);
    std::vector<char> used(m.n, 0);
    std::vector<int> placed;
    const std::size_t cap = closure_cap();

    std::function<void(int)> rec = [&](int depth) {
        if (depth == m.n) {
            if (s_consistent_full(m, map)) {
                found.emplace_back(map);
                if (found.size() > cap)
                    throw CapacityError("automorphism_group: order exceeds closure cap");
            }
            return;
        }
        int u = order[depth];
        for (int w = 0; w < m.n; ++w) {
            if (used[w] || degree[w] != degree[u]) continue;
            if (!placement_consistent(m, map, placed, u, w)) continue;
            map[u] = w;
            used[w] = 1;
            placed.push_back(u);
            rec(depth + 1);
            placed.pop_back();
            used[w] = 0;
            map[u] = -1;
        }
    };
    rec(0);

    std::sort(found.begin(), found.end());

    PermGroup g;
    g.degree = m.n;
    g.elements = found;
    // Reduce to a small generating set; the element list stays exhaustive.
    std::set<Permutation> generated{Permutation::identity(m.n)};
    for (const auto& e : found) {
        if (generated.count(e)) continue;
        g.generators.push_back(e);
        std::vector<Permutation> gens = g.generators;
        PermGroup sub = closure(gens);
        generated = std::set<Permutation>(sub.elements.begin(), sub.elements.end());
    }
    if (g.generators.empty()) g.generators.push_back(Permutation::identity(m.n));
    return g;
}

UltrahomogeneityReport is_ultrahomogeneous(const Structure& m) {
    PermGroup aut = automorphism_group(m);

    UltrahomogeneityReport report;
    std::vector<int> subset;

    auto extends_to_automorphism = [&](const std::vector<int>& dom, const std::vector<int>& img) {
        for (const auto& g : aut.elements) {
            bool ok = true;
            for (std::size_t i = 0; i < dom.size(); ++i)
                if (g(dom[i]) != img[i]) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    };

    // Try every bijection between every pair of same-size subsets; each one
    // that is an isomorphism of induced substructures must extend.
    std::function<bool(int, int)> pick = [&](int start, int k) -> bool {
        if (static_cast<int>(subset.size()) == k) {
            Induced a = induced_substructure(m, subset);
            std::vector<Embedding> partials = find_embeddings(a.structure, m);
            for (const auto& p : partials) {
                std::vector<int> img(k);
                for (int i = 0; i < k; ++i) img[i] = p.map[i];
                if (!extends_to_automorphism(subset, img)) {
                    report.ultrahomogeneous = false;
                    report.domain_subset = subset;
                    report.partial_map = img;
                    return false;
                }
            }
            return true;
        }
        for (int v = start; v < m.n; ++v) {
            subset.push_back(v);
            if (!pick(v + 1, k)) return false;
            subset.pop_back();
        }
        return true;
    };

    for (int k = 1; k <= m.n; ++k) {
        subset.clear();
        if (!pick(0, k)) break;
    }
    return report;
}

} // namespace homogen
