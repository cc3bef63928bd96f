#include "homogen/classd.hpp"

#include "homogen/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace homogen {

I3Verdict is_i3_free(const Structure& m) {
    for (const auto& [u, v] : m.r)
        if (u == v)
            throw InputError("is_i3_free: structure has a loop at vertex " + std::to_string(u));
    I3Verdict verdict;
    for (const auto& [u, v] : m.r)
        if (u < v && m.has_r(v, u)) {
            verdict.ok = false;
            verdict.symmetric_pair = {u, v};
            return verdict;
        }
    for (int a = 0; a < m.n && verdict.ok; ++a)
        for (int b = a + 1; b < m.n && verdict.ok; ++b)
            for (int c = b + 1; c < m.n; ++c) {
                if (m.no_edge(a, b) && m.no_edge(a, c) && m.no_edge(b, c)) {
                    verdict.ok = false;
                    verdict.anticlique = {a, b, c};
                    break;
                }
            }
    return verdict;
}

QuadPairingVerdict is_quad_paired(const Structure& m) {
    QuadPairingVerdict verdict;
    for (const auto& t : m.s) {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (t[i] == t[j]) {
                    verdict.ok = false;
                    std::array<int, 4> key = t;
                    std::sort(key.begin(), key.end());
                    verdict.bad_four_set = key;
                    verdict.reason = "tuple entries not pairwise distinct";
                    return verdict;
                }
    }
    // Group tuples by their underlying 4-set and demand exactly one partner
    // pair on every 4-subset of the domain.
    std::map<std::array<int, 4>, std::vector<STuple>> by_set;
    for (const auto& t : m.s) {
        std::array<int, 4> key = t;
        std::sort(key.begin(), key.end());
        by_set[key].push_back(t);
    }
    for (auto& [key, tuples] : by_set) {
        std::sort(tuples.begin(), tuples.end());
        if (tuples.size() != 2 || partner(tuples[0]) != tuples[1]) {
            verdict.ok = false;
            verdict.bad_four_set = key;
            verdict.reason = "4-set carries something other than one partner pair";
            return verdict;
        }
    }
    for (int a = 0; a < m.n; ++a)
        for (int b = a + 1; b < m.n; ++b)
            for (int c = b + 1; c < m.n; ++c)
                for (int d = c + 1; d < m.n; ++d) {
                    std::array<int, 4> key{a, b, c, d};
                    if (!by_set.count(key)) {
                        verdict.ok = false;
                        verdict.bad_four_set = key;
                        verdict.reason = "4-set carries no pairing";
                        return verdict;
                    }
                }
    return verdict;
}

bool is_in_class_d(const Structure& m) {
    for (const auto& [u, v] : m.r)
        if (u == v) return false;
    return is_i3_free(m).ok && is_quad_paired(m).ok;
}

std::vector<STuple> quad_pairings_on(const std::array<int, 4>& sorted_pts) {
    std::array<int, 4> pts = sorted_pts;
    std::sort(pts.begin(), pts.end());
    std::set<STuple> canon;
    std::array<int, 4> idx{0, 1, 2, 3};
    do {
        STuple t{pts[idx[0]], pts[idx[1]], pts[idx[2]], pts[idx[3]]};
        canon.insert(canonical_s(t));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return {canon.begin(), canon.end()};
}

Amalgam strong_amalgam(const AmalgamProblem& p) {
    if (!is_embedding(p.a, p.b, p.into_b) || !is_embedding(p.a, p.c, p.into_c))
        throw InputError("strong_amalgam: the two maps must be embeddings of a");
    if (!is_in_class_d(p.b) || !is_in_class_d(p.c))
        throw InputError("strong_amalgam: b and c must belong to class D");

    // Domain order: b-only vertices (original order), then a, then c-only.
    std::vector<int> b_only, c_only;
    std::vector<char> b_hit(p.b.n, 0), c_hit(p.c.n, 0);
    for (int x : p.into_b) b_hit[x] = 1;
    for (int x : p.into_c) c_hit[x] = 1;
    for (int x = 0; x < p.b.n; ++x)
        if (!b_hit[x]) b_only.push_back(x);
    for (int x = 0; x < p.c.n; ++x)
        if (!c_hit[x]) c_only.push_back(x);

    Amalgam out;
    out.d.name = "amalgam";
    out.d.n = static_cast<int>(b_only.size()) + p.a.n + static_cast<int>(c_only.size());
    out.b_embedding.assign(p.b.n, -1);
    out.c_embedding.assign(p.c.n, -1);
    for (std::size_t i = 0; i < b_only.size(); ++i) out.b_embedding[b_only[i]] = static_cast<int>(i);
    for (int i = 0; i < p.a.n; ++i) {
        out.b_embedding[p.into_b[i]] = static_cast<int>(b_only.size()) + i;
        out.c_embedding[p.into_c[i]] = static_cast<int>(b_only.size()) + i;
    }
    const int c_offset = static_cast<int>(b_only.size()) + p.a.n;
    for (std::size_t i = 0; i < c_only.size(); ++i)
        out.c_embedding[c_only[i]] = c_offset + static_cast<int>(i);

    for (const auto& [u, v] : p.b.r) out.d.r.insert({out.b_embedding[u], out.b_embedding[v]});
    for (const auto& [u, v] : p.c.r) out.d.r.insert({out.c_embedding[u], out.c_embedding[v]});
    // Every pair (b-only, c-only) gets the oriented edge b -> c.
    for (int bo : b_only)
        for (int co : c_only) out.d.r.insert({out.b_embedding[bo], out.c_embedding[co]});

    for (const auto& t : p.b.s)
        out.d.s.insert({out.b_embedding[t[0]], out.b_embedding[t[1]], out.b_embedding[t[2]],
                        out.b_embedding[t[3]]});
    for (const auto& t : p.c.s)
        out.d.s.insert({out.c_embedding[t[0]], out.c_embedding[t[1]], out.c_embedding[t[2]],
                        out.c_embedding[t[3]]});

    // Mixed 4-sets (not inside the image of b nor of c) take the canonical
    // pairing: lexicographically least on the sorted points.
    std::set<std::array<int, 4>> covered;
    for (const auto& t : out.d.s) {
        std::array<int, 4> key = t;
        std::sort(key.begin(), key.end());
        covered.insert(key);
    }
    const int b_end = static_cast<int>(b_only.size()) + p.a.n; // image of b = [0, b_end)
    const int c_begin = static_cast<int>(b_only.size());       // image of c = [c_begin, n)
    for (int a = 0; a < out.d.n; ++a)
        for (int b = a + 1; b < out.d.n; ++b)
            for (int c = b + 1; c < out.d.n; ++c)
                for (int d = c + 1; d < out.d.n; ++d) {
                    if (d < b_end) continue;      // inside image of b
                    if (a >= c_begin) continue;   // inside image of c
                    std::array<int, 4> key{a, b, c, d};
                    if (covered.count(key)) continue;
                    STuple t{a, b, c, d};
                    out.d.s.insert(t);
                    out.d.s.insert(partner(t));
                }

    out.d.validate();
    if (!is_in_class_d(out.d)) throw IntegrityError("strong_amalgam: amalgam left class D");
    return out;
}

// --- enumeration ---------------------------------------------------------------

ClassDEnumeration::ClassDEnumeration(int n, int cap) : n_(n) {
    if (n < 0) throw InputError("ClassDEnumeration: negative n");
    if (n > cap)
        throw CapacityError("ClassDEnumeration: n=" + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs_.push_back({u, v});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) four_sets_.push_back({a, b, c, d});

    // Odometer over per-pair states: 0 none, 1 forward, 2 backward. A state
    // vector survives iff no 3-set is left empty.
    std::vector<int> state(pairs_.size(), 0);
    auto i3_ok = [&]() {
        std::map<std::pair<int, int>, int> st;
        for (std::size_t i = 0; i < pairs_.size(); ++i) st[pairs_[i]] = state[i];
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (st[{a, b}] == 0 && st[{a, c}] == 0 && st[{b, c}] == 0) return false;
        return true;
    };
    while (true) {
        if (i3_ok()) orientations_.push_back(state);
        std::size_t i = 0;
        for (; i < state.size(); ++i) {
            if (++state[i] < 3) break;
            state[i] = 0;
        }
        if (i == state.size()) break;
    }

    pairings_per_orientation_ = 1;
    for (std::size_t i = 0; i < four_sets_.size(); ++i) pairings_per_orientation_ *= 12;
}

std::uint64_t ClassDEnumeration::count() const {
    return static_cast<std::uint64_t>(orientations_.size()) * pairings_per_orientation_;
}

Structure ClassDEnumeration::at(std::uint64_t index) const {
    if (index >= count()) throw InputError("ClassDEnumeration::at: index out of range");
    Structure st;
    st.name = "d_" + std::to_string(n_) + "_" + std::to_string(index);
    st.n = n_;
    const auto& orient = orientations_[index / pairings_per_orientation_];
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (orient[i] == 1) st.r.insert({pairs_[i].first, pairs_[i].second});
        else if (orient[i] == 2) st.r.insert({pairs_[i].second, pairs_[i].first});
    }
    std::uint64_t digits = index % pairings_per_orientation_;
    for (const auto& fs : four_sets_) {
        int digit = static_cast<int>(digits % 12);
        digits /= 12;
        STuple t = quad_pairings_on(fs)[digit];
        st.s.insert(t);
        st.s.insert(partner(t));
    }
    return st;
}

Structure random_class_d(int n, std::uint64_t seed, int cap) {
    std::mt19937_64 rng(seed);
    if (n <= cap) {
        ClassDEnumeration en(n, cap);
        std::uint64_t index = en.count() > 0
                                  ? std::uniform_int_distribution<std::uint64_t>(0, en.count() - 1)(rng)
                                  : 0;
        Structure st = en.at(index);
        st.name = "d_rand_" + std::to_string(n) + "_" + std::to_string(seed);
        return st;
    }

    Structure st;
    st.name = "d_rand_" + std::to_string(n) + "_" + std::to_string(seed);
    st.n = n;
    std::uniform_int_distribution<int> pair_state(0, 2);
    while (true) {
        st.r.clear();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int state = pair_state(rng);
                if (state == 1) st.r.insert({u, v});
                else if (state == 2) st.r.insert({v, u});
            }
        if (is_i3_free(st).ok) break;
    }
    std::uniform_int_distribution<int> digit(0, 11);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    STuple t = quad_pairings_on({a, b, c, d})[digit(rng)];
                    st.s.insert(t);
                    st.s.insert(partner(t));
                }
    return st;
}

} // namespace homogen
