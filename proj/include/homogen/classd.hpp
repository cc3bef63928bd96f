#pragma once

#include "homogen/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace homogen {

// Class D: finite structures whose R-reduct is an I3-free oriented graph
// (irreflexive, asymmetric, no independent triple) and whose S-reduct is a
// complete quad pairing (every 4-set carries exactly one partner pair of
// 4-tuples).

struct I3Verdict {
    bool ok = true;
    std::optional<std::array<int, 3>> anticlique;        // triple with no edge
    std::optional<std::pair<int, int>> symmetric_pair;   // both directions present
};

/// R-reduct check. Throws InputError when the structure carries loops.
I3Verdict is_i3_free(const Structure& m);

struct QuadPairingVerdict {
    bool ok = true;
    std::optional<std::array<int, 4>> bad_four_set;
    std::string reason;
};

/// S-reduct check: every tuple's entries pairwise distinct and every 4-set
/// carrying exactly one partner pair.
QuadPairingVerdict is_quad_paired(const Structure& m);

/// Membership in class D. Loops make this false (never an error).
bool is_in_class_d(const Structure& m);

/// The 12 distinct quad pairings on a 4-set, each given by its canonical
/// tuple; ordered lexicographically. The partner completes each pair.
std::vector<STuple> quad_pairings_on(const std::array<int, 4>& sorted_pts);

struct AmalgamProblem {
    Structure a, b, c;
    std::vector<int> into_b; // embedding a -> b
    std::vector<int> into_c; // embedding a -> c
};

struct Amalgam {
    Structure d;
    std::vector<int> b_embedding;
    std::vector<int> c_embedding;
};

/// Strong amalgam of b and c over a: domain is (b \ a) then a then (c \ a);
/// every pair (b-only, c-only) gets an oriented edge in that direction; mixed
/// 4-sets get the canonical quad pairing. The images of b and c intersect in
/// exactly the image of a.
Amalgam strong_amalgam(const AmalgamProblem& p);

/// Lazily indexable enumeration of all labeled class-D structures on n
/// vertices: orientation-major, then quad-pairing digits (base 12, one digit
/// per 4-set). Construction enumerates the I3-free orientations eagerly,
/// which is why n is capped.
class ClassDEnumeration {
  public:
    explicit ClassDEnumeration(int n, int cap = 5);

    std::uint64_t count() const;
    std::uint64_t orientation_count() const { return orientations_.size(); }
    Structure at(std::uint64_t index) const;
    int n() const { return n_; }

  private:
    int n_;
    std::vector<std::pair<int, int>> pairs_;        // lexicographic vertex pairs
    std::vector<std::array<int, 4>> four_sets_;     // lexicographic 4-subsets
    std::vector<std::vector<int>> orientations_;    // per-pair states, 0/1/2
    std::uint64_t pairings_per_orientation_;        // 12^|four_sets_|
};

/// Uniform member of class D on n vertices. Below the enumeration cap this
/// samples an index; above it, rejection-samples an orientation and draws
/// one pairing per 4-set. Deterministic for a fixed seed.
Structure random_class_d(int n, std::uint64_t seed, int cap = 5);

} // namespace homogen
