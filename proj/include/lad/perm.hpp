// Permutations and permutation groups on {0, ..., degree-1}.
//
// Composition is function composition: (f * g)(x) = f(g(x)).  Cycle text uses
// 1-based points, e.g. "(1,2,3)(4,5)"; the identity prints as "()".  Full
// element enumeration is capped at |Sym(7)| = 5040 elements and fails loudly
// beyond that; order() uses orbit-stabilizer recursion and has no such cap.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lad/common.hpp"

namespace lad {

inline constexpr std::size_t kMaxGroupElements = 5040; // |Sym(7)|
inline constexpr int kMaxPermDegree = 16;              // images pack into one uint64

class Perm {
public:
    Perm() = default;
    explicit Perm(int degree); // identity

    static Perm identity(int degree);
    // Validates that `images` is a permutation of 0..degree-1.
    static Perm from_images(std::vector<int> images);
    // Parses 1-based disjoint cycle notation, e.g. "(1,2,3)(4,5)" or "()".
    // Whitespace between cycles is allowed.  Points must lie in 1..degree and
    // may not repeat.
    static Perm parse_cycles(const std::string& text, int degree);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int p) const { return img_[static_cast<std::size_t>(p)]; }
    const std::vector<int>& images() const { return img_; }

    Perm operator*(const Perm& g) const; // (f*g)(x) = f(g(x))
    Perm inverse() const;
    bool is_identity() const;
    int order() const;
    int moved_points() const;
    bool is_even() const;

    std::string cycle_string() const; // 1-based

    // Lehmer code rank within Sym(degree); degree must be <= 12.
    std::uint32_t rank() const;
    static Perm from_rank(std::uint32_t rank, int degree);

    // Packs the image vector four bits per point; degree must be <= 16.
    std::uint64_t key() const;

    friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
    friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

private:
    std::vector<int> img_;
};

class PermGroup {
public:
    PermGroup() = default;
    PermGroup(int degree, std::vector<Perm> generators);

    static PermGroup trivial(int degree);
    static PermGroup symmetric(int degree);
    static PermGroup cyclic(int degree); // <(1,2,...,degree)>
    // Reduces `elements` to a small generating set greedily; `elements` need
    // not be closed, the closure is taken.
    static PermGroup from_elements(int degree, const std::vector<Perm>& elements);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }

    // Sorted, deduplicated element list; throws BudgetError past kMaxGroupElements.
    const std::vector<Perm>& elements() const;
    std::uint64_t order() const; // orbit-stabilizer recursion, uncapped
    bool contains(const Perm& g) const;
    bool is_trivial() const { return order() == 1; }
    bool is_abelian() const;
    bool is_transitive() const;
    // True when every point stabilizer is trivial (a free, or semiregular, action).
    bool is_free_action() const;

    // Orbits sorted by least point, each orbit sorted ascending.
    std::vector<std::vector<int>> orbits() const;
    std::vector<int> orbit_of(int p) const;

    // Stabilizer via orbit-transversal Schreier generators (no element listing).
    PermGroup point_stabilizer(int p) const;
    // Stabilizer by filtering the full element list; must agree with the above.
    PermGroup point_stabilizer_by_filter(int p) const;
    // Pointwise stabilizer of a set of points.
    PermGroup pointwise_stabilizer(const std::vector<int>& pts) const;

    // Subgroup generated by all point stabilizers.
    PermGroup plus_subgroup() const;
    PermGroup derived_subgroup() const;

    bool same_group(const PermGroup& other) const; // equal element sets
    bool is_subgroup_of(const PermGroup& other) const;

    // Lexicographically least sorted rank vector over all Sym(degree) conjugates;
    // the class invariant used to order subgroup classes.  Degree must be <= 12.
    std::vector<std::uint32_t> canonical_encoding() const;

private:
    int degree_ = 0;
    std::vector<Perm> gens_;
    mutable std::vector<Perm> elements_; // cached closure, sorted
    mutable std::uint64_t order_ = 0;    // cached, 0 = unknown
};

std::vector<std::vector<int>> orbit_partition(const PermGroup& g);
std::uint64_t group_order(const PermGroup& g);

// Some s with s a s^-1 = b as sets (witnessed conjugacy of subgroups of
// Sym(degree)); nullopt when not conjugate.  Degrees must match.
std::optional<Perm> conjugate_in_sym(const PermGroup& a, const PermGroup& b);

// Exhaustive normalizer of g in Sym(degree); degree capped (default 9).
PermGroup normalizer_in_sym(const PermGroup& g, int degree_bound = 9);

// Conjugacy class representatives of subgroups of Sym(degree), ordered by
// (order, canonical encoding).  2 <= degree <= degree_bound (default 7).
std::vector<PermGroup> subgroup_classes(int degree, int degree_bound = 7);

} // namespace lad
