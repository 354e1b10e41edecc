// Brute-force ground truth on labeled graphs: exhaustive tree generation,
// automorphism search, orbit partitioning, Kirchhoff and Burnside counts.
// Works on LabeledGraph only and never looks at decomposition trees.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "spenum/core.hpp"

namespace spenum::oracle {

inline constexpr std::size_t kDefaultVertexLimit = 12;

class LimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonIntegralResult : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// image[v] is the image of vertex v.
struct VertexPermutation {
    std::vector<std::uint32_t> image;

    bool is_identity() const;
    VertexPermutation compose(const VertexPermutation& first) const;  // this after first
    friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;
};

struct FixBoth {
    std::uint32_t s;
    std::uint32_t t;
};
struct FixSet {
    std::uint32_t s;
    std::uint32_t t;
};
struct FixNone {};
using FixPolicy = std::variant<FixBoth, FixSet, FixNone>;

struct Orbit {
    EdgeSet representative;
    std::vector<EdgeSet> members;
};

struct OrbitReport {
    std::vector<Orbit> orbits;
    std::size_t group_order = 0;
};

/// Every spanning tree once, by backtracking over edges in index order.
std::vector<EdgeSet> all_spanning_trees(const LabeledGraph& g, std::size_t vertex_limit = kDefaultVertexLimit);

/// Acyclic (n-2)-edge sets whose two components separate s from t.
std::vector<EdgeSet> all_separating_forests(const LabeledGraph& g, std::uint32_t s, std::uint32_t t,
                                            std::size_t vertex_limit = kDefaultVertexLimit);

std::vector<VertexPermutation> automorphisms(const LabeledGraph& g, const FixPolicy& policy,
                                             std::size_t vertex_limit = kDefaultVertexLimit);

/// Edge index permutation induced by a vertex automorphism.
std::vector<std::uint32_t> edge_permutation(const LabeledGraph& g, const VertexPermutation& sigma);

EdgeSet apply(const std::vector<std::uint32_t>& edge_perm, const EdgeSet& es);

/// Representatives are the first-encountered members in input order.
OrbitReport orbit_partition(const std::vector<EdgeSet>& trees, const std::vector<VertexPermutation>& autos,
                            const LabeledGraph& g);

/// Reduced-Laplacian determinant by fraction-free elimination.
BigInt kirchhoff_count(const LabeledGraph& g);

/// Mean number of trees fixed by each group element.
BigInt burnside_count(const std::vector<EdgeSet>& trees, const std::vector<VertexPermutation>& autos,
                      const LabeledGraph& g);

}  // namespace spenum::oracle
