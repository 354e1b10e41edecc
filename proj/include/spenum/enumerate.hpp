// Enumeration and counting of the spanning trees and near trees of an
// oriented series-parallel graph, one representative per orbit under the
// automorphisms that fix both terminals.
//
// Near trees here are the spanning forests with two components that separate
// the source from the sink; these are the pieces that parallel composition
// glues together.
//
// Isomorphic subtrees are interned into a shared Shape, and every list is
// computed once per shape over canonical leaf positions. A concrete subtree
// maps positions to its own leaves through its canonical leaf order, so two
// oriented-isomorphic subtrees index their trees identically.
//
// Enumeration order (fixed; golden tests depend on it):
//   series spanning  : tuples (a_1..a_k) of child spanning indices, lexicographic.
//   series near      : for j = 1..k, child j near and the rest spanning, lexicographic.
//   parallel near    : per class (descending code) a multiset of representative
//                      near indices; classes lexicographic, multisets lexicographic.
//   parallel spanning: for each class a holding the spanning tree, tuples over
//                      classes where class a contributes (spanning index, multiset
//                      of |E_a|-1 near indices) and every other class a multiset.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spenum/canonical.hpp"
#include "spenum/core.hpp"

namespace spenum {

enum class TreeKind : std::uint8_t { Spanning = 0, Near = 1 };

using TreeList = std::vector<EdgeSet>;
using PosList = std::vector<std::uint32_t>;
using ShapeId = std::uint32_t;

struct CountPair {
    BigInt spanning;
    BigInt near;

    friend bool operator==(const CountPair&, const CountPair&) = default;
};

/// Exact binomial coefficient; zero when k < 0 or k > n.
BigInt binomial(const BigInt& n, const BigInt& k);
/// Number of size-k multisets drawn from m items: C(m + k - 1, k).
BigInt multiset_count(const BigInt& m, const BigInt& k);

/// All size-k multisets over {0..m-1} as nondecreasing sequences, lexicographic.
std::vector<std::vector<std::uint32_t>> multiset_enumerate(std::uint32_t m, std::uint32_t k);
/// Position of a nondecreasing sequence in multiset_enumerate(m, seq.size()).
std::uint64_t multiset_rank(std::span<const std::uint32_t> seq, std::uint32_t m);
/// Inverse of multiset_rank.
std::vector<std::uint32_t> multiset_unrank(std::uint64_t rank, std::uint32_t m, std::uint32_t k);

/// Trees chosen for one isomorphism class of a parallel node.
struct MultisetAssignment {
    std::vector<std::uint32_t> near;        // nondecreasing representative near-tree indices
    std::optional<std::uint64_t> spanning;  // spanning-tree index, carried by the class's first member

    std::size_t size() const noexcept { return near.size() + (spanning ? 1 : 0); }
    friend bool operator==(const MultisetAssignment&, const MultisetAssignment&) = default;
};

struct Shape {
    struct Class {
        ShapeId shape;
        std::uint32_t first;  // index into children
        std::uint32_t size;
    };

    NodeKind kind = NodeKind::Leaf;
    CanonicalCode code;
    std::vector<ShapeId> children;   // canonical order
    std::vector<std::uint32_t> offsets;  // first canonical position of each child
    std::vector<Class> classes;      // parallel only, descending code
    std::uint32_t leaves = 1;
    std::uint32_t vertices = 2;
};

struct Located {
    TreeKind kind;
    std::uint64_t index;
};

/// Interned shapes with memoized counts and tree lists.
class ShapeTable {
public:
    /// Interns `node` (or its terminal-exchanged version). Appends the node's
    /// global leaves in canonical position order to `leaf_order` when given,
    /// and writes the canonical order of its children to `child_order`.
    ShapeId intern(const DecompTree& node, bool reverse = false, std::vector<std::uint32_t>* leaf_order = nullptr,
                   std::vector<std::size_t>* child_order = nullptr);

    /// Shape of the terminal-exchanged graph.
    ShapeId reverse(ShapeId id);
    bool self_reverse(ShapeId id) { return reverse(id) == id; }

    const Shape& at(ShapeId id) const { return shapes_.at(id); }
    std::size_t size() const noexcept { return shapes_.size(); }

    const CountPair& counts(ShapeId id);
    /// Counts that fit a list index; throws std::overflow_error otherwise.
    std::uint64_t count64(ShapeId id, TreeKind kind);

    /// Materialized list over the shape's canonical positions.
    /// Throws std::length_error beyond `max_materialized` entries.
    const std::vector<PosList>& trees(ShapeId id, TreeKind kind);

    /// Index of the orbit containing the edge set given by flags over the
    /// shape's positions, or nullopt if it is neither a spanning tree nor a
    /// terminal-separating near tree.
    std::optional<Located> locate(ShapeId id, std::span<const char> in_positions);

    /// Per-class assignments behind entry `index` of a parallel shape's list.
    std::vector<MultisetAssignment> decode_parallel(ShapeId id, TreeKind kind, std::uint64_t index);

    static constexpr std::uint64_t max_materialized = 20'000'000;

private:
    std::pair<ShapeId, std::vector<std::size_t>> make(NodeKind kind, const std::vector<ShapeId>& children);
    std::vector<PosList> build_list(ShapeId id, TreeKind kind);
    std::uint64_t class_radix(const Shape::Class& c, bool holds_spanning);

    std::vector<Shape> shapes_;
    std::map<std::string, ShapeId> by_code_;
    std::vector<std::optional<ShapeId>> reverse_;
    std::vector<std::unique_ptr<CountPair>> counts_;
    std::vector<std::array<std::unique_ptr<std::vector<PosList>>, 2>> lists_;
};

/// A normalized decomposition tree bound to its shape table.
class SpInstance {
public:
    explicit SpInstance(DecompTree tree);

    const DecompTree& tree() const noexcept { return tree_; }
    ShapeTable& shapes() noexcept { return *table_; }
    ShapeId root() const noexcept { return root_; }
    /// Canonical position -> global leaf index.
    const std::vector<std::uint32_t>& position_to_leaf() const noexcept { return pos_to_leaf_; }
    /// Canonical order of the root's children (indices into tree().children).
    const std::vector<std::size_t>& root_child_order() const noexcept { return root_child_order_; }
    std::size_t universe() const noexcept { return tree_.leaves.end; }

    EdgeSet to_edge_set(const PosList& positions, std::uint32_t offset = 0) const;
    /// Flags over positions [offset, offset + count) for an edge set.
    std::vector<char> position_flags(const EdgeSet& es, std::uint32_t offset, std::uint32_t count) const;

    TreeList trees(TreeKind kind);
    /// Orbit index of any spanning tree or separating near tree of the whole graph.
    std::optional<Located> locate(const EdgeSet& es);

private:
    DecompTree tree_;
    std::unique_ptr<ShapeTable> table_;
    ShapeId root_;
    std::vector<std::uint32_t> pos_to_leaf_;
    std::vector<std::size_t> root_child_order_;
};

TreeList oriented_spanning(const OrientedSP& g);
std::pair<TreeList, TreeList> oriented_both(const OrientedSP& g);
CountPair count_oriented(const OrientedSP& g);
/// Counts without any automorphism reduction.
CountPair count_total(const DecompTree& tree);
CountPair count_total(const OrientedSP& g);
/// Every spanning tree (or separating near tree) with no reduction, in the
/// same product order as the oriented lists. Throws std::length_error beyond
/// ShapeTable::max_materialized entries.
TreeList total_trees(const DecompTree& tree, TreeKind kind);

/// Pull-based enumeration producing the same sequence as the materialized
/// lists, holding only per-node cursor state.
class TreeStream {
public:
    TreeStream(const OrientedSP& g, TreeKind kind);
    ~TreeStream();
    TreeStream(TreeStream&&) noexcept;
    TreeStream& operator=(TreeStream&&) noexcept;

    /// Global leaf indices of the next tree, ascending by canonical position
    /// (not by leaf index). Returns false when exhausted.
    bool next(std::vector<std::uint32_t>& leaves);
    std::optional<EdgeSet> next();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace spenum
