// Core types for two-terminal series-parallel graphs: decomposition trees,
// the labeled graphs they describe, and compact edge sets over leaf indices.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace spenum {

using BigInt = boost::multiprecision::cpp_int;

/// Vertex name. Two leaves that carry the same label share that vertex.
class VertexLabel {
public:
    VertexLabel() = default;
    explicit VertexLabel(std::string text);

    const std::string& str() const noexcept { return text_; }

    static bool is_valid_text(std::string_view text) noexcept;

    friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
    friend auto operator<=>(const VertexLabel&, const VertexLabel&) = default;

private:
    std::string text_;
};

enum class NodeKind : std::uint8_t { Leaf, Series, Parallel };

/// Half-open interval of global leaf indices, assigned in depth-first preorder.
struct LeafRange {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    std::uint32_t size() const noexcept { return end - begin; }
    bool contains(std::uint32_t leaf) const noexcept { return leaf >= begin && leaf < end; }
    friend bool operator==(const LeafRange&, const LeafRange&) = default;
};

/// Series-parallel decomposition tree. Leaves are edges oriented from the
/// node's source terminal towards its target terminal.
struct DecompTree {
    NodeKind kind = NodeKind::Leaf;
    VertexLabel source;
    VertexLabel target;
    std::vector<DecompTree> children;
    LeafRange leaves;

    static DecompTree leaf(VertexLabel source, VertexLabel target);
    static DecompTree leaf(std::string source, std::string target);
    /// Terminals are taken from the first child's source and the last child's target.
    static DecompTree series(std::vector<DecompTree> children);
    /// Terminals are taken from the first child.
    static DecompTree parallel(std::vector<DecompTree> children);

    bool is_leaf() const noexcept { return kind == NodeKind::Leaf; }
    std::uint32_t edge_count() const noexcept { return leaves.size(); }

    /// Reassigns leaf ranges in preorder starting at `first`; returns one past the last leaf.
    std::uint32_t assign_leaf_indices(std::uint32_t first = 0);

    friend bool operator==(const DecompTree&, const DecompTree&) = default;
};

/// Ordered terminal pair (source, sink). Equality includes the orientation.
struct OrientedSP {
    DecompTree tree;

    const VertexLabel& source() const noexcept { return tree.source; }
    const VertexLabel& sink() const noexcept { return tree.target; }
    friend bool operator==(const OrientedSP&, const OrientedSP&) = default;
};

/// Unordered terminal set {s, t}.
struct SemiorientedSP {
    DecompTree tree;

    friend bool operator==(const SemiorientedSP& a, const SemiorientedSP& b);
};

struct Violation {
    std::string path;  // e.g. "root/1/0"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(std::string_view message) const;
    std::string to_string() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

// Violation messages.
inline constexpr std::string_view kSelfLoop = "self-loop at leaf";
inline constexpr std::string_view kMultiEdge = "parallel multi-edge";
inline constexpr std::string_view kTooFewChildren = "interior node with fewer than two children";
inline constexpr std::string_view kChainMismatch = "series chain mismatch";
inline constexpr std::string_view kTerminalMismatch = "terminal mismatch";
inline constexpr std::string_view kSharedVertex = "children share a non-terminal vertex";
inline constexpr std::string_view kSeriesUnderSeries = "series node directly under series node";
inline constexpr std::string_view kParallelUnderParallel = "parallel node directly under parallel node";
inline constexpr std::string_view kLeafRange = "inconsistent leaf index range";
inline constexpr std::string_view kBadLabel = "invalid vertex label";

/// Checks every structural invariant; never throws.
ValidationReport validate(const DecompTree& tree);

/// Flattens series-under-series and parallel-under-parallel nodes and reassigns
/// leaf indices. Throws ValidationError if any other invariant is violated.
DecompTree normalize(const DecompTree& tree);

/// Simple undirected graph with vertices and edges indexed by leaf preorder.
class LabeledGraph {
public:
    struct Edge {
        std::uint32_t u;
        std::uint32_t v;
    };

    LabeledGraph() = default;
    LabeledGraph(std::vector<VertexLabel> vertices, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<VertexLabel>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const VertexLabel& label(std::uint32_t v) const { return vertices_.at(v); }

    /// Index of a vertex label, or -1 if absent.
    std::int64_t find(const VertexLabel& label) const;
    std::uint32_t index_of(const VertexLabel& label) const;
    /// Index of the edge joining u and v, or -1.
    std::int64_t edge_between(std::uint32_t u, std::uint32_t v) const;
    const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adjacency_.at(v); }
    bool connected() const;

private:
    std::vector<VertexLabel> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
};

/// Vertex list in first-appearance preorder; edge i is the leaf with index i.
LabeledGraph underlying_graph(const DecompTree& tree);

/// Member flags over leaf indices [0, universe).
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::size_t universe);
    EdgeSet(std::size_t universe, std::span<const std::uint32_t> members);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }
    bool contains(std::uint32_t index) const noexcept;
    void insert(std::uint32_t index);
    void erase(std::uint32_t index);
    std::vector<std::uint32_t> members() const;

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) noexcept {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    friend std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) noexcept;

    std::size_t hash() const noexcept;

private:
    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

struct EdgeSetHash {
    std::size_t operator()(const EdgeSet& es) const noexcept { return es.hash(); }
};

enum class EdgeSetClass { SpanningTree, NearTree, Other };

EdgeSetClass classify_edge_set(const LabeledGraph& graph, const EdgeSet& es);

/// True when `es` is acyclic with exactly two components, one holding s and the other t.
bool separates_terminals(const LabeledGraph& graph, const EdgeSet& es, std::uint32_t s, std::uint32_t t);

std::string to_string(EdgeSetClass c);

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    std::uint32_t find(std::uint32_t x);
    /// Returns false if x and y were already joined.
    bool unite(std::uint32_t x, std::uint32_t y);
    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t components_;
};

}  // namespace spenum

template <>
struct std::hash<spenum::VertexLabel> {
    std::size_t operator()(const spenum::VertexLabel& v) const noexcept {
        return std::hash<std::string>{}(v.str());
    }
};
