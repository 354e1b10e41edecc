#include "spenum/core.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace spenum {

// ---------------------------------------------------------------- labels

VertexLabel::VertexLabel(std::string text) : text_(std::move(text)) {}

bool VertexLabel::is_valid_text(std::string_view text) noexcept {
    if (text.empty()) return false;
    return std::all_of(text.begin(), text.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

// ---------------------------------------------------------------- trees

DecompTree DecompTree::leaf(VertexLabel source, VertexLabel target) {
    DecompTree t;
    t.kind = NodeKind::Leaf;
    t.source = std::move(source);
    t.target = std::move(target);
    t.leaves = {0, 1};
    return t;
}

DecompTree DecompTree::leaf(std::string source, std::string target) {
    return leaf(VertexLabel(std::move(source)), VertexLabel(std::move(target)));
}

DecompTree DecompTree::series(std::vector<DecompTree> children) {
    if (children.empty()) throw std::invalid_argument("series node needs children");
    DecompTree t;
    t.kind = NodeKind::Series;
    t.source = children.front().source;
    t.target = children.back().target;
    t.children = std::move(children);
    t.assign_leaf_indices();
    return t;
}

DecompTree DecompTree::parallel(std::vector<DecompTree> children) {
    if (children.empty()) throw std::invalid_argument("parallel node needs children");
    DecompTree t;
    t.kind = NodeKind::Parallel;
    t.source = children.front().source;
    t.target = children.front().target;
    t.children = std::move(children);
    t.assign_leaf_indices();
    return t;
}

std::uint32_t DecompTree::assign_leaf_indices(std::uint32_t first) {
    std::uint32_t next = first;
    if (kind == NodeKind::Leaf) {
        next = first + 1;
    } else {
        for (auto& child : children) next = child.assign_leaf_indices(next);
    }
    leaves = {first, next};
    return next;
}

bool operator==(const SemiorientedSP& a, const SemiorientedSP& b) {
    const auto& x = a.tree;
    const auto& y = b.tree;
    bool same_terminals = (x.source == y.source && x.target == y.target) ||
                          (x.source == y.target && x.target == y.source);
    if (!same_terminals) return false;
    // Compare underlying graphs as labeled edge sets.
    auto edge_keys = [](const DecompTree& t) {
        auto g = underlying_graph(t);
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto& e : g.edges()) {
            auto u = g.label(e.u).str();
            auto v = g.label(e.v).str();
            if (v < u) std::swap(u, v);
            keys.emplace_back(u, v);
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    return edge_keys(x) == edge_keys(y);
}

// ---------------------------------------------------------------- validation

bool ValidationReport::has(std::string_view message) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.message == message; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.path << ": " << v.message << '\n';
    return os.str();
}

namespace {

std::string first_message(const ValidationReport& r) {
    if (r.ok()) return "valid";
    return r.violations.front().path + ": " + r.violations.front().message;
}

class Validator {
public:
    ValidationReport report;

    std::set<std::string> visit(const DecompTree& node, const std::string& path) {
        for (const auto* label : {&node.source, &node.target}) {
            if (!VertexLabel::is_valid_text(label->str())) add(path, kBadLabel, label->str());
        }
        if (node.kind == NodeKind::Leaf) {
            if (node.source == node.target) add(path, kSelfLoop);
            if (!node.children.empty()) add(path, kTooFewChildren, "leaf with children");
            return {node.source.str(), node.target.str()};
        }
        if (node.children.size() < 2) add(path, kTooFewChildren);

        std::vector<std::set<std::string>> child_vertices;
        child_vertices.reserve(node.children.size());
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            child_vertices.push_back(visit(node.children[i], path + "/" + std::to_string(i)));
        }
        if (node.children.empty()) return {node.source.str(), node.target.str()};

        if (node.kind == NodeKind::Series) check_series(node, path, child_vertices);
        else check_parallel(node, path, child_vertices);

        std::set<std::string> all;
        for (auto& cv : child_vertices) all.insert(cv.begin(), cv.end());
        return all;
    }

    void check_ranges(const DecompTree& node, const std::string& path, std::uint32_t& next) {
        if (node.leaves.begin != next) add(path, kLeafRange);
        if (node.kind == NodeKind::Leaf) {
            ++next;
        } else {
            for (std::size_t i = 0; i < node.children.size(); ++i)
                check_ranges(node.children[i], path + "/" + std::to_string(i), next);
        }
        if (node.leaves.end != next) add(path, kLeafRange);
    }

private:
    void add(const std::string& path, std::string_view message, const std::string& detail = {}) {
        (void)detail;
        report.violations.push_back({path, std::string(message)});
    }

    void check_series(const DecompTree& node, const std::string& path,
                      const std::vector<std::set<std::string>>& child_vertices) {
        const auto& ch = node.children;
        if (node.source != ch.front().source || node.target != ch.back().target)
            add(path, kTerminalMismatch);
        for (std::size_t i = 0; i < ch.size(); ++i) {
            auto cpath = path + "/" + std::to_string(i);
            if (ch[i].kind == NodeKind::Series) add(cpath, kSeriesUnderSeries);
            if (i + 1 < ch.size() && ch[i].target != ch[i + 1].source)
                add(path + "/" + std::to_string(i + 1), kChainMismatch);
        }
        // A vertex may appear in one child, or in two consecutive children as their junction.
        std::map<std::string, std::vector<std::size_t>> owners;
        for (std::size_t i = 0; i < ch.size(); ++i)
            for (const auto& v : child_vertices[i]) owners[v].push_back(i);
        for (const auto& [v, idx] : owners) {
            if (idx.size() == 1) continue;
            bool junction = idx.size() == 2 && idx[1] == idx[0] + 1 && ch[idx[0]].target.str() == v &&
                            ch[idx[1]].source.str() == v;
            if (!junction) add(path, kSharedVertex);
        }
    }

    void check_parallel(const DecompTree& node, const std::string& path,
                        const std::vector<std::set<std::string>>& child_vertices) {
        const auto& ch = node.children;
        std::size_t bare_leaves = 0;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            auto cpath = path + "/" + std::to_string(i);
            if (ch[i].kind == NodeKind::Parallel) add(cpath, kParallelUnderParallel);
            if (ch[i].kind == NodeKind::Leaf) ++bare_leaves;
            if (ch[i].source != node.source || ch[i].target != node.target) add(cpath, kTerminalMismatch);
        }
        if (bare_leaves > 1) add(path, kMultiEdge);
        std::map<std::string, std::size_t> seen;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            for (const auto& v : child_vertices[i]) {
                if (v == node.source.str() || v == node.target.str()) continue;
                if (++seen[v] == 2) add(path, kSharedVertex);
            }
        }
    }
};

void flatten(DecompTree& node) {
    if (node.kind == NodeKind::Leaf) return;
    std::vector<DecompTree> flat;
    flat.reserve(node.children.size());
    for (auto& child : node.children) {
        flatten(child);
        if (child.kind == node.kind) {
            for (auto& grandchild : child.children) flat.push_back(std::move(grandchild));
        } else {
            flat.push_back(std::move(child));
        }
    }
    node.children = std::move(flat);
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error("invalid decomposition tree: " + first_message(report)), report_(std::move(report)) {}

ValidationReport validate(const DecompTree& tree) {
    Validator v;
    v.visit(tree, "root");
    std::uint32_t next = 0;
    v.check_ranges(tree, "root", next);
    return std::move(v.report);
}

DecompTree normalize(const DecompTree& tree) {
    DecompTree out = tree;
    flatten(out);
    out.assign_leaf_indices();
    auto report = validate(out);
    if (!report.ok()) throw ValidationError(std::move(report));
    return out;
}

// ---------------------------------------------------------------- graphs

LabeledGraph::LabeledGraph(std::vector<VertexLabel> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), adjacency_(vertices_.size()) {
    for (const auto& e : edges_) {
        if (e.u >= vertices_.size() || e.v >= vertices_.size())
            throw std::out_of_range("edge endpoint out of range");
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
}

std::int64_t LabeledGraph::find(const VertexLabel& label) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), label);
    return it == vertices_.end() ? -1 : static_cast<std::int64_t>(it - vertices_.begin());
}

std::uint32_t LabeledGraph::index_of(const VertexLabel& label) const {
    auto i = find(label);
    if (i < 0) throw std::out_of_range("unknown vertex " + label.str());
    return static_cast<std::uint32_t>(i);
}

std::int64_t LabeledGraph::edge_between(std::uint32_t u, std::uint32_t v) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return static_cast<std::int64_t>(i);
    }
    return -1;
}

bool LabeledGraph::connected() const {
    if (vertices_.empty()) return true;
    UnionFind uf(vertices_.size());
    for (const auto& e : edges_) uf.unite(e.u, e.v);
    return uf.components() == 1;
}

LabeledGraph underlying_graph(const DecompTree& tree) {
    std::vector<VertexLabel> vertices;
    std::unordered_map<VertexLabel, std::uint32_t> index;
    std::vector<LabeledGraph::Edge> edges;
    auto id = [&](const VertexLabel& l) {
        auto [it, inserted] = index.try_emplace(l, static_cast<std::uint32_t>(vertices.size()));
        if (inserted) vertices.push_back(l);
        return it->second;
    };
    std::function<void(const DecompTree&)> walk = [&](const DecompTree& node) {
        if (node.kind == NodeKind::Leaf) {
            auto u = id(node.source);
            auto v = id(node.target);
            edges.push_back({u, v});
            return;
        }
        for (const auto& c : node.children) walk(c);
    };
    id(tree.source);
    id(tree.target);
    walk(tree);
    return LabeledGraph(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------- edge sets

EdgeSet::EdgeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

EdgeSet::EdgeSet(std::size_t universe, std::span<const std::uint32_t> members) : EdgeSet(universe) {
    for (auto m : members) insert(m);
}

bool EdgeSet::contains(std::uint32_t index) const noexcept {
    if (index >= universe_) return false;
    return (words_[index >> 6] >> (index & 63)) & 1u;
}

void EdgeSet::insert(std::uint32_t index) {
    if (index >= universe_) throw std::out_of_range("edge index outside edge set universe");
    auto& w = words_[index >> 6];
    auto bit = std::uint64_t{1} << (index & 63);
    if (!(w & bit)) {
        w |= bit;
        ++count_;
    }
}

void EdgeSet::erase(std::uint32_t index) {
    if (index >= universe_) return;
    auto& w = words_[index >> 6];
    auto bit = std::uint64_t{1} << (index & 63);
    if (w & bit) {
        w &= ~bit;
        --count_;
    }
}

std::vector<std::uint32_t> EdgeSet::members() const {
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        auto w = words_[wi];
        while (w) {
            auto bit = static_cast<std::uint32_t>(std::countr_zero(w));
            out.push_back(static_cast<std::uint32_t>(wi * 64) + bit);
            w &= w - 1;
        }
    }
    return out;
}

std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) noexcept {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    auto am = a.members();
    auto bm = b.members();
    return std::lexicographical_compare_three_way(am.begin(), am.end(), bm.begin(), bm.end());
}

std::size_t EdgeSet::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ universe_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
}

std::uint32_t UnionFind::find(std::uint32_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
}

EdgeSetClass classify_edge_set(const LabeledGraph& graph, const EdgeSet& es) {
    const auto n = graph.vertex_count();
    UnionFind uf(n);
    std::size_t count = 0;
    for (auto i : es.members()) {
        if (i >= graph.edge_count()) return EdgeSetClass::Other;
        const auto& e = graph.edges()[i];
        if (!uf.unite(e.u, e.v)) return EdgeSetClass::Other;  // cycle
        ++count;
    }
    if (n >= 1 && count == n - 1) return EdgeSetClass::SpanningTree;
    if (n >= 2 && count == n - 2) return EdgeSetClass::NearTree;
    return EdgeSetClass::Other;
}

bool separates_terminals(const LabeledGraph& graph, const EdgeSet& es, std::uint32_t s, std::uint32_t t) {
    if (classify_edge_set(graph, es) != EdgeSetClass::NearTree) return false;
    UnionFind uf(graph.vertex_count());
    for (auto i : es.members()) uf.unite(graph.edges()[i].u, graph.edges()[i].v);
    return uf.find(s) != uf.find(t);
}

std::string to_string(EdgeSetClass c) {
    switch (c) {
        case EdgeSetClass::SpanningTree: return "SpanningTree";
        case EdgeSetClass::NearTree: return "NearTree";
        case EdgeSetClass::Other: return "Other";
    }
    return "Other";
}

}  // namespace spenum
