#include "spenum/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace spenum {

// ---------------------------------------------------------------- codes

CanonicalCode CanonicalCode::edge() {
    CanonicalCode c;
    c.tokens_.push_back(static_cast<char>(Token::Edge));
    return c;
}

CanonicalCode CanonicalCode::series(const std::vector<const CanonicalCode*>& children) {
    CanonicalCode c;
    c.tokens_.push_back(static_cast<char>(Token::Series));
    c.tokens_.push_back(static_cast<char>(Token::Open));
    for (const auto* child : children) c.tokens_ += child->tokens_;
    c.tokens_.push_back(static_cast<char>(Token::Close));
    return c;
}

CanonicalCode CanonicalCode::parallel(std::vector<const CanonicalCode*> children) {
    std::stable_sort(children.begin(), children.end(),
                     [](const CanonicalCode* a, const CanonicalCode* b) { return *a > *b; });
    CanonicalCode c;
    c.tokens_.push_back(static_cast<char>(Token::Parallel));
    c.tokens_.push_back(static_cast<char>(Token::Open));
    for (const auto* child : children) c.tokens_ += child->tokens_;
    c.tokens_.push_back(static_cast<char>(Token::Close));
    return c;
}

std::string CanonicalCode::to_string() const {
    static constexpr char kLetters[] = {'S', 'P', 'E', '(', ')'};
    std::string out;
    out.reserve(tokens_.size());
    for (char t : tokens_) out.push_back(kLetters[static_cast<unsigned char>(t)]);
    return out;
}

namespace {

struct Canon {
    CanonicalCode code;
    std::vector<std::uint32_t> order;
};

Canon canonicalize(const DecompTree& node, bool reverse) {
    if (node.kind == NodeKind::Leaf) return {CanonicalCode::edge(), {node.leaves.begin}};

    std::vector<Canon> parts;
    parts.reserve(node.children.size());
    for (const auto& c : node.children) parts.push_back(canonicalize(c, reverse));

    std::vector<std::size_t> idx(parts.size());
    std::iota(idx.begin(), idx.end(), 0);
    if (node.kind == NodeKind::Series) {
        if (reverse) std::reverse(idx.begin(), idx.end());
    } else {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return parts[a].code > parts[b].code; });
    }

    Canon out;
    std::vector<const CanonicalCode*> codes;
    for (auto i : idx) {
        codes.push_back(&parts[i].code);
        out.order.insert(out.order.end(), parts[i].order.begin(), parts[i].order.end());
    }
    out.code = node.kind == NodeKind::Series ? CanonicalCode::series(codes) : CanonicalCode::parallel(codes);
    return out;
}

CanonicalCode code_only(const DecompTree& node, bool reverse) {
    if (node.kind == NodeKind::Leaf) return CanonicalCode::edge();
    std::vector<CanonicalCode> parts;
    parts.reserve(node.children.size());
    for (const auto& c : node.children) parts.push_back(code_only(c, reverse));
    std::vector<const CanonicalCode*> ptrs;
    for (auto& p : parts) ptrs.push_back(&p);
    if (node.kind == NodeKind::Series) {
        if (reverse) std::reverse(ptrs.begin(), ptrs.end());
        return CanonicalCode::series(ptrs);
    }
    return CanonicalCode::parallel(std::move(ptrs));
}

void collect_leaves(const DecompTree& node, std::unordered_map<std::uint32_t, const DecompTree*>& out) {
    if (node.kind == NodeKind::Leaf) {
        out[node.leaves.begin] = &node;
        return;
    }
    for (const auto& c : node.children) collect_leaves(c, out);
}

std::optional<LeafBijection> build_map(const DecompTree& a, bool reverse_a, const DecompTree& b) {
    auto ca = canonicalize(a, reverse_a);
    auto cb = canonicalize(b, false);
    if (ca.code != cb.code) return std::nullopt;

    std::unordered_map<std::uint32_t, const DecompTree*> la, lb;
    collect_leaves(a, la);
    collect_leaves(b, lb);

    LeafBijection map;
    map.leaves.reserve(ca.order.size());
    for (std::size_t i = 0; i < ca.order.size(); ++i) {
        map.leaves.emplace_back(ca.order[i], cb.order[i]);
        const auto* x = la.at(ca.order[i]);
        const auto* y = lb.at(cb.order[i]);
        const auto& xs = reverse_a ? x->target : x->source;
        const auto& xt = reverse_a ? x->source : x->target;
        map.vertices.emplace(xs, y->source);
        map.vertices.emplace(xt, y->target);
    }
    std::sort(map.leaves.begin(), map.leaves.end());
    if (!verify_bijection(a, b, map, reverse_a))
        throw std::logic_error("canonical order produced a non-isomorphism");
    return map;
}

}  // namespace

CanonicalCode canonical_code(const DecompTree& tree) { return code_only(tree, false); }
CanonicalCode canonical_code(const OrientedSP& g) { return canonical_code(g.tree); }
CanonicalCode reversal_code(const DecompTree& tree) { return code_only(tree, true); }
CanonicalCode reversal_code(const OrientedSP& g) { return reversal_code(g.tree); }

std::vector<std::uint32_t> canonical_leaf_order(const DecompTree& tree, bool reverse) {
    return canonicalize(tree, reverse).order;
}

// ---------------------------------------------------------------- bijections

std::optional<std::uint32_t> LeafBijection::image(std::uint32_t leaf) const {
    auto it = std::lower_bound(leaves.begin(), leaves.end(), std::make_pair(leaf, std::uint32_t{0}));
    if (it == leaves.end() || it->first != leaf) return std::nullopt;
    return it->second;
}

EdgeSet LeafBijection::apply(const EdgeSet& es) const {
    EdgeSet out(es.universe());
    for (auto m : es.members()) {
        auto img = image(m);
        if (!img) throw std::out_of_range("edge outside the bijection's domain");
        out.insert(*img);
    }
    return out;
}

LeafBijection LeafBijection::inverse() const {
    LeafBijection inv;
    inv.leaves.reserve(leaves.size());
    for (auto [a, b] : leaves) inv.leaves.emplace_back(b, a);
    std::sort(inv.leaves.begin(), inv.leaves.end());
    for (const auto& [u, v] : vertices) inv.vertices.emplace(v, u);
    return inv;
}

bool LeafBijection::is_identity() const {
    return std::all_of(leaves.begin(), leaves.end(), [](const auto& p) { return p.first == p.second; });
}

bool verify_bijection(const DecompTree& from, const DecompTree& to, const LeafBijection& map, bool reversing) {
    std::unordered_map<std::uint32_t, const DecompTree*> lf, lt;
    collect_leaves(from, lf);
    collect_leaves(to, lt);
    if (lf.size() != lt.size() || map.leaves.size() != lf.size()) return false;

    std::map<VertexLabel, VertexLabel> vmap;
    std::map<VertexLabel, VertexLabel> back;
    auto bind = [&](const VertexLabel& x, const VertexLabel& y) {
        auto [it, fresh] = vmap.emplace(x, y);
        if (!fresh && it->second != y) return false;
        auto [jt, fresh2] = back.emplace(y, x);
        return fresh2 ? true : jt->second == x;
    };
    std::vector<char> hit(lt.size(), 0);
    for (auto [a, b] : map.leaves) {
        auto ia = lf.find(a);
        auto ib = lt.find(b);
        if (ia == lf.end() || ib == lt.end()) return false;
        auto slot = b - to.leaves.begin;
        if (slot >= hit.size() || hit[slot]) return false;
        hit[slot] = 1;
        const auto* x = ia->second;
        const auto* y = ib->second;
        bool ok = reversing ? bind(x->source, y->target) && bind(x->target, y->source)
                            : bind(x->source, y->source) && bind(x->target, y->target);
        if (!ok) return false;
    }
    auto want_s = reversing ? to.target : to.source;
    auto want_t = reversing ? to.source : to.target;
    if (vmap.at(from.source) != want_s || vmap.at(from.target) != want_t) return false;
    return map.vertices.empty() || map.vertices == vmap;
}

std::optional<LeafBijection> iso_map(const DecompTree& a, const DecompTree& b) { return build_map(a, false, b); }

std::optional<LeafBijection> iso_map(const OrientedSP& a, const OrientedSP& b) { return iso_map(a.tree, b.tree); }

std::optional<LeafBijection> reversal_map(const DecompTree& a, const DecompTree& b) { return build_map(a, true, b); }

// ---------------------------------------------------------------- classes and mirrors

IsoClassPartition partition_classes(const DecompTree& node) {
    if (node.kind != NodeKind::Parallel) throw std::invalid_argument("partition_classes needs a parallel node");
    std::vector<CanonicalCode> codes;
    codes.reserve(node.children.size());
    for (const auto& c : node.children) codes.push_back(canonical_code(c));

    // One pass over the children, grouped by code.
    std::map<CanonicalCode, std::vector<std::size_t>, std::greater<>> groups;
    for (std::size_t i = 0; i < codes.size(); ++i) groups[codes[i]].push_back(i);

    IsoClassPartition out;
    for (auto& [code, members] : groups) {
        IsoClass cls;
        cls.representative = members.front();
        cls.members = members;
        cls.code = code;
        for (auto m : members) {
            auto map = iso_map(node.children[m], node.children[cls.representative]);
            if (!map) throw std::logic_error("equal codes without isomorphism");
            cls.to_representative.push_back(std::move(*map));
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

std::optional<MirrorPairing> mirror_pairing(const DecompTree& node) {
    MirrorPairing out;
    out.kind = node.kind;
    if (node.kind == NodeKind::Leaf) {
        out.series_maps.push_back(*reversal_map(node, node));
        return out;
    }
    if (node.kind == NodeKind::Series) {
        const auto k = node.children.size();
        for (std::size_t i = 0; i < k; ++i) {
            auto r = reversal_map(node.children[i], node.children[k - 1 - i]);
            if (!r) return std::nullopt;
            out.series_maps.push_back(std::move(*r));
        }
        return out;
    }
    auto partition = partition_classes(node);
    for (std::size_t i = 0; i < partition.classes.size(); ++i) {
        const auto& rep = node.children[partition.classes[i].representative];
        auto want = reversal_code(rep);
        auto it = std::find_if(partition.classes.begin(), partition.classes.end(),
                               [&](const IsoClass& c) { return c.code == want; });
        if (it == partition.classes.end()) return std::nullopt;
        auto j = static_cast<std::size_t>(it - partition.classes.begin());
        if (partition.classes[j].members.size() != partition.classes[i].members.size()) return std::nullopt;
        auto r = reversal_map(rep, node.children[it->representative]);
        out.class_pairs.push_back({i, j, std::move(*r)});
    }
    return out;
}

std::optional<LeafBijection> reversal_automorphism(const DecompTree& tree) { return reversal_map(tree, tree); }

}  // namespace spenum
