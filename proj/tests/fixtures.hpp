#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spenum/core.hpp"
#include "spenum/input.hpp"

namespace fixtures {

using spenum::DecompTree;
using spenum::NodeKind;
using spenum::VertexLabel;

inline constexpr const char* kDiamond = "P(e(2,3),S(e(2,1),e(1,3)),S(e(2,4),e(4,3)))";
inline constexpr const char* kTheta133 = "P(e(s,t),S(e(s,a),e(a,b),e(b,t)),S(e(s,c),e(c,d),e(d,t)))";
inline constexpr const char* kFourCycle = "P(S(e(s,a),e(a,t)),S(e(s,b),e(b,t)))";

inline DecompTree diamond() { return spenum::parse_sp(kDiamond); }
inline DecompTree theta133() { return spenum::parse_sp(kTheta133); }

inline std::string v(std::size_t i) { return "v" + std::to_string(i); }

/// Path v0 - v1 - ... - vk.
inline DecompTree chain(std::size_t k, const std::string& prefix = "v") {
    if (k == 1) return DecompTree::leaf(prefix + "0", prefix + "1");
    std::vector<DecompTree> edges;
    for (std::size_t i = 0; i < k; ++i)
        edges.push_back(DecompTree::leaf(prefix + std::to_string(i), prefix + std::to_string(i + 1)));
    return spenum::normalize(DecompTree::series(std::move(edges)));
}

/// m internally disjoint paths of `len` edges between s and t.
inline DecompTree bundle(std::size_t m, std::size_t len) {
    std::vector<DecompTree> paths;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<DecompTree> edges;
        for (std::size_t i = 0; i < len; ++i) {
            auto a = i == 0 ? std::string("s") : "p" + std::to_string(j) + "_" + std::to_string(i);
            auto b = i + 1 == len ? std::string("t") : "p" + std::to_string(j) + "_" + std::to_string(i + 1);
            edges.push_back(DecompTree::leaf(a, b));
        }
        paths.push_back(len == 1 ? edges.front() : DecompTree::series(std::move(edges)));
    }
    return spenum::normalize(DecompTree::parallel(std::move(paths)));
}

/// Copy with every vertex renamed: terminals go to `s`/`t`, everything else gets `prefix`.
inline DecompTree rename(const DecompTree& n, const std::string& prefix, const VertexLabel& old_s,
                         const VertexLabel& old_t, const VertexLabel& s, const VertexLabel& t) {
    auto f = [&](const VertexLabel& x) {
        if (x == old_s) return s;
        if (x == old_t) return t;
        return VertexLabel(prefix + x.str());
    };
    if (n.is_leaf()) return DecompTree::leaf(f(n.source), f(n.target));
    std::vector<DecompTree> ch;
    for (const auto& c : n.children) ch.push_back(rename(c, prefix, old_s, old_t, s, t));
    return n.kind == NodeKind::Series ? DecompTree::series(std::move(ch)) : DecompTree::parallel(std::move(ch));
}

/// Fresh copy of `x` sharing only the given terminals.
inline DecompTree copy_between(const DecompTree& x, const std::string& prefix, const VertexLabel& s,
                               const VertexLabel& t) {
    return rename(x, prefix, x.source, x.target, s, t);
}

/// S(A, reversed A), which always has a terminal-exchanging automorphism.
inline DecompTree mirror_series(const DecompTree& a) {
    auto r = spenum::reversed(a);
    auto tail = copy_between(r, "m", a.target, VertexLabel("mend"));
    return spenum::normalize(DecompTree::series({a, tail}));
}

/// P(A, reversed A) for a series A.
inline DecompTree mirror_parallel(const DecompTree& a) {
    auto r = spenum::reversed(a);
    auto other = copy_between(r, "m", a.source, a.target);
    return spenum::normalize(DecompTree::parallel({a, other}));
}

inline std::size_t vertex_count(const DecompTree& t) { return spenum::underlying_graph(t).vertex_count(); }

/// Deterministic random instances with min_n <= n <= max_n.
inline std::vector<DecompTree> random_corpus(std::size_t count, std::size_t min_n, std::size_t max_n,
                                             std::uint64_t seed0 = 1) {
    std::vector<DecompTree> out;
    for (std::uint64_t seed = seed0; out.size() < count; ++seed) {
        spenum::RandomSpParams p;
        p.seed = seed;
        p.max_depth = 3 + static_cast<unsigned>(seed % 3);
        p.max_children = 3 + static_cast<unsigned>(seed % 2);
        p.leaf_bias = 0.15 + 0.1 * static_cast<double>(seed % 3);
        auto t = spenum::random_sp(p);
        auto n = vertex_count(t);
        if (n >= min_n && n <= max_n) out.push_back(std::move(t));
    }
    return out;
}

/// Instances built to have a terminal-exchanging automorphism, n <= max_n.
inline std::vector<DecompTree> mirror_corpus(std::size_t count, std::size_t max_n, std::uint64_t seed0 = 1) {
    std::vector<DecompTree> out;
    for (std::uint64_t seed = seed0; out.size() < count; ++seed) {
        spenum::RandomSpParams p;
        p.seed = seed;
        p.max_depth = 2 + static_cast<unsigned>(seed % 3);
        p.leaf_bias = 0.25;
        auto base = spenum::random_sp(p);
        DecompTree t = base;
        if (seed % 2 == 0 && base.kind == NodeKind::Series) t = mirror_parallel(base);
        else t = mirror_series(base);
        if (vertex_count(t) <= max_n && vertex_count(t) >= 4) out.push_back(std::move(t));
    }
    return out;
}

}  // namespace fixtures
