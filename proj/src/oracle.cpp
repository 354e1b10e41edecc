#include "spenum/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace spenum::oracle {

bool VertexPermutation::is_identity() const {
    for (std::uint32_t v = 0; v < image.size(); ++v)
        if (image[v] != v) return false;
    return true;
}

VertexPermutation VertexPermutation::compose(const VertexPermutation& first) const {
    VertexPermutation out;
    out.image.resize(first.image.size());
    for (std::size_t v = 0; v < first.image.size(); ++v) out.image[v] = image[first.image[v]];
    return out;
}

namespace {

void check_limit(const LabeledGraph& g, std::size_t limit) {
    if (g.vertex_count() > limit)
        throw LimitExceeded("graph has " + std::to_string(g.vertex_count()) + " vertices, oracle limit is " +
                            std::to_string(limit));
}

// Backtracking over edge inclusion, pruning on cycles and on too few remaining edges.
std::vector<EdgeSet> acyclic_sets(const LabeledGraph& g, std::size_t want) {
    const auto m = g.edge_count();
    std::vector<EdgeSet> out;
    std::vector<std::uint32_t> chosen;

    std::function<void(std::size_t, std::vector<std::uint32_t>&)> rec = [&](std::size_t i, std::vector<std::uint32_t>& comp) {
        if (chosen.size() == want) {
            out.emplace_back(m, chosen);
            return;
        }
        if (m - i < want - chosen.size()) return;
        const auto& e = g.edges()[i];
        if (comp[e.u] != comp[e.v]) {
            auto saved = comp;
            auto from = comp[e.v];
            auto to = comp[e.u];
            for (auto& c : comp)
                if (c == from) c = to;
            chosen.push_back(static_cast<std::uint32_t>(i));
            rec(i + 1, comp);
            chosen.pop_back();
            comp = std::move(saved);
        }
        rec(i + 1, comp);
    };
    std::vector<std::uint32_t> comp(g.vertex_count());
    for (std::uint32_t v = 0; v < comp.size(); ++v) comp[v] = v;
    rec(0, comp);
    return out;
}

}  // namespace

std::vector<EdgeSet> all_spanning_trees(const LabeledGraph& g, std::size_t vertex_limit) {
    check_limit(g, vertex_limit);
    if (g.vertex_count() == 0) return {};
    return acyclic_sets(g, g.vertex_count() - 1);
}

std::vector<EdgeSet> all_separating_forests(const LabeledGraph& g, std::uint32_t s, std::uint32_t t,
                                            std::size_t vertex_limit) {
    check_limit(g, vertex_limit);
    if (g.vertex_count() < 2) return {};
    auto all = acyclic_sets(g, g.vertex_count() - 2);
    std::erase_if(all, [&](const EdgeSet& es) { return !separates_terminals(g, es, s, t); });
    return all;
}

std::vector<VertexPermutation> automorphisms(const LabeledGraph& g, const FixPolicy& policy, std::size_t vertex_limit) {
    check_limit(g, vertex_limit);
    const auto n = static_cast<std::uint32_t>(g.vertex_count());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<std::size_t> degree(n);
    for (std::uint32_t v = 0; v < n; ++v) degree[v] = g.neighbors(v).size();

    auto allowed = [&](std::uint32_t v, std::uint32_t w) {
        return std::visit(
            [&](const auto& p) -> bool {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, FixBoth>) {
                    if (v == p.s || v == p.t) return w == v;
                    return w != p.s && w != p.t;
                } else if constexpr (std::is_same_v<P, FixSet>) {
                    bool vt = v == p.s || v == p.t;
                    bool wt = w == p.s || w == p.t;
                    return vt == wt;
                } else {
                    return true;
                }
            },
            policy);
    };

    std::vector<VertexPermutation> out;
    std::vector<std::uint32_t> image(n, 0);
    std::vector<char> used(n, 0);
    std::function<void(std::uint32_t)> extend = [&](std::uint32_t v) {
        if (v == n) {
            out.push_back({image});
            return;
        }
        for (std::uint32_t w = 0; w < n; ++w) {
            if (used[w] || degree[w] != degree[v] || !allowed(v, w)) continue;
            bool ok = true;
            for (std::uint32_t u = 0; u < v && ok; ++u) ok = adj[u][v] == adj[image[u]][w];
            if (!ok) continue;
            used[w] = 1;
            image[v] = w;
            extend(v + 1);
            used[w] = 0;
        }
    };
    extend(0);
    return out;
}

std::vector<std::uint32_t> edge_permutation(const LabeledGraph& g, const VertexPermutation& sigma) {
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    auto key = [](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) index[key(g.edges()[i].u, g.edges()[i].v)] = i;
    std::vector<std::uint32_t> out(g.edge_count());
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edges()[i];
        auto it = index.find(key(sigma.image[e.u], sigma.image[e.v]));
        if (it == index.end()) throw std::invalid_argument("permutation is not an automorphism");
        out[i] = it->second;
    }
    return out;
}

EdgeSet apply(const std::vector<std::uint32_t>& edge_perm, const EdgeSet& es) {
    EdgeSet out(es.universe());
    for (auto m : es.members()) out.insert(edge_perm[m]);
    return out;
}

OrbitReport orbit_partition(const std::vector<EdgeSet>& trees, const std::vector<VertexPermutation>& autos,
                            const LabeledGraph& g) {
    std::vector<std::vector<std::uint32_t>> perms;
    perms.reserve(autos.size());
    for (const auto& a : autos) perms.push_back(edge_permutation(g, a));

    std::unordered_map<EdgeSet, std::size_t, EdgeSetHash> position;
    for (std::size_t i = 0; i < trees.size(); ++i) position.emplace(trees[i], i);

    OrbitReport report;
    report.group_order = autos.size();
    std::vector<std::int64_t> orbit_of(trees.size(), -1);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (orbit_of[i] >= 0) continue;
        // trees[i] matches no earlier representative: it opens a new orbit.
        const auto id = static_cast<std::int64_t>(report.orbits.size());
        report.orbits.push_back({trees[i], {}});
        for (const auto& p : perms) {
            auto img = apply(p, trees[i]);
            auto it = position.find(img);
            if (it == position.end()) throw std::invalid_argument("tree set is not closed under the group");
            orbit_of[it->second] = id;
        }
    }
    for (std::size_t i = 0; i < trees.size(); ++i) report.orbits[static_cast<std::size_t>(orbit_of[i])].members.push_back(trees[i]);
    return report;
}

BigInt kirchhoff_count(const LabeledGraph& g) {
    const auto n = g.vertex_count();
    if (n <= 1) return 1;
    const auto r = n - 1;  // drop vertex 0
    std::vector<std::vector<BigInt>> a(r, std::vector<BigInt>(r, 0));
    for (const auto& e : g.edges()) {
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            if (x == 0) continue;
            a[x - 1][x - 1] += 1;
            if (y != 0) a[x - 1][y - 1] -= 1;
        }
    }
    // Bareiss elimination: every division below is exact.
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < r; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < r && a[p][k] == 0) ++p;
            if (p == r) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < r; ++i) {
            for (std::size_t j = k + 1; j < r; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    BigInt det = a[r - 1][r - 1] * sign;
    return det;
}

BigInt burnside_count(const std::vector<EdgeSet>& trees, const std::vector<VertexPermutation>& autos,
                      const LabeledGraph& g) {
    if (autos.empty()) throw NonIntegralResult("empty group");
    BigInt fixed = 0;
    for (const auto& a : autos) {
        auto p = edge_permutation(g, a);
        for (const auto& t : trees) {
            bool stable = true;
            for (auto m : t.members()) {
                if (!t.contains(p[m])) {
                    stable = false;
                    break;
                }
            }
            if (stable) ++fixed;
        }
    }
    BigInt order = autos.size();
    if (fixed % order != 0) throw NonIntegralResult("fixed-point total is not divisible by the group order");
    return fixed / order;
}

}  // namespace spenum::oracle
