#include "spenum/semioriented.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "spenum/oracle.hpp"

namespace spenum {

bool IndexPermutation::is_bijection() const {
    std::vector<char> seen(image.size(), 0);
    for (auto y : image) {
        if (y >= image.size() || seen[y]) return false;
        seen[y] = 1;
    }
    return true;
}

bool IndexPermutation::inverts(const IndexPermutation& back) const {
    if (back.size() != size()) return false;
    for (std::size_t x = 0; x < image.size(); ++x)
        if (image[x] >= back.size() || back.image[image[x]] != x) return false;
    return true;
}

namespace {

std::uint64_t u64(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::overflow_error("count exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

// Permutation between two subtrees of one instance, addressed by shape and
// first canonical position.
IndexPermutation slice_perm(SpInstance& inst, ShapeId from, std::uint32_t from_off, ShapeId to, std::uint32_t to_off,
                            const LeafBijection& r, TreeKind kind) {
    auto& table = inst.shapes();
    const auto& list = table.trees(from, kind);
    const auto to_leaves = table.at(to).leaves;
    IndexPermutation out;
    out.image.reserve(list.size());
    for (const auto& t : list) {
        auto img = r.apply(inst.to_edge_set(t, from_off));
        auto flags = inst.position_flags(img, to_off, to_leaves);
        auto loc = table.locate(to, flags);
        if (!loc || loc->kind != kind) throw ImageNotFound("reversal image has no index in the mirror's list");
        out.image.push_back(loc->index);
    }
    return out;
}

// Root-level partner computation. partner(x) is the oriented index of the
// orbit of r(T_x); index order coincides with lexicographic tuple order.
class PartnerMap {
public:
    PartnerMap(SpInstance& inst, const MirrorPairing& mirror) : inst_(inst) {
        auto& table = inst_.shapes();
        const Shape& s = table.at(inst_.root());
        if (s.kind == NodeKind::Series) init_series(s, mirror);
        else if (s.kind == NodeKind::Parallel) init_parallel(s, mirror);
    }

    std::uint64_t operator()(std::uint64_t x) const {
        const Shape& s = inst_.shapes().at(inst_.root());
        if (s.kind == NodeKind::Leaf) return x;
        return s.kind == NodeKind::Series ? series_partner(x) : parallel_partner(x);
    }

private:
    SpInstance& inst_;

    // series
    std::vector<std::uint64_t> radix_;
    std::vector<IndexPermutation> perm_;

    // parallel
    struct ClassInfo {
        std::uint32_t partner;
        std::uint32_t near_count;
        std::uint32_t size;
        std::uint64_t span_count;
        std::uint64_t rest;  // multisets of size-1
        std::uint64_t full;  // multisets of size
        IndexPermutation st, nt;
        std::vector<std::vector<std::uint32_t>> ms_full, ms_rest;
    };
    std::vector<ClassInfo> classes_;
    std::vector<std::uint64_t> block_;  // spanning-holder block sizes

    void init_series(const Shape& s, const MirrorPairing& mirror) {
        const auto k = s.children.size();
        auto& table = inst_.shapes();
        for (std::size_t i = 0; i < k; ++i) {
            radix_.push_back(table.count64(s.children[i], TreeKind::Spanning));
            perm_.push_back(slice_perm(inst_, s.children[i], s.offsets[i], s.children[k - 1 - i], s.offsets[k - 1 - i],
                                       mirror.series_maps.at(i), TreeKind::Spanning));
        }
    }

    std::uint64_t radix(std::size_t c, bool holds) const {
        const auto& ci = classes_[c];
        return holds ? ci.span_count * ci.rest : ci.full;
    }

    void init_parallel(const Shape& s, const MirrorPairing& mirror) {
        auto& table = inst_.shapes();
        const auto n = s.classes.size();
        for (std::size_t c = 0; c < n; ++c) {
            const auto& cls = s.classes[c];
            const auto& pair = mirror.class_pairs.at(c);
            const auto& other = s.classes.at(pair.backward);
            if (other.shape != table.reverse(cls.shape) || other.size != cls.size)
                throw std::logic_error("mirror pairing disagrees with shape table");
            ClassInfo ci;
            ci.partner = static_cast<std::uint32_t>(pair.backward);
            ci.size = cls.size;
            ci.near_count = static_cast<std::uint32_t>(table.count64(cls.shape, TreeKind::Near));
            ci.span_count = table.count64(cls.shape, TreeKind::Spanning);
            ci.full = u64(multiset_count(ci.near_count, ci.size));
            ci.rest = u64(multiset_count(ci.near_count, ci.size - 1));
            ci.st = slice_perm(inst_, cls.shape, s.offsets[cls.first], other.shape, s.offsets[other.first], pair.map,
                               TreeKind::Spanning);
            ci.nt = slice_perm(inst_, cls.shape, s.offsets[cls.first], other.shape, s.offsets[other.first], pair.map,
                               TreeKind::Near);
            ci.ms_full = multiset_enumerate(ci.near_count, ci.size);
            ci.ms_rest = multiset_enumerate(ci.near_count, ci.size - 1);
            classes_.push_back(std::move(ci));
        }
        for (std::size_t a = 0; a < n; ++a) {
            std::uint64_t b = 1;
            for (std::size_t c = 0; c < n; ++c) b *= radix(c, c == a);
            block_.push_back(b);
        }
    }

    std::uint64_t series_partner(std::uint64_t x) const {
        const auto k = radix_.size();
        std::vector<std::uint64_t> a(k);
        for (std::size_t i = k; i > 0; --i) {
            a[i - 1] = x % radix_[i - 1];
            x /= radix_[i - 1];
        }
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < k; ++i) out = out * radix_[i] + perm_[k - 1 - i](a[k - 1 - i]);
        return out;
    }

    std::uint64_t parallel_partner(std::uint64_t x) const {
        const auto n = classes_.size();
        std::size_t a = 0;
        while (x >= block_[a]) x -= block_[a++];
        std::vector<std::uint64_t> comp(n);
        for (std::size_t c = n; c > 0; --c) {
            auto r = radix(c - 1, c - 1 == a);
            comp[c - 1] = x % r;
            x /= r;
        }

        const auto a2 = classes_[a].partner;
        std::vector<std::uint64_t> image(n);
        for (std::size_t c = 0; c < n; ++c) {
            const auto& ci = classes_[c];
            const bool holds = c == a;
            const auto& ms = holds ? ci.ms_rest[comp[c] % ci.rest] : ci.ms_full[comp[c]];
            std::vector<std::uint32_t> mapped;
            mapped.reserve(ms.size());
            for (auto v : ms) mapped.push_back(static_cast<std::uint32_t>(ci.nt(v)));
            std::sort(mapped.begin(), mapped.end());
            auto rank = multiset_rank(mapped, ci.near_count);
            if (holds) rank += ci.st(comp[c] / ci.rest) * ci.rest;
            image[ci.partner] = rank;
        }
        std::uint64_t out = 0;
        for (std::size_t b = 0; b < a2; ++b) out += block_[b];
        std::uint64_t idx = 0;
        for (std::size_t d = 0; d < n; ++d) idx = idx * radix(d, d == a2) + image[d];
        return out + idx;
    }
};

void oracle_check(const SemiorientedSP& g, const TreeList& trees) {
    auto graph = underlying_graph(g.tree);
    const auto s = graph.index_of(g.tree.source);
    const auto t = graph.index_of(g.tree.target);
    auto all = oracle::all_spanning_trees(graph);
    auto autos = oracle::automorphisms(graph, oracle::FixSet{s, t});
    auto report = oracle::orbit_partition(all, autos, graph);
    std::unordered_map<EdgeSet, std::size_t, EdgeSetHash> orbit_of;
    for (std::size_t o = 0; o < report.orbits.size(); ++o)
        for (const auto& m : report.orbits[o].members) orbit_of.emplace(m, o);
    std::vector<int> hits(report.orbits.size(), 0);
    for (const auto& tr : trees) {
        auto it = orbit_of.find(tr);
        if (it == orbit_of.end()) throw std::logic_error("emitted edge set is not a spanning tree");
        if (++hits[it->second] > 1) throw std::logic_error("duplicate orbit in semioriented output");
    }
    if (trees.size() != report.orbits.size()) throw std::logic_error("semioriented output misses an orbit");
}

}  // namespace

IndexPermutation reversal_index_perm(const OrientedSP& child, const OrientedSP& mirror, const LeafBijection& r,
                                     TreeKind kind) {
    SpInstance from(child.tree);
    SpInstance to(mirror.tree);
    const auto& list = from.shapes().trees(from.root(), kind);
    IndexPermutation out;
    out.image.reserve(list.size());
    for (const auto& t : list) {
        EdgeSet img(to.universe());
        for (auto leaf : from.to_edge_set(t).members()) {
            auto y = r.image(leaf);
            if (!y || *y >= to.universe()) throw ImageNotFound("bijection does not cover the child's leaves");
            img.insert(*y);
        }
        auto loc = to.locate(img);
        if (!loc || loc->kind != kind) throw ImageNotFound("reversal image has no index in the mirror's list");
        out.image.push_back(loc->index);
    }
    return out;
}

SemiorientedResult semioriented_enumerate(const SemiorientedSP& g, bool verify_with_oracle) {
    SemiorientedResult res;
    SpInstance inst(g.tree);
    const auto& list = inst.shapes().trees(inst.root(), TreeKind::Spanning);
    res.candidates = list.size();

    auto mirror = mirror_pairing(g.tree);
    res.has_reversal = mirror.has_value();
    if (!mirror) {
        res.trees.reserve(list.size());
        for (const auto& t : list) res.trees.push_back(inst.to_edge_set(t));
    } else {
        PartnerMap partner(inst, *mirror);
        for (std::uint64_t x = 0; x < list.size(); ++x) {
            auto y = partner(x);
            if (y == x) ++res.fixed_points;
            if (x >= y) res.trees.push_back(inst.to_edge_set(list[x]));
        }
    }
    if (verify_with_oracle) oracle_check(g, res.trees);
    return res;
}

TreeList semioriented_spanning(const SemiorientedSP& g, bool verify_with_oracle) {
    return semioriented_enumerate(g, verify_with_oracle).trees;
}

namespace {

// Size-q multisets over m items fixed by an involution with f fixed items.
BigInt fixed_multisets(const BigInt& f, const BigInt& m, std::uint32_t q) {
    const BigInt pairs = (m - f) / 2;
    BigInt total = 0;
    for (std::uint32_t w = 0; 2 * w <= q; ++w) total += multiset_count(pairs, w) * multiset_count(f, q - 2 * w);
    return total;
}

class FixedCounter {
public:
    explicit FixedCounter(ShapeTable& table) : table_(table) {}

    // Representatives of the given kind whose orbit the reversal maps to itself.
    const CountPair& fixed(ShapeId id) {
        if (auto it = memo_.find(id); it != memo_.end()) return it->second;
        if (!table_.self_reverse(id)) throw std::logic_error("fixed-point count of a non-self-reverse shape");
        const Shape s = table_.at(id);
        CountPair out;
        if (s.kind == NodeKind::Leaf) {
            out = {1, 1};
        } else if (s.kind == NodeKind::Series) {
            const auto k = s.children.size();
            BigInt pairs = 1;
            for (std::size_t i = 0; i < k / 2; ++i) pairs *= table_.counts(s.children[i]).spanning;
            if (k % 2 == 1) {
                const auto& mid = fixed(s.children[k / 2]);
                out = {pairs * mid.spanning, pairs * mid.near};
            } else {
                out = {pairs, 0};
            }
        } else {
            const auto n = s.classes.size();
            std::vector<std::size_t> partner(n);
            for (std::size_t c = 0; c < n; ++c) {
                auto want = table_.reverse(s.classes[c].shape);
                auto it = std::find_if(s.classes.begin(), s.classes.end(), [&](const auto& d) { return d.shape == want; });
                partner[c] = static_cast<std::size_t>(it - s.classes.begin());
            }
            // Contribution of class c when it holds no spanning tree.
            std::vector<BigInt> near_ways(n, 1);
            for (std::size_t c = 0; c < n; ++c) {
                const auto& cls = s.classes[c];
                const auto& cnt = table_.counts(cls.shape);
                if (partner[c] == c) near_ways[c] = fixed_multisets(fixed(cls.shape).near, cnt.near, cls.size);
                else if (c < partner[c]) near_ways[c] = multiset_count(cnt.near, cls.size);
            }
            out.near = 1;
            for (const auto& w : near_ways) out.near *= w;
            out.spanning = 0;
            for (std::size_t a = 0; a < n; ++a) {
                if (partner[a] != a) continue;
                const auto& cls = s.classes[a];
                const auto& fx = fixed(cls.shape);
                BigInt term = fx.spanning * fixed_multisets(fx.near, table_.counts(cls.shape).near, cls.size - 1);
                for (std::size_t c = 0; c < n; ++c)
                    if (c != a) term *= near_ways[c];
                out.spanning += term;
            }
        }
        return memo_.emplace(id, std::move(out)).first->second;
    }

private:
    ShapeTable& table_;
    std::map<ShapeId, CountPair> memo_;
};

}  // namespace

BigInt count_reversal_fixed(const SemiorientedSP& g) {
    ShapeTable table;
    auto root = table.intern(g.tree);
    if (!table.self_reverse(root)) return 0;
    return FixedCounter(table).fixed(root).spanning;
}

BigInt count_semioriented(const SemiorientedSP& g) {
    ShapeTable table;
    auto root = table.intern(g.tree);
    const auto& oriented = table.counts(root).spanning;
    if (!table.self_reverse(root)) return oriented;
    BigInt total = oriented + FixedCounter(table).fixed(root).spanning;
    if (total % 2 != 0) throw std::logic_error("odd orbit total under reversal");
    return total / 2;
}

}  // namespace spenum
