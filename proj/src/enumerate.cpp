#include "spenum/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace spenum {

// ---------------------------------------------------------------- combinatorics

BigInt binomial(const BigInt& n, const BigInt& k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt kk = k;
    if (kk > n - kk) kk = n - kk;
    BigInt result = 1;
    for (BigInt i = 0; i < kk; ++i) {
        result *= n - i;
        result /= i + 1;  // exact: result is C(n, i + 1) here
    }
    return result;
}

BigInt multiset_count(const BigInt& m, const BigInt& k) {
    if (k == 0) return 1;
    if (m <= 0) return 0;
    return binomial(m + k - 1, k);
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("tree index exceeds 64 bits");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("tree index exceeds 64 bits");
    return r;
}

std::uint64_t binom64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    __extension__ unsigned __int128 r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

// Size-k multisets over m items.
std::uint64_t multiset64(std::uint64_t m, std::uint64_t k) {
    if (k == 0) return 1;
    if (m == 0) return 0;
    return binom64(m + k - 1, k);
}

std::uint64_t to_u64(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<std::int64_t>::max())) throw std::overflow_error("count exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

std::vector<std::vector<std::uint32_t>> multiset_enumerate(std::uint32_t m, std::uint32_t k) {
    std::vector<std::vector<std::uint32_t>> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    if (m == 0) return out;
    std::vector<std::uint32_t> cur(k, 0);
    while (true) {
        out.push_back(cur);
        std::size_t p = k;
        while (p > 0 && cur[p - 1] == m - 1) --p;
        if (p == 0) break;
        auto v = cur[p - 1] + 1;
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(p - 1), cur.end(), v);
    }
    return out;
}

std::uint64_t multiset_rank(std::span<const std::uint32_t> seq, std::uint32_t m) {
    const std::uint64_t k = seq.size();
    std::uint64_t rank = 0;
    std::uint32_t low = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        for (std::uint32_t v = low; v < seq[i]; ++v) rank = checked_add(rank, multiset64(m - v, k - 1 - i));
        low = seq[i];
    }
    return rank;
}

std::vector<std::uint32_t> multiset_unrank(std::uint64_t rank, std::uint32_t m, std::uint32_t k) {
    if (rank >= multiset64(m, k)) throw std::out_of_range("multiset rank out of range");
    std::vector<std::uint32_t> out(k);
    std::uint32_t v = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        while (true) {
            auto block = multiset64(m - v, k - 1 - i);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        out[i] = v;
    }
    return out;
}

// ---------------------------------------------------------------- shapes

std::pair<ShapeId, std::vector<std::size_t>> ShapeTable::make(NodeKind kind, const std::vector<ShapeId>& children) {
    std::vector<std::size_t> perm(children.size());
    std::iota(perm.begin(), perm.end(), 0);
    if (kind == NodeKind::Parallel) {
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return shapes_[children[a]].code > shapes_[children[b]].code;
        });
    }

    Shape s;
    s.kind = kind;
    if (kind == NodeKind::Leaf) {
        s.code = CanonicalCode::edge();
    } else {
        std::vector<const CanonicalCode*> codes;
        std::uint32_t offset = 0;
        std::uint32_t vertices = 0;
        for (auto i : perm) {
            const auto& c = shapes_[children[i]];
            s.children.push_back(children[i]);
            s.offsets.push_back(offset);
            offset += c.leaves;
            vertices += c.vertices;
            codes.push_back(&c.code);
        }
        s.leaves = offset;
        const auto k = static_cast<std::uint32_t>(children.size());
        s.vertices = kind == NodeKind::Series ? vertices - (k - 1) : vertices - 2 * (k - 1);
        s.code = kind == NodeKind::Series ? CanonicalCode::series(codes) : CanonicalCode::parallel(codes);
        if (kind == NodeKind::Parallel) {
            for (std::uint32_t i = 0; i < k; ++i) {
                if (i > 0 && s.children[i] == s.children[i - 1]) ++s.classes.back().size;
                else s.classes.push_back({s.children[i], i, 1});
            }
        }
    }

    auto [it, fresh] = by_code_.try_emplace(s.code.bytes(), static_cast<ShapeId>(shapes_.size()));
    if (fresh) {
        shapes_.push_back(std::move(s));
        reverse_.emplace_back();
        counts_.emplace_back();
        lists_.emplace_back();
    }
    return {it->second, std::move(perm)};
}

ShapeId ShapeTable::intern(const DecompTree& node, bool reverse, std::vector<std::uint32_t>* leaf_order,
                           std::vector<std::size_t>* child_order) {
    if (node.kind == NodeKind::Leaf) {
        if (leaf_order) leaf_order->push_back(node.leaves.begin);
        if (child_order) child_order->clear();
        return make(NodeKind::Leaf, {}).first;
    }
    std::vector<std::size_t> order(node.children.size());
    std::iota(order.begin(), order.end(), 0);
    if (reverse && node.kind == NodeKind::Series) std::reverse(order.begin(), order.end());

    std::vector<ShapeId> ids;
    std::vector<std::vector<std::uint32_t>> child_leaves(order.size());
    for (std::size_t j = 0; j < order.size(); ++j)
        ids.push_back(intern(node.children[order[j]], reverse, leaf_order ? &child_leaves[j] : nullptr));

    auto [id, perm] = make(node.kind, ids);
    if (leaf_order) {
        for (auto j : perm) leaf_order->insert(leaf_order->end(), child_leaves[j].begin(), child_leaves[j].end());
    }
    if (child_order) {
        child_order->clear();
        for (auto j : perm) child_order->push_back(order[j]);
    }
    return id;
}

ShapeId ShapeTable::reverse(ShapeId id) {
    if (reverse_[id]) return *reverse_[id];
    const auto kind = shapes_[id].kind;
    ShapeId result = id;
    if (kind != NodeKind::Leaf) {
        auto children = shapes_[id].children;
        if (kind == NodeKind::Series) std::reverse(children.begin(), children.end());
        for (auto& c : children) c = reverse(c);
        result = make(kind, children).first;
    }
    reverse_[id] = result;
    reverse_[result] = id;
    return result;
}

const CountPair& ShapeTable::counts(ShapeId id) {
    if (counts_[id]) return *counts_[id];
    CountPair out;
    const auto kind = shapes_[id].kind;
    if (kind == NodeKind::Leaf) {
        out = {1, 1};
    } else if (kind == NodeKind::Series) {
        const auto children = shapes_[id].children;
        std::vector<CountPair> cs;
        for (auto c : children) cs.push_back(counts(c));
        out.spanning = 1;
        out.near = 0;
        for (std::size_t j = 0; j < cs.size(); ++j) {
            out.spanning *= cs[j].spanning;
            BigInt term = cs[j].near;
            for (std::size_t i = 0; i < cs.size(); ++i)
                if (i != j) term *= cs[i].spanning;
            out.near += term;
        }
    } else {
        const auto classes = shapes_[id].classes;
        std::vector<BigInt> near_ways, span_ways;
        for (const auto& c : classes) {
            const auto& rep = counts(c.shape);
            near_ways.push_back(multiset_count(rep.near, c.size));
            span_ways.push_back(rep.spanning * multiset_count(rep.near, c.size - 1));
        }
        out.near = 1;
        for (const auto& w : near_ways) out.near *= w;
        out.spanning = 0;
        for (std::size_t a = 0; a < classes.size(); ++a) {
            BigInt term = span_ways[a];
            for (std::size_t c = 0; c < classes.size(); ++c)
                if (c != a) term *= near_ways[c];
            out.spanning += term;
        }
    }
    counts_[id] = std::make_unique<CountPair>(std::move(out));
    return *counts_[id];
}

std::uint64_t ShapeTable::count64(ShapeId id, TreeKind kind) {
    const auto& c = counts(id);
    return to_u64(kind == TreeKind::Spanning ? c.spanning : c.near);
}

std::uint64_t ShapeTable::class_radix(const Shape::Class& c, bool holds_spanning) {
    const auto nt = count64(c.shape, TreeKind::Near);
    if (!holds_spanning) return multiset64(nt, c.size);
    return checked_mul(count64(c.shape, TreeKind::Spanning), multiset64(nt, c.size - 1));
}

namespace {

// Lexicographic product of component lists, first component most significant.
void append_product(const std::vector<const std::vector<PosList>*>& comps, std::vector<PosList>& out) {
    for (const auto* c : comps)
        if (c->empty()) return;
    std::vector<std::size_t> idx(comps.size(), 0);
    while (true) {
        PosList t;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const auto& part = (*comps[i])[idx[i]];
            t.insert(t.end(), part.begin(), part.end());
        }
        out.push_back(std::move(t));
        std::size_t p = comps.size();
        while (p > 0) {
            --p;
            if (++idx[p] < comps[p]->size()) break;
            idx[p] = 0;
            if (p == 0) return;
        }
        if (comps.empty()) return;
    }
}

std::vector<PosList> shifted(const std::vector<PosList>& list, std::uint32_t offset) {
    auto out = list;
    for (auto& t : out)
        for (auto& p : t) p += offset;
    return out;
}

}  // namespace

std::vector<PosList> ShapeTable::build_list(ShapeId id, TreeKind kind) {
    const Shape s = shapes_[id];
    std::vector<PosList> out;
    if (s.kind == NodeKind::Leaf) {
        out.push_back(kind == TreeKind::Spanning ? PosList{0} : PosList{});
        return out;
    }
    if (s.kind == NodeKind::Series) {
        const auto k = s.children.size();
        std::vector<std::vector<PosList>> st(k), nt(k);
        for (std::size_t i = 0; i < k; ++i) {
            st[i] = shifted(trees(s.children[i], TreeKind::Spanning), s.offsets[i]);
            if (kind == TreeKind::Near) nt[i] = shifted(trees(s.children[i], TreeKind::Near), s.offsets[i]);
        }
        if (kind == TreeKind::Spanning) {
            std::vector<const std::vector<PosList>*> comps;
            for (auto& l : st) comps.push_back(&l);
            append_product(comps, out);
        } else {
            for (std::size_t j = 0; j < k; ++j) {
                std::vector<const std::vector<PosList>*> comps;
                for (std::size_t i = 0; i < k; ++i) comps.push_back(i == j ? &nt[i] : &st[i]);
                append_product(comps, out);
            }
        }
        return out;
    }

    // Parallel: build per-class component lists, then take products.
    const auto nclass = s.classes.size();
    std::vector<std::vector<PosList>> near_comp(nclass), span_comp(nclass);
    for (std::size_t c = 0; c < nclass; ++c) {
        const auto& cls = s.classes[c];
        const auto& rep_st = trees(cls.shape, TreeKind::Spanning);
        const auto& rep_nt = trees(cls.shape, TreeKind::Near);
        const auto m = static_cast<std::uint32_t>(rep_nt.size());
        auto member_offset = [&](std::uint32_t p) { return s.offsets[cls.first + p]; };
        for (const auto& ms : multiset_enumerate(m, cls.size)) {
            PosList t;
            for (std::uint32_t p = 0; p < cls.size; ++p)
                for (auto pos : rep_nt[ms[p]]) t.push_back(pos + member_offset(p));
            near_comp[c].push_back(std::move(t));
        }
        if (kind == TreeKind::Spanning) {
            auto rest = multiset_enumerate(m, cls.size - 1);
            for (const auto& y : rep_st) {
                for (const auto& ms : rest) {
                    PosList t;
                    for (auto pos : y) t.push_back(pos + member_offset(0));
                    for (std::uint32_t p = 1; p < cls.size; ++p)
                        for (auto pos : rep_nt[ms[p - 1]]) t.push_back(pos + member_offset(p));
                    span_comp[c].push_back(std::move(t));
                }
            }
        }
    }
    if (kind == TreeKind::Near) {
        std::vector<const std::vector<PosList>*> comps;
        for (auto& l : near_comp) comps.push_back(&l);
        append_product(comps, out);
    } else {
        for (std::size_t a = 0; a < nclass; ++a) {
            std::vector<const std::vector<PosList>*> comps;
            for (std::size_t c = 0; c < nclass; ++c) comps.push_back(c == a ? &span_comp[c] : &near_comp[c]);
            append_product(comps, out);
        }
    }
    return out;
}

const std::vector<PosList>& ShapeTable::trees(ShapeId id, TreeKind kind) {
    auto& slot = lists_[id][static_cast<std::size_t>(kind)];
    if (!slot) {
        const auto& c = counts(id);
        const auto& n = kind == TreeKind::Spanning ? c.spanning : c.near;
        if (n > BigInt(max_materialized)) throw std::length_error("too many trees to materialize");
        auto list = build_list(id, kind);
        lists_[id][static_cast<std::size_t>(kind)] = std::make_unique<std::vector<PosList>>(std::move(list));
    }
    return *lists_[id][static_cast<std::size_t>(kind)];
}

std::optional<Located> ShapeTable::locate(ShapeId id, std::span<const char> in) {
    const Shape& s = shapes_[id];
    if (in.size() < s.leaves) throw std::invalid_argument("position flags shorter than shape");
    if (s.kind == NodeKind::Leaf) return Located{in[0] ? TreeKind::Spanning : TreeKind::Near, 0};

    const auto k = s.children.size();
    std::vector<Located> parts;
    parts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto r = locate(s.children[i], in.subspan(s.offsets[i]));
        if (!r) return std::nullopt;
        parts.push_back(*r);
    }

    if (s.kind == NodeKind::Series) {
        std::size_t near_at = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (parts[i].kind != TreeKind::Near) continue;
            if (near_at != k) return std::nullopt;  // two broken links
            near_at = i;
        }
        std::uint64_t index = 0;
        for (std::size_t i = 0; i < k; ++i) {
            auto radix = count64(s.children[i], i == near_at ? TreeKind::Near : TreeKind::Spanning);
            index = checked_add(checked_mul(index, radix), parts[i].index);
        }
        if (near_at == k) return Located{TreeKind::Spanning, index};
        std::uint64_t offset = 0;
        for (std::size_t j = 0; j < near_at; ++j) {
            std::uint64_t block = count64(s.children[j], TreeKind::Near);
            for (std::size_t i = 0; i < k; ++i)
                if (i != j) block = checked_mul(block, count64(s.children[i], TreeKind::Spanning));
            offset = checked_add(offset, block);
        }
        return Located{TreeKind::Near, checked_add(offset, index)};
    }

    // Parallel.
    std::size_t span_class = s.classes.size();
    std::vector<std::uint64_t> comp(s.classes.size());
    for (std::size_t c = 0; c < s.classes.size(); ++c) {
        const auto& cls = s.classes[c];
        const auto nt = static_cast<std::uint32_t>(count64(cls.shape, TreeKind::Near));
        std::vector<std::uint32_t> near_idx;
        std::optional<std::uint64_t> span_idx;
        for (std::uint32_t p = 0; p < cls.size; ++p) {
            const auto& r = parts[cls.first + p];
            if (r.kind == TreeKind::Spanning) {
                if (span_idx || span_class != s.classes.size()) return std::nullopt;  // cycle through s and t
                span_idx = r.index;
                span_class = c;
            } else {
                near_idx.push_back(static_cast<std::uint32_t>(r.index));
            }
        }
        std::sort(near_idx.begin(), near_idx.end());
        auto ms = multiset_rank(near_idx, nt);
        comp[c] = span_idx ? checked_add(checked_mul(*span_idx, multiset64(nt, cls.size - 1)), ms) : ms;
    }
    std::uint64_t index = 0;
    for (std::size_t c = 0; c < s.classes.size(); ++c)
        index = checked_add(checked_mul(index, class_radix(s.classes[c], c == span_class)), comp[c]);
    if (span_class == s.classes.size()) return Located{TreeKind::Near, index};
    std::uint64_t offset = 0;
    for (std::size_t a = 0; a < span_class; ++a) {
        std::uint64_t block = 1;
        for (std::size_t c = 0; c < s.classes.size(); ++c) block = checked_mul(block, class_radix(s.classes[c], c == a));
        offset = checked_add(offset, block);
    }
    return Located{TreeKind::Spanning, checked_add(offset, index)};
}

std::vector<MultisetAssignment> ShapeTable::decode_parallel(ShapeId id, TreeKind kind, std::uint64_t index) {
    const Shape s = shapes_[id];
    if (s.kind != NodeKind::Parallel) throw std::invalid_argument("not a parallel shape");
    if (index >= count64(id, kind)) throw std::out_of_range("tree index out of range");
    const auto n = s.classes.size();
    std::size_t holder = n;
    if (kind == TreeKind::Spanning) {
        holder = 0;
        while (true) {
            std::uint64_t block = 1;
            for (std::size_t c = 0; c < n; ++c) block = checked_mul(block, class_radix(s.classes[c], c == holder));
            if (index < block) break;
            index -= block;
            ++holder;
        }
    }
    std::vector<MultisetAssignment> out(n);
    for (std::size_t c = n; c > 0; --c) {
        const auto& cls = s.classes[c - 1];
        const bool holds = c - 1 == holder;
        const auto radix = class_radix(cls, holds);
        auto comp = index % radix;
        index /= radix;
        const auto nt = static_cast<std::uint32_t>(count64(cls.shape, TreeKind::Near));
        auto& a = out[c - 1];
        if (holds) {
            const auto rest = multiset64(nt, cls.size - 1);
            a.spanning = comp / rest;
            a.near = multiset_unrank(comp % rest, nt, cls.size - 1);
        } else {
            a.near = multiset_unrank(comp, nt, cls.size);
        }
    }
    return out;
}

// ---------------------------------------------------------------- instances

SpInstance::SpInstance(DecompTree tree) : tree_(std::move(tree)), table_(std::make_unique<ShapeTable>()) {
    root_ = table_->intern(tree_, false, &pos_to_leaf_, &root_child_order_);
}

EdgeSet SpInstance::to_edge_set(const PosList& positions, std::uint32_t offset) const {
    EdgeSet es(universe());
    for (auto p : positions) es.insert(pos_to_leaf_[p + offset]);
    return es;
}

std::vector<char> SpInstance::position_flags(const EdgeSet& es, std::uint32_t offset, std::uint32_t count) const {
    std::vector<char> in(count);
    for (std::uint32_t p = 0; p < count; ++p) in[p] = es.contains(pos_to_leaf_[offset + p]) ? 1 : 0;
    return in;
}

TreeList SpInstance::trees(TreeKind kind) {
    const auto& list = table_->trees(root_, kind);
    TreeList out;
    out.reserve(list.size());
    for (const auto& t : list) out.push_back(to_edge_set(t));
    return out;
}

std::optional<Located> SpInstance::locate(const EdgeSet& es) {
    auto in = position_flags(es, 0, static_cast<std::uint32_t>(pos_to_leaf_.size()));
    return table_->locate(root_, in);
}

TreeList oriented_spanning(const OrientedSP& g) { return SpInstance(g.tree).trees(TreeKind::Spanning); }

std::pair<TreeList, TreeList> oriented_both(const OrientedSP& g) {
    SpInstance inst(g.tree);
    auto st = inst.trees(TreeKind::Spanning);
    auto nt = inst.trees(TreeKind::Near);
    return {std::move(st), std::move(nt)};
}

CountPair count_oriented(const OrientedSP& g) {
    ShapeTable table;
    return table.counts(table.intern(g.tree));
}

CountPair count_total(const DecompTree& tree) {
    if (tree.kind == NodeKind::Leaf) return {1, 1};
    std::vector<CountPair> cs;
    for (const auto& c : tree.children) cs.push_back(count_total(c));
    // Series multiplies spanning counts; parallel is the same rule with roles swapped.
    const bool series = tree.kind == NodeKind::Series;
    BigInt prod = 1;
    BigInt sum = 0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
        const auto& mul = series ? cs[j].spanning : cs[j].near;
        prod *= mul;
        BigInt term = series ? cs[j].near : cs[j].spanning;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (i != j) term *= series ? cs[i].spanning : cs[i].near;
        sum += term;
    }
    return series ? CountPair{prod, sum} : CountPair{sum, prod};
}

CountPair count_total(const OrientedSP& g) { return count_total(g.tree); }

namespace {

std::vector<PosList> total_lists(const DecompTree& node, TreeKind kind) {
    std::vector<PosList> out;
    if (node.kind == NodeKind::Leaf) {
        out.push_back(kind == TreeKind::Spanning ? PosList{node.leaves.begin} : PosList{});
        return out;
    }
    const auto k = node.children.size();
    std::vector<std::vector<PosList>> st(k), nt(k);
    for (std::size_t i = 0; i < k; ++i) {
        st[i] = total_lists(node.children[i], TreeKind::Spanning);
        nt[i] = total_lists(node.children[i], TreeKind::Near);
    }
    // Series takes one near child at most; parallel takes one spanning child at most.
    const bool series = node.kind == NodeKind::Series;
    const bool all_base = series == (kind == TreeKind::Spanning);
    auto& base = series ? st : nt;
    auto& odd = series ? nt : st;
    if (all_base) {
        std::vector<const std::vector<PosList>*> comps;
        for (auto& l : base) comps.push_back(&l);
        append_product(comps, out);
    } else {
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<const std::vector<PosList>*> comps;
            for (std::size_t i = 0; i < k; ++i) comps.push_back(i == j ? &odd[i] : &base[i]);
            append_product(comps, out);
        }
    }
    return out;
}

}  // namespace

TreeList total_trees(const DecompTree& tree, TreeKind kind) {
    const auto c = count_total(tree);
    if ((kind == TreeKind::Spanning ? c.spanning : c.near) > BigInt(ShapeTable::max_materialized))
        throw std::length_error("too many trees to materialize");
    TreeList out;
    for (const auto& t : total_lists(tree, kind)) out.emplace_back(tree.leaves.end, t);
    return out;
}

// ---------------------------------------------------------------- streams

namespace {

class Cursor {
public:
    Cursor(ShapeTable& table, ShapeId id, TreeKind kind) : table_(&table), id_(id), kind_(kind) { reset(); }

    void reset() {
        const Shape& s = table_->at(id_);
        selector_ = 0;
        parts_.clear();
        if (s.kind == NodeKind::Leaf) return;
        parts_.reserve(s.children.size());
        if (s.kind == NodeKind::Series) {
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                bool near = kind_ == TreeKind::Near && i == 0;
                parts_.emplace_back(*table_, s.children[i], near ? TreeKind::Near : TreeKind::Spanning);
            }
            return;
        }
        for (const auto& cls : s.classes) {
            for (std::uint32_t p = 0; p < cls.size; ++p) {
                bool span = kind_ == TreeKind::Spanning && p == 0 && &cls == &s.classes.front();
                parts_.emplace_back(*table_, cls.shape, span ? TreeKind::Spanning : TreeKind::Near);
            }
        }
    }

    bool advance() {
        const Shape& s = table_->at(id_);
        if (s.kind == NodeKind::Leaf) return false;
        if (s.kind == NodeKind::Series) return advance_series(s);
        return advance_parallel(s);
    }

    void emit(std::uint32_t base, std::vector<std::uint32_t>& out) const {
        const Shape& s = table_->at(id_);
        if (s.kind == NodeKind::Leaf) {
            if (kind_ == TreeKind::Spanning) out.push_back(base);
            return;
        }
        for (std::size_t i = 0; i < parts_.size(); ++i) parts_[i].emit(base + s.offsets[i], out);
    }

private:
    ShapeTable* table_;
    ShapeId id_;
    TreeKind kind_;
    std::uint32_t selector_ = 0;  // series near: broken child; parallel spanning: class with the tree
    std::vector<Cursor> parts_;

    bool odometer(std::size_t first, std::size_t last) {
        for (std::size_t p = last; p > first; --p) {
            if (parts_[p - 1].advance()) {
                for (std::size_t r = p; r < last; ++r) parts_[r].reset();
                return true;
            }
        }
        return false;
    }

    // Nondecreasing slots: advancing slot p copies its state to every later slot.
    bool advance_multiset(std::size_t first, std::size_t last) {
        for (std::size_t p = last; p > first; --p) {
            if (parts_[p - 1].advance()) {
                for (std::size_t r = p; r < last; ++r) parts_[r] = parts_[p - 1];
                return true;
            }
        }
        return false;
    }

    void reset_range(std::size_t first, std::size_t last) {
        for (std::size_t r = first; r < last; ++r) parts_[r].reset();
    }

    bool advance_series(const Shape& s) {
        if (odometer(0, parts_.size())) return true;
        if (kind_ == TreeKind::Spanning) return false;
        if (++selector_ == s.children.size()) return false;
        parts_[selector_ - 1] = Cursor(*table_, s.children[selector_ - 1], TreeKind::Spanning);
        parts_[selector_] = Cursor(*table_, s.children[selector_], TreeKind::Near);
        reset_range(0, parts_.size());
        return true;
    }

    bool advance_parallel(const Shape& s) {
        for (std::size_t c = s.classes.size(); c > 0; --c) {
            const auto& cls = s.classes[c - 1];
            const std::size_t first = cls.first;
            const std::size_t last = cls.first + cls.size;
            if (kind_ == TreeKind::Spanning && c - 1 == selector_) {
                if (advance_multiset(first + 1, last)) return true;
                if (parts_[first].advance()) {
                    reset_range(first + 1, last);
                    return true;
                }
            } else if (advance_multiset(first, last)) {
                return true;
            }
            reset_range(first, last);
        }
        if (kind_ == TreeKind::Near) return false;
        if (++selector_ == s.classes.size()) return false;
        const auto& prev = s.classes[selector_ - 1];
        const auto& cur = s.classes[selector_];
        parts_[prev.first] = Cursor(*table_, prev.shape, TreeKind::Near);
        parts_[cur.first] = Cursor(*table_, cur.shape, TreeKind::Spanning);
        reset_range(0, parts_.size());
        return true;
    }
};

}  // namespace

struct TreeStream::Impl {
    SpInstance instance;
    Cursor cursor;
    bool started = false;
    bool done = false;
    std::vector<std::uint32_t> scratch;

    Impl(const DecompTree& tree, TreeKind kind)
        : instance(tree), cursor(instance.shapes(), instance.root(), kind) {}
};

TreeStream::TreeStream(const OrientedSP& g, TreeKind kind) : impl_(std::make_unique<Impl>(g.tree, kind)) {}
TreeStream::~TreeStream() = default;
TreeStream::TreeStream(TreeStream&&) noexcept = default;
TreeStream& TreeStream::operator=(TreeStream&&) noexcept = default;

bool TreeStream::next(std::vector<std::uint32_t>& leaves) {
    auto& im = *impl_;
    if (im.done) return false;
    if (im.started && !im.cursor.advance()) {
        im.done = true;
        return false;
    }
    im.started = true;
    leaves.clear();
    im.cursor.emit(0, leaves);
    const auto& map = im.instance.position_to_leaf();
    for (auto& p : leaves) p = map[p];
    return true;
}

std::optional<EdgeSet> TreeStream::next() {
    if (!next(impl_->scratch)) return std::nullopt;
    return EdgeSet(impl_->instance.universe(), impl_->scratch);
}

}  // namespace spenum
