#include "spenum/input.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

namespace spenum {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position) {}

DecompositionError::DecompositionError(DecompositionFailure kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

// ---------------------------------------------------------------- expression parser

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    DecompTree parse() {
        auto tree = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return tree;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError(pos_, "expected " + expected + ", found " + found);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("'") + c + "'");
        ++pos_;
    }

    VertexLabel label() {
        skip_ws();
        auto start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) break;
            ++pos_;
        }
        if (start == pos_) fail("vertex label");
        return VertexLabel(std::string(text_.substr(start, pos_ - start)));
    }

    DecompTree expr() {
        skip_ws();
        if (pos_ >= text_.size()) fail("'e(', 'S(' or 'P('");
        char head = text_[pos_];
        if (head != 'e' && head != 'S' && head != 'P') fail("'e(', 'S(' or 'P('");
        ++pos_;
        expect('(');
        if (head == 'e') {
            auto u = label();
            expect(',');
            auto v = label();
            expect(')');
            return DecompTree::leaf(std::move(u), std::move(v));
        }
        std::vector<DecompTree> children;
        children.push_back(expr());
        while (peek(',')) {
            ++pos_;
            children.push_back(expr());
        }
        if (children.size() < 2) fail("',' (series and parallel nodes need at least two children)");
        expect(')');
        return head == 'S' ? DecompTree::series(std::move(children)) : DecompTree::parallel(std::move(children));
    }
};

void serialize_into(const DecompTree& t, std::string& out) {
    if (t.kind == NodeKind::Leaf) {
        out += "e(";
        out += t.source.str();
        out += ',';
        out += t.target.str();
        out += ')';
        return;
    }
    out += t.kind == NodeKind::Series ? "S(" : "P(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += ',';
        serialize_into(t.children[i], out);
    }
    out += ')';
}

std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> content_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = strip_comment(text.substr(start, end - start));
        if (!line.empty()) lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

}  // namespace

DecompTree parse_sp(std::string_view text) {
    return normalize(ExprParser(text).parse());
}

std::string serialize_sp(const DecompTree& tree) {
    std::string out;
    serialize_into(tree, out);
    return out;
}

std::vector<DecompTree> parse_sp_lines(std::string_view text) {
    std::vector<DecompTree> out;
    for (auto line : content_lines(text)) out.push_back(parse_sp(line));
    return out;
}

// ---------------------------------------------------------------- reversal

DecompTree reversed(const DecompTree& tree) {
    DecompTree out;
    out.kind = tree.kind;
    out.source = tree.target;
    out.target = tree.source;
    out.children.reserve(tree.children.size());
    if (tree.kind == NodeKind::Series) {
        for (auto it = tree.children.rbegin(); it != tree.children.rend(); ++it) out.children.push_back(reversed(*it));
    } else {
        for (const auto& c : tree.children) out.children.push_back(reversed(c));
    }
    out.assign_leaf_indices(tree.leaves.begin);
    return out;
}

// ---------------------------------------------------------------- decomposition

namespace {

struct Fragment {
    std::uint32_t u;
    std::uint32_t v;
    DecompTree tree;  // oriented u -> v
    bool alive = true;
};

void orient(Fragment& f, std::uint32_t from) {
    if (f.u == from) return;
    f.tree = reversed(f.tree);
    std::swap(f.u, f.v);
}

void absorb(std::vector<DecompTree>& into, DecompTree&& child, NodeKind kind) {
    if (child.kind == kind) {
        for (auto& g : child.children) into.push_back(std::move(g));
    } else {
        into.push_back(std::move(child));
    }
}

}  // namespace

DecompTree decompose_edge_list(const std::vector<LabelPair>& edges, const VertexLabel& s, const VertexLabel& t) {
    if (s == t) throw DecompositionError(DecompositionFailure::InvalidInput, "terminals must differ");
    if (edges.empty()) throw DecompositionError(DecompositionFailure::InvalidInput, "empty edge list");

    std::unordered_map<VertexLabel, std::uint32_t> index;
    std::vector<VertexLabel> names;
    auto id = [&](const VertexLabel& l) {
        auto [it, inserted] = index.try_emplace(l, static_cast<std::uint32_t>(names.size()));
        if (inserted) names.push_back(l);
        return it->second;
    };

    std::vector<Fragment> frags;
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> seen;
    for (const auto& [a, b] : edges) {
        if (!VertexLabel::is_valid_text(a.str()) || !VertexLabel::is_valid_text(b.str()))
            throw DecompositionError(DecompositionFailure::InvalidInput, "invalid vertex label");
        if (a == b) throw DecompositionError(DecompositionFailure::InvalidInput, "self-loop on " + a.str());
        auto u = id(a);
        auto v = id(b);
        if (seen[{std::min(u, v), std::max(u, v)}]++)
            throw DecompositionError(DecompositionFailure::InvalidInput,
                                     "duplicate edge " + a.str() + "-" + b.str());
        frags.push_back({u, v, DecompTree::leaf(a, b)});
    }
    if (!index.contains(s) || !index.contains(t))
        throw DecompositionError(DecompositionFailure::InvalidInput, "terminal not present in edge list");

    {
        UnionFind uf(names.size());
        for (const auto& f : frags) uf.unite(f.u, f.v);
        if (uf.components() != 1)
            throw DecompositionError(DecompositionFailure::DisconnectedInput, "edge list is disconnected");
    }

    const auto si = index.at(s);
    const auto ti = index.at(t);
    std::size_t alive = frags.size();

    bool progress = true;
    while (alive > 1 && progress) {
        progress = false;

        // Parallel reductions: merge fragments with the same endpoint pair.
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < frags.size(); ++i) {
            if (!frags[i].alive) continue;
            groups[{std::min(frags[i].u, frags[i].v), std::max(frags[i].u, frags[i].v)}].push_back(i);
        }
        for (auto& [key, members] : groups) {
            if (members.size() < 2) continue;
            auto from = frags[members[0]].u;
            std::vector<DecompTree> children;
            for (auto i : members) {
                orient(frags[i], from);
                absorb(children, std::move(frags[i].tree), NodeKind::Parallel);
                frags[i].alive = false;
            }
            auto& keep = frags[members[0]];
            keep.tree = DecompTree::parallel(std::move(children));
            keep.alive = true;
            alive -= members.size() - 1;
            progress = true;
        }
        if (progress) continue;

        // Series reductions: splice out non-terminal vertices of degree two.
        std::vector<std::vector<std::size_t>> incident(names.size());
        for (std::size_t i = 0; i < frags.size(); ++i) {
            if (!frags[i].alive) continue;
            incident[frags[i].u].push_back(i);
            incident[frags[i].v].push_back(i);
        }
        for (std::uint32_t w = 0; w < names.size(); ++w) {
            if (w == si || w == ti || incident[w].size() != 2) continue;
            auto& f1 = frags[incident[w][0]];
            auto& f2 = frags[incident[w][1]];
            if (!f1.alive || !f2.alive) continue;
            auto a = f1.u == w ? f1.v : f1.u;
            orient(f1, a);
            orient(f2, w);
            std::vector<DecompTree> children;
            absorb(children, std::move(f1.tree), NodeKind::Series);
            absorb(children, std::move(f2.tree), NodeKind::Series);
            f1.tree = DecompTree::series(std::move(children));
            f1.v = f2.v;
            f2.alive = false;
            --alive;
            progress = true;
            break;  // incidence lists are stale now
        }
    }

    auto it = std::find_if(frags.begin(), frags.end(), [](const Fragment& f) { return f.alive; });
    if (alive != 1 || !((it->u == si && it->v == ti) || (it->u == ti && it->v == si)))
        throw DecompositionError(DecompositionFailure::NotSeriesParallel,
                                 "graph is not two-terminal series-parallel for terminals " + s.str() + ", " +
                                     t.str());
    orient(*it, si);
    return normalize(it->tree);
}

EdgeListInput parse_edge_list(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(0, "expected 'terminals s t' header");
    EdgeListInput out;
    auto words = [](std::string_view line) {
        std::vector<std::string> w;
        std::istringstream is{std::string(line)};
        std::string tok;
        while (is >> tok) w.push_back(tok);
        return w;
    };
    auto header = words(lines[0]);
    if (header.size() != 3 || header[0] != "terminals") throw ParseError(0, "expected 'terminals s t' header");
    out.s = VertexLabel(header[1]);
    out.t = VertexLabel(header[2]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto w = words(lines[i]);
        if (w.size() != 2) throw ParseError(0, "expected 'u v' on edge line " + std::to_string(i + 1));
        out.edges.emplace_back(VertexLabel(w[0]), VertexLabel(w[1]));
    }
    return out;
}

std::vector<DecompTree> parse_instances(std::string_view text) {
    auto lines = content_lines(text);
    if (!lines.empty() && lines[0].starts_with("terminals")) {
        auto input = parse_edge_list(text);
        return {decompose_edge_list(input.edges, input.s, input.t)};
    }
    return parse_sp_lines(text);
}

// ---------------------------------------------------------------- random instances

namespace {

class RandomBuilder {
public:
    explicit RandomBuilder(const RandomSpParams& p) : params_(p), rng_(p.seed) {
        if (params_.max_children < 2) params_.max_children = 2;
    }

    DecompTree build() {
        auto s = fresh();
        auto t = fresh();
        if (params_.max_depth == 0 || coin(params_.leaf_bias)) return DecompTree::leaf(s, t);
        auto kind = can_parallel(0) && coin(0.5) ? NodeKind::Parallel : NodeKind::Series;
        return node(0, kind, s, t);
    }

private:
    RandomSpParams params_;
    std::mt19937_64 rng_;
    unsigned next_label_ = 0;

    VertexLabel fresh() { return VertexLabel("v" + std::to_string(next_label_++)); }
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    bool coin(double p) { return uniform() < p; }
    unsigned child_count() { return 2 + static_cast<unsigned>(rng_() % (params_.max_children - 1)); }
    bool can_parallel(unsigned depth) const { return depth + 1 < params_.max_depth; }

    DecompTree node(unsigned depth, NodeKind kind, const VertexLabel& s, const VertexLabel& t) {
        auto c = child_count();
        std::vector<DecompTree> children;
        if (kind == NodeKind::Series) {
            VertexLabel from = s;
            for (unsigned i = 0; i < c; ++i) {
                auto to = i + 1 == c ? t : fresh();
                if (can_parallel(depth + 1) && !coin(params_.leaf_bias))
                    children.push_back(node(depth + 1, NodeKind::Parallel, from, to));
                else
                    children.push_back(DecompTree::leaf(from, to));
                from = to;
            }
            return DecompTree::series(std::move(children));
        }
        bool leaf_used = false;
        for (unsigned i = 0; i < c; ++i) {
            if (!leaf_used && coin(params_.leaf_bias)) {
                children.push_back(DecompTree::leaf(s, t));
                leaf_used = true;
            } else {
                children.push_back(node(depth + 1, NodeKind::Series, s, t));
            }
        }
        return DecompTree::parallel(std::move(children));
    }
};

}  // namespace

DecompTree random_sp(const RandomSpParams& params) {
    return normalize(RandomBuilder(params).build());
}

}  // namespace spenum
