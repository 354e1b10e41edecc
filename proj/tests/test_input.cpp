#include <doctest.h>

#include "fixtures.hpp"
#include "spenum/input.hpp"

using namespace spenum;

TEST_CASE("parse single edge and diamond") {
    auto e = parse_sp("e(s,t)");
    CHECK(e.is_leaf());
    CHECK(e.source.str() == "s");
    CHECK(e.target.str() == "t");

    auto d = parse_sp(fixtures::kDiamond);
    CHECK(d.kind == NodeKind::Parallel);
    CHECK(d.children.size() == 3);
    CHECK(d.source.str() == "2");
    CHECK(d.target.str() == "3");
    CHECK(serialize_sp(d) == fixtures::kDiamond);
}

TEST_CASE("whitespace is insignificant") {
    auto d = parse_sp(" P( e(2, 3) ,\n S(e(2,1), e(1,3)),S(e(2,4),e(4,3)) ) ");
    CHECK(serialize_sp(d) == fixtures::kDiamond);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_sp("S(e(a,b),e(b,c)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 15);
    }
    CHECK_THROWS_AS(parse_sp("S(e(a,b))"), ParseError);
    CHECK_THROWS_AS(parse_sp("Q(e(a,b),e(b,c))"), ParseError);
    CHECK_THROWS_AS(parse_sp("e(a,b) e(b,c)"), ParseError);
    CHECK_THROWS_AS(parse_sp("e(a-1,b)"), ParseError);
    CHECK_THROWS_AS(parse_sp(""), ParseError);
}

TEST_CASE("semantic errors") {
    try {
        parse_sp("S(e(a,b),e(c,d))");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.report().has(kChainMismatch));
    }
    CHECK_THROWS_AS(parse_sp("e(a,a)"), ValidationError);
    CHECK_THROWS_AS(parse_sp("P(e(s,t),e(s,t))"), ValidationError);
    CHECK_THROWS_AS(parse_sp("P(S(e(s,a),e(a,t)),S(e(s,a),e(a,t)))"), ValidationError);
}

TEST_CASE("serialization flattens") {
    auto t = parse_sp("S(S(e(a,b),e(b,c)),e(c,d))");
    CHECK(serialize_sp(t) == "S(e(a,b),e(b,c),e(c,d))");
}

TEST_CASE("round trip on random trees") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        RandomSpParams p;
        p.seed = seed;
        auto t = random_sp(p);
        CHECK(parse_sp(serialize_sp(t)) == t);
    }
}

TEST_CASE("lines format skips comments and blanks") {
    auto trees = parse_sp_lines("# header\n\ne(s,t)\n  # indented comment\nS(e(a,b),e(b,c))\n");
    REQUIRE(trees.size() == 2);
    CHECK(trees[1].children.size() == 2);
}

TEST_CASE("decompose the diamond edge list") {
    std::vector<LabelPair> edges;
    for (auto [u, w] : std::vector<std::pair<const char*, const char*>>{{"1", "2"}, {"1", "3"}, {"2", "3"}, {"2", "4"}, {"3", "4"}})
        edges.emplace_back(VertexLabel(u), VertexLabel(w));
    auto t = decompose_edge_list(edges, VertexLabel("2"), VertexLabel("3"));
    CHECK(t.kind == NodeKind::Parallel);
    CHECK(t.children.size() == 3);
    CHECK(t.source.str() == "2");
    CHECK(t.target.str() == "3");
    int leaves = 0, paths = 0;
    for (const auto& c : t.children) {
        leaves += c.is_leaf();
        paths += c.kind == NodeKind::Series && c.children.size() == 2;
    }
    CHECK(leaves == 1);
    CHECK(paths == 2);
}

TEST_CASE("decomposition failures") {
    std::vector<LabelPair> k4;
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.emplace_back(VertexLabel(names[i]), VertexLabel(names[j]));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            try {
                decompose_edge_list(k4, VertexLabel(names[i]), VertexLabel(names[j]));
                FAIL("K4 accepted");
            } catch (const DecompositionError& e) {
                CHECK(e.kind() == DecompositionFailure::NotSeriesParallel);
            }
        }

    std::vector<LabelPair> split{{VertexLabel("s"), VertexLabel("a")}, {VertexLabel("b"), VertexLabel("t")}};
    try {
        decompose_edge_list(split, VertexLabel("s"), VertexLabel("t"));
        FAIL("disconnected input accepted");
    } catch (const DecompositionError& e) {
        CHECK(e.kind() == DecompositionFailure::DisconnectedInput);
    }
}

TEST_CASE("decomposition reproduces random graphs") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        RandomSpParams p;
        p.seed = seed;
        p.max_depth = 5;
        auto t = random_sp(p);
        auto g = underlying_graph(t);
        std::vector<LabelPair> edges;
        for (const auto& e : g.edges()) edges.emplace_back(g.label(e.u), g.label(e.v));
        auto back = decompose_edge_list(edges, t.source, t.target);
        CHECK(validate(back).ok());
        auto h = underlying_graph(back);
        auto keys = [](const LabeledGraph& x) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& e : x.edges()) {
                auto a = x.label(e.u).str(), b = x.label(e.v).str();
                if (b < a) std::swap(a, b);
                out.emplace_back(a, b);
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        CHECK(keys(g) == keys(h));
        CHECK(back.source == t.source);
        CHECK(back.target == t.target);
    }
}

TEST_CASE("edge-list text format") {
    auto in = parse_edge_list("terminals 2 3\n1 2\n1 3\n2 3\n2 4\n3 4\n");
    CHECK(in.s.str() == "2");
    CHECK(in.edges.size() == 5);
    auto trees = parse_instances("terminals 2 3\n1 2\n1 3\n2 3\n2 4\n3 4\n");
    REQUIRE(trees.size() == 1);
    CHECK(trees[0].edge_count() == 5);
    CHECK(parse_instances(std::string(fixtures::kDiamond) + "\n").size() == 1);
}

TEST_CASE("random generator") {
    RandomSpParams p;
    p.seed = 1;
    p.max_depth = 0;
    auto leaf = random_sp(p);
    CHECK(leaf.is_leaf());
    CHECK(leaf.source.str() == "v0");
    CHECK(leaf.target.str() == "v1");

    p.max_depth = 4;
    CHECK(random_sp(p) == random_sp(p));

    int distinct = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        p.seed = seed;
        p.max_children = 2 + seed % 4;
        auto t = random_sp(p);
        CHECK(validate(t).ok());
        for (const auto& c : t.children) CHECK(c.children.size() <= p.max_children);
        distinct += !t.is_leaf();
    }
    CHECK(distinct > 500);
}

TEST_CASE("reversed swaps terminals and chain order") {
    auto t = parse_sp("S(e(a,b),P(e(b,c),S(e(b,x),e(x,c))))");
    auto r = reversed(t);
    CHECK(r.source.str() == "c");
    CHECK(r.target.str() == "a");
    CHECK(validate(r).ok());
    CHECK(reversed(r) == t);
}
