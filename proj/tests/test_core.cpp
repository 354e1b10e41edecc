#include <doctest.h>

#include "fixtures.hpp"
#include "spenum/core.hpp"

using namespace spenum;

TEST_CASE("leaf ranges follow preorder") {
    auto t = fixtures::diamond();
    CHECK(t.kind == NodeKind::Parallel);
    CHECK(t.leaves == LeafRange{0, 5});
    CHECK(t.children[0].leaves == LeafRange{0, 1});
    CHECK(t.children[1].leaves == LeafRange{1, 3});
    CHECK(t.children[2].children[1].leaves == LeafRange{4, 5});
    CHECK(validate(t).ok());
}

TEST_CASE("validate reports each kind of violation") {
    SUBCASE("self-loop") {
        auto t = DecompTree::leaf("a", "a");
        t.assign_leaf_indices();
        CHECK(validate(t).has(kSelfLoop));
    }
    SUBCASE("multi-edge") {
        auto t = DecompTree::parallel({DecompTree::leaf("s", "t"), DecompTree::leaf("s", "t")});
        t.assign_leaf_indices();
        CHECK(validate(t).has(kMultiEdge));
    }
    SUBCASE("chain mismatch") {
        auto t = DecompTree::series({DecompTree::leaf("a", "b"), DecompTree::leaf("c", "d")});
        t.assign_leaf_indices();
        CHECK(validate(t).has(kChainMismatch));
    }
    SUBCASE("parallel terminals") {
        auto t = DecompTree::parallel({DecompTree::leaf("s", "t"),
                                       DecompTree::series({DecompTree::leaf("s", "a"), DecompTree::leaf("a", "u")})});
        t.assign_leaf_indices();
        CHECK(validate(t).has(kTerminalMismatch));
    }
    SUBCASE("shared inner vertex across parallel branches") {
        auto t = DecompTree::parallel({DecompTree::series({DecompTree::leaf("s", "a"), DecompTree::leaf("a", "t")}),
                                       DecompTree::series({DecompTree::leaf("s", "a"), DecompTree::leaf("a", "t")})});
        t.assign_leaf_indices();
        CHECK(!validate(t).ok());
    }
    SUBCASE("series revisits a vertex") {
        auto t = DecompTree::series(
            {DecompTree::leaf("a", "b"), DecompTree::leaf("b", "c"), DecompTree::leaf("c", "a")});
        t.assign_leaf_indices();
        CHECK(validate(t).has(kSharedVertex));
    }
    SUBCASE("too few children") {
        DecompTree t;
        t.kind = NodeKind::Series;
        t.children.push_back(DecompTree::leaf("a", "b"));
        t.source = VertexLabel("a");
        t.target = VertexLabel("b");
        t.assign_leaf_indices();
        CHECK(validate(t).has(kTooFewChildren));
    }
    SUBCASE("unflattened") {
        auto inner = DecompTree::series({DecompTree::leaf("a", "b"), DecompTree::leaf("b", "c")});
        auto t = DecompTree::series({inner, DecompTree::leaf("c", "d")});
        t.assign_leaf_indices();
        CHECK(validate(t).has(kSeriesUnderSeries));
    }
    SUBCASE("stale leaf ranges") {
        auto t = fixtures::diamond();
        t.children[1].leaves = {3, 5};
        CHECK(validate(t).has(kLeafRange));
    }
}

TEST_CASE("normalize flattens nested series and parallel nodes") {
    auto inner = DecompTree::series({DecompTree::leaf("a", "b"), DecompTree::leaf("b", "c")});
    auto t = normalize(DecompTree::series({inner, DecompTree::leaf("c", "d")}));
    CHECK(t.children.size() == 3);
    CHECK(t.leaves.end == 3);

    auto p = DecompTree::parallel({DecompTree::leaf("s", "t"),
                                   DecompTree::parallel({DecompTree::series({DecompTree::leaf("s", "x"),
                                                                             DecompTree::leaf("x", "t")}),
                                                         DecompTree::series({DecompTree::leaf("s", "y"),
                                                                             DecompTree::leaf("y", "t")})})});
    auto q = normalize(p);
    CHECK(q.children.size() == 3);
    CHECK(validate(q).ok());

    auto bad = DecompTree::leaf("a", "a");
    CHECK_THROWS_AS(normalize(bad), ValidationError);
}

TEST_CASE("underlying graph of the diamond") {
    auto g = underlying_graph(fixtures::diamond());
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 5);
    CHECK(g.label(0).str() == "2");
    CHECK(g.label(1).str() == "3");
    CHECK(g.connected());
    CHECK(g.neighbors(g.index_of(VertexLabel("2"))).size() == 3);
    CHECK(g.edge_between(g.index_of(VertexLabel("1")), g.index_of(VertexLabel("4"))) == -1);
}

TEST_CASE("edge sets") {
    std::vector<std::uint32_t> m{0, 3, 70};
    EdgeSet a(80, m);
    CHECK(a.size() == 3);
    CHECK(a.contains(70));
    CHECK(!a.contains(1));
    CHECK(a.members() == m);
    EdgeSet b(80);
    for (auto x : m) b.insert(x);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    b.erase(3);
    CHECK(b.size() == 2);
    CHECK(a != b);
    CHECK_THROWS(b.insert(80));
}

TEST_CASE("edge set classification on the diamond") {
    auto t = fixtures::diamond();
    auto g = underlying_graph(t);
    const auto s = g.index_of(t.source);
    const auto tt = g.index_of(t.target);
    std::vector<std::uint32_t> tree{1, 2, 3};  // both edges of one path plus one of the other
    CHECK(classify_edge_set(g, EdgeSet(5, tree)) == EdgeSetClass::SpanningTree);
    std::vector<std::uint32_t> cyc{0, 1, 2};
    CHECK(classify_edge_set(g, EdgeSet(5, cyc)) == EdgeSetClass::Other);
    std::vector<std::uint32_t> near{1, 3};  // s-1 and s-4: t isolated
    CHECK(classify_edge_set(g, EdgeSet(5, near)) == EdgeSetClass::NearTree);
    CHECK(separates_terminals(g, EdgeSet(5, near), s, tt));
    std::vector<std::uint32_t> joined{1, 2};  // s-1-t with 4 alone
    CHECK(classify_edge_set(g, EdgeSet(5, joined)) == EdgeSetClass::NearTree);
    CHECK(!separates_terminals(g, EdgeSet(5, joined), s, tt));
}

TEST_CASE("semioriented equality ignores terminal order") {
    auto t = fixtures::theta133();
    auto r = reversed(t);
    CHECK(SemiorientedSP{t} == SemiorientedSP{r});
    CHECK(!(OrientedSP{t} == OrientedSP{r}));
    CHECK(!(SemiorientedSP{t} == SemiorientedSP{fixtures::diamond()}));
}

TEST_CASE("union-find") {
    UnionFind uf(4);
    CHECK(uf.unite(0, 1));
    CHECK(!uf.unite(1, 0));
    CHECK(uf.unite(2, 3));
    CHECK(uf.components() == 2);
    CHECK(uf.find(0) == uf.find(1));
    CHECK(uf.find(0) != uf.find(3));
}
