#include <doctest.h>

#include "fixtures.hpp"
#include "spenum/canonical.hpp"
#include "spenum/input.hpp"
#include "spenum/oracle.hpp"

using namespace spenum;

TEST_CASE("codes") {
    CHECK(canonical_code(parse_sp("e(s,t)")).to_string() == "E");
    CHECK(reversal_code(parse_sp("e(s,t)")).to_string() == "E");

    auto d = fixtures::diamond();
    CHECK(canonical_code(d.children[1]) == canonical_code(d.children[2]));
    CHECK(canonical_code(d).to_string() == "P(ES(EE)S(EE))");

    auto p = parse_sp("P(e(s,t),S(e(s,a),e(a,t)))");
    auto s = parse_sp("S(e(s,a),e(a,t))");
    CHECK(canonical_code(p) != canonical_code(s));

    auto chain = parse_sp("S(e(a,b),e(b,c),e(c,d))");
    CHECK(reversal_code(chain) == canonical_code(chain));
}

TEST_CASE("token order puts S before P before E") {
    auto e = CanonicalCode::edge();
    auto s = CanonicalCode::series({&e, &e});
    auto p = CanonicalCode::parallel({&e, &s});
    CHECK(s < p);
    CHECK(p < e);
    CHECK(p.to_string() == "P(ES(EE))");
    CHECK(p == CanonicalCode::parallel({&s, &e}));
}

TEST_CASE("asymmetric chain has a different reversal code") {
    auto t = parse_sp("S(P(e(a,b),S(e(a,x),e(x,b))),e(b,c))");
    CHECK(reversal_code(t) != canonical_code(t));
    CHECK(!mirror_pairing(t).has_value());
    auto g = underlying_graph(t);
    auto s = g.index_of(t.source);
    auto tt = g.index_of(t.target);
    CHECK(oracle::automorphisms(g, oracle::FixSet{s, tt}).size() ==
          oracle::automorphisms(g, oracle::FixBoth{s, tt}).size());
}

TEST_CASE("reversal code equals the code of the reversed tree") {
    for (const auto& t : fixtures::random_corpus(200, 2, 14)) CHECK(reversal_code(t) == canonical_code(reversed(t)));
}

TEST_CASE("iso maps") {
    auto d = fixtures::diamond();
    auto id = iso_map(d, d);
    REQUIRE(id);
    CHECK(id->is_identity());

    auto h = iso_map(d.children[1], d.children[2]);
    REQUIRE(h);
    CHECK(h->image(1) == 3u);
    CHECK(h->image(2) == 4u);
    CHECK(h->vertices.at(VertexLabel("1")) == VertexLabel("4"));
    CHECK(verify_bijection(d.children[1], d.children[2], *h, false));

    CHECK(!iso_map(d.children[0], d.children[1]));
}

TEST_CASE("iso map between relabeled copies is a graph isomorphism") {
    for (const auto& t : fixtures::random_corpus(100, 3, 14, 77)) {
        auto copy = fixtures::copy_between(t, "c", VertexLabel("S"), VertexLabel("T"));
        copy.assign_leaf_indices();
        auto m = iso_map(t, copy);
        REQUIRE(m);
        CHECK(verify_bijection(t, copy, *m, false));
        CHECK(m->inverse().inverse().leaves == m->leaves);
    }
}

TEST_CASE("reversal maps") {
    auto chain = parse_sp("S(e(a,b),e(b,c),e(c,d))");
    auto r = reversal_map(chain, chain);
    REQUIRE(r);
    CHECK(r->image(0) == 2u);
    CHECK(r->image(1) == 1u);
    CHECK(r->vertices.at(VertexLabel("a")) == VertexLabel("d"));
    CHECK(verify_bijection(chain, chain, *r, true));
    CHECK(reversal_automorphism(chain));
}

TEST_CASE("partition classes") {
    auto d = fixtures::diamond();
    auto part = partition_classes(d);
    REQUIRE(part.classes.size() == 2);
    CHECK(part.classes[0].members == std::vector<std::size_t>{0});
    CHECK(part.classes[1].members == std::vector<std::size_t>{1, 2});
    CHECK(part.classes[1].to_representative.size() == 2);

    auto theta = partition_classes(fixtures::theta133());
    REQUIRE(theta.classes.size() == 2);
    CHECK(theta.classes[1].members.size() == 2);

    auto distinct = partition_classes(parse_sp("P(e(s,t),S(e(s,a),e(a,t)),S(e(s,b),e(b,c),e(c,t)))"));
    CHECK(distinct.classes.size() == 3);
}

TEST_CASE("mirror pairings") {
    auto two = mirror_pairing(parse_sp("S(e(a,b),e(b,c))"));
    REQUIRE(two);
    CHECK(two->series_maps.size() == 2);

    auto d = mirror_pairing(fixtures::diamond());
    REQUIRE(d);
    REQUIRE(d->class_pairs.size() == 2);
    for (const auto& cp : d->class_pairs) CHECK(cp.forward == cp.backward);

    CHECK(!mirror_pairing(parse_sp("S(P(e(a,b),S(e(a,x),e(x,b))),e(b,c))")));
}

TEST_CASE("parallel classes pair with their reversals") {
    // Two paths of shape (P-block, edge) and (edge, P-block) swap under reversal.
    auto t = parse_sp("P(S(P(e(s,a),S(e(s,x),e(x,a))),e(a,t)),S(e(s,b),P(e(b,t),S(e(b,y),e(y,t)))))");
    auto m = mirror_pairing(t);
    REQUIRE(m);
    REQUIRE(m->class_pairs.size() == 2);
    CHECK(m->class_pairs[0].backward == 1);
    CHECK(m->class_pairs[1].backward == 0);
}

TEST_CASE("mirror pairing agrees with brute force") {
    for (const auto& t : fixtures::random_corpus(150, 3, 10, 500)) {
        auto g = underlying_graph(t);
        auto s = g.index_of(t.source);
        auto tt = g.index_of(t.target);
        bool exchange = oracle::automorphisms(g, oracle::FixSet{s, tt}).size() >
                        oracle::automorphisms(g, oracle::FixBoth{s, tt}).size();
        CHECK(mirror_pairing(t).has_value() == exchange);
        if (auto r = reversal_automorphism(t)) CHECK(verify_bijection(t, t, *r, true));
    }
}
