#include "oracles.hpp"

#include "bassdyn/error.hpp"

#include <doctest.h>

using namespace bassdyn;

namespace {

  ErrorCode code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::ParseError;
  }

}  // namespace

TEST_CASE("defining graph construction errors") {
  CHECK(code_of([] { (void) DefiningGraph::build({"a"}, {{"a", "a"}}); })
        == ErrorCode::SelfLoop);
  CHECK(code_of([] { (void) DefiningGraph::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}); })
        == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { (void) DefiningGraph::build({"a"}, {{"a", "z"}}); })
        == ErrorCode::UnknownVertex);
  CHECK(code_of([] { (void) DefiningGraph::build({"a", "a"}, {}); })
        == ErrorCode::DuplicateVertex);
}

TEST_CASE("complement and components") {
  auto c4 = DefiningGraph::build({"a", "b", "c", "d"},
                                 {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  auto c  = c4.complement();
  CHECK(c.number_of_edges() == 2);
  CHECK(c.adjacent(0, 2));
  CHECK(c.adjacent(1, 3));
  CHECK(c.components() == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
  CHECK(c.complement() == c4);
}

TEST_CASE("component count agrees with relaxation oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto g = oracle::random_graph(rng, 1, 9, 0.25);
    CHECK(g.components().size() == oracle::components(g));
  }
}

TEST_CASE("oriented graph involution") {
  OrientedGraph g;
  auto          u = g.add_vertex("u");
  auto          w = g.add_vertex("w");
  auto          e = g.add_edge("e", u, w);
  CHECK(g.source(e) == u);
  CHECK(g.range(e) == w);
  CHECK(OrientedGraph::reverse(OrientedGraph::reverse(e)) == e);
  CHECK(g.source(OrientedGraph::reverse(e)) == w);
  CHECK(g.edge_name(OrientedGraph::reverse(e)) == "ē");
  CHECK(g.find_edge("~e") == OrientedGraph::reverse(e));
  CHECK(code_of([&] { (void) g.add_vertex("u"); }) == ErrorCode::DuplicateVertex);
}

TEST_CASE("first Betti number") {
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(first_betti_number(oracle::wedge(m, n).graph()) == m);
    }
  }
  CHECK(first_betti_number(oracle::bs(2, 3).graph()) == 1);
  OrientedGraph tree;
  for (int i = 0; i < 5; ++i) {
    tree.add_vertex("t" + std::to_string(i));
  }
  tree.add_edge("a", 0, 1);
  tree.add_edge("b", 0, 2);
  tree.add_edge("c", 2, 3);
  tree.add_edge("d", 2, 4);
  CHECK(first_betti_number(tree) == 0);
}

TEST_CASE("GBS indices and non-singularity") {
  auto g = oracle::bs(2, -3);
  CHECK(g.index(0) == 2);
  CHECK(g.index(1) == 3);
  CHECK(g.non_singular());
  CHECK(oracle::bs(1, 2).non_singular());

  OrientedGraph path;
  path.add_vertex("a");
  path.add_vertex("b");
  path.add_edge("e", 0, 1);
  auto singular = GraphOfGroups::gbs(path, {{Integer(2), Integer(1)}});
  CHECK(!singular.non_singular());
  CHECK(singular.singular_edges() == std::vector<EdgeId>{1});
  CHECK(code_of([&] { singular.require_non_singular(); }) == ErrorCode::SingularInput);
  CHECK(code_of([&] { (void) GraphOfGroups::gbs(path, {{Integer(0), Integer(1)}}); })
        == ErrorCode::ZeroIndex);
}

TEST_CASE("GBS split rule") {
  auto        g = oracle::bs(2, 3);
  auto const& b = g.backend();
  for (int x = -20; x <= 20; ++x) {
    for (EdgeId e : {0U, 1U}) {
      auto sp = b.split(e, Token(x));
      CHECK(sp.index < g.index(e));
      CHECK(b.transversal(e, sp.index) == sp.transversal);
      CHECK(b.compose(0, sp.transversal, b.embed(e, sp.edge_element)) == Token(x));
    }
  }
}

TEST_CASE("finite groups") {
  auto z6 = FiniteGroup::cyclic(6);
  CHECK(z6.order() == 6);
  CHECK(z6.multiply(4, 5) == 3);
  CHECK(z6.inverse(2) == 4);
  CHECK(code_of([] { (void) FiniteGroup::from_table({{0, 1}, {1, 1}}); })
        == ErrorCode::BadGroupTable);
  // S3 as a table: 0 id, 1 (12), 2 (13), 3 (23), 4 (123), 5 (132)
  std::vector<std::vector<std::uint32_t>> s3 = {{0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3},
                                                {2, 5, 0, 4, 3, 1}, {3, 4, 5, 0, 1, 2},
                                                {4, 3, 1, 2, 5, 0}, {5, 2, 3, 1, 0, 4}};
  auto g = FiniteGroup::from_table(s3);
  for (std::uint32_t a = 0; a < 6; ++a) {
    CHECK(g.multiply(a, g.inverse(a)) == 0);
  }
}

TEST_CASE("free product backend") {
  auto        doc = oracle::load("z2_z3.json");
  auto const& g   = *doc.groups;
  CHECK(g.kind() == GroupKind::trivial_edge_group);
  CHECK(g.index(0) == 3);  // into b
  CHECK(g.index(1) == 2);  // into a
  CHECK(g.non_singular());
  CHECK(g.gbs_backend() == nullptr);
}

TEST_CASE("reversal swaps indices") {
  auto g = oracle::circle({{2, 3}, {5, 7}});
  auto r = g.reversed();
  for (EdgeId e = 0; e < g.graph().number_of_edges(); ++e) {
    CHECK(r.index(e) == g.index(OrientedGraph::reverse(e)));
  }
}
