#include "oracles.hpp"

#include "bassdyn/dynamics.hpp"
#include "bassdyn/error.hpp"

#include <doctest.h>

using namespace bassdyn;

namespace {

  struct Named {
    std::string   name;
    GraphOfGroups g;
  };

  std::vector<Named> corpus() {
    return {{"BS(1,1)", oracle::bs(1, 1)},
            {"BS(1,3)", oracle::bs(1, 3)},
            {"BS(2,2)", oracle::bs(2, 2)},
            {"BS(2,3)", oracle::bs(2, 3)},
            {"2-circle", oracle::circle({{2, 3}, {3, 2}})},
            {"3-circle", oracle::circle({{2, 2}, {2, 2}, {2, 2}})},
            {"wedge", oracle::wedge(2, 2)}};
  }

  ReducedWord rw(GraphOfGroups const& g, std::string const& text) {
    return reduce(g, parse_word(g, text, 0));
  }

  ErrorCode code_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.code();
    }
    return ErrorCode::FlagError;
  }

  // Every depth-D cylinder is carried into O1 by h1 or into O2 by h2.
  bool covers(GraphOfGroups const& g, FillingWitness const& w) {
    std::size_t deepest = 0;
    for (auto const* o : {&w.o1, &w.o2}) {
      for (auto const& c : o->cylinders) {
        deepest = std::max(deepest, c.size());
      }
    }
    auto const depth = std::max(w.h1.length(), w.h2.length()) + deepest + 1;
    for (auto const& q : oracle::paths(g, 0, depth)) {
      if (!oracle::member(w.o1, oracle::translate(g, 0, w.h1, q))
          && !oracle::member(w.o2, oracle::translate(g, 0, w.h2, q))) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("turn graph examples") {
  auto     bs23 = oracle::bs(2, 3);
  TurnGraph t(bs23);
  CHECK(t.allowed(0, 0));
  CHECK(t.allowed(0, 1));
  CHECK(t.allowed(1, 1));
  CHECK(t.allowed(1, 0));
  auto      bs13 = oracle::bs(1, 3);
  TurnGraph u(bs13);
  CHECK(u.allowed(0, 0));
  CHECK(u.allowed(0, 1));
  CHECK(u.allowed(1, 1));
  CHECK(!u.allowed(1, 0));

  OrientedGraph pair;
  pair.add_vertex("a");
  pair.add_vertex("b");
  pair.add_edge("e", 0, 1);
  auto      g = GraphOfGroups::gbs(pair, {{Integer(2), Integer(2)}});
  TurnGraph p(g);
  CHECK(p.allowed(0, 1));
  CHECK(p.allowed(1, 0));
  CHECK(!p.allowed(0, 0));

  OrientedGraph line;
  line.add_vertex("a");
  line.add_vertex("b");
  line.add_edge("e", 0, 1);
  auto singular = GraphOfGroups::gbs(line, {{Integer(2), Integer(1)}});
  CHECK(code_of([&] { TurnGraph bad(singular); }) == ErrorCode::SingularInput);
}

TEST_CASE("turn graph paths match enumerated levels") {
  for (auto const& [name, g] : corpus()) {
    TurnGraph t(g);
    for (VertexId v = 0; v < g.graph().number_of_vertices(); ++v) {
      TreeBoundary tree(g, v);
      for (std::size_t d = 0; d <= 6; ++d) {
        std::set<std::vector<EdgeId>> seen;
        for (auto const& p : tree.enumerate_level(d)) {
          std::vector<EdgeId> edges;
          for (auto const& l : p) {
            edges.push_back(l.edge);
          }
          seen.insert(edges);
        }
        auto mine = t.paths(v, d);
        INFO(name, " v=", v, " d=", d);
        CHECK(std::set<std::vector<EdgeId>>(mine.begin(), mine.end()) == seen);
        CHECK(mine.size() == seen.size());
      }
    }
    for (EdgeId e = 0; e < t.size(); ++e) {
      CHECK(t.continuations(e) >= 1);
    }
  }
}

TEST_CASE("repeatable examples") {
  auto bs23 = oracle::bs(2, 3);
  auto rs   = find_repeatable(bs23, 1);
  auto hit  = std::find_if(rs.begin(), rs.end(), [&](RepeatablePath const& r) {
    return format_path_word(bs23, r.mu.word()) == "0 e";
  });
  REQUIRE(hit != rs.end());
  CHECK(hit->flagged);

  auto c3 = oracle::circle({{2, 2}, {2, 2}, {2, 2}});
  CHECK(is_repeatable(c3, rw(c3, "0 ē1 0 ē2 0 ē3")));
  CHECK(!is_repeatable(c3, rw(c3, "0 ē1 0 ē2")));

  auto bs11  = oracle::bs(1, 1);
  auto rs11  = find_repeatable(bs11, 1);
  auto hit11 = std::find_if(rs11.begin(), rs11.end(), [&](RepeatablePath const& r) {
    return format_path_word(bs11, r.mu.word()) == "0 e";
  });
  REQUIRE(hit11 != rs11.end());
  CHECK(!hit11->flagged);
  CHECK(!flagged_repeatable(TurnGraph(bs11)).has_value());
  CHECK(flagged_repeatable(TurnGraph(bs23), VertexId{0}).has_value());

  CHECK(!is_repeatable(bs23, rw(bs23, "0 e 0 ē")));
  CHECK(find_repeatable(bs23, 3, 4).size() == 4);
}

TEST_CASE("repeatable paths by definition") {
  for (auto const& [name, g] : corpus()) {
    auto        rs    = find_repeatable(g, 3);
    auto const& graph = g.graph();
    CHECK(std::is_sorted(rs.begin(), rs.end(), [](auto const& a, auto const& b) {
      return a.mu.length() < b.mu.length();
    }));
    std::size_t brute = 0;
    for (VertexId v = 0; v < graph.number_of_vertices(); ++v) {
      for (std::size_t d = 1; d <= 3; ++d) {
        for (auto const& p : oracle::paths(g, v, d)) {
          auto const& first = p.front();
          auto const& last  = p.back();
          bool closed       = graph.source(last.edge) == v;
          bool junction = !(first.index == 0 && first.edge == OrientedGraph::reverse(last.edge));
          if (closed && junction) {
            ++brute;
          }
        }
      }
    }
    CHECK(rs.size() == brute);
    for (auto const& r : rs) {
      CHECK(is_repeatable(g, r.mu));
      CHECK(r.flagged == (g.index(OrientedGraph::reverse(r.mu.edges().back())) >= 2));
      auto twice = multiply(g, r.mu, r.mu);
      CHECK(twice.length() == 2 * r.mu.length());
    }
  }
}

TEST_CASE("minimality examples and oracle") {
  auto bs23 = oracle::bs(2, 3);
  CHECK(check_minimality(TurnGraph(bs23), 0).minimal);
  auto bs13 = oracle::bs(1, 3);
  auto m    = check_minimality(TurnGraph(bs13), 0);
  CHECK(!m.minimal);
  REQUIRE(m.edge.has_value());
  CHECK(*m.edge == 1);
  REQUIRE(m.trapped_point.has_value());
  TreeBoundary t(bs13, 0);
  CHECK(t.format_point(*m.trapped_point) == "(0 e)^∞");
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::pair<long, long>> ks(n, {2, 3});
    CHECK(check_minimality(TurnGraph(oracle::circle(ks)), 0).minimal);
  }
  for (auto const& [name, g] : corpus()) {
    INFO(name);
    CHECK(check_minimality(TurnGraph(g), 0).minimal == oracle::minimal(g, 0, 6));
  }
}

TEST_CASE("trapped points avoid what the edge flows to") {
  for (auto const& [name, g] : corpus()) {
    auto m = check_minimality(TurnGraph(g), 0);
    if (m.minimal || !m.trapped_point) {
      continue;
    }
    auto flows = oracle::flows_to(g, *m.edge, 6);
    for (auto const& l : m.trapped_point->unroll(12)) {
      CHECK(!flows.contains(l.edge));
    }
  }
}

TEST_CASE("boundary size agrees with the counting oracle") {
  auto extra = corpus();
  extra.push_back({"BS(1,2)", oracle::bs(1, 2)});
  extra.push_back({"BS(-1,1)", oracle::bs(-1, 1)});
  extra.push_back({"wedge3", oracle::wedge(3, 2, 3)});
  for (auto const& [name, g] : extra) {
    for (VertexId v = 0; v < g.graph().number_of_vertices(); ++v) {
      INFO(name, " v=", v);
      CHECK(boundary_infinite(TurnGraph(g), v).infinite == oracle::boundary_infinite(g, v));
    }
  }
  CHECK(!boundary_infinite(TurnGraph(oracle::bs(1, 1)), 0).infinite);
  CHECK(boundary_infinite(TurnGraph(oracle::bs(2, 3)), 0).infinite);
  auto counts = oracle::level_counts(oracle::bs(1, 1), 0, 10);
  for (std::size_t d = 1; d <= 10; ++d) {
    CHECK(counts[d] == 2);
  }
}

TEST_CASE("unimodularity") {
  auto q_of = [](GraphOfGroups const& g) { return check_unimodular(g, 0); };
  auto a    = q_of(oracle::bs(2, 3));
  CHECK(!a.unimodular);
  REQUIRE(a.basis.size() == 1);
  CHECK(abs(a.basis[0].q) == Rational(3, 2));
  CHECK(q_of(oracle::bs(3, 3)).unimodular);
  auto c = q_of(oracle::circle({{2, 3}, {3, 2}}));
  CHECK(c.unimodular);
  REQUIRE(c.basis.size() == 1);
  CHECK(c.basis[0].q == Rational(1));
  CHECK(q_of(oracle::bs(2, -2)).unimodular);
  CHECK(!q_of(oracle::bs(2, -3)).unimodular);
  CHECK(q_of(oracle::wedge(3, 2)).basis.size() == 3);

  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> k(1, 4), sign(0, 1);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::pair<long, long>> ks;
    auto n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    for (std::size_t j = 0; j < n; ++j) {
      ks.emplace_back(k(rng) * (sign(rng) ? 1 : -1), k(rng));
    }
    auto g = oracle::circle(ks);
    auto r = check_unimodular(g, 0);
    auto s = check_unimodular(g.reversed(), 0);
    CHECK(r.unimodular == s.unimodular);
    Rational q = 1;
    for (auto [x, y] : ks) {
      q *= Rational(x < 0 ? -y : y, std::abs(x));
    }
    CHECK(r.unimodular == (abs(q) == 1));
    REQUIRE(r.basis.size() == 1);
    CHECK((abs(r.basis[0].q) == abs(q) || abs(r.basis[0].q) * abs(q) == 1));
    CHECK(abs(r.basis[0].q * s.basis[0].q) == 1);
    CHECK(r.basis[0].q == oracle::q_of(g, r.basis[0].loop.word()));
  }
  auto doc = oracle::load("z2_z3.json");
  CHECK(code_of([&] { (void) check_unimodular(*doc.groups, 0); }) == ErrorCode::NotGBS);
}

TEST_CASE("filling witness for BS(2,3)") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         o1 = t.cylinder(t.parse_path("0 e"));
  auto         o2 = t.cylinder(t.parse_path("0 ē"));
  auto         w  = construct_filling_witness(t, std::nullopt, o1, o2, 10000);
  CHECK(!w.trivial);
  CHECK(w.candidates <= 10000);
  CHECK(verify_filling(t, w).ok);
  CHECK(covers(g, w));
  CHECK(t.unite(t.image(invert(g, w.h1), o1), t.image(invert(g, w.h2), o2)) == t.full());

  auto bad = w;
  bad.h1   = identity(g, 0);
  bad.h2   = identity(g, 0);
  auto r   = verify_filling(t, bad);
  CHECK(!r.ok);
  CHECK(!r.failure.empty());

  auto full = construct_filling_witness(t, std::nullopt, t.full(), t.full(), 10);
  CHECK(full.trivial);
  CHECK(is_identity(g, full.h1));
  CHECK(is_identity(g, full.h2));
  CHECK(verify_filling(t, full).ok);

  CHECK(code_of([&] {
          (void) construct_filling_witness(t, std::nullopt, CylinderUnion{}, o2, 10);
        })
        == ErrorCode::HypothesisFailed);
  CHECK(code_of([&] {
          (void) construct_filling_witness(t, std::nullopt, o1, t.cylinder(t.parse_path(
                                                                  "0 ē 1 ē 2 ē 1 e")), 1);
        })
        == ErrorCode::NotFoundWithinBound);
}

TEST_CASE("filling witness hypotheses") {
  auto         bs13 = oracle::bs(1, 3);
  TreeBoundary t(bs13, 0);
  CHECK(code_of([&] {
          (void) construct_filling_witness(t, std::nullopt, t.cylinder(t.parse_path("0 e")),
                                           t.cylinder(t.parse_path("0 ē")), 10000);
        })
        == ErrorCode::HypothesisFailed);
  auto         bs11 = oracle::bs(1, 1);
  TreeBoundary u(bs11, 0);
  CHECK(code_of([&] {
          (void) construct_filling_witness(u, std::nullopt, u.cylinder(u.parse_path("0 e")),
                                           u.cylinder(u.parse_path("0 ē")), 10000);
        })
        == ErrorCode::HypothesisFailed);
  auto         bs23 = oracle::bs(2, 3);
  TreeBoundary v(bs23, 0);
  CHECK(code_of([&] {
          (void) construct_filling_witness(v, rw(bs23, "0 e 0 ē 1"), v.full(), v.full(), 10);
        })
        == ErrorCode::HypothesisFailed);
}

TEST_CASE("random filling witnesses verify exactly") {
  std::mt19937_64 rng(43);
  std::size_t     built = 0;
  for (auto const& g : {oracle::bs(2, 3), oracle::circle({{2, 3}, {3, 2}}),
                        oracle::circle({{2, 2}, {2, 2}, {2, 2}})}) {
    TreeBoundary t(g, 0);
    auto         pool = t.enumerate_level(2);
    for (int i = 0; i < 6; ++i) {
      auto pick = [&] {
        return t.cylinder(
            pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
      };
      auto o1 = pick();
      auto o2 = pick();
      try {
        auto w = construct_filling_witness(t, std::nullopt, o1, o2, 10000);
        CHECK(verify_filling(t, w).ok);
        CHECK(covers(g, w));
        ++built;
      } catch (Error const& e) {
        INFO(std::string(e.what()), " ", t.format_union(o1), " ", t.format_union(o2));
        CHECK(e.code() == ErrorCode::NotFoundWithinBound);
      }
    }
  }
  CHECK(built >= 12);
}

TEST_CASE("subequivalence") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         p = t.parse_path("0 e");
  SubequivalenceWitness ok{t.cylinder(p), t.full(), {{p, identity(g, 0)}}};
  CHECK(verify_subequivalence(t, ok).ok);

  auto overlap = ok;
  overlap.f    = t.full();
  overlap.pieces = {{Path{}, identity(g, 0)}, {p, identity(g, 0)}};
  auto r         = verify_subequivalence(t, overlap);
  CHECK(!r.ok);
  CHECK(!r.locus.empty());

  SubequivalenceWitness uncovered{t.full(), t.full(), {{p, identity(g, 0)}}};
  CHECK(!verify_subequivalence(t, uncovered).ok);

  SubequivalenceWitness outside{t.cylinder(p), t.cylinder(t.parse_path("1 e")),
                                {{p, identity(g, 0)}}};
  CHECK(!verify_subequivalence(t, outside).ok);
}

TEST_CASE("paradoxical witness") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         o = t.cylinder(t.parse_path("0 e"));
  auto         w = construct_paradoxical(t, std::nullopt, o, 10000);
  CHECK(verify_paradoxical(t, w).ok);
  CHECK(verify_subequivalence(t, w.first).ok);
  CHECK(verify_subequivalence(t, w.second).ok);
  CHECK(t.intersect(w.o1, w.o2).empty());
  CHECK(t.contains(o, w.o1));
  CHECK(t.contains(o, w.o2));

  auto bad = w;
  bad.o2   = w.o1;
  CHECK(!verify_paradoxical(t, bad).ok);
}

TEST_CASE("north-south dynamics") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         gamma = rw(g, "0 e");
  auto         ns    = verify_north_south(t, gamma, 2, 8);
  CHECK(ns.m >= 1);
  CHECK(ns.m <= 8);
  CHECK(t.format_point(ns.attracting) == "(0 e)^∞");
  CHECK(t.contains(ns.u, ns.attracting));
  CHECK(t.contains(ns.v, ns.repelling));
  auto gm = power(g, gamma, ns.m);
  CHECK(t.contains(ns.u, t.image(gm, t.complement(ns.v))));
  CHECK(t.contains(ns.v, t.image(invert(g, gm), t.complement(ns.u))));
  if (ns.m > 1) {
    auto gp = power(g, gamma, ns.m - 1);
    CHECK(!(t.contains(ns.u, t.image(gp, t.complement(ns.v)))
            && t.contains(ns.v, t.image(invert(g, gp), t.complement(ns.u)))));
  }

  // pointwise check on eventually periodic points
  std::size_t checked = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (auto const& c : t.enumerate_level(d)) {
      for (auto const& k : t.enumerate_level(1)) {
        Path twice = c;
        twice.insert(twice.end(), k.begin(), k.end());
        twice.insert(twice.end(), k.begin(), k.end());
        if (!t.is_path(twice)) {
          continue;
        }
        BoundaryPoint xi(c, k);
        if (t.contains(ns.v, xi)) {
          continue;
        }
        try {
          CHECK(t.contains(ns.u, t.act(gm, xi)));
          ++checked;
        } catch (Error const& e) {
          CHECK(e.code() == ErrorCode::NonPeriodicCarry);
        }
      }
    }
  }
  CHECK(checked > 20);

  auto zero = verify_north_south(t, gamma, 0, 8);
  CHECK(zero.m == 1);
  CHECK(code_of([&] { (void) verify_north_south(t, gamma, 6, 1); })
        == ErrorCode::BoundExceeded);

  auto         bs11 = oracle::bs(1, 1);
  TreeBoundary u(bs11, 0);
  CHECK(verify_north_south(u, rw(bs11, "0 e"), 2, 8).m >= 1);
}

TEST_CASE("classify GBS") {
  auto hyp_values = [](ClassificationReport const& r) {
    std::map<std::string, bool> out;
    for (auto const& h : r.hypotheses) {
      out[h.name] = h.value.value_or(false);
    }
    return out;
  };
  auto a = classify_gbs(oracle::bs(2, 3), 0, "BS(2,3)");
  CHECK(a.exit_code == ExitCode::positive);
  for (auto const& [name, value] : hyp_values(a)) {
    CHECK(value);
  }
  REQUIRE(a.verdict.has_value());
  CHECK(a.verdict->keys
        == std::vector<std::string>{"strong-boundary", "topologically-free", "kirchberg-uct",
                                    "cstar-simple"});
  CHECK(a.has_warning(warning::unimod_typo));
  CHECK(a.has_warning(warning::q_orientation));

  auto b  = classify_gbs(oracle::bs(2, 2), 0, "BS(2,2)");
  auto hb = hyp_values(b);
  CHECK(b.exit_code == ExitCode::failed);
  CHECK(!hb[hyp::not_unimodular]);
  CHECK(hb[hyp::boundary_infinite]);
  CHECK(hb[hyp::minimal]);
  CHECK(hb[hyp::repeatable_path]);
  REQUIRE(b.verdict.has_value());
  CHECK(std::find(b.verdict->keys.begin(), b.verdict->keys.end(), "not-topologically-free")
        != b.verdict->keys.end());

  auto c  = classify_gbs(oracle::bs(1, 3), 0, "BS(1,3)");
  auto hc = hyp_values(c);
  CHECK(c.exit_code == ExitCode::failed);
  CHECK(!hc[hyp::minimal]);
  CHECK(hc[hyp::boundary_infinite]);
  CHECK(hc[hyp::repeatable_path]);
  CHECK(hc[hyp::not_unimodular]);

  auto w = classify_gbs(oracle::wedge(2, 2, 3), 0, "wedge");
  CHECK(!hyp_values(w)[hyp::not_unimodular]);

  auto doc = oracle::load("z2_z3.json");
  CHECK(code_of([&] { (void) classify_gbs(*doc.groups, 0, "z"); }) == ErrorCode::NotGBS);
  CHECK(classify_boundary(*doc.groups, 0, "z").exit_code == ExitCode::positive);
}
