#include "oracles.hpp"

#include "bassdyn/error.hpp"

#include <doctest.h>

using namespace bassdyn;

namespace {

  std::vector<GraphOfGroups> corpus() {
    return {oracle::bs(1, 1), oracle::bs(1, 3), oracle::bs(2, 2), oracle::bs(2, 3),
            oracle::circle({{2, 3}, {3, 2}}), oracle::circle({{2, 2}, {2, 2}, {2, 2}}),
            oracle::wedge(2, 2)};
  }

  // gamma . Z(p) as the union of Z(gamma q) over the depth-(|p|+|gamma|+1) refinement.
  std::vector<Path> image_oracle(GraphOfGroups const& g,
                                 VertexId             base,
                                 ReducedWord const&   gamma,
                                 Path const&          p) {
    std::vector<Path> out;
    for (auto const& q : oracle::paths(g, base, p.size() + gamma.length() + 1)) {
      if (is_prefix(p, q)) {
        out.push_back(oracle::translate(g, base, gamma, q));
      }
    }
    return out;
  }

  bool same_points(GraphOfGroups const& g,
                   VertexId             base,
                   std::vector<Path> const& a,
                   CylinderUnion const& b,
                   std::size_t          depth) {
    return oracle::points(g, base, CylinderUnion{a}, depth) == oracle::points(g, base, b, depth);
  }

  std::optional<BoundaryPoint> random_point(TreeBoundary const& t,
                                            GraphOfGroups const& g,
                                            std::mt19937_64&     rng) {
    auto pre   = t.enumerate_level(std::uniform_int_distribution<std::size_t>(0, 3)(rng));
    auto const& prefix = pre[std::uniform_int_distribution<std::size_t>(0, pre.size() - 1)(rng)];
    auto       end     = t.endpoint(prefix);
    TreeBoundary local(g, end);
    auto cycles = local.enumerate_level(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
    std::shuffle(cycles.begin(), cycles.end(), rng);
    for (auto const& c : cycles) {
      if (local.endpoint(c) != end) {
        continue;
      }
      Path twice = prefix;
      twice.insert(twice.end(), c.begin(), c.end());
      twice.insert(twice.end(), c.begin(), c.end());
      if (t.is_path(twice)) {
        return BoundaryPoint(prefix, c);
      }
    }
    return std::nullopt;
  }

}  // namespace

TEST_CASE("level examples") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  CHECK(t.enumerate_level(0) == std::vector<Path>{Path{}});
  auto one = t.enumerate_level(1);
  REQUIRE(one.size() == 5);
  CHECK(t.format_path(one[0]) == "0 e");
  CHECK(t.format_path(one[4]) == "2 ē");
  auto         h = oracle::bs(1, 1);
  TreeBoundary u(h, 0);
  auto         three = u.enumerate_level(3);
  REQUIRE(three.size() == 2);
  CHECK(u.format_path(three[0]) == "0 e 0 e 0 e");
  CHECK(u.format_path(three[1]) == "0 ē 0 ē 0 ē");
}

TEST_CASE("singular graphs are refused") {
  OrientedGraph path;
  path.add_vertex("a");
  path.add_vertex("b");
  path.add_edge("e", 0, 1);
  auto g = GraphOfGroups::gbs(path, {{Integer(2), Integer(1)}});
  CHECK_THROWS_AS(TreeBoundary(g, 0), Error);
}

TEST_CASE("levels agree with the path oracle") {
  for (auto const& g : corpus()) {
    for (VertexId v = 0; v < g.graph().number_of_vertices(); ++v) {
      TreeBoundary t(g, v);
      auto         counts = oracle::level_counts(g, v, 6);
      for (std::size_t d = 0; d <= 6; ++d) {
        auto mine   = t.enumerate_level(d);
        auto theirs = oracle::paths(g, v, d);
        std::sort(theirs.begin(), theirs.end(), canonical_less);
        CHECK(mine == theirs);
        CHECK(Integer(t.count_level(d)) == counts[d]);
        CHECK(std::is_sorted(mine.begin(), mine.end(), canonical_less));
      }
    }
  }
}

TEST_CASE("set algebra examples") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  CHECK(t.complement(t.full()).empty());
  auto a = t.cylinder(t.parse_path("0 e"));
  auto b = t.cylinder(t.parse_path("0 ē"));
  CHECK(t.intersect(a, b).empty());
  CHECK(t.format_union(t.complement(a)) == "{Z(1 e), Z(0 ē), Z(1 ē), Z(2 ē)}");
  CHECK(t.unite(t.complement(a), a) == t.full());
}

TEST_CASE("set algebra agrees with membership") {
  std::mt19937_64 rng(17);
  for (auto const& g : corpus()) {
    TreeBoundary t(g, 0);
    auto         pool = t.enumerate_level(3);
    auto pick = [&] {
      std::vector<Path> ps;
      auto              n = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int i = 0; i < n; ++i) {
        auto p = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        p.resize(std::uniform_int_distribution<std::size_t>(0, 3)(rng));
        ps.push_back(p);
      }
      return t.canonicalize(ps);
    };
    for (int i = 0; i < 60; ++i) {
      auto a  = pick();
      auto b  = pick();
      auto pa = oracle::points(g, 0, a, 5);
      auto pb = oracle::points(g, 0, b, 5);
      std::set<Path> u, x, c, d;
      std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(u, u.end()));
      std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                            std::inserter(x, x.end()));
      std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(),
                          std::inserter(d, d.end()));
      for (auto const& p : oracle::paths(g, 0, 5)) {
        if (!pa.contains(p)) {
          c.insert(p);
        }
      }
      CHECK(oracle::points(g, 0, t.unite(a, b), 5) == u);
      CHECK(oracle::points(g, 0, t.intersect(a, b), 5) == x);
      CHECK(oracle::points(g, 0, t.difference(a, b), 5) == d);
      CHECK(oracle::points(g, 0, t.complement(a), 5) == c);
      CHECK(t.contains(a, b) == std::includes(pa.begin(), pa.end(), pb.begin(), pb.end()));
      CHECK(t.canonicalize(a.cylinders) == a);
    }
  }
}

TEST_CASE("levels partition the boundary") {
  for (auto const& g : corpus()) {
    TreeBoundary t(g, 0);
    for (std::size_t d = 0; d <= 4; ++d) {
      auto level = t.enumerate_level(d);
      CHECK(t.canonicalize(level) == t.full());
      for (std::size_t i = 0; i + 1 < level.size() && i < 20; ++i) {
        CHECK(t.intersect(t.cylinder(level[i]), t.cylinder(level[i + 1])).empty());
      }
    }
  }
}

TEST_CASE("image examples") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto gamma = reduce(g, parse_word(g, "0 e 0"));
  CHECK(t.format_union(t.image(gamma, t.parse_path("0 e"))) == "{Z(0 e 0 e)}");
  CHECK(t.image(identity(g, 0), t.parse_path("1 ē")) == t.cylinder(t.parse_path("1 ē")));
}

TEST_CASE("image agrees with the pushforward oracle") {
  std::mt19937_64 rng(23);
  for (auto const& g : corpus()) {
    TreeBoundary t(g, 0);
    auto         pool = t.enumerate_level(2);
    for (int i = 0; i < 60; ++i) {
      auto gamma = reduce(g, oracle::random_loop(g, 0, rng, 3, 6));
      if (gamma.length() > 2) {
        continue;
      }
      auto p     = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      p.resize(std::uniform_int_distribution<std::size_t>(0, 1)(rng));
      auto img   = t.image(gamma, p);
      auto depth = p.size() + 2 * gamma.length() + 1;
      CHECK(same_points(g, 0, image_oracle(g, 0, gamma, p), img, depth));
      CHECK(t.image(invert(g, gamma), img) == t.cylinder(p));
      auto delta = reduce(g, oracle::random_loop(g, 0, rng, 2, 6));
      CHECK(t.image(delta, img) == t.image(multiply(g, delta, gamma), t.cylinder(p)));
      CylinderUnion covered;
      for (auto const& c : t.enumerate_level(2)) {
        auto part = t.image(gamma, c);
        CHECK(t.intersect(covered, part).empty());
        covered = t.unite(covered, part);
      }
      CHECK(covered == t.full());
    }
  }
}

TEST_CASE("act examples and laws") {
  auto         g  = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         xi = t.parse_point("(0 e)");
  CHECK(t.act(identity(g, 0), xi) == xi);
  CHECK(t.act(reduce(g, parse_word(g, "0 e 0")), xi) == xi);
  CHECK(t.format_point(xi) == "(0 e)^∞");
  CHECK_THROWS_AS((void) t.act(reduce(g, parse_word(g, "1 e 5")), xi), Error);
}

TEST_CASE("act agrees with truncated reduction") {
  std::mt19937_64 rng(29);
  std::size_t     checked = 0;
  for (auto const& g : corpus()) {
    TreeBoundary t(g, 0);
    for (int i = 0; i < 40; ++i) {
      auto xi = random_point(t, g, rng);
      if (!xi) {
        continue;
      }
      auto gamma = reduce(g, oracle::random_loop(g, 0, rng, 3, 6));
      BoundaryPoint eta;
      try {
        eta = t.act(gamma, *xi);
      } catch (Error const& e) {
        CHECK(e.code() == ErrorCode::NonPeriodicCarry);
        continue;
      }
      ++checked;
      auto m      = xi->prefix().size() + 2 * xi->cycle().size() + gamma.length() + 2;
      auto finite = oracle::translate(g, 0, gamma, xi->unroll(m));
      CHECK(is_prefix(finite, eta.unroll(finite.size() + 1)));
      CHECK(t.contains(t.image(gamma, xi->unroll(m)), eta));
      CHECK(t.act(invert(g, gamma), eta) == *xi);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("periodic limits are fixed points") {
  auto         g = oracle::bs(2, 3);
  TreeBoundary t(g, 0);
  auto         mu = reduce(g, parse_word(g, "0 e"));
  CHECK(t.format_point(t.periodic_limit(mu)) == "(0 e)^∞");
  CHECK(t.format_point(t.periodic_limit(reduce(g, parse_word(g, "0 ē 1 ē"))))
        == "(0 ē 1 ē)^∞");
  std::mt19937_64 rng(31);
  std::size_t     checked = 0;
  for (auto const& h : corpus()) {
    TreeBoundary u(h, 0);
    for (int i = 0; i < 30; ++i) {
      auto w = reduce(h, oracle::random_loop(h, 0, rng, 4, 4));
      try {
        auto lim = u.periodic_limit(w);
        INFO(format_word(h, w), " -> ", u.format_point(lim));
        CHECK(u.act(w, lim) == lim);
        ++checked;
      } catch (Error const& e) {
        CHECK((e.code() == ErrorCode::NonPeriodicCarry
               || e.code() == ErrorCode::HypothesisFailed));
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("text round trips") {
  auto         g = oracle::circle({{2, 3}, {3, 2}});
  TreeBoundary t(g, 0);
  for (auto const& p : t.enumerate_level(3)) {
    CHECK(t.parse_path(t.format_path(p)) == p);
  }
  auto xi = t.parse_point("1 e2 (0 e1 0 e2)");
  CHECK(t.parse_point(t.format_point(xi)) == xi);
}
