#include "oracles.hpp"

#include "bassdyn/error.hpp"

#include <doctest.h>

using namespace bassdyn;

namespace {

  DefiningGraph graph_of(std::string const& fixture) {
    return *oracle::load(fixture).defining;
  }

  DefiningGraph cycle(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    }
    return DefiningGraph::from_adjacency(n, edges);
  }

  bool cites(ClassificationReport const& r, std::string const& key) {
    auto const& c = r.verdict->citations;
    return std::find(c.begin(), c.end(), key) != c.end();
  }

}  // namespace

TEST_CASE("factor examples") {
  auto c4 = graph_of("c4_racg.json");
  auto d  = irreducible_factors(c4, GroupType::racg);
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].vertices == std::vector<std::size_t>{0, 2});
  CHECK(d.factors[1].vertices == std::vector<std::size_t>{1, 3});
  CHECK(d.factors[0].tag == FactorTag::euclidean_dinf);
  CHECK(d.factors[1].tag == FactorTag::euclidean_dinf);
  CHECK(d.euclidean == 2);
  CHECK(d.residual.empty());

  auto p = irreducible_factors(cycle(5), GroupType::racg);
  REQUIRE(p.factors.size() == 1);
  CHECK(p.factors[0].tag == FactorTag::non_euclidean);

  auto two = DefiningGraph::from_adjacency(2, {});
  CHECK(irreducible_factors(two, GroupType::racg).factors[0].tag == FactorTag::euclidean_dinf);
  CHECK(irreducible_factors(two, GroupType::raag).factors[0].tag == FactorTag::non_euclidean);
  auto one = DefiningGraph::from_adjacency(1, {});
  CHECK(irreducible_factors(one, GroupType::racg).factors[0].tag == FactorTag::z2);
  CHECK(irreducible_factors(one, GroupType::raag).factors[0].tag == FactorTag::euclidean_z);
}

TEST_CASE("reassembly against the bipartition oracle") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_graph(rng, 1, 9, std::uniform_real_distribution<>(0.2, 0.9)(rng));
    auto d = irreducible_factors(g, GroupType::racg);
    std::vector<std::vector<std::size_t>> parts;
    for (auto const& f : d.factors) {
      parts.push_back(f.vertices);
      CHECK(!oracle::is_join(f.graph));
      CHECK(f.graph == g.induced(f.vertices));
    }
    CHECK(join(g, parts) == g);
    CHECK(oracle::is_join(g) == (d.factors.size() >= 2));
    CHECK(is_join_free(g) == !oracle::is_join(g));
  }
}

TEST_CASE("essentialness") {
  CHECK(!is_essential(graph_of("k13_racg.json"), GroupType::racg));
  CHECK(is_essential(cycle(5), GroupType::racg));
  CHECK(is_essential(graph_of("k13_racg.json"), GroupType::raag));
  std::mt19937_64 rng(59);
  for (int i = 0; i < 100; ++i) {
    auto g         = oracle::random_graph(rng, 1, 8);
    bool universal = false;
    for (std::size_t v = 0; v < g.number_of_vertices(); ++v) {
      bool all = true;
      for (std::size_t w = 0; w < g.number_of_vertices(); ++w) {
        all = all && (v == w || g.adjacent(v, w));
      }
      universal = universal || all;
    }
    CHECK(is_essential(g, GroupType::racg) == !universal);
  }
}

TEST_CASE("doubling embedding") {
  auto two = DefiningGraph::build({"u", "v"}, {});
  auto d   = doubling_embedding(two);
  CHECK(d.names() == std::vector<std::string>{"(u,0)", "(v,0)", "(u,1)", "(v,1)"});
  CHECK(d.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(is_join_free(d));
  CHECK(doubling_embedding(cycle(5)).number_of_vertices() == 10);
  auto k2 = DefiningGraph::build({"a", "b"}, {{"a", "b"}});
  CHECK_THROWS_AS((void) doubling_embedding(k2), Error);

  std::mt19937_64 rng(61);
  int             tested = 0;
  while (tested < 100) {
    auto g = oracle::random_graph(rng, 2, 8);
    if (oracle::is_join(g)) {
      continue;
    }
    ++tested;
    auto       dg = doubling_embedding(g);
    auto const n  = g.number_of_vertices();
    REQUIRE(dg.number_of_vertices() == 2 * n);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < n; ++w) {
        if (v == w) {
          CHECK(!dg.adjacent(v, n + w));
          continue;
        }
        CHECK(dg.adjacent(v, w));
        CHECK(dg.adjacent(n + v, n + w) == g.adjacent(v, w));
        CHECK(dg.adjacent(v, n + w));
      }
    }
    CHECK(!oracle::is_join(dg));
  }
}

TEST_CASE("euclidean boundary models") {
  auto dinf = euclidean_action(FactorTag::euclidean_dinf);
  REQUIRE(dinf.generators.size() == 2);
  for (auto const& gen : dinf.generators) {
    CHECK(gen.image == std::array<std::size_t, 2>{1, 0});
  }
  auto uv = dinf.generators[0].image[dinf.generators[1].image[0]];
  CHECK(uv == 0);
  CHECK(dinf.orbits() == 1);
  auto z = euclidean_action(FactorTag::euclidean_z);
  REQUIRE(z.generators.size() == 1);
  CHECK(z.generators[0].image == std::array<std::size_t, 2>{0, 1});
  CHECK(z.orbits() == 2);
  CHECK_THROWS_AS((void) euclidean_action(FactorTag::non_euclidean), Error);
  CHECK_THROWS_AS((void) euclidean_action(FactorTag::z2), Error);
}

TEST_CASE("structure strings") {
  CHECK(structure_string(GroupType::racg, 2, false) == "⊗²(C({0̆,1̆})⋊D∞)");
  CHECK(structure_string(GroupType::raag, 1, false) == "C({0̆,1̆}) ⊗ C(𝕋)");
  CHECK(structure_string(GroupType::racg, 1, true) == "(C(∂X_{Γ′})⋊G_{Γ′}) ⊗ (C({0̆,1̆})⋊D∞)");
  CHECK(structure_string(GroupType::raag, 3, true)
        == "(C(∂X_{Γ′})⋊G_{Γ′}) ⊗ C({0̆,1̆}³) ⊗ C(𝕋³)");
}

TEST_CASE("Nevo-Sageev verdicts") {
  auto c4 = classify_nevo_sageev(graph_of("c4_racg.json"), GroupType::racg, "c4");
  CHECK(c4.exit_code == ExitCode::positive);
  CHECK(c4.result["n"] == 2);
  CHECK(c4.result["structure"] == "⊗²(C({0̆,1̆})⋊D∞)");
  CHECK(c4.has_warning(warning::degenerate_gamma));
  CHECK(cites(c4, cite::cor_structure));
  CHECK(c4.verdict->text.find("minimal but not topologically free") != std::string::npos);

  auto pent = classify_nevo_sageev(graph_of("pentagon_racg.json"), GroupType::racg, "C5");
  CHECK(pent.exit_code == ExitCode::positive);
  CHECK(cites(pent, cite::thm_a));
  CHECK(pent.verdict->keys
        == std::vector<std::string>{"simple", "purely-infinite", "nuclear", "kirchberg-uct"});

  auto star = classify_nevo_sageev(graph_of("k13_racg.json"), GroupType::racg, "K13");
  CHECK(star.exit_code == ExitCode::failed);
  CHECK(star.verdict->text.find("not essential") != std::string::npos);

  auto point = classify_nevo_sageev(graph_of("point_raag.json"), GroupType::raag, "Z");
  CHECK(point.result["structure"] == "C({0̆,1̆}) ⊗ C(𝕋)");

  std::mt19937_64 rng(67);
  for (int i = 0; i < 200; ++i) {
    auto g    = oracle::random_graph(rng, 1, 8);
    auto type = i % 2 == 0 ? GroupType::racg : GroupType::raag;
    auto r    = classify_nevo_sageev(g, type, "random");
    auto d    = irreducible_factors(g, type);
    if (!is_essential(g, type)) {
      CHECK(r.exit_code == ExitCode::failed);
      continue;
    }
    bool non_euclidean = std::any_of(d.factors.begin(), d.factors.end(), [](Factor const& f) {
      return f.tag == FactorTag::non_euclidean;
    });
    if (non_euclidean) {
      CHECK((d.euclidean == 0) == cites(r, cite::thm_a));
    }
  }
}

TEST_CASE("visual boundary verdicts") {
  auto pent = classify_visual(graph_of("pentagon_racg.json"), GroupType::racg, "C5");
  CHECK(pent.exit_code == ExitCode::positive);
  CHECK(cites(pent, cite::thm_b1));
  auto f2 = classify_visual(graph_of("f2_raag.json"), GroupType::raag, "F2");
  CHECK(f2.exit_code == ExitCode::positive);
  CHECK(cites(f2, cite::thm_b2));
  auto k2 = classify_visual(graph_of("k2_raag.json"), GroupType::raag, "K2");
  CHECK(k2.exit_code == ExitCode::failed);
  CHECK(!k2.hypothesis("join-free")->value.value());
  auto small = classify_visual(DefiningGraph::from_adjacency(2, {}), GroupType::racg, "Dinf");
  CHECK(small.exit_code == ExitCode::failed);
  CHECK(!small.hypothesis("vertex-count")->value.value());
}
