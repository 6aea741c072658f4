#pragma once

#include "bassdyn/defining_graph.hpp"
#include "bassdyn/report.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace bassdyn {

  enum class GroupType { racg, raag };

  [[nodiscard]] std::string_view group_type_name(GroupType) noexcept;

  enum class FactorTag { euclidean_dinf, euclidean_z, z2, non_euclidean };

  [[nodiscard]] std::string_view factor_tag_name(FactorTag) noexcept;

  [[nodiscard]] inline bool is_euclidean(FactorTag t) noexcept {
    return t == FactorTag::euclidean_dinf || t == FactorTag::euclidean_z;
  }

  struct Factor {
    std::vector<DefiningGraph::vertex_type> vertices;  // sorted, in the parent graph
    DefiningGraph                           graph;     // induced subgraph
    FactorTag                               tag;
  };

  // Gamma as the join of its irreducible factors.
  struct FactorDecomposition {
    std::vector<Factor>                     factors;
    std::size_t                             euclidean = 0;  // n
    std::vector<DefiningGraph::vertex_type> residual;       // vertices of Gamma'
  };

  // Factors are the components of the complement graph.
  [[nodiscard]] FactorDecomposition irreducible_factors(DefiningGraph const& g,
                                                        GroupType            type);

  // The join of the given vertex classes: edges inside each class as in `g`,
  // all edges across classes.
  [[nodiscard]] DefiningGraph
  join(DefiningGraph const& g, std::vector<std::vector<DefiningGraph::vertex_type>> const& parts);

  [[nodiscard]] bool is_join_free(DefiningGraph const& g);

  [[nodiscard]] bool is_essential(DefiningGraph const& g, GroupType type);

  // Vertices V x {0, 1}, named "(v,i)": (v,1)(w,1) iff vw is an edge,
  // (v,0)(w,0) always, (v,0)(w,1) iff v != w. Throws NotIrreducible and
  // DoublingJoinFound.
  [[nodiscard]] DefiningGraph doubling_embedding(DefiningGraph const& g);

  // Generator actions on the two points {0̆, 1̆} as permutations.
  struct EuclideanBoundaryModel {
    struct Generator {
      std::string                name;
      std::array<std::size_t, 2> image;

      bool operator==(Generator const&) const = default;
    };
    std::vector<Generator> generators;

    [[nodiscard]] std::size_t orbits() const;
  };

  // Throws NotEuclidean.
  [[nodiscard]] EuclideanBoundaryModel euclidean_action(FactorTag tag);

  // "C(∂X_{Γ′})⋊G_{Γ′}" tensored with the Euclidean part; the first factor is
  // dropped when Gamma' is empty.
  [[nodiscard]] std::string structure_string(GroupType type, std::size_t n, bool residual);

  [[nodiscard]] ClassificationReport classify_nevo_sageev(DefiningGraph const& g,
                                                          GroupType            type,
                                                          std::string const&   instance);

  [[nodiscard]] ClassificationReport classify_visual(DefiningGraph const& g,
                                                     GroupType            type,
                                                     std::string const&   instance);

}  // namespace bassdyn
