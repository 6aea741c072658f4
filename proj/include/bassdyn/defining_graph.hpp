#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bassdyn {

  // A finite simple graph. Vertices are indexed 0..n-1 in declaration order
  // and carry display names.
  class DefiningGraph {
   public:
    using vertex_type = std::size_t;
    using edge_type   = std::pair<std::string, std::string>;

    DefiningGraph() = default;

    // Throws Error with SelfLoop, DuplicateEdge, UnknownVertex or
    // DuplicateVertex, naming the offending element.
    static DefiningGraph build(std::vector<std::string> const& vertices,
                               std::vector<edge_type> const&   edges);

    // Unnamed vertices "0", "1", ...; edges as index pairs.
    static DefiningGraph
    from_adjacency(std::size_t n,
                   std::vector<std::pair<vertex_type, vertex_type>> const& edges);

    [[nodiscard]] std::size_t number_of_vertices() const noexcept {
      return _names.size();
    }
    [[nodiscard]] std::size_t number_of_edges() const noexcept;

    [[nodiscard]] bool adjacent(vertex_type u, vertex_type v) const {
      return _adj[u][v];
    }

    [[nodiscard]] std::string const& name(vertex_type v) const {
      return _names[v];
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    // Edges as (u, v) with u < v, sorted.
    [[nodiscard]] std::vector<std::pair<vertex_type, vertex_type>>
    edges() const;

    [[nodiscard]] DefiningGraph complement() const;

    // Induced subgraph on `vertices` (kept in the given order).
    [[nodiscard]] DefiningGraph
    induced(std::vector<vertex_type> const& vertices) const;

    // Connected components, each sorted, ordered by smallest vertex.
    [[nodiscard]] std::vector<std::vector<vertex_type>> components() const;

    [[nodiscard]] bool connected() const {
      return components().size() <= 1;
    }

    bool operator==(DefiningGraph const& that) const {
      return _names == that._names && _adj == that._adj;
    }

   private:
    std::vector<std::string>       _names;
    std::vector<std::vector<bool>> _adj;
  };

}  // namespace bassdyn
