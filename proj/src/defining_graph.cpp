#include "bassdyn/defining_graph.hpp"

#include "bassdyn/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace bassdyn {

  DefiningGraph DefiningGraph::build(std::vector<std::string> const& vertices,
                                     std::vector<edge_type> const&   edges) {
    DefiningGraph                                   g;
    std::unordered_map<std::string, std::size_t> index;
    for (auto const& name : vertices) {
      if (!index.emplace(name, g._names.size()).second) {
        throw Error(ErrorCode::DuplicateVertex, "vertex '" + name + "'");
      }
      g._names.push_back(name);
    }
    std::size_t const n = g._names.size();
    g._adj.assign(n, std::vector<bool>(n, false));
    for (auto const& [a, b] : edges) {
      auto ia = index.find(a);
      if (ia == index.end()) {
        throw Error(ErrorCode::UnknownVertex,
                    "edge (" + a + ", " + b + ") names undeclared vertex '" + a
                        + "'");
      }
      auto ib = index.find(b);
      if (ib == index.end()) {
        throw Error(ErrorCode::UnknownVertex,
                    "edge (" + a + ", " + b + ") names undeclared vertex '" + b
                        + "'");
      }
      if (ia->second == ib->second) {
        throw Error(ErrorCode::SelfLoop, "edge (" + a + ", " + b + ")");
      }
      if (g._adj[ia->second][ib->second]) {
        throw Error(ErrorCode::DuplicateEdge, "edge (" + a + ", " + b + ")");
      }
      g._adj[ia->second][ib->second] = true;
      g._adj[ib->second][ia->second] = true;
    }
    return g;
  }

  DefiningGraph DefiningGraph::from_adjacency(
      std::size_t                                             n,
      std::vector<std::pair<vertex_type, vertex_type>> const& edges) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
    }
    std::vector<edge_type> named;
    for (auto [u, v] : edges) {
      named.emplace_back(names.at(u), names.at(v));
    }
    return build(names, named);
  }

  std::size_t DefiningGraph::number_of_edges() const noexcept {
    std::size_t count = 0;
    for (std::size_t u = 0; u < _adj.size(); ++u) {
      for (std::size_t v = u + 1; v < _adj.size(); ++v) {
        count += _adj[u][v] ? 1 : 0;
      }
    }
    return count;
  }

  std::vector<std::pair<DefiningGraph::vertex_type, DefiningGraph::vertex_type>>
  DefiningGraph::edges() const {
    std::vector<std::pair<vertex_type, vertex_type>> result;
    for (std::size_t u = 0; u < _adj.size(); ++u) {
      for (std::size_t v = u + 1; v < _adj.size(); ++v) {
        if (_adj[u][v]) {
          result.emplace_back(u, v);
        }
      }
    }
    return result;
  }

  DefiningGraph DefiningGraph::complement() const {
    DefiningGraph c = *this;
    for (std::size_t u = 0; u < _adj.size(); ++u) {
      for (std::size_t v = 0; v < _adj.size(); ++v) {
        c._adj[u][v] = u != v && !_adj[u][v];
      }
    }
    return c;
  }

  DefiningGraph
  DefiningGraph::induced(std::vector<vertex_type> const& vertices) const {
    DefiningGraph sub;
    for (auto v : vertices) {
      sub._names.push_back(_names.at(v));
    }
    sub._adj.assign(vertices.size(), std::vector<bool>(vertices.size(), false));
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      for (std::size_t j = 0; j < vertices.size(); ++j) {
        sub._adj[i][j] = _adj[vertices[i]][vertices[j]];
      }
    }
    return sub;
  }

  std::vector<std::vector<DefiningGraph::vertex_type>>
  DefiningGraph::components() const {
    std::size_t const                     n = _names.size();
    std::vector<std::size_t>              label(n, n);
    std::vector<std::vector<vertex_type>> result;
    for (std::size_t root = 0; root < n; ++root) {
      if (label[root] != n) {
        continue;
      }
      std::vector<vertex_type> component{root};
      label[root] = result.size();
      for (std::size_t i = 0; i < component.size(); ++i) {
        for (std::size_t w = 0; w < n; ++w) {
          if (_adj[component[i]][w] && label[w] == n) {
            label[w] = result.size();
            component.push_back(w);
          }
        }
      }
      std::sort(component.begin(), component.end());
      result.push_back(std::move(component));
    }
    return result;
  }

}  // namespace bassdyn
