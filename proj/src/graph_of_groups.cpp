#include "bassdyn/graph_of_groups.hpp"

#include "bassdyn/error.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace bassdyn {

  namespace {

    // Precomposed macron forms of the five Latin vowels.
    constexpr std::array<std::pair<char, char const*>, 10> precomposed_macron{{
        {'a', "\xC4\x81"},
        {'e', "\xC4\x93"},
        {'i', "\xC4\xAB"},
        {'o', "\xC5\x8D"},
        {'u', "\xC5\xAB"},
        {'A', "\xC4\x80"},
        {'E', "\xC4\x92"},
        {'I', "\xC4\xAA"},
        {'O', "\xC5\x8C"},
        {'U', "\xC5\xAA"},
    }};

    constexpr char const* combining_macron = "\xCC\x84";

    std::size_t first_code_point_length(std::string_view s) {
      if (s.empty()) {
        return 0;
      }
      auto c = static_cast<unsigned char>(s[0]);
      std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
      return std::min(len, s.size());
    }

    std::string decomposed_reverse_name(std::string_view id) {
      auto n = first_code_point_length(id);
      return std::string(id.substr(0, n)) + combining_macron
             + std::string(id.substr(n));
    }

    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        parent[b] = a;
        return true;
      }
    };

  }  // namespace

  std::string reverse_edge_name(std::string_view id) {
    if (!id.empty()) {
      for (auto [c, macron] : precomposed_macron) {
        if (id[0] == c) {
          return std::string(macron) + std::string(id.substr(1));
        }
      }
    }
    return decomposed_reverse_name(id);
  }

  ////////////////////////////////////////////////////////////////////////
  // OrientedGraph
  ////////////////////////////////////////////////////////////////////////

  VertexId OrientedGraph::add_vertex(std::string name) {
    auto id = static_cast<VertexId>(_vertex_names.size());
    if (!_vertex_index.emplace(name, id).second) {
      throw Error(ErrorCode::DuplicateVertex, "vertex '" + name + "'");
    }
    _vertex_names.push_back(std::move(name));
    _incoming.emplace_back();
    return id;
  }

  void OrientedGraph::add_alias(std::string alias, EdgeId e) {
    auto [it, inserted] = _edge_index.emplace(alias, e);
    if (!inserted && it->second != e) {
      throw Error(ErrorCode::BrokenInvolution,
                  "edge name '" + alias + "' is used twice");
    }
  }

  EdgeId OrientedGraph::add_edge(std::string name,
                                 VertexId    from,
                                 VertexId    to,
                                 std::string reverse_name) {
    if (from >= number_of_vertices() || to >= number_of_vertices()) {
      throw Error(ErrorCode::UnknownVertex, "edge '" + name + "'");
    }
    if (reverse_name.empty()) {
      reverse_name = reverse_edge_name(name);
    }
    if (reverse_name == name) {
      throw Error(ErrorCode::BrokenInvolution,
                  "edge '" + name + "' would be its own reverse");
    }
    auto e = static_cast<EdgeId>(_source.size());
    add_alias(name, e);
    add_alias(reverse_name, e ^ 1);
    add_alias("~" + name, e ^ 1);
    add_alias(decomposed_reverse_name(name), e ^ 1);
    _source.push_back(from);
    _source.push_back(to);
    _edge_names.push_back(std::move(name));
    _edge_names.push_back(std::move(reverse_name));
    _incoming[to].push_back(e);
    _incoming[from].push_back(e ^ 1);
    std::sort(_incoming[to].begin(), _incoming[to].end());
    std::sort(_incoming[from].begin(), _incoming[from].end());
    return e;
  }

  OrientedGraph OrientedGraph::from_darts(std::vector<std::string> const& vertices,
                                          std::vector<Dart> const& darts) {
    OrientedGraph g;
    for (auto const& v : vertices) {
      g.add_vertex(v);
    }
    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < darts.size(); ++i) {
      if (!by_name.emplace(darts[i].name, i).second) {
        throw Error(ErrorCode::BrokenInvolution,
                    "edge name '" + darts[i].name + "' is used twice");
      }
    }
    auto vertex = [&g](std::string const& name, std::string const& edge) {
      auto v = g.find_vertex(name);
      if (!v) {
        throw Error(ErrorCode::UnknownVertex,
                    "edge '" + edge + "' names undeclared vertex '" + name + "'");
      }
      return *v;
    };
    std::vector<bool> placed(darts.size(), false);
    for (std::size_t i = 0; i < darts.size(); ++i) {
      if (placed[i]) {
        continue;
      }
      auto const& d  = darts[i];
      auto        it = by_name.find(d.partner);
      if (it == by_name.end()) {
        throw Error(ErrorCode::BrokenInvolution,
                    "edge '" + d.name + "' has no partner '" + d.partner + "'");
      }
      auto const& p = darts[it->second];
      if (it->second == i) {
        throw Error(ErrorCode::BrokenInvolution,
                    "edge '" + d.name + "' is its own partner");
      }
      if (p.partner != d.name) {
        throw Error(ErrorCode::BrokenInvolution,
                    "partner of partner of '" + d.name + "' is '" + p.partner
                        + "'");
      }
      if (p.from != d.to || p.to != d.from) {
        throw Error(ErrorCode::BrokenInvolution,
                    "edges '" + d.name + "' and '" + p.name
                        + "' do not swap source and range");
      }
      g.add_edge(d.name, vertex(d.from, d.name), vertex(d.to, d.name), p.name);
      placed[i]          = true;
      placed[it->second] = true;
    }
    return g;
  }

  std::optional<VertexId> OrientedGraph::find_vertex(std::string_view name) const {
    auto it = _vertex_index.find(std::string(name));
    if (it == _vertex_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<EdgeId> OrientedGraph::find_edge(std::string_view name) const {
    auto it = _edge_index.find(std::string(name));
    if (it == _edge_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t OrientedGraph::number_of_components() const {
    UnionFind   uf(number_of_vertices());
    std::size_t components = number_of_vertices();
    for (EdgeId e = 0; e < number_of_edges(); e += 2) {
      if (uf.unite(source(e), range(e))) {
        --components;
      }
    }
    return components;
  }

  OrientedGraph OrientedGraph::reversed() const {
    OrientedGraph g;
    for (auto const& v : _vertex_names) {
      g.add_vertex(v);
    }
    for (EdgeId e = 0; e < number_of_edges(); e += 2) {
      g.add_edge(_edge_names[e + 1], range(e), source(e), _edge_names[e]);
    }
    return g;
  }

  std::size_t first_betti_number(OrientedGraph const& graph) {
    return graph.number_of_geometric_edges() + graph.number_of_components()
           - graph.number_of_vertices();
  }

  ////////////////////////////////////////////////////////////////////////
  // GbsBackend
  ////////////////////////////////////////////////////////////////////////

  GbsBackend::GbsBackend(std::vector<Integer> k) : _k(std::move(k)) {
    for (std::size_t e = 0; e < _k.size(); ++e) {
      if (_k[e] == 0) {
        throw Error(ErrorCode::ZeroIndex,
                    "directed edge #" + std::to_string(e) + " has k = 0");
      }
    }
  }

  std::uint64_t GbsBackend::index(EdgeId e) const {
    return static_cast<std::uint64_t>(abs(_k[e]));
  }

  Token GbsBackend::transversal(EdgeId, std::uint64_t i) const {
    return Token(i);
  }

  Split GbsBackend::split(EdgeId e, Token const& g) const {
    Token s = floor_mod(g, _k[e]);
    Token h = (g - s) / _k[e];
    return {static_cast<std::uint64_t>(s), s, h};
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteGroup
  ////////////////////////////////////////////////////////////////////////

  FiniteGroup FiniteGroup::cyclic(std::uint32_t order) {
    if (order == 0) {
      throw Error(ErrorCode::BadGroupTable, "cyclic group of order 0");
    }
    std::vector<std::vector<std::uint32_t>> table(order,
                                                  std::vector<std::uint32_t>(order));
    for (std::uint32_t a = 0; a < order; ++a) {
      for (std::uint32_t b = 0; b < order; ++b) {
        table[a][b] = (a + b) % order;
      }
    }
    return from_table(std::move(table));
  }

  FiniteGroup
  FiniteGroup::from_table(std::vector<std::vector<std::uint32_t>> table) {
    auto const n = static_cast<std::uint32_t>(table.size());
    if (n == 0) {
      throw Error(ErrorCode::BadGroupTable, "empty table");
    }
    for (auto const& row : table) {
      if (row.size() != n) {
        throw Error(ErrorCode::BadGroupTable, "table is not square");
      }
      for (auto x : row) {
        if (x >= n) {
          throw Error(ErrorCode::BadGroupTable,
                      "entry " + std::to_string(x) + " out of range");
        }
      }
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      if (table[0][a] != a || table[a][0] != a) {
        throw Error(ErrorCode::BadGroupTable, "element 0 is not the identity");
      }
    }
    FiniteGroup g;
    g._inverse.assign(n, n);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        if (table[a][b] == 0) {
          g._inverse[a] = b;
          break;
        }
      }
      if (g._inverse[a] == n || table[g._inverse[a]][a] != 0) {
        throw Error(ErrorCode::BadGroupTable,
                    "element " + std::to_string(a) + " has no inverse");
      }
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t c = 0; c < n; ++c) {
          if (table[table[a][b]][c] != table[a][table[b][c]]) {
            throw Error(ErrorCode::BadGroupTable, "table is not associative");
          }
        }
      }
    }
    g._table = std::move(table);
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteTableBackend
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::uint32_t small(Token const& t) {
      return static_cast<std::uint32_t>(t);
    }
  }  // namespace

  FiniteTableBackend::FiniteTableBackend(
      std::vector<FiniteGroup>                groups,
      std::vector<VertexId>                   range,
      std::vector<std::vector<std::uint32_t>> images)
      : _groups(std::move(groups)),
        _range(std::move(range)),
        _images(std::move(images)) {
    std::size_t const m = _range.size();
    if (_images.size() != m || m % 2 != 0) {
      throw Error(ErrorCode::BadGroupTable, "edge data size mismatch");
    }
    for (EdgeId e = 0; e < m; ++e) {
      auto const& G = _groups.at(_range[e]);
      auto const& H = _images[e];
      if (H.empty() || H[0] != 0) {
        throw Error(ErrorCode::BadGroupTable,
                    "edge image #" + std::to_string(e)
                        + " must list the identity first");
      }
      std::vector<std::int64_t> position(G.order(), -1);
      for (std::size_t i = 0; i < H.size(); ++i) {
        if (H[i] >= G.order() || position[H[i]] != -1) {
          throw Error(ErrorCode::BadGroupTable,
                      "edge image #" + std::to_string(e)
                          + " has an invalid or repeated element");
        }
        position[H[i]] = static_cast<std::int64_t>(i);
      }
      for (auto a : H) {
        for (auto b : H) {
          if (position[G.multiply(a, b)] == -1) {
            throw Error(ErrorCode::BadGroupTable,
                        "edge image #" + std::to_string(e)
                            + " is not a subgroup");
          }
        }
      }
    }
    for (EdgeId e = 0; e < m; e += 2) {
      auto const& H1 = _images[e];
      auto const& H2 = _images[e + 1];
      auto const& G1 = _groups[_range[e]];
      auto const& G2 = _groups[_range[e + 1]];
      if (H1.size() != H2.size()) {
        throw Error(ErrorCode::BadGroupTable,
                    "edge images of pair #" + std::to_string(e / 2)
                        + " differ in order");
      }
      std::vector<std::int64_t> pos1(G1.order(), -1), pos2(G2.order(), -1);
      for (std::size_t i = 0; i < H1.size(); ++i) {
        pos1[H1[i]] = static_cast<std::int64_t>(i);
        pos2[H2[i]] = static_cast<std::int64_t>(i);
      }
      for (std::size_t i = 0; i < H1.size(); ++i) {
        for (std::size_t j = 0; j < H1.size(); ++j) {
          if (pos1[G1.multiply(H1[i], H1[j])] != pos2[G2.multiply(H2[i], H2[j])]) {
            throw Error(ErrorCode::BadGroupTable,
                        "edge images of pair #" + std::to_string(e / 2)
                            + " are not isomorphic under the listed order");
          }
        }
      }
    }
    // Left cosets g * H, represented by their least element.
    _transversal.resize(m);
    _split.resize(m);
    for (EdgeId e = 0; e < m; ++e) {
      auto const& G = _groups[_range[e]];
      auto const& H = _images[e];
      _split[e].assign(G.order(), {0, 0});
      std::vector<bool> seen(G.order(), false);
      for (std::uint32_t g = 0; g < G.order(); ++g) {
        if (seen[g]) {
          continue;
        }
        auto t = static_cast<std::uint32_t>(_transversal[e].size());
        _transversal[e].push_back(g);
        for (std::size_t i = 0; i < H.size(); ++i) {
          auto x = G.multiply(g, H[i]);
          seen[x]       = true;
          _split[e][x]  = {t, static_cast<std::uint32_t>(i)};
        }
      }
    }
  }

  Token FiniteTableBackend::compose(VertexId v, Token const& a, Token const& b) const {
    return _groups[v].multiply(small(a), small(b));
  }

  Token FiniteTableBackend::inverse(VertexId v, Token const& a) const {
    return _groups[v].inverse(small(a));
  }

  Split FiniteTableBackend::split(EdgeId e, Token const& g) const {
    auto const& G = _groups[_range[e]];
    if (g < 0 || g >= G.order()) {
      throw Error(ErrorCode::BackendRefusal,
                  "token " + g.str() + " is not an element of the vertex group");
    }
    auto [t, h] = _split[e][small(g)];
    return {t, _transversal[e][t], h};
  }

  Token FiniteTableBackend::embed(EdgeId e, Token const& h) const {
    if (h < 0 || h >= _images[e].size()) {
      throw Error(ErrorCode::BackendRefusal,
                  "token " + h.str() + " is not an element of the edge group");
    }
    return _images[e][small(h)];
  }

  ////////////////////////////////////////////////////////////////////////
  // GraphOfGroups
  ////////////////////////////////////////////////////////////////////////

  std::string_view group_kind_name(GroupKind kind) noexcept {
    switch (kind) {
      case GroupKind::gbs:
        return "gbs";
      case GroupKind::trivial_edge_group:
        return "trivial-edge-group";
      case GroupKind::finite_table:
        return "finite-table";
    }
    return "unknown";
  }

  GraphOfGroups::GraphOfGroups(OrientedGraph                       graph,
                               std::shared_ptr<CosetBackend const> backend,
                               GroupKind                           kind)
      : _graph(std::move(graph)), _backend(std::move(backend)), _kind(kind) {
    _index.resize(_graph.number_of_edges());
    for (EdgeId e = 0; e < _graph.number_of_edges(); ++e) {
      _index[e] = _backend->index(e);
      if (_index[e] == 0) {
        throw Error(ErrorCode::ZeroIndex, "edge '" + _graph.edge_name(e) + "'");
      }
    }
    for (EdgeId e = 0; e < _graph.number_of_edges(); ++e) {
      if (_graph.incoming(_graph.range(e)).size() == 1 && _index[e] <= 1) {
        _singular_edges.push_back(e);
      }
    }
  }

  GraphOfGroups
  GraphOfGroups::gbs(OrientedGraph                            graph,
                     std::vector<std::pair<Integer, Integer>> indices) {
    if (indices.size() != graph.number_of_geometric_edges()) {
      throw Error(ErrorCode::SchemaError, "one index pair per edge is required");
    }
    std::vector<Integer> k(graph.number_of_edges());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i].first == 0 || indices[i].second == 0) {
        throw Error(ErrorCode::ZeroIndex,
                    "edge '" + graph.edge_name(2 * i) + "' has k = 0");
      }
      k[2 * i]     = indices[i].first;
      k[2 * i + 1] = indices[i].second;
    }
    auto backend = std::make_shared<GbsBackend const>(std::move(k));
    return GraphOfGroups(std::move(graph), std::move(backend), GroupKind::gbs);
  }

  GraphOfGroups GraphOfGroups::finite(
      OrientedGraph            graph,
      std::vector<FiniteGroup> groups,
      std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
          images) {
    if (groups.size() != graph.number_of_vertices()) {
      throw Error(ErrorCode::SchemaError, "one group per vertex is required");
    }
    if (images.empty()) {
      images.resize(graph.number_of_geometric_edges());
    }
    if (images.size() != graph.number_of_geometric_edges()) {
      throw Error(ErrorCode::SchemaError,
                  "one subgroup pair per edge is required");
    }
    bool                                    trivial = true;
    std::vector<VertexId>                   range;
    std::vector<std::vector<std::uint32_t>> per_edge;
    for (std::size_t i = 0; i < images.size(); ++i) {
      auto fwd = images[i].first.empty() ? std::vector<std::uint32_t>{0}
                                         : images[i].first;
      auto rev = images[i].second.empty() ? std::vector<std::uint32_t>{0}
                                          : images[i].second;
      trivial = trivial && fwd.size() == 1;
      range.push_back(graph.range(static_cast<EdgeId>(2 * i)));
      range.push_back(graph.range(static_cast<EdgeId>(2 * i + 1)));
      per_edge.push_back(std::move(fwd));
      per_edge.push_back(std::move(rev));
    }
    auto backend = std::make_shared<FiniteTableBackend const>(
        groups, std::move(range), std::move(per_edge));
    GraphOfGroups result(std::move(graph),
                         std::move(backend),
                         trivial ? GroupKind::trivial_edge_group
                                 : GroupKind::finite_table);
    result._groups = std::move(groups);
    result._images = std::move(images);
    return result;
  }

  GbsBackend const* GraphOfGroups::gbs_backend() const noexcept {
    return _kind == GroupKind::gbs
               ? static_cast<GbsBackend const*>(_backend.get())
               : nullptr;
  }

  void GraphOfGroups::require_non_singular() const {
    if (!non_singular()) {
      auto e = _singular_edges.front();
      throw Error(ErrorCode::SingularInput,
                  "edge '" + _graph.edge_name(e)
                      + "' is the only edge into its range and has index 1");
    }
  }

  GraphOfGroups GraphOfGroups::reversed() const {
    if (auto const* b = gbs_backend()) {
      std::vector<std::pair<Integer, Integer>> indices;
      for (EdgeId e = 0; e < _graph.number_of_edges(); e += 2) {
        indices.emplace_back(b->k(e + 1), b->k(e));
      }
      return gbs(_graph.reversed(), std::move(indices));
    }
    auto images = _images;
    for (auto& [fwd, rev] : images) {
      std::swap(fwd, rev);
    }
    return finite(_graph.reversed(), _groups, std::move(images));
  }

}  // namespace bassdyn
