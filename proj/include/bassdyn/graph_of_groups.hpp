#pragma once

#include "bassdyn/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bassdyn {

  using VertexId = std::uint32_t;
  // Directed edges come in involution pairs stored at 2i and 2i + 1, so the
  // reverse of e is e ^ 1.
  using EdgeId = std::uint32_t;
  // Vertex-group elements. Their meaning is backend-defined: integers for GBS
  // vertex groups, element indices for finite groups.
  using Token = Integer;

  // Display name of the reverse of edge `id`: a macron over the first letter
  // ("e" -> "ē", "f1" -> "f̄1").
  std::string reverse_edge_name(std::string_view id);

  ////////////////////////////////////////////////////////////////////////
  // OrientedGraph
  ////////////////////////////////////////////////////////////////////////

  class OrientedGraph {
   public:
    // One directed edge of an explicitly paired edge list.
    struct Dart {
      std::string name;
      std::string from;
      std::string to;
      std::string partner;
    };

    OrientedGraph() = default;

    VertexId add_vertex(std::string name);

    // Adds e: from -> to (s(e) = from, r(e) = to) together with its reverse.
    // Returns e; the reverse is e ^ 1.
    EdgeId add_edge(std::string name,
                    VertexId    from,
                    VertexId    to,
                    std::string reverse_name = {});

    // Builds a graph from darts that name their involution partner. Throws
    // BrokenInvolution unless the pairing is a fixed-point-free involution
    // swapping source and range.
    static OrientedGraph from_darts(std::vector<std::string> const& vertices,
                                    std::vector<Dart> const&        darts);

    [[nodiscard]] std::size_t number_of_vertices() const noexcept {
      return _vertex_names.size();
    }
    // Number of directed edges (twice the number of geometric edges).
    [[nodiscard]] std::size_t number_of_edges() const noexcept {
      return _source.size();
    }
    [[nodiscard]] std::size_t number_of_geometric_edges() const noexcept {
      return _source.size() / 2;
    }

    [[nodiscard]] VertexId source(EdgeId e) const {
      return _source[e];
    }
    [[nodiscard]] VertexId range(EdgeId e) const {
      return _source[e ^ 1];
    }
    [[nodiscard]] static constexpr EdgeId reverse(EdgeId e) noexcept {
      return e ^ 1U;
    }

    // All e with r(e) = v, ascending.
    [[nodiscard]] std::vector<EdgeId> const& incoming(VertexId v) const {
      return _incoming[v];
    }

    [[nodiscard]] std::string const& vertex_name(VertexId v) const {
      return _vertex_names[v];
    }
    [[nodiscard]] std::string const& edge_name(EdgeId e) const {
      return _edge_names[e];
    }

    [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view) const;
    // Accepts the display name, the "~id" spelling for reverses and the
    // decomposed-macron spelling.
    [[nodiscard]] std::optional<EdgeId> find_edge(std::string_view) const;

    // Every vertex has finitely many incoming edges; always true for the
    // finite graphs representable here.
    [[nodiscard]] bool locally_finite() const noexcept {
      return true;
    }

    [[nodiscard]] std::size_t number_of_components() const;

    // Same graph with every geometric edge's designated direction swapped.
    [[nodiscard]] OrientedGraph reversed() const;

   private:
    void add_alias(std::string alias, EdgeId e);

    std::vector<std::string>                     _vertex_names;
    std::unordered_map<std::string, VertexId>    _vertex_index;
    std::vector<VertexId>                        _source;
    std::vector<std::string>                     _edge_names;
    std::unordered_map<std::string, EdgeId>      _edge_index;
    std::vector<std::vector<EdgeId>>             _incoming;
  };

  // |geometric edges| - |vertices| + |components|.
  std::size_t first_betti_number(OrientedGraph const& graph);

  ////////////////////////////////////////////////////////////////////////
  // Coset backends
  ////////////////////////////////////////////////////////////////////////

  // Result of writing g in G_{r(e)} as s * alpha_e(h) with s in Sigma_e.
  struct Split {
    std::uint64_t index;          // position of s in Sigma_e
    Token         transversal;    // s
    Token         edge_element;   // h in G_e
  };

  // The per-edge coset data of a graph of groups: a transversal Sigma_e for
  // G_{r(e)} / alpha_e(G_e) with the identity first, the split rule, and the
  // edge monomorphisms alpha_e.
  class CosetBackend {
   public:
    virtual ~CosetBackend() = default;

    virtual Token identity(VertexId v) const                                = 0;
    virtual Token compose(VertexId v, Token const& a, Token const& b) const = 0;
    virtual Token inverse(VertexId v, Token const& a) const                 = 0;
    virtual bool  is_identity(VertexId v, Token const& a) const             = 0;
    virtual bool  is_member(VertexId v, Token const& a) const               = 0;

    // |Sigma_e| = [G_{r(e)} : alpha_e(G_e)].
    virtual std::uint64_t index(EdgeId e) const                       = 0;
    virtual Token         transversal(EdgeId e, std::uint64_t i) const = 0;
    virtual Split         split(EdgeId e, Token const& g) const        = 0;
    // alpha_e(h), an element of G_{r(e)}.
    virtual Token embed(EdgeId e, Token const& h) const = 0;
  };

  // Vertex and edge groups Z; alpha_e(h) = k_e * h; Sigma_e = {0..|k_e|-1}.
  class GbsBackend final : public CosetBackend {
   public:
    // k[e] for every directed edge; all nonzero.
    explicit GbsBackend(std::vector<Integer> k);

    Token identity(VertexId) const override {
      return 0;
    }
    Token compose(VertexId, Token const& a, Token const& b) const override {
      return a + b;
    }
    Token inverse(VertexId, Token const& a) const override {
      return -a;
    }
    bool is_identity(VertexId, Token const& a) const override {
      return a == 0;
    }
    bool is_member(VertexId, Token const&) const override {
      return true;
    }

    std::uint64_t index(EdgeId e) const override;
    Token         transversal(EdgeId e, std::uint64_t i) const override;
    Split         split(EdgeId e, Token const& g) const override;
    Token         embed(EdgeId e, Token const& h) const override {
      return _k[e] * h;
    }

    [[nodiscard]] Integer const& k(EdgeId e) const {
      return _k[e];
    }

   private:
    std::vector<Integer> _k;
  };

  // A finite group given by its multiplication table; element 0 is the
  // identity.
  class FiniteGroup {
   public:
    static FiniteGroup cyclic(std::uint32_t order);
    // Throws BadGroupTable unless `table` is a group table with identity 0.
    static FiniteGroup from_table(std::vector<std::vector<std::uint32_t>> table);

    [[nodiscard]] std::uint32_t order() const noexcept {
      return static_cast<std::uint32_t>(_table.size());
    }
    [[nodiscard]] std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const {
      return _table[a][b];
    }
    [[nodiscard]] std::uint32_t inverse(std::uint32_t a) const {
      return _inverse[a];
    }

   private:
    std::vector<std::vector<std::uint32_t>> _table;
    std::vector<std::uint32_t>              _inverse;
  };

  // Finite vertex groups; the edge group of {e, ē} is given by the two
  // index-aligned images alpha_e(G_e) and alpha_ē(G_e). Transversals are the
  // least element of each left coset, ordered ascending.
  class FiniteTableBackend final : public CosetBackend {
   public:
    // images[e] lists alpha_e(G_e) inside G_{r(e)}; images[e][0] is the
    // identity. Throws BadGroupTable if an image is not a subgroup or the
    // two images of an edge pair are not index-isomorphic.
    FiniteTableBackend(std::vector<FiniteGroup>                groups,
                       std::vector<VertexId>                   range,
                       std::vector<std::vector<std::uint32_t>> images);

    Token identity(VertexId) const override {
      return 0;
    }
    Token compose(VertexId v, Token const& a, Token const& b) const override;
    Token inverse(VertexId v, Token const& a) const override;
    bool  is_identity(VertexId, Token const& a) const override {
      return a == 0;
    }
    bool is_member(VertexId v, Token const& a) const override {
      return a >= 0 && a < _groups[v].order();
    }

    std::uint64_t index(EdgeId e) const override {
      return _transversal[e].size();
    }
    Token transversal(EdgeId e, std::uint64_t i) const override {
      return _transversal[e][i];
    }
    Split split(EdgeId e, Token const& g) const override;
    Token embed(EdgeId e, Token const& h) const override;

    [[nodiscard]] FiniteGroup const& group(VertexId v) const {
      return _groups[v];
    }
    [[nodiscard]] std::size_t edge_group_order(EdgeId e) const {
      return _images[e].size();
    }

   private:
    std::vector<FiniteGroup>                _groups;
    std::vector<VertexId>                   _range;
    std::vector<std::vector<std::uint32_t>> _images;
    std::vector<std::vector<std::uint32_t>> _transversal;
    // per edge, per element g of G_{r(e)}: (transversal index, h index)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> _split;
  };

  ////////////////////////////////////////////////////////////////////////
  // GraphOfGroups
  ////////////////////////////////////////////////////////////////////////

  enum class GroupKind { gbs, trivial_edge_group, finite_table };

  std::string_view group_kind_name(GroupKind) noexcept;

  class GraphOfGroups {
   public:
    GraphOfGroups(OrientedGraph                       graph,
                  std::shared_ptr<CosetBackend const> backend,
                  GroupKind                           kind);

    // indices[i] = (k_e, k_ē) for the i-th geometric edge. Throws ZeroIndex.
    static GraphOfGroups
    gbs(OrientedGraph graph, std::vector<std::pair<Integer, Integer>> indices);

    // images[i] = (alpha_e(G_e), alpha_ē(G_e)) for the i-th geometric edge;
    // an empty pair means a trivial edge group.
    static GraphOfGroups finite(
        OrientedGraph            graph,
        std::vector<FiniteGroup> groups,
        std::vector<std::pair<std::vector<std::uint32_t>,
                              std::vector<std::uint32_t>>> images);

    [[nodiscard]] OrientedGraph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] CosetBackend const& backend() const noexcept {
      return *_backend;
    }
    [[nodiscard]] GroupKind kind() const noexcept {
      return _kind;
    }
    // nullptr unless kind() == GroupKind::gbs.
    [[nodiscard]] GbsBackend const* gbs_backend() const noexcept;

    [[nodiscard]] std::uint64_t index(EdgeId e) const {
      return _index[e];
    }

    // [G_{r(e)} : alpha_e(G_e)] > 1 whenever r^{-1}(r(e)) = {e}.
    [[nodiscard]] bool non_singular() const noexcept {
      return _singular_edges.empty();
    }
    // Edges violating non-singularity (the SingularWarning payload).
    [[nodiscard]] std::vector<EdgeId> const& singular_edges() const noexcept {
      return _singular_edges;
    }
    [[nodiscard]] bool locally_finite() const noexcept {
      return _graph.locally_finite();
    }

    // Throws SingularInput naming the first singular edge.
    void require_non_singular() const;

    // The same group presented with every edge direction swapped.
    [[nodiscard]] GraphOfGroups reversed() const;

   private:
    OrientedGraph                       _graph;
    std::shared_ptr<CosetBackend const> _backend;
    GroupKind                           _kind;
    std::vector<std::uint64_t>          _index;
    std::vector<EdgeId>                 _singular_edges;
    // only for reversed() on finite kinds
    std::vector<FiniteGroup> _groups;
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
        _images;
  };

}  // namespace bassdyn
