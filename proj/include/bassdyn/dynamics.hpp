#pragma once

#include "bassdyn/boundary.hpp"
#include "bassdyn/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bassdyn {

  ////////////////////////////////////////////////////////////////////////
  // Turn graph
  ////////////////////////////////////////////////////////////////////////

  // States are directed edges. e -> f is allowed iff s(e) = r(f) and
  // (f != ē or |Sigma_f| >= 2); its weight is the number of tokens that may
  // precede f, |Sigma_f| minus one for the backtrack f = ē.
  class TurnGraph {
   public:
    struct Transition {
      EdgeId        to;
      std::uint64_t weight;
    };

    // Throws SingularInput.
    explicit TurnGraph(GraphOfGroups const& g);

    [[nodiscard]] GraphOfGroups const& graph_of_groups() const noexcept {
      return *_g;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _out.size();
    }
    [[nodiscard]] std::vector<Transition> const& out(EdgeId e) const {
      return _out[e];
    }
    [[nodiscard]] bool allowed(EdgeId e, EdgeId f) const;
    // Sum of the outgoing weights: one-letter continuations of a path
    // ending in e.
    [[nodiscard]] std::uint64_t continuations(EdgeId e) const;

    // States f with r(f) = v: possible first edges of a path from v.
    [[nodiscard]] std::vector<EdgeId> initial_states(VertexId v) const;

    // Edge sequences of the transition paths of length d from v, sorted.
    [[nodiscard]] std::vector<std::vector<EdgeId>> paths(VertexId v,
                                                         std::size_t d) const;

    // States reachable from `from` in at least one step, restricted to
    // `allowed` states when given (the start states need not be allowed).
    [[nodiscard]] std::vector<bool>
    reachable(std::vector<EdgeId> const&       from,
              std::vector<bool> const*         allowed = nullptr) const;

    // States lying on a cycle that stays inside `allowed`.
    [[nodiscard]] std::vector<bool>
    on_cycle(std::vector<bool> const* allowed = nullptr) const;

    // A shortest cycle through x inside `allowed`, as the states after x
    // ending with x itself; empty if none.
    [[nodiscard]] std::vector<EdgeId>
    shortest_cycle(EdgeId x, std::vector<bool> const* allowed = nullptr) const;

   private:
    GraphOfGroups const*                 _g;
    std::vector<std::vector<Transition>> _out;
  };

  ////////////////////////////////////////////////////////////////////////
  // Repeatable paths
  ////////////////////////////////////////////////////////////////////////

  struct RepeatablePath {
    ReducedWord mu;      // identity tail
    bool        flagged; // |Sigma_{ē_n}| >= 2

    bool operator==(RepeatablePath const&) const = default;
  };

  // g1 e1 ... gn en with identity tail is repeatable: r(e1) = s(en), the
  // path is reduced and g1 e1 != 1 ē_n.
  [[nodiscard]] bool is_repeatable(GraphOfGroups const& g, ReducedWord const& mu);

  // All repeatable paths of length 1..max_len, canonical order, at most
  // `limit` of them (0 for no limit).
  [[nodiscard]] std::vector<RepeatablePath>
  find_repeatable(GraphOfGroups const& g, std::size_t max_len, std::size_t limit = 0);

  // Canonically least among the shortest flagged repeatable paths, decided
  // exactly on the turn graph. With `base`, only paths with r(e1) = base.
  [[nodiscard]] std::optional<ReducedWord>
  flagged_repeatable(TurnGraph const& t, std::optional<VertexId> base = std::nullopt);

  ////////////////////////////////////////////////////////////////////////
  // Minimality, boundary size, unimodularity
  ////////////////////////////////////////////////////////////////////////

  struct MinimalityResult {
    bool minimal = true;
    // certificate when not minimal
    std::optional<EdgeId>        edge;
    std::vector<EdgeId>          can_flow_to;
    std::vector<EdgeId>          trapped_cycle;
    std::optional<BoundaryPoint> trapped_point;  // when reachable from base
  };

  // Throws SingularInput.
  [[nodiscard]] MinimalityResult check_minimality(TurnGraph const& t, VertexId base);

  struct BoundarySizeResult {
    bool                  infinite = false;
    std::optional<EdgeId> branching_state;
    std::vector<EdgeId>   cycle;  // through the branching state
  };

  [[nodiscard]] BoundarySizeResult boundary_infinite(TurnGraph const& t, VertexId base);

  struct CycleValue {
    ReducedWord loop;
    Rational    q;
  };

  struct UnimodularResult {
    bool                    unimodular = true;
    std::vector<CycleValue> basis;
  };

  // q on the loops of a spanning-tree cycle basis at `base`. Throws NotGBS.
  [[nodiscard]] UnimodularResult check_unimodular(GraphOfGroups const& g, VertexId base);

  ////////////////////////////////////////////////////////////////////////
  // Witnesses
  ////////////////////////////////////////////////////////////////////////

  struct FillingWitness {
    CylinderUnion o1, o2;
    ReducedWord   mu;
    ReducedWord   gamma1, gamma2;
    std::size_t   m = 0;
    ReducedWord   t;  // second transversal token of Sigma_{ē_n}, at the base
    ReducedWord   h1, h2;
    CylinderUnion a, b;  // a = complement of b, b = Z(1 ē_n)
    bool          trivial    = false;  // h1 = h2 = identity already cover
    std::size_t   candidates = 0;      // loops examined
  };

  struct CheckResult {
    bool          ok = true;
    std::string   failure;
    CylinderUnion locus;
  };

  // Throws HypothesisFailed (not minimal, boundary finite, mu not a flagged
  // repeatable loop at the base, empty target) and NotFoundWithinBound.
  [[nodiscard]] FillingWitness
  construct_filling_witness(TreeBoundary const&               tree,
                            std::optional<ReducedWord> const& mu,
                            CylinderUnion const&              o1,
                            CylinderUnion const&              o2,
                            std::size_t                       bound);

  // The cover identity full = h1^-1 O1 u h2^-1 O2 and, unless trivial,
  // h1 A in O1 and h2 B in O2.
  [[nodiscard]] CheckResult verify_filling(TreeBoundary const& tree,
                                           FillingWitness const& w);

  struct SubequivalencePiece {
    Path        u;
    ReducedWord g;
  };

  struct SubequivalenceWitness {
    CylinderUnion                    f, o;
    std::vector<SubequivalencePiece> pieces;
  };

  // F in the union of the U_i; the g_i U_i pairwise disjoint and inside O.
  [[nodiscard]] CheckResult verify_subequivalence(TreeBoundary const&          tree,
                                                  SubequivalenceWitness const& w);

  struct ParadoxicalWitness {
    CylinderUnion         o, o1, o2;
    SubequivalenceWitness first, second;  // F < O1 and F < O2
  };

  // Also checks O1, O2 disjoint inside O.
  [[nodiscard]] CheckResult verify_paradoxical(TreeBoundary const&       tree,
                                               ParadoxicalWitness const& w);

  // Full boundary paradoxically subequivalent to O, from two filling
  // witnesses aimed at four disjoint sub-cylinders of O.
  [[nodiscard]] ParadoxicalWitness
  construct_paradoxical(TreeBoundary const&               tree,
                        std::optional<ReducedWord> const& mu,
                        CylinderUnion const&              o,
                        std::size_t                       bound);

  struct NorthSouthResult {
    std::size_t   m = 0;
    BoundaryPoint attracting, repelling;
    CylinderUnion u, v;
  };

  // Smallest m <= max_power with gamma^m(X - V) in U and gamma^-m(X - U) in V
  // for the depth-p cylinders U, V around gamma^inf and gamma^-inf. Throws
  // BoundExceeded, HypothesisFailed when gamma has no limit points.
  [[nodiscard]] NorthSouthResult verify_north_south(TreeBoundary const& tree,
                                                    ReducedWord const&  gamma,
                                                    std::size_t         depth,
                                                    std::size_t         max_power);

  ////////////////////////////////////////////////////////////////////////
  // Verdicts
  ////////////////////////////////////////////////////////////////////////

  // Hypothesis names used in graph-of-groups reports.
  namespace hyp {
    inline constexpr char const* non_singular      = "non-singular";
    inline constexpr char const* boundary_infinite = "boundary-infinite";
    inline constexpr char const* minimal           = "minimal";
    inline constexpr char const* repeatable_path   = "repeatable-path";
    inline constexpr char const* not_unimodular    = "not-unimodular";
  }  // namespace hyp

  // Hypotheses (1)-(4) for GBS input and the resulting verdict. Throws NotGBS.
  [[nodiscard]] ClassificationReport classify_gbs(GraphOfGroups const& g,
                                                  VertexId             base,
                                                  std::string const&   instance);

  // Strong-boundary verdict from hypotheses (1)-(3), for any kind.
  [[nodiscard]] ClassificationReport classify_boundary(GraphOfGroups const& g,
                                                       VertexId             base,
                                                       std::string const&   instance);

}  // namespace bassdyn
