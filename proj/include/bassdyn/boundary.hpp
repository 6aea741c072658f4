#pragma once

#include "bassdyn/word.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bassdyn {

  // One step g e of a reduced path, with g given by its position in Sigma_e.
  struct Letter {
    EdgeId        edge;
    std::uint64_t index;

    auto operator<=>(Letter const&) const = default;
  };

  // A reduced G-path from the base vertex with identity tail. Doubles as a
  // vertex of the Bass-Serre tree and as the prefix of a cylinder Z(path).
  using Path = std::vector<Letter>;

  // Canonical order: length first, then lexicographic on (edge, index).
  [[nodiscard]] bool canonical_less(Path const& a, Path const& b);

  [[nodiscard]] bool is_prefix(Path const& prefix, Path const& path);

  // A clopen subset of the boundary as the canonical antichain of cylinder
  // prefixes: no prefix extends another, no complete family of siblings
  // (their parent is listed instead), sorted by canonical_less. The full
  // boundary is {[]} and the empty set is {}.
  struct CylinderUnion {
    std::vector<Path> cylinders;

    [[nodiscard]] bool empty() const noexcept {
      return cylinders.empty();
    }
    bool operator==(CylinderUnion const&) const = default;
  };

  // An eventually periodic infinite reduced word prefix cycle cycle ...,
  // normalized so that the cycle is primitive and the prefix is as short as
  // possible. Equal points have equal fields.
  class BoundaryPoint {
   public:
    BoundaryPoint() = default;
    BoundaryPoint(Path prefix, Path cycle);

    [[nodiscard]] Path const& prefix() const noexcept {
      return _prefix;
    }
    [[nodiscard]] Path const& cycle() const noexcept {
      return _cycle;
    }
    // The first n letters.
    [[nodiscard]] Path unroll(std::size_t n) const;

    bool operator==(BoundaryPoint const&) const = default;

   private:
    Path _prefix;
    Path _cycle;
  };

  // The Bass-Serre tree of a non-singular graph of groups seen from a base
  // vertex, and its boundary as infinite reduced words. Holds a reference
  // to the graph of groups.
  class TreeBoundary {
   public:
    // Carry passes tried by act() and periodic_limit() before giving up
    // with NonPeriodicCarry when no explicit bound is passed.
    static constexpr std::size_t default_carry_bound = 64;

    // Throws SingularInput.
    TreeBoundary(GraphOfGroups const& g, VertexId base);

    [[nodiscard]] GraphOfGroups const& graph_of_groups() const noexcept {
      return *_g;
    }
    [[nodiscard]] VertexId base() const noexcept {
      return _base;
    }

    // Vertex the next letter after `p` must have as range.
    [[nodiscard]] VertexId endpoint(Path const& p) const;
    [[nodiscard]] bool     is_path(Path const& p) const;

    // One-letter extensions of p in canonical order.
    [[nodiscard]] std::vector<Path> children(Path const& p) const;

    // All reduced paths of length d from the base, in canonical order.
    [[nodiscard]] std::vector<Path> enumerate_level(std::size_t d) const;
    [[nodiscard]] std::size_t       count_level(std::size_t d) const;

    ////////////////////////////////////////////////////////////////////////
    // Clopen sets
    ////////////////////////////////////////////////////////////////////////

    [[nodiscard]] CylinderUnion full() const {
      return CylinderUnion{{Path{}}};
    }
    [[nodiscard]] CylinderUnion cylinder(Path const& p) const;
    // Antichain reduction and sibling merging.
    [[nodiscard]] CylinderUnion canonicalize(std::vector<Path> paths) const;

    [[nodiscard]] CylinderUnion unite(CylinderUnion const& a,
                                      CylinderUnion const& b) const;
    [[nodiscard]] CylinderUnion intersect(CylinderUnion const& a,
                                          CylinderUnion const& b) const;
    [[nodiscard]] CylinderUnion complement(CylinderUnion const& a) const;
    [[nodiscard]] CylinderUnion difference(CylinderUnion const& a,
                                           CylinderUnion const& b) const;
    // b is a subset of a.
    [[nodiscard]] bool contains(CylinderUnion const& a,
                                CylinderUnion const& b) const;
    [[nodiscard]] bool contains(CylinderUnion const& a,
                                BoundaryPoint const& xi) const;

    // The cylinders of `a` refined to depth d (every listed path has length
    // at least d).
    [[nodiscard]] std::vector<Path> refine(CylinderUnion const& a,
                                           std::size_t          d) const;

    ////////////////////////////////////////////////////////////////////////
    // Action of loops at the base
    ////////////////////////////////////////////////////////////////////////

    // gamma * Z(p), exactly.
    [[nodiscard]] CylinderUnion image(ReducedWord const& gamma,
                                      Path const&        p) const;
    [[nodiscard]] CylinderUnion image(ReducedWord const&   gamma,
                                      CylinderUnion const& a) const;

    // gamma * xi. Throws NonPeriodicCarry when the carry through the cycle
    // has not repeated after `carry_bound` passes.
    [[nodiscard]] BoundaryPoint act(ReducedWord const&   gamma,
                                    BoundaryPoint const& xi,
                                    std::size_t carry_bound = 0) const;

    // mu^infinity for a loop mu at the base whose powers never cancel
    // across copies. Throws HypothesisFailed otherwise, NonPeriodicCarry as
    // act().
    [[nodiscard]] BoundaryPoint periodic_limit(ReducedWord const& mu,
                                               std::size_t carry_bound = 0) const;

    ////////////////////////////////////////////////////////////////////////
    // Conversions and text
    ////////////////////////////////////////////////////////////////////////

    [[nodiscard]] GWord       to_word(Path const& p) const;
    [[nodiscard]] ReducedWord to_reduced(Path const& p) const;
    // The letters of a reduced word, ignoring its tail.
    [[nodiscard]] Path to_path(ReducedWord const& w) const;

    // Word text with identity tail; "" or "∅" for the empty path.
    [[nodiscard]] Path        parse_path(std::string_view text) const;
    [[nodiscard]] std::string format_path(Path const& p) const;

    // "Z(0 e)", "Z(∅)" for the full boundary.
    [[nodiscard]] std::string format_cylinder(Path const& p) const;
    // "{Z(1 e), Z(0 ē)}"; "{}" when empty.
    [[nodiscard]] std::string format_union(CylinderUnion const& a) const;

    // "prefix (cycle)" with an optional "^∞" after the parenthesis.
    [[nodiscard]] BoundaryPoint parse_point(std::string_view text) const;
    [[nodiscard]] std::string   format_point(BoundaryPoint const& xi) const;

    // Throws HypothesisFailed unless prefix cycle cycle is a reduced path
    // from the base and the cycle closes up.
    void validate(BoundaryPoint const& xi) const;

   private:
    void require_loop(ReducedWord const& gamma) const;
    void image_into(ReducedWord const& gamma,
                    Path&              p,
                    std::vector<Path>& out) const;

    GraphOfGroups const* _g;
    VertexId             _base;
  };

}  // namespace bassdyn
