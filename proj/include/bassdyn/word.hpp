#pragma once

#include "bassdyn/graph_of_groups.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bassdyn {

  // g1 e1 g2 e2 ... gn en g(n+1): tokens.size() == edges.size() + 1 and the
  // last token is the tail (identity allowed). `range` is r(e1), or the
  // vertex of g1 when there are no edges. Adjacency: s(ei) = r(e(i+1)).
  struct GWord {
    VertexId            range = 0;
    std::vector<Token>  tokens{Token(0)};
    std::vector<EdgeId> edges;

    [[nodiscard]] std::size_t length() const noexcept {
      return edges.size();
    }
    [[nodiscard]] VertexId source(OrientedGraph const& graph) const {
      return edges.empty() ? range : graph.source(edges.back());
    }
    bool operator==(GWord const&) const = default;
  };

  // Throws ParseError/BackendRefusal unless `w` is a well-formed G-word:
  // adjacency holds and every token belongs to its vertex group.
  void validate(GraphOfGroups const& g, GWord const& w);

  // A G-word in normal form: every token before an edge lies in that edge's
  // transversal, and no backtrack e ē is separated by an identity token.
  class ReducedWord {
   public:
    ReducedWord() = default;

    [[nodiscard]] GWord const& word() const noexcept {
      return _word;
    }
    [[nodiscard]] std::size_t length() const noexcept {
      return _word.length();
    }
    [[nodiscard]] VertexId range() const noexcept {
      return _word.range;
    }
    [[nodiscard]] VertexId source(OrientedGraph const& graph) const {
      return _word.source(graph);
    }
    [[nodiscard]] std::vector<EdgeId> const& edges() const noexcept {
      return _word.edges;
    }
    [[nodiscard]] std::vector<Token> const& tokens() const noexcept {
      return _word.tokens;
    }
    [[nodiscard]] Token const& tail() const noexcept {
      return _word.tokens.back();
    }

    bool operator==(ReducedWord const&) const = default;

    // Checks the normal-form conditions; throws BackendRefusal otherwise.
    static ReducedWord from_reduced(GraphOfGroups const& g, GWord w);

   private:
    friend class WordReducer;
    explicit ReducedWord(GWord w) : _word(std::move(w)) {}

    GWord _word;
  };

  [[nodiscard]] bool is_reduced(GraphOfGroups const& g, GWord const& w);

  // Incremental form of reduce(): a stack of reduced letters plus the
  // pending token to their right. Feeding "multiply(g); push(e)" for each
  // letter of a word, then multiply(tail), reproduces reduce().
  class WordReducer {
   public:
    WordReducer(GraphOfGroups const& g, VertexId start);

    // current <- current * t, at the vertex the current token lives at.
    void multiply(Token const& t);
    // Splits the current token against e and either cancels against the
    // top letter or pushes a new one.
    void push(EdgeId e);

    [[nodiscard]] Token const& current() const noexcept {
      return _current;
    }
    [[nodiscard]] VertexId vertex() const noexcept {
      return _vertex;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _edges.size();
    }
    [[nodiscard]] std::size_t cancellations() const noexcept {
      return _cancellations;
    }
    [[nodiscard]] std::vector<EdgeId> const& edges() const noexcept {
      return _edges;
    }
    [[nodiscard]] std::vector<Token> const& tokens() const noexcept {
      return _tokens;
    }
    // Positions of the stacked tokens in their transversals.
    [[nodiscard]] std::vector<std::uint64_t> const& indices() const noexcept {
      return _indices;
    }

    [[nodiscard]] ReducedWord finish() const;

   private:
    GraphOfGroups const*       _g;
    VertexId                   _start;
    VertexId                   _vertex;
    Token                      _current;
    std::vector<Token>         _tokens;
    std::vector<std::uint64_t> _indices;
    std::vector<EdgeId>        _edges;
    std::size_t                _cancellations = 0;
  };

  // The unique reduced word equal to `w` in the path group. Tokens are split
  // left to right against the following edge, pushing alpha_ē(h) into the
  // next token (relation R2), and identity-separated backtracks e ē are
  // cancelled as they appear (relation R1).
  [[nodiscard]] ReducedWord reduce(GraphOfGroups const& g, GWord const& w);

  // The length-0 word "1" at v.
  [[nodiscard]] ReducedWord identity(GraphOfGroups const& g, VertexId v);

  // Throws NotComposable unless s(a) = r(b).
  [[nodiscard]] ReducedWord multiply(GraphOfGroups const& g,
                                     ReducedWord const&   a,
                                     ReducedWord const&   b);

  [[nodiscard]] ReducedWord invert(GraphOfGroups const& g,
                                   ReducedWord const&   a);

  // a^m for a loop a, m >= 0.
  [[nodiscard]] ReducedWord power(GraphOfGroups const& g,
                                  ReducedWord const&   a,
                                  std::size_t          m);

  [[nodiscard]] bool is_identity(GraphOfGroups const& g, ReducedWord const& a);

  // q(a) = prod_i k_{ē_i} / k_{e_i}. Throws NotGBS.
  [[nodiscard]] Rational modular_value(GraphOfGroups const& g,
                                       ReducedWord const&   a);

  ////////////////////////////////////////////////////////////////////////
  // Text syntax: whitespace-separated tokens and edge names, alternating
  // and starting with a token, e.g. "5 e 0" or "0 e 1 ē". A missing tail
  // means the identity. Integer literals are tokens; anything else must
  // name a directed edge.
  ////////////////////////////////////////////////////////////////////////

  // `base` supplies the vertex of a word with no edges. Parse errors report
  // the 1-based position of the offending item.
  [[nodiscard]] GWord parse_word(GraphOfGroups const&    g,
                                 std::string_view        text,
                                 std::optional<VertexId> base = std::nullopt);

  // Always prints the tail: "1 e 6", "0 e 0", "7".
  [[nodiscard]] std::string format_word(GraphOfGroups const& g,
                                        GWord const&         w);
  [[nodiscard]] std::string format_word(GraphOfGroups const& g,
                                        ReducedWord const&   w);

  // Omits an identity tail: "0 e" for the path g1 e1 with tail 1.
  [[nodiscard]] std::string format_path_word(GraphOfGroups const& g,
                                             GWord const&         w);

}  // namespace bassdyn
