#include "bassdyn/word.hpp"

#include "bassdyn/error.hpp"

#include <cctype>
#include <sstream>

namespace bassdyn {

  namespace {

    VertexId token_vertex(OrientedGraph const& graph, GWord const& w, std::size_t j) {
      // g_j lives at r(e_j); the tail at s(e_n).
      if (j < w.edges.size()) {
        return graph.range(w.edges[j]);
      }
      return w.source(graph);
    }

    bool is_integer_literal(std::string_view s) {
      std::size_t i = 0;
      if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        i = 1;
      }
      if (i == s.size()) {
        return false;
      }
      for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  void validate(GraphOfGroups const& g, GWord const& w) {
    auto const& graph = g.graph();
    if (w.tokens.size() != w.edges.size() + 1) {
      throw Error(ErrorCode::ParseError,
                  "a word needs exactly one token per edge plus a tail");
    }
    if (w.edges.empty() && w.range >= graph.number_of_vertices()) {
      throw Error(ErrorCode::UnknownVertex, "word vertex out of range");
    }
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      if (w.edges[i] >= graph.number_of_edges()) {
        throw Error(ErrorCode::ParseError, "edge out of range");
      }
      if (i + 1 < w.edges.size()
          && graph.source(w.edges[i]) != graph.range(w.edges[i + 1])) {
        throw Error(ErrorCode::ParseError,
                    "edges '" + graph.edge_name(w.edges[i]) + "' and '"
                        + graph.edge_name(w.edges[i + 1])
                        + "' are not adjacent");
      }
    }
    if (!w.edges.empty() && w.range != graph.range(w.edges.front())) {
      throw Error(ErrorCode::ParseError, "word range does not match first edge");
    }
    for (std::size_t j = 0; j < w.tokens.size(); ++j) {
      if (!g.backend().is_member(token_vertex(graph, w, j), w.tokens[j])) {
        throw Error(ErrorCode::BackendRefusal,
                    "token " + w.tokens[j].str() + " at position "
                        + std::to_string(2 * j + 1)
                        + " is not in its vertex group");
      }
    }
  }

  bool is_reduced(GraphOfGroups const& g, GWord const& w) {
    auto const& b = g.backend();
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      auto sp = b.split(w.edges[i], w.tokens[i]);
      if (!b.is_identity(g.graph().range(w.edges[i]), sp.edge_element)
          || sp.transversal != w.tokens[i]) {
        return false;
      }
      if (i > 0 && w.edges[i] == OrientedGraph::reverse(w.edges[i - 1])
          && sp.index == 0) {
        return false;
      }
    }
    return true;
  }

  ReducedWord ReducedWord::from_reduced(GraphOfGroups const& g, GWord w) {
    validate(g, w);
    if (!is_reduced(g, w)) {
      throw Error(ErrorCode::BackendRefusal,
                  "word '" + format_word(g, w) + "' is not reduced");
    }
    return ReducedWord(std::move(w));
  }

  WordReducer::WordReducer(GraphOfGroups const& g, VertexId start)
      : _g(&g), _start(start), _vertex(start), _current(g.backend().identity(start)) {}

  void WordReducer::multiply(Token const& t) {
    _current = _g->backend().compose(_vertex, _current, t);
  }

  void WordReducer::push(EdgeId e) {
    auto const&  graph = _g->graph();
    auto const&  b     = _g->backend();
    EdgeId const ebar  = OrientedGraph::reverse(e);
    auto         sp    = b.split(e, _current);
    if (sp.index == 0 && !_edges.empty() && _edges.back() == ebar) {
      // s f alpha_e(h) e = s alpha_f(h) with f = ē.
      Token prev = std::move(_tokens.back());
      _tokens.pop_back();
      _indices.pop_back();
      _edges.pop_back();
      _vertex  = graph.range(ebar);
      _current = b.compose(_vertex, prev, b.embed(ebar, sp.edge_element));
      ++_cancellations;
    } else {
      // s alpha_e(h) e = s e alpha_ē(h).
      _tokens.push_back(std::move(sp.transversal));
      _indices.push_back(sp.index);
      _edges.push_back(e);
      _vertex  = graph.source(e);
      _current = b.embed(ebar, sp.edge_element);
    }
  }

  ReducedWord WordReducer::finish() const {
    GWord out;
    out.tokens = _tokens;
    out.tokens.push_back(_current);
    out.edges = _edges;
    out.range = _edges.empty() ? _vertex : _g->graph().range(_edges.front());
    return ReducedWord(std::move(out));
  }

  ReducedWord reduce(GraphOfGroups const& g, GWord const& w) {
    validate(g, w);
    WordReducer r(g, w.range);
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      r.multiply(w.tokens[i]);
      r.push(w.edges[i]);
    }
    r.multiply(w.tokens.back());
    return r.finish();
  }

  ReducedWord identity(GraphOfGroups const& g, VertexId v) {
    GWord w;
    w.range  = v;
    w.tokens = {g.backend().identity(v)};
    return reduce(g, w);
  }

  ReducedWord multiply(GraphOfGroups const& g,
                       ReducedWord const&   a,
                       ReducedWord const&   b) {
    auto const& graph = g.graph();
    VertexId    join  = a.source(graph);
    if (join != b.range()) {
      throw Error(ErrorCode::NotComposable,
                  "source " + graph.vertex_name(join) + " of the left factor is not "
                      + "the range " + graph.vertex_name(b.range())
                      + " of the right factor");
    }
    GWord w = a.word();
    w.tokens.back()
        = g.backend().compose(join, w.tokens.back(), b.word().tokens.front());
    w.tokens.insert(w.tokens.end(), b.tokens().begin() + 1, b.tokens().end());
    w.edges.insert(w.edges.end(), b.edges().begin(), b.edges().end());
    return reduce(g, w);
  }

  ReducedWord invert(GraphOfGroups const& g, ReducedWord const& a) {
    auto const& graph = g.graph();
    auto const& b     = g.backend();
    auto const& src   = a.word();
    std::size_t n     = src.edges.size();
    GWord       w;
    w.range = a.source(graph);
    w.tokens.clear();
    for (std::size_t j = n + 1; j-- > 0;) {
      w.tokens.push_back(b.inverse(token_vertex(graph, src, j), src.tokens[j]));
    }
    for (std::size_t i = n; i-- > 0;) {
      w.edges.push_back(OrientedGraph::reverse(src.edges[i]));
    }
    return reduce(g, w);
  }

  ReducedWord power(GraphOfGroups const& g, ReducedWord const& a, std::size_t m) {
    ReducedWord result = identity(g, a.range());
    for (std::size_t i = 0; i < m; ++i) {
      result = multiply(g, result, a);
    }
    return result;
  }

  bool is_identity(GraphOfGroups const& g, ReducedWord const& a) {
    return a.length() == 0 && g.backend().is_identity(a.range(), a.tail());
  }

  Rational modular_value(GraphOfGroups const& g, ReducedWord const& a) {
    auto const* gbs = g.gbs_backend();
    if (gbs == nullptr) {
      throw Error(ErrorCode::NotGBS,
                  "modular values need a GBS graph of groups, not "
                      + std::string(group_kind_name(g.kind())));
    }
    Rational q(1);
    for (auto e : a.edges()) {
      q *= ratio(gbs->k(OrientedGraph::reverse(e)), gbs->k(e));
    }
    return q;
  }

  GWord parse_word(GraphOfGroups const&    g,
                   std::string_view        text,
                   std::optional<VertexId> base) {
    auto const&              graph = g.graph();
    std::vector<std::string> items;
    {
      std::istringstream in{std::string(text)};
      std::string        item;
      while (in >> item) {
        items.push_back(item);
      }
    }
    if (items.empty()) {
      throw Error(ErrorCode::ParseError, "empty word");
    }
    GWord w;
    w.tokens.clear();
    for (std::size_t i = 0; i < items.size(); ++i) {
      auto const& item = items[i];
      auto        pos  = std::to_string(i + 1);
      if (i % 2 == 0) {
        if (!is_integer_literal(item)) {
          throw Error(ErrorCode::ParseError,
                      "expected a token at position " + pos + ", found '" + item
                          + "'");
        }
        w.tokens.emplace_back(item[0] == '+' ? item.substr(1) : item);
      } else {
        auto e = graph.find_edge(item);
        if (!e) {
          throw Error(ErrorCode::ParseError,
                      "expected an edge at position " + pos + ", found '" + item
                          + "'");
        }
        if (!w.edges.empty() && graph.source(w.edges.back()) != graph.range(*e)) {
          throw Error(ErrorCode::ParseError,
                      "edge '" + item + "' at position " + pos
                          + " is not adjacent to the previous edge");
        }
        w.edges.push_back(*e);
      }
    }
    if (w.tokens.size() == w.edges.size()) {
      w.tokens.push_back(Token(0));
      w.tokens.back() = g.backend().identity(graph.source(w.edges.back()));
    }
    w.range = w.edges.empty() ? base.value_or(0) : graph.range(w.edges.front());
    validate(g, w);
    return w;
  }

  std::string format_word(GraphOfGroups const& g, GWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      out += w.tokens[i].str();
      out += ' ';
      out += g.graph().edge_name(w.edges[i]);
      out += ' ';
    }
    out += w.tokens.back().str();
    return out;
  }

  std::string format_word(GraphOfGroups const& g, ReducedWord const& w) {
    return format_word(g, w.word());
  }

  std::string format_path_word(GraphOfGroups const& g, GWord const& w) {
    if (w.edges.empty()
        || !g.backend().is_identity(w.source(g.graph()), w.tokens.back())) {
      return format_word(g, w);
    }
    std::string out;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += w.tokens[i].str();
      out += ' ';
      out += g.graph().edge_name(w.edges[i]);
    }
    return out;
  }

}  // namespace bassdyn
