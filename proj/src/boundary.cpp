#include "bassdyn/boundary.hpp"

#include "bassdyn/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bassdyn {

  namespace {

    std::string_view trim(std::string_view s) {
      auto const ws = " \t\r\n";
      auto       b  = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      auto e = s.find_last_not_of(ws);
      return s.substr(b, e - b + 1);
    }

    constexpr std::string_view empty_path_text = "\xE2\x88\x85";  // ∅
    constexpr std::string_view infinity_text   = "\xE2\x88\x9E";  // ∞

    Path concat(Path a, Path const& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }

  }  // namespace

  bool canonical_less(Path const& a, Path const& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  }

  bool is_prefix(Path const& prefix, Path const& path) {
    return prefix.size() <= path.size()
           && std::equal(prefix.begin(), prefix.end(), path.begin());
  }

  ////////////////////////////////////////////////////////////////////////
  // BoundaryPoint
  ////////////////////////////////////////////////////////////////////////

  BoundaryPoint::BoundaryPoint(Path prefix, Path cycle)
      : _prefix(std::move(prefix)), _cycle(std::move(cycle)) {
    if (_cycle.empty()) {
      throw Error(ErrorCode::ParseError, "a boundary point needs a nonempty cycle");
    }
    std::size_t const m = _cycle.size();
    for (std::size_t d = 1; d < m; ++d) {
      if (m % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = d; i < m && periodic; ++i) {
        periodic = _cycle[i] == _cycle[i - d];
      }
      if (periodic) {
        _cycle.resize(d);
        break;
      }
    }
    while (!_prefix.empty() && _prefix.back() == _cycle.back()) {
      _prefix.pop_back();
      std::rotate(_cycle.rbegin(), _cycle.rbegin() + 1, _cycle.rend());
    }
  }

  Path BoundaryPoint::unroll(std::size_t n) const {
    Path out(_prefix.begin(), _prefix.begin() + std::min(n, _prefix.size()));
    while (out.size() < n) {
      out.push_back(_cycle[(out.size() - _prefix.size()) % _cycle.size()]);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // TreeBoundary: paths and levels
  ////////////////////////////////////////////////////////////////////////

  TreeBoundary::TreeBoundary(GraphOfGroups const& g, VertexId base)
      : _g(&g), _base(base) {
    if (base >= g.graph().number_of_vertices()) {
      throw Error(ErrorCode::UnknownVertex, "base vertex out of range");
    }
    g.require_non_singular();
  }

  VertexId TreeBoundary::endpoint(Path const& p) const {
    return p.empty() ? _base : _g->graph().source(p.back().edge);
  }

  bool TreeBoundary::is_path(Path const& p) const {
    auto const& graph  = _g->graph();
    VertexId    vertex = _base;
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto const& l = p[i];
      if (l.edge >= graph.number_of_edges() || graph.range(l.edge) != vertex
          || l.index >= _g->index(l.edge)) {
        return false;
      }
      if (i > 0 && l.edge == OrientedGraph::reverse(p[i - 1].edge) && l.index == 0) {
        return false;
      }
      vertex = graph.source(l.edge);
    }
    return true;
  }

  std::vector<Path> TreeBoundary::children(Path const& p) const {
    std::vector<Path> out;
    for (auto f : _g->graph().incoming(endpoint(p))) {
      bool const backtrack
          = !p.empty() && f == OrientedGraph::reverse(p.back().edge);
      for (std::uint64_t i = backtrack ? 1 : 0; i < _g->index(f); ++i) {
        out.push_back(p);
        out.back().push_back(Letter{f, i});
      }
    }
    return out;
  }

  std::vector<Path> TreeBoundary::enumerate_level(std::size_t d) const {
    std::vector<Path> level{Path{}};
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Path> next;
      for (auto const& p : level) {
        auto c = children(p);
        next.insert(next.end(),
                    std::make_move_iterator(c.begin()),
                    std::make_move_iterator(c.end()));
      }
      level = std::move(next);
    }
    return level;
  }

  std::size_t TreeBoundary::count_level(std::size_t d) const {
    if (d == 0) {
      return 1;
    }
    auto const& graph = _g->graph();
    // paths of the current length, by last edge
    std::vector<std::size_t> count(graph.number_of_edges(), 0);
    for (auto e : graph.incoming(_base)) {
      count[e] = _g->index(e);
    }
    for (std::size_t k = 1; k < d; ++k) {
      std::vector<std::size_t> next(count.size(), 0);
      for (EdgeId e = 0; e < count.size(); ++e) {
        if (count[e] == 0) {
          continue;
        }
        for (auto f : graph.incoming(graph.source(e))) {
          auto w = _g->index(f) - (f == OrientedGraph::reverse(e) ? 1 : 0);
          next[f] += count[e] * w;
        }
      }
      count = std::move(next);
    }
    std::size_t total = 0;
    for (auto c : count) {
      total += c;
    }
    return total;
  }

  ////////////////////////////////////////////////////////////////////////
  // Clopen sets
  ////////////////////////////////////////////////////////////////////////

  CylinderUnion TreeBoundary::cylinder(Path const& p) const {
    if (!is_path(p)) {
      throw Error(ErrorCode::ParseError, "not a reduced path from the base vertex");
    }
    return canonicalize({p});
  }

  CylinderUnion TreeBoundary::canonicalize(std::vector<Path> paths) const {
    std::set<Path> set(std::make_move_iterator(paths.begin()),
                       std::make_move_iterator(paths.end()));
    // drop everything below another member
    for (auto it = set.begin(); it != set.end();) {
      bool covered = false;
      Path prefix;
      for (std::size_t n = 0; n < it->size() && !covered; ++n) {
        covered = set.count(prefix) != 0;
        prefix.push_back((*it)[n]);
      }
      it = covered ? set.erase(it) : std::next(it);
    }
    // merge complete sibling families into their parent
    for (bool changed = true; changed;) {
      changed = false;
      std::map<Path, std::size_t> siblings;
      for (auto const& p : set) {
        if (!p.empty()) {
          ++siblings[Path(p.begin(), p.end() - 1)];
        }
      }
      for (auto const& [parent, n] : siblings) {
        auto kids = children(parent);
        if (kids.size() == n) {
          for (auto const& k : kids) {
            set.erase(k);
          }
          set.insert(parent);
          changed = true;
        }
      }
    }
    CylinderUnion out{std::vector<Path>(set.begin(), set.end())};
    std::sort(out.cylinders.begin(), out.cylinders.end(), canonical_less);
    return out;
  }

  CylinderUnion TreeBoundary::unite(CylinderUnion const& a,
                                    CylinderUnion const& b) const {
    auto all = a.cylinders;
    all.insert(all.end(), b.cylinders.begin(), b.cylinders.end());
    return canonicalize(std::move(all));
  }

  CylinderUnion TreeBoundary::intersect(CylinderUnion const& a,
                                        CylinderUnion const& b) const {
    std::vector<Path> out;
    for (auto const& p : a.cylinders) {
      for (auto const& q : b.cylinders) {
        if (is_prefix(p, q)) {
          out.push_back(q);
        } else if (is_prefix(q, p)) {
          out.push_back(p);
        }
      }
    }
    return canonicalize(std::move(out));
  }

  CylinderUnion TreeBoundary::complement(CylinderUnion const& a) const {
    std::set<Path>    set(a.cylinders.begin(), a.cylinders.end());
    std::vector<Path> out;
    std::vector<Path> stack{Path{}};
    while (!stack.empty()) {
      Path p = std::move(stack.back());
      stack.pop_back();
      if (set.count(p) != 0) {
        continue;
      }
      auto it = set.lower_bound(p);
      if (it == set.end() || !is_prefix(p, *it)) {
        out.push_back(std::move(p));
        continue;
      }
      auto kids = children(p);
      stack.insert(stack.end(),
                   std::make_move_iterator(kids.begin()),
                   std::make_move_iterator(kids.end()));
    }
    return canonicalize(std::move(out));
  }

  CylinderUnion TreeBoundary::difference(CylinderUnion const& a,
                                         CylinderUnion const& b) const {
    return intersect(a, complement(b));
  }

  bool TreeBoundary::contains(CylinderUnion const& a, CylinderUnion const& b) const {
    return difference(b, a).empty();
  }

  bool TreeBoundary::contains(CylinderUnion const& a, BoundaryPoint const& xi) const {
    return std::any_of(a.cylinders.begin(), a.cylinders.end(), [&](Path const& p) {
      return xi.unroll(p.size()) == p;
    });
  }

  std::vector<Path> TreeBoundary::refine(CylinderUnion const& a,
                                         std::size_t          d) const {
    std::vector<Path> out;
    std::vector<Path> todo(a.cylinders.rbegin(), a.cylinders.rend());
    while (!todo.empty()) {
      Path p = std::move(todo.back());
      todo.pop_back();
      if (p.size() >= d) {
        out.push_back(std::move(p));
        continue;
      }
      auto kids = children(p);
      todo.insert(todo.end(),
                  std::make_move_iterator(kids.rbegin()),
                  std::make_move_iterator(kids.rend()));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Action
  ////////////////////////////////////////////////////////////////////////

  void TreeBoundary::require_loop(ReducedWord const& gamma) const {
    auto const& graph = _g->graph();
    if (gamma.range() != _base || gamma.source(graph) != _base) {
      throw Error(ErrorCode::NotComposable,
                  "element is not a loop at base vertex " + graph.vertex_name(_base));
    }
  }

  namespace {

    void feed(WordReducer& r, ReducedWord const& gamma) {
      for (std::size_t i = 0; i < gamma.length(); ++i) {
        r.multiply(gamma.tokens()[i]);
        r.push(gamma.edges()[i]);
      }
      r.multiply(gamma.tail());
    }

    void feed(WordReducer& r, CosetBackend const& b, Path const& p) {
      for (auto const& l : p) {
        r.multiply(b.transversal(l.edge, l.index));
        r.push(l.edge);
      }
    }

    Path stack_path(WordReducer const& r, std::size_t from, std::size_t to) {
      Path out;
      for (std::size_t i = from; i < to; ++i) {
        out.push_back(Letter{r.edges()[i], r.indices()[i]});
      }
      return out;
    }

    // Feeds `block` repeatedly until the carry at a block boundary repeats.
    // The block must never cancel into the stack.
    template <typename FeedBlock>
    BoundaryPoint iterate_carry(WordReducer& r, std::size_t bound, FeedBlock&& block) {
      std::vector<Token>       carries;
      std::vector<std::size_t> sizes;
      std::size_t const        cancellations = r.cancellations();
      for (std::size_t pass = 0; pass <= bound; ++pass) {
        auto hit = std::find(carries.begin(), carries.end(), r.current());
        if (hit != carries.end()) {
          auto i = static_cast<std::size_t>(hit - carries.begin());
          return BoundaryPoint(stack_path(r, 0, sizes[i]),
                               stack_path(r, sizes[i], r.size()));
        }
        carries.push_back(r.current());
        sizes.push_back(r.size());
        block();
        if (r.cancellations() != cancellations) {
          throw Error(ErrorCode::HypothesisFailed,
                      "the periodic part cancels against itself");
        }
      }
      throw Error(ErrorCode::NonPeriodicCarry,
                  "carry through the periodic part did not repeat within "
                      + std::to_string(bound) + " passes");
    }

  }  // namespace

  void TreeBoundary::image_into(ReducedWord const& gamma,
                                Path&              p,
                                std::vector<Path>& out) const {
    if (p.empty()) {
      out.emplace_back();
      return;
    }
    WordReducer r(*_g, _base);
    feed(r, gamma);
    feed(r, _g->backend(), p);
    if (r.cancellations() < p.size()) {
      out.push_back(stack_path(r, 0, r.size()));
      return;
    }
    for (auto& child : children(p)) {
      image_into(gamma, child, out);
    }
  }

  CylinderUnion TreeBoundary::image(ReducedWord const& gamma, Path const& p) const {
    require_loop(gamma);
    std::vector<Path> out;
    Path              q = p;
    image_into(gamma, q, out);
    return canonicalize(std::move(out));
  }

  CylinderUnion TreeBoundary::image(ReducedWord const&   gamma,
                                    CylinderUnion const& a) const {
    require_loop(gamma);
    std::vector<Path> out;
    for (auto p : a.cylinders) {
      image_into(gamma, p, out);
    }
    return canonicalize(std::move(out));
  }

  BoundaryPoint TreeBoundary::act(ReducedWord const&   gamma,
                                  BoundaryPoint const& xi,
                                  std::size_t          carry_bound) const {
    require_loop(gamma);
    validate(xi);
    auto const& cycle = xi.cycle();
    if (carry_bound == 0) {
      carry_bound
          = std::max(default_carry_bound, gamma.length() + 2 * cycle.size());
    }
    // Past |gamma| letters of xi no further cancellation is possible.
    std::size_t lead = std::max(gamma.length() + 1, xi.prefix().size());
    auto        rem  = (lead - xi.prefix().size()) % cycle.size();
    if (rem != 0) {
      lead += cycle.size() - rem;
    }
    WordReducer r(*_g, _base);
    feed(r, gamma);
    feed(r, _g->backend(), xi.unroll(lead));
    return iterate_carry(r, carry_bound, [&] { feed(r, _g->backend(), cycle); });
  }

  BoundaryPoint TreeBoundary::periodic_limit(ReducedWord const& mu,
                                             std::size_t        carry_bound) const {
    require_loop(mu);
    if (mu.length() == 0) {
      throw Error(ErrorCode::HypothesisFailed, "a length-0 loop has no limit point");
    }
    if (carry_bound == 0) {
      carry_bound = std::max(default_carry_bound, 2 * mu.length());
    }
    WordReducer r(*_g, _base);
    auto        xi = iterate_carry(r, carry_bound, [&] { feed(r, mu); });
    if (!is_path(concat(concat(xi.prefix(), xi.cycle()), xi.cycle()))) {
      throw Error(ErrorCode::HypothesisFailed,
                  "the loop is not cyclically reduced; its powers cancel");
    }
    return xi;
  }

  ////////////////////////////////////////////////////////////////////////
  // Conversions and text
  ////////////////////////////////////////////////////////////////////////

  GWord TreeBoundary::to_word(Path const& p) const {
    GWord w;
    w.range = p.empty() ? _base : _g->graph().range(p.front().edge);
    w.tokens.clear();
    for (auto const& l : p) {
      w.tokens.push_back(_g->backend().transversal(l.edge, l.index));
      w.edges.push_back(l.edge);
    }
    w.tokens.push_back(_g->backend().identity(endpoint(p)));
    return w;
  }

  ReducedWord TreeBoundary::to_reduced(Path const& p) const {
    return ReducedWord::from_reduced(*_g, to_word(p));
  }

  Path TreeBoundary::to_path(ReducedWord const& w) const {
    Path out;
    for (std::size_t i = 0; i < w.length(); ++i) {
      auto e = w.edges()[i];
      out.push_back(Letter{e, _g->backend().split(e, w.tokens()[i]).index});
    }
    return out;
  }

  namespace {

    // Letters of a word text; the range is not checked here.
    Path parse_letters(GraphOfGroups const& g, std::string_view text) {
      text = trim(text);
      if (text.empty() || text == empty_path_text) {
        return {};
      }
      auto w = parse_word(g, text);
      if (!g.backend().is_identity(w.source(g.graph()), w.tokens.back())) {
        throw Error(ErrorCode::ParseError,
                    "a path must end with an edge or the identity, got '"
                        + std::string(text) + "'");
      }
      if (!is_reduced(g, w)) {
        throw Error(ErrorCode::ParseError,
                    "'" + std::string(text) + "' is not a reduced path");
      }
      Path out;
      for (std::size_t i = 0; i < w.edges.size(); ++i) {
        out.push_back(
            Letter{w.edges[i], g.backend().split(w.edges[i], w.tokens[i]).index});
      }
      return out;
    }

  }  // namespace

  Path TreeBoundary::parse_path(std::string_view text) const {
    Path p = parse_letters(*_g, text);
    if (!is_path(p)) {
      throw Error(ErrorCode::ParseError,
                  "'" + std::string(trim(text))
                      + "' is not a reduced path from base vertex "
                      + _g->graph().vertex_name(_base));
    }
    return p;
  }

  std::string TreeBoundary::format_path(Path const& p) const {
    if (p.empty()) {
      return std::string(empty_path_text);
    }
    std::string out;
    for (auto const& l : p) {
      if (!out.empty()) {
        out += ' ';
      }
      out += _g->backend().transversal(l.edge, l.index).str();
      out += ' ';
      out += _g->graph().edge_name(l.edge);
    }
    return out;
  }

  std::string TreeBoundary::format_cylinder(Path const& p) const {
    return "Z(" + format_path(p) + ")";
  }

  std::string TreeBoundary::format_union(CylinderUnion const& a) const {
    std::string out = "{";
    for (std::size_t i = 0; i < a.cylinders.size(); ++i) {
      if (i > 0) {
        out += ", ";
      }
      out += format_cylinder(a.cylinders[i]);
    }
    return out + "}";
  }

  BoundaryPoint TreeBoundary::parse_point(std::string_view text) const {
    auto open  = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos
        || close < open) {
      throw Error(ErrorCode::ParseError,
                  "a boundary point is written 'prefix (cycle)', got '"
                      + std::string(text) + "'");
    }
    auto rest = trim(text.substr(close + 1));
    if (!rest.empty() && rest != "^" + std::string(infinity_text) && rest != "^inf") {
      throw Error(ErrorCode::ParseError,
                  "unexpected '" + std::string(rest) + "' after the cycle");
    }
    Path prefix = parse_letters(*_g, text.substr(0, open));
    Path cycle  = parse_letters(*_g, text.substr(open + 1, close - open - 1));
    if (cycle.empty()) {
      throw Error(ErrorCode::ParseError, "empty cycle in boundary point");
    }
    BoundaryPoint xi(std::move(prefix), std::move(cycle));
    validate(xi);
    return xi;
  }

  std::string TreeBoundary::format_point(BoundaryPoint const& xi) const {
    std::string out;
    if (!xi.prefix().empty()) {
      out = format_path(xi.prefix()) + " ";
    }
    return out + "(" + format_path(xi.cycle()) + ")^" + std::string(infinity_text);
  }

  void TreeBoundary::validate(BoundaryPoint const& xi) const {
    if (!is_path(concat(concat(xi.prefix(), xi.cycle()), xi.cycle()))) {
      throw Error(ErrorCode::HypothesisFailed,
                  "prefix followed by the repeated cycle is not a reduced path "
                  "from the base vertex");
    }
  }

}  // namespace bassdyn
