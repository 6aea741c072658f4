#include "bassdyn/app.hpp"

#include "bassdyn/classifier.hpp"
#include "bassdyn/dynamics.hpp"
#include "bassdyn/error.hpp"

#include <charconv>
#include <functional>
#include <set>

namespace bassdyn {

  namespace {

    struct Context {
      std::string_view     command;
      InputDocument const& doc;
      Flags const&         flags;

      [[nodiscard]] bool has(std::string_view name) const {
        return flags.find(name) != flags.end();
      }

      [[nodiscard]] std::string const& text(std::string_view name) const {
        auto it = flags.find(name);
        if (it == flags.end()) {
          throw Error(ErrorCode::FlagError,
                      std::string(command) + " needs --" + std::string(name));
        }
        return it->second;
      }

      [[nodiscard]] std::size_t number(std::string_view name, std::size_t fallback) const {
        auto it = flags.find(name);
        if (it == flags.end()) {
          return fallback;
        }
        std::size_t value = 0;
        auto const& s     = it->second;
        auto [end, ec]    = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || end != s.data() + s.size()) {
          throw Error(ErrorCode::FlagError,
                      "--" + std::string(name) + " expects a non-negative integer, got '"
                          + s + "'");
        }
        return value;
      }

      [[nodiscard]] GraphOfGroups const& groups() const {
        if (!doc.groups) {
          throw Error(ErrorCode::SchemaError,
                      std::string(command) + " needs a graph-of-groups document");
        }
        return *doc.groups;
      }

      [[nodiscard]] DefiningGraph const& defining() const {
        if (!doc.defining) {
          throw Error(ErrorCode::SchemaError,
                      std::string(command) + " needs a defining-graph document");
        }
        return *doc.defining;
      }

      [[nodiscard]] VertexId base() const {
        auto const& g = groups();
        if (auto it = flags.find("base"); it != flags.end()) {
          auto v = g.graph().find_vertex(it->second);
          if (!v) {
            throw Error(ErrorCode::ResolveError,
                        "--base: unknown vertex '" + it->second + "'");
          }
          return *v;
        }
        return doc.base;
      }

      [[nodiscard]] ReducedWord word(std::string_view name) const {
        auto const& g = groups();
        return reduce(g, parse_word(g, text(name), base()));
      }

      [[nodiscard]] ClassificationReport report() const {
        ClassificationReport r;
        r.instance = doc.name;
        r.command  = std::string(command);
        return r;
      }
    };

    using Handler = std::function<ClassificationReport(Context const&)>;

    struct Command {
      std::string           name;
      std::set<std::string> flags;
      Handler               handler;
    };

    void boundary_note(ClassificationReport& r) {
      r.add_warning(warning::eventually_periodic,
                    "boundary points are handled as eventually periodic words");
    }

    ClassificationReport cmd_reduce(Context const& c) {
      auto const& g = c.groups();
      auto        w = c.word("word");
      auto        r = c.report();
      auto        s = format_word(g, w);
      r.result["word"]    = c.text("word");
      r.result["reduced"] = s;
      r.lines.push_back(s);
      return r;
    }

    ClassificationReport cmd_act(Context const& c) {
      auto const&  g = c.groups();
      TreeBoundary tree(g, c.base());
      auto         gamma = c.word("element");
      auto         xi    = tree.parse_point(c.text("point"));
      tree.validate(xi);
      auto image = tree.act(gamma, xi, c.number("bound", 0));
      auto r     = c.report();
      auto s     = tree.format_point(image);
      r.result["element"] = format_word(g, gamma);
      r.result["point"]   = tree.format_point(xi);
      r.result["image"]   = s;
      r.lines.push_back(s);
      boundary_note(r);
      return r;
    }

    ClassificationReport cmd_tree(Context const& c) {
      auto const&  g = c.groups();
      TreeBoundary tree(g, c.base());
      auto         d     = c.number("depth", 3);
      auto         count = tree.count_level(d);
      auto         r     = c.report();
      r.result["depth"] = d;
      r.result["count"] = count;
      r.lines.push_back("level " + std::to_string(d) + ": " + std::to_string(count)
                        + " paths");
      std::size_t const listing = c.number("list", 64);
      if (count <= listing) {
        Json paths = Json::array();
        for (auto const& p : tree.enumerate_level(d)) {
          auto s = tree.format_path(p);
          paths.push_back(s);
          r.lines.push_back("  " + (s.empty() ? std::string("∅") : s));
        }
        r.result["paths"] = paths;
      }
      return r;
    }

    std::string states(OrientedGraph const& graph, std::vector<EdgeId> const& xs) {
      std::string out;
      for (auto e : xs) {
        out += (out.empty() ? "" : " ") + graph.edge_name(e);
      }
      return out;
    }

    ClassificationReport cmd_minimality(Context const& c) {
      auto const&  g = c.groups();
      auto const   base = c.base();
      TreeBoundary tree(g, base);
      TurnGraph    t(g);
      auto         m = check_minimality(t, base);
      auto         r = c.report();
      r.result["minimal"] = m.minimal;
      std::string cert    = "every boundary point flows to every edge";
      if (!m.minimal) {
        auto const& graph   = g.graph();
        r.result["edge"]    = graph.edge_name(*m.edge);
        r.result["can_flow_to"] = states(graph, m.can_flow_to);
        r.result["trapped_cycle"] = states(graph, m.trapped_cycle);
        cert = "points avoiding what " + graph.edge_name(*m.edge) + " flows to {"
               + states(graph, m.can_flow_to) + "}";
        if (m.trapped_point) {
          auto p                    = tree.format_point(*m.trapped_point);
          r.result["trapped_point"] = p;
          cert += ", e.g. " + p;
        }
      }
      r.lines.push_back(std::string("minimal: ") + (m.minimal ? "true" : "false"));
      r.hypotheses.push_back(Hypothesis{hyp::minimal, m.minimal, cert});
      boundary_note(r);
      r.exit_code = m.minimal ? ExitCode::positive : ExitCode::failed;
      return r;
    }

    ClassificationReport cmd_repeatable(Context const& c) {
      auto const& g     = c.groups();
      auto        found = find_repeatable(g, c.number("max-len", 4), c.number("limit", 0));
      auto        r     = c.report();
      Json        list  = Json::array();
      bool        any   = false;
      for (auto const& p : found) {
        auto s = format_path_word(g, p.mu.word());
        list.push_back(Json{{"path", s}, {"flagged", p.flagged}});
        r.lines.push_back(s + (p.flagged ? "  flagged" : ""));
        any = any || p.flagged;
      }
      r.result["paths"] = list;
      r.hypotheses.push_back(Hypothesis{
          hyp::repeatable_path, any,
          any ? "a listed path has |Sigma_{ē_n}| >= 2"
              : "no flagged repeatable path up to the length bound"});
      r.exit_code = any ? ExitCode::positive : ExitCode::failed;
      return r;
    }

    std::optional<ReducedWord> mu_flag(Context const& c) {
      if (c.has("mu")) {
        return c.word("mu");
      }
      return std::nullopt;
    }

    ClassificationReport cmd_filling(Context const& c) {
      auto const&  g = c.groups();
      TreeBoundary tree(g, c.base());
      auto         o1 = parse_union(tree, c.text("o1"));
      auto         o2 = parse_union(tree, c.text("o2"));
      auto         w  = construct_filling_witness(tree, mu_flag(c), o1, o2,
                                                  c.number("bound", 10000));
      auto check = verify_filling(tree, w);
      auto r     = c.report();
      auto word  = [&](ReducedWord const& x) { return format_word(g, x); };
      r.result   = Json{{"o1", tree.format_union(w.o1)},
                        {"o2", tree.format_union(w.o2)},
                        {"trivial", w.trivial},
                        {"mu", word(w.mu)},
                        {"gamma1", word(w.gamma1)},
                        {"gamma2", word(w.gamma2)},
                        {"m", w.m},
                        {"t", word(w.t)},
                        {"h1", word(w.h1)},
                        {"h2", word(w.h2)},
                        {"a", tree.format_union(w.a)},
                        {"b", tree.format_union(w.b)},
                        {"candidates", w.candidates},
                        {"verified", check.ok}};
      if (w.trivial) {
        r.lines.push_back("O1 u O2 is the whole boundary: h1 = h2 = 1");
      } else {
        r.lines.push_back("mu: " + word(w.mu));
        r.lines.push_back("gamma1: " + word(w.gamma1));
        r.lines.push_back("gamma2: " + word(w.gamma2));
        r.lines.push_back("m: " + std::to_string(w.m));
        r.lines.push_back("h1: " + word(w.h1));
        r.lines.push_back("h2: " + word(w.h2));
        r.lines.push_back("A: " + tree.format_union(w.a));
        r.lines.push_back("B: " + tree.format_union(w.b));
        r.lines.push_back("candidates: " + std::to_string(w.candidates));
      }
      r.lines.push_back(check.ok ? "verified: boundary = h1^-1 O1 u h2^-1 O2"
                                 : "verification failed: " + check.failure + " at "
                                       + tree.format_union(check.locus));
      boundary_note(r);
      if (!check.ok) {
        throw Error(ErrorCode::HypothesisFailed, "witness did not verify: " + check.failure);
      }
      return r;
    }

    ClassificationReport cmd_paradoxical(Context const& c) {
      auto const&  g = c.groups();
      TreeBoundary tree(g, c.base());
      auto         o = parse_union(tree, c.text("o"));
      auto         p = construct_paradoxical(tree, mu_flag(c), o, c.number("bound", 10000));
      auto         check = verify_paradoxical(tree, p);
      auto         r     = c.report();
      auto pieces = [&](SubequivalenceWitness const& s) {
        Json out = Json::array();
        for (auto const& piece : s.pieces) {
          out.push_back(Json{{"u", tree.format_cylinder(piece.u)},
                             {"g", format_word(g, piece.g)}});
        }
        return out;
      };
      r.result = Json{{"o", tree.format_union(p.o)},
                      {"o1", tree.format_union(p.o1)},
                      {"o2", tree.format_union(p.o2)},
                      {"first", pieces(p.first)},
                      {"second", pieces(p.second)},
                      {"verified", check.ok}};
      r.lines.push_back("O1: " + tree.format_union(p.o1));
      r.lines.push_back("O2: " + tree.format_union(p.o2));
      for (auto const* s : {&p.first, &p.second}) {
        r.lines.push_back(std::string(s == &p.first ? "into O1:" : "into O2:"));
        for (auto const& piece : s->pieces) {
          r.lines.push_back("  " + format_word(g, piece.g) + " * "
                            + tree.format_cylinder(piece.u));
        }
      }
      r.lines.push_back(check.ok ? "verified" : "verification failed: " + check.failure);
      boundary_note(r);
      if (!check.ok) {
        throw Error(ErrorCode::HypothesisFailed, "witness did not verify: " + check.failure);
      }
      return r;
    }

    ClassificationReport cmd_northsouth(Context const& c) {
      auto const&  g = c.groups();
      TreeBoundary tree(g, c.base());
      auto         gamma = c.word("element");
      auto         ns    = verify_north_south(tree, gamma, c.number("depth", 2),
                                              c.number("bound", 8));
      auto         r     = c.report();
      r.result = Json{{"element", format_word(g, gamma)},
                      {"attracting", tree.format_point(ns.attracting)},
                      {"repelling", tree.format_point(ns.repelling)},
                      {"u", tree.format_union(ns.u)},
                      {"v", tree.format_union(ns.v)},
                      {"m", ns.m}};
      r.lines.push_back("attracting: " + tree.format_point(ns.attracting));
      r.lines.push_back("repelling: " + tree.format_point(ns.repelling));
      r.lines.push_back("U: " + tree.format_union(ns.u));
      r.lines.push_back("V: " + tree.format_union(ns.v));
      r.lines.push_back("m: " + std::to_string(ns.m));
      TurnGraph t(g);
      if (!boundary_infinite(t, tree.base()).infinite) {
        r.add_warning(warning::finite_boundary,
                      "the boundary is finite; the contraction holds vacuously");
      }
      boundary_note(r);
      return r;
    }

    ClassificationReport cmd_betti(Context const& c) {
      auto r = c.report();
      std::size_t b;
      if (c.doc.groups) {
        b = first_betti_number(c.doc.groups->graph());
      } else {
        auto const& d = c.defining();
        b = d.number_of_edges() + d.components().size() - d.number_of_vertices();
      }
      r.result["betti"] = b;
      r.lines.push_back(std::to_string(b));
      return r;
    }

    ClassificationReport cmd_unimodular(Context const& c) {
      auto const& g   = c.groups();
      auto        uni = check_unimodular(g, c.base());
      auto        r   = c.report();
      Json        basis = Json::array();
      for (auto const& v : uni.basis) {
        auto loop = format_word(g, v.loop);
        basis.push_back(Json{{"loop", loop},
                             {"q", to_string(v.q)},
                             {"q_reciprocal", to_string(1 / v.q)}});
        r.lines.push_back("q(" + loop + ") = " + to_string(v.q) + " (reciprocal "
                          + to_string(1 / v.q) + ")");
      }
      r.result["cycle_basis"] = basis;
      r.result["unimodular"]  = uni.unimodular;
      r.lines.push_back(std::string("unimodular: ") + (uni.unimodular ? "true" : "false"));
      r.add_warning(warning::unimod_typo,
                    "the criterion 'unimodular iff |k| != |l|' for one-loop graphs "
                    "conflicts with the definition |q| = 1 on loops; the definition is "
                    "used");
      r.add_warning(warning::q_orientation,
                    "q is taken as the product of k_ē/k_e; the reciprocal convention "
                    "gives the same verdict");
      r.exit_code = uni.unimodular ? ExitCode::positive : ExitCode::failed;
      return r;
    }

    GroupType defining_type(Context const& c) {
      (void) c.defining();
      return c.doc.group_type;
    }

    ClassificationReport cmd_factors(Context const& c) {
      auto const& d    = c.defining();
      auto        type = defining_type(c);
      auto        dec  = irreducible_factors(d, type);
      auto        r    = c.report();
      Json        list = Json::array();
      for (auto const& f : dec.factors) {
        std::vector<std::string> names;
        std::string              text;
        for (auto v : f.vertices) {
          names.push_back(d.name(v));
          text += (text.empty() ? "" : ", ") + d.name(v);
        }
        list.push_back(Json{{"vertices", names}, {"tag", factor_tag_name(f.tag)}});
        r.lines.push_back("{" + text + "} " + std::string(factor_tag_name(f.tag)));
      }
      r.result["factors"]   = list;
      r.result["n"]         = dec.euclidean;
      r.result["essential"] = is_essential(d, type);
      r.lines.push_back("n: " + std::to_string(dec.euclidean));
      r.lines.push_back(std::string("essential: ")
                        + (is_essential(d, type) ? "true" : "false"));
      return r;
    }

    ClassificationReport cmd_doubling(Context const& c) {
      auto const& d = c.defining();
      auto        r = c.report();
      try {
        auto dd = doubling_embedding(d);
        Json edges = Json::array();
        for (auto [u, v] : dd.edges()) {
          edges.push_back(Json::array({dd.name(u), dd.name(v)}));
          r.lines.push_back(dd.name(u) + " -- " + dd.name(v));
        }
        r.result = Json{{"vertices", dd.names()}, {"edges", edges}, {"join_free", true}};
        r.lines.insert(r.lines.begin(), std::to_string(dd.number_of_vertices())
                                            + " vertices, "
                                            + std::to_string(dd.number_of_edges())
                                            + " edges, join-free");
      } catch (Error const& e) {
        if (e.code() != ErrorCode::NotIrreducible) {
          throw;
        }
        r.lines.push_back(e.what());
        r.hypotheses.push_back(Hypothesis{"join-free", false, e.what()});
        r.exit_code = ExitCode::failed;
      }
      return r;
    }

    std::vector<Command> const& commands() {
      static std::vector<Command> const table = {
          {"classify-gbs", {}, [](Context const& c) {
             return classify_gbs(c.groups(), c.base(), c.doc.name);
           }},
          {"classify-boundary", {}, [](Context const& c) {
             return classify_boundary(c.groups(), c.base(), c.doc.name);
           }},
          {"classify-nevo-sageev", {}, [](Context const& c) {
             return classify_nevo_sageev(c.defining(), defining_type(c), c.doc.name);
           }},
          {"classify-visual", {}, [](Context const& c) {
             return classify_visual(c.defining(), defining_type(c), c.doc.name);
           }},
          {"reduce", {"word"}, cmd_reduce},
          {"act", {"element", "point", "bound"}, cmd_act},
          {"tree", {"depth", "list"}, cmd_tree},
          {"minimality", {}, cmd_minimality},
          {"repeatable", {"max-len", "limit"}, cmd_repeatable},
          {"witness-2filling", {"o1", "o2", "bound", "mu"}, cmd_filling},
          {"paradoxical", {"o", "bound", "mu"}, cmd_paradoxical},
          {"northsouth", {"element", "depth", "bound"}, cmd_northsouth},
          {"betti", {}, cmd_betti},
          {"unimodular", {}, cmd_unimodular},
          {"factors", {}, cmd_factors},
          {"doubling", {}, cmd_doubling},
      };
      return table;
    }

    bool inconclusive(ErrorCode code) {
      return code == ErrorCode::NotFoundWithinBound || code == ErrorCode::BoundExceeded
             || code == ErrorCode::NonPeriodicCarry;
    }

    bool hypothesis_failure(ErrorCode code) {
      return code == ErrorCode::HypothesisFailed || code == ErrorCode::SingularInput;
    }

  }  // namespace

  std::vector<std::string> const& command_names() {
    static std::vector<std::string> const names = [] {
      std::vector<std::string> out;
      for (auto const& c : commands()) {
        out.push_back(c.name);
      }
      return out;
    }();
    return names;
  }

  ClassificationReport run(std::string_view     command,
                           InputDocument const& doc,
                           Flags const&         flags) {
    Command const* found = nullptr;
    for (auto const& c : commands()) {
      if (c.name == command) {
        found = &c;
      }
    }
    if (found == nullptr) {
      throw Error(ErrorCode::UnknownCommand, "'" + std::string(command) + "'");
    }
    for (auto const& [name, value] : flags) {
      if (name != "base" && !found->flags.contains(name)) {
        throw Error(ErrorCode::FlagError,
                    "--" + name + " is not a flag of " + std::string(command));
      }
    }
    Context ctx{command, doc, flags};
    try {
      return found->handler(ctx);
    } catch (Error const& e) {
      if (!inconclusive(e.code()) && !hypothesis_failure(e.code())) {
        throw;
      }
      auto r = ctx.report();
      r.lines.push_back(e.what());
      r.result["error"] = e.what();
      if (inconclusive(e.code())) {
        r.add_warning(warning::inconclusive, e.what());
        r.exit_code = ExitCode::inconclusive;
      } else {
        if (e.code() == ErrorCode::SingularInput) {
          r.add_warning(warning::singular, e.what());
        }
        r.exit_code = ExitCode::failed;
      }
      return r;
    }
  }

  CylinderUnion parse_union(TreeBoundary const& tree, std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
      }
      return s;
    };
    text = trim(text);
    bool braces = !text.empty() && text.front() == '{';
    if (braces) {
      if (text.back() != '}') {
        throw Error(ErrorCode::ParseError, "unbalanced braces in '" + std::string(text) + "'");
      }
      text = trim(text.substr(1, text.size() - 2));
      if (text.empty()) {
        return CylinderUnion{};
      }
    }
    std::vector<Path> paths;
    while (!text.empty()) {
      std::string_view item;
      if (text.starts_with("Z(")) {
        auto close = text.find(')');
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::ParseError, "unclosed 'Z(' in '" + std::string(text) + "'");
        }
        item = text.substr(2, close - 2);
        text = trim(text.substr(close + 1));
        if (!text.empty()) {
          if (text.front() != ',' && text.front() != ';') {
            throw Error(ErrorCode::ParseError,
                        "expected ',' between cylinders near '" + std::string(text) + "'");
          }
          text = trim(text.substr(1));
        }
      } else {
        auto sep = text.find_first_of(",;");
        item     = trim(text.substr(0, sep));
        text     = sep == std::string_view::npos ? std::string_view{}
                                                 : trim(text.substr(sep + 1));
      }
      auto p = tree.parse_path(trim(item));
      if (!tree.is_path(p)) {
        throw Error(ErrorCode::ParseError,
                    "'" + std::string(item) + "' is not a reduced path from the base");
      }
      paths.push_back(std::move(p));
    }
    return tree.canonicalize(std::move(paths));
  }

}  // namespace bassdyn
