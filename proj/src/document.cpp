#include "bassdyn/document.hpp"

#include "bassdyn/error.hpp"
#include "bassdyn/report.hpp"

#include <algorithm>
#include <set>

namespace bassdyn {

  namespace {

    [[noreturn]] void schema(std::string const& where, std::string const& what) {
      throw Error(ErrorCode::SchemaError, "at " + where + ": " + what);
    }

    [[noreturn]] void resolve(std::string const& where, std::string const& what) {
      throw Error(ErrorCode::ResolveError, "at " + where + ": " + what);
    }

    // Re-throws construction errors as SchemaError/ResolveError at `where`.
    template <typename F>
    auto at(std::string const& where, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (Error const& e) {
        if (e.code() == ErrorCode::UnknownVertex) {
          resolve(where, e.what());
        }
        if (e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::ResolveError) {
          throw;
        }
        schema(where, e.what());
      }
    }

    Json const& field(Json const& j, std::string const& where, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        schema(where, std::string("missing field '") + key + "'");
      }
      return j.at(key);
    }

    std::string string_field(Json const& j, std::string const& where, char const* key) {
      auto const& v = field(j, where, key);
      if (!v.is_string()) {
        schema(where + "/" + key, "expected a string");
      }
      return v.get<std::string>();
    }

    Integer integer(Json const& v, std::string const& where) {
      if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Integer(v.get<std::uint64_t>())
                                      : Integer(v.get<std::int64_t>());
      }
      if (v.is_string()) {
        auto s = v.get<std::string>();
        auto digits = s.substr(!s.empty() && s[0] == '-' ? 1 : 0);
        if (!digits.empty()
            && std::all_of(digits.begin(), digits.end(), [](char c) {
                 return c >= '0' && c <= '9';
               })) {
          return Integer(s);
        }
      }
      schema(where, "expected an integer");
    }

    std::uint32_t element(Json const& v, std::string const& where) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() > UINT32_MAX) {
        schema(where, "expected a group element index");
      }
      return v.get<std::uint32_t>();
    }

    std::vector<std::uint32_t> elements(Json const& v, std::string const& where) {
      if (!v.is_array()) {
        schema(where, "expected an array of group elements");
      }
      std::vector<std::uint32_t> out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(element(v[i], where + "/" + std::to_string(i)));
      }
      return out;
    }

    FiniteGroup finite_group(Json const& g, std::string const& where) {
      if (g.is_object() && g.contains("cyclic")) {
        auto n = element(g.at("cyclic"), where + "/cyclic");
        return at(where + "/cyclic", [&] { return FiniteGroup::cyclic(n); });
      }
      if (g.is_object() && g.contains("table")) {
        auto const& t = g.at("table");
        if (!t.is_array()) {
          schema(where + "/table", "expected an array of rows");
        }
        std::vector<std::vector<std::uint32_t>> rows;
        for (std::size_t i = 0; i < t.size(); ++i) {
          rows.push_back(elements(t[i], where + "/table/" + std::to_string(i)));
        }
        return at(where + "/table", [&] { return FiniteGroup::from_table(rows); });
      }
      schema(where, "expected {\"cyclic\": n} or {\"table\": [...]}");
    }

    void check_keys(Json const&                  j,
                    std::string const&           where,
                    std::set<std::string> const& allowed) {
      for (auto const& [key, value] : j.items()) {
        if (!allowed.contains(key)) {
          schema(where + "/" + key, "unknown field");
        }
      }
    }

    InputDocument parse_defining(Json const& j) {
      check_keys(j, "", {"kind", "name", "vertices", "edges", "group"});
      InputDocument doc;
      doc.kind  = DocumentKind::defining_graph;
      auto type = string_field(j, "", "group");
      if (type == "racg") {
        doc.group_type = GroupType::racg;
      } else if (type == "raag") {
        doc.group_type = GroupType::raag;
      } else {
        schema("/group", "expected \"racg\" or \"raag\"");
      }
      auto const& vs = field(j, "", "vertices");
      if (!vs.is_array() || vs.empty()) {
        schema("/vertices", "expected a nonempty array of names");
      }
      std::vector<std::string> names;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i].is_string()) {
          schema("/vertices/" + std::to_string(i), "expected a string");
        }
        names.push_back(vs[i].get<std::string>());
      }
      std::vector<DefiningGraph::edge_type> edges;
      if (j.contains("edges")) {
        auto const& es = j.at("edges");
        if (!es.is_array()) {
          schema("/edges", "expected an array of pairs");
        }
        for (std::size_t i = 0; i < es.size(); ++i) {
          auto where = "/edges/" + std::to_string(i);
          if (!es[i].is_array() || es[i].size() != 2 || !es[i][0].is_string()
              || !es[i][1].is_string()) {
            schema(where, "expected a pair of vertex names");
          }
          edges.emplace_back(es[i][0].get<std::string>(), es[i][1].get<std::string>());
          // resolve each edge individually for a precise locus
          for (auto const& end : {edges.back().first, edges.back().second}) {
            if (std::find(names.begin(), names.end(), end) == names.end()) {
              resolve(where, "unknown vertex '" + end + "'");
            }
          }
        }
      }
      doc.defining = at("/edges", [&] { return DefiningGraph::build(names, edges); });
      return doc;
    }

    InputDocument parse_groups(Json const& j) {
      check_keys(j, "", {"kind", "name", "gbs", "vertices", "edges", "base"});
      InputDocument doc;
      doc.kind  = DocumentKind::graph_of_groups;
      auto const& gbs_flag = field(j, "", "gbs");
      if (!gbs_flag.is_boolean()) {
        schema("/gbs", "expected a boolean");
      }
      bool const gbs = gbs_flag.get<bool>();

      OrientedGraph            graph;
      std::vector<FiniteGroup> groups;
      auto const&              vs = field(j, "", "vertices");
      if (!vs.is_array() || vs.empty()) {
        schema("/vertices", "expected a nonempty array");
      }
      for (std::size_t i = 0; i < vs.size(); ++i) {
        auto where = "/vertices/" + std::to_string(i);
        if (gbs) {
          if (!vs[i].is_string()) {
            schema(where, "expected a vertex name");
          }
          auto name = vs[i].get<std::string>();
          at(where, [&] { return graph.add_vertex(name); });
        } else {
          if (!vs[i].is_object()) {
            schema(where, "expected {\"id\": ..., \"group\": ...}");
          }
          check_keys(vs[i], where, {"id", "group"});
          auto name = string_field(vs[i], where, "id");
          at(where, [&] { return graph.add_vertex(name); });
          groups.push_back(finite_group(field(vs[i], where, "group"), where + "/group"));
        }
      }

      auto const& es = field(j, "", "edges");
      if (!es.is_array()) {
        schema("/edges", "expected an array");
      }
      std::vector<std::pair<Integer, Integer>> indices;
      std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
          images;
      for (std::size_t i = 0; i < es.size(); ++i) {
        auto const& e     = es[i];
        auto        where = "/edges/" + std::to_string(i);
        if (!e.is_object()) {
          schema(where, "expected an edge object");
        }
        if (gbs) {
          check_keys(e, where, {"id", "from", "to", "k", "k_rev", "rev_id"});
        } else {
          check_keys(e, where, {"id", "from", "to", "subgroup", "subgroup_rev", "rev_id"});
        }
        auto id   = string_field(e, where, "id");
        auto from = string_field(e, where, "from");
        auto to   = string_field(e, where, "to");
        auto s    = graph.find_vertex(from);
        auto r    = graph.find_vertex(to);
        if (!s) {
          resolve(where + "/from", "unknown vertex '" + from + "'");
        }
        if (!r) {
          resolve(where + "/to", "unknown vertex '" + to + "'");
        }
        std::string rev = e.contains("rev_id") ? string_field(e, where, "rev_id") : "";
        if (graph.find_edge(id) || (!rev.empty() && graph.find_edge(rev))) {
          schema(where + "/id", "DuplicateEdge: edge '" + id + "' is already defined");
        }
        at(where, [&] { return graph.add_edge(id, *s, *r, rev); });
        if (gbs) {
          auto k     = integer(field(e, where, "k"), where + "/k");
          auto k_rev = integer(field(e, where, "k_rev"), where + "/k_rev");
          if (k == 0) {
            schema(where + "/k", "ZeroIndex: edge '" + id + "' has k = 0");
          }
          if (k_rev == 0) {
            schema(where + "/k_rev", "ZeroIndex: edge '" + id + "' has k_rev = 0");
          }
          indices.emplace_back(std::move(k), std::move(k_rev));
        } else {
          std::vector<std::uint32_t> fwd, bwd;
          if (e.contains("subgroup")) {
            fwd = elements(e.at("subgroup"), where + "/subgroup");
          }
          if (e.contains("subgroup_rev")) {
            bwd = elements(e.at("subgroup_rev"), where + "/subgroup_rev");
          }
          images.emplace_back(std::move(fwd), std::move(bwd));
        }
      }
      if (graph.number_of_components() != 1) {
        schema("/edges", "the graph of a graph of groups must be connected");
      }
      if (gbs) {
        doc.groups = at("/edges", [&] { return GraphOfGroups::gbs(graph, indices); });
      } else {
        doc.groups = at("/edges", [&] {
          return GraphOfGroups::finite(graph, groups, images);
        });
      }
      if (j.contains("base")) {
        if (!j.at("base").is_string()) {
          schema("/base", "expected a vertex name");
        }
        auto v = doc.groups->graph().find_vertex(j.at("base").get<std::string>());
        if (!v) {
          resolve("/base", "unknown vertex '" + j.at("base").get<std::string>() + "'");
        }
        doc.base = *v;
      }
      return doc;
    }

  }  // namespace

  InputDocument parse_input(std::string_view text, std::string_view fallback_name) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (Json::parse_error const& e) {
      auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
      auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
      throw Error(ErrorCode::SchemaError,
                  "line " + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) {
      schema("/", "expected a JSON object");
    }
    auto kind = string_field(j, "", "kind");
    InputDocument doc;
    if (kind == "defining-graph") {
      doc = parse_defining(j);
    } else if (kind == "graph-of-groups") {
      doc = parse_groups(j);
    } else {
      schema("/kind", "expected \"defining-graph\" or \"graph-of-groups\"");
    }
    doc.name = j.contains("name") ? string_field(j, "", "name") : std::string(fallback_name);
    return doc;
  }

  void set_base(InputDocument& doc, std::string_view vertex) {
    if (!doc.groups) {
      throw Error(ErrorCode::ResolveError, "--base applies to graph-of-groups documents");
    }
    auto v = doc.groups->graph().find_vertex(vertex);
    if (!v) {
      throw Error(ErrorCode::ResolveError,
                  "--base: unknown vertex '" + std::string(vertex) + "'");
    }
    doc.base = *v;
  }

}  // namespace bassdyn
