#pragma once

#include "bassdyn/classifier.hpp"
#include "bassdyn/graph_of_groups.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace bassdyn {

  enum class DocumentKind { defining_graph, graph_of_groups };

  // A validated input document. Exactly one of `defining` and `groups` is
  // set, matching `kind`.
  struct InputDocument {
    DocumentKind                 kind = DocumentKind::defining_graph;
    std::string                  name;
    std::optional<DefiningGraph> defining;
    GroupType                    group_type = GroupType::racg;
    std::optional<GraphOfGroups> groups;
    VertexId                     base = 0;
  };

  // Throws SchemaError or ResolveError; messages carry a "line N" or JSON
  // pointer locus. Construction errors such as ZeroIndex surface as
  // SchemaError at the offending field.
  [[nodiscard]] InputDocument parse_input(std::string_view text,
                                          std::string_view fallback_name = "input");

  // Re-bases a graph-of-groups document on the named vertex. Throws
  // ResolveError.
  void set_base(InputDocument& doc, std::string_view vertex);

}  // namespace bassdyn
