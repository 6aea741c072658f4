#pragma once

#include "bassdyn/boundary.hpp"
#include "bassdyn/document.hpp"
#include "bassdyn/report.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bassdyn {

  // Flag values by name without leading dashes.
  using Flags = std::map<std::string, std::string, std::less<>>;

  // Every command name accepted by run(), in display order.
  [[nodiscard]] std::vector<std::string> const& command_names();

  // Runs a command on a parsed document. Hypothesis failures and exhausted
  // search bounds come back as reports with exit codes 1 and 2. Input
  // problems throw: UnknownCommand, FlagError, parse errors from words and
  // points, NotGBS, and kind mismatches as SchemaError.
  [[nodiscard]] ClassificationReport run(std::string_view     command,
                                         InputDocument const& doc,
                                         Flags const&         flags);

  // Parses "{Z(0 e), Z(1 ē)}", "Z(0 e)" or a bare path "0 e".
  [[nodiscard]] CylinderUnion parse_union(TreeBoundary const& tree, std::string_view text);

}  // namespace bassdyn
