#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bassdyn {

  using Json = nlohmann::ordered_json;

  // Stable warning codes.
  namespace warning {
    inline constexpr char const* unimod_typo         = "W-UNIMOD-TYPO";
    inline constexpr char const* q_orientation       = "W-Q-ORIENTATION";
    inline constexpr char const* eventually_periodic = "W-EVENTUALLY-PERIODIC";
    inline constexpr char const* degenerate_gamma    = "W-DEGENERATE-GAMMA-PRIME";
    inline constexpr char const* finite_boundary     = "W-FINITE-BOUNDARY";
    inline constexpr char const* inconclusive        = "W-INCONCLUSIVE";
    inline constexpr char const* singular            = "W-SINGULAR";
  }  // namespace warning

  // Stable citation keys.
  namespace cite {
    inline constexpr char const* thm_a           = "thm-A";
    inline constexpr char const* thm_b1          = "thm-B1";
    inline constexpr char const* thm_b2          = "thm-B2";
    inline constexpr char const* thm_c           = "thm-C";
    inline constexpr char const* thm_d           = "thm-D";
    inline constexpr char const* cor_structure   = "cor-structure";
    inline constexpr char const* prop_unimodular = "prop-unimodular";
  }  // namespace cite

  enum class ExitCode : int {
    positive     = 0,
    failed       = 1,
    inconclusive = 2,
    input_error  = 3,
  };

  struct Hypothesis {
    std::string         name;
    std::optional<bool> value;  // nullopt: not checked
    std::string         certificate;

    bool operator==(Hypothesis const&) const = default;
  };

  struct Warning {
    std::string code;
    std::string message;

    bool operator==(Warning const&) const = default;
  };

  struct Verdict {
    std::string              status;  // "positive", "failed" or "inconclusive"
    std::string              text;
    std::vector<std::string> keys;
    std::vector<std::string> citations;

    bool operator==(Verdict const&) const = default;
  };

  struct ClassificationReport {
    std::string              instance;
    std::string              command;
    // Command-specific structured payload and its text rendering.
    Json                     result = Json::object();
    std::vector<std::string> lines;
    std::vector<Hypothesis>  hypotheses;
    std::optional<Verdict>   verdict;
    std::vector<Warning>     warnings;
    ExitCode                 exit_code = ExitCode::positive;

    bool operator==(ClassificationReport const&) const = default;

    void add_warning(std::string code, std::string message);
    [[nodiscard]] bool has_warning(std::string_view code) const;
    [[nodiscard]] Hypothesis const* hypothesis(std::string_view name) const;
  };

  [[nodiscard]] std::string_view exit_status_name(ExitCode) noexcept;

  [[nodiscard]] Json                 to_json(ClassificationReport const& r);
  [[nodiscard]] ClassificationReport report_from_json(Json const& j);

  // Pretty JSON with a trailing newline.
  [[nodiscard]] std::string emit_json(ClassificationReport const& r);
  // Result lines, then hypotheses, verdict and warnings when present.
  [[nodiscard]] std::string emit_text(ClassificationReport const& r);
  // Throws SchemaError on malformed input.
  [[nodiscard]] ClassificationReport parse_report(std::string_view text);

}  // namespace bassdyn
