#include "bassdyn/report.hpp"

#include "bassdyn/error.hpp"

#include <algorithm>

namespace bassdyn {

  void ClassificationReport::add_warning(std::string code, std::string message) {
    if (!has_warning(code)) {
      warnings.push_back(Warning{std::move(code), std::move(message)});
    }
  }

  bool ClassificationReport::has_warning(std::string_view code) const {
    return std::any_of(warnings.begin(), warnings.end(), [&](Warning const& w) {
      return w.code == code;
    });
  }

  Hypothesis const* ClassificationReport::hypothesis(std::string_view name) const {
    for (auto const& h : hypotheses) {
      if (h.name == name) {
        return &h;
      }
    }
    return nullptr;
  }

  std::string_view exit_status_name(ExitCode code) noexcept {
    switch (code) {
      case ExitCode::positive:
        return "positive";
      case ExitCode::failed:
        return "hypothesis-failed";
      case ExitCode::inconclusive:
        return "inconclusive";
      case ExitCode::input_error:
        return "input-error";
    }
    return "unknown";
  }

  Json to_json(ClassificationReport const& r) {
    Json j;
    j["instance"] = r.instance;
    j["command"]  = r.command;
    j["result"]   = r.result;
    j["text"]     = r.lines;
    Json hyps     = Json::array();
    for (auto const& h : r.hypotheses) {
      Json x;
      x["name"]        = h.name;
      x["value"]       = h.value ? Json(*h.value) : Json(nullptr);
      x["certificate"] = h.certificate;
      hyps.push_back(std::move(x));
    }
    j["hypotheses"] = std::move(hyps);
    if (r.verdict) {
      Json v;
      v["status"]    = r.verdict->status;
      v["text"]      = r.verdict->text;
      v["keys"]      = r.verdict->keys;
      v["citations"] = r.verdict->citations;
      j["verdict"]   = std::move(v);
    } else {
      j["verdict"] = nullptr;
    }
    Json warns = Json::array();
    for (auto const& w : r.warnings) {
      warns.push_back(Json{{"code", w.code}, {"message", w.message}});
    }
    j["warnings"]  = std::move(warns);
    j["exit_code"] = static_cast<int>(r.exit_code);
    return j;
  }

  ClassificationReport report_from_json(Json const& j) {
    try {
      ClassificationReport r;
      r.instance = j.at("instance").get<std::string>();
      r.command  = j.at("command").get<std::string>();
      r.result   = j.at("result");
      r.lines    = j.at("text").get<std::vector<std::string>>();
      for (auto const& x : j.at("hypotheses")) {
        Hypothesis h;
        h.name = x.at("name").get<std::string>();
        if (!x.at("value").is_null()) {
          h.value = x.at("value").get<bool>();
        }
        h.certificate = x.at("certificate").get<std::string>();
        r.hypotheses.push_back(std::move(h));
      }
      if (!j.at("verdict").is_null()) {
        auto const& v = j.at("verdict");
        r.verdict     = Verdict{v.at("status").get<std::string>(),
                            v.at("text").get<std::string>(),
                            v.at("keys").get<std::vector<std::string>>(),
                            v.at("citations").get<std::vector<std::string>>()};
      }
      for (auto const& w : j.at("warnings")) {
        r.warnings.push_back(
            Warning{w.at("code").get<std::string>(), w.at("message").get<std::string>()});
      }
      auto code = j.at("exit_code").get<int>();
      if (code < 0 || code > 3) {
        throw Error(ErrorCode::SchemaError, "exit_code out of range");
      }
      r.exit_code = static_cast<ExitCode>(code);
      return r;
    } catch (Json::exception const& e) {
      throw Error(ErrorCode::SchemaError, std::string("malformed report: ") + e.what());
    }
  }

  std::string emit_json(ClassificationReport const& r) {
    return to_json(r).dump(2) + "\n";
  }

  std::string emit_text(ClassificationReport const& r) {
    std::string out;
    for (auto const& line : r.lines) {
      out += line + "\n";
    }
    if (!r.hypotheses.empty()) {
      out += "hypotheses:\n";
      for (auto const& h : r.hypotheses) {
        out += "  " + h.name + ": "
               + (h.value ? (*h.value ? "true" : "false") : "unchecked");
        if (!h.certificate.empty()) {
          out += " (" + h.certificate + ")";
        }
        out += "\n";
      }
    }
    if (r.verdict) {
      out += "verdict: " + r.verdict->status + "\n";
      out += "  " + r.verdict->text + "\n";
      if (!r.verdict->keys.empty()) {
        out += "  keys:";
        for (auto const& k : r.verdict->keys) {
          out += " " + k;
        }
        out += "\n";
      }
      if (!r.verdict->citations.empty()) {
        out += "  citations:";
        for (auto const& c : r.verdict->citations) {
          out += " " + c;
        }
        out += "\n";
      }
    }
    if (!r.warnings.empty()) {
      out += "warnings:\n";
      for (auto const& w : r.warnings) {
        out += "  " + w.code + ": " + w.message + "\n";
      }
    }
    return out;
  }

  ClassificationReport parse_report(std::string_view text) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (Json::exception const& e) {
      throw Error(ErrorCode::SchemaError, std::string("report is not JSON: ") + e.what());
    }
    return report_from_json(j);
  }

}  // namespace bassdyn
