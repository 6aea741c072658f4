#include "bassdyn/bassdyn.h"

#include "bassdyn/app.hpp"
#include "bassdyn/error.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct bassdyn_document {
  bassdyn::InputDocument doc;
};

namespace {

  thread_local std::string last_error;

  bassdyn_status fail(bassdyn_status status, std::string message) {
    last_error = std::move(message);
    return status;
  }

  bassdyn_status status_of(bassdyn::ErrorCode code) {
    using bassdyn::ErrorCode;
    switch (code) {
      case ErrorCode::ParseError:
      case ErrorCode::NotComposable:
      case ErrorCode::BackendRefusal:
        return BASSDYN_PARSE;
      case ErrorCode::ResolveError:
      case ErrorCode::UnknownVertex:
        return BASSDYN_RESOLVE;
      case ErrorCode::FlagError:
      case ErrorCode::NotGBS:
        return BASSDYN_ARG;
      case ErrorCode::UnknownCommand:
        return BASSDYN_UNKNOWN_COMMAND;
      default:
        return BASSDYN_SCHEMA;
    }
  }

  char* copy(std::string const& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) {
      std::memcpy(out, s.c_str(), s.size() + 1);
    }
    return out;
  }

  template <typename F>
  bassdyn_status guarded(F&& f) {
    try {
      last_error.clear();
      return f();
    } catch (bassdyn::Error const& e) {
      return fail(status_of(e.code()), e.what());
    } catch (std::exception const& e) {
      return fail(BASSDYN_INTERNAL, e.what());
    } catch (...) {
      return fail(BASSDYN_INTERNAL, "unknown exception");
    }
  }

}  // namespace

extern "C" {

char const* bassdyn_version(void) {
  return "1.0.0";
}

char const* bassdyn_last_error(void) {
  return last_error.c_str();
}

bassdyn_status bassdyn_document_parse(char const*        text,
                                      size_t             length,
                                      char const*        name,
                                      bassdyn_document** out) {
  if (text == nullptr || out == nullptr) {
    return fail(BASSDYN_ARG, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto doc = bassdyn::parse_input(std::string_view(text, length),
                                    name != nullptr ? name : "input");
    *out = new bassdyn_document{std::move(doc)};
    return BASSDYN_OK;
  });
}

void bassdyn_document_free(bassdyn_document* doc) {
  delete doc;
}

bassdyn_status bassdyn_run(bassdyn_document const* doc,
                           char const*             command,
                           char const* const*      flags,
                           size_t                  nflags,
                           int                     json,
                           char**                  out,
                           int*                    exit_code) {
  if (exit_code != nullptr) {
    *exit_code = BASSDYN_EXIT_INPUT_ERROR;
  }
  if (doc == nullptr || command == nullptr || out == nullptr || exit_code == nullptr
      || (nflags > 0 && flags == nullptr)) {
    return fail(BASSDYN_ARG, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    bassdyn::Flags map;
    for (size_t i = 0; i < nflags; ++i) {
      std::string_view f = flags[i];
      auto             eq = f.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw bassdyn::Error(bassdyn::ErrorCode::FlagError,
                             "expected name=value, got '" + std::string(f) + "'");
      }
      map[std::string(f.substr(0, eq))] = std::string(f.substr(eq + 1));
    }
    auto report = bassdyn::run(command, doc->doc, map);
    auto text   = json != 0 ? bassdyn::emit_json(report) : bassdyn::emit_text(report);
    *out        = copy(text);
    if (*out == nullptr) {
      return fail(BASSDYN_INTERNAL, "out of memory");
    }
    *exit_code = static_cast<int>(report.exit_code);
    return BASSDYN_OK;
  });
}

void bassdyn_string_free(char* s) {
  std::free(s);
}

bassdyn_status bassdyn_reduce(bassdyn_document const* doc, char const* word, char** out) {
  if (doc == nullptr || word == nullptr || out == nullptr) {
    return fail(BASSDYN_ARG, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    if (!doc->doc.groups) {
      return fail(BASSDYN_SCHEMA, "reduce needs a graph-of-groups document");
    }
    auto const& g = *doc->doc.groups;
    auto        w = bassdyn::reduce(g, bassdyn::parse_word(g, word, doc->doc.base));
    *out          = copy(bassdyn::format_word(g, w));
    return *out != nullptr ? BASSDYN_OK : fail(BASSDYN_INTERNAL, "out of memory");
  });
}

bassdyn_status bassdyn_betti(bassdyn_document const* doc, size_t* out) {
  if (doc == nullptr || out == nullptr) {
    return fail(BASSDYN_ARG, "null argument");
  }
  return guarded([&] {
    if (!doc->doc.groups) {
      return fail(BASSDYN_SCHEMA, "betti needs a graph-of-groups document");
    }
    *out = bassdyn::first_betti_number(doc->doc.groups->graph());
    return BASSDYN_OK;
  });
}

size_t bassdyn_command_count(void) {
  return bassdyn::command_names().size();
}

char const* bassdyn_command_name(size_t i) {
  auto const& names = bassdyn::command_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

}  // extern "C"
