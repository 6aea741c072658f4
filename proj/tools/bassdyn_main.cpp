#include "bassdyn/bassdyn.h"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

  struct CommandSpec {
    char const*              name;
    char const*              help;
    std::vector<std::string> options;
  };

  std::vector<CommandSpec> const specs = {
      {"classify-gbs", "dynamical hypotheses and verdict for a GBS graph of groups", {}},
      {"classify-boundary", "strong boundary action verdict for any graph of groups", {}},
      {"classify-nevo-sageev", "RACG/RAAG action on the Nevo-Sageev boundary", {}},
      {"classify-visual", "RACG/RAAG action on the visual boundary", {}},
      {"reduce", "normal form of a word", {"word"}},
      {"act", "act by a loop on an eventually periodic boundary point",
       {"element", "point", "bound"}},
      {"tree", "count (and list) the reduced paths of a given length", {"depth", "list"}},
      {"minimality", "decide minimality of the boundary action", {}},
      {"repeatable", "list repeatable paths", {"max-len", "limit"}},
      {"witness-2filling", "construct and verify a 2-filling witness",
       {"o1", "o2", "bound", "mu"}},
      {"paradoxical", "construct and verify a paradoxical subequivalence",
       {"o", "bound", "mu"}},
      {"northsouth", "verify north-south dynamics of a loop",
       {"element", "depth", "bound"}},
      {"betti", "first Betti number of the underlying graph", {}},
      {"unimodular", "modular homomorphism on a cycle basis", {}},
      {"factors", "join decomposition of a defining graph", {}},
      {"doubling", "doubling embedding of a join-free defining graph", {}},
  };

  bool read_input(std::string const& path, std::string& text) {
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
      return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return false;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    return true;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary dynamics of graphs of groups and right-angled groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bassdyn_version());

  std::string format = "text";
  std::string base;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--base", base, "base vertex of the Bass-Serre tree");

  std::string                        input = "-";
  std::map<std::string, std::string> values;
  for (auto const& spec : specs) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("input", input, "JSON document, '-' for standard input")
        ->capture_default_str();
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--base", base, "base vertex of the Bass-Serre tree");
    for (auto const& option : spec.options) {
      sub->add_option("--" + option, values[spec.name + std::string("/") + option]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : BASSDYN_EXIT_INPUT_ERROR;
  }

  auto*       sub  = app.get_subcommands().front();
  auto const  name = sub->get_name();
  std::vector<std::string> flags;
  for (auto const& spec : specs) {
    if (name != spec.name) {
      continue;
    }
    for (auto const& option : spec.options) {
      if (sub->count("--" + option) > 0) {
        flags.push_back(option + "=" + values[name + "/" + option]);
      }
    }
  }
  if (!base.empty()) {
    flags.push_back("base=" + base);
  }

  std::string text;
  if (!read_input(input, text)) {
    std::cerr << "error: cannot read '" << input << "'\n";
    return BASSDYN_EXIT_INPUT_ERROR;
  }
  auto label = input == "-" ? std::string("stdin") : input;

  bassdyn_document* doc = nullptr;
  if (bassdyn_document_parse(text.data(), text.size(), label.c_str(), &doc) != BASSDYN_OK) {
    std::cerr << "error: " << bassdyn_last_error() << "\n";
    return BASSDYN_EXIT_INPUT_ERROR;
  }
  std::vector<char const*> argv_flags;
  for (auto const& f : flags) {
    argv_flags.push_back(f.c_str());
  }
  char* out       = nullptr;
  int   exit_code = BASSDYN_EXIT_INPUT_ERROR;
  auto  status    = bassdyn_run(doc, name.c_str(), argv_flags.data(), argv_flags.size(),
                                format == "json" ? 1 : 0, &out, &exit_code);
  bassdyn_document_free(doc);
  if (status != BASSDYN_OK) {
    std::cerr << "error: " << bassdyn_last_error() << "\n";
    return BASSDYN_EXIT_INPUT_ERROR;
  }
  std::cout << out;
  bassdyn_string_free(out);
  return exit_code;
}
