#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shortck_cli/config.hpp"
#include "shortck_cli/dispatch.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw shortck::cli::ConfigError(0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_defaults(std::ostream& os) {
  std::string section;
  for (const auto& d : shortck::cli::defaults_table()) {
    if (section != d.section) {
      section = d.section;
      os << "\n[" << section << "]\n";
    }
    os << d.key << " = " << d.fallback;
    if (*d.choices) os << "    # " << d.choices;
    os << "    # " << d.doc << (d.required ? " (required)" : "") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace shortck::cli;
  CLI::App app{"shortck: non-autonomous basins of polynomial automorphisms"};
  std::string config_path;
  std::vector<std::string> sets;
  std::string output;
  int threads = -1;
  bool dump = false, defaults = false;
  app.add_option("config", config_path, "config file (key = value lines in [sections]); - reads stdin");
  app.add_option("--set", sets, "override section.key=value")->take_all();
  app.add_option("-o,--output", output, "output directory");
  app.add_option("-j,--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  app.add_flag("--dump", dump, "print the effective config and exit");
  app.add_flag("--defaults", defaults, "print the defaults table and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kSuccess : kUsageError;
  }

  if (defaults) {
    print_defaults(std::cout);
    return kSuccess;
  }
  if (config_path.empty()) {
    std::cerr << "shortck: a config file is required (see --defaults)\n";
    return kUsageError;
  }

  RunConfig cfg;
  try {
    cfg = parse_config(read_all(config_path));
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      const auto dot = s.find('.');
      if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ConfigError(0, "--set expects section.key=value, got '" + s + "'");
      cfg.assign(s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
    }
    if (!output.empty()) cfg.assign("run", "output", output);
    if (threads >= 0) cfg.assign("run", "threads", std::to_string(threads));
  } catch (const ConfigError& e) {
    std::cerr << "shortck: " << e.what() << "\n";
    return kUsageError;
  }

  if (dump) {
    std::cout << emit(cfg);
    return kSuccess;
  }
  return dispatch(cfg, std::cout, std::cerr);
}
