#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shortck/io.hpp"
#include "shortck_cli/config.hpp"
#include "shortck_cli/dispatch.hpp"

using namespace shortck;
using namespace shortck::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  std::string tmpl = (fs::temp_directory_path() / "shortck-cli-XXXXXX").string();
  REQUIRE(mkdtemp(tmpl.data()) != nullptr);
  return tmpl;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig config(const std::string& text, const fs::path& out) {
  RunConfig c = parse_config(text);
  c.assign("run", "output", out.string());
  return c;
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const RunConfig c = parse_config("command = render\n");
  CHECK(c.text("run", "command") == "render");
  CHECK(c.real("sequence", "g") == 3.0);
  CHECK(c.count("window", "nx") == 256);
  CHECK(c.list("julia", "p") == std::vector<double>{0.0, 0.0, 1.0});
  for (const auto& d : defaults_table()) CHECK(c.values().count(std::string(d.section) + "." + d.key) == 1);
}

TEST_CASE("config errors carry the line number") {
  try {
    parse_config("command = render\n# comment\n[window]\nwidht = 2\n");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("widht") != std::string::npos);
  }
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("command = render\n[nowhere]\n") == 2);
  CHECK(line_of("command = render\n[window]\nnx = 2.5\n") == 3);
  CHECK(line_of("command = render\ncommand = julia\n") == 2);
  CHECK(line_of("command = frobnicate\n") == 1);
  CHECK(line_of("[window]\nnx = 4\n") > 0);
  CHECK(line_of("command = render\njust text\n") == 2);
  CHECK(line_of("command = render\n[sequence]\nP = 1,x\n") == 3);
}

TEST_CASE("emit round trip") {
  const RunConfig c = parse_config(
      "command = conjugacy-check\nseed = 9\n[sequence]\nfamily = diaglinear\nP = 1, 0.25\nlog_a = -1,-3.5\n"
      "[conjugacy]\nfactor = 0.1\n");
  const RunConfig d = parse_config(emit(c));
  CHECK(d == c);
  CHECK(emit(d) == emit(c));
}

TEST_CASE("gen-sequence lists -3^n") {
  const fs::path dir = scratch_dir();
  const RunOutcome o = run(config("command = gen-sequence\nname = g\n[sequence]\nK = 1\ng = 3\nn = 20\n", dir));
  CHECK(o.status == kSuccess);
  std::istringstream csv(slurp(dir / "g_sequence.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,log_a,below_one,below_square,root_log");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v == -std::pow(3.0, static_cast<double>(rows)));
    ++rows;
  }
  CHECK(rows == 20);
  fs::remove_all(dir);
}

TEST_CASE("conjugacy-check with F = S passes with zero differences") {
  const fs::path dir = scratch_dir();
  const RunOutcome o =
      run(config("command = conjugacy-check\nname = c\n[sequence]\nfamily = diaglinear\n[conjugacy]\nbump = none\n", dir));
  CHECK(o.status == kSuccess);
  CHECK(o.summary.find("PASS") != std::string::npos);
  std::istringstream csv(slurp(dir / "c_perturbation.csv"));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    const auto a = line.find(','), b = line.find(',', a + 1);
    CHECK(std::stod(line.substr(a + 1, b - a - 1)) == 0.0);
  }
  const RunOutcome bad = run(config(
      "command = conjugacy-check\nname = c\n[sequence]\nfamily = diaglinear\n[conjugacy]\nbump = square_z2_e1\nfactor = 2\n",
      dir));
  CHECK(bad.status == kDomainFailure);
  fs::remove_all(dir);
}

TEST_CASE("render writes a PGM tagged with the manifest hash") {
  const fs::path dir = scratch_dir();
  const RunConfig cfg = config("command = render\nname = r\n[window]\nnx = 64\nny = 48\n", dir);
  const RunOutcome a = run(cfg);
  REQUIRE(a.status == kSuccess);
  const std::string pgm = slurp(dir / "r_render.pgm");
  CHECK(pgm.rfind("P5\n# shortck render manifest ", 0) == 0);
  CHECK(std::count(pgm.begin(), pgm.begin() + static_cast<long>(pgm.find("255\n")), '#') == 1);
  CHECK(pgm.find("\n64 48\n255\n") != std::string::npos);
  const std::string manifest = slurp(dir / "r_manifest.txt");
  const auto at = manifest.find("core_hash=");
  REQUIRE(at != std::string::npos);
  CHECK(pgm.find(manifest.substr(at + 10, 16)) != std::string::npos);
  CHECK(manifest.find("r_render.pgm=" + hex64(fnv1a64(pgm))) != std::string::npos);

  RunConfig threaded = cfg;
  threaded.assign("run", "threads", "3");
  const RunOutcome b = run(threaded);
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) CHECK(a.artifacts[i].hash == b.artifacts[i].hash);
  fs::remove_all(dir);
}

TEST_CASE("dispatch maps failures to exit codes") {
  const fs::path dir = scratch_dir();
  std::ostringstream out, err;
  CHECK(dispatch(config("command = gen-sequence\n[sequence]\ng = 1.5\n", dir), out, err) == kDomainFailure);
  CHECK(dispatch(config("command = gen-sequence\n[sequence]\nfamily = diaglinear\n", dir), out, err) == kUsageError);
  CHECK(dispatch(config("command = kobayashi\n[kobayashi]\np = 0.1\n", dir), out, err) == kUsageError);
  CHECK(dispatch(config("command = kobayashi\n[kobayashi]\nR = 1e9\nn_max = 1\n", dir), out, err) ==
        kDomainFailure);
  CHECK_FALSE(err.str().empty());
  fs::remove_all(dir);
}

TEST_CASE("the binary") {
  const char* bin = std::getenv("SHORTCK_BIN");
  if (!bin) return;
  const fs::path dir = scratch_dir();
  {
    std::ofstream(dir / "ok.ini") << "command = gen-sequence\n";
    std::ofstream(dir / "bad.ini") << "command = render\nbogus = 1\n";
  }
  auto sh = [&](const std::string& args) {
    const int s = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(sh((dir / "ok.ini").string() + " -o " + dir.string()) == 0);
  CHECK(sh((dir / "ok.ini").string() + " -o " + dir.string() + " --set sequence.g=1.5") == 1);
  CHECK(sh((dir / "bad.ini").string()) == 2);
  CHECK(sh("--no-such-flag") == 2);
  CHECK(sh("--defaults") == 0);
  fs::remove_all(dir);
}
