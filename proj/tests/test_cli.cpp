#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("pappus_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static const ScratchDir dir;
  return dir.path;
}

int run(const std::string& args, const std::string& stdout_to = "") {
  const std::string out = stdout_to.empty() ? "/dev/null" : stdout_to;
  const std::string cmd = std::string(PAPPUS_BIN) + " " + args + " > " + out + " 2> " + (scratch() / "err").string();
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto k = s.find(needle); k != std::string::npos; k = s.find(needle, k + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("orbit") {
  const auto o = scratch() / "orbit.tsv";
  CHECK(run("orbit --depth 6", o.string()) == 0);
  CHECK(count_lines(slurp(o)) == 127);
  CHECK(run("orbit --depth 2 --alphabet i12 --mode float", o.string()) == 0);
  CHECK(count_lines(slurp(o)) == 12);  // ii reduces away
  CHECK(run("orbit --seed symmetric") == 3);
  CHECK(slurp(scratch() / "err").find("[1,0,0]") != std::string::npos);
  CHECK(run("orbit --depth -1") == 2);
  CHECK(run("orbit --alphabet 13") == 2);
  CHECK(run("orbit --seed 0/0,1/1,1/1,0/0,0/0,0/0") == 2);
  CHECK(run("--help") == 0);
  CHECK(run("bogus") == 2);
}

TEST_CASE("curve") {
  CHECK(run("curve --depth 4") == 2);
  const auto c = scratch() / "c0.tsv";
  CHECK(run("curve --depth 0 --out " + c.string()) == 0);
  CHECK(count_lines(slurp(c)) == 2);
  CHECK(count_lines(slurp(c.string() + ".lines")) == 2);
  const auto l = scratch() / "l5.tsv";
  CHECK(run("curve --depth 5 --out " + c.string() + " --lines-out " + l.string()) == 0);
  CHECK(count_lines(slurp(c)) == 33);
  CHECK(count_lines(slurp(l)) == 33);
  CHECK(!fs::exists(c.string() + ".tmp"));
  CHECK(run("curve --seed symmetric --depth 3 --out " + c.string()) == 3);
}

TEST_CASE("render") {
  const auto s = scratch() / "r.svg";
  CHECK(run("render --draw \"\"") == 2);
  CHECK(run("render --draw dots") == 2);
  CHECK(run("render --view 1:0:0:1") == 2);
  CHECK(run("render --draw boxes --depth 2 --out " + s.string()) == 0);
  const std::string svg = slurp(s);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_of(svg, "<polygon") == 7);
  CHECK(run("render --draw curve,lines --depth 6 --out " + s.string()) == 0);
  CHECK(slurp(s).find("<polyline") != std::string::npos);
}

TEST_CASE("slice") {
  const auto p = scratch() / "s.pgm";
  CHECK(run("slice --base 1/0/0 --dir 1/0/0") == 2);
  CHECK(run("slice --base 1/0/0 --dir 2/0/0 --grid 8") == 2);
  CHECK(run("slice --base 1/0/0 --dir 0/1/0 --grid 0") == 2);
  CHECK(run("slice --base 0/0/1 --dir 0/1/0 --depth 6 --grid 16 --out " + p.string()) == 0);
  const std::string pgm = slurp(p);
  REQUIRE(pgm.rfind("P5\n", 0) == 0);
  const auto hdr = pgm.find("16 16\n65535\n");
  REQUIRE(hdr != std::string::npos);
  CHECK(pgm.size() - (hdr + 12) == 16 * 16 * 2);
}

TEST_CASE("config file and flag precedence") {
  const auto cfg = scratch() / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# orbit settings\ndepth = 3\nalphabet=12\n";
  }
  const auto o = scratch() / "cfg.tsv";
  CHECK(run("orbit --config " + cfg.string(), o.string()) == 0);
  CHECK(count_lines(slurp(o)) == 15);
  CHECK(run("orbit --config " + cfg.string() + " --depth 2", o.string()) == 0);
  CHECK(count_lines(slurp(o)) == 7);
  CHECK(run("orbit --config " + (scratch() / "missing.cfg").string()) == 2);
}

TEST_CASE("spectrum") {
  const auto o = scratch() / "spec.tsv";
  CHECK(run("spectrum --seed symmetric --word 1i", o.string()) == 0);
  const std::string line = slurp(o);
  CHECK(line.rfind("1i\tloxodromic\t", 0) == 0);
  CHECK(run("spectrum --seed symmetric --word 1", o.string()) == 0);
  CHECK(slurp(o).rfind("1\telation\t", 0) == 0);
  CHECK(run("spectrum --word ii", o.string()) == 0);
  CHECK(slurp(o).rfind("-\tother\t", 0) == 0);
  CHECK(run("spectrum --word 1x") == 2);
  CHECK(run("spectrum") == 2);
}

TEST_CASE("verify degenerate and inconclusive") {
  const auto o = scratch() / "v.tsv";
  CHECK(run("verify --seed symmetric --out " + o.string()) == 3);
  CHECK(slurp(o).find("OVERALL\tdegenerate") != std::string::npos);
  CHECK(run("verify --maxlen 0 --depth 6 --translate 0 --out " + o.string()) == 1);
  CHECK(slurp(o).find("OVERALL\tinconclusive") != std::string::npos);
}

TEST_CASE("outputs are deterministic across thread counts") {
  const auto a = scratch() / "a.svg";
  const auto b = scratch() / "b.svg";
  CHECK(run("render --draw curve,lines --depth 8 --translate 2 --out " + a.string()) == 0);
  CHECK(std::system(("PAPPUS_THREADS=3 " + std::string(PAPPUS_BIN) + " render --draw curve,lines --depth 8 "
                     "--translate 2 --out " + b.string()).c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
}
