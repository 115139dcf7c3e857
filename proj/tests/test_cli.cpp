// End-to-end checks of the seedpa binary: exit codes, output formats, file
// round-trips, determinism. The binary path comes in through SEEDPA_CLI_PATH.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Fresh scratch directory per test case; paths stay valid for the case body.
fs::path scratch_dir() {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("seedpa_cli_" + std::to_string(++counter));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("seedpa_out_" + std::to_string(++counter));
  const fs::path err = fs::temp_directory_path() / ("seedpa_err_" + std::to_string(counter));
  const std::string cmd = std::string(SEEDPA_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return r;
}

// Value of one `key<padding> value` line as printed by the tool.
std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) != 0) continue;
    std::size_t pos = key.size();
    if (pos < line.size() && line[pos] != ' ') continue;  // longer key
    while (pos < line.size() && line[pos] == ' ') ++pos;
    return line.substr(pos);
  }
  return "<missing " + key + ">";
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("help and version", "[cli]") {
  REQUIRE(run_cli("--help").exit_code == 0);
  const CliResult v = run_cli("--version");
  REQUIRE(v.exit_code == 0);
  REQUIRE(v.out == "seedpa 1.0.0\n");
  REQUIRE(run_cli("").exit_code == 5);         // a subcommand is required
  REQUIRE(run_cli("frobnicate").exit_code == 5);
}

TEST_CASE("presets subcommand", "[cli]") {
  const CliResult all = run_cli("presets");
  REQUIRE(all.exit_code == 0);
  REQUIRE(all.out ==
          "name,h_avg\n"
          "IDQ Quantis-PCIe-40M,0.99\n"
          "MATLAB unifrnd,0.988\n"
          "Random.org,0.931\n"
          "Intel DRNG,0.93\n");
  const CliResult one = run_cli("presets --name \"Intel DRNG\"");
  REQUIRE(one.exit_code == 0);
  REQUIRE(one.out == "0.93\n");
  REQUIRE(run_cli("presets --name nonsense").exit_code == 5);
}

TEST_CASE("entropy subcommand", "[cli]") {
  const fs::path dir = scratch_dir();

  SECTION("missing file is an I/O error") {
    REQUIRE(run_cli("entropy " + (dir / "nope.bin").string()).exit_code == 2);
  }

  SECTION("too few samples is an estimation error") {
    spit(dir / "tiny.bin", std::string(10, '\xAA'));
    REQUIRE(run_cli("entropy " + (dir / "tiny.bin").string()).exit_code == 3);
  }

  SECTION("balanced stream estimates one bit per bit") {
    spit(dir / "fair.bin", std::string(125000, '\xAA'));  // 10101010 x 125k
    const CliResult r = run_cli("entropy " + (dir / "fair.bin").string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(value_of(r.out, "samples") == "1000000");
    REQUIRE(value_of(r.out, "symbol_bits") == "1");
    REQUIRE(value_of(r.out, "point_estimate_per_bit") == "1");
    const double lower = std::stod(value_of(r.out, "lower_bound_per_bit"));
    REQUIRE(lower < 1.0);
    REQUIRE(lower > 0.99);
  }

  SECTION("bad symbol width is rejected at parse time") {
    spit(dir / "x.bin", std::string(125000, '\xAA'));
    REQUIRE(run_cli("entropy " + (dir / "x.bin").string() + " --symbol-bits 9").exit_code == 5);
  }
}

TEST_CASE("bound and compare subcommands", "[cli]") {
  const CliResult b = run_cli("bound --hmin 120 --key-len 100");
  REQUIRE(b.exit_code == 0);
  REQUIRE(value_of(b.out, "gap") == "0");
  REQUIRE(value_of(b.out, "theorem1") == "0.00048828125");

  const CliResult c = run_cli("compare --hmin 120 --key-len 100 --gap 2");
  REQUIRE(c.exit_code == 0);
  REQUIRE(value_of(c.out, "gap") == "2");
  REQUIRE(value_of(c.out, "theorem1") == "0.001953125");
  REQUIRE(value_of(c.out, "tighter") == "theorem1");
  REQUIRE(value_of(c.out, "theorem1_tighter_predicate") == "true");

  // --alpha/--beta pair is an alternative to --gap, and they are exclusive
  const CliResult ab = run_cli("compare --hmin 120 --key-len 100 --alpha 10 --beta 8");
  REQUIRE(value_of(ab.out, "gap") == "2");
  REQUIRE(run_cli("bound --hmin 120 --key-len 100 --alpha 10").exit_code == 5);
  REQUIRE(run_cli("bound --hmin 120 --key-len 100 --gap 1 --alpha 10 --beta 8").exit_code == 5);
}

TEST_CASE("keylen subcommand", "[cli]") {
  const CliResult g = run_cli("keylen --hmin 900 --leak 200 --gap 69");
  REQUIRE(g.exit_code == 0);
  REQUIRE(value_of(g.out, "key_length") == "522");
  REQUIRE(value_of(g.out, "seed_penalty") == "69");

  const CliResult ab = run_cli("keylen --hmin 900 --leak 200 --alpha 80 --beta 11");
  REQUIRE(value_of(ab.out, "key_length") == "522");

  const CliResult plain = run_cli("keylen --hmin 900 --leak 200");
  REQUIRE(value_of(plain.out, "key_length") == "591");
  REQUIRE(run_cli("keylen --hmin 900").exit_code == 5);  // --leak is required
}

TEST_CASE("keyrate subcommand", "[cli]") {
  const CliResult r = run_cli("keyrate --h-avg 1.0");
  REQUIRE(r.exit_code == 0);
  REQUIRE(line_count(r.out) == 2);
  REQUIRE(r.out.rfind("distance_km,h_avg,Q_mu,E_mu,Y1_lower,e1_upper,n_sift,key_len,"
                      "penalty_bits,skr\n",
                      0) == 0);
  REQUIRE(r.out.find("\n50,1,") != std::string::npos);

  // preset name and explicit h-avg are mutually exclusive
  REQUIRE(run_cli("keyrate --preset \"Random.org\" --h-avg 0.9").exit_code == 5);
  REQUIRE(run_cli("keyrate --preset \"Random.org\" --distance 10").exit_code == 0);
  REQUIRE(run_cli("keyrate --set bogus_key=1").exit_code == 5);
  REQUIRE(run_cli("keyrate --set mu=-1").exit_code == 5);
}

TEST_CASE("scan subcommand writes both CSVs deterministically", "[cli]") {
  const fs::path dir = scratch_dir();
  const std::string common = "scan --set pulse_count=100000000 --h-grid 0.93,0.99 "
                             "--distances 10,50 ";
  const auto files = [&](const std::string& tag) {
    return "--out " + (dir / ("scan_" + tag + ".csv")).string() + " --critical-out " +
           (dir / ("crit_" + tag + ".csv")).string();
  };
  const CliResult a = run_cli(common + files("a"));
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out.find("wrote 4 rows to ") != std::string::npos);
  REQUIRE(a.out.find("wrote 2 rows to ") != std::string::npos);

  const CliResult b = run_cli(common + files("b"));
  REQUIRE(b.exit_code == 0);

  const std::string scan_a = slurp(dir / "scan_a.csv");
  REQUIRE(scan_a == slurp(dir / "scan_b.csv"));
  REQUIRE(slurp(dir / "crit_a.csv") == slurp(dir / "crit_b.csv"));
  REQUIRE(scan_a.rfind("distance_km,", 0) == 0);
  REQUIRE(line_count(scan_a) == 5);
  REQUIRE(line_count(slurp(dir / "crit_a.csv")) == 3);
  REQUIRE(slurp(dir / "crit_a.csv").rfind("distance_km,h_critical\n", 0) == 0);
}

TEST_CASE("scan rejects bad configuration", "[cli]") {
  const CliResult bad = run_cli("scan --set bogus=1 --out /dev/null --critical-out /dev/null");
  REQUIRE(bad.exit_code == 5);
  REQUIRE(bad.err.find("bogus") != std::string::npos);
  REQUIRE(run_cli("scan --h-grid \"\"").exit_code == 5);
  REQUIRE(run_cli("scan --set attenuation=abc").exit_code == 5);
}

TEST_CASE("pa subcommand hashes files", "[cli]") {
  const fs::path dir = scratch_dir();
  spit(dir / "key.bin", std::string(1, '\xC0'));   // bits 110
  spit(dir / "seed.bin", std::string(1, '\xB0'));  // bits 1011
  const fs::path out = dir / "hashed.bin";
  const CliResult r =
      run_cli("pa --key-file " + (dir / "key.bin").string() + " --seed-file " +
              (dir / "seed.bin").string() + " --input-bits 3 --output-bits 2 --out " +
              out.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("hashed 3 bits -> 2 bits") != std::string::npos);
  REQUIRE(slurp(out) == std::string(1, '\x80'));  // output bits (1,0)

  REQUIRE(run_cli("pa --key-file " + (dir / "missing.bin").string() + " --seed-file " +
                  (dir / "seed.bin").string() +
                  " --input-bits 3 --output-bits 2 --out " + out.string())
              .exit_code == 2);
}

TEST_CASE("verify subcommand", "[cli]") {
  const CliResult r = run_cli("verify --n 3 --l 2 --trials 3");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("n,l,alpha,beta,strategy,trial,hmin,delta,bound,margin,pass\n", 0) == 0);
  // one (n,l) cell x 3 trials x 3 beta levels x 3 strategies, plus the header
  REQUIRE(line_count(r.out) == 28);
  REQUIRE(r.err.find("verify: 27 instances, 0 violations") != std::string::npos);
  REQUIRE(r.out.find(",spike,") != std::string::npos);
  REQUIRE(r.out.find(",block,") != std::string::npos);
  REQUIRE(r.out.find(",uniform,") != std::string::npos);

  REQUIRE(run_cli("verify --n 10 --l 5 --trials 1").exit_code == 4);
  REQUIRE(run_cli("verify --n 3 --l 2 --strategy sideways").exit_code == 5);
}
