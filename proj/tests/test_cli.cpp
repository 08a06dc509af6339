#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hfactor/matrix_io.hpp"
#include "test_support.hpp"

#ifndef HFACTOR_CLI_PATH
#error "HFACTOR_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using namespace hfactor;
using namespace hfactor::testing;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hfactor_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter() {
    static int c = 0;
    return c++;
  }
};

int run(const std::string& args) {
  const std::string cmd =
      std::string(HFACTOR_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("cli: worked 2x2 example decomposes with exit 0 and verify "
          "agrees") {
  TempDir dir;
  write_matrix(dir.path / "F.json", mat2(0, 1, 1, 0));
  write_matrix(dir.path / "H.json", diag_real({1, -1}));
  const std::string base = " --F " + (dir.path / "F.json").string() +
                           " --H " + (dir.path / "H.json").string();

  CHECK(run("decompose" + base + " --out " + (dir.path / "fac").string()) ==
        0);
  // Any factor set written by decompose passes verify with the same config.
  CHECK(run("verify" + base + " --factors " + (dir.path / "fac").string()) ==
        0);

  // The report must carry the worked-example values.
  const auto rep =
      nlohmann::json::parse(slurp(dir.path / "fac" / "report.json"));
  CHECK(rep.at("neutral_index") == 1);
  CHECK(rep.at("sigma").at("minus_count") == 2);
  CHECK(rep.at("status") == "ok");

  const SquareMatrix l = read_matrix(dir.path / "fac" / "L.json");
  const SquareMatrix x = read_matrix(dir.path / "fac" / "X.json");
  const SquareMatrix s = read_matrix(dir.path / "fac" / "S.json");
  const ComplexMatrix prod = l.values() * x.values() * s.values();
  CHECK(rel_diff(prod, mat2(0, 1, 1, 0).values()) < 1e-12);
}

TEST_CASE("cli: exit 3 for singular F, exit 2 for singular H and parse "
          "garbage") {
  TempDir dir;
  write_matrix(dir.path / "F.json", diag_real({1, 0}));
  write_matrix(dir.path / "H.json", diag_real({1, -1}));
  CHECK(run("decompose --F " + (dir.path / "F.json").string() + " --H " +
            (dir.path / "H.json").string() + " --out " +
            (dir.path / "o1").string()) == 3);

  write_matrix(dir.path / "F2.json", mat2(0, 1, 1, 0));
  write_matrix(dir.path / "Hsing.json", diag_real({1, 0}));
  CHECK(run("decompose --F " + (dir.path / "F2.json").string() + " --H " +
            (dir.path / "Hsing.json").string() + " --out " +
            (dir.path / "o2").string()) == 2);

  write_text(dir.path / "junk.json", "{not json");
  CHECK(run("decompose --F " + (dir.path / "junk.json").string() + " --H " +
            (dir.path / "H.json").string() + " --out " +
            (dir.path / "o3").string()) == 2);
}

TEST_CASE("cli: verify flags a corrupted factor set with exit 4") {
  TempDir dir;
  write_matrix(dir.path / "F.json", mat2(0, 1, 1, 0));
  write_matrix(dir.path / "H.json", diag_real({1, -1}));
  const std::string base = " --F " + (dir.path / "F.json").string() +
                           " --H " + (dir.path / "H.json").string();
  REQUIRE(run("decompose" + base + " --out " + (dir.path / "fac").string()) ==
          0);
  // Corrupt the L factor; factors are still readable, residuals blow up.
  write_matrix(dir.path / "fac" / "L.json", mat2(1, 1, 0, 1));
  CHECK(run("verify" + base + " --factors " + (dir.path / "fac").string()) ==
        4);
}

TEST_CASE("cli: sign writes the stem values") {
  TempDir dir;
  write_matrix(dir.path / "A.json", diag_real({-2, 3}));
  const fs::path out = dir.path / "S.json";
  CHECK(run("sign --input " + (dir.path / "A.json").string() + " --output " +
            out.string()) == 0);
  const SquareMatrix s = read_matrix(out);
  CHECK(rel_diff(s.values(), diag_real({-1, 1}).values()) < 1e-13);
}

TEST_CASE("cli: sqrt on the principal branch, failure on negative axis") {
  TempDir dir;
  write_matrix(dir.path / "A.json", diag_real({4, 9}));
  const fs::path out = dir.path / "R.json";
  CHECK(run("sqrt --input " + (dir.path / "A.json").string() + " --output " +
            out.string()) == 0);
  CHECK(rel_diff(read_matrix(out).values(), diag_real({2, 3}).values()) <
        1e-13);

  write_matrix(dir.path / "B.json", diag_real({-4, 9}));
  CHECK(run("sqrt --input " + (dir.path / "B.json").string() + " --output " +
            (dir.path / "R2.json").string()) == 3);
}

TEST_CASE("cli: canonical writes Q, J, K that verify") {
  TempDir dir;
  CHECK(run("gen --n 4 --p 2 --m 1 --seed 3 --kind involution --out " +
            (dir.path / "fix").string()) == 0);
  CHECK(run("canonical --X " + (dir.path / "fix" / "X.json").string() +
            " --H " + (dir.path / "fix" / "H.json").string() + " --out " +
            (dir.path / "can").string()) == 0);
  const auto rep =
      nlohmann::json::parse(slurp(dir.path / "can" / "report.json"));
  CHECK(rep.at("neutral_index") == 1);
  CHECK(rep.at("residuals").at("canonical_similarity").get<double>() < 1e-9);
  CHECK(fs::exists(dir.path / "can" / "Q.json"));
  CHECK(fs::exists(dir.path / "can" / "J.json"));
  CHECK(fs::exists(dir.path / "can" / "K.json"));
}

TEST_CASE("cli: matrix market input is accepted") {
  TempDir dir;
  write_text(dir.path / "F.mtx",
             "%%MatrixMarket matrix array real general\n2 2\n0\n1\n1\n0\n");
  write_text(dir.path / "H.mtx",
             "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n-1\n");
  CHECK(run("decompose --F " + (dir.path / "F.mtx").string() + " --H " +
            (dir.path / "H.mtx").string() + " --out " +
            (dir.path / "fac").string()) == 0);
}

TEST_CASE("cli: gen and decompose are byte-identical across runs") {
  TempDir dir;
  const std::string gen_args = "gen --n 8 --p 5 --m 2 --seed 42 --out ";
  CHECK(run(gen_args + (dir.path / "a").string()) == 0);
  CHECK(run(gen_args + (dir.path / "b").string()) == 0);
  CHECK(slurp(dir.path / "a" / "F.json") == slurp(dir.path / "b" / "F.json"));
  CHECK(slurp(dir.path / "a" / "H.json") == slurp(dir.path / "b" / "H.json"));

  const std::string dec = "decompose --F " +
                          (dir.path / "a" / "F.json").string() + " --H " +
                          (dir.path / "a" / "H.json").string() + " --out ";
  CHECK(run(dec + (dir.path / "fac1").string()) == 0);
  CHECK(run(dec + (dir.path / "fac2").string()) == 0);
  for (const char* name : {"L.json", "X.json", "S.json", "report.json"}) {
    CHECK(slurp(dir.path / "fac1" / name) == slurp(dir.path / "fac2" / name));
  }
}

TEST_CASE("cli: batch decompose over independent problems") {
  TempDir dir;
  for (int i = 0; i < 3; ++i) {
    const fs::path sub = dir.path / ("case" + std::to_string(i));
    CHECK(run("gen --n 4 --p 2 --m 1 --seed " + std::to_string(100 + i) +
              " --out " + sub.string()) == 0);
  }
  CHECK(run("decompose --batch " + dir.path.string() + " --jobs 2") == 0);
  for (int i = 0; i < 3; ++i) {
    const fs::path rep =
        dir.path / ("case" + std::to_string(i)) / "report.json";
    REQUIRE(fs::exists(rep));
    CHECK(nlohmann::json::parse(slurp(rep)).at("status") == "ok");
  }
}

TEST_CASE("cli: tolerance flags reach the report") {
  TempDir dir;
  write_matrix(dir.path / "F.json", mat2(0, 1, 1, 0));
  write_matrix(dir.path / "H.json", diag_real({1, -1}));
  CHECK(run("decompose --F " + (dir.path / "F.json").string() + " --H " +
            (dir.path / "H.json").string() + " --eps-residual 1e-7 --out " +
            (dir.path / "fac").string()) == 0);
  const auto rep =
      nlohmann::json::parse(slurp(dir.path / "fac" / "report.json"));
  CHECK(rep.at("tolerances").at("eps_residual").get<double>() == 1e-7);
}
