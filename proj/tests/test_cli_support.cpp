#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "output.hpp"
#include "run_config.hpp"
#include "zorich/error.hpp"

using namespace zorich::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("zorich-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("apply_setting parses every key") {
  RunConfig c;
  apply_setting(c, "lambda", "0.02");
  apply_setting(c, " seed ", " 11 ");
  apply_setting(c, "L_samples", "5000");
  apply_setting(c, "depth", "12");
  apply_setting(c, "output_dir", "out");
  apply_setting(c, "floor_budget", "3");
  apply_setting(c, "lambda_fraction", "0.5");
  apply_setting(c, "tol.tmin", "1e-7");
  CHECK(*c.lambda == 0.02);
  CHECK(*c.lambda_fraction == 0.5);
  CHECK(c.seed == 11);
  CHECK(c.L_samples == 5000);
  CHECK(c.depth == 12);
  CHECK(c.output_dir == "out");
  CHECK(c.floor_budget == 3);
  CHECK(c.tolerance("tmin") == 1e-7);
  CHECK(c.tolerance("forward_slack") == 1e-6);

  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "seed", "1.5"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "lambda", "x"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "depth", "0"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "tol.tmin", "-1"), UsageError);
  CHECK_THROWS_AS(apply_setting(c, "tol.unknown", "1"), UsageError);
  CHECK_THROWS_AS(c.tolerance("unknown"), UsageError);
}

TEST_CASE("config files and the environment") {
  const fs::path dir = scratch_dir("config");
  const fs::path file = dir / "run.conf";
  std::ofstream(file) << "# comment\n\nlambda = 0.005\ndepth=8\noutput_dir=from-file\n";
  RunConfig c;
  load_config_file(c, file.string());
  CHECK(*c.lambda == 0.005);
  CHECK(c.depth == 8);
  CHECK(c.output_dir == "from-file");

  ::setenv(kOutputDirEnv, "from-env", 1);
  apply_environment(c);
  CHECK(c.output_dir == "from-env");
  ::setenv(kOutputDirEnv, "", 1);
  apply_environment(c);
  CHECK(c.output_dir == "from-env");
  ::unsetenv(kOutputDirEnv);

  std::ofstream(dir / "bad.conf") << "lambda 0.1\n";
  CHECK_THROWS_AS(load_config_file(c, (dir / "bad.conf").string()), UsageError);
  CHECK_THROWS_AS(load_config_file(c, (dir / "missing.conf").string()), zorich::IoError);
  fs::remove_all(dir);
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("atomic_write and the manifest") {
  const fs::path dir = scratch_dir("manifest");
  atomic_write(dir / "a.txt", "hello\n");
  CHECK(slurp(dir / "a.txt") == "hello\n");
  CHECK(sha256_file(dir / "a.txt") == sha256_hex("hello\n"));
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().filename() == "a.txt");
  atomic_write(dir / "nested" / "c.txt", "c");
  CHECK(slurp(dir / "nested" / "c.txt") == "c");
  CHECK_THROWS_AS(atomic_write(dir / "a.txt" / "b.txt", "x"), zorich::IoError);

  {
    Manifest m(dir);
    m.write_file("first.txt", "1\n");
    m.section()["results"]["value"] = 1;
    m.commit("first", 0.5);
  }
  {
    Manifest m(dir);
    m.write_file("second.txt", [](std::ostream& out) { out << "2\n"; });
    m.commit("second", 0.25);
  }
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  REQUIRE(manifest.contains("commands"));
  CHECK(manifest["commands"].contains("first"));
  CHECK(manifest["commands"].contains("second"));
  const auto& out = manifest["commands"]["second"]["outputs"][0];
  CHECK(out["path"] == "second.txt");
  CHECK(out["sha256"] == sha256_hex("2\n"));
  CHECK(out["bytes"] == 2);
  CHECK(manifest["manifest_checksum"] == Manifest::checksum(manifest));
  CHECK(manifest["excluded"]["wall_clock_seconds"]["first"] == 0.5);

  // The checksum ignores the excluded block only.
  auto edited = manifest;
  edited["excluded"]["finished_at"]["first"] = "later";
  CHECK(Manifest::checksum(edited) == manifest["manifest_checksum"]);
  edited["commands"]["first"]["results"]["value"] = 2;
  CHECK(Manifest::checksum(edited) != manifest["manifest_checksum"]);
  fs::remove_all(dir);
}
