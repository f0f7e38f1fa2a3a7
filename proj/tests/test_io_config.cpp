#include "tomolpp/config.hpp"
#include "tomolpp/io.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

using namespace tomolpp;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("tomolpp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("array files round trip bit for bit", "[io]") {
  const auto dir = scratch_dir("array");
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<float> dist(-5.0f, 5.0f);
  Array2D a(7, 13);
  for (auto& v : a.values()) v = dist(gen);  // exactly representable as float
  a(0, 0) = -0.0;
  a(1, 1) = std::numeric_limits<float>::denorm_min();
  write_array(dir / "a.tomo", a);
  const auto b = read_array(dir / "a.tomo");
  CHECK(b == a);
  CHECK(std::signbit(b(0, 0)));

  write_array(dir / "b.tomo", b);
  CHECK(read_file(dir / "a.tomo") == read_file(dir / "b.tomo"));

  const auto bytes = read_file(dir / "a.tomo");
  const std::string header = "TOMO1 7 13 f32 row-major\n";
  REQUIRE(bytes.size() == header.size() + 4 * 7 * 13);
  CHECK(bytes.substr(0, header.size()) == header);
  // Little-endian: 1.0f is 00 00 80 3f.
  Array2D one(1, 1, 1.0);
  write_array(dir / "one.tomo", one);
  CHECK(read_file(dir / "one.tomo").substr(24) == std::string("\x00\x00\x80\x3f", 4));
}

TEST_CASE("malformed array files are rejected", "[io]") {
  const auto dir = scratch_dir("bad_array");
  write_file_atomic(dir / "short.tomo", std::string("TOMO1 2 2 f32 row-major\n") + std::string(15, '\0'));
  CHECK_THROWS_AS(read_array(dir / "short.tomo"), IoError);
  write_file_atomic(dir / "dtype.tomo", std::string("TOMO1 1 1 f64 row-major\n") + std::string(8, '\0'));
  CHECK_THROWS_AS(read_array(dir / "dtype.tomo"), IoError);
  write_file_atomic(dir / "magic.tomo", "P5\n1 1\n255\n\x01");
  CHECK_THROWS_AS(read_array(dir / "magic.tomo"), IoError);
  CHECK_THROWS_AS(read_array(dir / "missing.tomo"), IoError);
}

TEST_CASE("atomic writes leave no temp files", "[io]") {
  const auto dir = scratch_dir("atomic");
  write_file_atomic(dir / "x.txt", "first");
  write_file_atomic(dir / "x.txt", "second");
  CHECK(read_file(dir / "x.txt") == "second");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("PNM reading", "[io]") {
  const auto dir = scratch_dir("pnm");
  Array2D a(3, 4);
  for (std::size_t i = 0; i < a.size(); ++i) a.values()[i] = static_cast<double>(i * 20);
  write_pgm8(dir / "a.pgm", a);
  CHECK(read_pnm(dir / "a.pgm") == a);

  // Hand-written P6 with a comment line: one red and one white pixel.
  const char ppm[] = "P6\n# comment\n2 1\n255\n\xff\x00\x00\xff\xff\xff";
  write_file_atomic(dir / "c.ppm", std::string(ppm, sizeof ppm - 1));
  const auto rgb = read_pnm(dir / "c.ppm");
  REQUIRE(rgb.rows() == 1);
  REQUIRE(rgb.cols() == 2);
  CHECK(rgb(0, 0) == Catch::Approx(0.299 * 255));
  CHECK(rgb(0, 1) == Catch::Approx(255.0));

  // 16-bit big-endian samples.
  const char pgm[] = "P5 1 2 65535\n\x01\x00\xff\xff";
  write_file_atomic(dir / "d.pgm", std::string(pgm, sizeof pgm - 1));
  const auto wide = read_pnm(dir / "d.pgm");
  CHECK(wide(0, 0) == 256.0);
  CHECK(wide(1, 0) == 65535.0);

  write_file_atomic(dir / "e.pgm", "P2\n1 1\n255\n3\n");
  CHECK_THROWS_AS(read_pnm(dir / "e.pgm"), IoError);
}

TEST_CASE("16-bit previews map the window linearly", "[io]") {
  const auto dir = scratch_dir("preview");
  Array2D hu(1, 4);
  hu(0, 0) = -2000.0;
  hu(0, 1) = -1000.0;
  hu(0, 2) = 0.0;
  hu(0, 3) = 1000.0;
  write_pgm16_preview(dir / "p.pgm", hu, -1000.0, 1000.0);
  const auto back = read_pnm(dir / "p.pgm");
  CHECK(back(0, 0) == 0.0);
  CHECK(back(0, 1) == 0.0);
  CHECK(back(0, 2) == Catch::Approx(32768.0).margin(1.0));
  CHECK(back(0, 3) == 65535.0);
}

TEST_CASE("key=value parsing", "[config]") {
  const auto kv = KeyValueFile::parse(
      "# comment\n"
      "a.x = 1\n"
      "\n"
      "a.y = 2.5  # trailing\n"
      "b = hello world\n"
      "list = 1, 2,3\n"
      "flag = true\n",
      "test.cfg");
  CHECK(kv.get_int("a.x", 0) == 1);
  CHECK(kv.get_double("a.y", 0) == 2.5);
  CHECK(kv.get_string("b", "") == "hello world");
  CHECK(kv.get_ints("list", {}) == std::vector<long long>{1, 2, 3});
  CHECK(kv.get_bool("flag", false));
  CHECK(kv.get_double("missing", 4.0) == 4.0);
  CHECK(kv.section("a.").keys() == std::vector<std::string>{"x", "y"});
  CHECK(kv.location("a.y") == "test.cfg:4: ");

  const auto back = KeyValueFile::parse(kv.to_string());
  CHECK(back.keys() == kv.keys());
  CHECK(back.get_string("list", "") == kv.get_string("list", ""));
}

TEST_CASE("config errors carry line numbers", "[config]") {
  CHECK_THROWS_WITH(KeyValueFile::parse("a = 1\nnot a pair\n", "x.cfg"), Catch::Matchers::StartsWith("x.cfg:2:"));
  CHECK_THROWS_WITH(KeyValueFile::parse("a = 1\na = 2\n", "x.cfg"), Catch::Matchers::StartsWith("x.cfg:2:"));
  const auto kv = KeyValueFile::parse("n = 1\nv = abc\n", "y.cfg");
  CHECK_THROWS_WITH(kv.get_double("v", 0), Catch::Matchers::StartsWith("y.cfg:2:"));
  CHECK_THROWS_WITH(kv.get_bool("v", false), Catch::Matchers::StartsWith("y.cfg:2:"));
  CHECK_THROWS_WITH(kv.require_known({"n"}), Catch::Matchers::StartsWith("y.cfg:2:"));
  CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("doubles format to the shortest round-tripping text", "[config]") {
  for (double v : {0.1, 1.0 / 3.0, 722.0, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(722.0) == "722");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(split_list(" a, b ,,c ") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_list("  ").empty());
}
