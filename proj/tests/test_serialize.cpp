#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "vbroadcast/broadcast.hpp"
#include "vbroadcast/errors.hpp"
#include "vbroadcast/random.hpp"
#include "vbroadcast/serialize.hpp"

using namespace vbroadcast;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "vbroadcast_serialize_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("matrix json round-trips bit-exactly") {
  RngStream rng(3);
  Matrix m = complex_gaussian(4, 4, rng);
  // Values with no short decimal representation plus exact edge cases.
  m(0, 0) = Complex(0.1, 1.0 / 3.0);
  m(0, 1) = Complex(1e-308, -0.0);
  m(1, 0) = Complex(6.02214076e23, -1e-15);
  const Operator op(SubsystemShape({2, 2}), m);

  const Json j = matrix_to_json(op);
  const std::string text = j.dump();
  const Operator back = matrix_from_json(Json::parse(text));
  CHECK(back.shape().dims == op.shape().dims);
  REQUIRE(back.dim() == op.dim());
  for (long r = 0; r < 4; ++r) {
    for (long c = 0; c < 4; ++c) {
      CHECK(back.matrix()(r, c).real() == op.matrix()(r, c).real());
      CHECK(back.matrix()(r, c).imag() == op.matrix()(r, c).imag());
    }
  }
}

TEST_CASE("matrix json rejects malformed objects") {
  const Json good = matrix_to_json(Operator::identity(SubsystemShape::single(2)));

  Json wrong_count = good;
  wrong_count["re_im"].erase(3);
  CHECK_THROWS_AS(matrix_from_json(wrong_count), argument_error);

  Json bad_pair = good;
  bad_pair["re_im"][0] = Json::array({1.0});
  CHECK_THROWS_AS(matrix_from_json(bad_pair), argument_error);

  Json bad_dims = good;
  bad_dims["dims"] = Json::array({0});
  CHECK_THROWS_AS(matrix_from_json(bad_dims), argument_error);

  Json missing = good;
  missing.erase("dims");
  CHECK_THROWS_AS(matrix_from_json(missing), argument_error);

  Json text_entry = good;
  text_entry["re_im"][1] = Json::array({"x", 0.0});
  CHECK_THROWS_AS(matrix_from_json(text_entry), argument_error);
}

TEST_CASE("choi json carries input and output structure") {
  const ChoiOperator choi = choi_canonical(2, 2);
  const Json j = choi_to_json(choi);
  CHECK(j.at("input_dim").get<int>() == 2);
  CHECK(j.at("output_dims").get<std::vector<long>>() == std::vector<long>{2, 2});
  const ChoiOperator back = choi_from_json(Json::parse(j.dump()));
  CHECK(back.input_dim == 2);
  CHECK(back.num_receivers() == 2);
  CHECK(frobenius_distance(back.matrix.matrix(), choi.matrix.matrix()) == 0.0);

  Json mismatched = j;
  mismatched["input_dim"] = 3;
  CHECK_THROWS_AS(choi_from_json(mismatched), argument_error);
}

TEST_CASE("format_sig17 preserves doubles through text") {
  for (const double x : {0.1, 1.0 / 3.0, 2.0, 2951.1030239892063, 1e-17, -0.45534180126147955}) {
    const std::string s = format_sig17(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("atomic_write replaces content without partial states") {
  const auto path = temp_dir() / "artifact.json";
  atomic_write(path, "first\n");
  CHECK(read_file(path) == "first\n");
  atomic_write(path, "second\n");
  CHECK(read_file(path) == "second\n");
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));

  const auto nested = temp_dir() / "sub" / "dir" / "artifact.csv";
  atomic_write(nested, "x\n");
  CHECK(read_file(nested) == "x\n");
  std::filesystem::remove_all(temp_dir());
}

TEST_CASE("read_file on a missing path raises an argument error") {
  CHECK_THROWS_AS(read_file(temp_dir() / "does_not_exist.json"), argument_error);
  std::filesystem::remove_all(temp_dir());
}

TEST_CASE("unknown keys are rejected by name") {
  Json obj{{"d", 2}, {"N", 2}, {"stray", 1}};
  CHECK_THROWS_WITH_AS(reject_unknown_keys(obj, {"d", "N"}, "scenario"),
                       doctest::Contains("stray"), argument_error);
  CHECK_NOTHROW(reject_unknown_keys(obj, {"d", "N", "stray"}, "scenario"));
}
