#include <doctest.h>

#include "toric_mirror/fan_io.hpp"

using namespace toric;

TEST_CASE("built-in F2 carries the reference divisor matrix") {
  const auto f2 = builtin_fan("f2");
  REQUIRE(f2);
  REQUIRE(f2->divisor_matrix);
  CHECK(*f2->divisor_matrix == IntMatrix{{0, -2, 1, 1}, {1, 1, 0, 0}});
  CHECK(builtin_names() == std::vector<std::string>{"p1", "p2", "f0", "f1", "f2", "p1xp2", "p1xf2"});
  CHECK_FALSE(builtin_fan("p3"));
}

TEST_CASE("TOML round trip for every built-in") {
  for (const auto& name : builtin_names()) {
    const auto spec = *builtin_fan(name);
    const auto back = parse_fan_toml(to_toml(spec), name);
    CHECK(back.fan == spec.fan);
    CHECK(back.divisor_matrix == spec.divisor_matrix);
  }
}

TEST_CASE("parse options and optional basis") {
  const auto spec = parse_fan_toml(R"(
[fan]
dim = 2
rays = [[1, 0], [0, 1], [-1, -1]]
max_cones = [[1, 2], [2, 3], [3, 1]]

[options]
order = 5
)");
  CHECK(spec.order == 5);
  CHECK_FALSE(spec.divisor_matrix);
  CHECK(spec.fan.max_cones[2] == std::vector<std::size_t>{2, 0});
  const auto x = ToricManifold::create(spec.fan, spec.divisor_matrix);
  CHECK(x.basis().entries() == IntMatrix{{1, 1, 1}});
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH(parse_fan_toml("[fan]\ndim = 2\nrays = [[2, 0], [0, 1], [-1, -1]]\n"
                                   "max_cones = [[1, 2], [2, 3], [3, 1]]\n"),
                    "<input>: ray 1 not primitive");
  try {
    parse_fan_toml("[fan]\ndim = 2\nrays = [[1, 0],\n  [0, 1]\n max_cones = 3\n", "bad.toml");
    FAIL("syntax error accepted");
  } catch (const FanParseError& e) {
    CHECK(std::string(e.what()).rfind("bad.toml:", 0) == 0);
  }
  CHECK_THROWS_AS(parse_fan_toml("[fan]\ndim = 2\n"), FanParseError);
  CHECK_THROWS_WITH(parse_fan_toml("[fan]\ndim = 2\nrays = [[1, 0], [0, 1], [-1, -1]]\n"
                                   "max_cones = [[1, 2], [2, 4]]\n"),
                    doctest::Contains("refers to ray 4"));
  CHECK_THROWS_WITH(parse_fan_toml("[fan]\ndim = 2\nrays = [[1, 0], [0, 1], [-1, -1]]\n"
                                   "max_cones = [[1, 2], [2, 3], [3, 1]]\n[basis]\ndivisor_matrix = [[1, 1]]\n"),
                    doctest::Contains("needs 3 entries"));
  CHECK_THROWS_WITH(parse_fan_toml("[fan]\ndim = 2\nrays = [[1, 0, 0], [0, 1], [-1, -1]]\n"
                                   "max_cones = [[1, 2], [2, 3], [3, 1]]\n"),
                    doctest::Contains("ray 1 has 3 entries"));
  CHECK_THROWS_AS(load_fan_file("/nonexistent/fan.toml"), FanParseError);
}

TEST_CASE("fan hash is stable and basis dependent") {
  const auto f2 = *builtin_fan("f2");
  const auto a = ToricManifold::create(f2.fan, f2.divisor_matrix);
  const auto b = ToricManifold::create(f2.fan, f2.divisor_matrix);
  CHECK(fan_hash(a) == fan_hash(b));
  const auto p2 = *builtin_fan("p2");
  CHECK(fan_hash(a) != fan_hash(ToricManifold::create(p2.fan)));
}
