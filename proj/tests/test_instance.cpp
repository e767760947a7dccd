#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "capsac/generator.hpp"
#include "capsac/instance.hpp"

using namespace capsac;

namespace {

Instance t4() {
  Instance in;
  in.name = "t4";
  in.photos = {{"p1", 0, 0, 1, 1, "d1"},
               {"p2", 0, 1, 1, 1, "d1"},
               {"p3", 1, 0, 1, 1, "d2"},
               {"p4", 1, 1, 1, 1, "d2"}};
  in.drones = {{"d1", true}, {"d2", true}};
  in.links = {{"d1", "d2", 1.0}};
  return in;
}

}  // namespace

TEST_CASE("write/parse round trip preserves every field") {
  Instance in = t4();
  in.sigma = 2;
  const std::string text = write_instance(in);
  Instance back = parse_instance(text);
  CHECK(back.name == "t4");
  REQUIRE(back.photos.size() == 4);
  CHECK(back.photos[1].id == "p2");
  CHECK(back.photos[1].lng == doctest::Approx(0.0));
  CHECK(back.photos[1].lat == doctest::Approx(1.0));
  CHECK(back.photos[2].lambda == doctest::Approx(1.0));
  CHECK(back.photos[2].mu == doctest::Approx(1.0));
  CHECK(back.photos[2].stored_on == "d2");
  REQUIRE(back.drones.size() == 2);
  CHECK(back.drones[0].capable);
  REQUIRE(back.links.size() == 1);
  CHECK(back.links[0].a == "d1");
  CHECK(back.links[0].capacity == doctest::Approx(1.0));
  CHECK(back.sigma == 2);
  CHECK(back.t_hat == kUnbounded);
  CHECK(write_instance(back) == text);
}

TEST_CASE("writer output is deterministic") {
  Instance in = t4();
  CHECK(write_instance(in) == write_instance(in));
}

TEST_CASE("unbounded deadline uses the inf sentinel") {
  Instance in = t4();
  const std::string text = write_instance(in);
  CHECK(text.find("\"t_hat\": \"inf\"") != std::string::npos);
  CHECK(parse_instance(text).t_hat == kUnbounded);

  in.t_hat = 3.5;
  Instance back = parse_instance(write_instance(in));
  CHECK(back.t_hat == doctest::Approx(3.5));
  CHECK(back.bounded_deadline());
}

TEST_CASE("index helpers") {
  Instance in = t4();
  CHECK(in.photo_index("p3") == 2);
  CHECK(in.photo_index("nope") == -1);
  CHECK(in.drone_index("d2") == 1);
  CHECK(in.drone_index("nope") == -1);
  CHECK(in.capable_count() == 2);
  CHECK(in.capable_indices() == std::vector<int>{0, 1});
  in.drones[0].capable = false;
  CHECK(in.capable_count() == 1);
  CHECK(in.capable_indices() == std::vector<int>{1});
}

TEST_CASE("structural validation rejects bad instances") {
  SUBCASE("duplicate photo id") {
    Instance in = t4();
    in.photos[1].id = "p1";
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("non-positive lambda") {
    Instance in = t4();
    in.photos[0].lambda = 0.0;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("non-positive mu") {
    Instance in = t4();
    in.photos[0].mu = -1.0;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("unknown storage drone") {
    Instance in = t4();
    in.photos[3].stored_on = "d9";
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("missing link breaks the tree") {
    Instance in = t4();
    in.links.clear();
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("extra link forms a cycle") {
    Instance in = t4();
    in.drones.push_back({"d3", false});
    in.links.push_back({"d2", "d3", 1.0});
    in.links.push_back({"d3", "d1", 1.0});
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("self link") {
    Instance in = t4();
    in.links[0].b = "d1";
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("link to unknown drone") {
    Instance in = t4();
    in.links[0].b = "d9";
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("non-positive capacity") {
    Instance in = t4();
    in.links[0].capacity = 0.0;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("no capable drone") {
    Instance in = t4();
    in.drones[0].capable = false;
    in.drones[1].capable = false;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("sigma above the capable fleet") {
    Instance in = t4();
    in.sigma = 3;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("sigma below one") {
    Instance in = t4();
    in.sigma = 0;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("zero deadline") {
    Instance in = t4();
    in.t_hat = 0.0;
    CHECK_THROWS_AS(check_instance(in), ValidationError);
  }
  SUBCASE("the fixture itself is valid") { CHECK_NOTHROW(check_instance(t4())); }
}

TEST_CASE("parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_instance("not json"), ValidationError);
  CHECK_THROWS_AS(parse_instance("{}"), ValidationError);
  CHECK_THROWS_AS(parse_instance(R"({"photos": [], "drones": []})"),
                  ValidationError);
  // t_hat must be a number or "inf"
  Instance in = t4();
  std::string text = write_instance(in);
  std::string bad = text;
  bad.replace(bad.find("\"inf\""), 5, "\"soon\"");
  CHECK_THROWS_AS(parse_instance(bad), ValidationError);
}

TEST_CASE("benchmark name grammar") {
  NameSpec s = parse_instance_name("u-P200D5%D90");
  CHECK_FALSE(s.weighted);
  CHECK(s.photos == 200);
  CHECK(s.drones == 5);
  CHECK(s.capable_pct == 90);
  CHECK(s.capable_count == 4);  // floor(5 * 90 / 100)

  s = parse_instance_name("u-P200D7%D70");
  CHECK(s.drones == 7);
  CHECK(s.capable_count == 4);  // floor(7 * 70 / 100)

  s = parse_instance_name("w-P400D10%D50");
  CHECK(s.weighted);
  CHECK(s.photos == 400);
  CHECK(s.capable_count == 5);

  CHECK(format_instance_name(parse_instance_name("u-P200D5%D90")) ==
        "u-P200D5%D90");
  CHECK(format_instance_name(parse_instance_name("w-P400D10%D50")) ==
        "w-P400D10%D50");

  CHECK_THROWS_AS(parse_instance_name("x-P1D1%D1"), ValidationError);
  CHECK_THROWS_AS(parse_instance_name("u-P1D1"), ValidationError);
  CHECK_THROWS_AS(parse_instance_name("u-PD1%D1"), ValidationError);
  CHECK_THROWS_AS(parse_instance_name("u-P0D1%D100"), ValidationError);
  CHECK_THROWS_AS(parse_instance_name("u-P1D1%D100x"), ValidationError);
}

TEST_CASE("grid generator: 2x2 with two sweep drones") {
  GridOptions opt;
  opt.rows = 2;
  opt.cols = 2;
  opt.drones = 2;
  opt.capable = 2;
  opt.capacity = 1.0;
  opt.lambda = 1.0;
  opt.mu = 1.0;
  opt.seed = 7;
  Instance in = generate_grid_instance(opt);

  REQUIRE(in.photos.size() == 4);
  // column-major ids: p1/p2 are the left flight line, p3/p4 the right
  CHECK(in.photos[0].lng == doctest::Approx(0.0));
  CHECK(in.photos[0].lat == doctest::Approx(0.0));
  CHECK(in.photos[1].lng == doctest::Approx(0.0));
  CHECK(in.photos[1].lat == doctest::Approx(1.0));
  CHECK(in.photos[2].lng == doctest::Approx(1.0));
  CHECK(in.photos[2].lat == doctest::Approx(0.0));
  CHECK(in.photos[3].lng == doctest::Approx(1.0));
  CHECK(in.photos[3].lat == doctest::Approx(1.0));
  // sweep storage: first flight line on d1, second on d2
  CHECK(in.photos[0].stored_on == "d1");
  CHECK(in.photos[1].stored_on == "d1");
  CHECK(in.photos[2].stored_on == "d2");
  CHECK(in.photos[3].stored_on == "d2");
  REQUIRE(in.drones.size() == 2);
  CHECK(in.drones[0].capable);
  CHECK(in.drones[1].capable);
  REQUIRE(in.links.size() == 1);
  CHECK(in.links[0].capacity == doctest::Approx(1.0));
  CHECK_NOTHROW(check_instance(in));
}

TEST_CASE("grid generator: spacing, size and axes of a 20x10 grid") {
  GridOptions opt;
  opt.rows = 20;
  opt.cols = 10;
  opt.spacing = 2.5;
  opt.drones = 5;
  opt.capable = 4;
  opt.seed = 3;
  Instance in = generate_grid_instance(opt);
  CHECK(in.photos.size() == 200);
  std::set<double> xs, ys;
  for (const auto& p : in.photos) {
    xs.insert(p.lng);
    ys.insert(p.lat);
  }
  CHECK(xs.size() == 10);
  CHECK(ys.size() == 20);
  CHECK(*xs.rbegin() == doctest::Approx(9 * 2.5));
  CHECK(*ys.rbegin() == doctest::Approx(19 * 2.5));
  CHECK(in.links.size() == 4);  // spanning tree over five drones
  CHECK(in.capable_count() == 4);
  // defaults stamped on every photo
  for (const auto& p : in.photos) {
    CHECK(p.lambda == doctest::Approx(26.72));
    CHECK(p.mu == doctest::Approx(5.0));
  }
}

TEST_CASE("grid generator is deterministic per seed") {
  GridOptions opt;
  opt.rows = 3;
  opt.cols = 4;
  opt.drones = 4;
  opt.capable = 2;
  opt.storage = "random";
  opt.seed = 42;
  const std::string a = write_instance(generate_grid_instance(opt));
  const std::string b = write_instance(generate_grid_instance(opt));
  CHECK(a == b);
  opt.seed = 43;
  const std::string c = write_instance(generate_grid_instance(opt));
  CHECK(a != c);
}

TEST_CASE("grid generator rejects bad options") {
  GridOptions opt;
  opt.rows = 0;
  CHECK_THROWS_AS(generate_grid_instance(opt), ValidationError);
  opt.rows = 1;
  opt.capable = 2;  // more capable than drones
  CHECK_THROWS_AS(generate_grid_instance(opt), ValidationError);
  opt.capable = 1;
  opt.storage = "pile";
  CHECK_THROWS_AS(generate_grid_instance(opt), ValidationError);
}

TEST_CASE("random storage still stores every photo on a real drone") {
  GridOptions opt;
  opt.rows = 4;
  opt.cols = 4;
  opt.drones = 3;
  opt.capable = 3;
  opt.storage = "random";
  opt.seed = 11;
  Instance in = generate_grid_instance(opt);
  for (const auto& p : in.photos) CHECK(in.drone_index(p.stored_on) >= 0);
}

TEST_CASE("weighted recipe on a 3x3 grid redraws one shared block weight") {
  GridOptions opt;
  opt.rows = 3;
  opt.cols = 3;
  opt.drones = 2;
  opt.capable = 2;
  opt.lambda = 26.72;
  opt.seed = 5;
  Instance base = generate_grid_instance(opt);
  Instance w = apply_weighted_recipe(base, {26.72, 5.0, 9});
  REQUIRE(w.photos.size() == 9);
  // ceil(9 * 0.1) = 1 block = the whole grid: one draw shared by all nine
  for (const auto& p : w.photos) {
    CHECK(p.lambda == doctest::Approx(w.photos[0].lambda));
    CHECK(p.lambda >= 1e-3);
    CHECK(p.mu == doctest::Approx(5.0));  // untouched
  }
  CHECK(w.photos[0].lambda != doctest::Approx(26.72));
  // geometry and storage untouched
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(w.photos[i].lng == base.photos[i].lng);
    CHECK(w.photos[i].lat == base.photos[i].lat);
    CHECK(w.photos[i].stored_on == base.photos[i].stored_on);
  }
  CHECK_NOTHROW(check_instance(w));
}

TEST_CASE("weighted recipe flips the family name from u to w") {
  GridOptions opt;
  opt.rows = 3;
  opt.cols = 3;
  opt.drones = 3;
  opt.capable = 3;
  opt.name = "u-P9D3%D100";
  Instance w = apply_weighted_recipe(generate_grid_instance(opt), {});
  CHECK(w.name == "w-P9D3%D100");
}

TEST_CASE("weighted recipe touches exactly nine photos per block") {
  // 9 x 30 grid: 270 photos, ceil(27) = 27 blocks, 243 redrawn lambdas
  GridOptions opt;
  opt.rows = 9;
  opt.cols = 30;
  opt.drones = 2;
  opt.capable = 2;
  opt.lambda = 26.72;
  opt.seed = 2;
  Instance base = generate_grid_instance(opt);
  Instance w = apply_weighted_recipe(base, {26.72, 5.0, 31});
  int changed = 0;
  for (std::size_t i = 0; i < w.photos.size(); ++i)
    if (w.photos[i].lambda != base.photos[i].lambda) ++changed;
  CHECK(changed == 243);
  std::set<double> draws;
  for (const auto& p : w.photos)
    if (p.lambda != 26.72) draws.insert(p.lambda);
  CHECK(draws.size() == 27);
}

TEST_CASE("weighted recipe is deterministic per seed") {
  GridOptions opt;
  opt.rows = 3;
  opt.cols = 6;
  opt.drones = 2;
  opt.capable = 2;
  Instance base = generate_grid_instance(opt);
  CHECK(write_instance(apply_weighted_recipe(base, {26.72, 5.0, 4})) ==
        write_instance(apply_weighted_recipe(base, {26.72, 5.0, 4})));
}

TEST_CASE("weighted recipe refuses grids that cannot host the blocks") {
  // 10 x 20 = 200 photos demand 20 disjoint 3x3 blocks; the grid fits 18
  GridOptions opt;
  opt.rows = 20;
  opt.cols = 10;
  opt.drones = 2;
  opt.capable = 2;
  Instance base = generate_grid_instance(opt);
  CHECK_THROWS_AS(apply_weighted_recipe(base, {}), ValidationError);
  // and anything smaller than 3x3 at all
  GridOptions tiny;
  tiny.rows = 2;
  tiny.cols = 2;
  tiny.drones = 1;
  tiny.capable = 1;
  CHECK_THROWS_AS(apply_weighted_recipe(generate_grid_instance(tiny), {}),
                  ValidationError);
}

TEST_CASE("random tree invariants") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 9; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto edges = random_tree(n, rng);
      CHECK(static_cast<int>(edges.size()) == n - 1);
      // connectivity via union-find
      std::vector<int> parent(n);
      for (int i = 0; i < n; ++i) parent[i] = i;
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (auto [a, b] : edges) {
        REQUIRE(a >= 0);
        REQUIRE(a < n);
        REQUIRE(b >= 0);
        REQUIRE(b < n);
        REQUIRE(a != b);
        REQUIRE(find(a) != find(b));  // no cycle
        parent[find(a)] = find(b);
      }
    }
  }
}

TEST_CASE("seed-stable sampling helpers") {
  std::mt19937_64 a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(rand_below(a, 10) == rand_below(b, 10));
  }
  std::mt19937_64 c(5);
  for (int i = 0; i < 200; ++i) {
    double u = rand_unit(c);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // normal draws have roughly the right center
  std::mt19937_64 d(9);
  double sum = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) sum += rand_normal(d, 10.0, 2.0);
  CHECK(sum / n == doctest::Approx(10.0).epsilon(0.02));
}
