#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "capsac/evaluate.hpp"

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

SolutionRegion region(Rect r, std::vector<std::string> members,
                      std::vector<std::string> drones) {
  SolutionRegion s;
  s.boundary = r;
  s.members = std::move(members);
  s.drones = std::move(drones);
  return s;
}

CapsacSolution split_solution() {
  CapsacSolution sol;
  sol.status = SolveStatus::Optimal;
  sol.objective = 2.0;
  sol.regions = {region({0, 0, 0, 1}, {"p1", "p2"}, {"d1"}),
                 region({1, 1, 0, 1}, {"p3", "p4"}, {"d2"})};
  return sol;
}

}  // namespace

TEST_CASE("solution JSON round trip") {
  CapsacSolution sol = split_solution();
  const std::string text = write_solution(sol);
  CapsacSolution back = parse_solution(text);
  CHECK(back.status == SolveStatus::Optimal);
  CHECK(back.objective == doctest::Approx(2.0));
  REQUIRE(back.regions.size() == 2);
  CHECK(back.regions[0].members == std::vector<std::string>{"p1", "p2"});
  CHECK(back.regions[0].drones == std::vector<std::string>{"d1"});
  CHECK(back.regions[1].boundary.left == doctest::Approx(1.0));
  CHECK(write_solution(back) == text);  // byte determinism
  CHECK_THROWS_AS(parse_solution("nope"), ValidationError);
}

TEST_CASE("makespan charges photos per containing region") {
  Instance in = t4();
  CHECK(makespan(in, split_solution()) == doctest::Approx(2.0));

  CapsacSolution all;
  all.status = SolveStatus::Optimal;
  all.regions = {region({0, 1, 0, 1}, {"p1", "p2", "p3", "p4"}, {"d1"})};
  CHECK(makespan(in, all) == doctest::Approx(4.0));

  // overlap double-counts on the shared drone...
  CapsacSolution twice;
  twice.status = SolveStatus::Optimal;
  twice.regions = {region({0, 0, 0, 1}, {"p1", "p2"}, {"d1"}),
                   region({0, 1, 0, 0}, {"p1", "p3"}, {"d1"})};
  CHECK(makespan(in, twice) == doctest::Approx(4.0));
  // ...while the physical variant charges each photo once per drone
  CHECK(makespan_dedup(in, twice) == doctest::Approx(3.0));
  CHECK(makespan_dedup(in, split_solution()) == doctest::Approx(2.0));

  CapsacSolution bad = split_solution();
  bad.regions[0].drones = {"d9"};
  CHECK_THROWS_AS(makespan(in, bad), ValidationError);
  CapsacSolution badp = split_solution();
  badp.regions[0].members = {"p9"};
  CHECK_THROWS_AS(makespan(in, badp), ValidationError);
}

TEST_CASE("active demands aggregate missing megabytes per drone pair") {
  Instance in = t4();
  // diagonal split: all data is already local
  CHECK(active_demands(in, split_solution()).empty());

  // everything on d1: the right flight line must come over from d2
  CapsacSolution all;
  all.status = SolveStatus::Optimal;
  all.regions = {region({0, 1, 0, 1}, {"p1", "p2", "p3", "p4"}, {"d1"})};
  auto dem = active_demands(in, all);
  REQUIRE(dem.size() == 1);
  CHECK(dem[0].from == "d2");
  CHECK(dem[0].to == "d1");
  CHECK(dem[0].volume == doctest::Approx(2.0));

  // a photo processed twice on the same drone ships twice
  CapsacSolution twice;
  twice.status = SolveStatus::Optimal;
  twice.regions = {region({0, 1, 0, 0}, {"p1", "p3"}, {"d1"}),
                   region({0, 1, 0, 1}, {"p1", "p2", "p3", "p4"}, {"d1"})};
  auto dem2 = active_demands(in, twice);
  REQUIRE(dem2.size() == 1);
  CHECK(dem2[0].volume == doctest::Approx(3.0));  // p3 twice + p4 once

  // output is sorted by (from, to)
  CapsacSolution crossed;
  crossed.status = SolveStatus::Optimal;
  crossed.regions = {region({0, 0, 0, 1}, {"p1", "p2"}, {"d2"}),
                     region({1, 1, 0, 1}, {"p3", "p4"}, {"d1"})};
  auto dem3 = active_demands(in, crossed);
  REQUIRE(dem3.size() == 2);
  CHECK(dem3[0].from == "d1");
  CHECK(dem3[0].to == "d2");
  CHECK(dem3[1].from == "d2");
  CHECK(dem3[1].to == "d1");
}

TEST_CASE("validation accepts the reference split") {
  Instance in = t4();
  FeasibilityReport rep = validate(in, split_solution());
  CHECK(rep.ok());
  CHECK(rep.violations.empty());
  CHECK(rep.demand_times.empty());  // no transfers on the diagonal split
}

TEST_CASE("validation pinpoints violations") {
  Instance in = t4();
  SUBCASE("uncovered photo is named") {
    CapsacSolution sol = split_solution();
    sol.regions[1] = region({1, 1, 1, 1}, {"p4"}, {"d2"});
    FeasibilityReport rep = validate(in, sol);
    CHECK_FALSE(rep.coverage_ok);
    bool mentions_p3 = false;
    for (const auto& v : rep.violations)
      if (v.find("p3") != std::string::npos) mentions_p3 = true;
    CHECK(mentions_p3);
  }
  SUBCASE("member set must match the boundary content") {
    CapsacSolution sol = split_solution();
    // claims only the corners of the full grid
    sol.regions[0] = region({0, 1, 0, 1}, {"p1", "p4"}, {"d1"});
    sol.regions[1] = region({0, 1, 0, 1}, {"p2", "p3"}, {"d2"});
    FeasibilityReport rep = validate(in, sol);
    CHECK_FALSE(rep.convexity_ok);
  }
  SUBCASE("unknown or incapable drones") {
    CapsacSolution sol = split_solution();
    sol.regions[0].drones = {"d9"};
    CHECK_FALSE(validate(in, sol).drones_ok);

    Instance weak = t4();
    weak.drones[1].capable = false;
    CapsacSolution sol2 = split_solution();  // d2 still assigned
    CHECK_FALSE(validate(weak, sol2).drones_ok);
  }
  SUBCASE("replication shortfall") {
    Instance in2 = t4();
    in2.sigma = 2;
    FeasibilityReport rep = validate(in2, split_solution());
    CHECK_FALSE(rep.replication_ok);
  }
  SUBCASE("unknown photo id") {
    CapsacSolution sol = split_solution();
    sol.regions[0].members = {"p1", "p9"};
    FeasibilityReport rep = validate(in, sol);
    CHECK_FALSE(rep.coverage_ok);
  }
  SUBCASE("empty region with a reversed boundary is fine") {
    CapsacSolution sol;
    sol.status = SolveStatus::Optimal;
    Rect none;
    none.left = 1.0;
    none.right = 0.0;  // reversed on purpose
    sol.regions = {region({0, 1, 0, 1}, {"p1", "p2", "p3", "p4"}, {"d1"}),
                   region(none, {}, {"d2"})};
    FeasibilityReport rep = validate(in, sol);
    CHECK(rep.convexity_ok);
    CHECK(rep.coverage_ok);
  }
}

TEST_CASE("validation measures transfers against the deadline") {
  Instance in = t4();
  in.t_hat = 4.0;
  CapsacSolution all;
  all.status = SolveStatus::Optimal;
  all.regions = {region({0, 1, 0, 1}, {"p1", "p2", "p3", "p4"}, {"d1"})};

  // 2 MB over the 1 MB/s link: 2 s within a 4 s budget
  FeasibilityReport rep = validate(in, all);
  CHECK(rep.transmission_ok);
  REQUIRE(rep.demand_times.size() == 1);
  CHECK(rep.demand_times[0].from == "d2");
  CHECK(rep.demand_times[0].rate == doctest::Approx(1.0));
  CHECK(rep.demand_times[0].seconds == doctest::Approx(2.0));

  in.t_hat = 1.5;
  FeasibilityReport tight = validate(in, all);
  CHECK_FALSE(tight.transmission_ok);
  CHECK_FALSE(tight.ok());
  bool mentions_deadline = false;
  for (const auto& v : tight.violations)
    if (v.find("deadline") != std::string::npos) mentions_deadline = true;
  CHECK(mentions_deadline);

  // unbounded instances still report the transfer times
  in.t_hat = kUnbounded;
  FeasibilityReport loose = validate(in, all);
  CHECK(loose.transmission_ok);
  CHECK(loose.demand_times.size() == 1);
}
