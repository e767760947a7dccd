#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "capsac/evaluate.hpp"
#include "capsac/network.hpp"
#include "capsac/pcapsac.hpp"
#include "capsac/solver.hpp"

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

// same four photos, all parked on a storage-only hub between two workers
Instance t4_cross(double c1, double c2) {
  Instance in;
  in.name = "t4cross";
  in.photos = {{"p1", 0, 0, 1, 1, "hub"},
               {"p2", 0, 1, 1, 1, "hub"},
               {"p3", 1, 0, 1, 1, "hub"},
               {"p4", 1, 1, 1, 1, "hub"}};
  in.drones = {{"hub", false}, {"d1", true}, {"d2", true}};
  in.links = {{"hub", "d1", c1}, {"hub", "d2", c2}};
  return in;
}

int count_vars(const LinearModel& m, const std::string& prefix) {
  int n = 0;
  for (const auto& v : m.vars)
    if (v.name.rfind(prefix, 0) == 0) ++n;
  return n;
}

int count_cons(const LinearModel& m, const std::string& prefix) {
  int n = 0;
  for (const auto& c : m.cons)
    if (c.name.rfind(prefix, 0) == 0) ++n;
  return n;
}

const Constraint& con(const LinearModel& m, const std::string& name) {
  for (const auto& c : m.cons)
    if (c.name == name) return c;
  REQUIRE_MESSAGE(false, "constraint not found: " << name);
  static Constraint dummy;
  return dummy;
}

}  // namespace

TEST_CASE("variable layout on the 2x2 fixture") {
  PcapsacModel b = build_pcapsac(t4());
  const LinearModel& m = b.model;
  CHECK(b.cap == std::vector<int>{0, 1});
  CHECK(b.sigma == 1);
  CHECK(b.axes.lngs.size() == 2);
  CHECK(b.axes.lats.size() == 2);

  CHECK(count_vars(m, "y_") == 8);    // m * |P|
  CHECK(count_vars(m, "x_") == 4);    // m * m
  CHECK(count_vars(m, "g_") == 16);   // m * m * |P|
  CHECK(count_vars(m, "al_") == 4);   // m * |C|
  CHECK(count_vars(m, "be_") == 4);
  CHECK(count_vars(m, "ga_") == 4);   // m * |L|
  CHECK(count_vars(m, "om_") == 4);
  CHECK(count_vars(m, "tmax") == 1);
  CHECK(m.vars.size() == 45);
  CHECK(m.binary_count() == 44);  // everything but tmax

  // no transmission block without a deadline
  CHECK(count_vars(m, "z_") == 0);
  CHECK(count_vars(m, "ph_") == 0);
  CHECK(count_vars(m, "w_") == 0);
  CHECK(count_vars(m, "u_") == 0);

  // objective is tmax alone
  REQUIRE(m.objective.size() == 1);
  CHECK(m.vars[m.objective[0].first].name == "tmax");
}

TEST_CASE("constraint families on the 2x2 fixture") {
  PcapsacModel b = build_pcapsac(t4());
  const LinearModel& m = b.model;
  CHECK(count_cons(m, "cover_") == 4);
  CHECK(count_cons(m, "rep_") == 2);
  CHECK(count_cons(m, "mc") == 48);  // 3 * |P| * m^2
  CHECK(count_cons(m, "one") == 8);  // four border-uniqueness rows per region
  CHECK(count_cons(m, "in") == 32);  // four inclusive rows per (region, photo)
  CHECK(count_cons(m, "out_") == 8);
  CHECK(count_cons(m, "load_") == 2);
  CHECK(count_cons(m, "ord") == 0);
  CHECK(m.cons.size() == 104);

  // border uniqueness is an equality
  CHECK(con(m, "onel_r0").sense == Sense::EQ);
  CHECK(con(m, "onel_r0").rhs == doctest::Approx(1.0));
}

TEST_CASE("McCormick rows scale as 3 |P| m^2") {
  Instance a = t4();
  CHECK(count_cons(build_pcapsac(a).model, "mc") == 3 * 4 * 2 * 2);

  Instance b = t4();  // widen to a 2x3 grid, single worker
  b.photos.push_back({"p5", 2, 0, 1, 1, "d1"});
  b.photos.push_back({"p6", 2, 1, 1, 1, "d2"});
  b.drones[1].capable = false;
  CHECK(count_cons(build_pcapsac(b).model, "mc") == 3 * 6 * 1 * 1);

  Instance c = t4_cross(1, 1);  // 4 photos, two capable drones
  c.photos.push_back({"p5", 2, 0, 1, 1, "hub"});
  CHECK(count_cons(build_pcapsac(c).model, "mc") == 3 * 5 * 2 * 2);
}

TEST_CASE("outside rows flip shape with the boundary-condition variant") {
  PcapsacConfig bar;
  bar.bc = PcapsacConfig::Bc::Bc0Bar;
  PcapsacModel mbar = build_pcapsac(t4(), bar);
  // strict-outside positions plus the membership flag must reach 1
  const Constraint& obar = con(mbar.model, "out_r0_p0");
  CHECK(obar.sense == Sense::GE);
  CHECK(obar.rhs == doctest::Approx(1.0));
  CHECK(obar.terms.size() == 3);  // y + one lng + one lat escape position

  PcapsacConfig zero;
  zero.bc = PcapsacConfig::Bc::Bc0;
  PcapsacModel mzero = build_pcapsac(t4(), zero);
  const Constraint& ozero = con(mzero.model, "out_r0_p0");
  CHECK(ozero.sense == Sense::LE);
  CHECK(ozero.rhs == doctest::Approx(3.0));
  CHECK(ozero.terms.size() == 7);  // y + all six inclusive border positions
}

TEST_CASE("ordering cuts add 2(|C|+|L|)m rows and stay non-strict") {
  PcapsacConfig cfg;
  cfg.ordering_cuts = true;
  PcapsacModel b = build_pcapsac(t4(), cfg);
  CHECK(count_cons(b.model, "ord") == 16);
  CHECK(b.model.cons.size() == 120);
  // al_r0_c1 <= be_r0_c1: a point region on the last column stays feasible
  const Constraint& c = con(b.model, "ordl_r0_c1");
  CHECK(c.sense == Sense::LE);
  CHECK(c.rhs == doctest::Approx(0.0));
  CHECK(c.terms.size() == 2);  // al_c1 minus be_c1 only
}

TEST_CASE("symmetry fixing pins the diagonal assignment") {
  PcapsacModel b = build_pcapsac(t4());
  int idx = b.model.index_of("x_r0_d0");
  REQUIRE(idx >= 0);
  CHECK(b.model.vars[idx].lb == 1.0);
  CHECK(b.model.vars[idx].ub == 1.0);
  int idx2 = b.model.index_of("x_r1_d1");
  CHECK(b.model.vars[idx2].lb == 1.0);

  PcapsacConfig nosym;
  nosym.symmetry_fix = false;
  PcapsacModel f = build_pcapsac(t4(), nosym);
  int jdx = f.model.index_of("x_r0_d0");
  CHECK(f.model.vars[jdx].lb == 0.0);
  CHECK(f.model.vars[jdx].ub == 1.0);
}

TEST_CASE("branching hints") {
  PcapsacConfig by;
  by.branch = PcapsacConfig::Branch::BordersFirst;
  PcapsacModel b = build_pcapsac(t4(), by);
  CHECK(b.model.priority.size() == 24);  // 16 border + 8 membership vars
  CHECK(b.model.priority.at("al_r0_c0") == 2);
  CHECK(b.model.priority.at("y_r0_p0") == 1);

  PcapsacConfig yb;
  yb.branch = PcapsacConfig::Branch::MembersFirst;
  PcapsacModel c = build_pcapsac(t4(), yb);
  CHECK(c.model.priority.at("al_r0_c0") == 1);
  CHECK(c.model.priority.at("y_r0_p0") == 2);

  CHECK(build_pcapsac(t4()).model.priority.empty());
}

TEST_CASE("config overrides are validated") {
  PcapsacConfig cfg;
  cfg.sigma = 2;
  PcapsacModel b = build_pcapsac(t4(), cfg);
  CHECK(b.sigma == 2);
  CHECK(con(b.model, "rep_r0").rhs == doctest::Approx(2.0));

  cfg.sigma = 3;  // only two capable drones
  CHECK_THROWS_AS(build_pcapsac(t4(), cfg), ValidationError);
  cfg.sigma = 0;
  CHECK_THROWS_AS(build_pcapsac(t4(), cfg), ValidationError);
  cfg.sigma.reset();
  cfg.t_hat = -2.0;
  CHECK_THROWS_AS(build_pcapsac(t4(), cfg), ValidationError);
}

TEST_CASE("deadline override switches the transmission block on") {
  PcapsacConfig cfg;
  cfg.t_hat = 2.0;
  PcapsacModel b = build_pcapsac(t4_cross(1, 1), cfg);
  const LinearModel& m = b.model;
  CHECK(b.t_hat == doctest::Approx(2.0));
  CHECK(count_vars(m, "z_") == 4);   // ordered (holder, worker) pairs
  CHECK(count_vars(m, "ph_") == 4);
  CHECK(count_vars(m, "w_") == 6);   // one per pair and path link
  CHECK(count_vars(m, "u_") == 2);   // one per link
  CHECK(count_cons(m, "zdat_") == 4);
  CHECK(count_cons(m, "rate_") == 4);
  CHECK(count_cons(m, "need_") == 2);  // only the hub stores photos
  CHECK(count_cons(m, "bneck_") == 4);
  CHECK(count_cons(m, "wz_") == 6);
  CHECK(count_cons(m, "bsat_") == 6);
  CHECK(count_cons(m, "bmax_") == 6);
  CHECK(count_cons(m, "lcap_") == 2);
  CHECK(count_cons(m, "lmax_") == 6);
}

TEST_CASE("solved 2x2 optimum splits the grid" * doctest::timeout(240)) {
  Instance in = t4();
  PcapsacModel b = build_pcapsac(in);
  ModelSolution s = solve_external(b.model);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));

  CapsacSolution sol = decode_pcapsac(in, b, s);
  REQUIRE(sol.regions.size() == 2);
  std::set<std::string> used;
  for (const auto& r : sol.regions) {
    CHECK(r.members.size() == 2);
    REQUIRE(r.drones.size() == 1);
    used.insert(r.drones[0]);
  }
  CHECK(used.size() == 2);  // one worker each
  FeasibilityReport rep = validate(in, sol);
  CHECK(rep.ok());
  CHECK(makespan(in, sol) == doctest::Approx(2.0));

  // corrupting a membership value makes decoding refuse
  ModelSolution bad = s;
  bad.values["y_r0_p0"] = 0.5;
  CHECK_THROWS_AS(decode_pcapsac(in, b, bad), ValidationError);
}

TEST_CASE("replication doubles the optimum" * doctest::timeout(240)) {
  Instance in = t4();
  PcapsacConfig cfg;
  cfg.sigma = 2;
  PcapsacModel b = build_pcapsac(in, cfg);
  ModelSolution s = solve_external(b.model);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(4.0));
  CapsacSolution sol = decode_pcapsac(in, b, s);
  for (const auto& r : sol.regions) CHECK(r.drones.size() == 2);
  Instance eff = in;
  eff.sigma = 2;
  CHECK(validate(eff, sol).ok());
}

TEST_CASE("optimum is formulation-flag invariant on the fixture" *
          doctest::timeout(240)) {
  PcapsacConfig cfg;
  cfg.bc = PcapsacConfig::Bc::Bc0;
  cfg.ordering_cuts = true;
  cfg.symmetry_fix = false;
  ModelSolution s = solve_external(build_pcapsac(t4(), cfg).model);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("root relaxation reaches the averaging bound here" *
          doctest::timeout(240)) {
  // uniform weights, photo count divisible by the region count: the LP
  // relaxation already equals sum(lambda)/m = 2
  PcapsacModel b = build_pcapsac(t4());
  ModelSolution s = solve_external(lp_relaxation(b.model));
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("transmission deadline: tight but feasible" * doctest::timeout(240)) {
  Instance in = t4_cross(1, 1);
  PcapsacConfig cfg;
  cfg.t_hat = 2.0;
  PcapsacModel b = build_pcapsac(in, cfg);
  ModelSolution s = solve_external(b.model);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(2.0));

  CapsacSolution sol = decode_pcapsac(in, b, s);
  Instance eff = in;
  eff.t_hat = 2.0;
  FeasibilityReport rep = validate(eff, sol);
  CHECK(rep.ok());
  REQUIRE(rep.demand_times.size() == 2);

  // the solver's rate variables reproduce the fair allocation
  std::vector<Demand> dem = active_demands(in, sol);
  REQUIRE(dem.size() == 2);
  MmfAllocation mmf = mmf_allocate(in, dem);
  for (std::size_t i = 0; i < dem.size(); ++i) {
    int h = in.drone_index(dem[i].from);
    int d = in.drone_index(dem[i].to);
    std::string name = "ph_h" + std::to_string(h) + "_d" + std::to_string(d);
    CHECK(s.value(name) == doctest::Approx(mmf.rate[i]).epsilon(1e-6));
  }
}

TEST_CASE("transmission deadline: impossible" * doctest::timeout(240)) {
  Instance in = t4_cross(1, 1);
  PcapsacConfig cfg;
  cfg.t_hat = 1.5;  // every split ships 2 MB over a 1 MB/s link
  ModelSolution s = solve_external(build_pcapsac(in, cfg).model);
  CHECK(s.status == SolveStatus::Infeasible);
}
