#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>

#include "capsac/instance.hpp"
#include "capsac/linear_model.hpp"
#include "capsac/solver.hpp"

using namespace capsac;

TEST_CASE("LP text skeleton") {
  LinearModel m;
  m.name = "tiny";
  int x = m.add_binary("x");
  int y = m.add_continuous("y", 0.0, 4.0);
  m.add_con("pick", {{x, 1.0}}, Sense::GE, 1.0);
  m.add_con("mix", {{x, 2.0}, {y, -1.0}}, Sense::LE, 0.5);
  m.objective = {{x, 1.0}, {y, 3.0}};

  const std::string text = write_lp(m);
  CHECK(text.find("\\ tiny\n") == 0);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("obj:") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("pick:") != std::string::npos);
  CHECK(text.find(">= 1") != std::string::npos);
  CHECK(text.find("- y <= 0.5") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find(" y <= 4") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);
  CHECK(text.find(" x\n") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
  CHECK(write_lp(m) == text);  // byte determinism
}

TEST_CASE("empty objective prints a constant zero") {
  LinearModel m;
  m.add_binary("x");
  const std::string text = write_lp(m);
  CHECK(text.find("obj: + 0") != std::string::npos);
}

TEST_CASE("bound rendering variants") {
  LinearModel m;
  m.add_continuous("a", -kUnbounded, kUnbounded);
  m.add_continuous("b", -kUnbounded, 2.0);
  m.add_continuous("c", 1.0, kUnbounded);
  m.add_continuous("d", 0.5, 2.5);
  int e = m.add_binary("e");
  m.fix(e, 1.0);
  const std::string text = write_lp(m);
  CHECK(text.find(" a free\n") != std::string::npos);
  CHECK(text.find(" -inf <= b <= 2\n") != std::string::npos);
  CHECK(text.find(" c >= 1\n") != std::string::npos);
  CHECK(text.find(" 0.5 <= d <= 2.5\n") != std::string::npos);
  CHECK(text.find(" e = 1\n") != std::string::npos);  // pinned binary
}

TEST_CASE("name and index validation") {
  LinearModel m;
  CHECK_THROWS_AS(m.add_binary("2x"), ValidationError);
  CHECK_THROWS_AS(m.add_binary("a b"), ValidationError);
  CHECK_THROWS_AS(m.add_binary(""), ValidationError);
  CHECK_THROWS_AS(m.add_binary(std::string(300, 'a')), ValidationError);
  m.add_binary("x");
  CHECK_THROWS_AS(m.add_binary("x"), ValidationError);
  CHECK_THROWS_AS(m.add_con("c", {{5, 1.0}}, Sense::LE, 0.0), ValidationError);
  m.add_con("c", {{0, 1.0}}, Sense::LE, 1.0);
  CHECK_THROWS_AS(m.add_con("c", {{0, 1.0}}, Sense::LE, 1.0), ValidationError);
  CHECK(m.index_of("x") == 0);
  CHECK(m.index_of("zzz") == -1);
  CHECK(m.binary_count() == 1);
}

TEST_CASE("number formatting round-trips doubles") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-3.0) == "-3");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(kUnbounded) == "inf");
  CHECK(format_number(-kUnbounded) == "-inf");
  for (double v : {26.72, 1.0 / 3.0, 1e-9, 123456.789, 3.14159265358979}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("LP relaxation loosens binaries and nothing else") {
  LinearModel m;
  int x = m.add_binary("x");
  m.add_continuous("y", 0.0, 5.0);
  m.fix(x, 1.0);
  LinearModel r = lp_relaxation(m);
  CHECK(r.binary_count() == 0);
  CHECK(r.vars[0].kind == VarKind::Continuous);
  CHECK(r.vars[0].lb == 1.0);  // fixed stays fixed
  CHECK(r.vars[0].ub == 1.0);
  CHECK(r.vars[1].ub == 5.0);
  // idempotent
  CHECK(write_lp(lp_relaxation(r)) == write_lp(r));
}

TEST_CASE("branch priorities render one line per hinted variable") {
  LinearModel m;
  m.add_binary("a");
  m.add_binary("b");
  m.priority["b"] = 2;
  m.priority["a"] = 1;
  const std::string ord = write_priorities(m);
  CHECK(ord == "a 1\nb 2\n");  // model order, not map order
  LinearModel none;
  none.add_binary("a");
  CHECK(write_priorities(none).empty());
}

TEST_CASE("solution text grammar") {
  ModelSolution s = parse_solution_text(
      "optimal 3.5\n# bound 3.25\n# nodes 17\n# message all good\nx 1\ny 0.5\n");
  CHECK(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(3.5));
  REQUIRE(s.best_bound.has_value());
  CHECK(*s.best_bound == doctest::Approx(3.25));
  REQUIRE(s.node_count.has_value());
  CHECK(*s.node_count == 17);
  CHECK(s.message == "all good");
  CHECK(s.value("x") == doctest::Approx(1.0));
  CHECK(s.value("y") == doctest::Approx(0.5));
  CHECK(s.value("missing") == 0.0);

  ModelSolution inf = parse_solution_text("infeasible 0\n");
  CHECK(inf.status == SolveStatus::Infeasible);

  CHECK(std::string(to_string(SolveStatus::TimeLimit)) == "time_limit");
  CHECK(status_from_string("feasible") == SolveStatus::Feasible);
  CHECK_THROWS_AS(parse_solution_text(""), ValidationError);
  CHECK_THROWS_AS(parse_solution_text("sideways 1\n"), ValidationError);
}

TEST_CASE("external solve: trivial optimum" * doctest::timeout(120)) {
  LinearModel m;
  int x = m.add_binary("x");
  int y = m.add_binary("y");
  m.add_con("need", {{x, 1.0}, {y, 1.0}}, Sense::GE, 1.0);
  m.objective = {{x, 1.0}, {y, 2.0}};
  ModelSolution s = solve_external(m);
  CHECK(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.value("x") == doctest::Approx(1.0));
  CHECK(s.value("y") == doctest::Approx(0.0));
}

TEST_CASE("external solve: infeasible model" * doctest::timeout(120)) {
  LinearModel m;
  int x = m.add_continuous("x", 0.0, kUnbounded);
  m.add_con("up", {{x, 1.0}}, Sense::GE, 1.0);
  m.add_con("down", {{x, 1.0}}, Sense::LE, 0.0);
  CHECK(solve_external(m).status == SolveStatus::Infeasible);
}

TEST_CASE("external solve: objective constant carried through" *
          doctest::timeout(120)) {
  LinearModel m;
  int x = m.add_continuous("x", 0.0, 10.0);
  m.add_con("floor", {{x, 1.0}}, Sense::GE, 2.0);
  m.objective = {{x, 1.0}};
  m.objective_constant = 7.0;
  ModelSolution s = solve_external(m);
  CHECK(s.status == SolveStatus::Optimal);
  CHECK(s.objective == doctest::Approx(9.0));
}

TEST_CASE("external solve: both engines agree" * doctest::timeout(240)) {
  LinearModel m;
  int x = m.add_binary("x");
  int y = m.add_binary("y");
  int z = m.add_binary("z");
  m.add_con("pair", {{x, 1.0}, {y, 1.0}}, Sense::GE, 1.0);
  m.add_con("trio", {{x, 1.0}, {y, 1.0}, {z, 1.0}}, Sense::GE, 2.0);
  m.objective = {{x, 3.0}, {y, 2.0}, {z, 1.5}};

  SolveOptions hi;
  hi.engine = "highs";
  SolveOptions gl;
  gl.engine = "glpk";
  ModelSolution a = solve_external(m, hi);
  ModelSolution b = solve_external(m, gl);
  REQUIRE(a.status == SolveStatus::Optimal);
  REQUIRE(b.status == SolveStatus::Optimal);
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-6));
  CHECK(a.objective == doctest::Approx(3.5));
}

TEST_CASE("external solve: LP relaxation bounds the integer optimum" *
          doctest::timeout(120)) {
  LinearModel m;
  int x = m.add_binary("x");
  int y = m.add_binary("y");
  m.add_con("cover", {{x, 1.0}, {y, 1.0}}, Sense::GE, 1.0);
  m.add_con("anti", {{x, 2.0}, {y, 1.0}}, Sense::GE, 1.5);
  m.objective = {{x, 1.0}, {y, 1.0}};
  ModelSolution lp = solve_external(lp_relaxation(m));
  ModelSolution ip = solve_external(m);
  REQUIRE(lp.status == SolveStatus::Optimal);
  REQUIRE(ip.status == SolveStatus::Optimal);
  CHECK(lp.objective <= ip.objective + 1e-9);
}

TEST_CASE("external solve: broken command reports an error" *
          doctest::timeout(120)) {
  LinearModel m;
  m.add_binary("x");
  SolveOptions opt;
  opt.command = "false {model} {solution}";
  ModelSolution s = solve_external(m, opt);
  CHECK(s.status == SolveStatus::Error);
  CHECK_FALSE(s.message.empty());
}
