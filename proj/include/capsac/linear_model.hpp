#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace capsac {

enum class VarKind { Continuous, Binary };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = 0.0;
};

enum class Sense { LE, GE, EQ };

struct Constraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

// Solver-agnostic MILP container.  Objective sense is always minimize.
struct LinearModel {
  std::string name = "model";
  std::vector<Variable> vars;
  std::vector<Constraint> cons;
  std::vector<std::pair<int, double>> objective;
  double objective_constant = 0.0;
  std::map<std::string, int> priority;  // branching hints, larger = earlier

  int add_binary(const std::string& name);
  int add_continuous(const std::string& name, double lb, double ub);
  void add_con(const std::string& name,
               std::vector<std::pair<int, double>> terms, Sense sense,
               double rhs);
  void fix(int var, double value);  // collapse bounds; works on binaries too
  int index_of(const std::string& name) const;  // -1 when absent

  int binary_count() const;

 private:
  int add_var(const std::string& name, VarKind kind, double lb, double ub);
  std::map<std::string, int> var_index_;
  std::map<std::string, int> con_index_;
};

// CPLEX-style LP text.  Deterministic: same model, same bytes.
std::string write_lp(const LinearModel& m);

// One "name priority" line per prioritized variable, in model order.
std::string write_priorities(const LinearModel& m);

// Binaries become continuous on [lb, ub] clipped to [0, 1]; idempotent.
LinearModel lp_relaxation(const LinearModel& m);

// Number formatting shared by the writers: shortest text that parses back
// to the exact double.
std::string format_number(double v);

}  // namespace capsac
