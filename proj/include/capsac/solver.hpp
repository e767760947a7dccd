#pragma once

#include <map>
#include <optional>
#include <string>

#include "capsac/linear_model.hpp"

namespace capsac {

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit, Error };

const char* to_string(SolveStatus s);
SolveStatus status_from_string(const std::string& s);

struct ModelSolution {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  std::map<std::string, double> values;  // variable name -> value
  double wall_seconds = 0.0;
  std::optional<double> best_bound;
  std::optional<long long> node_count;
  std::string message;  // backend chatter, kept for error reports

  double value(const std::string& name) const;  // 0 when absent
};

struct SolveOptions {
  // Command template with {model}/{solution}/{priorities}/{time_limit}
  // placeholders.  Empty means: $CAPSAC_SOLVER_CMD, else the bundled backend.
  std::string command;
  double time_limit = 0.0;        // seconds; 0 = unlimited
  std::string engine = "highs";   // bundled backend only: highs or glpk
  bool write_priorities = false;  // emit the .ord file next to the model
  bool keep_files = false;        // leave the scratch directory behind
};

// Writes the model to a scratch directory, runs the backend command and
// parses the solution file it leaves behind.
ModelSolution solve_external(const LinearModel& m, const SolveOptions& opt = {});

// The command used when none is configured.
std::string default_solver_command(const std::string& engine);

// Solution-file grammar: "status objective" header, then "name value" lines;
// "# bound X" / "# nodes N" / "# message ..." comments are optional extras.
ModelSolution parse_solution_text(const std::string& text);

}  // namespace capsac
