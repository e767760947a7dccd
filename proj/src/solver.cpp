#include "capsac/solver.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "capsac/instance.hpp"

#ifndef CAPSAC_BACKEND_SCRIPT
#define CAPSAC_BACKEND_SCRIPT "tools/solver_backend.py"
#endif

namespace capsac {

namespace fs = std::filesystem;

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Error: return "error";
  }
  return "error";
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "optimal") return SolveStatus::Optimal;
  if (s == "feasible") return SolveStatus::Feasible;
  if (s == "infeasible") return SolveStatus::Infeasible;
  if (s == "time_limit") return SolveStatus::TimeLimit;
  return SolveStatus::Error;
}

double ModelSolution::value(const std::string& name) const {
  auto it = values.find(name);
  return it == values.end() ? 0.0 : it->second;
}

ModelSolution parse_solution_text(const std::string& text) {
  ModelSolution sol;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, key;
      ls >> hash >> key;
      if (key == "bound") {
        double v;
        if (ls >> v) sol.best_bound = v;
      } else if (key == "nodes") {
        long long n;
        if (ls >> n) sol.node_count = n;
      } else if (key == "message") {
        std::string rest;
        std::getline(ls, rest);
        while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
        sol.message = rest;
      }
      continue;
    }
    if (!header) {
      std::string status;
      double obj = 0.0;
      if (!(ls >> status >> obj))
        throw ValidationError("solution file: malformed header line '" + line +
                              "'");
      sol.status = status_from_string(status);
      if (sol.status == SolveStatus::Error && status != "error")
        throw ValidationError("solution file: unknown status '" + status + "'");
      sol.objective = obj;
      header = true;
      continue;
    }
    std::string name;
    double value;
    if (!(ls >> name >> value))
      throw ValidationError("solution file: malformed value line '" + line +
                            "'");
    sol.values[name] = value;
  }
  if (!header) throw ValidationError("solution file is empty");
  return sol;
}

std::string default_solver_command(const std::string& engine) {
  if (const char* env = std::getenv("CAPSAC_SOLVER_CMD"); env && *env)
    return env;
  std::string cmd = "python3 '";
  cmd += CAPSAC_BACKEND_SCRIPT;
  cmd += "' {model} {solution} --engine ";
  cmd += engine.empty() ? "highs" : engine;
  cmd += " --time-limit {time_limit}";
  return cmd;
}

namespace {

void replace_all(std::string& s, const std::string& from,
                 const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos;
       pos += to.size())
    s.replace(pos, from.size(), to);
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path make_scratch_dir() {
  static std::atomic<unsigned> counter{0};
  auto base = fs::temp_directory_path();
  for (int tries = 0; tries < 100; ++tries) {
    fs::path dir = base / ("capsac-" + std::to_string(::getpid()) + "-" +
                           std::to_string(counter.fetch_add(1)));
    std::error_code ec;
    if (fs::create_directory(dir, ec)) return dir;
  }
  throw ValidationError("cannot create scratch directory for the solver");
}

}  // namespace

ModelSolution solve_external(const LinearModel& m, const SolveOptions& opt) {
  fs::path dir = make_scratch_dir();
  fs::path model_path = dir / "model.lp";
  fs::path solution_path = dir / "solution.txt";
  fs::path ord_path = dir / "model.ord";

  {
    std::ofstream out(model_path);
    out << write_lp(m);
    if (!out) throw ValidationError("cannot write " + model_path.string());
  }
  if (opt.write_priorities) {
    std::ofstream out(ord_path);
    out << write_priorities(m);
  }

  std::string cmd =
      opt.command.empty() ? default_solver_command(opt.engine) : opt.command;
  replace_all(cmd, "{model}", quoted(model_path));
  replace_all(cmd, "{solution}", quoted(solution_path));
  replace_all(cmd, "{priorities}", quoted(ord_path));
  replace_all(cmd, "{time_limit}",
              opt.time_limit > 0.0 ? format_number(opt.time_limit) : "0");

  auto t0 = std::chrono::steady_clock::now();
  std::string output;
  int exit_code = 0;
  {
    FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) throw ValidationError("cannot run solver command: " + cmd);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
      output.append(buf, n);
    exit_code = ::pclose(pipe);
  }
  auto t1 = std::chrono::steady_clock::now();

  ModelSolution sol;
  sol.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (exit_code != 0 || !fs::exists(solution_path)) {
    sol.status = SolveStatus::Error;
    sol.message = "solver command failed (exit " + std::to_string(exit_code) +
                  "): " + cmd + "\n" + output;
    if (!opt.keep_files) fs::remove_all(dir);
    return sol;
  }

  std::stringstream ss;
  ss << std::ifstream(solution_path).rdbuf();
  double wall = sol.wall_seconds;
  sol = parse_solution_text(ss.str());
  sol.wall_seconds = wall;
  if (!opt.keep_files) fs::remove_all(dir);
  return sol;
}

}  // namespace capsac
