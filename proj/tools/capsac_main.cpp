// capsac -- command line front end: instance generation, model building,
// solving through the external backend, the exhaustive oracle, feasibility
// checks, the set-covering reduction, benchmarks, profiles and sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "capsac/bench.hpp"
#include "capsac/evaluate.hpp"
#include "capsac/generator.hpp"
#include "capsac/gscp.hpp"
#include "capsac/oracle.hpp"
#include "capsac/pcapsac.hpp"
#include "capsac/rcapsac.hpp"
#include "capsac/solver.hpp"

using namespace capsac;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

double parse_deadline(const std::string& s) {
  if (s == "inf" || s == "INF" || s == "unbounded") return kUnbounded;
  try {
    std::size_t k = 0;
    double v = std::stod(s, &k);
    if (k == s.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("bad deadline '" + s + "' (want seconds > 0 or inf)");
}

// flags shared by `build` and `solve`
struct BuilderFlags {
  std::string formulation = "pcapsac";
  std::string bc = "bc0bar";
  bool ord = false;
  bool no_sym = false;
  std::string branch = "default";
  int sigma = 0;       // 0: keep the instance value
  std::string t_hat;   // empty: keep the instance value
  std::string empty_subset = "on";
};

void add_builder_flags(CLI::App* cmd, BuilderFlags& bf) {
  cmd->add_option("--formulation", bf.formulation, "model family")
      ->check(CLI::IsMember({"pcapsac", "rcapsac"}));
  cmd->add_option("--bc", bf.bc, "non-member exclusion family")
      ->check(CLI::IsMember({"bc0", "bc0bar"}));
  cmd->add_flag("--ord", bf.ord, "add border ordering cuts");
  cmd->add_flag("--no-sym", bf.no_sym, "drop the diagonal assignment fixing");
  cmd->add_option("--branch", bf.branch, "branch priority order")
      ->check(CLI::IsMember({"default", "by", "yb"}));
  cmd->add_option("--sigma", bf.sigma, "override the replication factor");
  cmd->add_option("--t-hat", bf.t_hat, "override the deadline (seconds|inf)");
  cmd->add_option("--empty-subset", bf.empty_subset,
                  "rcapsac only: include the zero-cost empty subset")
      ->check(CLI::IsMember({"on", "off"}));
}

PcapsacConfig to_pc(const BuilderFlags& bf) {
  PcapsacConfig c;
  c.bc = bf.bc == "bc0" ? PcapsacConfig::Bc::Bc0 : PcapsacConfig::Bc::Bc0Bar;
  c.ordering_cuts = bf.ord;
  c.symmetry_fix = !bf.no_sym;
  if (bf.branch == "by") c.branch = PcapsacConfig::Branch::BordersFirst;
  if (bf.branch == "yb") c.branch = PcapsacConfig::Branch::MembersFirst;
  if (bf.sigma > 0) c.sigma = bf.sigma;
  if (!bf.t_hat.empty()) c.t_hat = parse_deadline(bf.t_hat);
  return c;
}

RcapsacConfig to_rc(const BuilderFlags& bf) {
  RcapsacConfig c;
  c.empty_subset = bf.empty_subset != "off";
  if (bf.sigma > 0) c.sigma = bf.sigma;
  if (!bf.t_hat.empty()) c.t_hat = parse_deadline(bf.t_hat);
  return c;
}

Instance effective_instance(Instance inst, const BuilderFlags& bf) {
  if (bf.sigma > 0) inst.sigma = bf.sigma;
  if (!bf.t_hat.empty()) inst.t_hat = parse_deadline(bf.t_hat);
  return inst;
}

// "LABEL:token+token" -> benchmark configuration
BenchConfig parse_bench_config(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0)
    throw ValidationError("config '" + s + "' is not LABEL:flag+flag");
  BenchConfig c;
  c.label = s.substr(0, colon);
  std::string rest = s.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto plus = rest.find('+', pos);
    if (plus == std::string::npos) plus = rest.size();
    std::string tok = rest.substr(pos, plus - pos);
    pos = plus + 1;
    if (tok.empty()) continue;
    if (tok == "pcapsac" || tok == "rcapsac") c.formulation = tok;
    else if (tok == "bc0") c.pc.bc = PcapsacConfig::Bc::Bc0;
    else if (tok == "bc0bar") c.pc.bc = PcapsacConfig::Bc::Bc0Bar;
    else if (tok == "ord") c.pc.ordering_cuts = true;
    else if (tok == "sym") c.pc.symmetry_fix = true;
    else if (tok == "nosym") c.pc.symmetry_fix = false;
    else if (tok == "by") c.pc.branch = PcapsacConfig::Branch::BordersFirst;
    else if (tok == "yb") c.pc.branch = PcapsacConfig::Branch::MembersFirst;
    else if (tok == "empty") c.rc.empty_subset = true;
    else if (tok == "noempty") c.rc.empty_subset = false;
    else if (tok.rfind("sigma", 0) == 0) {
      int v = std::stoi(tok.substr(5));
      c.pc.sigma = v;
      c.rc.sigma = v;
    } else if (tok.rfind("that", 0) == 0) {
      double v = parse_deadline(tok.substr(4));
      c.pc.t_hat = v;
      c.rc.t_hat = v;
    } else {
      throw ValidationError("config token '" + tok + "' is unknown");
    }
  }
  return c;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double num_field(const std::string& s) {
  if (s == "inf") return kUnbounded;
  return s.empty() ? 0.0 : std::stod(s);
}

void print_report(const Instance& inst, const CapsacSolution& sol) {
  FeasibilityReport rep = validate(inst, sol);
  auto line = [](const char* what, bool ok) {
    std::printf("  %-12s %s\n", what, ok ? "ok" : "VIOLATED");
  };
  line("coverage", rep.coverage_ok);
  line("replication", rep.replication_ok);
  line("convexity", rep.convexity_ok);
  line("drones", rep.drones_ok);
  line("transmission", rep.transmission_ok);
  for (const auto& v : rep.violations)
    std::printf("  violation: %s\n", v.c_str());
  for (const auto& d : rep.demand_times)
    std::printf("  transfer %s -> %s: %s MB at %s MB/s = %s s\n",
                d.from.c_str(), d.to.c_str(), format_number(d.volume).c_str(),
                format_number(d.rate).c_str(),
                format_number(d.seconds).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covering-assignment toolkit for swarm-powered ad-hoc clouds"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double time_limit = 0.0;
  std::string solver_cmd;
  std::string engine = "highs";
  app.add_option("--seed", seed, "seed for every random draw")
      ->capture_default_str();
  app.add_option("--time-limit", time_limit, "backend time limit in seconds");
  app.add_option("--solver-cmd", solver_cmd,
                 "backend command template; overrides CAPSAC_SOLVER_CMD");
  app.add_option("--engine", engine, "bundled backend engine")
      ->check(CLI::IsMember({"highs", "glpk"}));

  auto make_opts = [&] {
    SolveOptions o;
    o.command = solver_cmd;
    o.time_limit = time_limit;
    o.engine = engine;
    return o;
  };
  int rc = 0;

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a grid instance");
  int g_rows = 0, g_cols = 0, g_drones = 0, g_capable = -1, g_sigma = 1;
  double g_spacing = 1.0, g_capacity = 10.0, g_lambda = 26.72, g_mu = 5.0;
  std::string g_storage = "sweep", g_name, g_that = "inf", g_out;
  gen->add_option("--rows", g_rows, "grid rows (distinct latitudes)");
  gen->add_option("--cols", g_cols, "grid columns (distinct longitudes)");
  gen->add_option("--spacing", g_spacing)->capture_default_str();
  gen->add_option("--drones", g_drones, "fleet size");
  gen->add_option("--capable", g_capable, "3D-capable drones (default: all)");
  gen->add_option("--capacity", g_capacity, "link capacity MB/s")
      ->capture_default_str();
  gen->add_option("--lambda", g_lambda, "processing seconds per photo")
      ->capture_default_str();
  gen->add_option("--mu", g_mu, "photo payload MB")->capture_default_str();
  gen->add_option("--storage", g_storage)
      ->check(CLI::IsMember({"sweep", "random"}))
      ->capture_default_str();
  gen->add_option("--sigma", g_sigma)->capture_default_str();
  gen->add_option("--t-hat", g_that, "deadline seconds or inf")
      ->capture_default_str();
  gen->add_option("--name", g_name,
                  "family name {u|w}-P<photos>D<drones>%D<pct>; fills fleet "
                  "fields and triggers the weighted recipe for w- names");
  gen->add_option("-o,--out", g_out, "output file (default stdout)");
  gen->callback([&] {
    bool weighted = false;
    if (!g_name.empty()) {
      NameSpec ns = parse_instance_name(g_name);
      weighted = ns.weighted;
      if (g_drones == 0) g_drones = ns.drones;
      if (g_capable < 0) g_capable = ns.capable_count;
      if (g_rows > 0 && g_cols == 0) {
        if (ns.photos % g_rows)
          throw ValidationError("--rows does not divide the photo count");
        g_cols = ns.photos / g_rows;
      } else if (g_cols > 0 && g_rows == 0) {
        if (ns.photos % g_cols)
          throw ValidationError("--cols does not divide the photo count");
        g_rows = ns.photos / g_cols;
      }
      if (g_rows * g_cols != ns.photos)
        throw ValidationError("rows x cols must equal the photo count in '" +
                              g_name + "'");
    }
    if (g_rows <= 0 || g_cols <= 0)
      throw ValidationError("gen needs --rows/--cols (or --name plus one)");
    if (g_drones <= 0) throw ValidationError("gen needs --drones or --name");
    GridOptions o;
    o.rows = g_rows;
    o.cols = g_cols;
    o.spacing = g_spacing;
    o.drones = g_drones;
    o.capable = g_capable < 0 ? g_drones : g_capable;
    o.capacity = g_capacity;
    o.lambda = g_lambda;
    o.mu = g_mu;
    o.storage = g_storage;
    o.sigma = g_sigma;
    o.t_hat = parse_deadline(g_that);
    o.seed = seed;
    o.name = g_name;
    Instance inst = generate_grid_instance(o);
    if (weighted) inst = apply_weighted_recipe(inst, {26.72, 5.0, seed});
    spill(g_out, write_instance(inst));
  });

  // ---- weight ----
  auto* weight = app.add_subcommand(
      "weight", "re-draw block weights on an existing instance");
  std::string w_in, w_out;
  double w_mean = 26.72, w_sd = 5.0;
  weight->add_option("instance", w_in)->required();
  weight->add_option("--mean", w_mean)->capture_default_str();
  weight->add_option("--sd", w_sd)->capture_default_str();
  weight->add_option("-o,--out", w_out);
  weight->callback([&] {
    Instance inst = load_instance(w_in);
    spill(w_out, write_instance(apply_weighted_recipe(inst,
                                                      {w_mean, w_sd, seed})));
  });

  // ---- build ----
  auto* build = app.add_subcommand("build", "write the MILP as an LP file");
  std::string b_in, b_out, b_prio;
  BuilderFlags b_bf;
  build->add_option("instance", b_in)->required();
  add_builder_flags(build, b_bf);
  build->add_option("-o,--out", b_out, "LP file (default stdout)");
  build->add_option("--priorities-out", b_prio, "branch priority file");
  build->callback([&] {
    Instance inst = load_instance(b_in);
    LinearModel model;
    if (b_bf.formulation == "pcapsac")
      model = build_pcapsac(inst, to_pc(b_bf)).model;
    else
      model = build_rcapsac(inst, to_rc(b_bf)).model;
    spill(b_out, write_lp(model));
    if (!b_prio.empty()) spill(b_prio, write_priorities(model));
  });

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve via the external backend");
  std::string s_in, s_out;
  BuilderFlags s_bf;
  bool s_keep = false;
  solve->add_option("instance", s_in)->required();
  add_builder_flags(solve, s_bf);
  solve->add_option("-o,--out", s_out, "solution JSON file");
  solve->add_flag("--keep-files", s_keep, "keep the backend scratch dir");
  solve->callback([&] {
    Instance inst = load_instance(s_in);
    SolveOptions opts = make_opts();
    opts.keep_files = s_keep;
    ModelSolution ms;
    CapsacSolution sol;
    if (s_bf.formulation == "pcapsac") {
      PcapsacModel built = build_pcapsac(inst, to_pc(s_bf));
      opts.write_priorities = !built.model.priority.empty();
      ms = solve_external(built.model, opts);
      sol = decode_pcapsac(inst, built, ms);
    } else {
      RcapsacModel built = build_rcapsac(inst, to_rc(s_bf));
      ms = solve_external(built.model, opts);
      sol = decode_rcapsac(inst, built, ms);
    }
    std::printf("status: %s\n", to_string(ms.status));
    if (ms.status == SolveStatus::Optimal ||
        ms.status == SolveStatus::Feasible ||
        ms.status == SolveStatus::TimeLimit) {
      std::printf("objective: %s\n", format_number(ms.objective).c_str());
      if (ms.best_bound)
        std::printf("bound: %s\n", format_number(*ms.best_bound).c_str());
      if (ms.node_count) std::printf("nodes: %lld\n", *ms.node_count);
    }
    std::printf("seconds: %s\n", format_number(ms.wall_seconds).c_str());
    if (!sol.regions.empty()) print_report(effective_instance(inst, s_bf), sol);
    if (!s_out.empty()) spill(s_out, write_solution(sol));
    if (ms.status == SolveStatus::Infeasible) rc = 2;
    if (ms.status == SolveStatus::Error)
      throw ValidationError("backend failed: " + ms.message);
  });

  // ---- oracle ----
  auto* oracle = app.add_subcommand("oracle", "exhaustive exact optimum");
  std::string o_in, o_out, o_that;
  int o_sigma = 0;
  double o_limit = 0.0;
  oracle->add_option("instance", o_in)->required();
  oracle->add_option("--sigma", o_sigma, "override the replication factor");
  oracle->add_option("--t-hat", o_that, "override the deadline (seconds|inf)");
  oracle->add_option("--limit", o_limit, "candidate evaluation budget");
  oracle->add_option("-o,--out", o_out, "solution JSON file");
  oracle->callback([&] {
    Instance inst = load_instance(o_in);
    if (o_sigma > 0) inst.sigma = o_sigma;
    if (!o_that.empty()) inst.t_hat = parse_deadline(o_that);
    check_instance(inst);
    OracleLimits lim;
    if (o_limit > 0) lim.max_candidates = o_limit;
    OracleResult res = brute_force_optimum(inst, lim);
    std::printf("status: %s\n", to_string(res.status));
    if (res.status == SolveStatus::Optimal) {
      std::printf("objective: %s\n", format_number(res.objective).c_str());
      print_report(inst, res.solution);
    }
    std::printf("examined: %llu\n",
                static_cast<unsigned long long>(res.examined));
    if (!o_out.empty()) spill(o_out, write_solution(res.solution));
    if (res.status == SolveStatus::Infeasible) rc = 2;
  });

  // ---- validate ----
  auto* val = app.add_subcommand("validate", "check a solution document");
  std::string v_in, v_sol;
  bool v_dedup = false;
  val->add_option("instance", v_in)->required();
  val->add_option("solution", v_sol)->required();
  val->add_flag("--dedup", v_dedup,
                "also report the physical makespan (photo charged once per "
                "drone)");
  val->callback([&] {
    Instance inst = load_instance(v_in);
    CapsacSolution sol = parse_solution(slurp(v_sol));
    FeasibilityReport rep = validate(inst, sol);
    print_report(inst, sol);
    std::printf("makespan: %s\n",
                format_number(makespan(inst, sol)).c_str());
    if (v_dedup)
      std::printf("makespan (dedup): %s\n",
                  format_number(makespan_dedup(inst, sol)).c_str());
    if (!rep.ok()) rc = 2;
  });

  // ---- reduce ----
  auto* reduce = app.add_subcommand(
      "reduce", "turn a geometric set-covering question into an instance");
  std::string r_in, r_out, r_cat, r_solver = "oracle";
  double r_side = 0.0;
  int r_k = 0;
  bool r_answer = false;
  reduce->add_option("gscp", r_in, "points/side/k document")->required();
  reduce->add_option("--side", r_side, "override the square side");
  reduce->add_option("--k", r_k, "override the square budget");
  reduce->add_flag("--answer", r_answer, "solve and print yes/no");
  reduce->add_option("--solver", r_solver)
      ->check(CLI::IsMember({"oracle", "milp"}));
  reduce->add_option("-o,--out", r_out, "reduced instance file");
  reduce->add_option("--catalog-out", r_cat, "subset cost table (JSON)");
  reduce->callback([&] {
    GscpInstance g = parse_gscp(slurp(r_in));
    if (r_side > 0.0) g.side = r_side;
    if (r_k > 0) g.k = r_k;
    check_gscp(g);
    GscpReduction red = reduce_to_capsac(g, seed);
    if (!r_cat.empty()) {
      nlohmann::ordered_json j;
      j["big"] = red.big;
      j["entries"] = nlohmann::ordered_json::array();
      for (const auto& e : red.catalog.entries) {
        nlohmann::ordered_json je;
        je["members"] = nlohmann::ordered_json::array();
        for (int p : e.members)
          je["members"].push_back(red.instance.photos[p].id);
        je["t"] = e.t;
        j["entries"].push_back(std::move(je));
      }
      spill(r_cat, j.dump(2) + "\n");
    }
    if (r_answer) {
      bool yes = answer_gscp(g, r_solver, make_opts(), seed);
      std::printf("%s\n", yes ? "yes" : "no");
      if (!r_out.empty()) spill(r_out, write_instance(red.instance));
    } else {
      spill(r_out, write_instance(red.instance));
    }
  });

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "run instances x configurations");
  std::vector<std::string> be_files, be_cfgs;
  int be_workers = 0;
  std::string be_out;
  bench->add_option("instances", be_files, "instance files")->required();
  bench->add_option("--config", be_cfgs,
                    "LABEL:token+token, e.g. PC:pcapsac+bc0bar+ord "
                    "(repeatable; tokens: pcapsac rcapsac bc0 bc0bar ord sym "
                    "nosym by yb empty noempty sigmaN thatX)");
  bench->add_option("--workers", be_workers, "parallel backend processes");
  bench->add_option("-o,--out", be_out, "records CSV (default stdout)");
  bench->callback([&] {
    std::vector<Instance> instances;
    for (const auto& f : be_files) instances.push_back(load_instance(f));
    std::vector<BenchConfig> configs;
    for (const auto& c : be_cfgs) configs.push_back(parse_bench_config(c));
    if (configs.empty()) {
      configs.push_back(parse_bench_config("P:pcapsac+bc0bar+sym"));
      configs.push_back(parse_bench_config("R:rcapsac+empty"));
    }
    spill(be_out,
          records_to_csv(run_benchmark(instances, configs, make_opts(),
                                       be_workers)));
  });

  // ---- profile ----
  auto* profile =
      app.add_subcommand("profile", "performance profile from bench records");
  std::string p_in, p_out, p_svg;
  profile->add_option("records", p_in, "bench CSV")->required();
  profile->add_option("-o,--out", p_out, "profile CSV (default stdout)");
  profile->add_option("--svg", p_svg, "also render the curves");
  profile->callback([&] {
    ProfileTable table = performance_profile(records_from_csv(slurp(p_in)));
    spill(p_out, profile_to_csv(table));
    if (!p_svg.empty()) spill(p_svg, render_profile_svg(table));
  });

  // ---- sweeps ----
  auto make_sweep_solver = [&](const std::string& which,
                               const std::string& formulation) -> SweepSolver {
    if (which == "oracle")
      return [](const Instance& v) {
        OracleResult r = brute_force_optimum(v);
        return SweepOutcome{r.status, r.objective, r.objective, r.solution};
      };
    SolveOptions opts = make_opts();
    return [opts, formulation](const Instance& v) {
      ModelSolution ms;
      CapsacSolution sol;
      if (formulation == "rcapsac") {
        RcapsacModel built = build_rcapsac(v);
        ms = solve_external(built.model, opts);
        sol = decode_rcapsac(v, built, ms);
      } else {
        PcapsacModel built = build_pcapsac(v);
        ms = solve_external(built.model, opts);
        sol = decode_pcapsac(v, built, ms);
      }
      return SweepOutcome{ms.status, ms.objective,
                          ms.best_bound.value_or(ms.objective), sol};
    };
  };

  auto* ssig = app.add_subcommand("sweep-sigma", "objective vs replication");
  std::string ss_in, ss_out, ss_svg, ss_solver = "oracle",
              ss_form = "pcapsac";
  int ss_from = 1, ss_to = 0;
  ssig->add_option("instance", ss_in)->required();
  ssig->add_option("--from", ss_from)->capture_default_str();
  ssig->add_option("--to", ss_to, "default: capable drone count");
  ssig->add_option("--solver", ss_solver)
      ->check(CLI::IsMember({"oracle", "milp"}));
  ssig->add_option("--formulation", ss_form)
      ->check(CLI::IsMember({"pcapsac", "rcapsac"}));
  ssig->add_option("-o,--out", ss_out, "sweep CSV (default stdout)");
  ssig->add_option("--svg", ss_svg);
  ssig->callback([&] {
    Instance inst = load_instance(ss_in);
    int m = static_cast<int>(inst.capable_indices().size());
    if (ss_to == 0) ss_to = m;
    std::vector<int> sigmas;
    for (int s = ss_from; s <= ss_to; ++s) sigmas.push_back(s);
    auto rows =
        sigma_sweep(inst, make_sweep_solver(ss_solver, ss_form), sigmas);
    spill(ss_out, sweep_to_csv(rows, "sigma"));
    if (!ss_svg.empty()) spill(ss_svg, render_sweep_svg(rows, "sigma"));
  });

  auto* sth = app.add_subcommand("sweep-that", "objective vs deadline");
  std::string st_in, st_out, st_svg, st_solver = "oracle",
              st_form = "pcapsac";
  double st_step = 0.5;
  sth->add_option("instance", st_in)->required();
  sth->add_option("--step", st_step)->capture_default_str();
  sth->add_option("--solver", st_solver)
      ->check(CLI::IsMember({"oracle", "milp"}));
  sth->add_option("--formulation", st_form)
      ->check(CLI::IsMember({"pcapsac", "rcapsac"}));
  sth->add_option("-o,--out", st_out, "sweep CSV (default stdout)");
  sth->add_option("--svg", st_svg);
  sth->callback([&] {
    Instance inst = load_instance(st_in);
    auto rows =
        t_hat_sweep(inst, make_sweep_solver(st_solver, st_form), st_step);
    spill(st_out, sweep_to_csv(rows, "t_hat"));
    if (!st_svg.empty()) spill(st_svg, render_sweep_svg(rows, "t_hat"));
  });

  // ---- plot ----
  auto* plot = app.add_subcommand("plot", "render a CSV as SVG curves");
  std::string pl_in, pl_out, pl_key;
  plot->add_option("csv", pl_in, "bench, profile or sweep CSV")->required();
  plot->add_option("-o,--out", pl_out, "SVG file (default stdout)");
  plot->add_option("--key-label", pl_key, "x axis label override");
  plot->callback([&] {
    std::string text = slurp(pl_in);
    auto first_line = text.substr(0, text.find('\n'));
    if (first_line == "# capsac-bench-csv v1") {
      spill(pl_out,
            render_profile_svg(performance_profile(records_from_csv(text))));
      return;
    }
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      lines.push_back(text.substr(pos, end - pos));
      pos = end + 1;
    }
    if (first_line == "# capsac-profile-csv v1") {
      ProfileTable table;
      bool header = false;
      for (const auto& ln : lines) {
        if (ln.empty() || ln[0] == '#') continue;
        auto f = split_csv_line(ln);
        if (!header) {
          header = true;
          for (std::size_t i = 1; i < f.size(); ++i) {
            table.formulations.push_back(f[i]);
            table.rho.emplace_back();
          }
          continue;
        }
        table.taus.push_back(num_field(f[0]));
        for (std::size_t i = 1; i < f.size() && i - 1 < table.rho.size(); ++i)
          table.rho[i - 1].push_back(num_field(f[i]));
      }
      spill(pl_out, render_profile_svg(table));
    } else if (first_line == "# capsac-sweep-csv v1") {
      std::vector<SweepRow> rows;
      std::string key_name = "key";
      bool header = false;
      for (const auto& ln : lines) {
        if (ln.empty() || ln[0] == '#') continue;
        auto f = split_csv_line(ln);
        if (!header) {
          header = true;
          if (!f.empty()) key_name = f[0];
          continue;
        }
        if (f.size() < 5)
          throw ValidationError("sweep CSV: expected 5 fields");
        rows.push_back({num_field(f[0]), status_from_string(f[1]),
                        num_field(f[2]), num_field(f[3]), f[4]});
      }
      spill(pl_out, render_sweep_svg(rows,
                                     pl_key.empty() ? key_name : pl_key));
    } else {
      throw ValidationError("unrecognized CSV header: " + first_line);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
