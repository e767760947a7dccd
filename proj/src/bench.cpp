#include "capsac/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "capsac/network.hpp"

namespace capsac {

namespace {

std::string squash(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos && s.find(' ') != 0)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

// One CSV line -> fields; quotes per RFC 4180, no embedded newlines.
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_num(const std::string& s) {
  if (s.empty()) return 0.0;
  if (s == "inf") return kUnbounded;
  return std::stod(s);
}

RunRecord run_one(const Instance& inst, const BenchConfig& cfg,
                  const SolveOptions& opts) {
  RunRecord rec;
  rec.instance = inst.name.empty() ? "unnamed" : inst.name;
  rec.formulation = cfg.label;
  rec.config = describe_config(cfg);
  try {
    LinearModel model;
    if (cfg.formulation == "pcapsac") {
      model = build_pcapsac(inst, cfg.pc).model;
    } else if (cfg.formulation == "rcapsac") {
      model = build_rcapsac(inst, cfg.rc).model;
    } else {
      throw ValidationError("unknown formulation '" + cfg.formulation + "'");
    }

    ModelSolution lp = solve_external(lp_relaxation(model), opts);
    rec.root_seconds = lp.wall_seconds;
    const bool root_ok = lp.status == SolveStatus::Optimal;
    if (root_ok) rec.root_bound = lp.objective;

    SolveOptions mo = opts;
    mo.write_priorities = !model.priority.empty();
    ModelSolution mip = solve_external(model, mo);
    rec.status = mip.status;
    rec.total_seconds = mip.wall_seconds;
    rec.nodes = mip.node_count;
    rec.message = squash(mip.message);

    if (mip.status == SolveStatus::Optimal ||
        mip.status == SolveStatus::Feasible ||
        mip.status == SolveStatus::TimeLimit) {
      rec.objective = mip.objective;
      double fb = mip.best_bound.value_or(root_ok ? rec.root_bound
                                                  : mip.objective);
      if (root_ok) fb = std::max(fb, rec.root_bound);  // root never beats it
      rec.final_bound = fb;
      if (root_ok && std::fabs(rec.objective) > 1e-12) {
        double ref = std::fabs(rec.objective);
        rec.gap0 =
            std::max(0.0, (rec.objective - rec.root_bound) / ref) * 100.0;
        rec.gap = std::max(0.0, (rec.objective - fb) / ref) * 100.0;
      }
    }
  } catch (const std::exception& e) {
    rec.status = SolveStatus::Error;
    rec.message = squash(e.what());
  }
  return rec;
}

void sort_records(std::vector<RunRecord>& v) {
  std::sort(v.begin(), v.end(), [](const RunRecord& a, const RunRecord& b) {
    if (a.instance != b.instance) return a.instance < b.instance;
    if (a.formulation != b.formulation) return a.formulation < b.formulation;
    return a.config < b.config;
  });
}

}  // namespace

std::string describe_config(const BenchConfig& cfg) {
  std::string s = cfg.formulation;
  if (cfg.formulation == "pcapsac") {
    s += cfg.pc.bc == PcapsacConfig::Bc::Bc0Bar ? "+bc0bar" : "+bc0";
    if (cfg.pc.ordering_cuts) s += "+ord";
    s += cfg.pc.symmetry_fix ? "+sym" : "+nosym";
    if (cfg.pc.branch == PcapsacConfig::Branch::BordersFirst) s += "+by";
    if (cfg.pc.branch == PcapsacConfig::Branch::MembersFirst) s += "+yb";
    if (cfg.pc.sigma) s += "+sigma" + std::to_string(*cfg.pc.sigma);
    if (cfg.pc.t_hat) s += "+that" + format_number(*cfg.pc.t_hat);
  } else {
    s += cfg.rc.empty_subset ? "+empty" : "+noempty";
    if (cfg.rc.sigma) s += "+sigma" + std::to_string(*cfg.rc.sigma);
    if (cfg.rc.t_hat) s += "+that" + format_number(*cfg.rc.t_hat);
  }
  return s;
}

std::vector<RunRecord> run_benchmark(const std::vector<Instance>& instances,
                                     const std::vector<BenchConfig>& configs,
                                     const SolveOptions& opts, int workers) {
  std::vector<std::pair<const Instance*, const BenchConfig*>> jobs;
  for (const auto& i : instances)
    for (const auto& c : configs) jobs.emplace_back(&i, &c);
  const int n = static_cast<int>(jobs.size());
  std::vector<RunRecord> out(n);
  if (n == 0) return out;

  int w = workers > 0 ? workers
                      : static_cast<int>(
                            std::max(1u, std::thread::hardware_concurrency()));
  w = std::min({w, n, 8});
  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n) break;
      out[i] = run_one(*jobs[i].first, *jobs[i].second, opts);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  sort_records(out);
  return out;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out = "# capsac-bench-csv v1\n";
  out +=
      "instance,formulation,config,status,objective,root_bound,final_bound,"
      "gap0,gap,root_seconds,total_seconds,nodes,message\n";
  for (const auto& r : records) {
    out += csv_field(r.instance) + ',' + csv_field(r.formulation) + ',' +
           csv_field(r.config) + ',' + to_string(r.status) + ',' +
           format_number(r.objective) + ',' + format_number(r.root_bound) +
           ',' + format_number(r.final_bound) + ',' + format_number(r.gap0) +
           ',' + format_number(r.gap) + ',' + format_number(r.root_seconds) +
           ',' + format_number(r.total_seconds) + ',' +
           (r.nodes ? std::to_string(*r.nodes) : std::string()) + ',' +
           csv_field(r.message) + '\n';
  }
  return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
  std::vector<RunRecord> out;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header row
      header_seen = true;
      continue;
    }
    auto f = csv_split(line);
    if (f.size() != 13)
      throw ValidationError("benchmark CSV: expected 13 fields, got " +
                            std::to_string(f.size()));
    RunRecord r;
    r.instance = f[0];
    r.formulation = f[1];
    r.config = f[2];
    r.status = status_from_string(f[3]);
    r.objective = parse_num(f[4]);
    r.root_bound = parse_num(f[5]);
    r.final_bound = parse_num(f[6]);
    r.gap0 = parse_num(f[7]);
    r.gap = parse_num(f[8]);
    r.root_seconds = parse_num(f[9]);
    r.total_seconds = parse_num(f[10]);
    if (!f[11].empty()) r.nodes = std::stoll(f[11]);
    r.message = f[12];
    out.push_back(std::move(r));
  }
  return out;
}

ProfileTable performance_profile(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ValidationError("profile: no records");
  std::set<std::string> inames, fnames;
  std::map<std::pair<std::string, std::string>, const RunRecord*> by;
  for (const auto& r : records) {
    inames.insert(r.instance);
    fnames.insert(r.formulation);
    auto key = std::make_pair(r.instance, r.formulation);
    if (!by.emplace(key, &r).second)
      throw ValidationError("profile: duplicate run for (" + r.instance +
                            ", " + r.formulation + ")");
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::map<std::string, std::map<std::string, double>> ratio;
  std::vector<double> finite;
  for (const auto& iname : inames) {
    double bestT = inf;
    for (const auto& fname : fnames) {
      auto it = by.find({iname, fname});
      if (it == by.end())
        throw ValidationError("profile: no run for (" + iname + ", " + fname +
                              ")");
      const RunRecord& r = *it->second;
      bool solved = r.status == SolveStatus::Optimal ||
                    r.status == SolveStatus::Feasible ||
                    r.status == SolveStatus::TimeLimit;
      if (solved) bestT = std::min(bestT, std::max(r.total_seconds, 1e-12));
    }
    for (const auto& fname : fnames) {
      const RunRecord& r = *by[{iname, fname}];
      bool solved = r.status == SolveStatus::Optimal ||
                    r.status == SolveStatus::Feasible ||
                    r.status == SolveStatus::TimeLimit;
      double v = solved && std::isfinite(bestT)
                     ? std::max(r.total_seconds, 1e-12) / bestT
                     : inf;
      ratio[iname][fname] = v;
      if (std::isfinite(v)) finite.push_back(v);
    }
  }

  ProfileTable t;
  std::sort(finite.begin(), finite.end());
  finite.erase(std::unique(finite.begin(), finite.end(),
                           [](double a, double b) {
                             return std::fabs(a - b) < 1e-12;
                           }),
               finite.end());
  t.taus = finite.empty() ? std::vector<double>{1.0} : finite;
  t.formulations.assign(fnames.begin(), fnames.end());
  const double ninst = static_cast<double>(inames.size());
  for (const auto& fname : t.formulations) {
    std::vector<double> row;
    for (double tau : t.taus) {
      int cnt = 0;
      for (const auto& iname : inames)
        if (ratio[iname][fname] <= tau + 1e-12) ++cnt;
      row.push_back(cnt / ninst);
    }
    t.rho.push_back(std::move(row));
  }
  return t;
}

std::string profile_to_csv(const ProfileTable& table) {
  std::string out = "# capsac-profile-csv v1\ntau";
  for (const auto& f : table.formulations) out += ',' + csv_field(f);
  out += '\n';
  for (std::size_t j = 0; j < table.taus.size(); ++j) {
    out += format_number(table.taus[j]);
    for (std::size_t i = 0; i < table.formulations.size(); ++i)
      out += ',' + format_number(table.rho[i][j]);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> sigma_sweep(const Instance& inst,
                                  const SweepSolver& solve,
                                  const std::vector<int>& sigmas) {
  const int m = static_cast<int>(inst.capable_indices().size());
  for (int s : sigmas)
    if (s < 1 || s > m)
      throw ValidationError("sigma sweep: " + std::to_string(s) +
                            " is outside [1, " + std::to_string(m) + "]");
  std::vector<SweepRow> rows;
  double prev = 0.0;
  bool prev_set = false;
  for (int s : sigmas) {
    SweepRow row;
    row.key = s;
    try {
      Instance v = inst;
      v.sigma = s;
      SweepOutcome o = solve(v);
      row.status = o.status;
      row.objective = o.objective;
      row.bound = o.bound;
      if (o.status == SolveStatus::Optimal ||
          o.status == SolveStatus::Feasible) {
        if (prev_set && o.objective < prev - 1e-6)
          row.note = "objective decreased";
        prev = std::max(prev_set ? prev : o.objective, o.objective);
        prev_set = true;
      }
    } catch (const std::exception& e) {
      row.status = SolveStatus::Error;
      row.note = squash(e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> t_hat_sweep(const Instance& inst,
                                  const SweepSolver& solve, double step) {
  if (!(step > 0.0)) throw ValidationError("deadline sweep: step must be > 0");
  Instance base = inst;
  base.t_hat = kUnbounded;
  SweepOutcome o0 = solve(base);
  if (o0.status != SolveStatus::Optimal)
    throw ValidationError(std::string("deadline sweep: unconstrained solve "
                                      "ended as ") +
                          to_string(o0.status));
  std::vector<SweepRow> rows;
  auto demands = active_demands(inst, o0.solution);
  if (demands.empty()) {
    rows.push_back({kUnbounded, o0.status, o0.objective, o0.bound,
                    "no transfers; the deadline never binds"});
    return rows;
  }
  auto rates = mmf_allocate(inst, demands).rate;
  auto times = transmission_times(demands, rates);
  double start = *std::max_element(times.begin(), times.end());

  double prev = 0.0;
  bool prev_set = false;
  for (double t = start; rows.size() < 100000; t -= step) {
    if (t <= 1e-12) {
      rows.push_back(
          {t, SolveStatus::Infeasible, 0.0, 0.0, "no positive deadline left"});
      break;
    }
    SweepRow row;
    row.key = t;
    try {
      Instance v = inst;
      v.t_hat = t;
      SweepOutcome o = solve(v);
      row.status = o.status;
      row.objective = o.objective;
      row.bound = o.bound;
    } catch (const std::exception& e) {
      row.status = SolveStatus::Error;
      row.note = squash(e.what());
    }
    if (row.status == SolveStatus::Infeasible) {
      rows.push_back(std::move(row));
      break;
    }
    bool usable = row.status == SolveStatus::Optimal ||
                  row.status == SolveStatus::Feasible;
    if (usable) {
      // tightening the deadline must not lower the makespan
      if (prev_set && row.objective < prev - 1e-6)
        row.note = "objective decreased";
      prev = std::max(prev_set ? prev : row.objective, row.objective);
      prev_set = true;
    }
    rows.push_back(std::move(row));
    if (!usable) break;  // error or time limit: the staircase is unreliable
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const std::string& key_name) {
  std::string out = "# capsac-sweep-csv v1\n";
  out += csv_field(key_name) + ",status,objective,bound,note\n";
  for (const auto& r : rows)
    out += format_number(r.key) + ',' + to_string(r.status) + ',' +
           format_number(r.objective) + ',' + format_number(r.bound) + ',' +
           csv_field(r.note) + '\n';
  return out;
}

// ---------- SVG rendering ----------

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double w = 640, h = 420, l = 62, r = 18, t = 18, b = 46;
  double x0, x1, y0, y1;  // data ranges
  double X(double x) const {
    double span = x1 > x0 ? x1 - x0 : 1.0;
    return l + (x - x0) / span * (w - l - r);
  }
  double Y(double y) const {
    double span = y1 > y0 ? y1 - y0 : 1.0;
    return h - b - (y - y0) / span * (h - t - b);
  }
};

std::string svg_open(const Frame& f) {
  std::string s =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(f.w) +
      "\" height=\"" + px(f.h) + "\" viewBox=\"0 0 " + px(f.w) + " " +
      px(f.h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return s;
}

std::string axis_lines(const Frame& f, const std::string& xlabel,
                       const std::string& ylabel) {
  std::string s;
  s += "<line x1=\"" + px(f.l) + "\" y1=\"" + px(f.h - f.b) + "\" x2=\"" +
       px(f.w - f.r) + "\" y2=\"" + px(f.h - f.b) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + px(f.l) + "\" y1=\"" + px(f.t) + "\" x2=\"" + px(f.l) +
       "\" y2=\"" + px(f.h - f.b) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + px((f.l + f.w - f.r) / 2) + "\" y=\"" + px(f.h - 8) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
       xlabel + "</text>\n";
  s += "<text x=\"14\" y=\"" + px((f.t + f.h - f.b) / 2) +
       "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 14 " +
       px((f.t + f.h - f.b) / 2) + ")\">" + ylabel + "</text>\n";
  return s;
}

std::string ticks(const Frame& f, bool xaxis, double lo, double hi, int n) {
  std::string s;
  for (int i = 0; i <= n; ++i) {
    double v = lo + (hi - lo) * i / n;
    char lab[32];
    std::snprintf(lab, sizeof lab, "%.3g", v);
    if (xaxis) {
      double x = f.X(v);
      s += "<line x1=\"" + px(x) + "\" y1=\"" + px(f.h - f.b) + "\" x2=\"" +
           px(x) + "\" y2=\"" + px(f.h - f.b + 4) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      s += "<text x=\"" + px(x) + "\" y=\"" + px(f.h - f.b + 16) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">" +
           lab + "</text>\n";
    } else {
      double y = f.Y(v);
      s += "<line x1=\"" + px(f.l - 4) + "\" y1=\"" + px(y) + "\" x2=\"" +
           px(f.l) + "\" y2=\"" + px(y) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      s += "<text x=\"" + px(f.l - 7) + "\" y=\"" + px(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">" +
           lab + "</text>\n";
    }
  }
  return s;
}

std::string no_data_svg(const std::string& xlabel, const std::string& ylabel) {
  Frame f;
  f.x0 = 0;
  f.x1 = 1;
  f.y0 = 0;
  f.y1 = 1;
  std::string s = svg_open(f) + axis_lines(f, xlabel, ylabel);
  s += "<text x=\"" + px(f.w / 2) + "\" y=\"" + px(f.h / 2) +
       "\" font-family=\"sans-serif\" font-size=\"15\" "
       "text-anchor=\"middle\" fill=\"#666\">no data</text>\n</svg>\n";
  return s;
}

}  // namespace

std::string render_profile_svg(const ProfileTable& table) {
  if (table.formulations.empty() || table.taus.empty())
    return no_data_svg("tau", "fraction solved");
  Frame f;
  f.x0 = 1.0;
  f.x1 = std::max(table.taus.back(), 1.0 + 1e-9);
  f.y0 = 0.0;
  f.y1 = 1.0;
  std::string s = svg_open(f) + axis_lines(f, "tau", "fraction within ratio");
  s += ticks(f, true, f.x0, f.x1, 5) + ticks(f, false, 0.0, 1.0, 4);
  for (std::size_t i = 0; i < table.formulations.size(); ++i) {
    const char* color = kPalette[i % 6];
    std::string d;
    double py = 0.0;
    for (std::size_t j = 0; j < table.taus.size(); ++j) {
      double x = f.X(table.taus[j]), y = f.Y(table.rho[i][j]);
      if (j == 0) {
        d = "M" + px(x) + " " + px(y);
      } else {
        d += " L" + px(x) + " " + px(py) + " L" + px(x) + " " + px(y);
      }
      py = table.rho[i][j];
    }
    // extend the last level to the right edge
    d += " L" + px(f.w - f.r) + " " + px(f.Y(py));
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" +
         std::string(color) + "\" stroke-width=\"1.8\"/>\n";
    double ly = f.t + 14 + 16 * static_cast<double>(i);
    s += "<line x1=\"" + px(f.l + 10) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
         px(f.l + 34) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" +
         std::string(color) + "\" stroke-width=\"1.8\"/>\n";
    s += "<text x=\"" + px(f.l + 40) + "\" y=\"" + px(ly) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" +
         table.formulations[i] + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const std::string& key_label) {
  std::vector<SweepRow> pts;
  for (const auto& r : rows)
    if (std::isfinite(r.key)) pts.push_back(r);
  if (pts.empty()) return no_data_svg(key_label, "objective");
  std::sort(pts.begin(), pts.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.key < b.key; });

  double xlo = pts.front().key, xhi = pts.back().key;
  double ylo = 0.0, yhi = 1.0;
  bool any = false;
  for (const auto& r : pts)
    if (r.status == SolveStatus::Optimal || r.status == SolveStatus::Feasible) {
      yhi = any ? std::max(yhi, r.objective) : std::max(1e-9, r.objective);
      any = true;
    }
  Frame f;
  f.x0 = xlo;
  f.x1 = xhi > xlo ? xhi : xlo + 1.0;
  f.y0 = ylo;
  f.y1 = yhi * 1.08;
  std::string s = svg_open(f) + axis_lines(f, key_label, "objective");
  s += ticks(f, true, f.x0, f.x1, 5) + ticks(f, false, f.y0, f.y1, 4);

  std::string d;
  bool started = false;
  double py = 0.0;
  for (const auto& r : pts) {
    if (r.status != SolveStatus::Optimal && r.status != SolveStatus::Feasible) {
      double x = f.X(r.key);
      s += "<line x1=\"" + px(x) + "\" y1=\"" + px(f.t) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(f.h - f.b) +
           "\" stroke=\"#d62728\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"4 3\"/>\n";
      s += "<text x=\"" + px(x + 4) + "\" y=\"" + px(f.t + 12) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#d62728\">" +
           to_string(r.status) + "</text>\n";
      continue;
    }
    double x = f.X(r.key), y = f.Y(r.objective);
    if (!started) {
      d = "M" + px(x) + " " + px(y);
      started = true;
    } else {
      d += " L" + px(x) + " " + px(f.Y(py)) + " L" + px(x) + " " + px(y);
    }
    py = r.objective;
    s += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) +
         "\" r=\"2.6\" fill=\"#1f77b4\"/>\n";
  }
  if (started)
    s += "<path d=\"" + d +
         "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.8\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace capsac
