#include "capsac/linear_model.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "capsac/instance.hpp"

namespace capsac {

namespace {

void check_name(const std::string& name) {
  if (name.empty() || name.size() > 255)
    throw ValidationError("model name must have 1..255 characters: '" + name +
                          "'");
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    throw ValidationError("model name must start with a letter or '_': '" +
                          name + "'");
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw ValidationError("model name has an invalid character: '" + name +
                            "'");
}

}  // namespace

int LinearModel::add_var(const std::string& name, VarKind kind, double lb,
                         double ub) {
  check_name(name);
  if (!var_index_.emplace(name, static_cast<int>(vars.size())).second)
    throw ValidationError("duplicate variable name: " + name);
  vars.push_back(Variable{name, kind, lb, ub});
  return static_cast<int>(vars.size()) - 1;
}

int LinearModel::add_binary(const std::string& name) {
  return add_var(name, VarKind::Binary, 0.0, 1.0);
}

int LinearModel::add_continuous(const std::string& name, double lb, double ub) {
  return add_var(name, VarKind::Continuous, lb, ub);
}

void LinearModel::add_con(const std::string& name,
                          std::vector<std::pair<int, double>> terms,
                          Sense sense, double rhs) {
  check_name(name);
  if (con_index_.count(name))
    throw ValidationError("duplicate constraint name: " + name);
  for (const auto& [v, c] : terms) {
    (void)c;
    if (v < 0 || v >= static_cast<int>(vars.size()))
      throw ValidationError("constraint " + name +
                            " references an unknown variable index");
  }
  con_index_.emplace(name, static_cast<int>(cons.size()));
  cons.push_back(Constraint{name, std::move(terms), sense, rhs});
}

void LinearModel::fix(int var, double value) {
  vars.at(var).lb = value;
  vars.at(var).ub = value;
}

int LinearModel::index_of(const std::string& name) const {
  auto it = var_index_.find(name);
  return it == var_index_.end() ? -1 : it->second;
}

int LinearModel::binary_count() const {
  int n = 0;
  for (const auto& v : vars) n += v.kind == VarKind::Binary ? 1 : 0;
  return n;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // integers print as integers; otherwise the shortest round-tripping form
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

// appends "+ 3 x" style terms, wrapping lines near 72 columns
class TermWriter {
 public:
  explicit TermWriter(std::string& out) : out_(out) {}

  void term(double coef, const std::string& name) {
    std::string piece = coef < 0 ? "- " : "+ ";
    double mag = std::fabs(coef);
    if (mag != 1.0) piece += format_number(mag) + " ";
    piece += name;
    append(piece);
  }

  void constant(double v) {
    std::string piece = v < 0 ? "- " : "+ ";
    piece += format_number(std::fabs(v));
    append(piece);
  }

  void raw(const std::string& s) { append(s); }

 private:
  void append(const std::string& piece) {
    if (col_ + piece.size() + 1 > 72) {
      out_ += "\n   ";
      col_ = 3;
    }
    out_ += " " + piece;
    col_ += piece.size() + 1;
  }

  std::string& out_;
  std::size_t col_ = 0;
};

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string write_lp(const LinearModel& m) {
  std::string out;
  out += "\\ " + m.name + "\n";
  out += "Minimize\n obj:";
  {
    TermWriter tw(out);
    if (m.objective.empty() && m.objective_constant == 0.0) {
      tw.constant(0.0);
    } else {
      for (const auto& [v, c] : m.objective) tw.term(c, m.vars[v].name);
      if (m.objective_constant != 0.0) tw.constant(m.objective_constant);
    }
  }
  out += "\nSubject To\n";
  for (const auto& con : m.cons) {
    out += " " + con.name + ":";
    TermWriter tw(out);
    for (const auto& [v, c] : con.terms) tw.term(c, m.vars[v].name);
    if (con.terms.empty()) tw.constant(0.0);
    const char* sense = con.sense == Sense::LE   ? "<="
                        : con.sense == Sense::GE ? ">="
                                                 : "=";
    tw.raw(sense);
    tw.raw(format_number(con.rhs));
    out += "\n";
  }

  // only non-default bounds are spelled out (default: 0 <= x < inf)
  std::string bounds;
  for (const auto& v : m.vars) {
    if (v.kind == VarKind::Binary) {
      if (v.lb == v.ub) bounds += " " + v.name + " = " + format_number(v.lb) + "\n";
      continue;
    }
    if (v.lb == 0.0 && v.ub == kInf) continue;
    if (v.lb == v.ub) {
      bounds += " " + v.name + " = " + format_number(v.lb) + "\n";
    } else if (v.lb == -kInf && v.ub == kInf) {
      bounds += " " + v.name + " free\n";
    } else if (v.lb == -kInf) {
      bounds += " -inf <= " + v.name + " <= " + format_number(v.ub) + "\n";
    } else if (v.ub == kInf) {
      bounds += " " + v.name + " >= " + format_number(v.lb) + "\n";
    } else if (v.lb == 0.0) {
      bounds += " " + v.name + " <= " + format_number(v.ub) + "\n";
    } else {
      bounds += " " + format_number(v.lb) + " <= " + v.name +
                " <= " + format_number(v.ub) + "\n";
    }
  }
  if (!bounds.empty()) out += "Bounds\n" + bounds;

  std::string bin;
  for (const auto& v : m.vars)
    if (v.kind == VarKind::Binary) bin += " " + v.name + "\n";
  if (!bin.empty()) out += "Binary\n" + bin;

  out += "End\n";
  return out;
}

std::string write_priorities(const LinearModel& m) {
  std::string out;
  for (const auto& v : m.vars) {
    auto it = m.priority.find(v.name);
    if (it != m.priority.end())
      out += v.name + " " + std::to_string(it->second) + "\n";
  }
  return out;
}

LinearModel lp_relaxation(const LinearModel& m) {
  LinearModel r = m;
  for (auto& v : r.vars) {
    if (v.kind != VarKind::Binary) continue;
    v.kind = VarKind::Continuous;
    v.lb = std::max(v.lb, 0.0);
    v.ub = std::min(v.ub, 1.0);
  }
  return r;
}

}  // namespace capsac
