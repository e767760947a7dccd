#include "capsac/instance.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace capsac {

using nlohmann::ordered_json;

int Instance::photo_index(const std::string& id) const {
  for (std::size_t i = 0; i < photos.size(); ++i)
    if (photos[i].id == id) return static_cast<int>(i);
  return -1;
}

int Instance::drone_index(const std::string& id) const {
  for (std::size_t i = 0; i < drones.size(); ++i)
    if (drones[i].id == id) return static_cast<int>(i);
  return -1;
}

int Instance::capable_count() const {
  int n = 0;
  for (const auto& d : drones) n += d.capable ? 1 : 0;
  return n;
}

std::vector<int> Instance::capable_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < drones.size(); ++i)
    if (drones[i].capable) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

// union-find for the spanning-tree check
int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) {
    p[x] = p[p[x]];
    x = p[x];
  }
  return x;
}

}  // namespace

void check_instance(const Instance& inst) {
  if (inst.photos.empty()) throw ValidationError("instance has no photos");
  if (inst.drones.empty()) throw ValidationError("instance has no drones");

  std::set<std::string> seen;
  for (const auto& p : inst.photos) {
    if (p.id.empty()) throw ValidationError("photo with empty id");
    if (!seen.insert(p.id).second)
      throw ValidationError("duplicate photo id: " + p.id);
    if (!(p.lambda > 0.0))
      throw ValidationError("photo " + p.id + ": lambda must be positive");
    if (!(p.mu > 0.0))
      throw ValidationError("photo " + p.id + ": mu must be positive");
  }

  std::set<std::string> drone_ids;
  for (const auto& d : inst.drones) {
    if (d.id.empty()) throw ValidationError("drone with empty id");
    if (!drone_ids.insert(d.id).second)
      throw ValidationError("duplicate drone id: " + d.id);
  }

  for (const auto& p : inst.photos)
    if (!drone_ids.count(p.stored_on))
      throw ValidationError("photo " + p.id + " stored on unknown drone '" +
                            p.stored_on + "'");

  const int n = static_cast<int>(inst.drones.size());
  if (static_cast<int>(inst.links.size()) != n - 1)
    throw ValidationError("links do not form a spanning tree: expected " +
                          std::to_string(n - 1) + " links, got " +
                          std::to_string(inst.links.size()));
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  for (const auto& l : inst.links) {
    int ia = inst.drone_index(l.a);
    int ib = inst.drone_index(l.b);
    if (ia < 0 || ib < 0)
      throw ValidationError("link references unknown drone '" +
                            (ia < 0 ? l.a : l.b) + "'");
    if (ia == ib) throw ValidationError("link from drone to itself: " + l.a);
    if (!(l.capacity > 0.0))
      throw ValidationError("link " + l.a + "-" + l.b +
                            ": capacity must be positive");
    int ra = uf_find(parent, ia), rb = uf_find(parent, ib);
    if (ra == rb)
      throw ValidationError("links contain a cycle through " + l.a + "-" + l.b);
    parent[ra] = rb;
  }

  const int cap = inst.capable_count();
  if (cap == 0) throw ValidationError("no capable drone in the fleet");
  if (inst.sigma < 1) throw ValidationError("sigma must be at least 1");
  if (inst.sigma > cap)
    throw ValidationError("sigma " + std::to_string(inst.sigma) +
                          " exceeds capable drone count " + std::to_string(cap));
  if (!(inst.t_hat > 0.0))
    throw ValidationError("t_hat must be positive or \"inf\"");
}

namespace {

double read_t_hat(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kUnbounded;
    throw ValidationError("t_hat: expected a number or \"inf\"");
  }
  if (!j.is_number()) throw ValidationError("t_hat: expected a number or \"inf\"");
  return j.get<double>();
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("instance is not valid JSON: ") + e.what());
  }
  Instance inst;
  try {
    inst.name = j.value("name", std::string());
    inst.sigma = j.value("sigma", 1);
    inst.t_hat = j.contains("t_hat") ? read_t_hat(j.at("t_hat")) : kUnbounded;
    for (const auto& jp : j.at("photos")) {
      Photo p;
      p.id = jp.at("id").get<std::string>();
      p.lng = jp.at("lng").get<double>();
      p.lat = jp.at("lat").get<double>();
      p.lambda = jp.at("lambda").get<double>();
      p.mu = jp.at("mu").get<double>();
      p.stored_on = jp.at("stored_on").get<std::string>();
      inst.photos.push_back(std::move(p));
    }
    for (const auto& jd : j.at("drones")) {
      Drone d;
      d.id = jd.at("id").get<std::string>();
      d.capable = jd.at("capable").get<bool>();
      inst.drones.push_back(std::move(d));
    }
    if (j.contains("links")) {
      for (const auto& jl : j.at("links")) {
        Link l;
        l.a = jl.at("a").get<std::string>();
        l.b = jl.at("b").get<std::string>();
        l.capacity = jl.at("capacity").get<double>();
        inst.links.push_back(std::move(l));
      }
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ValidationError(std::string("malformed instance document: ") + e.what());
  }
  check_instance(inst);
  return inst;
}

std::string write_instance(const Instance& inst) {
  ordered_json j;
  j["name"] = inst.name;
  j["sigma"] = inst.sigma;
  if (inst.bounded_deadline())
    j["t_hat"] = inst.t_hat;
  else
    j["t_hat"] = "inf";
  j["photos"] = ordered_json::array();
  for (const auto& p : inst.photos) {
    ordered_json jp;
    jp["id"] = p.id;
    jp["lng"] = p.lng;
    jp["lat"] = p.lat;
    jp["lambda"] = p.lambda;
    jp["mu"] = p.mu;
    jp["stored_on"] = p.stored_on;
    j["photos"].push_back(std::move(jp));
  }
  j["drones"] = ordered_json::array();
  for (const auto& d : inst.drones) {
    ordered_json jd;
    jd["id"] = d.id;
    jd["capable"] = d.capable;
    j["drones"].push_back(std::move(jd));
  }
  j["links"] = ordered_json::array();
  for (const auto& l : inst.links) {
    ordered_json jl;
    jl["a"] = l.a;
    jl["b"] = l.b;
    jl["capacity"] = l.capacity;
    j["links"].push_back(std::move(jl));
  }
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write instance file: " + path);
  out << write_instance(inst);
}

NameSpec parse_instance_name(const std::string& name) {
  // {u|w}-P{photos}D{drones}%D{capable_pct}, e.g. u-P200D5%D90
  NameSpec spec;
  const char* s = name.c_str();
  auto fail = [&]() -> NameSpec {
    throw ValidationError("instance name does not match "
                          "{u|w}-P{n}D{n}%D{n}: '" + name + "'");
  };
  if (*s != 'u' && *s != 'w') return fail();
  spec.weighted = (*s == 'w');
  ++s;
  if (*s++ != '-') return fail();
  if (*s++ != 'P') return fail();
  auto read_int = [&](int& out) {
    if (!std::isdigit(static_cast<unsigned char>(*s))) return false;
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(*s))) v = v * 10 + (*s++ - '0');
    out = static_cast<int>(v);
    return true;
  };
  if (!read_int(spec.photos)) return fail();
  if (*s++ != 'D') return fail();
  if (!read_int(spec.drones)) return fail();
  if (*s++ != '%') return fail();
  if (*s++ != 'D') return fail();
  if (!read_int(spec.capable_pct)) return fail();
  if (*s != '\0') return fail();
  if (spec.photos <= 0 || spec.drones <= 0) return fail();
  spec.capable_count = spec.drones * spec.capable_pct / 100;
  return spec;
}

std::string format_instance_name(const NameSpec& spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%c-P%dD%d%%D%d", spec.weighted ? 'w' : 'u',
                spec.photos, spec.drones, spec.capable_pct);
  return buf;
}

}  // namespace capsac
