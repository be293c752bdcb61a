#include "flagtriad/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace flagtriad::io {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

json mult_map_json(const std::map<ExactVector, long, decltype(&lex_less)>& m) {
  json arr = json::array();
  for (const auto& [root, value] : m) {
    json e;
    e["root"] = vec_json(root);
    e["value"] = value;
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

json vec_json(const ExactVector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(rat_to_string(x));
  return arr;
}

ExactVector vec_from_json(const json& j) {
  ExactVector v;
  for (const auto& x : j) {
    if (x.is_number_integer())
      v.push_back(Rat(x.get<long long>()));
    else
      v.push_back(rat_from_string(x.get<std::string>()));
  }
  return v;
}

json triad_to_json(const triads::SymmetricTriad& t) {
  json j;
  j["ambient_dim"] = t.ambient_dim;
  json st = json::array(), s = json::array(), w = json::array();
  for (const auto& r : t.sigma_tilde) st.push_back(vec_json(r));
  for (const auto& r : t.sigma) s.push_back(vec_json(r));
  for (const auto& r : t.w) w.push_back(vec_json(r));
  j["sigma_tilde"] = st;
  j["sigma"] = s;
  j["w"] = w;
  if (!t.m.empty()) j["m"] = mult_map_json(t.m);
  if (!t.n.empty()) j["n"] = mult_map_json(t.n);
  return j;
}

triads::SymmetricTriad triad_from_json(const json& j) {
  const std::size_t dim = j.at("ambient_dim").get<std::size_t>();
  std::vector<ExactVector> sigma, w;
  for (const auto& r : j.at("sigma")) sigma.push_back(vec_from_json(r));
  for (const auto& r : j.at("w")) w.push_back(vec_from_json(r));
  auto t = triads::make_triad(dim, sigma, w);
  if (j.contains("sigma_tilde")) {
    std::vector<ExactVector> st;
    for (const auto& r : j.at("sigma_tilde")) st.push_back(vec_from_json(r));
    t.sigma_tilde = rootsys::sorted_unique(std::move(st));
  }
  auto read_map = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    for (const auto& e : j.at(key)) target[vec_from_json(e.at("root"))] = e.at("value").get<long>();
  };
  read_map("m", t.m);
  read_map("n", t.n);
  return t;
}

std::string write_triad(const triads::SymmetricTriad& t) { return triad_to_json(t).dump(2); }

triads::SymmetricTriad read_triad(const std::string& text) {
  return triad_from_json(json::parse(text));
}

triads::SymmetricTriad read_triad_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open triad file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_triad(ss.str());
}

json root_system_json(const rootsys::RootSystem& rs) {
  json j;
  j["label"] = rs.label;
  j["ambient_dim"] = rs.ambient_dim();
  j["count"] = rs.roots.size();
  json roots = json::array();
  for (const auto& r : rs.roots) roots.push_back(vec_json(r));
  j["roots"] = roots;
  json simple = json::array();
  for (const auto& r : rs.simple) simple.push_back(vec_json(r));
  j["simple"] = simple;
  bool nontrivial = false;
  for (const auto& r : rs.roots)
    if (rs.mult(r) != 1) nontrivial = true;
  if (nontrivial) {
    json mult = json::array();
    for (const auto& r : rs.roots) {
      json e;
      e["root"] = vec_json(r);
      e["value"] = rs.mult(r);
      mult.push_back(e);
    }
    j["multiplicity"] = mult;
  }
  return j;
}

json axiom_report_json(const triads::AxiomReport& rep) {
  json j;
  j["all_pass"] = rep.all_pass();
  json conds = json::array();
  for (const auto& c : rep.conditions) {
    json e;
    e["condition"] = c.index;
    e["pass"] = c.pass;
    if (!c.pass) e["witness"] = c.witness;
    conds.push_back(e);
  }
  j["conditions"] = conds;
  return j;
}

json regularity_json(const triads::RegularityReport& rep) {
  json j;
  j["regular"] = rep.regular;
  json v = json::array();
  for (const auto& viol : rep.violations) {
    json e;
    e["root"] = vec_json(viol.root);
    e["class"] = viol.klass == 'S' ? "sigma: <lambda,H> in pi Z" : "w: <alpha,H> in pi/2 + pi Z";
    e["pairing_over_pi"] = rat_to_string(viol.pairing);
    v.push_back(e);
  }
  j["violations"] = v;
  return j;
}

json cell_json(const triads::CellData& cell) {
  json j;
  j["alpha_tilde"] = vec_json(cell.alpha_tilde);
  j["m"] = cell.m_coeffs;
  json h = json::array();
  for (const auto& p : cell.h_basis) h.push_back(vec_json(p.q));
  j["h_basis_over_pi"] = h;
  json s = json::array();
  for (const auto& a : cell.simple_sigma) s.push_back(vec_json(a));
  j["simple_sigma"] = s;
  return j;
}

json intersection_json(const flags::IntersectionResult& res) {
  json j;
  if (res.kind == flags::IntersectionResult::Kind::Discrete) {
    j["kind"] = "discrete";
    j["cardinality"] = res.cardinality;
    json pts = json::array();
    for (const auto& p : res.points) pts.push_back(vec_json(p));
    j["points"] = pts;
  } else {
    j["kind"] = "continuum";
    json w;
    w["root"] = vec_json(res.witness.root);
    w["class"] =
        res.witness.klass == 'S' ? "sigma: <lambda,H> in pi Z" : "w: <alpha,H> in pi/2 + pi Z";
    w["pairing_over_pi"] = rat_to_string(res.witness.pairing);
    w["circle_through"] = vec_json(res.witness_x);
    j["witness"] = w;
  }
  return j;
}

json tightness_json(const flags::TightnessCount& t) {
  json j;
  j["count"] = t.count;
  if (t.sb_reference)
    j["sb_reference"] = *t.sb_reference;
  else
    j["sb_reference"] = "unavailable";
  return j;
}

json check_report_json(const oracle::CheckReport& rep) {
  json j;
  j["title"] = rep.title;
  if (rep.seed) j["seed"] = rep.seed;
  j["all_pass"] = rep.all_pass();
  json checks = json::array();
  for (const auto& l : rep.lines) {
    json e;
    e["name"] = l.name;
    e["residual"] = fmt_double(l.residual);
    e["threshold"] = fmt_double(l.threshold);
    e["pass"] = l.pass;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

namespace {

bool scalar_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

std::string scalar_str(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const json& j, int depth, std::string& out) {
  const std::string pad(2 * depth, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !scalar_array(value))) {
        out += pad + key + ":\n";
        render(value, depth + 1, out);
      } else if (scalar_array(value)) {
        out += pad + key + ": (";
        for (std::size_t i = 0; i < value.size(); ++i)
          out += (i ? ", " : "") + scalar_str(value[i]);
        out += ")\n";
      } else {
        out += pad + key + ": " + scalar_str(value) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (scalar_array(e)) {
        out += pad + "- (";
        for (std::size_t i = 0; i < e.size(); ++i) out += (i ? ", " : "") + scalar_str(e[i]);
        out += ")\n";
      } else if (e.is_object() || e.is_array()) {
        out += pad + "-\n";
        render(e, depth + 1, out);
      } else {
        out += pad + "- " + scalar_str(e) + "\n";
      }
    }
  } else {
    out += pad + scalar_str(j) + "\n";
  }
}

}  // namespace

std::string render_table(const json& j) {
  std::string out;
  render(j, 0, out);
  return out;
}

}  // namespace flagtriad::io
