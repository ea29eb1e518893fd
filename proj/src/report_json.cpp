#include "qcmod/report_json.hpp"

#include <fstream>
#include <stdexcept>

namespace qcmod {

json family_to_json(const CurveFamily& fam) {
  json curves = json::array();
  for (const auto& c : fam.curves) {
    json verts = json::array();
    for (const auto& v : c.vertices) verts.push_back(v);
    curves.push_back(std::move(verts));
  }
  return json{{"label", fam.label},
              {"n", fam.empty() ? 0 : fam.dim()},
              {"curves", std::move(curves)}};
}

CurveFamily family_from_json(const json& j) {
  CurveFamily fam;
  fam.label = j.value("label", "");
  for (const auto& jc : j.at("curves")) {
    std::vector<Vec> verts;
    verts.reserve(jc.size());
    for (const auto& jv : jc) verts.push_back(jv.get<Vec>());
    fam.curves.emplace_back(std::move(verts));
  }
  if (j.contains("n") && !fam.empty() && fam.dim() != j.at("n").get<int>()) {
    throw std::invalid_argument("family dimension does not match its header");
  }
  return fam;
}

CurveFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open family file: " + path);
  json j;
  in >> j;
  return family_from_json(j);
}

void save_family(const CurveFamily& fam, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write family file: " + path);
  out << family_to_json(fam).dump(2) << "\n";
}

json grid_to_json(const Grid& g) {
  return json{{"lo", g.lo}, {"hi", g.hi}, {"res", g.res}};
}

Grid grid_from_json(const json& j) {
  return Grid(j.at("lo").get<Vec>(), j.at("hi").get<Vec>(),
              j.at("res").get<std::vector<int>>());
}

json density_to_json(const GridDensity& d) {
  return json{{"grid", grid_to_json(d.grid)}, {"values", d.values}};
}

GridDensity density_from_json(const json& j) {
  return GridDensity(grid_from_json(j.at("grid")),
                     j.at("values").get<std::vector<double>>());
}

GridDensity load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open density file: " + path);
  json j;
  in >> j;
  return density_from_json(j);
}

json estimate_to_json(const ModulusEstimate& e) {
  return json{{"value", e.value},
              {"iterations", e.iterations},
              {"converged", e.converged},
              {"residual", e.residual}};
}

json report_to_json(const VerificationReport& r) {
  json j{{"lhs", estimate_to_json(r.lhs)},
         {"margin", r.margin},
         {"slack", r.slack},
         {"verdict", verdict_name(r.verdict)},
         {"mapping", r.mapping},
         {"eta", r.eta_kind},
         {"n", r.n}};
  if (r.rhs_divergent) j["rhs"] = "divergent";
  else j["rhs"] = r.rhs;
  if (r.verdict != Verdict::Undetermined) {
    j["satisfied"] = (r.verdict == Verdict::Satisfied);
  }
  if (!r.center.empty()) {
    j["annulus"] = json{{"center", r.center}, {"r1", r.r1}, {"r2", r.r2}};
  }
  return j;
}

json weakflat_to_json(const WeakFlatnessResult& r) {
  return json{{"eps0", r.eps0},
              {"eps", r.eps},
              {"c_n", r.c_n},
              {"P", r.P},
              {"bound", r.bound},
              {"discrete", estimate_to_json(r.discrete)}};
}

json recenter_to_json(const RecenterResult& r) {
  return json{{"k0", r.k0},
              {"eps_t1", r.eps_t1},
              {"eps_t2", r.eps_t2},
              {"centers_checked", r.centers_checked},
              {"shifted_center", r.shifted_center}};
}

json minorization_to_json(const MinorizationCheck& m) {
  return json{{"original", estimate_to_json(m.original)},
              {"recentered", estimate_to_json(m.recentered)},
              {"slack", m.slack},
              {"holds", m.holds}};
}

json cluster_to_json(const ClusterProbe& p) {
  return json{{"target", p.target},
              {"radii", p.radii},
              {"oscillation", p.oscillation},
              {"oscillation_chordal", p.oscillation_chordal},
              {"extends", p.extends},
              {"limit", p.limit}};
}

}  // namespace qcmod
