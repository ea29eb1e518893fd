#include "qcmod/run.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qcmod/mappings.hpp"
#include "qcmod/report_json.hpp"
#include "qcmod/verify.hpp"

namespace qcmod {

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list: " + spec);
  return out;
}

std::vector<double> parse_radii(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return parse_double_list(spec);
  const double start = std::stod(spec.substr(0, colon));
  const double end = std::stod(spec.substr(colon + 1));
  if (!(start > 0.0) || !(end > 0.0) || !(end < start)) {
    throw std::invalid_argument("radii range needs start > end > 0: " + spec);
  }
  std::vector<double> out;
  for (double r = start; r > end * (1.0 - 1e-9); r *= 0.1) out.push_back(r);
  return out;
}

namespace {

Vec origin(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

Vec parse_point(const std::string& spec, double alpha, int n) {
  if (spec == "origin" || spec == "0") return origin(n);
  if (spec == "e1") return e1_point(n);
  if (spec == "e2") return e2_point(RadialStretch(alpha, n));
  Vec p = parse_double_list(spec);
  if (static_cast<int>(p.size()) != n) {
    throw std::invalid_argument("point has wrong dimension: " + spec);
  }
  return p;
}

std::function<double(double)> radial_Q(const std::string& name, double alpha,
                                       int n) {
  if (name == "one") return [](double) { return 1.0; };
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "radial") {
    const RadialStretch m(alpha, n);
    return [m](double r) { return Q_radial(r, m); };
  }
  throw std::invalid_argument("unknown Q: " + name);
}

GridDensity grid_Q(const std::string& name, double alpha, int n,
                   const Grid& g) {
  GridDensity Q = GridDensity::zeros(g);
  if (name == "zero") return Q;
  if (name == "one") {
    for (auto& v : Q.values) v = 1.0;
    return Q;
  }
  if (name == "radial") {
    const RadialStretch m(alpha, n);
    for (std::size_t c = 0; c < Q.values.size(); ++c) {
      const double r = norm(g.cell_center(c));
      // zero outside the mapping's ball, matching the convention Q = 0 off D
      Q.values[c] = (r > 0.0 && r < 1.0) ? Q_radial(r, m) : 0.0;
    }
    return Q;
  }
  throw std::invalid_argument("unknown Q: " + name);
}

RadialTestDensity make_eta(const std::string& kind, double r1, double r2) {
  if (kind == "step") return RadialTestDensity::step(r1, r2);
  if (kind == "extremal") return RadialTestDensity::extremal(r1, r2);
  throw std::invalid_argument("unknown eta kind: " + kind);
}

json config_to_json(const RunConfig& c) {
  json j{{"command", c.command}, {"n", c.n},       {"seed", c.seed},
         {"format", c.format},   {"tol", c.tol},   {"max_iter", c.max_iter}};
  const std::string& cmd = c.command;
  if (cmd == "modulus-ring" || cmd == "verify-ring") {
    j["r1"] = c.r1;
    j["r2"] = c.r2;
    j["curves"] = c.curves;
    j["subdiv"] = c.subdiv;
    j["grid"] = c.grid;
  }
  if (cmd == "verify-ring") {
    j["map"] = c.map;
    j["alpha"] = c.alpha;
    j["eta"] = c.eta;
    j["Q"] = c.Q;
    j["refine"] = c.refine;
  }
  if (cmd == "verify-general") {
    j["map"] = c.map;
    j["alpha"] = c.alpha;
    j["Q"] = c.Q;
    j["refine"] = c.refine;
    j["grid"] = c.grid;
    j["family"] = c.family_file;
    if (!c.rho_file.empty()) j["rho"] = c.rho_file;
  }
  if (cmd == "integrability") {
    j["p"] = c.p;
    j["alphas"] = c.alphas.empty() ? std::vector<double>{c.alpha} : c.alphas;
  }
  if (cmd == "weakflat") {
    j["eps0"] = c.eps0;
    j["P"] = c.P;
    j["cn"] = c.cn;
    if (c.eps > 0.0) j["eps"] = c.eps;
    j["curves"] = c.curves;
    j["grid"] = c.grid;
  }
  if (cmd == "recenter") {
    j["eps1"] = c.eps1;
    j["eps1_star"] = c.eps1_star;
    j["samples"] = c.samples;
    j["check_moduli"] = c.check_moduli;
    if (c.check_moduli) {
      j["curves"] = c.curves;
      j["subdiv"] = c.subdiv;
      j["grid"] = c.grid;
    }
  }
  if (cmd == "cluster") {
    j["map"] = c.map;
    j["alpha"] = c.alpha;
    j["target"] = c.target;
    j["radii"] = c.radii;
    j["dirs"] = c.dirs;
  }
  return j;
}

void flatten_json(const json& j, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_json(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                   out);
    }
  } else if (j.is_array()) {
    std::string joined;
    for (const auto& v : j) {
      if (!joined.empty()) joined += ";";
      joined += v.is_string() ? v.get<std::string>() : v.dump();
    }
    out.emplace_back(prefix, joined);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string to_csv(const json& report) {
  // one row per report; sweeps arrive as {"results": [...]} with shared config
  std::vector<json> rows;
  if (report.contains("results") && report.at("results").is_array()) {
    for (const auto& r : report.at("results")) {
      json row = report;
      row.erase("results");
      row["result"] = r;
      rows.push_back(std::move(row));
    }
  } else {
    rows.push_back(report);
  }

  // align columns across rows: sweeps may drop fields (e.g. divergent cases)
  std::vector<std::map<std::string, std::string>> flats;
  std::map<std::string, bool> columns;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, std::string>> flat;
    flatten_json(row, "", flat);
    flats.emplace_back(flat.begin(), flat.end());
    for (const auto& [k, v] : flat) columns[k] = true;
  }
  std::string header, body;
  for (const auto& [k, unused] : columns) {
    if (!header.empty()) header += ",";
    header += k;
  }
  for (const auto& flat : flats) {
    std::string b;
    for (const auto& [k, unused] : columns) {
      if (!b.empty()) b += ",";
      const auto it = flat.find(k);
      if (it != flat.end()) b += it->second;
    }
    body += b + "\n";
  }
  return header + "\n" + body;
}

VerifyParams verify_params(const RunConfig& c) {
  VerifyParams p;
  p.fam_size = c.curves;
  p.subdiv = c.subdiv;
  p.refine = c.refine;
  p.grid_res = c.grid;
  p.tol = c.tol;
  p.max_iter = c.max_iter;
  return p;
}

int exit_for(const ModulusEstimate& e) { return e.converged ? 0 : 3; }

void resolve_grid(RunConfig& c, int n) {
  if (c.grid <= 0) c.grid = n >= 3 ? 64 : 256;
}

json run_modulus_ring(RunConfig& c, int& code) {
  resolve_grid(c, c.n);
  const Annulus a(origin(c.n), c.r1, c.r2);
  CurveFamily fam = ring_family(a, c.curves, c.subdiv);
  Grid grid = fit_grid(fam, c.grid);
  ModulusEstimate est =
      discrete_modulus(fam, grid, c.n, SolverOptions{c.tol, c.max_iter});
  const double analytic = analytic_ring_modulus(c.n, c.r1, c.r2);
  code = exit_for(est);
  return json{{"analytic", analytic},
              {"discrete", estimate_to_json(est)},
              {"relative_gap", std::abs(est.value - analytic) / analytic},
              {"grid_box", grid_to_json(grid)},
              {"note",
               "discrete value is a certified upper bound for the sampled "
               "family; finite samples underestimate the continuum modulus"}};
}

json run_verify_ring(RunConfig& c, int& code) {
  resolve_grid(c, c.n);
  const Annulus a(origin(c.n), c.r1, c.r2);
  MappingHandle map = make_mapping(c.map, c.alpha, c.n);
  VerificationReport rep =
      verify_ring_inequality(map, radial_Q(c.Q, c.alpha, c.n), a,
                             make_eta(c.eta, c.r1, c.r2), verify_params(c));
  code = exit_for(rep.lhs);
  return report_to_json(rep);
}

json run_verify_general(RunConfig& c, int& code) {
  if (c.family_file.empty()) {
    throw std::invalid_argument("verify-general needs --family FILE");
  }
  CurveFamily fam = load_family(c.family_file);
  if (fam.empty()) throw std::invalid_argument("family file holds no curves");
  const int n = fam.dim();
  resolve_grid(c, n);
  MappingHandle map = make_mapping(c.map, c.alpha, n);

  Grid source = fit_grid(fam, c.grid);
  json j;
  GridDensity rho = GridDensity::zeros(source);
  if (!c.rho_file.empty()) {
    rho = load_density(c.rho_file);
  } else {
    // default admissible density: the solver's extremal density for fam
    ModulusEstimate src =
        discrete_modulus(fam, source, n, SolverOptions{c.tol, c.max_iter}, &rho);
    j["source_modulus"] = estimate_to_json(src);
  }
  GridDensity Q = grid_Q(c.Q, c.alpha, n, rho.grid);
  VerificationReport rep =
      verify_general_inequality(map, Q, fam, rho, verify_params(c));
  code = exit_for(rep.lhs);
  j.update(report_to_json(rep));
  return j;
}

json run_integrability(const RunConfig& c, int&) {
  std::vector<double> alphas = c.alphas.empty() ? std::vector<double>{c.alpha} : c.alphas;
  json results = json::array();
  for (double alpha : alphas) {
    LpNormResult r = lp_norm_Q(RadialStretch(alpha, c.n), c.p);
    json item{{"alpha", alpha},
              {"threshold", r.threshold},
              {"finite", r.finite}};
    if (r.finite) {
      item["value"] = r.value;
      item["refinement_delta"] = r.refinement_delta;
    } else {
      item["value"] = "divergent";
    }
    results.push_back(std::move(item));
  }
  return json{{"results", std::move(results)}};
}

json run_weakflat(RunConfig& c, int& code) {
  resolve_grid(c, c.n);
  WeakFlatParams p;
  p.fam_size = c.curves;
  p.grid_res = c.grid;
  p.tol = c.tol;
  p.max_iter = c.max_iter;
  p.seed = c.seed;
  WeakFlatnessResult r =
      c.eps > 0.0
          ? weak_flatness_probe_at(origin(c.n), c.eps0, c.eps, c.cn, p)
          : weak_flatness_probe(origin(c.n), c.eps0, c.P, c.cn, p);
  code = exit_for(r.discrete);
  return weakflat_to_json(r);
}

json run_recenter(RunConfig& c, int& code) {
  resolve_grid(c, c.n);
  RecenterResult r = recenter_annulus(origin(c.n), c.eps1, c.eps1_star, c.samples);
  json j = recenter_to_json(r);
  if (c.check_moduli) {
    MinorizationCheck m =
        recenter_minorization(origin(c.n), c.eps1, c.eps1_star, verify_params(c));
    j["minorization"] = minorization_to_json(m);
    code = (m.original.converged && m.recentered.converged) ? 0 : 3;
  }
  return j;
}

json run_cluster(const RunConfig& c, int&) {
  if (c.radii.empty()) throw std::invalid_argument("cluster needs --radii");
  MappingHandle map = make_mapping(c.map, c.alpha, c.n);
  ClusterProbe probe = cluster_probe(map, parse_point(c.target, c.alpha, c.n),
                                     c.radii, c.dirs);
  return cluster_to_json(probe);
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult out;
  try {
    int code = 0;
    json report;
    RunConfig c = cfg;  // commands resolve defaults (grid resolution) in place
    if (c.command == "modulus-ring") report = run_modulus_ring(c, code);
    else if (c.command == "verify-ring") report = run_verify_ring(c, code);
    else if (c.command == "verify-general") report = run_verify_general(c, code);
    else if (c.command == "integrability") report = run_integrability(c, code);
    else if (c.command == "weakflat") report = run_weakflat(c, code);
    else if (c.command == "recenter") report = run_recenter(c, code);
    else if (c.command == "cluster") report = run_cluster(c, code);
    else throw std::invalid_argument("unknown command: " + cfg.command);

    report["config"] = config_to_json(c);
    out.exit_code = code;
    out.text = cfg.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (cfg.format != "csv" && cfg.format != "json") {
      throw std::invalid_argument("unknown format: " + cfg.format);
    }
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.text = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace qcmod
