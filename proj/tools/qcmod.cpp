#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcmod/run.hpp"

namespace {

void add_common(CLI::App* cmd, qcmod::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "deterministic seed");
  cmd->add_option("--format", cfg.format, "json | csv");
  cmd->add_option("--output", cfg.output, "write the report to a file");
  cmd->add_option("--tol", cfg.tol, "solver tolerance (relative)");
  cmd->add_option("--max-iter", cfg.max_iter, "solver iteration cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcmod: conformal moduli of curve families and ring-inequality checks"};
  app.require_subcommand(1);

  qcmod::RunConfig cfg;
  std::string radii_spec;
  std::string alpha_spec;

  auto* ring = app.add_subcommand("modulus-ring",
                                  "discrete vs analytic modulus of a ring family");
  ring->add_option("--n", cfg.n, "dimension");
  ring->add_option("--r1", cfg.r1, "inner radius");
  ring->add_option("--r2", cfg.r2, "outer radius");
  ring->add_option("--curves", cfg.curves, "family size");
  ring->add_option("--subdiv", cfg.subdiv, "vertices per curve");
  ring->add_option("--grid", cfg.grid, "cells per axis (default 256 for n=2, 64 for n>=3)");
  add_common(ring, cfg);

  auto* vring = app.add_subcommand("verify-ring", "ring inequality check");
  vring->add_option("--map", cfg.map, "identity | radial | radial-inverse");
  vring->add_option("--alpha", cfg.alpha, "stretch exponent");
  vring->add_option("--n", cfg.n, "dimension");
  vring->add_option("--r1", cfg.r1, "inner radius");
  vring->add_option("--r2", cfg.r2, "outer radius");
  vring->add_option("--eta", cfg.eta, "step | extremal");
  vring->add_option("--Q", cfg.Q, "one | radial | zero");
  vring->add_option("--curves", cfg.curves, "family size");
  vring->add_option("--subdiv", cfg.subdiv, "vertices per curve");
  vring->add_option("--refine", cfg.refine, "inserted vertices per segment");
  vring->add_option("--grid", cfg.grid, "cells per axis (default 256 for n=2, 64 for n>=3)");
  add_common(vring, cfg);

  auto* vgen = app.add_subcommand("verify-general",
                                  "general inequality check on a family file");
  vgen->add_option("--family", cfg.family_file, "CurveFamily JSON file")->required();
  vgen->add_option("--map", cfg.map, "identity | radial | radial-inverse");
  vgen->add_option("--alpha", cfg.alpha, "stretch exponent");
  vgen->add_option("--Q", cfg.Q, "one | radial | zero");
  vgen->add_option("--rho", cfg.rho_file,
                   "admissible density JSON (default: solver density)");
  vgen->add_option("--refine", cfg.refine, "inserted vertices per segment");
  vgen->add_option("--grid", cfg.grid, "cells per axis (default 256 for n=2, 64 for n>=3)");
  add_common(vgen, cfg);

  auto* integ = app.add_subcommand("integrability", "L^p threshold of Q");
  integ->add_option("--alpha", alpha_spec, "alpha or comma list for sweeps");
  integ->add_option("--p", cfg.p, "exponent p >= 1");
  integ->add_option("--n", cfg.n, "dimension");
  add_common(integ, cfg);

  auto* wf = app.add_subcommand("weakflat", "weak flatness probe at the origin");
  wf->add_option("--n", cfg.n, "dimension");
  wf->add_option("--eps0", cfg.eps0, "outer neighborhood radius");
  wf->add_option("--P", cfg.P, "target lower bound");
  wf->add_option("--cn", cfg.cn, "configured constant c_n");
  wf->add_option("--eps", cfg.eps, "probe at this eps instead of deriving from P");
  wf->add_option("--curves", cfg.curves, "family size");
  wf->add_option("--grid", cfg.grid, "cells per axis (default 256 for n=2, 64 for n>=3)");
  add_common(wf, cfg);

  auto* rec = app.add_subcommand("recenter", "nested-ball recentering arithmetic");
  rec->add_option("--n", cfg.n, "dimension");
  rec->add_option("--eps1", cfg.eps1, "inner radius");
  rec->add_option("--eps1-star", cfg.eps1_star, "outer radius");
  rec->add_option("--samples", cfg.samples, "sphere sample count");
  rec->add_flag("--check-moduli", cfg.check_moduli,
                "also compare ring moduli (minorization)");
  rec->add_option("--curves", cfg.curves, "family size for --check-moduli");
  rec->add_option("--subdiv", cfg.subdiv, "vertices per curve");
  rec->add_option("--grid", cfg.grid, "cells per axis (default 256 for n=2, 64 for n>=3)");
  add_common(rec, cfg);

  auto* cl = app.add_subcommand("cluster", "image oscillation on shrinking spheres");
  cl->add_option("--map", cfg.map, "identity | radial | radial-inverse");
  cl->add_option("--alpha", cfg.alpha, "stretch exponent");
  cl->add_option("--n", cfg.n, "dimension");
  cl->add_option("--target", cfg.target, "e1 | e2 | origin | x,y,...");
  cl->add_option("--radii", radii_spec, "list 1e-2,1e-3,... or range 1e-2:1e-6")
      ->required();
  cl->add_option("--dirs", cfg.dirs, "probe directions per radius");
  add_common(cl, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // one-line diagnostic on stderr
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!radii_spec.empty()) cfg.radii = qcmod::parse_radii(radii_spec);
    if (!alpha_spec.empty()) cfg.alphas = qcmod::parse_double_list(alpha_spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const qcmod::RunResult result = qcmod::run(cfg);
  if (result.exit_code == 2) {
    std::cerr << result.text;
    return 2;
  }
  if (cfg.output.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.output << "\n";
      return 2;
    }
    out << result.text;
  }
  return result.exit_code;
}
