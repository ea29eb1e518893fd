#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcmod {

/// One CLI invocation, fully resolved. Identical configs (same seed) produce
/// byte-identical reports.
struct RunConfig {
  std::string command;

  int n = 2;
  double r1 = 1.0;
  double r2 = 2.718281828459045;
  int curves = 720;
  int subdiv = 64;
  int refine = 0;
  int grid = 0;  // 0 = default resolution: 256 per axis for n=2, 64 for n>=3
  double tol = 1e-4;
  int max_iter = 20000;

  std::string map = "identity";
  double alpha = 1.0;
  std::string eta = "extremal";  // step | extremal
  std::string Q = "one";         // one | radial | zero

  std::string family_file;  // verify-general input
  std::string rho_file;     // optional admissible density

  double p = 1.0;
  std::vector<double> alphas;  // integrability sweep; falls back to {alpha}

  double eps0 = 0.5;
  double P = 1.0;
  double cn = 1.0;
  double eps = 0.0;  // weakflat: 0 = derive from P

  double eps1 = 1.0;
  double eps1_star = 2.0;
  int samples = 1000;
  bool check_moduli = false;

  std::string target = "e2";
  std::vector<double> radii;
  int dirs = 64;

  std::uint64_t seed = 0;
  std::string format = "json";  // json | csv
  std::string output;           // path; empty = stdout
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 validation error, 3 solver non-convergence
  std::string text;   // serialized report, or one-line diagnostic on error
};

RunResult run(const RunConfig& cfg);

/// Radii lists: "1e-2:1e-6" expands geometrically by factors of 10, a comma
/// list is taken verbatim.
std::vector<double> parse_radii(const std::string& spec);

std::vector<double> parse_double_list(const std::string& spec);

}  // namespace qcmod
