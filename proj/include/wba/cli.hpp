#pragma once

// Batch experiment commands behind the wba binary: one parameter record for
// the five subcommands, JSON config loading, artifact emission into out_dir,
// and the exception mapping onto exit codes 0 pass, 2 validation, 3 budget
// or exhausted range, 4 violated invariant.

#include <cstdint>
#include <string>
#include <vector>

namespace wba {

struct ExperimentConfig {
  std::string command;
  int digits = 50;
  int threads = 0;  // 0 keeps the OpenMP default
  std::uint64_t seed = 1;
  long long budget = 100000000;
  std::string out_dir = ".";

  // system: rows of scalar literals; columns give the dual dimension m
  std::vector<std::vector<std::string>> theta_rows;
  std::vector<std::string> k_texts;

  // quality / transfer
  std::string kind = "homogeneous";
  std::vector<std::string> x_texts;
  // quality wants a positive cutoff; transfer and pipeline treat 0 as
  // "verify the whole admissible range".
  long long Q = 0;

  // game
  std::string curve = "identity";
  std::vector<std::vector<std::string>> curve_coeffs;  // overrides the name
  std::string curve_a = "0";
  std::string curve_b = "1";
  std::string B0_lo = "0";
  std::string B0_hi = "0";
  std::string beta = "0.5";
  std::string c_hom;  // empty: certify at cert_Q
  long long cert_Q = 1000;
  std::string epsilon;  // empty: solver default
  std::string strategy = "center";
  int depth = 5;

  // lambda / transfer / pipeline
  std::vector<std::vector<std::string>> subspace_basis;  // empty: full space
  std::vector<std::string> subspace_offset;              // empty: origin
  std::string gamma;  // empty: dual certificate at gamma_Q
  long long gamma_Q = 100;
  int r_max = 2;
};

// phi, sqrt2, sqrt3, sqrt5 and integer fractions p/q become exact quadratic
// literals; anything else passes through untouched.
std::string expand_scalar_shorthand(const std::string& s);

// Strict field whitelist; unknown keys are validation errors. Values merge
// onto the defaults above; the binary applies flag overrides afterwards.
ExperimentConfig load_config_file(const std::string& path);

int cmd_quality(const ExperimentConfig& cfg);
int cmd_game(const ExperimentConfig& cfg);
int cmd_lambda(const ExperimentConfig& cfg);
int cmd_transfer(const ExperimentConfig& cfg);
int cmd_pipeline(const ExperimentConfig& cfg);

// Dispatch on cfg.command with the shared exit-code mapping; errors print
// one machine-readable line "error (<class>): <message>" on stderr.
int run_command(const ExperimentConfig& cfg);

}  // namespace wba
