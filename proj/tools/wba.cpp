// Experiment runner. A JSON config file seeds the parameter record, flags
// override individual fields, and every artifact echoes the resolved record.

#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wba/cli.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<std::string>> split_rows(const std::string& s) {
  std::vector<std::vector<std::string>> out;
  for (const std::string& row : split_list(s, ';')) out.push_back(split_list(row, ','));
  return out;
}

struct RawFlags {
  std::string theta, k, x, basis, offset;
};

void add_shared(CLI::App* cmd, wba::ExperimentConfig& cfg, RawFlags& raw,
                std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override it)");
  cmd->add_option("--digits", cfg.digits, "working precision in decimal digits");
  cmd->add_option("--threads", cfg.threads, "cap on OpenMP workers (0: default)");
  cmd->add_option("--seed", cfg.seed, "seed for randomized strategies");
  cmd->add_option("--budget", cfg.budget, "enumeration / candidate budget");
  cmd->add_option("--out", cfg.out_dir, "artifact directory");
  cmd->add_option("--theta", raw.theta,
                  "system rows, ';' between rows, ',' between entries; "
                  "phi, sqrt2, sqrt3, sqrt5 and p/q are understood");
  cmd->add_option("--k", raw.k, "weights, ',' separated, must sum to 1");
}

void add_game(CLI::App* cmd, wba::ExperimentConfig& cfg) {
  cmd->add_option("--curve", cfg.curve, "identity, parabola or cubic");
  cmd->add_option("--curve-a", cfg.curve_a, "left end of the parameter interval");
  cmd->add_option("--curve-b", cfg.curve_b, "right end of the parameter interval");
  cmd->add_option("--B0-lo", cfg.B0_lo, "initial interval, lower end");
  cmd->add_option("--B0-hi", cfg.B0_hi, "initial interval, upper end");
  cmd->add_option("--beta", cfg.beta, "Bob's contraction ratio in (0,1)");
  cmd->add_option("--c-hom", cfg.c_hom,
                  "homogeneous badness constant; omit to certify at --cert-Q");
  cmd->add_option("--cert-Q", cfg.cert_Q, "cutoff of the homogeneous certificate");
  cmd->add_option("--epsilon", cfg.epsilon, "danger threshold; omit for default");
  cmd->add_option("--strategy", cfg.strategy, "center, random or adversary");
  cmd->add_option("--depth", cfg.depth, "number of stages");
}

void add_ladder(CLI::App* cmd, wba::ExperimentConfig& cfg, RawFlags& raw) {
  cmd->add_option("--gamma", cfg.gamma,
                  "dual badness constant; omit to certify at --gamma-Q");
  cmd->add_option("--gamma-Q", cfg.gamma_Q, "cutoff of the dual certificate");
  cmd->add_option("--r-max", cfg.r_max, "number of scales T_r = R^r");
  cmd->add_option("--basis", raw.basis,
                  "subspace basis rows, ';' between rows (default: full space)");
  cmd->add_option("--offset", raw.offset, "affine offset, ',' separated");
}

}  // namespace

int main(int argc, char** argv) {
  // First pass only recovers --config so file values sit under the flags.
  std::string config_path;
  {
    CLI::App pre;
    pre.allow_extras();
    for (int i = 1; i < argc; ++i) {
      std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
      else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
  }

  wba::ExperimentConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = wba::load_config_file(config_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error (validation): %s\n", e.what());
      return 2;
    }
  }

  CLI::App app{"weighted Diophantine approximation experiments"};
  app.require_subcommand(1);
  app.footer(
      "dominant costs:\n"
      "  quality   (2Q+1)^m quality evaluations\n"
      "  game      sum over stages s of the R_game^s candidate scan, plus the\n"
      "            witness scan at R_game^depth\n"
      "  lambda    big-box enumeration at T_r = R_lambda^r, about\n"
      "            2^n gamma^-m T_r^m points at the top scale (printed before\n"
      "            the run)\n"
      "  transfer  ladder build plus (2Q+1)^m verifications\n"
      "  pipeline  all of the above in sequence");

  RawFlags raw;
  CLI::App* q = app.add_subcommand("quality", "exhaustive badness certificate");
  add_shared(q, cfg, raw, config_path);
  q->add_option("--kind", cfg.kind, "homogeneous, dual or twisted");
  q->add_option("--x", raw.x, "twisted target, ',' separated");
  q->add_option("--Q", cfg.Q, "sup-norm cutoff");

  CLI::App* g = app.add_subcommand("game", "interval game on a curve");
  add_shared(g, cfg, raw, config_path);
  add_game(g, cfg);

  CLI::App* l = app.add_subcommand("lambda", "lacunary vector ladder");
  add_shared(l, cfg, raw, config_path);
  add_ladder(l, cfg, raw);

  CLI::App* t = app.add_subcommand("transfer", "inhomogeneous transference check");
  add_shared(t, cfg, raw, config_path);
  add_ladder(t, cfg, raw);
  t->add_option("--x", raw.x, "target point, ',' separated");
  t->add_option("--Q", cfg.Q, "sup-norm cutoff (0: whole admissible range)");

  CLI::App* p = app.add_subcommand("pipeline",
                                   "certificate, ladder, game witness, transference");
  add_shared(p, cfg, raw, config_path);
  add_game(p, cfg);
  add_ladder(p, cfg, raw);
  p->add_option("--Q", cfg.Q, "transference cutoff (0: whole admissible range)");

  CLI11_PARSE(app, argc, argv);

  if (!raw.theta.empty()) cfg.theta_rows = split_rows(raw.theta);
  if (!raw.k.empty()) cfg.k_texts = split_list(raw.k, ',');
  if (!raw.x.empty()) cfg.x_texts = split_list(raw.x, ',');
  if (!raw.basis.empty()) cfg.subspace_basis = split_rows(raw.basis);
  if (!raw.offset.empty()) cfg.subspace_offset = split_list(raw.offset, ',');

  if (q->parsed()) cfg.command = "quality";
  else if (g->parsed()) cfg.command = "game";
  else if (l->parsed()) cfg.command = "lambda";
  else if (t->parsed()) cfg.command = "transfer";
  else cfg.command = "pipeline";

  return wba::run_command(cfg);
}
