#include "wba/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <utility>

#include "wba/curve.hpp"
#include "wba/jsonio.hpp"

namespace wba {

namespace {

Json strings_json(const std::vector<std::string>& xs) {
  Json a = Json::array();
  for (const std::string& s : xs) a.push_back(s);
  return a;
}

Json string_rows_json(const std::vector<std::vector<std::string>>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(strings_json(r));
  return a;
}

Json config_json(const ExperimentConfig& c) {
  return Json{{"command", c.command},
              {"digits", c.digits},
              {"threads", c.threads},
              {"seed", c.seed},
              {"budget", c.budget},
              {"out_dir", c.out_dir},
              {"theta", string_rows_json(c.theta_rows)},
              {"k", strings_json(c.k_texts)},
              {"kind", c.kind},
              {"x", strings_json(c.x_texts)},
              {"Q", c.Q},
              {"curve", c.curve},
              {"curve_coeffs", string_rows_json(c.curve_coeffs)},
              {"curve_a", c.curve_a},
              {"curve_b", c.curve_b},
              {"B0_lo", c.B0_lo},
              {"B0_hi", c.B0_hi},
              {"beta", c.beta},
              {"c_hom", c.c_hom},
              {"cert_Q", c.cert_Q},
              {"epsilon", c.epsilon},
              {"strategy", c.strategy},
              {"depth", c.depth},
              {"subspace_basis", string_rows_json(c.subspace_basis)},
              {"subspace_offset", strings_json(c.subspace_offset)},
              {"gamma", c.gamma},
              {"gamma_Q", c.gamma_Q},
              {"r_max", c.r_max}};
}

bool integer_fraction(const std::string& s, std::string& num, std::string& den) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == s.size()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == slash) return false;
  for (; i < slash; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  for (std::size_t j = slash + 1; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  num = s.substr(0, slash);
  den = s.substr(slash + 1);
  return true;
}

void expand_all(std::vector<std::string>& xs) {
  for (std::string& s : xs) s = expand_scalar_shorthand(s);
}

void expand_all(std::vector<std::vector<std::string>>& rows) {
  for (auto& r : rows) expand_all(r);
}

ExperimentConfig normalized(ExperimentConfig c) {
  expand_all(c.theta_rows);
  expand_all(c.k_texts);
  expand_all(c.x_texts);
  expand_all(c.curve_coeffs);
  expand_all(c.subspace_basis);
  expand_all(c.subspace_offset);
  for (std::string* s : {&c.curve_a, &c.curve_b, &c.B0_lo, &c.B0_hi, &c.beta,
                         &c.c_hom, &c.epsilon, &c.gamma})
    if (!s->empty()) *s = expand_scalar_shorthand(*s);
  return c;
}

Real scalar(const std::string& text, const Precision& P) {
  return parse_scalar(text).value(P);
}

std::string ivec_str(const IntVec& q) {
  std::string out = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(q[i]);
  }
  return out + ")";
}

std::string ivec_csv(const IntVec& q) {
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(q[i]);
  }
  return out;
}

SystemMatrix theta_from(const ExperimentConfig& c, const Precision& P) {
  if (c.theta_rows.empty()) throw ValidationError("theta is required");
  return make_system_matrix(c.theta_rows, P);
}

Weights weights_from(const ExperimentConfig& c, int m, const Precision& P) {
  if (c.k_texts.empty()) throw ValidationError("weights k are required");
  return make_weights(c.k_texts, m, P);
}

RealVec realvec_from(const std::vector<std::string>& texts, const Precision& P) {
  RealVec out;
  for (const std::string& s : texts) out.push_back(scalar(s, P));
  return out;
}

CurveSpec curve_from(const ExperimentConfig& c, const Precision& P) {
  Real a = scalar(c.curve_a, P), b = scalar(c.curve_b, P);
  if (!c.curve_coeffs.empty()) {
    std::vector<Poly> comps;
    for (const auto& row : c.curve_coeffs) comps.push_back(make_poly(row, P));
    return make_curve(std::move(comps), a, b, P);
  }
  return builtin_curve(c.curve, a, b, P);
}

BobStrategy strategy_from(const std::string& s) {
  if (s == "center") return BobStrategy::center;
  if (s == "random" || s == "seeded_random") return BobStrategy::seeded_random;
  if (s == "adversary") return BobStrategy::adversary;
  throw ValidationError("unknown strategy: " + s +
                        " (expected center, random or adversary)");
}

AffineSubspace subspace_from(const ExperimentConfig& c, int n, const Precision& P) {
  std::vector<RealVec> rows;
  if (c.subspace_basis.empty()) {
    for (int i = 0; i < n; ++i) {
      RealVec e(static_cast<std::size_t>(n), Real::of(0, P));
      e[static_cast<std::size_t>(i)] = Real::of(1, P);
      rows.push_back(std::move(e));
    }
  } else {
    for (const auto& r : c.subspace_basis) rows.push_back(realvec_from(r, P));
  }
  RealVec offset;
  if (!c.subspace_offset.empty()) offset = realvec_from(c.subspace_offset, P);
  return AffineSubspace{make_subspace(n, rows, P), std::move(offset)};
}

Weights sorted_desc(const Weights& k, const Precision& P) {
  std::vector<std::pair<Real, ScalarSpec>> tagged;
  for (int i = 0; i < k.n(); ++i)
    tagged.emplace_back(k.k[static_cast<std::size_t>(i)],
                        k.spec[static_cast<std::size_t>(i)]);
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& a, const auto& b) { return b.first < a.first; });
  std::vector<ScalarSpec> specs;
  for (auto& t : tagged) specs.push_back(t.second);
  return make_weights_from_specs(std::move(specs), k.m, P);
}

// Cost preview of the top-scale big-box enumeration, printed before the
// build so runaway parameters are visible up front.
void print_projected_cost(const char* tag, const SubspaceContext& ctx,
                          const Real& gamma, const Weights& k, int r_max,
                          long long budget, const Precision& P) {
  Weights ks = sorted_desc(k, P);
  Real R = lambda_scale_ratio(ctx, gamma, ks, P);
  Real T = pow(R, Real::of(r_max, P));
  double lam = ctx.lambda.to_double();
  double g = gamma.to_double();
  double td = T.to_double();
  double points = 1.0;
  int n = ks.n(), m = ks.m, t = ctx.t;
  for (int i = 0; i < n; ++i) {
    double beta = 1.0;
    if (i == n - t - 1) beta = std::pow(lam, t) * std::pow(g, -m);
    else if (i > n - t - 1) beta = 1.0 / lam;
    double ki = ks.k[static_cast<std::size_t>(i)].to_double();
    points *= 2.0 * beta * std::pow(td, m * ki) + 1.0;
  }
  double vrad = g / td;
  points *= std::pow(2.0 * std::floor(vrad) + 1.0, m);
  std::printf("%s R_lambda = %s\n", tag, R.str(30).c_str());
  std::printf("%s projected enumeration at T_%d = R^%d ~ %.3g points (budget %lld)\n",
              tag, r_max, r_max, points, budget);
}

struct LadderResult {
  LambdaSequence lam;
  Real gamma_initial;
  long long gamma_Q = 0;  // 0: gamma supplied, not certified
  bool derived = false;
  BadnessCertificate cert_dual;
};

LadderResult build_ladder(const ExperimentConfig& c, const char* tag,
                          const SystemMatrix& th, const Weights& k,
                          const Precision& P) {
  LadderResult out;
  AffineSubspace A = subspace_from(c, th.n, P);
  if (!c.gamma.empty()) {
    out.gamma_initial = scalar(c.gamma, P);
    std::printf("%s gamma = %s (supplied)\n", tag, out.gamma_initial.str(30).c_str());
  } else {
    out.cert_dual = lower_estimate(QualityKind::dual, th, k, std::nullopt,
                                   c.gamma_Q, P);
    out.derived = true;
    out.gamma_Q = c.gamma_Q;
    out.gamma_initial = out.cert_dual.gamma;
    std::printf("%s gamma = %s (dual certificate at Q = %lld, argmin u = %s)\n",
                tag, out.gamma_initial.str(30).c_str(), c.gamma_Q,
                ivec_str(out.cert_dual.argmin_q).c_str());
    if (!(out.gamma_initial > Real::of(0, P)))
      throw ValidationError(
          "dual certificate gives gamma = 0; the system admits an exact "
          "integer relation and no ladder exists");
  }
  SubspaceContext ctx = make_context(A.direction, P);
  print_projected_cost(tag, ctx, out.gamma_initial, k, c.r_max, c.budget, P);
  out.lam = build_lambda(th, k, A, out.gamma_initial, c.r_max, P, c.budget);
  if (out.lam.gamma != out.gamma_initial)
    std::printf("%s gamma halved to %s during the build\n", tag,
                out.lam.gamma.str(30).c_str());
  return out;
}

void print_entries(const char* tag, const LambdaSequence& lam) {
  for (const LambdaEntry& e : lam.entries)
    std::printf("%s r=%d: T_r = %s, u = %s, v = %s, psi = %s\n", tag, e.r,
                e.T_r.str(20).c_str(), ivec_str(e.w.u).c_str(),
                ivec_str(e.w.v).c_str(), e.psi.str(20).c_str());
}

std::string out_path(const ExperimentConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return c.out_dir + "/" + name;
}

void echo_config(const ExperimentConfig& c) {
  std::printf("config: %s\n", config_json(c).dump().c_str());
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error (budget): " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "error (invariant): " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error (invariant): " << e.what() << "\n";
    return 4;
  }
}

// Trimmed-down transfer step shared by cmd_transfer and the pipeline.
// Q <= 0 probes the admissible range first; empty.second reports the largest
// admissible sup norm (negative: no probe happened).
struct TransferOutcome {
  bool empty_range = false;
  long long Q_used = 0;
  TransferenceReport report;
};

TransferOutcome transfer_step(const RealVec& x, const LambdaSequence& lam,
                              const SystemMatrix& th, const Weights& k,
                              long long Q, const Precision& P) {
  TransferOutcome out;
  constexpr long long kProbe = 4000000000000000000LL;
  if (Q <= 0) {
    try {
      verify_fact_a(x, lam, th, k, kProbe, P);
      throw ValidationError(
          "admissible range exceeds enumeration capacity; set Q explicitly");
    } catch (const RangeExhausted& e) {
      Q = e.max_admissible_q;
    }
    if (Q < 1) {
      out.empty_range = true;
      return out;
    }
  }
  out.Q_used = Q;
  out.report = verify_fact_a(x, lam, th, k, Q, P);
  return out;
}

}  // namespace

std::string expand_scalar_shorthand(const std::string& s) {
  if (s == "phi") return "(1+1*sqrt(5))/2";
  if (s == "sqrt2") return "(0+1*sqrt(2))/1";
  if (s == "sqrt3") return "(0+1*sqrt(3))/1";
  if (s == "sqrt5") return "(0+1*sqrt(5))/1";
  std::string num, den;
  if (integer_fraction(s, num, den))
    return "(" + num + "+0*sqrt(0))/" + den;
  return s;
}

ExperimentConfig load_config_file(const std::string& path) {
  Json j = read_json_file(path);
  if (!j.is_object()) throw ValidationError("config root must be an object");
  ExperimentConfig c;
  auto rows = [](const Json& v) {
    std::vector<std::vector<std::string>> out;
    for (const Json& r : v) {
      std::vector<std::string> row;
      for (const Json& e : r) row.push_back(e.get<std::string>());
      out.push_back(std::move(row));
    }
    return out;
  };
  auto list = [](const Json& v) {
    std::vector<std::string> out;
    for (const Json& e : v) out.push_back(e.get<std::string>());
    return out;
  };
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "command") c.command = val.get<std::string>();
      else if (key == "digits") c.digits = val.get<int>();
      else if (key == "threads") c.threads = val.get<int>();
      else if (key == "seed") c.seed = val.get<std::uint64_t>();
      else if (key == "budget") c.budget = val.get<long long>();
      else if (key == "out_dir") c.out_dir = val.get<std::string>();
      else if (key == "theta") c.theta_rows = rows(val);
      else if (key == "k") c.k_texts = list(val);
      else if (key == "kind") c.kind = val.get<std::string>();
      else if (key == "x") c.x_texts = list(val);
      else if (key == "Q") c.Q = val.get<long long>();
      else if (key == "curve") c.curve = val.get<std::string>();
      else if (key == "curve_coeffs") c.curve_coeffs = rows(val);
      else if (key == "curve_a") c.curve_a = val.get<std::string>();
      else if (key == "curve_b") c.curve_b = val.get<std::string>();
      else if (key == "B0_lo") c.B0_lo = val.get<std::string>();
      else if (key == "B0_hi") c.B0_hi = val.get<std::string>();
      else if (key == "beta") c.beta = val.get<std::string>();
      else if (key == "c_hom") c.c_hom = val.get<std::string>();
      else if (key == "cert_Q") c.cert_Q = val.get<long long>();
      else if (key == "epsilon") c.epsilon = val.get<std::string>();
      else if (key == "strategy") c.strategy = val.get<std::string>();
      else if (key == "depth") c.depth = val.get<int>();
      else if (key == "subspace_basis") c.subspace_basis = rows(val);
      else if (key == "subspace_offset") c.subspace_offset = list(val);
      else if (key == "gamma") c.gamma = val.get<std::string>();
      else if (key == "gamma_Q") c.gamma_Q = val.get<long long>();
      else if (key == "r_max") c.r_max = val.get<int>();
      else throw ValidationError("unknown config field: " + key);
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config field type: ") + e.what());
  }
  return c;
}

int cmd_quality(const ExperimentConfig& raw) {
  return guarded([&] {
    ExperimentConfig c = normalized(raw);
    Precision P(c.digits);
    echo_config(c);
    SystemMatrix th = theta_from(c, P);
    Weights k = weights_from(c, th.m, P);
    QualityKind kind = kind_from_name(c.kind);
    std::optional<RealVec> x;
    if (kind == QualityKind::twisted) {
      if (static_cast<int>(c.x_texts.size()) != th.n)
        throw ValidationError("twisted kind needs an n-entry target x");
      x = realvec_from(c.x_texts, P);
    }
    BadnessCertificate cert = lower_estimate(kind, th, k, x, c.Q, P);
    std::printf("gamma = %s at argmin q = %s (kind %s, Q = %lld, %d digits)\n",
                cert.gamma.str().c_str(), ivec_str(cert.argmin_q).c_str(),
                kind_name(kind).c_str(), c.Q, c.digits);

    Json art{{"config", config_json(c)},
             {"theta", json_matrix(th)},
             {"k", json_weights(k)},
             {"certificate", json_certificate(cert)}};
    write_text_file(out_path(c, "quality_certificate.json"), canonical_dump(art));
    std::string csv = csv_line({"kind", "Q", "gamma", "argmin_q", "digits"});
    csv += csv_line({kind_name(kind), std::to_string(c.Q), cert.gamma.str(),
                     ivec_csv(cert.argmin_q), std::to_string(c.digits)});
    write_text_file(out_path(c, "quality_summary.csv"), csv);
    return 0;
  });
}

int cmd_game(const ExperimentConfig& raw) {
  return guarded([&] {
    ExperimentConfig c = normalized(raw);
    Precision P(c.digits);
    echo_config(c);
    SystemMatrix th = theta_from(c, P);
    Weights k = weights_from(c, th.m, P);
    CurveSpec curve = curve_from(c, P);
    Interval B0{scalar(c.B0_lo, P), scalar(c.B0_hi, P)};

    bool derived = c.c_hom.empty();
    BadnessCertificate cert;
    Real c_hom;
    if (derived) {
      cert = lower_estimate(QualityKind::homogeneous, th, k, std::nullopt,
                            c.cert_Q, P);
      c_hom = cert.gamma;
      std::printf("c_hom = %s (homogeneous certificate at Q = %lld)\n",
                  c_hom.str(30).c_str(), c.cert_Q);
    } else {
      c_hom = scalar(c.c_hom, P);
      std::printf("c_hom = %s (supplied)\n", c_hom.str(30).c_str());
    }
    std::optional<Real> eps;
    if (!c.epsilon.empty()) eps = scalar(c.epsilon, P);
    GameConfig gc = make_game_config(curve, k, B0, scalar(c.beta, P), c_hom,
                                     c.cert_Q, eps, P);
    gc.candidate_budget = c.budget;
    std::printf("R_game = %s, epsilon = %s\n", gc.R_game.str(20).c_str(),
                gc.epsilon.str(20).c_str());

    GameTranscript tr = run_game(curve, th, k, gc, strategy_from(c.strategy),
                                 c.depth, c.seed, P);
    for (const GameStage& st : tr.stages) {
      if (st.hit)
        std::printf("stage %d: B = [%s, %s], hit q = %s p = %s, |delta| = %s\n",
                    st.s, st.B.lo.str(12).c_str(), st.B.hi.str(12).c_str(),
                    ivec_str(st.hit->q).c_str(), ivec_str(st.hit->p).c_str(),
                    st.hit->delta.length().str(12).c_str());
      else
        std::printf("stage %d: B = [%s, %s], no dangerous pair\n", st.s,
                    st.B.lo.str(12).c_str(), st.B.hi.str(12).c_str());
    }
    std::printf("witness x = %s, twisted quality = %s over |q| <= %lld\n",
                tr.witness_x.str(30).c_str(), tr.witness_quality.str(30).c_str(),
                tr.witness_Q);

    Json art{{"config", config_json(c)},
             {"theta", json_matrix(th)},
             {"k", json_weights(k)},
             {"certificate", derived ? json_certificate(cert) : Json()},
             {"game_config", json_game_config(gc)},
             {"transcript", json_transcript(tr)}};
    write_text_file(out_path(c, "game_transcript.json"), canonical_dump(art));
    std::string csv = csv_line(
        {"stage", "B_lo", "B_hi", "hit_q", "hit_p", "delta_len", "A_lo", "A_hi"});
    for (const GameStage& st : tr.stages)
      csv += csv_line({std::to_string(st.s), st.B.lo.str(), st.B.hi.str(),
                       st.hit ? ivec_csv(st.hit->q) : "",
                       st.hit ? ivec_csv(st.hit->p) : "",
                       st.hit ? st.hit->delta.length().str() : "",
                       st.A.lo.str(), st.A.hi.str()});
    csv += csv_line({"witness", tr.witness_x.str(), tr.witness_quality.str(),
                     std::to_string(tr.witness_Q), "", "", "", ""});
    write_text_file(out_path(c, "game_summary.csv"), csv);

    if (!tr.complete) {
      std::printf("game incomplete: budget exhausted at depth %d\n",
                  tr.depth_reached);
      return 3;
    }
    return 0;
  });
}

int cmd_lambda(const ExperimentConfig& raw) {
  return guarded([&] {
    ExperimentConfig c = normalized(raw);
    Precision P(c.digits);
    echo_config(c);
    SystemMatrix th = theta_from(c, P);
    Weights k = weights_from(c, th.m, P);
    LadderResult lr = build_ladder(c, "[lambda]", th, k, P);
    print_entries("[lambda]", lr.lam);

    Json art{{"config", config_json(c)},
             {"theta", json_matrix(th)},
             {"k", json_weights(k)},
             {"gamma_initial", json_real(lr.gamma_initial)},
             {"dual_certificate", lr.derived ? json_certificate(lr.cert_dual) : Json()},
             {"lambda", json_lambda(lr.lam, lr.gamma_Q)}};
    write_text_file(out_path(c, "lambda_sequence.json"), canonical_dump(art));
    std::string csv = csv_line({"r", "T_r", "u", "v", "psi", "u_tilde",
                                "u_proj_L_norm"});
    for (const LambdaEntry& e : lr.lam.entries)
      csv += csv_line({std::to_string(e.r), e.T_r.str(), ivec_csv(e.w.u),
                       ivec_csv(e.w.v), e.psi.str(), ivec_csv(e.u_tilde),
                       e.u_proj_L_norm.str()});
    write_text_file(out_path(c, "lambda_summary.csv"), csv);
    return 0;
  });
}

int cmd_transfer(const ExperimentConfig& raw) {
  return guarded([&] {
    ExperimentConfig c = normalized(raw);
    Precision P(c.digits);
    echo_config(c);
    SystemMatrix th = theta_from(c, P);
    Weights k = weights_from(c, th.m, P);
    if (static_cast<int>(c.x_texts.size()) != th.n)
      throw ValidationError("transfer needs an n-entry target x");
    RealVec x = realvec_from(c.x_texts, P);
    LadderResult lr = build_ladder(c, "[transfer]", th, k, P);
    print_entries("[transfer]", lr.lam);

    TransferOutcome to = transfer_step(x, lr.lam, th, k, c.Q, P);
    Json art{{"config", config_json(c)},
             {"theta", json_matrix(th)},
             {"k", json_weights(k)},
             {"lambda", json_lambda(lr.lam, lr.gamma_Q)}};
    if (to.empty_range) {
      std::printf("admissible Q range empty: c(x) certifies no q at these scales\n");
      art["report"] = Json();
      art["admissible_Q"] = 0;
      write_text_file(out_path(c, "transfer_report.json"), canonical_dump(art));
      return 3;
    }
    const TransferenceReport& rep = to.report;
    std::printf("c(x) = %s, kappa = %s\n", rep.c_x.str(30).c_str(),
                rep.kappa_transfer.str(30).c_str());
    std::printf("worst twisted value %s at q = %s over 0 < |q| <= %lld\n",
                rep.worst_value.str(30).c_str(), ivec_str(rep.worst_q).c_str(),
                rep.Q_checked);
    if (rep.passed)
      std::printf("passed\n");
    else
      std::printf("counterexample: %s\n", rep.failure.c_str());
    art["report"] = json_transfer(rep);
    write_text_file(out_path(c, "transfer_report.json"), canonical_dump(art));
    std::string csv = csv_line(
        {"Q_checked", "c_x", "kappa_transfer", "worst_q", "worst_value", "passed"});
    csv += csv_line({std::to_string(rep.Q_checked), rep.c_x.str(),
                     rep.kappa_transfer.str(), ivec_csv(rep.worst_q),
                     rep.worst_value.str(), rep.passed ? "true" : "false"});
    write_text_file(out_path(c, "transfer_summary.csv"), csv);
    return rep.passed ? 0 : 4;
  });
}

int cmd_pipeline(const ExperimentConfig& raw) {
  ExperimentConfig c = normalized(raw);
  Precision P(c.digits);
  Json art{{"config", config_json(c)}};
  Json stages = Json::array();
  auto record = [&](const std::string& name, const std::string& status,
                    const std::string& detail) {
    stages.push_back(Json{{"name", name}, {"status", status}, {"detail", detail}});
  };
  auto flush = [&](int code) {
    art["stages"] = stages;
    art["exit_code"] = code;
    write_text_file(out_path(c, "pipeline_report.json"), canonical_dump(art));
    std::string csv = csv_line({"stage", "status", "detail"});
    for (const Json& st : stages)
      csv += csv_line({st["name"].get<std::string>(),
                       st["status"].get<std::string>(),
                       st["detail"].get<std::string>()});
    write_text_file(out_path(c, "pipeline_summary.csv"), csv);
    return code;
  };

  std::string stage = "certificate";
  int code = guarded([&] {
    echo_config(c);
    SystemMatrix th = theta_from(c, P);
    Weights k = weights_from(c, th.m, P);
    CurveSpec curve = curve_from(c, P);

    // certificates feeding both branches
    bool hom_derived = c.c_hom.empty();
    BadnessCertificate cert_hom;
    Real c_hom;
    if (hom_derived) {
      cert_hom = lower_estimate(QualityKind::homogeneous, th, k, std::nullopt,
                                c.cert_Q, P);
      c_hom = cert_hom.gamma;
      std::printf("[certificate] c_hom = %s at Q = %lld\n",
                  c_hom.str(30).c_str(), c.cert_Q);
      art["certificate_hom"] = json_certificate(cert_hom);
    } else {
      c_hom = scalar(c.c_hom, P);
      std::printf("[certificate] c_hom = %s (supplied)\n", c_hom.str(30).c_str());
      art["certificate_hom"] = Json();
    }
    record(stage, "ok", "c_hom " + c_hom.str(30));

    if (c.r_max < 2) {
      std::printf("[lambda] skipped: r_max = %d gives a one-scale ladder and "
                  "two scales are required\n", c.r_max);
      record("lambda", "skipped", "r_max < 2");
      std::printf("[transfer] admissible Q range empty: a single scale "
                  "certifies no q\n");
      record("transfer", "warning", "admissible Q range empty at r_max < 2");
      art["lambda"] = Json();
      art["transfer"] = Json();
      return 3;
    }

    stage = "lambda";
    LadderResult lr = build_ladder(c, "[lambda]", th, k, P);
    print_entries("[lambda]", lr.lam);
    if (lr.derived) art["certificate_dual"] = json_certificate(lr.cert_dual);
    art["lambda"] = json_lambda(lr.lam, lr.gamma_Q);
    record(stage, "ok",
           "R_lambda " + lr.lam.R_lambda.str(20) + ", entries " +
               std::to_string(lr.lam.entries.size()));

    stage = "game";
    Interval B0{scalar(c.B0_lo, P), scalar(c.B0_hi, P)};
    std::optional<Real> eps;
    if (!c.epsilon.empty()) eps = scalar(c.epsilon, P);
    GameConfig gc = make_game_config(curve, k, B0, scalar(c.beta, P), c_hom,
                                     c.cert_Q, eps, P);
    gc.candidate_budget = c.budget;
    GameTranscript tr = run_game(curve, th, k, gc, strategy_from(c.strategy),
                                 c.depth, c.seed, P);
    art["game_config"] = json_game_config(gc);
    art["transcript"] = json_transcript(tr);
    std::printf("[game] witness x = %s, twisted quality = %s over |q| <= %lld\n",
                tr.witness_x.str(30).c_str(), tr.witness_quality.str(30).c_str(),
                tr.witness_Q);
    if (!tr.complete) {
      record(stage, "failed", "budget exhausted at depth " +
                                  std::to_string(tr.depth_reached));
      return 3;
    }
    record(stage, "ok", "witness x " + tr.witness_x.str(30));

    stage = "transfer";
    TransferOutcome to = transfer_step(tr.witness_point, lr.lam, th, k, c.Q, P);
    if (to.empty_range) {
      std::printf("[transfer] admissible Q range empty at this witness\n");
      record(stage, "warning", "admissible Q range empty");
      art["transfer"] = Json();
      return 3;
    }
    const TransferenceReport& rep = to.report;
    art["transfer"] = json_transfer(rep);
    std::printf("[transfer] c(x) = %s, kappa = %s, worst %s at q = %s over "
                "0 < |q| <= %lld: %s\n",
                rep.c_x.str(30).c_str(), rep.kappa_transfer.str(30).c_str(),
                rep.worst_value.str(30).c_str(), ivec_str(rep.worst_q).c_str(),
                rep.Q_checked, rep.passed ? "passed" : "FAILED");
    if (!rep.passed) {
      record(stage, "failed", rep.failure);
      return 4;
    }
    record(stage, "ok",
           "kappa " + rep.kappa_transfer.str(30) + " over Q = " +
               std::to_string(rep.Q_checked));
    return 0;
  });
  if (code != 0 && (stages.empty() ||
                    stages.back()["name"].get<std::string>() != stage))
    record(stage, "failed", "aborted; see stderr");
  return flush(code);
}

int run_command(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  if (cfg.command == "quality") return cmd_quality(cfg);
  if (cfg.command == "game") return cmd_game(cfg);
  if (cfg.command == "lambda") return cmd_lambda(cfg);
  if (cfg.command == "transfer") return cmd_transfer(cfg);
  if (cfg.command == "pipeline") return cmd_pipeline(cfg);
  std::cerr << "error (validation): unknown command: " << cfg.command << "\n";
  return 2;
}

}  // namespace wba
