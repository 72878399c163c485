#include "wba/jsonio.hpp"

#include <fstream>

namespace wba {

Json json_real(const Real& x) { return x.str(); }

Json json_real_vec(const RealVec& xs) {
  Json a = Json::array();
  for (const Real& x : xs) a.push_back(json_real(x));
  return a;
}

Json json_int_vec(const IntVec& q) {
  Json a = Json::array();
  for (long long v : q) a.push_back(v);
  return a;
}

Json json_specs(const std::vector<ScalarSpec>& specs) {
  Json a = Json::array();
  for (const ScalarSpec& s : specs)
    a.push_back(s.form == ScalarSpec::Form::decimal ? s.text : s.qi.str());
  return a;
}

Json json_matrix(const SystemMatrix& theta) {
  Json lits = Json::array();
  Json vals = Json::array();
  for (int i = 0; i < theta.n; ++i) {
    std::vector<ScalarSpec> row(theta.spec.begin() + i * theta.m,
                                theta.spec.begin() + (i + 1) * theta.m);
    lits.push_back(json_specs(row));
    Json vrow = Json::array();
    for (int j = 0; j < theta.m; ++j) vrow.push_back(json_real(theta.at(i, j)));
    vals.push_back(vrow);
  }
  return Json{{"n", theta.n},
              {"m", theta.m},
              {"digits", theta.digits},
              {"literals", lits},
              {"values", vals}};
}

Json json_weights(const Weights& k) {
  return Json{{"m", k.m},
              {"literals", json_specs(k.spec)},
              {"values", json_real_vec(k.k)}};
}

Json json_certificate(const BadnessCertificate& cert) {
  return Json{{"kind", kind_name(cert.kind)},
              {"gamma", json_real(cert.gamma)},
              {"Q", cert.Q},
              {"argmin_q", json_int_vec(cert.argmin_q)},
              {"precision_digits", cert.precision_digits}};
}

Json json_interval(const Interval& iv) {
  return Json{{"lo", json_real(iv.lo)}, {"hi", json_real(iv.hi)}};
}

Json json_game_config(const GameConfig& cfg) {
  return Json{{"beta", json_real(cfg.beta)},
              {"B0", json_interval(cfg.B0)},
              {"c_hom", json_real(cfg.c_hom)},
              {"cert_Q", cfg.cert_Q},
              {"epsilon", json_real(cfg.epsilon)},
              {"R_game", json_real(cfg.R_game)},
              {"candidate_budget", cfg.candidate_budget}};
}

Json json_transcript(const GameTranscript& tr) {
  Json stages = Json::array();
  for (const GameStage& st : tr.stages) {
    Json hit;
    if (st.hit)
      hit = Json{{"p", json_int_vec(st.hit->p)},
                 {"q", json_int_vec(st.hit->q)},
                 {"delta", json_interval(st.hit->delta)}};
    stages.push_back(Json{{"s", st.s},
                          {"B", json_interval(st.B)},
                          {"hit", hit},
                          {"A", json_interval(st.A)},
                          {"B_next", json_interval(st.B_next)}});
  }
  return Json{{"stages", stages},
              {"B_final", json_interval(tr.B_final)},
              {"witness_x", json_real(tr.witness_x)},
              {"witness_point", json_real_vec(tr.witness_point)},
              {"witness_quality", json_real(tr.witness_quality)},
              {"witness_Q", tr.witness_Q},
              {"certificate_Q", tr.certificate_Q},
              {"complete", tr.complete},
              {"depth_reached", tr.depth_reached}};
}

Json json_subspace_context(const SubspaceContext& ctx) {
  return Json{{"n", ctx.n},
              {"d", ctx.d},
              {"t", ctx.t},
              {"case", ctx.kind == SubspaceCase::Case1 ? "case1" : "case2"},
              {"omega_degenerate", ctx.omega_degenerate},
              {"omega", json_real(ctx.omega)},
              {"sigma", json_real(ctx.sigma)},
              {"lambda", json_real(ctx.lambda)},
              {"digits", ctx.digits}};
}

Json json_lambda(const LambdaSequence& lam, long long gamma_Q) {
  Json entries = Json::array();
  for (const LambdaEntry& e : lam.entries)
    entries.push_back(Json{{"r", e.r},
                           {"T_r", json_real(e.T_r)},
                           {"u", json_int_vec(e.w.u)},
                           {"v", json_int_vec(e.w.v)},
                           {"psi", json_real(e.psi)},
                           {"u_tilde", json_int_vec(e.u_tilde)},
                           {"u_proj_L_norm", json_real(e.u_proj_L_norm)}});
  return Json{{"context", json_subspace_context(lam.context)},
              {"gamma", json_real(lam.gamma)},
              {"gamma_Q_cert", gamma_Q},
              {"R_lambda", json_real(lam.R_lambda)},
              {"entries", entries}};
}

Json json_transfer(const TransferenceReport& rep) {
  Json choices = Json::array();
  for (const RChoice& c : rep.per_q_r_choices)
    choices.push_back(Json{{"q", c.q},
                           {"r", c.r},
                           {"psi_prev", json_real(c.psi_prev)},
                           {"psi_r", json_real(c.psi_r)}});
  return Json{{"c_x", json_real(rep.c_x)},
              {"kappa_transfer", json_real(rep.kappa_transfer)},
              {"Q_checked", rep.Q_checked},
              {"worst_q", json_int_vec(rep.worst_q)},
              {"worst_value", json_real(rep.worst_value)},
              {"per_q_r_choices", choices},
              {"passed", rep.passed},
              {"failure", rep.failure}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open for writing: " + path);
  f << content;
  if (!f) throw ValidationError("write failed: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open: " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ValidationError("JSON parse of " + path + ": " + e.what());
  }
}

}  // namespace wba
