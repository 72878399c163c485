#pragma once

// Canonical JSON and CSV emission for the experiment artifacts. Objects keep
// sorted keys, integers stay exact, reals become full round-trip decimal
// strings, and nothing carries a timestamp, so identical runs write
// identical bytes.

#include <string>
#include <vector>

#include "json.hpp"

#include "wba/game.hpp"
#include "wba/lattice.hpp"
#include "wba/transference.hpp"

namespace wba {

using Json = nlohmann::json;

Json json_real(const Real& x);
Json json_real_vec(const RealVec& xs);
Json json_int_vec(const IntVec& q);
// Source literals; quadratic irrationals print as (a+b*sqrt(d))/c.
Json json_specs(const std::vector<ScalarSpec>& specs);

Json json_matrix(const SystemMatrix& theta);
Json json_weights(const Weights& k);
Json json_certificate(const BadnessCertificate& cert);
Json json_interval(const Interval& iv);
Json json_game_config(const GameConfig& cfg);
Json json_transcript(const GameTranscript& tr);
Json json_subspace_context(const SubspaceContext& ctx);
// gamma_Q records the cutoff of the dual certificate behind gamma;
// 0 means gamma was supplied directly.
Json json_lambda(const LambdaSequence& lam, long long gamma_Q);
Json json_transfer(const TransferenceReport& rep);

// 2-space indent plus trailing newline.
std::string canonical_dump(const Json& j);

// Fields holding commas, quotes or newlines get RFC 4180 quoting.
std::string csv_line(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);

}  // namespace wba
