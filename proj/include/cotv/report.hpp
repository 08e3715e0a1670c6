#pragma once

#include "cotv/boosting.hpp"
#include "cotv/class_io.hpp"
#include "cotv/dimensions.hpp"

#include <string>
#include <vector>

namespace cotv {

// Canonical text for every report: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

Json instance_to_json(const VerifierClass& cls, const AnyInstance& z);
Json tree_to_json(const VerifierClass& cls, const MistakeTree& tree);
std::string tree_to_dot(const VerifierClass& cls, const MistakeTree& tree);

Json totals_to_json(const MistakeTotals& t);
Json transcript_to_json(const VerifierClass& cls, const Transcript& tr);

Json build_report_to_json(const BuildReport& rep);
Json rates_to_json(const VhpRates& r);
Json alpha_report_to_json(const AlphaReport& rep, const Rational& alpha);

// Reads {"prefix": [{"problem": p, "steps": [..]}, ...]} or {"cot": [...]};
// problem may be an index or a name, steps are token ids or Σ names.
std::vector<PrefixInstance> prefix_sequence_from_json(const VerifierClass& cls, const Json& j);
std::vector<CotInstance> cot_sequence_from_json(const VerifierClass& cls, const Json& j);

} // namespace cotv
