#pragma once

#include <string>

#include <json.hpp>

#include "alignment.hpp"
#include "majorization.hpp"
#include "search.hpp"
#include "twobody.hpp"

namespace spinalign {

using ojson = nlohmann::ordered_json;

// Problem files carry complex matrices as row-major arrays of [re, im]
// pairs, subsets as 1-based party lists, and either per-subset pure states
// (free problems) or one "global_state" matrix (compatible problems).
// Parsing and serialization round-trip exactly: doubles are emitted with
// shortest-exact formatting.

ojson matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ojson amplitudes_to_json(const std::vector<cplx>& amps);
std::vector<cplx> amplitudes_from_json(const nlohmann::json& j);

std::vector<int> mask_to_parties(std::uint32_t mask);
std::uint32_t parties_to_mask(const nlohmann::json& parties, int n);

ojson measure_to_json(const SubsetMeasure& mu);
SubsetMeasure measure_from_json(const nlohmann::json& j, int n);

ojson problem_to_json(const AlignmentProblem& p);
AlignmentProblem problem_from_json(const nlohmann::json& j);
AlignmentProblem problem_from_string(const std::string& text);

ojson majorization_report_to_json(const MajorizationReport& r);
ojson spectrum_values_json(const Spectrum& s);
ojson campaign_summary_to_json(const CampaignSummary& s);
ojson search_result_to_json(const SearchResult& r, const SearchConfig& config);

/// RFC 3339 UTC timestamp for report headers.
std::string current_timestamp();

}  // namespace spinalign
