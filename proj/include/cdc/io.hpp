#pragma once

// JSON file formats. All writers emit deterministic, ordered-key output so
// identical inputs produce byte-identical files.
//
// Design files: {"points", "blocks", "groups"?, "t", "lambda", "family"}
// plus "dual_source_groups" on duals of grouped designs. Loading
// canonicalizes ordering, except that dual designs ("dual:" family prefix)
// keep their block order: there, block i corresponds to the i-th source
// point and the order is data, not presentation.
//
// Scheme files: {"K","r","s","N","Q","M","placement","assignment",
// "provenance"} plus enough structure (kind, t, lambda, files, functions,
// subsets, groups) to rebuild delivery from the file alone.
//
// Transcript files: a JSON array of {"sender", "summands", "payload_hex"?}.

#include <filesystem>
#include <nlohmann/json.hpp>

#include "cdc/design.hpp"
#include "cdc/metrics.hpp"
#include "cdc/scheme.hpp"
#include "cdc/shuffle.hpp"

namespace cdc {

using Json = nlohmann::ordered_json;

Json design_to_json(const BlockDesign& d);
BlockDesign design_from_json(const Json& j);
void save_design(const BlockDesign& d, const std::filesystem::path& path);
BlockDesign load_design(const std::filesystem::path& path);

Json scheme_to_json(const CdcScheme& s);
CdcScheme scheme_from_json(const Json& j);
void save_scheme(const CdcScheme& s, const std::filesystem::path& path);
CdcScheme load_scheme(const std::filesystem::path& path);

Json transcript_to_json(const ShuffleTranscript& tr);
ShuffleTranscript transcript_from_json(const Json& j);
void save_transcript(const ShuffleTranscript& tr, const std::filesystem::path& path);
ShuffleTranscript load_transcript(const std::filesystem::path& path);

Json verification_report_to_json(const VerificationReport& rep);
Json load_report_to_json(const LoadReport& rep);
Json simulation_report_to_json(const SimulationReport& rep, const LoadReport& load);
Json comparison_report_to_json(const ComparisonReport& rep);

void write_text_file(const std::string& text, const std::filesystem::path& path);

}  // namespace cdc
