#include "cdc/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cdc {

namespace {

Json rational_json(const Rational& r) {
    Json j;
    j["exact"] = to_fraction_string(r);
    j["value"] = to_double(r);
    return j;
}

Json optional_rational_json(const std::optional<Rational>& r) {
    if (!r) return nullptr;
    return rational_json(*r);
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex payload");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw std::invalid_argument("bad hex digit in payload");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    }
    return out;
}

void write_json(const Json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return Json::parse(in);
}

}  // namespace

Json design_to_json(const BlockDesign& d) {
    Json j;
    j["points"] = d.points;
    j["blocks"] = d.blocks;
    if (d.groups) j["groups"] = *d.groups;
    j["t"] = d.strength;
    j["lambda"] = d.index;
    j["family"] = d.family;
    if (!d.dual_source_groups.empty()) j["dual_source_groups"] = d.dual_source_groups;
    return j;
}

BlockDesign design_from_json(const Json& j) {
    std::vector<int> points = j.at("points").get<std::vector<int>>();
    std::vector<std::vector<int>> blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    std::optional<std::vector<std::vector<int>>> groups;
    if (j.contains("groups") && !j["groups"].is_null()) {
        groups = j["groups"].get<std::vector<std::vector<int>>>();
    }
    std::string family = j.value("family", std::string());
    bool is_dual = family.rfind("dual:", 0) == 0;

    BlockDesign d;
    if (is_dual) {
        // Dual block order encodes the source-point correspondence: validate
        // through make_design but restore the stored order afterwards.
        std::vector<std::vector<int>> stored = blocks;
        for (auto& blk : stored) std::sort(blk.begin(), blk.end());
        d = make_design(points, blocks, groups);
        d.blocks = std::move(stored);
    } else {
        d = make_design(std::move(points), std::move(blocks), std::move(groups));
    }
    d.strength = j.value("t", 0);
    d.index = j.value("lambda", 0LL);
    d.family = family;
    if (j.contains("dual_source_groups")) {
        d.dual_source_groups = j["dual_source_groups"].get<std::vector<int>>();
        if (d.dual_source_groups.size() != d.blocks.size()) {
            throw std::invalid_argument("dual_source_groups length must match block count");
        }
    }
    return d;
}

void save_design(const BlockDesign& d, const std::filesystem::path& path) {
    write_json(design_to_json(d), path);
}

BlockDesign load_design(const std::filesystem::path& path) {
    return design_from_json(read_json(path));
}

Json scheme_to_json(const CdcScheme& s) {
    Json j;
    j["K"] = s.params.workers;
    j["r"] = s.params.map_replication;
    j["s"] = s.params.reduce_replication;
    j["N"] = s.params.files;
    j["Q"] = s.params.functions;
    j["M"] = s.params.files_per_worker;
    j["provenance"] = to_string(s.kind);
    j["t"] = s.strength;
    j["lambda"] = s.index;
    j["family"] = s.family;
    j["files"] = s.files;
    j["functions"] = s.functions;
    Json placement = Json::object();
    for (std::size_t i = 0; i < s.files.size(); ++i) {
        placement[std::to_string(s.files[i])] = s.placement[i];
    }
    j["placement"] = std::move(placement);
    Json assignment = Json::object();
    for (std::size_t i = 0; i < s.functions.size(); ++i) {
        assignment[std::to_string(s.functions[i])] = s.assignment[i];
    }
    j["assignment"] = std::move(assignment);
    j["worker_files"] = s.worker_files;
    if (!s.function_subsets.empty()) j["function_subsets"] = s.function_subsets;
    if (!s.file_groups.empty()) j["file_groups"] = s.file_groups;
    if (s.kind == SchemeKind::Gdd) {
        j["m"] = s.group_count;
        j["q"] = s.group_size;
    }
    return j;
}

CdcScheme scheme_from_json(const Json& j) {
    CdcScheme s;
    std::string provenance = j.at("provenance").get<std::string>();
    if (provenance == "t-design") s.kind = SchemeKind::TDesign;
    else if (provenance == "gdd") s.kind = SchemeKind::Gdd;
    else if (provenance == "t-design-unequal") s.kind = SchemeKind::Unequal;
    else throw std::invalid_argument("unknown provenance: " + provenance);

    s.params.workers = j.at("K").get<long long>();
    s.params.map_replication = j.at("r").get<long long>();
    s.params.reduce_replication = j.at("s").get<long long>();
    s.params.files = j.at("N").get<long long>();
    s.params.functions = j.at("Q").get<long long>();
    s.params.files_per_worker = j.at("M").get<long long>();
    s.strength = j.value("t", 0);
    s.index = j.value("lambda", 0LL);
    s.family = j.value("family", std::string());
    s.files = j.at("files").get<std::vector<int>>();
    s.functions = j.at("functions").get<std::vector<int>>();

    const auto& placement = j.at("placement");
    s.placement.resize(s.files.size());
    for (std::size_t i = 0; i < s.files.size(); ++i) {
        s.placement[i] = placement.at(std::to_string(s.files[i])).get<std::vector<int>>();
    }
    const auto& assignment = j.at("assignment");
    s.assignment.resize(s.functions.size());
    for (std::size_t i = 0; i < s.functions.size(); ++i) {
        s.assignment[i] = assignment.at(std::to_string(s.functions[i])).get<std::vector<int>>();
    }
    s.worker_files = j.at("worker_files").get<std::vector<std::vector<int>>>();
    if (static_cast<long long>(s.worker_files.size()) != s.params.workers) {
        throw std::invalid_argument("worker_files length must equal K");
    }
    if (j.contains("function_subsets")) {
        s.function_subsets = j["function_subsets"].get<std::vector<std::vector<int>>>();
    }
    if (j.contains("file_groups")) {
        s.file_groups = j["file_groups"].get<std::vector<int>>();
    }
    s.group_count = j.value("m", 0LL);
    s.group_size = j.value("q", 0LL);
    return s;
}

void save_scheme(const CdcScheme& s, const std::filesystem::path& path) {
    write_json(scheme_to_json(s), path);
}

CdcScheme load_scheme(const std::filesystem::path& path) {
    return scheme_from_json(read_json(path));
}

Json transcript_to_json(const ShuffleTranscript& tr) {
    Json signals = Json::array();
    for (const auto& sig : tr.signals) {
        Json s;
        s["sender"] = sig.sender;
        Json summands = Json::array();
        for (const auto& iv : sig.summands) summands.push_back({iv.function, iv.file});
        s["summands"] = std::move(summands);
        if (!sig.payload.empty()) s["payload_hex"] = to_hex(sig.payload);
        signals.push_back(std::move(s));
    }
    return signals;
}

ShuffleTranscript transcript_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("transcript must be a JSON array");
    ShuffleTranscript tr;
    for (const auto& s : j) {
        CodedSignal sig;
        sig.sender = s.at("sender").get<int>();
        for (const auto& pair : s.at("summands")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw std::invalid_argument("each summand must be a [function, file] pair");
            }
            sig.summands.push_back({pair[0].get<int>(), pair[1].get<int>()});
        }
        if (s.contains("payload_hex")) {
            sig.payload = from_hex(s["payload_hex"].get<std::string>());
            tr.concrete = true;
            tr.bits_per_iv = static_cast<unsigned>(sig.payload.size() * 8);
        }
        tr.signals.push_back(std::move(sig));
    }
    return tr;
}

void save_transcript(const ShuffleTranscript& tr, const std::filesystem::path& path) {
    write_json(transcript_to_json(tr), path);
}

ShuffleTranscript load_transcript(const std::filesystem::path& path) {
    return transcript_from_json(read_json(path));
}

Json verification_report_to_json(const VerificationReport& rep) {
    Json j;
    j["pass"] = rep.passed;
    j["violation"] = rep.violation;
    j["counted_blocks"] = rep.counted_blocks;
    j["counted_degree"] = rep.counted_degree;
    j["expected_blocks"] = rep.expected_blocks;
    j["expected_degree"] = rep.expected_degree;
    return j;
}

Json load_report_to_json(const LoadReport& rep) {
    Json j;
    j["measured_load"] = rational_json(rep.measured_load);
    j["predicted_load"] = rational_json(rep.predicted_load);
    j["measured_gain"] = rational_json(rep.measured_gain);
    j["predicted_gain"] = rational_json(rep.predicted_gain);
    j["max_gain"] = rep.max_gain;
    j["load_lower_bound"] = rational_json(rep.load_lower_bound);
    j["identity_holds"] = rep.identity_holds;
    j["within_bounds"] = rep.within_bounds;
    return j;
}

Json simulation_report_to_json(const SimulationReport& rep, const LoadReport& load) {
    Json j;
    j["pass"] = rep.passed;
    j["mode"] = rep.concrete ? "concrete" : "symbolic";
    j["signals"] = rep.signal_count;
    j["total_bits"] = rep.total_bits;
    Json lk = Json::object();
    for (const auto& [worker, bits] : rep.sent_bits_by_worker) lk[std::to_string(worker)] = bits;
    j["sent_bits"] = std::move(lk);
    Json rec = Json::object();
    for (const auto& [worker, n] : rep.recovered_ivs_by_worker) rec[std::to_string(worker)] = n;
    j["recovered_ivs"] = std::move(rec);
    j["load"] = load_report_to_json(load);
    return j;
}

Json comparison_report_to_json(const ComparisonReport& rep) {
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        Json r;
        r["p"] = row.p;
        r["family"] = row.family;
        r["K"] = row.params.workers;
        r["r"] = row.params.map_replication;
        r["s"] = row.params.reduce_replication;
        r["N"] = row.params.files;
        r["Q"] = row.params.functions;
        r["M"] = row.params.files_per_worker;
        r["L_measured"] = rational_json(row.measured_load);
        r["L_predicted"] = rational_json(row.predicted_load);
        r["L_LMYA"] = rational_json(row.lmya);
        r["L_WCJ"] = optional_rational_json(row.wcj);
        r["L_JWZ"] = optional_rational_json(row.jwz);
        r["L_JQ"] = optional_rational_json(row.jq);
        r["L_lowerbound"] = rational_json(row.lower_bound);
        r["g_measured"] = rational_json(row.measured_gain);
        r["g_max"] = row.max_gain;
        r["optimality_ratio"] = rational_json(row.optimality_ratio);
        r["beats_lmya"] = row.beats_lmya;
        if (row.tabulated_gdd_load) {
            r["tabulated_gdd_load"] = rational_json(*row.tabulated_gdd_load);
            r["tabulated_value_differs"] = row.tabulated_value_differs;
        }
        rows.push_back(std::move(r));
    }
    Json j;
    j["rows"] = std::move(rows);
    return j;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
}

}  // namespace cdc
