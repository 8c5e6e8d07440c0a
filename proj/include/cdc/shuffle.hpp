#pragma once

// Shuffle-phase delivery and decoding. Signals are XOR combinations of
// intermediate values over F_2; a transcript is the full broadcast sequence.
// All generation is deterministic: signals are emitted in ascending
// lexicographic order of their file subset, and the default sender rule
// picks the smallest eligible worker id.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdc/scheme.hpp"

namespace cdc {

// A worker sent a signal it cannot compute, or a worker cannot recover a
// required value from the transcript.
struct ProtocolViolation : std::runtime_error {
    explicit ProtocolViolation(const std::string& what) : std::runtime_error(what) {}
};

struct CodedSignal {
    int sender = 0;
    std::vector<IvId> summands;        // sorted; XORed together on the wire
    std::vector<std::uint8_t> payload;  // empty in symbolic transcripts
};

struct ShuffleTranscript {
    std::vector<CodedSignal> signals;
    unsigned bits_per_iv = 64;
    bool concrete = false;

    std::uint64_t total_bits() const {
        return static_cast<std::uint64_t>(signals.size()) * bits_per_iv;
    }
};

struct SenderPolicy {
    enum class Rule { Smallest, SeededRandom };
    Rule rule = Rule::Smallest;
    std::uint64_t seed = 0;
};

// Pair exchange for symmetric t-design schemes: one signal per file pair
// {x,y}, carrying v_{x,y} ^ v_{y,x}, sent from the placement intersection.
// Throws on wrong scheme kind; an empty intersection cannot happen for a
// verified t-design and reports as a protocol violation if encountered.
ShuffleTranscript deliver_pairwise(const CdcScheme& s, const SenderPolicy& policy = {});

// GDD variant: same-group pairs have disjoint placements, so the pair is
// covered by two single-summand (unicast) signals instead, each sent by a
// worker storing the named file. Cross-group pairs are coded as above.
ShuffleTranscript deliver_pairwise_with_unicast(const CdcScheme& s, const SenderPolicy& policy = {});

// Unequal-replication scheme: one signal per t-subset T of files, XORing
// v_{C, T \ C} over the t many (t-1)-subsets C of T; the sender stores all
// of T.
ShuffleTranscript deliver_tuplewise(const CdcScheme& s, const SenderPolicy& policy = {});

// Dispatches to the delivery matching the scheme kind.
ShuffleTranscript make_transcript(const CdcScheme& s, const SenderPolicy& policy = {});

struct DecodedIv {
    IvId iv;
    int signal_index = -1;  // transcript position it was recovered from
};

// One-shot decode for a worker: every signal with exactly one summand
// outside the worker's computable set yields that summand. Returns the
// worker's full required list with the signal each value came from.
// Throws ProtocolViolation naming the worker and the first IV that no
// signal delivers.
std::vector<DecodedIv> decode_required(const CdcScheme& s, const ShuffleTranscript& tr, int worker);

struct OneShotReport {
    bool passed = false;
    std::string violation;
    // (worker, required IV) pairs served, per transcript signal.
    std::vector<long long> per_signal_useful;
    long long served_total = 0;
};

// Structural transcript check: every sender can compute all its summands,
// and every required IV of every worker is decodable from exactly one
// signal.
OneShotReport verify_one_shot(const ShuffleTranscript& tr, const CdcScheme& s);

struct SimulationConfig {
    std::uint64_t seed = 1;
    unsigned bits_per_iv = 64;   // multiple of 8, at least 8
    bool concrete = true;        // false = symbolic (structure only)
    SenderPolicy sender;
};

// Deterministic pseudo-random IV payload: bits/8 bytes keyed by
// (seed, function, file). Same inputs, same bytes, on any platform.
std::vector<std::uint8_t> iv_payload(std::uint64_t seed, const IvId& iv, unsigned bits);

struct SimulationReport {
    bool passed = false;
    long long signal_count = 0;
    std::uint64_t total_bits = 0;
    std::map<int, std::uint64_t> sent_bits_by_worker;   // l_k, every worker listed
    std::map<int, long long> recovered_ivs_by_worker;
    bool concrete = false;
};

struct SimulationResult {
    ShuffleTranscript transcript;
    SimulationReport report;
};

// Full map/shuffle/reduce pass: builds the transcript for the scheme's
// delivery (payloads filled in concrete mode), then has every worker decode
// its required IVs; concrete mode additionally checks every recovered
// payload bit-exactly against the mapper output it should equal.
// Throws ProtocolViolation on any decode or payload mismatch.
SimulationResult simulate_end_to_end(const CdcScheme& s, const SimulationConfig& cfg = {});

}  // namespace cdc
