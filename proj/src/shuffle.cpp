#include "cdc/shuffle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cdc/parallel.hpp"

namespace cdc {

namespace {

std::string iv_to_string(const IvId& iv) {
    return "v_{" + std::to_string(iv.function) + "," + std::to_string(iv.file) + "}";
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Sender selection among the eligible workers for one signal. The random
// rule draws per signal from a generator seeded once per transcript, so a
// fixed seed reproduces the whole transcript.
struct SenderPicker {
    SenderPolicy policy;
    std::mt19937_64 rng;
    explicit SenderPicker(const SenderPolicy& p) : policy(p), rng(p.seed) {}

    int pick(const std::vector<int>& eligible) {
        if (eligible.empty()) throw ProtocolViolation("no eligible sender");
        if (policy.rule == SenderPolicy::Rule::Smallest) return eligible.front();
        std::uniform_int_distribution<std::size_t> dist(0, eligible.size() - 1);
        return eligible[dist(rng)];
    }
};

void require_kind(const CdcScheme& s, SchemeKind kind, const char* op) {
    if (s.kind != kind) {
        throw std::invalid_argument(std::string(op) + " requires a " + to_string(kind) +
                                    " scheme, got " + to_string(s.kind));
    }
}

}  // namespace

ShuffleTranscript deliver_pairwise(const CdcScheme& s, const SenderPolicy& policy) {
    require_kind(s, SchemeKind::TDesign, "pairwise delivery");
    SenderPicker picker(policy);
    ShuffleTranscript tr;
    const auto& files = s.files;
    for (std::size_t i = 0; i < files.size(); ++i) {
        for (std::size_t j = i + 1; j < files.size(); ++j) {
            auto senders = intersect_sorted(s.placement[i], s.placement[j]);
            if (senders.empty()) {
                throw ProtocolViolation("files " + std::to_string(files[i]) + " and " +
                                        std::to_string(files[j]) +
                                        " share no worker; not a t-design scheme");
            }
            CodedSignal sig;
            sig.sender = picker.pick(senders);
            sig.summands = {{files[i], files[j]}, {files[j], files[i]}};
            std::sort(sig.summands.begin(), sig.summands.end());
            tr.signals.push_back(std::move(sig));
        }
    }
    return tr;
}

ShuffleTranscript deliver_pairwise_with_unicast(const CdcScheme& s, const SenderPolicy& policy) {
    require_kind(s, SchemeKind::Gdd, "pairwise delivery with unicast");
    SenderPicker picker(policy);
    ShuffleTranscript tr;
    const auto& files = s.files;
    for (std::size_t i = 0; i < files.size(); ++i) {
        for (std::size_t j = i + 1; j < files.size(); ++j) {
            auto senders = intersect_sorted(s.placement[i], s.placement[j]);
            if (!senders.empty()) {
                CodedSignal sig;
                sig.sender = picker.pick(senders);
                sig.summands = {{files[i], files[j]}, {files[j], files[i]}};
                std::sort(sig.summands.begin(), sig.summands.end());
                tr.signals.push_back(std::move(sig));
            } else {
                // Same-group pair: v_{x,y} from a worker storing y, then
                // v_{y,x} from a worker storing x (summand order).
                CodedSignal first;
                first.summands = {{files[i], files[j]}};
                first.sender = picker.pick(s.placement[j]);
                tr.signals.push_back(std::move(first));
                CodedSignal second;
                second.summands = {{files[j], files[i]}};
                second.sender = picker.pick(s.placement[i]);
                tr.signals.push_back(std::move(second));
            }
        }
    }
    return tr;
}

ShuffleTranscript deliver_tuplewise(const CdcScheme& s, const SenderPolicy& policy) {
    require_kind(s, SchemeKind::Unequal, "tuplewise delivery");
    SenderPicker picker(policy);
    ShuffleTranscript tr;
    const int t = s.strength;
    const long long N = s.params.files;

    // Function id for each (t-1)-subset of file indices, in lex order of
    // index tuples; matches the builder's function numbering.
    std::map<std::vector<int>, int> function_of;
    for (std::size_t qi = 0; qi < s.function_subsets.size(); ++qi) {
        function_of[s.function_subsets[qi]] = s.functions[qi];
    }

    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    while (true) {
        std::vector<int> senders = s.placement[idx[0]];
        for (int i = 1; i < t; ++i) senders = intersect_sorted(senders, s.placement[idx[i]]);
        if (senders.empty()) {
            std::ostringstream msg;
            msg << "no worker stores the whole file subset {";
            for (int i = 0; i < t; ++i) msg << (i ? "," : "") << s.files[idx[i]];
            msg << "}";
            throw ProtocolViolation(msg.str());
        }
        CodedSignal sig;
        sig.sender = picker.pick(senders);
        for (int omit = 0; omit < t; ++omit) {
            std::vector<int> subset;
            subset.reserve(t - 1);
            for (int i = 0; i < t; ++i) {
                if (i != omit) subset.push_back(s.files[idx[i]]);
            }
            sig.summands.push_back({function_of.at(subset), s.files[idx[omit]]});
        }
        std::sort(sig.summands.begin(), sig.summands.end());
        tr.signals.push_back(std::move(sig));

        int i = t - 1;
        while (i >= 0 && idx[i] == static_cast<int>(N) - t + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
    return tr;
}

ShuffleTranscript make_transcript(const CdcScheme& s, const SenderPolicy& policy) {
    switch (s.kind) {
        case SchemeKind::TDesign: return deliver_pairwise(s, policy);
        case SchemeKind::Gdd: return deliver_pairwise_with_unicast(s, policy);
        case SchemeKind::Unequal: return deliver_tuplewise(s, policy);
    }
    throw std::invalid_argument("unknown scheme kind");
}

std::vector<DecodedIv> decode_required(const CdcScheme& s, const ShuffleTranscript& tr, int worker) {
    auto computable = computed_ivs(s, worker);
    auto needed = required_ivs(s, worker);
    auto knows = [&](const IvId& iv) {
        return std::binary_search(computable.begin(), computable.end(), iv);
    };

    std::map<IvId, int> source;
    for (std::size_t i = 0; i < tr.signals.size(); ++i) {
        const auto& sig = tr.signals[i];
        const IvId* unknown = nullptr;
        bool decodable = true;
        for (const auto& iv : sig.summands) {
            if (knows(iv)) continue;
            if (unknown) {
                decodable = false;
                break;
            }
            unknown = &iv;
        }
        if (!decodable || !unknown) continue;
        source.emplace(*unknown, static_cast<int>(i));  // keep the first usable signal
    }

    std::vector<DecodedIv> out;
    out.reserve(needed.size());
    for (const auto& iv : needed) {
        auto it = source.find(iv);
        if (it == source.end()) {
            throw ProtocolViolation("worker " + std::to_string(worker) + " cannot decode " +
                                    iv_to_string(iv) + " from the transcript");
        }
        out.push_back({iv, it->second});
    }
    return out;
}

OneShotReport verify_one_shot(const ShuffleTranscript& tr, const CdcScheme& s) {
    OneShotReport rep;
    rep.per_signal_useful.assign(tr.signals.size(), 0);

    // Senders must be able to compute what they transmit.
    for (std::size_t i = 0; i < tr.signals.size(); ++i) {
        const auto& sig = tr.signals[i];
        auto knows = computed_ivs(s, sig.sender);
        for (const auto& iv : sig.summands) {
            if (!std::binary_search(knows.begin(), knows.end(), iv)) {
                rep.violation = "signal " + std::to_string(i) + ": sender " +
                                std::to_string(sig.sender) + " cannot compute " + iv_to_string(iv);
                return rep;
            }
        }
    }

    // Each required IV of each worker must be decodable from exactly one
    // signal. Work per worker is independent; violations are reported in
    // (worker, required list) order.
    const long long K = s.params.workers;
    std::vector<std::string> worker_violation(K);
    std::vector<std::vector<std::pair<long long, long long>>> useful_by_worker(K);
    std::vector<long long> served_by_worker(K, 0);
    parallel_for_index(static_cast<std::size_t>(K), [&](std::size_t wi) {
        int worker = static_cast<int>(wi) + 1;
        auto computable = computed_ivs(s, worker);
        auto needed = required_ivs(s, worker);
        auto knows = [&](const IvId& iv) {
            return std::binary_search(computable.begin(), computable.end(), iv);
        };
        std::map<IvId, long long> usable_count;
        std::map<IvId, long long> first_signal;
        for (std::size_t i = 0; i < tr.signals.size(); ++i) {
            const auto& sig = tr.signals[i];
            const IvId* unknown = nullptr;
            bool decodable = true;
            for (const auto& iv : sig.summands) {
                if (knows(iv)) continue;
                if (unknown) {
                    decodable = false;
                    break;
                }
                unknown = &iv;
            }
            if (!decodable || !unknown) continue;
            if (++usable_count[*unknown] == 1) first_signal[*unknown] = static_cast<long long>(i);
        }
        for (const auto& iv : needed) {
            auto it = usable_count.find(iv);
            long long hits = (it == usable_count.end()) ? 0 : it->second;
            if (hits != 1) {
                worker_violation[wi] = "worker " + std::to_string(worker) + " required IV " +
                                       iv_to_string(iv) + " is decodable from " +
                                       std::to_string(hits) + " signals, expected exactly 1";
                return;
            }
            useful_by_worker[wi].push_back({first_signal[iv], 1});
            ++served_by_worker[wi];
        }
    });
    for (long long wi = 0; wi < K; ++wi) {
        if (!worker_violation[wi].empty()) {
            rep.violation = worker_violation[wi];
            rep.per_signal_useful.assign(tr.signals.size(), 0);
            return rep;
        }
        for (const auto& [sig, cnt] : useful_by_worker[wi]) rep.per_signal_useful[sig] += cnt;
        rep.served_total += served_by_worker[wi];
    }
    rep.passed = true;
    return rep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<std::uint8_t> iv_payload(std::uint64_t seed, const IvId& iv, unsigned bits) {
    if (bits < 8 || bits % 8 != 0) {
        throw std::invalid_argument("payload width must be a positive multiple of 8 bits");
    }
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(iv.function)));
    key = splitmix64(key ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(iv.file)));
    std::vector<std::uint8_t> out(bits / 8);
    for (std::size_t i = 0; i < out.size(); i += 8) {
        std::uint64_t word = splitmix64(key ^ (i / 8));
        for (std::size_t b = 0; b < 8 && i + b < out.size(); ++b) {
            out[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
        }
    }
    return out;
}

SimulationResult simulate_end_to_end(const CdcScheme& s, const SimulationConfig& cfg) {
    if (cfg.bits_per_iv < 8 || cfg.bits_per_iv % 8 != 0) {
        throw std::invalid_argument("bits_per_iv must be a positive multiple of 8");
    }
    SimulationResult res;
    res.transcript = make_transcript(s, cfg.sender);
    res.transcript.bits_per_iv = cfg.bits_per_iv;
    res.transcript.concrete = cfg.concrete;

    if (cfg.concrete) {
        // Map phase output, then each signal is the XOR of its summands.
        auto& signals = res.transcript.signals;
        parallel_for_index(signals.size(), [&](std::size_t i) {
            std::vector<std::uint8_t> acc(cfg.bits_per_iv / 8, 0);
            for (const auto& iv : signals[i].summands) {
                auto bytes = iv_payload(cfg.seed, iv, cfg.bits_per_iv);
                for (std::size_t b = 0; b < acc.size(); ++b) acc[b] ^= bytes[b];
            }
            signals[i].payload = std::move(acc);
        });
    }

    const long long K = s.params.workers;
    std::vector<long long> recovered(K, 0);
    std::vector<std::string> failure(K);
    parallel_for_index(static_cast<std::size_t>(K), [&](std::size_t wi) {
        int worker = static_cast<int>(wi) + 1;
        std::vector<DecodedIv> decoded;
        try {
            decoded = decode_required(s, res.transcript, worker);
        } catch (const ProtocolViolation& e) {
            failure[wi] = e.what();
            return;
        }
        if (cfg.concrete) {
            for (const auto& dec : decoded) {
                const auto& sig = res.transcript.signals[dec.signal_index];
                std::vector<std::uint8_t> acc = sig.payload;
                for (const auto& iv : sig.summands) {
                    if (iv == dec.iv) continue;
                    auto bytes = iv_payload(cfg.seed, iv, cfg.bits_per_iv);
                    for (std::size_t b = 0; b < acc.size(); ++b) acc[b] ^= bytes[b];
                }
                if (acc != iv_payload(cfg.seed, dec.iv, cfg.bits_per_iv)) {
                    failure[wi] = "worker " + std::to_string(worker) + " recovered wrong bits for " +
                                  iv_to_string(dec.iv);
                    return;
                }
            }
        }
        recovered[wi] = static_cast<long long>(decoded.size());
    });
    for (long long wi = 0; wi < K; ++wi) {
        if (!failure[wi].empty()) throw ProtocolViolation(failure[wi]);
    }

    auto& rep = res.report;
    rep.passed = true;
    rep.concrete = cfg.concrete;
    rep.signal_count = static_cast<long long>(res.transcript.signals.size());
    rep.total_bits = res.transcript.total_bits();
    for (long long w = 1; w <= K; ++w) rep.sent_bits_by_worker[static_cast<int>(w)] = 0;
    for (const auto& sig : res.transcript.signals) {
        rep.sent_bits_by_worker[sig.sender] += cfg.bits_per_iv;
    }
    for (long long wi = 0; wi < K; ++wi) {
        rep.recovered_ivs_by_worker[static_cast<int>(wi) + 1] = recovered[wi];
    }
    return res;
}

}  // namespace cdc
