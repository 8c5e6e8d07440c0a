#include "cdc/scheme.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cdc {

namespace {

// Per point index, sorted 1-based ids of the blocks containing it.
std::vector<std::vector<int>> dual_blocks_by_point(const BlockDesign& d) {
    std::map<int, int> point_index;
    for (std::size_t i = 0; i < d.points.size(); ++i) point_index[d.points[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> inc(d.points.size());
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        for (int x : d.blocks[b]) inc[point_index.at(x)].push_back(static_cast<int>(b) + 1);
    }
    return inc;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void require_verified(const VerificationReport& rep, const char* what) {
    if (!rep.passed) {
        throw VerificationFailure(std::string(what) + " verification failed: " + rep.violation);
    }
}

}  // namespace

std::string to_string(SchemeKind k) {
    switch (k) {
        case SchemeKind::TDesign: return "t-design";
        case SchemeKind::Gdd: return "gdd";
        case SchemeKind::Unequal: return "t-design-unequal";
    }
    return "unknown";
}

long long CdcScheme::file_pos(int file) const {
    auto it = std::lower_bound(files.begin(), files.end(), file);
    if (it == files.end() || *it != file) {
        throw std::invalid_argument("unknown file id " + std::to_string(file));
    }
    return it - files.begin();
}

long long CdcScheme::function_pos(int function) const {
    auto it = std::lower_bound(functions.begin(), functions.end(), function);
    if (it == functions.end() || *it != function) {
        throw std::invalid_argument("unknown function id " + std::to_string(function));
    }
    return it - functions.begin();
}

bool CdcScheme::worker_stores(int worker, int file) const {
    const auto& p = placement_of(file);
    return std::binary_search(p.begin(), p.end(), worker);
}

bool CdcScheme::worker_reduces(int worker, int function) const {
    const auto& a = assignment_of(function);
    return std::binary_search(a.begin(), a.end(), worker);
}

namespace {

CdcScheme pair_scheme_common(const BlockDesign& d, int t, long long lambda, SchemeKind kind) {
    const long long N = d.point_count();
    const long long M = static_cast<long long>(d.blocks.front().size());
    if (M >= N) {
        throw std::invalid_argument("degenerate scheme: every worker would store every file");
    }
    CdcScheme s;
    s.kind = kind;
    s.files = d.points;
    s.functions = d.points;
    s.placement = dual_blocks_by_point(d);
    s.assignment = s.placement;
    s.worker_files = d.blocks;
    s.strength = t;
    s.index = lambda;
    s.family = d.family;
    s.params.workers = d.block_count();
    s.params.map_replication = static_cast<long long>(s.placement.front().size());
    s.params.reduce_replication = s.params.map_replication;
    s.params.files = N;
    s.params.functions = N;
    s.params.files_per_worker = M;
    return s;
}

}  // namespace

CdcScheme scheme_from_t_design(const BlockDesign& d, int t, long long lambda) {
    require_verified(verify_t_design(d, t, lambda), "t-design");
    return pair_scheme_common(d, t, lambda, SchemeKind::TDesign);
}

CdcScheme scheme_from_gdd(const BlockDesign& d, int t, long long lambda) {
    require_verified(verify_gdd(d, t, lambda), "GDD");
    CdcScheme s = pair_scheme_common(d, t, lambda, SchemeKind::Gdd);
    const auto& groups = *d.groups;
    s.group_count = static_cast<long long>(groups.size());
    s.group_size = static_cast<long long>(groups.front().size());
    std::map<int, int> group_of;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (int x : groups[g]) group_of[x] = static_cast<int>(g);
    }
    s.file_groups.reserve(s.files.size());
    for (int x : s.files) s.file_groups.push_back(group_of.at(x));
    return s;
}

CdcScheme scheme_from_t_design_unequal(const BlockDesign& d, int t, long long lambda) {
    require_verified(verify_t_design(d, t, lambda), "t-design");
    const long long N = d.point_count();
    const long long M = static_cast<long long>(d.blocks.front().size());

    CdcScheme s;
    s.kind = SchemeKind::Unequal;
    s.files = d.points;
    s.placement = dual_blocks_by_point(d);
    s.worker_files = d.blocks;
    s.strength = t;
    s.index = lambda;
    s.family = d.family;
    s.params.workers = d.block_count();
    s.params.map_replication = static_cast<long long>(s.placement.front().size());
    s.params.files = N;
    s.params.files_per_worker = M;

    // Reduce replication s = lambda*(N-t+1)/(M-t+1): the size of the common
    // intersection of t-1 dual blocks (blocks through a fixed (t-1)-subset).
    Integer s_num = Integer(lambda) * (N - t + 1);
    Integer s_den = M - t + 1;
    s.params.reduce_replication = exact_quotient(s_num, s_den);

    // Functions: (t-1)-subsets of points in lex order, ids 1..C(N, t-1).
    const int tsub = t - 1;
    std::vector<int> idx(tsub);
    for (int i = 0; i < tsub; ++i) idx[i] = i;
    int next_id = 1;
    while (true) {
        std::vector<int> subset;
        subset.reserve(tsub);
        for (int j : idx) subset.push_back(d.points[j]);
        std::vector<int> workers = s.placement[idx[0]];
        for (int i = 1; i < tsub; ++i) workers = intersect_sorted(workers, s.placement[idx[i]]);
        if (static_cast<long long>(workers.size()) != s.params.reduce_replication) {
            std::ostringstream msg;
            msg << "function over subset {";
            for (std::size_t i = 0; i < subset.size(); ++i) msg << (i ? "," : "") << subset[i];
            msg << "} has " << workers.size() << " eligible workers, expected "
                << s.params.reduce_replication;
            throw VerificationFailure(msg.str());
        }
        s.functions.push_back(next_id++);
        s.function_subsets.push_back(std::move(subset));
        s.assignment.push_back(std::move(workers));

        int i = tsub - 1;
        while (i >= 0 && idx[i] == static_cast<int>(N) - tsub + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < tsub; ++j) idx[j] = idx[j - 1] + 1;
    }
    s.params.functions = static_cast<long long>(s.functions.size());
    return s;
}

std::vector<IvId> computed_ivs(const CdcScheme& s, int worker) {
    if (worker < 1 || worker > s.params.workers) {
        throw std::invalid_argument("unknown worker id " + std::to_string(worker));
    }
    const auto& stored = s.worker_files[worker - 1];
    std::vector<IvId> out;
    out.reserve(s.functions.size() * stored.size());
    for (int q : s.functions) {
        for (int n : stored) out.push_back({q, n});
    }
    return out;
}

std::vector<IvId> required_ivs(const CdcScheme& s, int worker) {
    if (worker < 1 || worker > s.params.workers) {
        throw std::invalid_argument("unknown worker id " + std::to_string(worker));
    }
    const auto& stored = s.worker_files[worker - 1];
    std::vector<IvId> out;
    for (std::size_t qi = 0; qi < s.functions.size(); ++qi) {
        const auto& workers = s.assignment[qi];
        if (!std::binary_search(workers.begin(), workers.end(), worker)) continue;
        for (int n : s.files) {
            if (!std::binary_search(stored.begin(), stored.end(), n)) {
                out.push_back({s.functions[qi], n});
            }
        }
    }
    return out;
}

DemandReport check_demand_characterization(const CdcScheme& s) {
    if (s.kind == SchemeKind::Unequal) {
        throw std::invalid_argument(
            "demand characterization applies to pair schemes (functions = files) only");
    }
    DemandReport rep;
    for (std::size_t qi = 0; qi < s.functions.size(); ++qi) {
        for (std::size_t ni = 0; ni < s.files.size(); ++ni) {
            const auto& assigned = s.assignment[qi];
            const auto& holders = s.placement[ni];
            std::vector<int> demanders;
            std::set_difference(assigned.begin(), assigned.end(), holders.begin(), holders.end(),
                                std::back_inserter(demanders));
            bool expect_demand = s.functions[qi] != s.files[ni];
            if (expect_demand && demanders.empty()) {
                rep.violation = "no worker demands v_{" + std::to_string(s.functions[qi]) + "," +
                                std::to_string(s.files[ni]) + "}";
                return rep;
            }
            if (!expect_demand && !demanders.empty()) {
                rep.violation = "worker " + std::to_string(demanders.front()) + " demands diagonal v_{" +
                                std::to_string(s.functions[qi]) + "," + std::to_string(s.files[ni]) + "}";
                return rep;
            }
            if (expect_demand) ++rep.demanded_pairs;
        }
    }
    rep.passed = true;
    return rep;
}

}  // namespace cdc
