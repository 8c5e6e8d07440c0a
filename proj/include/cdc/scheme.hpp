#pragma once

// Cascaded map/shuffle/reduce schemes derived from block designs via their
// duals. Workers are the design's blocks (ids 1..K); files and reduce
// functions are keyed by the design's points. A worker stores the files
// whose dual blocks contain it, i.e. worker k stores file x iff x lies in
// block k of the source design.

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/design.hpp"

namespace cdc {

// Intermediate value v_{function, file}: the piece of reduce input for
// `function` computable from `file` alone.
struct IvId {
    int function = 0;
    int file = 0;
    auto operator<=>(const IvId&) const = default;
};

// Input design failed its defining property check.
struct VerificationFailure : std::runtime_error {
    explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

enum class SchemeKind {
    TDesign,  // symmetric pair scheme: functions = files = points, r = s
    Gdd,      // group divisible variant, r = s
    Unequal,  // reduced reduce-replication: functions = (t-1)-subsets, s < r
};

std::string to_string(SchemeKind k);

struct SchemeParams {
    long long workers = 0;           // K
    long long map_replication = 0;   // r
    long long reduce_replication = 0;  // s
    long long files = 0;             // N
    long long functions = 0;         // Q
    long long files_per_worker = 0;  // M
};

struct CdcScheme {
    SchemeKind kind = SchemeKind::TDesign;
    SchemeParams params;

    std::vector<int> files;             // point ids, ascending
    std::vector<int> functions;         // point ids (pair schemes) or 1..Q (unequal)
    std::vector<std::vector<int>> placement;   // per file index: sorted worker ids
    std::vector<std::vector<int>> assignment;  // per function index: sorted worker ids
    std::vector<std::vector<int>> worker_files;  // per worker index: sorted file ids (block content)

    // Unequal kind: the (t-1)-subset of points behind each function index.
    std::vector<std::vector<int>> function_subsets;
    // Gdd kind: 0-based group id per file index.
    std::vector<int> file_groups;

    // Source design descriptors.
    int strength = 0;       // t
    long long index = 0;    // lambda
    std::string family;
    long long group_count = 0;  // m (Gdd kind)
    long long group_size = 0;   // q (Gdd kind)

    long long file_pos(int file) const;
    long long function_pos(int function) const;
    const std::vector<int>& placement_of(int file) const { return placement[file_pos(file)]; }
    const std::vector<int>& assignment_of(int function) const {
        return assignment[function_pos(function)];
    }
    bool worker_stores(int worker, int file) const;
    bool worker_reduces(int worker, int function) const;
};

// Build the symmetric scheme from a verified t-design: workers = blocks,
// both the file placement and the function assignment of point x are the
// dual block R_x. K workers, r = s = point degree, N = Q = points.
// Throws VerificationFailure when the design fails verification.
CdcScheme scheme_from_t_design(const BlockDesign& d, int t, long long lambda);

// Same construction from a verified GDD; group structure is retained so the
// delivery step can recognize same-group file pairs (disjoint placements).
CdcScheme scheme_from_gdd(const BlockDesign& d, int t, long long lambda);

// Reduced reduce-replication scheme from a verified t-design, t >= 2:
// functions are the (t-1)-subsets C of points (lex order, ids 1..C(N,t-1)),
// assigned to the workers in the intersection of the dual blocks of C.
// Every assignment set has size s = lambda*(N-t+1)/(M-t+1).
CdcScheme scheme_from_t_design_unequal(const BlockDesign& d, int t, long long lambda);

// IVs worker w can compute locally: (q, n) for every function q and every
// stored file n. Sorted by (function, file).
std::vector<IvId> computed_ivs(const CdcScheme& s, int worker);

// IVs worker w needs from the shuffle: (q, n) with q assigned to w and n not
// stored by w. Sorted by (function, file).
std::vector<IvId> required_ivs(const CdcScheme& s, int worker);

struct DemandReport {
    bool passed = false;
    std::string violation;
    long long demanded_pairs = 0;  // (q, n) pairs demanded by at least one worker
};

// Pair schemes only: checks that IV (q, n) is demanded by some worker
// exactly when q != n, and that the demanders of (q, n) are precisely
// assignment(q) minus placement(n). Rejects unequal-replication schemes.
DemandReport check_demand_characterization(const CdcScheme& s);

}  // namespace cdc
