#pragma once

// Block designs: t-designs and group divisible designs (GDDs), their
// verification against the defining coverage properties, dualization, and
// the concrete families used to seed distributed-computing schemes.
//
// Conventions:
//  - A design is stored canonically: points ascending, each block ascending,
//    the block list sorted lexicographically. Constructors and the JSON
//    loader enforce this; verification assumes it only for reproducible
//    "first violation" reporting, not for correctness.
//  - Blocks are a multiset: repeated blocks are legal (lambda > 1 designs
//    may need them) and survive canonicalization side by side.
//  - Point identifiers are arbitrary integers (the XOR quadruple family is
//    naturally 0-based, everything else 1-based).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdc/rational.hpp"

namespace cdc {

struct BlockDesign {
    std::vector<int> points;
    std::vector<std::vector<int>> blocks;
    // Present for GDDs: partition of points into equal-size groups.
    std::optional<std::vector<std::vector<int>>> groups;

    // When this design is the dual of a GDD, group id (0-based index into the
    // source design's groups) of the source point behind each block. Empty
    // otherwise. Lets structural checks see which dual blocks must be
    // disjoint without re-deriving the source design.
    std::vector<int> dual_source_groups;

    // Descriptive metadata carried through files; not part of the
    // combinatorial identity. strength/index are 0 when unknown.
    int strength = 0;          // t
    long long index = 0;       // lambda
    std::string family;

    long long point_count() const { return static_cast<long long>(points.size()); }
    long long block_count() const { return static_cast<long long>(blocks.size()); }
    bool same_structure(const BlockDesign& other) const {
        return points == other.points && blocks == other.blocks && groups == other.groups;
    }
};

// Validates basic shape (nonempty blocks drawn from the point set, groups a
// partition when present) and returns the canonically ordered design.
// Throws std::invalid_argument on malformed input.
BlockDesign make_design(std::vector<int> points,
                        std::vector<std::vector<int>> blocks,
                        std::optional<std::vector<std::vector<int>>> groups = std::nullopt);

// Relabels points to 1..N preserving order (blocks and groups follow).
BlockDesign relabel_points_canonical(const BlockDesign& d);

// Parameter bundles. Derived counts (blocks, point degree) are computed by
// the factory from the defining identities and checked for integrality.
struct TDesignParams {
    int strength = 0;           // t
    long long points = 0;       // N
    long long block_size = 0;   // M
    long long index = 0;        // lambda
    long long blocks = 0;       // K = lambda*C(N,t)/C(M,t)
    long long degree = 0;       // r = lambda*C(N-1,t-1)/C(M-1,t-1)

    static TDesignParams from(int t, long long N, long long M, long long lambda);
};

struct GddParams {
    int strength = 0;           // t
    long long group_count = 0;  // m
    long long group_size = 0;   // q
    long long block_size = 0;   // M
    long long index = 0;        // lambda
    long long blocks = 0;       // K = lambda*C(m,t)*q^t/C(M,t)
    long long degree = 0;       // r = lambda*q^(t-1)*C(m-1,t-1)/C(M-1,t-1)

    long long point_total() const { return group_count * group_size; }
    static GddParams from(int t, long long m, long long q, long long M, long long lambda);
};

struct VerificationReport {
    bool passed = false;
    std::string violation;          // first violation in enumeration order; empty if passed
    long long counted_blocks = 0;   // K as counted
    long long counted_degree = 0;   // per-point occurrence when uniform, -1 otherwise
    long long expected_blocks = 0;  // from the parameter identities
    long long expected_degree = 0;
};

// Exhaustive verifier: every t-subset of points must lie in exactly `lambda`
// blocks, blocks must have one uniform size M with t <= M < N, and the
// counted K and r must match the parameter identities.
// Throws std::invalid_argument when t < 2, t exceeds the smallest block, the
// block list is empty, or the design has fewer than t points.
VerificationReport verify_t_design(const BlockDesign& d, int t, long long lambda);

// GDD verifier: groups must partition the points into equal-size cells, no
// block may meet a group twice, and every t-subset drawn from t distinct
// groups must lie in exactly `lambda` blocks. Uniform block size M <= m.
VerificationReport verify_gdd(const BlockDesign& d, int t, long long lambda);

// Derived index: number of blocks through a fixed t'-subset, 0 <= t' <= t.
// Integer-valued for admissible parameters; returned exactly as a rational.
Rational lambda_derived(const TDesignParams& p, int t_prime);
// GDD flavor, cross-group subsets. Only t' = 2 is needed downstream.
Rational lambda_derived(const GddParams& p, int t_prime);

// Dual: points become blocks and vice versa. Output points are block indices
// 1..K; output block i is the set of indices of blocks containing the i-th
// point, so blocks are ordered by source point (placement order), not
// re-sorted. Dualizing twice therefore reproduces a canonically-labeled
// design exactly when its points are 1..N.
BlockDesign dualize(const BlockDesign& d);

// --- families ---------------------------------------------------------

// Lines of the projective plane over F_p, p prime: a 2-(p^2+p+1, p+1, 1)
// design with K = N (symmetric). Throws for non-prime p (prime powers with
// exponent > 1 are not supported).
BlockDesign projective_plane_sbibd(long long p);

// Transversal design TD(p, p) viewed as a 2-GDD: points (i,j) encoded as
// i*p + j + 1, groups the columns {(i,*)}, blocks the graphs of the affine
// maps j = a*i + b over Z_p. K = p^2 blocks of size M = p, lambda = 1.
// Throws for non-prime p.
BlockDesign transversal_gdd(long long p);

// Steiner triple system on n points, n == 3 (mod 6), by the Bose
// construction over Z_m x Z_3 (n = 3m). 2-(n, 3, 1).
BlockDesign steiner_triple_bose(long long n);

// All 4-subsets {a,b,c,d} of [0, 2^k) with a^b^c^d = 0: a 3-(2^k, 4, 1)
// design (Steiner quadruple system). k >= 3.
BlockDesign boolean_sqs(int k);

// Every M-subset of {1..N}: a t-(N, M, C(N-t, M-t)) design for any t <= M.
BlockDesign complete_design(long long N, long long M, int t);

// Necessary divisibility conditions: lambda*C(N-i, t-i) == 0 mod C(M-i, t-i)
// for 0 <= i <= t-1. Necessary only; no existence promise.
bool admissible_t_design(int t, long long N, long long M, long long lambda);

// GDD counterpart for t = 2: lambda*q^(2-i)*C(m-i, 2-i) == 0 mod C(M-i, 2-i)
// for i = 0, 1.
bool admissible_2_gdd(long long m, long long q, long long M, long long lambda);

// --- search ------------------------------------------------------------

enum class SearchStatus {
    Found,            // a design was constructed (verified by construction)
    BudgetExhausted,  // node budget ran out; existence undecided
    Exhausted,        // full space searched; no design with these parameters
};

struct SearchResult {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<BlockDesign> design;
    std::uint64_t nodes_visited = 0;
};

// Deterministic backtracking over M-subsets in lexicographic order with
// coverage counters. Each step extends with a block through the first
// under-covered t-subset, never over-covering any t-subset. N <= 14.
// Throws std::invalid_argument when parameters are inadmissible or N > 14.
SearchResult brute_force_design_search(int t, long long N, long long M, long long lambda,
                                       std::uint64_t node_budget = 2'000'000);

}  // namespace cdc
