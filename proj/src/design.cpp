#include "cdc/design.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cdc/parallel.hpp"

namespace cdc {

namespace {

std::string subset_to_string(const std::vector<int>& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << ",";
        out << s[i];
    }
    out << "}";
    return out.str();
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

// Enumerates all k-subsets of [0, n) in lexicographic order.
void for_each_combination(long long n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Sorted-vector intersection size.
long long intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    long long n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++n; ++ia; ++ib; }
    }
    return n;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Incidence lists: for each point (by index), the sorted indices of blocks
// containing it.
std::vector<std::vector<int>> incidence_lists(const BlockDesign& d) {
    std::map<int, int> point_index;
    for (std::size_t i = 0; i < d.points.size(); ++i) point_index[d.points[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> inc(d.points.size());
    for (std::size_t b = 0; b < d.blocks.size(); ++b) {
        for (int x : d.blocks[b]) inc[point_index.at(x)].push_back(static_cast<int>(b));
    }
    return inc;
}

}  // namespace

BlockDesign make_design(std::vector<int> points,
                        std::vector<std::vector<int>> blocks,
                        std::optional<std::vector<std::vector<int>>> groups) {
    if (points.empty()) throw std::invalid_argument("design needs at least one point");
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
        throw std::invalid_argument("duplicate point identifiers");
    }
    for (auto& blk : blocks) {
        if (blk.empty()) throw std::invalid_argument("empty block");
        std::sort(blk.begin(), blk.end());
        if (std::adjacent_find(blk.begin(), blk.end()) != blk.end()) {
            throw std::invalid_argument("block repeats a point: " + subset_to_string(blk));
        }
        for (int x : blk) {
            if (!std::binary_search(points.begin(), points.end(), x)) {
                throw std::invalid_argument("block uses unknown point " + std::to_string(x));
            }
        }
    }
    std::sort(blocks.begin(), blocks.end());
    if (groups) {
        std::vector<int> seen;
        for (auto& cell : *groups) {
            if (cell.empty()) throw std::invalid_argument("empty group");
            std::sort(cell.begin(), cell.end());
            for (int x : cell) seen.push_back(x);
        }
        std::sort(seen.begin(), seen.end());
        if (seen != points) throw std::invalid_argument("groups do not partition the point set");
        std::sort(groups->begin(), groups->end());
    }
    BlockDesign d;
    d.points = std::move(points);
    d.blocks = std::move(blocks);
    d.groups = std::move(groups);
    return d;
}

BlockDesign relabel_points_canonical(const BlockDesign& d) {
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < d.points.size(); ++i) relabel[d.points[i]] = static_cast<int>(i) + 1;
    auto map_all = [&](const std::vector<std::vector<int>>& sets) {
        std::vector<std::vector<int>> out(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            out[i].reserve(sets[i].size());
            for (int x : sets[i]) out[i].push_back(relabel.at(x));
        }
        return out;
    };
    std::vector<int> new_points(d.points.size());
    for (std::size_t i = 0; i < new_points.size(); ++i) new_points[i] = static_cast<int>(i) + 1;
    std::optional<std::vector<std::vector<int>>> new_groups;
    if (d.groups) new_groups = map_all(*d.groups);
    BlockDesign out = make_design(std::move(new_points), map_all(d.blocks), std::move(new_groups));
    out.dual_source_groups = d.dual_source_groups;
    out.strength = d.strength;
    out.index = d.index;
    out.family = d.family;
    return out;
}

TDesignParams TDesignParams::from(int t, long long N, long long M, long long lambda) {
    if (t < 2 || t > M || M >= N || lambda < 1) {
        throw std::invalid_argument("t-design parameters need 2 <= t <= M < N and lambda >= 1");
    }
    TDesignParams p;
    p.strength = t;
    p.points = N;
    p.block_size = M;
    p.index = lambda;
    p.blocks = exact_quotient(Integer(lambda) * binomial(N, t), binomial(M, t));
    p.degree = exact_quotient(Integer(lambda) * binomial(N - 1, t - 1), binomial(M - 1, t - 1));
    return p;
}

GddParams GddParams::from(int t, long long m, long long q, long long M, long long lambda) {
    if (t < 2 || t > M || M > m || q < 1 || lambda < 1) {
        throw std::invalid_argument("GDD parameters need 2 <= t <= M <= m and q, lambda >= 1");
    }
    GddParams p;
    p.strength = t;
    p.group_count = m;
    p.group_size = q;
    p.block_size = M;
    p.index = lambda;
    Integer qt = 1;
    for (int i = 0; i < t; ++i) qt *= q;
    p.blocks = exact_quotient(Integer(lambda) * binomial(m, t) * qt, binomial(M, t));
    Integer qt1 = qt / q;
    p.degree = exact_quotient(Integer(lambda) * qt1 * binomial(m - 1, t - 1), binomial(M - 1, t - 1));
    return p;
}

VerificationReport verify_t_design(const BlockDesign& d, int t, long long lambda) {
    if (t < 2) throw std::invalid_argument("strength t must be at least 2");
    if (d.blocks.empty()) throw std::invalid_argument("design has no blocks");
    if (d.point_count() < t) throw std::invalid_argument("fewer points than strength t");
    std::size_t min_block = d.blocks.front().size();
    for (const auto& b : d.blocks) min_block = std::min(min_block, b.size());
    if (static_cast<std::size_t>(t) > min_block) {
        throw std::invalid_argument("strength t exceeds the smallest block size");
    }

    VerificationReport rep;
    rep.counted_blocks = d.block_count();

    const long long N = d.point_count();
    const long long M = static_cast<long long>(d.blocks.front().size());

    auto inc = incidence_lists(d);
    rep.counted_degree = static_cast<long long>(inc.front().size());
    for (const auto& lst : inc) {
        if (static_cast<long long>(lst.size()) != rep.counted_degree) {
            rep.counted_degree = -1;
            break;
        }
    }

    for (const auto& b : d.blocks) {
        if (static_cast<long long>(b.size()) != M) {
            rep.violation = "block " + subset_to_string(b) + " has size " +
                            std::to_string(b.size()) + ", expected uniform size " + std::to_string(M);
            return rep;
        }
    }
    if (M >= N) {
        rep.violation = "block size " + std::to_string(M) +
                        " must be strictly below the point count " + std::to_string(N);
        return rep;
    }

    // Coverage: count, for every t-subset, the blocks containing it, via
    // intersection of per-point incidence lists. Deterministic first
    // violation = lexicographically first failing subset.
    std::vector<std::vector<int>> subsets;
    for_each_combination(N, t, [&](const std::vector<int>& idx) { subsets.push_back(idx); });
    std::vector<long long> counts(subsets.size(), 0);
    parallel_for_index(subsets.size(), [&](std::size_t i) {
        std::vector<int> acc = inc[subsets[i][0]];
        for (int j = 1; j < t && !acc.empty(); ++j) acc = intersect_sorted(acc, inc[subsets[i][j]]);
        counts[i] = static_cast<long long>(acc.size());
    });
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (counts[i] != lambda) {
            std::vector<int> pts;
            for (int j : subsets[i]) pts.push_back(d.points[j]);
            rep.violation = "point subset " + subset_to_string(pts) + " lies in " +
                            std::to_string(counts[i]) + " blocks, expected " + std::to_string(lambda);
            return rep;
        }
    }

    // Parameter identities for K and r.
    Integer k_num = Integer(lambda) * binomial(N, t);
    Integer k_den = binomial(M, t);
    Integer r_num = Integer(lambda) * binomial(N - 1, t - 1);
    Integer r_den = binomial(M - 1, t - 1);
    if (k_num % k_den != 0 || r_num % r_den != 0) {
        rep.violation = "parameter identities give non-integer block count or degree";
        return rep;
    }
    rep.expected_blocks = (k_num / k_den).convert_to<long long>();
    rep.expected_degree = (r_num / r_den).convert_to<long long>();
    if (rep.counted_blocks != rep.expected_blocks) {
        rep.violation = "counted " + std::to_string(rep.counted_blocks) + " blocks, identity gives " +
                        std::to_string(rep.expected_blocks);
        return rep;
    }
    if (rep.counted_degree != rep.expected_degree) {
        rep.violation = "counted point degree " + std::to_string(rep.counted_degree) +
                        ", identity gives " + std::to_string(rep.expected_degree);
        return rep;
    }
    rep.passed = true;
    return rep;
}

VerificationReport verify_gdd(const BlockDesign& d, int t, long long lambda) {
    if (t < 2) throw std::invalid_argument("strength t must be at least 2");
    if (d.blocks.empty()) throw std::invalid_argument("design has no blocks");
    if (!d.groups) throw std::invalid_argument("GDD verification needs groups");

    // Re-check the partition property: hand-assembled designs may bypass
    // make_design.
    {
        std::vector<int> seen;
        for (const auto& cell : *d.groups) {
            for (int x : cell) seen.push_back(x);
        }
        std::sort(seen.begin(), seen.end());
        if (seen != d.points) throw std::invalid_argument("groups do not partition the point set");
    }

    VerificationReport rep;
    rep.counted_blocks = d.block_count();

    const auto& groups = *d.groups;
    const long long m = static_cast<long long>(groups.size());
    const long long q = static_cast<long long>(groups.front().size());
    const long long M = static_cast<long long>(d.blocks.front().size());

    auto inc = incidence_lists(d);
    rep.counted_degree = static_cast<long long>(inc.front().size());
    for (const auto& lst : inc) {
        if (static_cast<long long>(lst.size()) != rep.counted_degree) {
            rep.counted_degree = -1;
            break;
        }
    }

    for (const auto& cell : groups) {
        if (static_cast<long long>(cell.size()) != q) {
            rep.violation = "group " + subset_to_string(cell) + " has size " +
                            std::to_string(cell.size()) + ", expected uniform size " + std::to_string(q);
            return rep;
        }
    }
    for (const auto& b : d.blocks) {
        if (static_cast<long long>(b.size()) != M) {
            rep.violation = "block " + subset_to_string(b) + " has size " +
                            std::to_string(b.size()) + ", expected uniform size " + std::to_string(M);
            return rep;
        }
    }
    if (t > M || M > m) {
        rep.violation = "need t <= block size <= group count, got t=" + std::to_string(t) +
                        " M=" + std::to_string(M) + " m=" + std::to_string(m);
        return rep;
    }

    // Group id per point index.
    std::map<int, int> point_index;
    for (std::size_t i = 0; i < d.points.size(); ++i) point_index[d.points[i]] = static_cast<int>(i);
    std::vector<int> group_of(d.points.size(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (int x : groups[g]) group_of[point_index.at(x)] = static_cast<int>(g);
    }

    // No block may meet a group in two points.
    for (const auto& b : d.blocks) {
        std::set<int> seen_groups;
        for (int x : b) {
            int g = group_of[point_index.at(x)];
            if (!seen_groups.insert(g).second) {
                rep.violation = "block " + subset_to_string(b) + " meets group " +
                                subset_to_string(groups[g]) + " twice";
                return rep;
            }
        }
    }

    // Coverage over t-subsets drawn from t distinct groups.
    const long long N = d.point_count();
    std::vector<std::vector<int>> subsets;
    for_each_combination(N, t, [&](const std::vector<int>& idx) {
        std::set<int> gs;
        for (int j : idx) gs.insert(group_of[j]);
        if (static_cast<int>(gs.size()) == t) subsets.push_back(idx);
    });
    std::vector<long long> counts(subsets.size(), 0);
    parallel_for_index(subsets.size(), [&](std::size_t i) {
        std::vector<int> acc = inc[subsets[i][0]];
        for (int j = 1; j < t && !acc.empty(); ++j) acc = intersect_sorted(acc, inc[subsets[i][j]]);
        counts[i] = static_cast<long long>(acc.size());
    });
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (counts[i] != lambda) {
            std::vector<int> pts;
            for (int j : subsets[i]) pts.push_back(d.points[j]);
            rep.violation = "cross-group subset " + subset_to_string(pts) + " lies in " +
                            std::to_string(counts[i]) + " blocks, expected " + std::to_string(lambda);
            return rep;
        }
    }

    Integer qt = 1;
    for (int i = 0; i < t; ++i) qt *= q;
    Integer k_num = Integer(lambda) * binomial(m, t) * qt;
    Integer k_den = binomial(M, t);
    Integer r_num = Integer(lambda) * (qt / q) * binomial(m - 1, t - 1);
    Integer r_den = binomial(M - 1, t - 1);
    if (k_num % k_den != 0 || r_num % r_den != 0) {
        rep.violation = "parameter identities give non-integer block count or degree";
        return rep;
    }
    rep.expected_blocks = (k_num / k_den).convert_to<long long>();
    rep.expected_degree = (r_num / r_den).convert_to<long long>();
    if (rep.counted_blocks != rep.expected_blocks) {
        rep.violation = "counted " + std::to_string(rep.counted_blocks) + " blocks, identity gives " +
                        std::to_string(rep.expected_blocks);
        return rep;
    }
    if (rep.counted_degree != rep.expected_degree) {
        rep.violation = "counted point degree " + std::to_string(rep.counted_degree) +
                        ", identity gives " + std::to_string(rep.expected_degree);
        return rep;
    }
    rep.passed = true;
    return rep;
}

Rational lambda_derived(const TDesignParams& p, int t_prime) {
    if (t_prime < 0 || t_prime > p.strength) {
        throw std::invalid_argument("derived index needs 0 <= t' <= t");
    }
    Integer num = Integer(p.index) * binomial(p.points - t_prime, p.strength - t_prime);
    Integer den = binomial(p.block_size - t_prime, p.strength - t_prime);
    return Rational(num, den);
}

Rational lambda_derived(const GddParams& p, int t_prime) {
    if (t_prime < 0 || t_prime > p.strength) {
        throw std::invalid_argument("derived index needs 0 <= t' <= t");
    }
    // Blocks through a fixed cross-group t'-subset: the remaining t - t'
    // points come from t - t' of the other m - t' groups, q choices each.
    Integer qpow = 1;
    for (int i = 0; i < p.strength - t_prime; ++i) qpow *= p.group_size;
    Integer num = Integer(p.index) * binomial(p.group_count - t_prime, p.strength - t_prime) * qpow;
    Integer den = binomial(p.block_size - t_prime, p.strength - t_prime);
    return Rational(num, den);
}

BlockDesign dualize(const BlockDesign& d) {
    if (d.blocks.empty()) throw std::invalid_argument("cannot dualize an empty design");
    const long long K = d.block_count();
    std::vector<int> dual_points(K);
    for (long long i = 0; i < K; ++i) dual_points[i] = static_cast<int>(i) + 1;

    auto inc = incidence_lists(d);
    std::vector<std::vector<int>> dual_blocks(d.points.size());
    for (std::size_t i = 0; i < inc.size(); ++i) {
        dual_blocks[i].reserve(inc[i].size());
        for (int b : inc[i]) dual_blocks[i].push_back(b + 1);
        if (dual_blocks[i].empty()) {
            throw std::invalid_argument("point " + std::to_string(d.points[i]) +
                                        " lies in no block; dual block would be empty");
        }
    }

    BlockDesign dual;
    dual.points = std::move(dual_points);
    dual.blocks = std::move(dual_blocks);
    // When d is itself the dual of a GDD, block i stands for the i-th source
    // point and the annotation records that point's group. Dualizing again
    // turns those blocks back into points, so the partition is recoverable.
    if (!d.dual_source_groups.empty() && d.dual_source_groups.size() == d.blocks.size()) {
        std::map<int, std::vector<int>> cells;
        for (std::size_t i = 0; i < d.blocks.size(); ++i) {
            cells[d.dual_source_groups[i]].push_back(static_cast<int>(i) + 1);
        }
        std::vector<std::vector<int>> groups;
        groups.reserve(cells.size());
        for (auto& [gid, cell] : cells) groups.push_back(std::move(cell));
        std::sort(groups.begin(), groups.end());
        dual.groups = std::move(groups);
    }
    if (d.groups) {
        std::map<int, int> point_index;
        for (std::size_t i = 0; i < d.points.size(); ++i) point_index[d.points[i]] = static_cast<int>(i);
        std::vector<int> group_of(d.points.size(), -1);
        for (std::size_t g = 0; g < d.groups->size(); ++g) {
            for (int x : (*d.groups)[g]) group_of[point_index.at(x)] = static_cast<int>(g);
        }
        dual.dual_source_groups = std::move(group_of);
    }
    dual.strength = d.strength;
    dual.index = d.index;
    if (d.family.rfind("dual:", 0) == 0) {
        dual.family = d.family.substr(5);
    } else if (!d.family.empty()) {
        dual.family = "dual:" + d.family;
    }
    return dual;
}

BlockDesign projective_plane_sbibd(long long p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("projective plane constructor supports prime orders only, got " +
                                    std::to_string(p));
    }
    // Points: 1-dim subspaces of F_p^3, one normalized representative each
    // (first nonzero coordinate = 1), enumerated lexicographically.
    std::vector<std::array<long long, 3>> reps;
    for (long long y = 0; y < p; ++y)
        for (long long z = 0; z < p; ++z) reps.push_back({1, y, z});
    for (long long z = 0; z < p; ++z) reps.push_back({0, 1, z});
    reps.push_back({0, 0, 1});
    std::sort(reps.begin(), reps.end());

    const long long N = p * p + p + 1;
    std::vector<int> points(N);
    for (long long i = 0; i < N; ++i) points[i] = static_cast<int>(i) + 1;

    // Lines: kernels of normalized functionals; each contains p+1 points.
    std::vector<std::vector<int>> blocks;
    for (const auto& u : reps) {
        std::vector<int> blk;
        for (long long i = 0; i < N; ++i) {
            const auto& x = reps[i];
            if ((u[0] * x[0] + u[1] * x[1] + u[2] * x[2]) % p == 0) blk.push_back(static_cast<int>(i) + 1);
        }
        blocks.push_back(std::move(blk));
    }

    BlockDesign d = make_design(std::move(points), std::move(blocks));
    d.strength = 2;
    d.index = 1;
    d.family = "projective-plane";
    return d;
}

BlockDesign transversal_gdd(long long p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("transversal design constructor supports prime orders only, got " +
                                    std::to_string(p));
    }
    // Point (i, j) -> i*p + j + 1; group i holds column {(i, *)}.
    std::vector<int> points(p * p);
    for (long long i = 0; i < p * p; ++i) points[i] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> groups(p);
    for (long long i = 0; i < p; ++i) {
        for (long long j = 0; j < p; ++j) groups[i].push_back(static_cast<int>(i * p + j) + 1);
    }
    std::vector<std::vector<int>> blocks;
    for (long long a = 0; a < p; ++a) {
        for (long long b = 0; b < p; ++b) {
            std::vector<int> blk;
            for (long long i = 0; i < p; ++i) blk.push_back(static_cast<int>(i * p + (a * i + b) % p) + 1);
            blocks.push_back(std::move(blk));
        }
    }
    BlockDesign d = make_design(std::move(points), std::move(blocks), std::move(groups));
    d.strength = 2;
    d.index = 1;
    d.family = "transversal-gdd";
    return d;
}

BlockDesign steiner_triple_bose(long long n) {
    if (n < 3 || n % 6 != 3) {
        throw std::invalid_argument("Bose construction needs n == 3 (mod 6), got " + std::to_string(n));
    }
    // Points (i, k) in Z_m x Z_3 with n = 3m, encoded as 3i + k + 1.
    const long long m = n / 3;
    const long long inv2 = (m + 1) / 2;  // inverse of 2 mod odd m
    auto id = [&](long long i, long long k) { return static_cast<int>(3 * i + k) + 1; };

    std::vector<int> points(n);
    for (long long i = 0; i < n; ++i) points[i] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> blocks;
    for (long long i = 0; i < m; ++i) blocks.push_back({id(i, 0), id(i, 1), id(i, 2)});
    for (long long i = 0; i < m; ++i) {
        for (long long j = i + 1; j < m; ++j) {
            long long h = ((i + j) * inv2) % m;
            for (long long k = 0; k < 3; ++k) {
                blocks.push_back({id(i, k), id(j, k), id(h, (k + 1) % 3)});
            }
        }
    }
    BlockDesign d = make_design(std::move(points), std::move(blocks));
    d.strength = 2;
    d.index = 1;
    d.family = "steiner-triple";
    return d;
}

BlockDesign boolean_sqs(int k) {
    if (k < 3) throw std::invalid_argument("XOR quadruple system needs k >= 3");
    const int n = 1 << k;
    std::vector<int> points(n);
    for (int i = 0; i < n; ++i) points[i] = i;
    std::vector<std::vector<int>> blocks;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                int d = a ^ b ^ c;
                if (d > c) blocks.push_back({a, b, c, d});
            }
        }
    }
    BlockDesign d = make_design(std::move(points), std::move(blocks));
    d.strength = 3;
    d.index = 1;
    d.family = "boolean-sqs";
    return d;
}

BlockDesign complete_design(long long N, long long M, int t) {
    if (t < 2 || t > M || M >= N) {
        throw std::invalid_argument("complete design needs 2 <= t <= M < N");
    }
    if (binomial(N, M) > 200000) {
        throw std::invalid_argument("complete design too large to enumerate");
    }
    std::vector<int> points(N);
    for (long long i = 0; i < N; ++i) points[i] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> blocks;
    for_each_combination(N, static_cast<int>(M), [&](const std::vector<int>& idx) {
        std::vector<int> blk;
        blk.reserve(idx.size());
        for (int j : idx) blk.push_back(j + 1);
        blocks.push_back(std::move(blk));
    });
    BlockDesign d = make_design(std::move(points), std::move(blocks));
    d.strength = t;
    d.index = binomial(N - t, M - t).convert_to<long long>();
    d.family = "complete";
    return d;
}

bool admissible_t_design(int t, long long N, long long M, long long lambda) {
    if (t < 2 || t > M || M >= N || lambda < 1) return false;
    for (int i = 0; i < t; ++i) {
        Integer num = Integer(lambda) * binomial(N - i, t - i);
        Integer den = binomial(M - i, t - i);
        if (den == 0 || num % den != 0) return false;
    }
    return true;
}

bool admissible_2_gdd(long long m, long long q, long long M, long long lambda) {
    if (M < 2 || M > m || q < 1 || lambda < 1) return false;
    for (int i = 0; i < 2; ++i) {
        Integer qpow = (i == 0) ? Integer(q) * q : Integer(q);
        Integer num = Integer(lambda) * qpow * binomial(m - i, 2 - i);
        Integer den = binomial(M - i, 2 - i);
        if (den == 0 || num % den != 0) return false;
    }
    return true;
}

namespace {

struct SearchContext {
    int t;
    long long lambda;
    long long target_blocks;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<std::uint32_t> candidate_masks;            // all M-subsets, lex order
    std::vector<std::vector<int>> covered_by;              // per candidate: t-subset indices
    std::vector<std::vector<int>> candidates_through;      // per t-subset: candidate indices
    std::vector<long long> coverage;                       // per t-subset
    std::vector<int> chosen;                               // candidate indices

    bool extend() {
        if (budget_hit) return false;
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        int deficit = -1;
        for (std::size_t s = 0; s < coverage.size(); ++s) {
            if (coverage[s] < lambda) {
                deficit = static_cast<int>(s);
                break;
            }
        }
        if (deficit < 0) return static_cast<long long>(chosen.size()) == target_blocks;
        if (static_cast<long long>(chosen.size()) >= target_blocks) return false;
        for (int cand : candidates_through[deficit]) {
            bool ok = true;
            for (int s : covered_by[cand]) {
                if (coverage[s] >= lambda) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (int s : covered_by[cand]) ++coverage[s];
            chosen.push_back(cand);
            if (extend()) return true;
            chosen.pop_back();
            for (int s : covered_by[cand]) --coverage[s];
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

SearchResult brute_force_design_search(int t, long long N, long long M, long long lambda,
                                       std::uint64_t node_budget) {
    if (N > 14) throw std::invalid_argument("search supports at most 14 points");
    if (t < 2 || t > M || M >= N || lambda < 1) {
        throw std::invalid_argument("search needs 2 <= t <= M < N and lambda >= 1");
    }
    if (!admissible_t_design(t, N, M, lambda)) {
        throw std::invalid_argument("inadmissible parameters: divisibility conditions fail");
    }

    SearchContext ctx;
    ctx.t = t;
    ctx.lambda = lambda;
    ctx.budget = node_budget;
    ctx.target_blocks = exact_quotient(Integer(lambda) * binomial(N, t), binomial(M, t));

    std::vector<std::uint32_t> t_subset_masks;
    for_each_combination(N, t, [&](const std::vector<int>& idx) {
        std::uint32_t mask = 0;
        for (int j : idx) mask |= 1u << j;
        t_subset_masks.push_back(mask);
    });
    for_each_combination(N, static_cast<int>(M), [&](const std::vector<int>& idx) {
        std::uint32_t mask = 0;
        for (int j : idx) mask |= 1u << j;
        ctx.candidate_masks.push_back(mask);
    });
    ctx.covered_by.resize(ctx.candidate_masks.size());
    ctx.candidates_through.resize(t_subset_masks.size());
    for (std::size_t c = 0; c < ctx.candidate_masks.size(); ++c) {
        for (std::size_t s = 0; s < t_subset_masks.size(); ++s) {
            if ((ctx.candidate_masks[c] & t_subset_masks[s]) == t_subset_masks[s]) {
                ctx.covered_by[c].push_back(static_cast<int>(s));
                ctx.candidates_through[s].push_back(static_cast<int>(c));
            }
        }
    }
    ctx.coverage.assign(t_subset_masks.size(), 0);

    bool found = ctx.extend();

    SearchResult res;
    res.nodes_visited = ctx.nodes;
    if (found) {
        std::vector<int> points(N);
        for (long long i = 0; i < N; ++i) points[i] = static_cast<int>(i) + 1;
        std::vector<std::vector<int>> blocks;
        for (int cand : ctx.chosen) {
            std::vector<int> blk;
            for (long long j = 0; j < N; ++j) {
                if (ctx.candidate_masks[cand] & (1u << j)) blk.push_back(static_cast<int>(j) + 1);
            }
            blocks.push_back(std::move(blk));
        }
        BlockDesign d = make_design(std::move(points), std::move(blocks));
        d.strength = t;
        d.index = lambda;
        d.family = "searched";
        res.status = SearchStatus::Found;
        res.design = std::move(d);
    } else if (ctx.budget_hit) {
        res.status = SearchStatus::BudgetExhausted;
    } else {
        res.status = SearchStatus::Exhausted;
    }
    return res;
}

}  // namespace cdc
