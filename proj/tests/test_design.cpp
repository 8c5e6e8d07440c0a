#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cdc/design.hpp"
#include "fixtures.hpp"

using namespace cdc;

namespace {

// Independent coverage oracle: blocks containing every point of `subset`.
long long count_blocks_through(const BlockDesign& d, const std::vector<int>& subset) {
    long long n = 0;
    for (const auto& blk : d.blocks) {
        bool all = true;
        for (int x : subset) {
            if (!std::binary_search(blk.begin(), blk.end(), x)) {
                all = false;
                break;
            }
        }
        if (all) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("make_design canonicalizes and validates") {
    BlockDesign d = make_design({3, 1, 2}, {{3, 2}, {2, 1}});
    CHECK(d.points == std::vector<int>{1, 2, 3});
    CHECK(d.blocks == std::vector<std::vector<int>>{{1, 2}, {2, 3}});

    CHECK_THROWS_AS(make_design({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 1, 2}, {{1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 2}, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 2}, {{1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 2}, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 2, 3}, {{1, 2}}, {{{1, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(make_design({1, 2, 3}, {{1, 2}}, {{{1, 2}, {2, 3}}}), std::invalid_argument);
}

TEST_CASE("verify_t_design accepts the 7-point plane") {
    BlockDesign d = fixtures::fano();
    VerificationReport rep = verify_t_design(d, 2, 1);
    CHECK(rep.passed);
    CHECK(rep.violation.empty());
    CHECK(rep.counted_blocks == 7);
    CHECK(rep.counted_degree == 3);
    CHECK(rep.expected_blocks == 7);
    CHECK(rep.expected_degree == 3);
}

TEST_CASE("verify_t_design finds the first uncovered pair") {
    BlockDesign d = fixtures::fano();
    std::vector<std::vector<int>> blocks = d.blocks;
    blocks.erase(std::find(blocks.begin(), blocks.end(), std::vector<int>{1, 2, 4}));
    BlockDesign broken = make_design(d.points, blocks);
    VerificationReport rep = verify_t_design(broken, 2, 1);
    CHECK_FALSE(rep.passed);
    CHECK(rep.violation.find("{1,2}") != std::string::npos);
    CHECK(rep.violation.find("0 blocks") != std::string::npos);
}

TEST_CASE("verify_t_design rejects over-covered subsets and bad sizes") {
    BlockDesign d = fixtures::fano();
    SUBCASE("duplicated block over-covers") {
        auto blocks = d.blocks;
        blocks.push_back({1, 2, 4});
        VerificationReport rep = verify_t_design(make_design(d.points, blocks), 2, 1);
        CHECK_FALSE(rep.passed);
        CHECK(rep.violation.find("2 blocks") != std::string::npos);
    }
    SUBCASE("non-uniform block size") {
        auto blocks = d.blocks;
        blocks.push_back({1, 2});
        VerificationReport rep = verify_t_design(make_design(d.points, blocks), 2, 1);
        CHECK_FALSE(rep.passed);
        CHECK(rep.violation.find("uniform") != std::string::npos);
    }
    SUBCASE("single all-points block is degenerate") {
        BlockDesign full = make_design({1, 2, 3}, {{1, 2, 3}});
        VerificationReport rep = verify_t_design(full, 2, 1);
        CHECK_FALSE(rep.passed);
        CHECK(rep.violation.find("strictly below") != std::string::npos);
    }
}

TEST_CASE("verify_t_design argument errors") {
    BlockDesign d = fixtures::fano();
    CHECK_THROWS_AS(verify_t_design(d, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(verify_t_design(d, 4, 1), std::invalid_argument);  // t above block size
    BlockDesign empty_blocks;
    empty_blocks.points = {1, 2, 3};
    CHECK_THROWS_AS(verify_t_design(empty_blocks, 2, 1), std::invalid_argument);
}

TEST_CASE("verify_t_design accepts strength-3 designs") {
    BlockDesign d = boolean_sqs(3);
    VerificationReport rep = verify_t_design(d, 3, 1);
    CHECK(rep.passed);
    CHECK(rep.counted_blocks == 14);
    CHECK(rep.counted_degree == 7);
    // The same block set is also a 2-design with index 3.
    VerificationReport as2 = verify_t_design(d, 2, 3);
    CHECK(as2.passed);
}

TEST_CASE("verify_gdd accepts the 6-point fixture") {
    BlockDesign d = fixtures::small_gdd();
    VerificationReport rep = verify_gdd(d, 2, 1);
    CHECK(rep.passed);
    CHECK(rep.counted_blocks == 4);
    CHECK(rep.counted_degree == 2);
    CHECK(rep.expected_blocks == 4);
    CHECK(rep.expected_degree == 2);
}

TEST_CASE("verify_gdd with singleton groups matches plain verification") {
    BlockDesign d = fixtures::fano();
    d.groups = std::vector<std::vector<int>>{{1}, {2}, {3}, {4}, {5}, {6}, {7}};
    VerificationReport rep = verify_gdd(d, 2, 1);
    CHECK(rep.passed);
    CHECK(rep.counted_blocks == 7);
    CHECK(rep.counted_degree == 3);
}

TEST_CASE("verify_gdd rejects a block meeting a group twice") {
    BlockDesign d = fixtures::small_gdd();
    auto blocks = d.blocks;
    blocks.push_back({1, 2, 5});
    BlockDesign broken = make_design(d.points, blocks, d.groups);
    VerificationReport rep = verify_gdd(broken, 2, 1);
    CHECK_FALSE(rep.passed);
    CHECK(rep.violation.find("twice") != std::string::npos);
    CHECK(rep.violation.find("{1,2,5}") != std::string::npos);
}

TEST_CASE("verify_gdd requires groups") {
    BlockDesign d = fixtures::fano();
    CHECK_THROWS_AS(verify_gdd(d, 2, 1), std::invalid_argument);
}

TEST_CASE("lambda_derived matches direct counting") {
    SUBCASE("strength 2, index 1") {
        TDesignParams p = TDesignParams::from(2, 7, 3, 1);
        CHECK(p.blocks == 7);
        CHECK(p.degree == 3);
        CHECK(lambda_derived(p, 2) == Rational(1));
        CHECK(lambda_derived(p, 1) == Rational(3));
        CHECK(lambda_derived(p, 0) == Rational(7));
    }
    SUBCASE("strength 3: pair coverage of the XOR quadruple system") {
        BlockDesign d = boolean_sqs(3);
        TDesignParams p = TDesignParams::from(3, 8, 4, 1);
        Rational expect = lambda_derived(p, 2);
        CHECK(expect == Rational(3));
        for (std::size_t i = 0; i < d.points.size(); ++i) {
            for (std::size_t j = i + 1; j < d.points.size(); ++j) {
                CHECK(count_blocks_through(d, {d.points[i], d.points[j]}) == 3);
            }
        }
    }
    SUBCASE("GDD cross-group pair index") {
        GddParams g = GddParams::from(2, 3, 2, 3, 1);
        CHECK(g.blocks == 4);
        CHECK(g.degree == 2);
        CHECK(lambda_derived(g, 2) == Rational(1));
    }
    SUBCASE("argument range") {
        TDesignParams p = TDesignParams::from(2, 7, 3, 1);
        CHECK_THROWS_AS(lambda_derived(p, 3), std::invalid_argument);
        CHECK_THROWS_AS(lambda_derived(p, -1), std::invalid_argument);
    }
}

TEST_CASE("dualize swaps points and blocks") {
    BlockDesign d = fixtures::fano();
    BlockDesign dual = dualize(d);
    CHECK(dual.points.size() == 7);
    CHECK(dual.blocks.size() == 7);
    // Canonical block order: {1,2,4},{1,3,7},{1,5,6},{2,3,5},{2,6,7},{3,4,6},{4,5,7}.
    CHECK(dual.blocks[0] == std::vector<int>{1, 2, 3});  // blocks through point 1
    for (const auto& blk : dual.blocks) CHECK(blk.size() == 3);
    CHECK(dual.family == "dual:fano-fixture");

    BlockDesign twice = dualize(dual);
    CHECK(twice.same_structure(d));
    CHECK(twice.family == "fano-fixture");
}

TEST_CASE("dualize keeps group annotations") {
    BlockDesign d = fixtures::small_gdd();
    BlockDesign dual = dualize(d);
    CHECK(dual.points.size() == 4);
    CHECK(dual.blocks.size() == 6);
    CHECK(dual.dual_source_groups == std::vector<int>{0, 0, 1, 1, 2, 2});
    CHECK(dualize(dual).same_structure(d));
}

TEST_CASE("dual involution after canonical relabeling") {
    // 0-based points: the involution holds after relabeling to 1..N.
    BlockDesign d = boolean_sqs(3);
    BlockDesign twice = dualize(dualize(d));
    CHECK(twice.same_structure(relabel_points_canonical(d)));
}

TEST_CASE("projective plane construction") {
    SUBCASE("order 2") {
        BlockDesign d = projective_plane_sbibd(2);
        CHECK(d.point_count() == 7);
        CHECK(d.block_count() == 7);
        VerificationReport rep = verify_t_design(d, 2, 1);
        CHECK(rep.passed);
        CHECK(rep.counted_degree == 3);
    }
    SUBCASE("order 3") {
        BlockDesign d = projective_plane_sbibd(3);
        CHECK(d.point_count() == 13);
        CHECK(d.block_count() == 13);
        VerificationReport rep = verify_t_design(d, 2, 1);
        CHECK(rep.passed);
        CHECK(rep.counted_degree == 4);
    }
    SUBCASE("order 5") {
        BlockDesign d = projective_plane_sbibd(5);
        CHECK(d.point_count() == 31);
        CHECK(verify_t_design(d, 2, 1).passed);
    }
    SUBCASE("unsupported orders") {
        CHECK_THROWS_AS(projective_plane_sbibd(6), std::invalid_argument);
        CHECK_THROWS_AS(projective_plane_sbibd(4), std::invalid_argument);  // prime power, not prime
        CHECK_THROWS_AS(projective_plane_sbibd(1), std::invalid_argument);
    }
}

TEST_CASE("transversal GDD construction") {
    SUBCASE("order 2") {
        BlockDesign d = transversal_gdd(2);
        CHECK(d.point_count() == 4);
        REQUIRE(d.groups.has_value());
        CHECK(*d.groups == std::vector<std::vector<int>>{{1, 2}, {3, 4}});
        CHECK(d.block_count() == 4);
        CHECK(verify_gdd(d, 2, 1).passed);
        // Cross-group pairs covered once, same-group pairs never.
        CHECK(count_blocks_through(d, {1, 3}) == 1);
        CHECK(count_blocks_through(d, {1, 4}) == 1);
        CHECK(count_blocks_through(d, {1, 2}) == 0);
        CHECK(count_blocks_through(d, {3, 4}) == 0);
    }
    SUBCASE("order 3") {
        BlockDesign d = transversal_gdd(3);
        CHECK(d.point_count() == 9);
        CHECK(d.block_count() == 9);
        VerificationReport rep = verify_gdd(d, 2, 1);
        CHECK(rep.passed);
        CHECK(rep.counted_degree == 3);
    }
    SUBCASE("order 7") {
        BlockDesign d = transversal_gdd(7);
        CHECK(d.block_count() == 49);
        CHECK(verify_gdd(d, 2, 1).passed);
    }
    SUBCASE("composite order rejected") {
        CHECK_THROWS_AS(transversal_gdd(4), std::invalid_argument);
    }
}

TEST_CASE("Steiner triple systems by the Bose construction") {
    SUBCASE("9 points") {
        BlockDesign d = steiner_triple_bose(9);
        CHECK(d.block_count() == 12);
        VerificationReport rep = verify_t_design(d, 2, 1);
        CHECK(rep.passed);
        CHECK(rep.counted_degree == 4);
    }
    SUBCASE("15 points") {
        BlockDesign d = steiner_triple_bose(15);
        CHECK(d.block_count() == 35);
        VerificationReport rep = verify_t_design(d, 2, 1);
        CHECK(rep.passed);
        CHECK(rep.counted_degree == 7);
    }
    SUBCASE("21 points") {
        BlockDesign d = steiner_triple_bose(21);
        CHECK(d.block_count() == 70);
        CHECK(verify_t_design(d, 2, 1).passed);
    }
    SUBCASE("wrong residue rejected") {
        CHECK_THROWS_AS(steiner_triple_bose(7), std::invalid_argument);
        CHECK_THROWS_AS(steiner_triple_bose(6), std::invalid_argument);
    }
}

TEST_CASE("XOR quadruple systems") {
    SUBCASE("8 points") {
        BlockDesign d = boolean_sqs(3);
        CHECK(d.points.front() == 0);
        CHECK(d.points.back() == 7);
        CHECK(d.block_count() == 14);
        for (const auto& blk : d.blocks) {
            CHECK((blk[0] ^ blk[1] ^ blk[2] ^ blk[3]) == 0);
        }
        CHECK(verify_t_design(d, 3, 1).passed);
    }
    SUBCASE("16 points") {
        BlockDesign d = boolean_sqs(4);
        CHECK(d.block_count() == 140);
        CHECK(verify_t_design(d, 3, 1).passed);
    }
    SUBCASE("too small") {
        CHECK_THROWS_AS(boolean_sqs(2), std::invalid_argument);
    }
}

TEST_CASE("complete designs") {
    SUBCASE("5 choose 3") {
        BlockDesign d = complete_design(5, 3, 2);
        CHECK(d.block_count() == 10);
        CHECK(d.index == 3);
        CHECK(verify_t_design(d, 2, 3).passed);
    }
    SUBCASE("4 choose 2") {
        BlockDesign d = complete_design(4, 2, 2);
        CHECK(d.block_count() == 6);
        CHECK(verify_t_design(d, 2, 1).passed);
    }
    SUBCASE("6 choose 3") {
        BlockDesign d = complete_design(6, 3, 2);
        CHECK(d.block_count() == 20);
        CHECK(d.index == 4);
        CHECK(verify_t_design(d, 2, 4).passed);
    }
    SUBCASE("strength 3") {
        BlockDesign d = complete_design(5, 3, 3);
        CHECK(d.index == 1);
        CHECK(verify_t_design(d, 3, 1).passed);
    }
    SUBCASE("bad parameters") {
        CHECK_THROWS_AS(complete_design(5, 5, 2), std::invalid_argument);
        CHECK_THROWS_AS(complete_design(5, 3, 4), std::invalid_argument);
    }
}

TEST_CASE("admissibility conditions") {
    CHECK(admissible_t_design(2, 7, 3, 1));
    CHECK_FALSE(admissible_t_design(2, 8, 3, 1));
    CHECK(admissible_t_design(2, 6, 3, 4));
    CHECK(admissible_t_design(3, 8, 4, 1));
    CHECK(admissible_t_design(2, 13, 4, 1));
    CHECK_FALSE(admissible_t_design(2, 3, 3, 1));  // M = N

    CHECK(admissible_2_gdd(3, 2, 3, 1));
    CHECK_FALSE(admissible_2_gdd(4, 1, 3, 1));
    for (long long p : {2, 3, 5, 7}) CHECK(admissible_2_gdd(p, p, p, 1));
}

TEST_CASE("every verified family is admissible") {
    // Admissibility is necessary: whenever the exhaustive verifier passes,
    // the divisibility conditions must hold.
    struct Case {
        BlockDesign d;
        int t;
        long long lambda;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::fano(), 2, 1});
    cases.push_back({projective_plane_sbibd(3), 2, 1});
    cases.push_back({steiner_triple_bose(9), 2, 1});
    cases.push_back({boolean_sqs(3), 3, 1});
    cases.push_back({complete_design(6, 3, 2), 2, 4});
    for (const auto& c : cases) {
        REQUIRE(verify_t_design(c.d, c.t, c.lambda).passed);
        CHECK(admissible_t_design(c.t, c.d.point_count(),
                                  static_cast<long long>(c.d.blocks.front().size()), c.lambda));
    }
}

TEST_CASE("dual structure of t-designs") {
    // For a t-(N, M, lambda) design with K blocks and degree r, the dual has
    // K points of degree M, N blocks of size r, and every t'-subset of its
    // blocks meets in exactly lambda_{t'} points (2 <= t' <= t).
    struct Case {
        BlockDesign d;
        int t;
        long long lambda;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::fano(), 2, 1});
    cases.push_back({projective_plane_sbibd(3), 2, 1});
    cases.push_back({steiner_triple_bose(9), 2, 1});
    cases.push_back({complete_design(6, 3, 2), 2, 4});
    cases.push_back({boolean_sqs(3), 3, 1});
    for (const auto& c : cases) {
        REQUIRE(verify_t_design(c.d, c.t, c.lambda).passed);
        TDesignParams p = TDesignParams::from(
            c.t, c.d.point_count(), static_cast<long long>(c.d.blocks.front().size()), c.lambda);
        BlockDesign dual = dualize(c.d);

        CHECK(dual.point_count() == p.blocks);
        CHECK(dual.block_count() == p.points);
        std::map<int, long long> degree;
        for (const auto& blk : dual.blocks) {
            CHECK(static_cast<long long>(blk.size()) == p.degree);
            for (int x : blk) ++degree[x];
        }
        for (int x : dual.points) CHECK(degree[x] == p.block_size);

        for (int tp = 2; tp <= c.t; ++tp) {
            Rational expect = lambda_derived(p, tp);
            REQUIRE(is_integral(expect));
            long long want = numerator(expect).convert_to<long long>();
            // Every t'-subset of dual blocks must meet in exactly that many
            // dual points.
            std::vector<int> idx(tp);
            for (int i = 0; i < tp; ++i) idx[i] = i;
            const long long nb = dual.block_count();
            while (true) {
                std::set<int> acc(dual.blocks[idx[0]].begin(), dual.blocks[idx[0]].end());
                for (int i = 1; i < tp; ++i) {
                    std::set<int> next;
                    for (int x : dual.blocks[idx[i]]) {
                        if (acc.count(x)) next.insert(x);
                    }
                    acc = std::move(next);
                }
                CHECK(static_cast<long long>(acc.size()) == want);
                int i = tp - 1;
                while (i >= 0 && idx[i] == nb - tp + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < tp; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

TEST_CASE("dual structure of GDDs") {
    // GDD duals: same point/block/degree profile, and block pairs split into
    // m*C(q,2) same-group pairs with empty intersection and cross-group
    // pairs meeting in exactly lambda_2.
    struct Case {
        BlockDesign d;
        int t;
        long long lambda;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::small_gdd(), 2, 1});
    cases.push_back({transversal_gdd(2), 2, 1});
    cases.push_back({transversal_gdd(3), 2, 1});
    cases.push_back({transversal_gdd(5), 2, 1});
    for (const auto& c : cases) {
        REQUIRE(verify_gdd(c.d, c.t, c.lambda).passed);
        const long long m = static_cast<long long>(c.d.groups->size());
        const long long q = static_cast<long long>(c.d.groups->front().size());
        GddParams p = GddParams::from(c.t, m, q,
                                      static_cast<long long>(c.d.blocks.front().size()), c.lambda);
        Rational lambda2 = lambda_derived(p, 2);
        REQUIRE(is_integral(lambda2));
        long long l2 = numerator(lambda2).convert_to<long long>();

        BlockDesign dual = dualize(c.d);
        CHECK(dual.point_count() == p.blocks);
        CHECK(dual.block_count() == m * q);
        std::map<int, long long> degree;
        for (const auto& blk : dual.blocks) {
            CHECK(static_cast<long long>(blk.size()) == p.degree);
            for (int x : blk) ++degree[x];
        }
        for (int x : dual.points) CHECK(degree[x] == p.block_size);

        REQUIRE(dual.dual_source_groups.size() == dual.blocks.size());
        long long empty_pairs = 0;
        long long other_pairs = 0;
        for (std::size_t i = 0; i < dual.blocks.size(); ++i) {
            for (std::size_t j = i + 1; j < dual.blocks.size(); ++j) {
                std::vector<int> inter;
                std::set_intersection(dual.blocks[i].begin(), dual.blocks[i].end(),
                                      dual.blocks[j].begin(), dual.blocks[j].end(),
                                      std::back_inserter(inter));
                bool same_group = dual.dual_source_groups[i] == dual.dual_source_groups[j];
                if (same_group) {
                    CHECK(inter.empty());
                    ++empty_pairs;
                } else {
                    CHECK(static_cast<long long>(inter.size()) == l2);
                    ++other_pairs;
                }
            }
        }
        CHECK(empty_pairs == m * (q * (q - 1) / 2));
        CHECK(other_pairs == (m * q) * (m * q - 1) / 2 - empty_pairs);
    }
}

TEST_CASE("backtracking search") {
    SUBCASE("finds a 2-(7,3,1) design") {
        SearchResult res = brute_force_design_search(2, 7, 3, 1);
        REQUIRE(res.status == SearchStatus::Found);
        REQUIRE(res.design.has_value());
        CHECK(res.design->block_count() == 7);
        CHECK(verify_t_design(*res.design, 2, 1).passed);
        CHECK(res.nodes_visited > 0);
    }
    SUBCASE("finds a 2-(9,3,1) design") {
        SearchResult res = brute_force_design_search(2, 9, 3, 1);
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(res.design->block_count() == 12);
        CHECK(verify_t_design(*res.design, 2, 1).passed);
    }
    SUBCASE("finds a repeated-block-eligible 2-(6,3,4) design") {
        SearchResult res = brute_force_design_search(2, 6, 3, 4);
        REQUIRE(res.status == SearchStatus::Found);
        CHECK(res.design->block_count() == 20);
        CHECK(verify_t_design(*res.design, 2, 4).passed);
    }
    SUBCASE("inadmissible parameters are rejected up front") {
        CHECK_THROWS_AS(brute_force_design_search(2, 8, 3, 1), std::invalid_argument);
    }
    SUBCASE("budget exhaustion is distinct from nonexistence") {
        SearchResult res = brute_force_design_search(2, 9, 3, 1, 3);
        CHECK(res.status == SearchStatus::BudgetExhausted);
        CHECK_FALSE(res.design.has_value());
    }
    SUBCASE("too many points rejected") {
        CHECK_THROWS_AS(brute_force_design_search(2, 15, 3, 1), std::invalid_argument);
    }
    SUBCASE("search output is deterministic") {
        SearchResult a = brute_force_design_search(2, 7, 3, 1);
        SearchResult b = brute_force_design_search(2, 7, 3, 1);
        REQUIRE(a.design.has_value());
        REQUIRE(b.design.has_value());
        CHECK(a.design->same_structure(*b.design));
        CHECK(a.nodes_visited == b.nodes_visited);
    }
}

TEST_CASE("relabeling to 1..N") {
    BlockDesign d = boolean_sqs(3);
    BlockDesign r = relabel_points_canonical(d);
    CHECK(r.points.front() == 1);
    CHECK(r.points.back() == 8);
    CHECK(verify_t_design(r, 3, 1).passed);
}
