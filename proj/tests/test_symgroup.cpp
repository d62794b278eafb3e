#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "epsfree/error.hpp"
#include "epsfree/symgroup.hpp"

using namespace epsfree;

namespace {

Permutation random_permutation(int k, std::mt19937_64& gen) {
    std::vector<int> img(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) img[static_cast<std::size_t>(i)] = i;
    std::shuffle(img.begin(), img.end(), gen);
    return Permutation(img);
}

// Four-index scan straight from the definition.
bool crossing_by_scan(const SetPartition& blocks, int size) {
    std::vector<int> block_of(static_cast<std::size_t>(size), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int x : blocks[b]) block_of[static_cast<std::size_t>(x)] = static_cast<int>(b);
    for (int a = 0; a < size; ++a)
        for (int b = a + 1; b < size; ++b)
            for (int c = b + 1; c < size; ++c)
                for (int d = c + 1; d < size; ++d) {
                    const auto A = block_of[static_cast<std::size_t>(a)], B = block_of[static_cast<std::size_t>(b)];
                    const auto C = block_of[static_cast<std::size_t>(c)], D = block_of[static_cast<std::size_t>(d)];
                    if (A == C && B == D && A != B) return true;
                }
    return false;
}

// All set partitions of {0..n-1} via restricted growth strings.
void for_each_partition(int n, const std::function<void(const SetPartition&)>& f) {
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    for (;;) {
        int blocks = 0;
        for (int x : rgs) blocks = std::max(blocks, x + 1);
        SetPartition p(static_cast<std::size_t>(blocks));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])].push_back(i);
        f(p);
        int i = n - 1;
        for (; i > 0; --i) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[static_cast<std::size_t>(j)]);
            if (rgs[static_cast<std::size_t>(i)] <= prefix_max) {
                ++rgs[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
                break;
            }
        }
        if (i <= 0) break;
    }
}

}  // namespace

TEST_SUITE("symgroup") {
    TEST_CASE("compose follows p(q(x))") {
        const auto t12 = Permutation::parse("(1 2)", 3);
        const auto t23 = Permutation::parse("(2 3)", 3);
        CHECK(compose(t12, t12).is_identity());
        CHECK(compose(Permutation::identity(3), t23) == t23);
        CHECK(compose(t12, t23) == Permutation::parse("(1 2 3)", 3));
        CHECK(compose(t12, t23).to_string() == "(1 2 3)");
        CHECK_THROWS_AS(compose(t12, Permutation::identity(4)), ValidationError);
    }

    TEST_CASE("cycles, counts and lengths") {
        const auto e = Permutation::identity(3);
        CHECK(e.cycles() == std::vector<std::vector<int>>{{0}, {1}, {2}});
        CHECK(e.cycle_count() == 3);
        CHECK(e.length() == 0);
        const auto c = Permutation::parse("(1 2 3)", 3);
        CHECK(c.cycle_count() == 1);
        CHECK(c.length() == 2);
        const auto s = Permutation::parse("(1 5)(4 7)(6 8)", 8);
        CHECK(s.cycle_count() == 5);
        CHECK(s.cycle_type() == CycleType({2, 2, 2, 1, 1}));
        CHECK(e.to_string() == "()");
    }

    TEST_CASE("invalid permutations are rejected") {
        CHECK_THROWS_AS(Permutation({0, 0}), ValidationError);
        CHECK_THROWS_AS(Permutation({1, 2}), ValidationError);
        CHECK_THROWS_AS(Permutation::parse("(1 4)", 3), ValidationError);
    }

    TEST_CASE("full cycles") {
        CHECK(full_cycle(1).is_identity());
        CHECK(full_cycle(3) == Permutation::parse("(1 2 3)", 3));
        CHECK(full_cycle(8).to_string() == "(1 2 3 4 5 6 7 8)");
        CHECK_THROWS_AS(full_cycle(0), ValidationError);
    }

    TEST_CASE("induced full cycles") {
        CHECK(induced_full_cycle(OrderedSubset({0, 2, 4, 5, 7}), 8).to_string() == "(1 3 5 6 8)");
        CHECK(induced_full_cycle(OrderedSubset({0, 1, 4}), 8).to_string() == "(1 2 5)");
        CHECK(induced_full_cycle(OrderedSubset({1}), 3).is_identity());
        CHECK(induced_full_cycle(OrderedSubset(), 3).is_identity());
        CHECK_THROWS_AS(OrderedSubset({2, 1}), ValidationError);
    }

    TEST_CASE("restriction to invariant subsets") {
        const auto sigma = Permutation::parse("(6 8)(4 7)", 8);
        const auto r1 = restrict(sigma, OrderedSubset({0, 2, 4, 5, 7}));
        CHECK(r1.extended().to_string() == "(6 8)");
        CHECK(r1.local == Permutation::parse("(4 5)", 5));
        CHECK(r1.local_cycle_count() == 4);
        const auto r3 = restrict(sigma, OrderedSubset({0, 1, 4}));
        CHECK(r3.local.is_identity());
        CHECK(r3.local_cycle_count() == 3);
        const auto r0 = restrict(sigma, OrderedSubset());
        CHECK(r0.local.size() == 0);
        CHECK(r0.local_cycle_count() == 0);
        CHECK_THROWS_AS(restrict(sigma, OrderedSubset({3})), ValidationError);
        CHECK(extend(r1.local, r1.support, 8) == r1.extended());
    }

    TEST_CASE("block stabilizers") {
        CHECK(enumerate_block_stabilizer({{0}, {1}, {2}}).size() == 1);
        const auto pair = enumerate_block_stabilizer({{0, 1}});
        REQUIRE(pair.size() == 2);
        CHECK(pair[0].is_identity());
        CHECK(pair[1] == Permutation::parse("(1 2)", 2));

        // Blocks of the word (1,3,5,2,1,4,2,4).
        const SetPartition blocks = {{0, 4}, {3, 6}, {5, 7}, {1}, {2}};
        const auto stab = enumerate_block_stabilizer(blocks);
        CHECK(stab.size() == 8);
        CHECK(block_stabilizer_size(blocks) == 8);
        std::set<Permutation> generated = {Permutation::identity(8)};
        for (bool grew = true; grew;) {
            grew = false;
            for (auto g : {"(1 5)", "(4 7)", "(6 8)"})
                for (const auto& p : std::vector<Permutation>(generated.begin(), generated.end()))
                    grew = generated.insert(compose(Permutation::parse(g, 8), p)).second || grew;
        }
        CHECK(std::set<Permutation>(stab.begin(), stab.end()) == generated);
        CHECK(enumerate_block_stabilizer(blocks) == stab);
    }

    TEST_CASE("stabilizer size and block preservation") {
        std::mt19937_64 gen(11);
        for (int trial = 0; trial < 40; ++trial) {
            const int k = std::uniform_int_distribution<int>(1, 7)(gen);
            std::vector<int> labels(static_cast<std::size_t>(k));
            for (auto& l : labels) l = std::uniform_int_distribution<int>(0, 2)(gen);
            SetPartition blocks;
            for (int f = 0; f < 3; ++f) {
                std::vector<int> b;
                for (int j = 0; j < k; ++j)
                    if (labels[static_cast<std::size_t>(j)] == f) b.push_back(j);
                if (!b.empty()) blocks.push_back(b);
            }
            const auto stab = enumerate_block_stabilizer(blocks);
            CHECK(stab.size() == block_stabilizer_size(blocks));
            CHECK(std::set<Permutation>(stab.begin(), stab.end()).size() == stab.size());
            for (const auto& p : stab)
                for (int j = 0; j < k; ++j) CHECK(labels[static_cast<std::size_t>(p(j))] == labels[static_cast<std::size_t>(j)]);
        }
    }

    TEST_CASE("non-crossing examples") {
        CHECK(is_noncrossing(SetPartition{{0, 2}, {1}}));
        CHECK_FALSE(is_noncrossing(SetPartition{{0, 2}, {1, 3}}));
        // (4 7)(6 8) restricted to J = {3,4,6,7,8}: positions of 4,7 and 6,8 interleave.
        const auto r = restrict(Permutation::parse("(4 7)(6 8)", 8), OrderedSubset({2, 3, 5, 6, 7}));
        CHECK_FALSE(is_noncrossing(r.local));
        CHECK(is_noncrossing(Permutation::identity(5)));
    }

    TEST_CASE("non-crossing agrees with the four-index scan up to size 8") {
        for (int n = 0; n <= 8; ++n) {
            int count = 0;
            int noncrossing = 0;
            for_each_partition(n, [&](const SetPartition& p) {
                ++count;
                const bool nc = is_noncrossing(p);
                noncrossing += nc ? 1 : 0;
                CHECK(nc == !crossing_by_scan(p, n));
            });
            static const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
            static const int cat[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
            CHECK(count == bell[n]);
            CHECK(noncrossing == cat[n]);
        }
    }

    TEST_CASE("conjugation invariance of cycle type, triangle inequality") {
        std::mt19937_64 gen(5);
        for (int trial = 0; trial < 200; ++trial) {
            const int k = std::uniform_int_distribution<int>(1, 9)(gen);
            const auto p = random_permutation(k, gen);
            const auto q = random_permutation(k, gen);
            CHECK(compose(q, compose(p, q.inverse())).cycle_type() == p.cycle_type());
            CHECK(compose(p, p.inverse()).is_identity());
            CHECK(p.cycle_count() + p.length() == k);
            CHECK(compose(p, q).length() <= p.length() + q.length());
        }
    }

    TEST_CASE("restricted fixed points are fixed points") {
        std::mt19937_64 gen(9);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = std::uniform_int_distribution<int>(1, 8)(gen);
            const auto p = random_permutation(k, gen);
            // J = union of a random subset of p's cycles.
            std::vector<int> J;
            for (const auto& cycle : p.cycles())
                if (std::bernoulli_distribution(0.5)(gen)) J.insert(J.end(), cycle.begin(), cycle.end());
            std::sort(J.begin(), J.end());
            const OrderedSubset subset(J);
            const auto r = restrict(p, subset);
            std::set<int> fixed;
            for (int x : r.local.fixed_points()) fixed.insert(J[static_cast<std::size_t>(x)]);
            for (int x = 0; x < k; ++x)
                if (!subset.contains(x) && p(x) == x) fixed.insert(x);
            const auto all = p.fixed_points();
            for (int x : fixed) CHECK(std::find(all.begin(), all.end(), x) != all.end());
        }
    }

    TEST_CASE("integer partitions and all permutations") {
        CHECK(integer_partitions(4).size() == 5);
        CHECK(integer_partitions(6).size() == 11);
        CHECK(integer_partitions(4).front() == CycleType({4}));
        CHECK(all_permutations(4).size() == 24);
        CHECK(all_permutations(0).size() == 1);
    }
}
