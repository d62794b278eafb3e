#include <doctest.h>

#include <random>

#include "epsfree/error.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/verify.hpp"
#include "oracles.hpp"

using namespace epsfree;

namespace {

std::size_t dim_of(std::int64_t n, int legs) { return static_cast<std::size_t>(oracle::ipow(n, legs)); }

GaussRational moment(const Word& w, const LegAssignment& a, const std::vector<ExactOperand>& ops, std::int64_t n,
                     TraceConvention convention = kTraceConvention) {
    return exact_moment<GaussRational>(w, a, ops, n, {convention, false}).value;
}

// Monomial unitary: a cyclic shift with powers of i on the diagonal.
Matrix<GaussRational> monomial_unitary(std::size_t d, int twist) {
    Matrix<GaussRational> v(d, d);
    const GaussRational phases[4] = {GaussRational(1), GaussRational(0, 1), GaussRational(-1), GaussRational(0, -1)};
    for (std::size_t i = 0; i < d; ++i) v((i + 1) % d, i) = phases[(i * static_cast<std::size_t>(twist) + 1) % 4];
    return v;
}

Matrix<GaussRational> adjoint(const Matrix<GaussRational>& m) {
    Matrix<GaussRational> out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).conj();
    return out;
}

struct Case {
    std::vector<int> word;
    LegAssignment assignment;
    std::int64_t n;
};

}  // namespace

TEST_SUITE("moments") {
    TEST_CASE("exact moments agree with the index-sum oracle") {
        const std::vector<Case> cases = {
            {{0, 0}, LegAssignment({"s"}, {{"s"}}), 2},
            {{0, 1}, LegAssignment({"s"}, {{"s"}, {"s"}}), 2},
            {{0, 1, 0}, LegAssignment({"s"}, {{"s"}, {"s"}}), 3},
            {{0, 0, 1, 0}, LegAssignment({"s"}, {{"s"}, {"s"}}), 3},
            {{0, 1, 0, 1}, LegAssignment({"s"}, {{"s"}, {"s"}}), 2},
            {{0, 1, 0, 1}, LegAssignment({"s", "t"}, {{"s", "t"}, {"s"}}), 2},
            {{0, 1, 1, 0}, LegAssignment({"s", "t"}, {{"s"}, {"t"}}), 2},
            {{0, 1, 0, 2}, LegAssignment({"s", "t"}, {{"s"}, {"s", "t"}, {"t"}}), 2},
            // String "u" carries no letter of the word.
            {{0, 0, 1}, LegAssignment({"s", "u"}, {{"s"}, {"s"}, {"u"}}), 2},
        };
        std::mt19937_64 gen(17);
        for (const auto& c : cases) {
            const Word w(c.word);
            for (int rep = 0; rep < 2; ++rep) {
                const auto ops = oracle::random_operands(w, c.assignment, c.n, gen, rep == 1);
                CHECK(moment(w, c.assignment, ops, c.n) == oracle::index_sum_moment(w, c.assignment, ops, c.n));
            }
        }
    }

    TEST_CASE("the other trace orientation disagrees with the oracle") {
        const Word w({0, 0, 1, 0});
        const LegAssignment a({"s"}, {{"s"}, {"s"}});
        std::mt19937_64 gen(23);
        const auto ops = oracle::random_operands(w, a, 3, gen);
        const auto reference = oracle::index_sum_moment(w, a, ops, 3);
        CHECK(moment(w, a, ops, 3, TraceConvention::sigma) == reference);
        CHECK_FALSE(moment(w, a, ops, 3, TraceConvention::sigma_inverse) == reference);
    }

    TEST_CASE("tr_sigma") {
        std::mt19937_64 gen(1);
        std::vector<ExactOperand> ops;
        for (int f : {0, 1, 0}) ops.push_back({f, oracle::random_exact_matrix(3, gen, false)});
        const std::span<const ExactOperand> s(ops);
        auto ntr = [](const Matrix<GaussRational>& m) { return normalized_trace(m); };
        CHECK(tr_sigma(Permutation::identity(3), s) == ntr(ops[0].local) * ntr(ops[1].local) * ntr(ops[2].local));
        CHECK(tr_sigma(Permutation::parse("(1 3)", 3), s) == ntr(ops[0].local * ops[2].local) * ntr(ops[1].local));
        CHECK_THROWS_AS(tr_sigma(Permutation::parse("(1 2)", 3), s), ValidationError);
        CHECK_THROWS_AS(tr_sigma(Permutation::identity(2), s), ValidationError);
    }

    TEST_CASE("low-order identities") {
        std::mt19937_64 gen(5);
        for (std::int64_t n = 2; n <= 4; ++n) {
            const LegAssignment one({"s"}, {{"s"}, {"s"}});
            const auto A = oracle::random_exact_matrix(static_cast<std::size_t>(n), gen, false);
            const auto B = oracle::random_exact_matrix(static_cast<std::size_t>(n), gen, false);
            CHECK(moment(Word({0}), one, {{0, A}}, n) == normalized_trace(A));
            CHECK(moment(Word({0, 0}), one, {{0, A}, {0, B}}, n) == normalized_trace(A * B));
            CHECK(moment(Word({0, 1}), one, {{0, A}, {1, B}}, n) == normalized_trace(A) * normalized_trace(B));
        }
    }

    TEST_CASE("disjoint legs factorize exactly") {
        std::mt19937_64 gen(6);
        const LegAssignment a({"s", "t"}, {{"s"}, {"t"}});
        const Word w({0, 1, 0, 1});
        for (std::int64_t n = 2; n <= 3; ++n) {
            const auto ops = oracle::random_operands(w, a, n, gen);
            const auto expected = normalized_trace(ops[0].local * ops[2].local) *
                                  normalized_trace(ops[1].local * ops[3].local);
            CHECK(moment(w, a, ops, n) == expected);
            std::vector<ExactOperand> limit(ops.begin(), ops.end());
            CHECK(asymptotic_moment<GaussRational>(w, a, deterministic_functional<GaussRational>(limit)).value ==
                  expected);
        }
    }

    TEST_CASE("invariance under conjugating each family's operands") {
        std::mt19937_64 gen(7);
        const LegAssignment a({"s", "t"}, {{"s", "t"}, {"s"}});
        const Word w({0, 1, 0, 1});
        const std::int64_t n = 2;
        const auto ops = oracle::random_operands(w, a, n, gen);
        auto conjugated = ops;
        for (auto& op : conjugated) {
            const auto v = monomial_unitary(op.local.rows(), op.family + 1);
            CHECK(adjoint(v) * v == Matrix<GaussRational>::identity(op.local.rows()));
            op.local = v * op.local * adjoint(v);
        }
        CHECK(moment(w, a, conjugated, n) == moment(w, a, ops, n));
    }

    TEST_CASE("validation") {
        const LegAssignment a({"s"}, {{"s"}, {"s"}});
        const auto m2 = Matrix<GaussRational>::identity(2);
        CHECK_THROWS_AS(moment(Word({0, 1}), a, {{0, m2}}, 2), ValidationError);
        CHECK_THROWS_AS(moment(Word({0, 1}), a, {{0, m2}, {0, m2}}, 2), ValidationError);
        CHECK_THROWS_AS(moment(Word({0, 1}), a, {{0, m2}, {1, Matrix<GaussRational>::identity(3)}}, 2),
                        ValidationError);
        CHECK_THROWS_AS(moment(Word({0, 2}), a, {{0, m2}, {2, m2}}, 2), ValidationError);
        CHECK(moment(Word({0, 1}), a, {{0, m2}, {1, m2}}, 2) == GaussRational(1));
    }

    TEST_CASE("ambient and local cycle counts of the induced cycle agree") {
        std::mt19937_64 gen(12);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = std::uniform_int_distribution<int>(1, 7)(gen);
            std::vector<int> J;
            for (int x = 0; x < k; ++x)
                if (std::bernoulli_distribution(0.6)(gen)) J.push_back(x);
            const OrderedSubset subset(J);
            const auto z = induced_full_cycle(subset, k);
            // Random permutation of J, extended by the identity.
            std::vector<int> local(J.size());
            for (std::size_t i = 0; i < J.size(); ++i) local[i] = static_cast<int>(i);
            std::shuffle(local.begin(), local.end(), gen);
            const Permutation tau_local(local);
            const auto tau = extend(tau_local, subset, k);
            const int ambient = compose(z.inverse(), tau).cycle_count() - (k - subset.size());
            const int inside = subset.empty() ? 0 : compose(full_cycle(subset.size()).inverse(), tau_local).cycle_count();
            CHECK(ambient == inside);
        }
    }

    TEST_CASE("asymptotic values") {
        const LegAssignment one({"s"}, {{"s"}});
        CHECK(asymptotic_moment<GaussRational>(Word({0, 0}), one, semicircular_functional<GaussRational>()).value ==
              GaussRational(1));
        CHECK(asymptotic_moment<GaussRational>(Word({0, 0, 0, 0}), one, semicircular_functional<GaussRational>())
                  .value == GaussRational(2));
        CHECK(asymptotic_moment<GaussRational>(Word({0, 0, 0, 0, 0, 0}), one,
                                               semicircular_functional<GaussRational>())
                  .value == GaussRational(5));

        const LegAssignment two({"s"}, {{"s"}, {"s"}});
        // Free semicirculars: phi(s1 s2 s1 s2) = 0, phi(s1 s1 s2 s2) = 1.
        CHECK(asymptotic_moment<GaussRational>(Word({0, 1, 0, 1}), two, semicircular_functional<GaussRational>())
                  .value == GaussRational(0));
        CHECK(asymptotic_moment<GaussRational>(Word({0, 0, 1, 1}), two, semicircular_functional<GaussRational>())
                  .value == GaussRational(1));
        // Haar unitaries u1 u2 u1^-1 u2^-1.
        CHECK(asymptotic_moment<GaussRational>(Word({0, 1, 0, 1}), two,
                                               haar_unitary_functional<GaussRational>({1, 1, -1, -1}))
                  .value == GaussRational(0));
        CHECK(asymptotic_moment<GaussRational>(Word({0, 0}), one, haar_unitary_functional<GaussRational>({1, -1}))
                  .value == GaussRational(1));
    }

    TEST_CASE("example word vanishes in the limit for centered operands") {
        const auto ops = verify::example_operands(3);
        const auto report = asymptotic_moment<GaussRational>(verify::example_word(), verify::example_assignment(),
                                                             deterministic_functional<GaussRational>(ops));
        CHECK(report.value == GaussRational(0));
        CHECK(report.stabilizer_size == 8);
        CHECK(verify::example_operands(3).size() == 8);
    }

    TEST_CASE("fixed points of non-crossing stabilizer elements") {
        const auto r = fixed_point_verify(verify::example_word(), verify::example_assignment());
        CHECK(r.ok);
        CHECK(r.stabilizer_size == 8);
        CHECK(r.noncrossing_elements >= 1);
        const LegAssignment disjoint({"a", "b"}, {{"a"}, {"b"}});
        CHECK_THROWS_AS(fixed_point_verify(Word({0, 1, 0}), disjoint), ValidationError);
        CHECK(vanishing_predicate(verify::example_word(), verify::example_epsilon()));
    }

    TEST_CASE("geodesic pairs have non-crossing restrictions") {
        std::mt19937_64 gen(31);
        for (int trial = 0; trial < 300; ++trial) {
            const int m = std::uniform_int_distribution<int>(1, 6)(gen);
            auto random_perm = [&] {
                std::vector<int> img(static_cast<std::size_t>(m));
                for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = i;
                std::shuffle(img.begin(), img.end(), gen);
                return Permutation(img);
            };
            std::vector<int> all(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
            const OrderedSubset J(all);
            const auto s = restrict(random_perm(), J);
            const auto t = restrict(random_perm(), J);
            if (is_geodesic(s, t)) {
                CHECK(is_noncrossing(s.local));
                CHECK(is_noncrossing(t.local));
            }
        }
        const OrderedSubset J3({0, 1, 2});
        CHECK(is_geodesic(restrict(Permutation::identity(3), J3), restrict(Permutation::identity(3), J3)));
    }

    TEST_CASE("a family spanning two legs converges at rate N^-4") {
        // Family 1 acts on C^N (x) C^N, so its corrections go as (N^2)^-2.
        const LegAssignment a({"s", "t"}, {{"s", "t"}, {"s"}});
        const Word w({0, 1, 0, 1});
        std::mt19937_64 gen(41);
        std::vector<Matrix<Complex>> base;
        for (int j = 0; j < 4; ++j) base.push_back(to_complex(oracle::random_exact_matrix(2, gen, false)));
        std::vector<FloatOperand> limit;
        for (int j = 0; j < 4; ++j) limit.push_back({w[j], base[static_cast<std::size_t>(j)]});
        const auto asym = asymptotic_moment<Complex>(w, a, deterministic_functional<Complex>(limit)).value;
        double diff[2];
        const std::int64_t ns[2] = {8, 16};
        for (int i = 0; i < 2; ++i) {
            std::vector<FloatOperand> ops;
            for (int j = 0; j < 4; ++j)
                ops.push_back({w[j], verify::kron_identity(base[static_cast<std::size_t>(j)],
                                                           dim_of(ns[i], a.leg_count(w[j])) / 2)});
            diff[i] = std::abs(exact_moment<Complex>(w, a, ops, ns[i]).value - asym);
        }
        REQUIRE(diff[0] > 1e-9);
        CHECK(diff[0] < 1.0);
        CHECK(diff[1] / diff[0] == doctest::Approx(1.0 / 16).epsilon(0.1));
        CHECK(ns[1] * diff[1] < ns[0] * diff[0]);
    }
}
