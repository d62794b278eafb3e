#include <doctest.h>

#include <cmath>

#include "epsfree/error.hpp"
#include "epsfree/randmat.hpp"

using namespace epsfree;

namespace {

CMatrix random_complex(int d, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = {g(gen), g(gen)};
    return m;
}

std::vector<FloatOperand> float_operands(const Word& w, const LegAssignment& a, std::int64_t n) {
    std::vector<FloatOperand> ops;
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> pick(-2, 2);
    for (int j = 0; j < w.size(); ++j) {
        const auto d = static_cast<std::size_t>(std::pow(n, a.leg_count(w[j])));
        Matrix<Complex> m(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) m(r, c) = {double(pick(gen)), double(pick(gen))};
        ops.push_back({w[j], m});
    }
    return ops;
}

}  // namespace

TEST_SUITE("randmat") {
    TEST_CASE("samplers produce unitary, orthogonal and Hermitian matrices") {
        Rng rng(1);
        for (int d : {1, 2, 5, 17}) {
            auto gen = rng.substream(0, static_cast<std::uint64_t>(d));
            const auto u = haar_unitary(d, gen);
            CHECK((u.adjoint() * u - CMatrix::Identity(d, d)).norm() < 1e-12);
            const auto o = haar_orthogonal(d, gen);
            CHECK((o.transpose() * o - RMatrix::Identity(d, d)).norm() < 1e-12);
            const auto h = gue(d, gen);
            CHECK((h - h.adjoint()).norm() == 0.0);
            const auto r = goe(d, gen);
            CHECK((r - r.transpose()).norm() == 0.0);
        }
        auto gen = rng.substream(0, 0);
        CHECK(std::abs(std::abs(haar_unitary(1, gen)(0, 0)) - 1.0) < 1e-15);
    }

    TEST_CASE("second moments of single entries") {
        Rng rng(2);
        const int d = 3;
        const int trials = 20000;
        double u11 = 0, o11 = 0, g2 = 0;
        for (int t = 0; t < trials; ++t) {
            auto gen = rng.substream(static_cast<std::uint64_t>(t), 0);
            u11 += std::norm(haar_unitary(d, gen)(0, 0));
            o11 += std::pow(haar_orthogonal(d, gen)(0, 0), 2);
            const auto h = gue(d, gen);
            g2 += (h * h).trace().real() / d;
        }
        // Var |u11|^2 = 1/12 at d = 3; 5 sigma is about 0.01.
        CHECK(u11 / trials == doctest::Approx(1.0 / 3).epsilon(0.03));
        CHECK(o11 / trials == doctest::Approx(1.0 / 3).epsilon(0.03));
        CHECK(g2 / trials == doctest::Approx(1.0).epsilon(0.03));
    }

    TEST_CASE("substreams are deterministic and distinct") {
        Rng a(5), b(5), c(6);
        CHECK(a.substream(3, 1)() == b.substream(3, 1)());
        CHECK(a.substream(3, 1)() != a.substream(3, 2)());
        CHECK(a.substream(3, 1)() != a.substream(4, 1)());
        CHECK(a.substream(3, 1)() != c.substream(3, 1)());
    }

    TEST_CASE("embedding is a homomorphism and preserves normalized traces") {
        std::mt19937_64 gen(3);
        const LegAssignment a({"r", "s", "t"}, {{"r", "t"}, {"s"}, {"r", "s"}});
        const std::int64_t n = 2;
        const auto A = random_complex(4, gen), B = random_complex(4, gen), C = random_complex(2, gen);
        const auto EA = embed(A, 0, a, n), EB = embed(B, 0, a, n), EC = embed(C, 1, a, n);
        CHECK((EA * EB - embed(CMatrix(A * B), 0, a, n)).norm() < 1e-10);
        CHECK(std::abs(EA.trace() / 8.0 - A.trace() / 4.0) < 1e-12);
        // Families 1 and 2 have disjoint legs.
        CHECK((EA * EC - EC * EA).norm() < 1e-10);
        const auto ED = embed(random_complex(4, gen), 2, a, n);
        CHECK((EA * ED - ED * EA).norm() > 1e-3);
        CHECK((embed(CMatrix::Identity(4, 4), 0, a, n) - CMatrix::Identity(8, 8)).norm() == 0.0);
    }

    TEST_CASE("apply_on_legs and trace_on_legs match the dense embedding") {
        std::mt19937_64 gen(4);
        const std::int64_t n = 3;
        for (const auto& legs : std::vector<std::vector<int>>{{0}, {1}, {0, 2}, {0, 1, 2}, {2, 1}}) {
            std::vector<int> sorted = legs;
            std::sort(sorted.begin(), sorted.end());
            const LegLayout layout(sorted, 3, n);
            const int local = static_cast<int>(layout.local_dim());
            const auto L = random_complex(local, gen);
            const auto M = random_complex(27, gen);
            const auto dense = embed(L, sorted, 3, n);
            CHECK((apply_on_legs(L, layout, M) - dense * M).norm() < 1e-9);
            CHECK(std::abs(trace_on_legs(L, layout, M) - (dense * M).trace()) < 1e-9);
        }
        CHECK(full_dimension(3, 3) == 27);
        CHECK_THROWS_AS(full_dimension(64, 1000), ResourceError);
    }

    TEST_CASE("worker count does not change results") {
        const Word w({0, 1, 0, 1});
        const LegAssignment one({"s"}, {{"s"}, {"s"}});
        const auto ops = float_operands(w, one, 3);
        const Rng rng(77);
        McOptions serial, threaded;
        threaded.workers = 3;
        const auto a = mc_moment(w, one, ops, 3, 50, rng, HaarGroup::unitary, serial);
        const auto b = mc_moment(w, one, ops, 3, 50, rng, HaarGroup::unitary, threaded);
        CHECK(a.mean == b.mean);
        CHECK(a.std_error == b.std_error);
        const auto g1 = mc_gue_moment(Word({0, 0}), one, 4, 30, rng, serial);
        const auto g2 = mc_gue_moment(Word({0, 0}), one, 4, 30, rng, threaded);
        CHECK(g1.mean == g2.mean);
    }

    TEST_CASE("Haar conjugation makes the moment independent of a fixed rotation") {
        const LegAssignment one({"s"}, {{"s"}, {"s"}});
        const Word w({0, 1, 0, 1});
        const auto ops = float_operands(w, one, 2);
        // Conjugate family 1's operands by a fixed unitary; the Haar average is unchanged.
        std::mt19937_64 gen(8);
        const CMatrix v = haar_unitary(2, gen);
        auto rotated = ops;
        for (auto& op : rotated)
            if (op.family == 0) op.local = from_eigen(v * to_eigen(op.local) * v.adjoint());
        const Rng rng(9);
        const auto a = mc_moment(w, one, ops, 2, 40000, rng, HaarGroup::unitary);
        const auto b = mc_moment(w, one, rotated, 2, 40000, Rng(10), HaarGroup::unitary);
        const double se = std::hypot(a.std_error, b.std_error);
        CHECK(std::abs(a.mean - b.mean) < 5 * se);
    }

    TEST_CASE("argument checks") {
        const LegAssignment one({"s"}, {{"s"}});
        const Word w({0, 0});
        const auto ops = float_operands(w, one, 2);
        CHECK_THROWS_AS(mc_moment(w, one, ops, 2, 1, Rng(1), HaarGroup::unitary), ValidationError);
        McOptions small;
        small.dimension_cap = 8;
        const LegAssignment big({"a", "b", "c", "d"}, {{"a"}});
        const auto big_ops = float_operands(w, big, 2);
        CHECK_THROWS_AS(mc_moment(w, big, big_ops, 2, 10, Rng(1), HaarGroup::unitary, small), ResourceError);
        small.allow_large = true;
        CHECK(mc_moment(w, big, big_ops, 2, 10, Rng(1), HaarGroup::unitary, small).trace == TraceMode::stochastic);
        const std::vector<Complex> one_sample = {Complex(1)};
        CHECK_THROWS_AS(summarize(one_sample), ValidationError);
    }

    TEST_CASE("summary statistics") {
        const std::vector<Complex> s = {Complex(1), Complex(2), Complex(3), Complex(4)};
        const auto e = summarize(s);
        CHECK(e.mean == Complex(2.5));
        CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3 / 4)));
        CHECK(e.trials == 4);
    }

    TEST_CASE("stochastic trace is unbiased") {
        const LegAssignment two({"s", "t"}, {{"s"}, {"t"}, {"s", "t"}});
        const Word w({0, 2, 1, 2});
        const std::int64_t n = 2;
        const auto ops = float_operands(w, two, n);
        McOptions exact, stochastic;
        stochastic.trace = TraceMode::stochastic;
        stochastic.probes = 2;
        const auto a = mc_moment(w, two, ops, n, 4000, Rng(3), HaarGroup::unitary, exact);
        const auto b = mc_moment(w, two, ops, n, 4000, Rng(3), HaarGroup::unitary, stochastic);
        CHECK(b.trace == TraceMode::stochastic);
        CHECK(std::abs(a.mean - b.mean) < 5 * std::hypot(a.std_error, b.std_error) + 1e-12);
    }

    TEST_CASE("Monte Carlo agrees with exact moments at small N") {
        const LegAssignment a({"s", "t"}, {{"s", "t"}, {"s"}});
        const Word w({0, 1, 0, 1});
        const auto ops = float_operands(w, a, 2);
        const auto exact = exact_moment<Complex>(w, a, ops, 2).value;
        const auto mc = mc_moment(w, a, ops, 2, 30000, Rng(12), HaarGroup::unitary);
        CHECK(std::abs(mc.mean - exact) < 5 * mc.std_error);
    }
}
