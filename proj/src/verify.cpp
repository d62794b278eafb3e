#include "epsfree/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "epsfree/error.hpp"
#include "epsfree/randmat.hpp"
#include "epsfree/weingarten.hpp"

namespace epsfree::verify {

EpsilonMatrix example_epsilon() {
    EpsilonMatrix eps(5);
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}, {2, 4}}) eps.set(i, j, 1);
    return eps;
}

Word example_word() { return Word({0, 2, 4, 1, 0, 3, 1, 3}); }

LegAssignment example_assignment() { return model_b(example_epsilon(), CoverStrategy::maximal_cliques); }

Matrix<GaussRational> shift_symmetric(std::size_t d) {
    Matrix<GaussRational> m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m((i + 1) % d, i) += GaussRational(1);
        m(i, (i + 1) % d) += GaussRational(1);
    }
    return m;
}

Matrix<GaussRational> alternating_diagonal(std::size_t d) {
    Matrix<GaussRational> m(d, d);
    const Rational shift = d % 2 == 1 ? Rational(1, static_cast<unsigned long>(d)) : Rational(0);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = GaussRational(Rational(i % 2 == 0 ? 1 : -1) - shift);
    return m;
}

Matrix<GaussRational> nearly_centered_diagonal(std::size_t d) {
    Matrix<GaussRational> m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = GaussRational(i % 2 == 0 ? 1 : -1);
    if (d % 2 == 0) m(d - 1, d - 1) = GaussRational(0);
    return m;
}

template <typename T>
Matrix<T> kron_identity(const Matrix<T>& a, std::size_t m) {
    Matrix<T> out(a.rows() * m, a.cols() * m);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t r = 0; r < m; ++r) out(i * m + r, j * m + r) = a(i, j);
    return out;
}

template Matrix<GaussRational> kron_identity(const Matrix<GaussRational>&, std::size_t);
template Matrix<Complex> kron_identity(const Matrix<Complex>&, std::size_t);

std::vector<ExactOperand> example_operands(std::int64_t n, bool singletons_centered) {
    const Word word = example_word();
    const LegAssignment assignment = example_assignment();
    std::vector<ExactOperand> ops;
    for (int j = 0; j < word.size(); ++j) {
        const auto d = static_cast<std::size_t>(integer_power(n, assignment.leg_count(word[j])).get_ui());
        const bool singleton = word.block_of(word[j]).size() == 1;
        Matrix<GaussRational> m;
        if (singleton && !singletons_centered)
            m = nearly_centered_diagonal(d);
        else if (word[j] % 3 == 0)
            m = shift_symmetric(d);
        else if (word[j] % 3 == 1)
            m = alternating_diagonal(d);
        else
            m = shift_symmetric(d) + alternating_diagonal(d);
        ops.push_back({word[j], std::move(m)});
    }
    return ops;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("loglog_slope needs two equal-length series");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] == 0.0) return std::nullopt;
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    int passed = 0;
    std::ostringstream detail;
    const Options* options = nullptr;

    void require(bool condition, const std::string& what) {
        if (condition) ++passed;
        if (!condition) {
            if (!ok) detail << "; ";
            detail << "FAILED " << what;
            ok = false;
        }
        if (options && options->log) options->log(std::string(condition ? "  ok   " : "  FAIL ") + what);
    }
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::string fmt(const Complex& v) {
    std::ostringstream s;
    s.precision(6);
    s << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i";
    return s.str();
}

std::vector<FloatOperand> to_float(const std::vector<ExactOperand>& ops) {
    std::vector<FloatOperand> out;
    for (const auto& op : ops) out.push_back({op.family, to_complex(op.local)});
    return out;
}

std::size_t dim_of(std::int64_t n, int legs) { return static_cast<std::size_t>(integer_power(n, legs).get_ui()); }

Matrix<GaussRational> random_exact(std::size_t d, std::mt19937_64& gen, int range = 2) {
    std::uniform_int_distribution<int> pick(-range, range);
    Matrix<GaussRational> m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = GaussRational(Rational(pick(gen)), Rational(pick(gen)));
    return m;
}

EpsilonMatrix random_epsilon(int n, std::mt19937_64& gen) {
    std::bernoulli_distribution bit(0.5);
    EpsilonMatrix eps(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) eps.set(i, j, bit(gen) ? 1 : 0);
    return eps;
}

// 1. Weingarten correctness.
void weingarten_correctness(Check& c) {
    for (int k = 1; k <= 4; ++k) {
        for (std::int64_t n = k; n <= k + 3; ++n) {
            const auto gram = unitary_gram_matrix(k, n);
            const auto perms = all_permutations(k);
            const auto& table = unitary_wg_table(k, n);
            bool ok = true;
            for (std::size_t a = 0; a < perms.size() && ok; ++a) {
                Rational sum = 0;
                for (std::size_t b = 0; b < perms.size(); ++b) sum += gram[a][b] * table(perms[b]);
                ok = sum == (perms[a].is_identity() ? 1 : 0);
            }
            c.require(ok, "unitary Gram identity k=" + std::to_string(k) + " N=" + std::to_string(n));
        }
    }
    for (int k = 1; k <= 3; ++k) {
        for (std::int64_t n = k; n <= k + 3; ++n) {
            const auto gram = orthogonal_gram_matrix(k, n);
            const auto pairings = enumerate_pairings(k);
            const auto& table = orthogonal_wg_table(k, n);
            bool ok = true;
            for (std::size_t a = 0; a < pairings.size() && ok; ++a)
                for (std::size_t b = 0; b < pairings.size() && ok; ++b) {
                    Rational sum = 0;
                    for (std::size_t m = 0; m < pairings.size(); ++m) sum += gram[a][m] * table(pairings[m], pairings[b]);
                    ok = sum == (a == b ? 1 : 0);
                }
            c.require(ok, "orthogonal Gram identity k=" + std::to_string(k) + " N=" + std::to_string(n));
        }
    }
    bool closed = true;
    for (long n = 1; n <= 12; ++n) closed = closed && unitary_wg(CycleType({1}), n) == Rational(1, n);
    for (long n = 2; n <= 12; ++n) {
        closed = closed && unitary_wg(CycleType({1, 1}), n) == Rational(1, n * n - 1);
        closed = closed && unitary_wg(CycleType({2}), n) == Rational(-1, n * (n * n - 1));
    }
    c.require(closed, "closed forms 1/N, 1/(N^2-1), -1/(N(N^2-1)) for N <= 12");
}

// 2. Exact identities tr(AB) and tr(A)tr(B).
void exact_identities(Check& c, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const std::vector<LegAssignment> assignments = {
        LegAssignment({"a"}, {{"a"}, {"a"}}),
        LegAssignment({"a", "b"}, {{"a", "b"}, {"b"}}),
        LegAssignment({"a", "b"}, {{"a"}, {"a", "b"}}),
    };
    for (std::int64_t n = 2; n <= 4; ++n) {
        for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
            const auto& as = assignments[ai];
            const std::string tag = " N=" + std::to_string(n) + " assignment " + std::to_string(ai + 1);
            for (int f = 0; f < 2; ++f) {
                const auto d = dim_of(n, as.leg_count(f));
                std::vector<ExactOperand> ops = {{f, random_exact(d, gen)}, {f, random_exact(d, gen)}};
                const auto r = exact_moment<GaussRational>(Word({f, f}), as, ops, n);
                c.require(r.value == normalized_trace(ops[0].local * ops[1].local),
                          "E tr(UAU*UBU*) = tr(AB), family " + std::to_string(f + 1) + tag);
            }
            std::vector<ExactOperand> ops = {{0, random_exact(dim_of(n, as.leg_count(0)), gen)},
                                             {1, random_exact(dim_of(n, as.leg_count(1)), gen)}};
            const auto r = exact_moment<GaussRational>(Word({0, 1}), as, ops, n);
            c.require(r.value == normalized_trace(ops[0].local) * normalized_trace(ops[1].local),
                      "E tr(UAU*VBV*) = tr(A)tr(B)" + tag);
        }
    }
}

// 3. Exact vs Monte Carlo.
struct McCase {
    Word word;
    LegAssignment assignment;
    std::int64_t n = 0;
    std::vector<ExactOperand> operands;
    std::string label;
};

std::vector<McCase> mc_cases(std::uint64_t seed, const std::vector<std::int64_t>& allowed) {
    std::vector<std::int64_t> ns = allowed.empty() ? std::vector<std::int64_t>{2, 3, 4} : allowed;
    for (auto n : ns)
        if (n < 2 || n > 4) throw ValidationError("exact-vs-Monte-Carlo cases need N in 2..4");
    std::mt19937_64 gen(seed);
    std::vector<McCase> cases;
    while (cases.size() < 10) {
        const int strings = std::uniform_int_distribution<int>(1, 2)(gen);
        const int length = std::uniform_int_distribution<int>(2, 4)(gen);
        const int families = std::uniform_int_distribution<int>(1, std::min(3, length))(gen);
        std::vector<int> labels;
        for (int j = 0; j < length; ++j) labels.push_back(std::uniform_int_distribution<int>(0, families - 1)(gen));
        const std::int64_t n = ns[std::uniform_int_distribution<std::size_t>(0, ns.size() - 1)(gen)];
        std::vector<std::string> ids = strings == 1 ? std::vector<std::string>{"s1"} : std::vector<std::string>{"s1", "s2"};
        std::vector<std::vector<std::string>> legs;
        for (int f = 0; f < families; ++f) {
            const int mask = std::uniform_int_distribution<int>(1, (1 << strings) - 1)(gen);
            std::vector<std::string> k;
            for (int s = 0; s < strings; ++s)
                if (mask & (1 << s)) k.push_back(ids[static_cast<std::size_t>(s)]);
            legs.push_back(k);
        }
        const Word word(labels);
        if (word.max_label() + 1 != families) continue;
        McCase mc{word, LegAssignment(ids, legs), n, {}, {}};
        bool fits = true;
        for (int f : word.families())
            fits = fits && dim_of(n, mc.assignment.leg_count(f)) >= word.block_of(f).size();
        bool coupled = false;
        for (int f : word.families())
            for (int g : word.families())
                for (int s : mc.assignment.legs(f)) coupled = coupled || (f != g && mc.assignment.has_leg(g, s));
        if (!fits || !coupled) continue;
        for (int j = 0; j < word.size(); ++j)
            mc.operands.push_back({word[j], random_exact(dim_of(n, mc.assignment.leg_count(word[j])), gen)});
        std::ostringstream label;
        label << "word (";
        for (int j = 0; j < word.size(); ++j) label << (j ? "," : "") << word[j] + 1;
        label << ") #S=" << strings << " legs";
        for (int f = 0; f < families; ++f) label << " K" << f + 1 << "=" << mc.assignment.leg_count(f);
        label << " N=" << n;
        mc.label = label.str();
        cases.push_back(std::move(mc));
    }
    return cases;
}

void exact_vs_mc(Check& c, const Options& options) {
    const std::uint64_t trials = options.trials.value_or(200'000);
    McOptions mo;
    mo.workers = options.workers;
    std::uint64_t i = 0;
    for (const auto& mc : mc_cases(options.seed ^ 0x3, options.ns)) {
        const auto exact = exact_moment<GaussRational>(mc.word, mc.assignment, mc.operands, mc.n);
        const auto ops = to_float(mc.operands);
        const auto est = mc_moment(mc.word, mc.assignment, ops, mc.n, trials, Rng(options.seed + 1000 + i++),
                                   HaarGroup::unitary, mo);
        const double diff = std::abs(est.mean - exact.value.to_complex());
        c.require(diff <= 4 * est.std_error, mc.label + ": exact " + fmt(exact.value.to_complex()) + ", MC " +
                                                 fmt(est.mean) + " +- " + fmt(est.std_error) + " (" +
                                                 fmt(diff / est.std_error) + " stderr)");
    }
}

// 4. Finite-N decay on the example word.
void decay(Check& c) {
    const Word word = example_word();
    const LegAssignment as = example_assignment();
    std::vector<double> ns;
    for (int n = 2; n <= 6; ++n) ns.push_back(n);

    for (bool centered : {true, false}) {
        std::vector<double> mags;
        bool exact_zero = true;
        std::ostringstream values;
        for (double n : ns) {
            const auto n64 = static_cast<std::int64_t>(n);
            const auto r = exact_moment<GaussRational>(word, as, example_operands(n64, centered), n64);
            exact_zero = exact_zero && r.value.is_zero();
            mags.push_back(std::abs(r.value.to_complex()));
            values << (n64 > 2 ? ", " : "") << "N=" << n64 << ": " << fmt(mags.back());
        }
        bool monotone = true;
        for (std::size_t i = 2; i < mags.size(); ++i) monotone = monotone && mags[i] <= mags[i - 1];
        const auto slope = loglog_slope(ns, mags);
        const std::string kind = centered ? "traceless operands" : "singletons with tr = 1/d";
        if (!slope) {
            c.require(exact_zero, exact_zero ? kind + ": exactly 0 at every N"
                                             : kind + ": some but not all values vanish (" + values.str() + ")");
            continue;
        }
        c.require(*slope <= -1.0, kind + ": log-log slope " + fmt(*slope) + " <= -1 (" + values.str() + ")");
        c.require(monotone, kind + ": |moment| nonincreasing for N >= 3");
    }
}

// 5. Asymptotic consistency.
struct AsymptoticCase {
    Word word;
    LegAssignment assignment;
    std::string label;
};

void asymptotic_consistency(Check& c, std::uint64_t seed) {
    const std::vector<std::pair<std::string, LegAssignment>> assignments = {
        {"one string", LegAssignment({"a"}, {{"a"}, {"a"}, {"a"}})},
        {"K1=K2={a} K3={b}", LegAssignment({"a", "b"}, {{"a"}, {"a"}, {"b"}})},
        {"K1=K3={a} K2={b}", LegAssignment({"a", "b"}, {{"a"}, {"b"}, {"a"}})},
    };
    const std::vector<std::vector<int>> words = {{0},          {0, 0},       {0, 1},       {0, 0, 1},
                                                 {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 0}, {0, 1, 0, 2},
                                                 {0, 1, 2, 1}, {0, 0, 0, 0}, {0, 1, 2}, {1, 0, 2, 0},
                                                 {0, 2, 0, 2}, {1, 2, 1, 2}};
    constexpr std::size_t base = 2;
    std::mt19937_64 gen(seed);
    std::vector<Matrix<Complex>> a;
    for (int j = 0; j < 4; ++j) a.push_back(to_complex(random_exact(base, gen)));

    int zero = 0;
    for (const auto& [aname, as] : assignments) {
        for (const auto& labels : words) {
            const Word word(labels);
            std::vector<FloatOperand> limit;
            for (int j = 0; j < word.size(); ++j) limit.push_back({word[j], a[static_cast<std::size_t>(j)]});
            const auto asym = asymptotic_moment<Complex>(word, as, deterministic_functional<Complex>(limit)).value;
            double scaled[2] = {0, 0};
            const std::int64_t nlist[2] = {8, 16};
            for (int i = 0; i < 2; ++i) {
                std::vector<FloatOperand> ops;
                for (int j = 0; j < word.size(); ++j) {
                    const auto d = dim_of(nlist[i], as.leg_count(word[j]));
                    ops.push_back({word[j], kron_identity(a[static_cast<std::size_t>(j)], d / base)});
                }
                const auto exact = exact_moment<Complex>(word, as, ops, nlist[i]).value;
                scaled[i] = static_cast<double>(nlist[i]) * std::abs(exact - asym);
            }
            std::ostringstream label;
            label << "word (";
            for (int j = 0; j < word.size(); ++j) label << (j ? "," : "") << word[j] + 1;
            label << ") " << aname;
            if (scaled[0] < 1e-9 && scaled[1] < 1e-9) {
                ++zero;
                if (c.options && c.options->log) c.options->log("  ok   " + label.str() + ": exact = limit at N=8,16");
                continue;
            }
            const double ratio = scaled[1] / scaled[0];
            c.require(ratio >= 0.3 && ratio <= 1.7, label.str() + ": N|diff| " + fmt(scaled[0]) + " -> " +
                                                        fmt(scaled[1]) + ", ratio " + fmt(ratio));
        }
    }
    if (c.ok) c.detail << zero << " of " << assignments.size() * words.size() << " cases have exact = limit; ";
}

// 6. Fixed points of block-wise non-crossing stabilizer elements.
void for_each_word(int labels, int max_length, const std::function<void(const Word&)>& f) {
    for (int length = 1; length <= max_length; ++length) {
        std::vector<int> w(static_cast<std::size_t>(length), 0);
        for (;;) {
            f(Word(w));
            int p = length - 1;
            while (p >= 0 && ++w[static_cast<std::size_t>(p)] == labels) w[static_cast<std::size_t>(p--)] = 0;
            if (p < 0) break;
        }
    }
}

void fixed_points(Check& c, std::uint64_t seed) {
    auto campaign = [&](const EpsilonMatrix& eps, const LegAssignment& as, std::size_t& words,
                        std::size_t& counterexamples) {
        for_each_word(eps.size(), 6, [&](const Word& w) {
            if (!word_in_I_eps(w, eps)) return;
            ++words;
            if (!fixed_point_verify(w, as).ok) ++counterexamples;
        });
    };
    {
        std::size_t words = 0, bad = 0;
        campaign(example_epsilon(), example_assignment(), words, bad);
        campaign(example_epsilon(), model_a(example_epsilon()), words, bad);
        c.require(bad == 0, "example epsilon (maximal cliques and Model A): " + std::to_string(words) +
                                " reduced words, " + std::to_string(bad) + " counterexamples");
    }
    std::mt19937_64 gen(seed);
    std::size_t words = 0, bad = 0;
    for (int t = 0; t < 50; ++t) {
        const auto eps = random_epsilon(std::uniform_int_distribution<int>(1, 5)(gen), gen);
        campaign(eps, model_a(eps), words, bad);
    }
    c.require(bad == 0, "50 random epsilon (Model A): " + std::to_string(words) + " reduced words, " +
                            std::to_string(bad) + " counterexamples");
}

// 7. Model round trip.
void round_trip(Check& c, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::size_t failures = 0;
    for (int t = 0; t < 200; ++t) {
        const auto eps = random_epsilon(std::uniform_int_distribution<int>(1, 8)(gen), gen);
        if (epsilon_of(model_a(eps)) != eps) ++failures;
        for (auto s : {CoverStrategy::maximal_cliques, CoverStrategy::greedy, CoverStrategy::edges_and_vertices})
            if (epsilon_of(model_b(eps, s)) != eps) ++failures;
    }
    c.require(failures == 0, "200 random epsilon, Model A and three Model B strategies: " +
                                 std::to_string(failures) + " mismatches");
    const auto as = example_assignment();
    const std::vector<std::string> expected = {"{1,3}", "{1,4,5}", "{2,4,5}"};
    c.require(as.strings() == expected, "example maximal anti-cliques {1,4,5},{2,4,5},{1,3}");
}

// 8. Orthogonal vs unitary.
void orthogonal_vs_unitary(Check& c, const Options& options) {
    constexpr std::int64_t n = 100;
    constexpr std::uint64_t trials = 10'000;
    const LegAssignment as({"s"}, {{"s"}, {"s"}});
    const Word word({0, 1, 0, 1});
    std::vector<FloatOperand> ops = {{0, to_complex(shift_symmetric(n))},
                                     {1, to_complex(alternating_diagonal(n))},
                                     {0, to_complex(alternating_diagonal(n))},
                                     {1, to_complex(shift_symmetric(n))}};
    McOptions mo;
    mo.workers = options.workers;
    const auto u = mc_moment(word, as, ops, n, trials, Rng(options.seed + 8), HaarGroup::unitary, mo);
    const auto o = mc_moment(word, as, ops, n, trials, Rng(options.seed + 9), HaarGroup::orthogonal, mo);
    const double combined = std::sqrt(u.std_error * u.std_error + o.std_error * o.std_error);
    const double diff = std::abs(u.mean - o.mean);
    c.require(diff <= 4 * combined + 10.0 / n, "N=100 word (1,2,1,2): unitary " + fmt(u.mean) + " +- " +
                                                   fmt(u.std_error) + ", orthogonal " + fmt(o.mean) + " +- " +
                                                   fmt(o.std_error) + ", |diff| " + fmt(diff) + " <= " +
                                                   fmt(4 * combined + 10.0 / n));
}

// 9. GUE semicircle and the example model.
void gue_checks(Check& c, const Options& options) {
    McOptions mo;
    mo.workers = options.workers;
    const auto single = mc_gue_moment(Word({0, 0, 0, 0}), LegAssignment({"s"}, {{"s"}}), 200, 200,
                                      Rng(options.seed + 90), mo);
    c.require(std::abs(single.mean - Complex(2.0)) <= 3 * single.std_error,
              "N=200 E tr(X^4) = " + fmt(single.mean) + " +- " + fmt(single.std_error) + " vs 2");
    mo.trace = TraceMode::stochastic;
    mo.probes = 8;
    const auto mixed =
        mc_gue_moment(example_word(), example_assignment(), 16, 200, Rng(options.seed + 91), mo);
    c.require(std::abs(mixed.mean) <= 3 * mixed.std_error, "example word, GUE inputs, N=16 (" +
                                                               to_string(mixed.trace) + " trace): " + fmt(mixed.mean) +
                                                               " +- " + fmt(mixed.std_error) + " vs 0");
}

}  // namespace

std::string criterion_title(int id) {
    switch (id) {
        case 1: return "Weingarten correctness";
        case 2: return "exact-formula identities";
        case 3: return "exact vs Monte Carlo";
        case 4: return "vanishing at finite N";
        case 5: return "asymptotic formula consistency";
        case 6: return "fixed points of non-crossing stabilizer elements";
        case 7: return "model round-trip";
        case 8: return "orthogonal/unitary agreement";
        case 9: return "GUE semicircle";
        default: throw ValidationError("no acceptance criterion " + std::to_string(id));
    }
}

CriterionResult run_criterion(int id, const Options& options) {
    CriterionResult result;
    result.id = id;
    result.title = criterion_title(id);
    Check check;
    check.options = &options;
    const auto start = Clock::now();
    switch (id) {
        case 1: weingarten_correctness(check); break;
        case 2: exact_identities(check, options.seed ^ 0x2); break;
        case 3: exact_vs_mc(check, options); break;
        case 4: decay(check); break;
        case 5: asymptotic_consistency(check, options.seed ^ 0x5); break;
        case 6: fixed_points(check, options.seed ^ 0x6); break;
        case 7: round_trip(check, options.seed ^ 0x7); break;
        case 8: orthogonal_vs_unitary(check, options); break;
        case 9: gue_checks(check, options); break;
        default: criterion_title(id);
    }
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.passed = check.ok;
    result.detail = check.detail.str();
    if (check.ok) result.detail += std::to_string(check.passed) + " checks passed";
    return result;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const Options& options) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, options));
    return out;
}

}  // namespace epsfree::verify
