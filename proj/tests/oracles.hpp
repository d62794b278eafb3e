#pragma once

// Test-only reference implementations. They work from definitions on the
// full index space and share no code path with the library beyond scalar
// types and the (separately checked) unitary Weingarten values.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/exact.hpp"
#include "epsfree/matrix.hpp"
#include "epsfree/moments.hpp"
#include "epsfree/symgroup.hpp"
#include "epsfree/weingarten.hpp"

namespace oracle {

using namespace epsfree;

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Digits of a full index x in base N, one per string (string 0 most significant).
inline std::vector<int> digits(std::int64_t x, int strings, std::int64_t n) {
    std::vector<int> d(static_cast<std::size_t>(strings));
    for (int s = strings - 1; s >= 0; --s) {
        d[static_cast<std::size_t>(s)] = static_cast<int>(x % n);
        x /= n;
    }
    return d;
}

inline std::int64_t local_part(const std::vector<int>& d, const std::vector<int>& legs, std::int64_t n) {
    std::int64_t a = 0;
    for (int s : legs) a = a * n + d[static_cast<std::size_t>(s)];
    return a;
}

/// Every permutation of {0..k-1} preserving the blocks of `word`, by filtering S_k.
inline std::vector<Permutation> stabilizer_by_filter(const Word& word) {
    std::vector<Permutation> out;
    std::vector<int> img(static_cast<std::size_t>(word.size()));
    for (int i = 0; i < word.size(); ++i) img[static_cast<std::size_t>(i)] = i;
    do {
        bool ok = true;
        for (int i = 0; i < word.size() && ok; ++i) ok = word[i] == word[img[static_cast<std::size_t>(i)]];
        if (ok) out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

/// E tr(U A_1 U* ... ) by expanding each family with the Weingarten formula
///   int u_{a1 b1}..u_{am bm} conj(u_{a'1 c1})..conj(u_{a'm cm})
///     = sum_{s,t} prod delta(a_j, a'_{s(j)}) delta(b_j, c_{t(j)}) Wg(t s^-1)
/// and brute-forcing the remaining index sums on the full tensor space.
/// Only usable for tiny N, #S and k.
template <typename T>
T index_sum_moment(const Word& word, const LegAssignment& assignment, const std::vector<Operand<T>>& ops,
                   std::int64_t n) {
    const int k = word.size();
    const int strings = assignment.num_strings();
    const std::int64_t full = ipow(n, strings);
    const auto stab = stabilizer_by_filter(word);

    // Per position: full index -> (local digits, rest digits), precomputed.
    std::vector<std::vector<std::int64_t>> loc(static_cast<std::size_t>(k));
    std::vector<std::vector<std::vector<int>>> rest(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const auto& legs = assignment.legs(word[j]);
        for (std::int64_t x = 0; x < full; ++x) {
            auto d = digits(x, strings, n);
            loc[static_cast<std::size_t>(j)].push_back(local_part(d, legs, n));
            for (int s : legs) d[static_cast<std::size_t>(s)] = -1;
            rest[static_cast<std::size_t>(j)].push_back(d);
        }
    }

    // count(s): number of (x_1..x_k) with x_j, x_{j+1} equal off K_{i_j} and
    // loc_j(x_j) = loc_{s(j)}(x_{s(j)+1}).
    auto count = [&](const Permutation& s) {
        std::int64_t total = 0;
        std::vector<std::int64_t> x(static_cast<std::size_t>(k), 0);
        for (;;) {
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                const auto xj = x[static_cast<std::size_t>(j)];
                const auto xn = x[static_cast<std::size_t>((j + 1) % k)];
                ok = rest[static_cast<std::size_t>(j)][static_cast<std::size_t>(xj)] ==
                     rest[static_cast<std::size_t>(j)][static_cast<std::size_t>(xn)];
                if (!ok) break;
                const int sj = s(j);
                const auto xs = x[static_cast<std::size_t>((sj + 1) % k)];
                ok = loc[static_cast<std::size_t>(j)][static_cast<std::size_t>(xj)] ==
                     loc[static_cast<std::size_t>(sj)][static_cast<std::size_t>(xs)];
            }
            if (ok) ++total;
            int p = 0;
            while (p < k && ++x[static_cast<std::size_t>(p)] == full) x[static_cast<std::size_t>(p++)] = 0;
            if (p == k) break;
        }
        return total;
    };

    // bc(t): sum over b of prod_j A_j[b_j, c_j] with c_{t(j)} = b_j.
    auto bc = [&](const Permutation& t) {
        std::vector<std::int64_t> dim(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) dim[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(ops[static_cast<std::size_t>(j)].local.rows());
        T total(0);
        std::vector<std::int64_t> b(static_cast<std::size_t>(k), 0);
        std::vector<std::int64_t> c(static_cast<std::size_t>(k), 0);
        for (;;) {
            for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(t(j))] = b[static_cast<std::size_t>(j)];
            T term(1);
            for (int j = 0; j < k; ++j)
                term *= ops[static_cast<std::size_t>(j)].local(static_cast<std::size_t>(b[static_cast<std::size_t>(j)]),
                                                               static_cast<std::size_t>(c[static_cast<std::size_t>(j)]));
            total += term;
            int p = 0;
            while (p < k && ++b[static_cast<std::size_t>(p)] == dim[static_cast<std::size_t>(p)]) b[static_cast<std::size_t>(p++)] = 0;
            if (p == k) break;
        }
        return total;
    };

    auto wg = [&](const Permutation& p) {
        Rational w = 1;
        for (int f : word.families()) {
            const auto block = word.block_of(f);
            std::vector<int> local;
            for (int j : block)
                local.push_back(static_cast<int>(std::find(block.begin(), block.end(), p(j)) - block.begin()));
            w *= unitary_wg(Permutation(local), ipow(n, assignment.leg_count(f)));
        }
        return w;
    };

    std::vector<std::int64_t> counts;
    std::vector<T> bcs;
    for (const auto& s : stab) counts.push_back(count(s));
    for (const auto& t : stab) bcs.push_back(bc(t));
    T total(0);
    for (std::size_t a = 0; a < stab.size(); ++a)
        for (std::size_t b = 0; b < stab.size(); ++b) {
            if (counts[a] == 0) continue;
            const Rational w = wg(compose(stab[b], stab[a].inverse())) * Rational(static_cast<long>(counts[a]));
            total += ScalarTraits<T>::from_rational(w) * bcs[b];
        }
    return divide(total, mpz_class(static_cast<long>(full)));
}

/// Random small-integer Gaussian rational matrix; traceless when asked.
inline Matrix<GaussRational> random_exact_matrix(std::size_t dim, std::mt19937_64& gen, bool traceless, int range = 2) {
    std::uniform_int_distribution<int> pick(-range, range);
    Matrix<GaussRational> m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = GaussRational(Rational(pick(gen)), Rational(pick(gen)));
    if (traceless && dim > 0) {
        GaussRational tr = m.trace();
        for (std::size_t i = 0; i < dim; ++i) m(i, i) -= tr / Rational(static_cast<long>(dim));
    }
    return m;
}

inline std::vector<ExactOperand> random_operands(const Word& word, const LegAssignment& assignment, std::int64_t n,
                                                 std::mt19937_64& gen, bool traceless = false) {
    std::vector<ExactOperand> ops;
    for (int j = 0; j < word.size(); ++j)
        ops.push_back({word[j], random_exact_matrix(static_cast<std::size_t>(ipow(n, assignment.leg_count(word[j]))),
                                                    gen, traceless)});
    return ops;
}

}  // namespace oracle
