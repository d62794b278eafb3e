#include "epsfree/weingarten.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>

#include "epsfree/error.hpp"

namespace epsfree {

namespace {

void check_dimension(int k, std::int64_t dimension) {
    if (k < 0) throw ValidationError("Weingarten order must be non-negative");
    if (dimension < 1) throw ValidationError("Weingarten dimension must be positive");
    if (dimension < k)
        throw ValidationError("Weingarten function needs N >= k (got N=" + std::to_string(dimension) +
                              ", k=" + std::to_string(k) + ")");
}

std::vector<mpz_class> powers_of(std::int64_t base, int max_exponent) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(max_exponent) + 1);
    for (int e = 0; e <= max_exponent; ++e) out.push_back(integer_power(base, e));
    return out;
}

/// Solves the quotient system sum_l C[m][l] w_l = [m == identity type].
std::map<CycleType, Rational> solve_class_system(const std::vector<CycleType>& types,
                                                 const std::vector<std::vector<Rational>>& coefficients,
                                                 const CycleType& identity_type) {
    std::vector<Rational> rhs(types.size(), Rational(0));
    for (std::size_t m = 0; m < types.size(); ++m)
        if (types[m] == identity_type) rhs[m] = 1;
    const auto solution = exact_solve(coefficients, rhs);
    std::map<CycleType, Rational> out;
    for (std::size_t l = 0; l < types.size(); ++l) out.emplace(types[l], solution[l]);
    return out;
}

CycleType identity_type(int k) { return CycleType(std::vector<int>(static_cast<std::size_t>(k), 1)); }

std::unique_ptr<WgTable> build_unitary(int k, std::int64_t dimension) {
    auto table = std::make_unique<WgTable>();
    table->k = k;
    table->dimension = dimension;
    if (k == 0) {
        table->values.emplace(CycleType{}, Rational(1));
        return table;
    }
    const auto types = integer_partitions(k);
    std::map<CycleType, std::size_t> type_index;
    for (std::size_t i = 0; i < types.size(); ++i) type_index.emplace(types[i], i);

    // One representative per class (rows); all of S_k for the columns.
    const auto perms = all_permutations(k);
    std::vector<const Permutation*> representative(types.size(), nullptr);
    std::vector<std::size_t> perm_type(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i) {
        perm_type[i] = type_index.at(perms[i].cycle_type());
        if (!representative[perm_type[i]]) representative[perm_type[i]] = &perms[i];
    }
    // counts[m][l][c] = #{t in class l : #(s_m t^-1) = c}
    const std::size_t p = types.size();
    std::vector<std::vector<std::vector<std::int64_t>>> counts(
        p, std::vector<std::vector<std::int64_t>>(p, std::vector<std::int64_t>(static_cast<std::size_t>(k) + 1, 0)));
    for (std::size_t m = 0; m < p; ++m) {
        for (std::size_t t = 0; t < perms.size(); ++t) {
            const int c = compose(*representative[m], perms[t].inverse()).cycle_count();
            ++counts[m][perm_type[t]][static_cast<std::size_t>(c)];
        }
    }
    const auto pw = powers_of(dimension, k);
    std::vector<std::vector<Rational>> coefficients(p, std::vector<Rational>(p, Rational(0)));
    for (std::size_t m = 0; m < p; ++m)
        for (std::size_t l = 0; l < p; ++l) {
            mpz_class sum = 0;
            for (int c = 0; c <= k; ++c) sum += pw[static_cast<std::size_t>(c)] * counts[m][l][static_cast<std::size_t>(c)];
            coefficients[m][l] = Rational(sum);
        }
    table->values = solve_class_system(types, coefficients, identity_type(k));
    return table;
}

std::unique_ptr<OrthWgTable> build_orthogonal(int k, std::int64_t dimension) {
    auto table = std::make_unique<OrthWgTable>();
    table->k = k;
    table->dimension = dimension;
    if (k == 0) {
        table->by_type.emplace(CycleType{}, Rational(1));
        return table;
    }
    const auto types = integer_partitions(k);
    std::map<CycleType, std::size_t> type_index;
    for (std::size_t i = 0; i < types.size(); ++i) type_index.emplace(types[i], i);

    const auto pairings = enumerate_pairings(k);
    // enumerate_pairings starts with {(0,1),(2,3),...}.
    const Pairing& base = pairings.front();
    std::vector<const Pairing*> representative(types.size(), nullptr);
    std::vector<std::size_t> pairing_type(pairings.size());
    for (std::size_t i = 0; i < pairings.size(); ++i) {
        pairing_type[i] = type_index.at(coset_type(pairings[i], base));
        if (!representative[pairing_type[i]]) representative[pairing_type[i]] = &pairings[i];
    }
    const std::size_t p = types.size();
    std::vector<std::vector<std::vector<std::int64_t>>> counts(
        p, std::vector<std::vector<std::int64_t>>(p, std::vector<std::int64_t>(static_cast<std::size_t>(k) + 1, 0)));
    for (std::size_t m = 0; m < p; ++m)
        for (std::size_t q = 0; q < pairings.size(); ++q)
            ++counts[m][pairing_type[q]][static_cast<std::size_t>(loop_count(*representative[m], pairings[q]))];
    const auto pw = powers_of(dimension, k);
    std::vector<std::vector<Rational>> coefficients(p, std::vector<Rational>(p, Rational(0)));
    for (std::size_t m = 0; m < p; ++m)
        for (std::size_t l = 0; l < p; ++l) {
            mpz_class sum = 0;
            for (int c = 0; c <= k; ++c) sum += pw[static_cast<std::size_t>(c)] * counts[m][l][static_cast<std::size_t>(c)];
            coefficients[m][l] = Rational(sum);
        }
    table->by_type = solve_class_system(types, coefficients, identity_type(k));
    return table;
}

template <typename Table>
struct TableCache {
    std::mutex mutex;
    std::map<std::pair<int, std::int64_t>, std::unique_ptr<Table>> tables;
};

}  // namespace

const Rational& WgTable::operator()(const CycleType& type) const {
    auto it = values.find(type);
    if (it == values.end()) throw ValidationError("cycle type " + type.to_string() + " is not of order " + std::to_string(k));
    return it->second;
}

const WgTable& unitary_wg_table(int k, std::int64_t dimension, bool allow_large) {
    check_dimension(k, dimension);
    if (k > kDefaultMaxUnitaryOrder && !allow_large)
        throw ResourceError("unitary Weingarten order " + std::to_string(k) + " exceeds the default bound " +
                            std::to_string(kDefaultMaxUnitaryOrder) + " (pass allow_large to override)");
    static TableCache<WgTable> cache;
    std::lock_guard lock(cache.mutex);
    auto& slot = cache.tables[{k, dimension}];
    if (!slot) slot = build_unitary(k, dimension);
    return *slot;
}

Rational unitary_wg(const CycleType& type, std::int64_t dimension, bool allow_large) {
    return unitary_wg_table(type.degree(), dimension, allow_large)(type);
}

Rational unitary_wg(const Permutation& p, std::int64_t dimension, bool allow_large) {
    return unitary_wg(p.cycle_type(), dimension, allow_large);
}

std::vector<std::vector<Rational>> unitary_gram_matrix(int k, std::int64_t dimension) {
    const auto perms = all_permutations(k);
    const auto pw = powers_of(dimension, k);
    std::vector<std::vector<Rational>> g(perms.size(), std::vector<Rational>(perms.size()));
    for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j)
            g[i][j] = Rational(pw[static_cast<std::size_t>(compose(perms[i], perms[j].inverse()).cycle_count())]);
    return g;
}

std::int64_t catalan(int n) {
    if (n < 0) throw ValidationError("catalan: negative index");
    if (n > 33) throw ResourceError("catalan: index too large for 64-bit result");
    std::int64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

std::int64_t mobius_mu(const CycleType& type) {
    std::int64_t mu = 1;
    for (int length : type.parts()) {
        const std::int64_t factor = catalan(length - 1);
        mu *= (length % 2 == 1) ? factor : -factor;
    }
    return mu;
}

Rational tilde_wg(const Permutation& p, const Word& word, const LegAssignment& assignment, std::int64_t n,
                  bool allow_large) {
    if (p.size() != word.size()) throw ValidationError("tilde_wg: permutation and word sizes differ");
    if (word.max_label() >= assignment.num_families())
        throw ValidationError("tilde_wg: word label has no leg set");
    Rational product = 1;
    for (int family : word.families()) {
        const OrderedSubset block(word.block_of(family));
        for (int x : block.elements())
            if (word[p(x)] != family) throw ValidationError("tilde_wg: permutation does not stabilize the word");
        const auto local = restrict(p, block).local;
        const mpz_class dim = integer_power(n, assignment.leg_count(family));
        if (dim > std::numeric_limits<long>::max()) throw ResourceError("tilde_wg: local dimension overflows");
        const auto d = static_cast<std::int64_t>(dim.get_si());
        if (d < block.size())
            throw ValidationError("tilde_wg: local dimension N^#K = " + std::to_string(d) + " below block size " +
                                  std::to_string(block.size()));
        product *= unitary_wg(local.cycle_type(), d, allow_large);
    }
    return product;
}

Pairing::Pairing(std::vector<int> partner) : partner_(std::move(partner)) {
    const int n = size();
    if (n % 2 != 0) throw ValidationError("a pairing needs an even number of points");
    for (int x = 0; x < n; ++x) {
        const int y = partner_[static_cast<std::size_t>(x)];
        if (y < 0 || y >= n || y == x || partner_[static_cast<std::size_t>(y)] != x)
            throw ValidationError("pairing must be a fixed-point-free involution");
    }
}

std::vector<std::pair<int, int>> Pairing::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < size(); ++x)
        if (x < partner(x)) out.emplace_back(x, partner(x));
    return out;
}

std::string Pairing::to_string() const {
    std::ostringstream out;
    for (const auto& [a, b] : pairs()) out << '(' << a + 1 << ' ' << b + 1 << ')';
    return out.str();
}

namespace {

void pairings_rec(std::vector<int>& partner, std::vector<Pairing>& out) {
    const auto first = std::find(partner.begin(), partner.end(), -1);
    if (first == partner.end()) {
        out.emplace_back(partner);
        return;
    }
    const int a = static_cast<int>(first - partner.begin());
    for (int b = a + 1; b < static_cast<int>(partner.size()); ++b) {
        if (partner[static_cast<std::size_t>(b)] != -1) continue;
        partner[static_cast<std::size_t>(a)] = b;
        partner[static_cast<std::size_t>(b)] = a;
        pairings_rec(partner, out);
        partner[static_cast<std::size_t>(a)] = -1;
        partner[static_cast<std::size_t>(b)] = -1;
    }
}

std::vector<int> loop_sizes(const Pairing& p, const Pairing& q) {
    if (p.size() != q.size()) throw ValidationError("pairings of different sizes");
    std::vector<bool> seen(static_cast<std::size_t>(p.size()), false);
    std::vector<int> sizes;
    for (int start = 0; start < p.size(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        int points = 0;
        int x = start;
        do {
            const int y = p.partner(x);
            seen[static_cast<std::size_t>(x)] = true;
            seen[static_cast<std::size_t>(y)] = true;
            points += 2;
            x = q.partner(y);
        } while (x != start);
        sizes.push_back(points / 2);
    }
    return sizes;
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int k) {
    if (k < 0) throw ValidationError("enumerate_pairings: negative order");
    std::vector<int> partner(static_cast<std::size_t>(2 * k), -1);
    std::vector<Pairing> out;
    pairings_rec(partner, out);
    return out;
}

int loop_count(const Pairing& p, const Pairing& q) { return static_cast<int>(loop_sizes(p, q).size()); }

CycleType coset_type(const Pairing& p, const Pairing& q) { return CycleType(loop_sizes(p, q)); }

Rational OrthWgTable::operator()(const Pairing& p, const Pairing& q) const {
    if (p.order() != k || q.order() != k) throw ValidationError("pairing order does not match the table");
    return by_type.at(coset_type(p, q));
}

const OrthWgTable& orthogonal_wg_table(int k, std::int64_t dimension, bool allow_large) {
    check_dimension(k, dimension);
    if (k > kDefaultMaxOrthogonalOrder && !allow_large)
        throw ResourceError("orthogonal Weingarten order " + std::to_string(k) + " exceeds the default bound " +
                            std::to_string(kDefaultMaxOrthogonalOrder) + " (pass allow_large to override)");
    static TableCache<OrthWgTable> cache;
    std::lock_guard lock(cache.mutex);
    auto& slot = cache.tables[{k, dimension}];
    if (!slot) slot = build_orthogonal(k, dimension);
    return *slot;
}

Rational orthogonal_wg(const Pairing& p, const Pairing& q, std::int64_t dimension, bool allow_large) {
    return orthogonal_wg_table(p.order(), dimension, allow_large)(p, q);
}

std::vector<std::vector<Rational>> orthogonal_gram_matrix(int k, std::int64_t dimension) {
    const auto pairings = enumerate_pairings(k);
    const auto pw = powers_of(dimension, k);
    std::vector<std::vector<Rational>> g(pairings.size(), std::vector<Rational>(pairings.size()));
    for (std::size_t i = 0; i < pairings.size(); ++i)
        for (std::size_t j = 0; j < pairings.size(); ++j)
            g[i][j] = Rational(pw[static_cast<std::size_t>(loop_count(pairings[i], pairings[j]))]);
    return g;
}

}  // namespace epsfree
