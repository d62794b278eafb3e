#include "epsfree/moments.hpp"

#include <map>
#include <memory>
#include <stdexcept>

#include "epsfree/error.hpp"
#include "epsfree/weingarten.hpp"

namespace epsfree {

std::string to_string(TraceConvention convention) {
    return convention == TraceConvention::sigma ? "tr_sigma" : "tr_sigma_inverse";
}

std::string to_string(MomentMode mode) {
    switch (mode) {
        case MomentMode::exact: return "exact";
        case MomentMode::floating: return "float";
        case MomentMode::asymptotic: return "asymptotic";
        case MomentMode::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

template <typename T>
void validate_operands(const Word& word, const LegAssignment& assignment, std::span<const Operand<T>> operands,
                       std::int64_t n) {
    if (n < 1) throw ValidationError("N must be positive");
    if (static_cast<int>(operands.size()) != word.size())
        throw ValidationError("expected " + std::to_string(word.size()) + " operands, got " +
                              std::to_string(operands.size()));
    if (word.max_label() >= assignment.num_families())
        throw ValidationError("word label has no leg set in the assignment");
    for (int j = 0; j < word.size(); ++j) {
        const auto& op = operands[static_cast<std::size_t>(j)];
        if (op.family != word[j])
            throw ValidationError("operand " + std::to_string(j + 1) + " belongs to family " +
                                  std::to_string(op.family + 1) + " but the word has " + std::to_string(word[j] + 1));
        const mpz_class dim = integer_power(n, assignment.leg_count(op.family));
        if (!op.local.square() || mpz_class(static_cast<unsigned long>(op.local.rows())) != dim)
            throw ValidationError("operand " + std::to_string(j + 1) + " must be " + dim.get_str() + "x" +
                                  dim.get_str());
    }
}

namespace {

template <typename T>
T cycle_trace(std::span<const Operand<T>> operands, const std::vector<int>& order) {
    const auto& first = operands[static_cast<std::size_t>(order.front())].local;
    if (order.size() == 1) return normalized_trace(first);
    Matrix<T> prefix = first;
    for (std::size_t i = 1; i + 1 < order.size(); ++i) prefix = prefix * operands[static_cast<std::size_t>(order[i])].local;
    return scale_by_inverse(trace_of_product(prefix, operands[static_cast<std::size_t>(order.back())].local),
                            first.rows());
}

Permutation oriented(const Permutation& p, TraceConvention convention) {
    return convention == TraceConvention::sigma ? p : p.inverse();
}

std::map<Permutation, Rational>::const_iterator cached_tilde_wg(std::map<Permutation, Rational>& cache,
                                                                 const Permutation& p, const Word& word,
                                                                 const LegAssignment& assignment, std::int64_t n,
                                                                 bool allow_large) {
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, tilde_wg(p, word, assignment, n, allow_large)).first;
    return it;
}

}  // namespace

template <typename T>
T tr_sigma(const Permutation& p, std::span<const Operand<T>> operands) {
    if (static_cast<int>(operands.size()) != p.size())
        throw ValidationError("tr_sigma: permutation size differs from the number of operands");
    T product(1);
    for (const auto& cycle : p.cycles()) {
        const int family = operands[static_cast<std::size_t>(cycle.front())].family;
        for (int x : cycle)
            if (operands[static_cast<std::size_t>(x)].family != family)
                throw ValidationError("tr_sigma: cycle " + p.to_string() + " mixes families");
        product *= cycle_trace(operands, cycle);
    }
    return product;
}

template <typename T>
MomentReport<T> exact_moment(const Word& word, const LegAssignment& assignment,
                             std::span<const Operand<T>> operands, std::int64_t n, const ExactOptions& options) {
    validate_operands(word, assignment, operands, n);
    MomentReport<T> report;
    report.mode = ScalarTraits<T>::exact ? MomentMode::exact : MomentMode::floating;
    report.n = n;
    report.convention = options.convention;
    const int k = word.size();
    if (k == 0) {
        report.value = T(1);
        report.stabilizer_size = 1;
        report.terms = 1;
        report.geodesic_terms = 1;
        return report;
    }

    const auto stabilizer = enumerate_block_stabilizer(word.blocks());
    const auto strings = j_sets(word, assignment);
    const Permutation z_inverse = full_cycle(k).inverse();

    // Per sigma: trace factor and sum_s #_{k_s}(sigma_s).
    std::vector<T> traces;
    std::vector<int> sigma_exponent;
    // Per tau: sum_s #_k(Z^-1 tau_s).
    std::vector<int> tau_exponent;
    std::vector<std::vector<RestrictedPermutation>> restricted(stabilizer.size());
    traces.reserve(stabilizer.size());
    for (std::size_t a = 0; a < stabilizer.size(); ++a) {
        const auto& p = stabilizer[a];
        traces.push_back(tr_sigma(oriented(p, options.convention), operands));
        int se = 0;
        int te = 0;
        for (const auto& J : strings) {
            restricted[a].push_back(restrict(p, J));
            se += restricted[a].back().local_cycle_count();
            te += compose(z_inverse, restricted[a].back().extended()).cycle_count();
        }
        sigma_exponent.push_back(se);
        tau_exponent.push_back(te);
    }
    const int s_count = assignment.num_strings();

    std::map<Permutation, Rational> wg_cache;
    T total(0);
    for (std::size_t a = 0; a < stabilizer.size(); ++a) {
        const Permutation sigma_inv = stabilizer[a].inverse();
        Rational weight_sum = 0;
        for (std::size_t b = 0; b < stabilizer.size(); ++b) {
            bool geodesic = true;
            for (std::size_t s = 0; s < strings.size() && geodesic; ++s)
                geodesic = is_geodesic(restricted[a][s], restricted[b][s]);
            if (geodesic) ++report.geodesic_terms;
            const auto wg = cached_tilde_wg(wg_cache, compose(sigma_inv, stabilizer[b]), word, assignment, n,
                                            options.allow_large);
            if (sgn(wg->second) == 0) continue;
            const int exponent = tau_exponent[b] + sigma_exponent[a] - s_count;
            weight_sum += wg->second * rational_power(n, exponent);
        }
        if (sgn(weight_sum) != 0) total += traces[a] * ScalarTraits<T>::from_rational(weight_sum);
    }
    report.value = total;
    report.stabilizer_size = stabilizer.size();
    report.terms = stabilizer.size() * stabilizer.size();
    return report;
}

bool is_geodesic(const RestrictedPermutation& sigma_s, const RestrictedPermutation& tau_s) {
    const int m = sigma_s.local.size();
    if (m == 0) return true;
    const Permutation z = full_cycle(m);
    const int lhs = z.length();
    const int rhs = sigma_s.local.length() + compose(sigma_s.local.inverse(), tau_s.local).length() +
                    compose(tau_s.local.inverse(), z).length();
    return lhs == rhs;
}

template <typename T>
MomentReport<T> asymptotic_moment(const Word& word, const LegAssignment& assignment, const LimitFunctional<T>& phi,
                                  TraceConvention convention) {
    MomentReport<T> report;
    report.mode = MomentMode::asymptotic;
    report.convention = convention;
    if (word.empty()) {
        report.value = T(1);
        report.stabilizer_size = report.terms = report.geodesic_terms = 1;
        return report;
    }
    const auto stabilizer = enumerate_block_stabilizer(word.blocks());
    const auto strings = j_sets(word, assignment);

    std::vector<std::vector<RestrictedPermutation>> restricted(stabilizer.size());
    std::vector<T> phi_values;
    for (std::size_t a = 0; a < stabilizer.size(); ++a) {
        for (const auto& J : strings) restricted[a].push_back(restrict(stabilizer[a], J));
        T value(1);
        for (const auto& cycle : oriented(stabilizer[a], convention).cycles())
            value *= phi.evaluate(word[cycle.front()], std::span<const int>(cycle));
        phi_values.push_back(value);
    }

    T total(0);
    for (std::size_t a = 0; a < stabilizer.size(); ++a) {
        for (std::size_t b = 0; b < stabilizer.size(); ++b) {
            bool geodesic = true;
            for (std::size_t s = 0; s < strings.size() && geodesic; ++s)
                geodesic = is_geodesic(restricted[a][s], restricted[b][s]);
            if (!geodesic) continue;
            ++report.geodesic_terms;
            for (std::size_t s = 0; s < strings.size(); ++s) {
                if (!is_noncrossing(restricted[a][s].local) || !is_noncrossing(restricted[b][s].local))
                    throw std::logic_error("geodesic pair with a crossing restriction on string " +
                                           assignment.strings()[s]);
            }
            const auto mu = mobius_mu(compose(stabilizer[a].inverse(), stabilizer[b]).cycle_type());
            total += phi_values[a] * ScalarTraits<T>::from_rational(Rational(static_cast<long>(mu)));
        }
    }
    report.value = total;
    report.stabilizer_size = stabilizer.size();
    report.terms = stabilizer.size() * stabilizer.size();
    return report;
}

template <typename T>
LimitFunctional<T> deterministic_functional(std::vector<Operand<T>> operands) {
    auto shared = std::make_shared<const std::vector<Operand<T>>>(std::move(operands));
    return {"deterministic", [shared](int family, std::span<const int> positions) -> T {
                const std::span<const Operand<T>> ops(*shared);
                std::vector<int> order(positions.begin(), positions.end());
                if (order.empty()) return T(1);
                for (int x : order) {
                    if (x < 0 || x >= static_cast<int>(ops.size()))
                        throw ValidationError("deterministic functional: position out of range");
                    if (ops[static_cast<std::size_t>(x)].family != family)
                        throw ValidationError("deterministic functional: operand family mismatch");
                }
                return cycle_trace(ops, order);
            }};
}

template <typename T>
LimitFunctional<T> semicircular_functional() {
    return {"semicircular", [](int, std::span<const int> positions) -> T {
                const auto length = positions.size();
                if (length % 2 != 0) return T(0);
                return ScalarTraits<T>::from_rational(Rational(static_cast<long>(catalan(static_cast<int>(length / 2)))));
            }};
}

template <typename T>
LimitFunctional<T> haar_unitary_functional(std::vector<int> powers) {
    return {"haar_unitary", [powers = std::move(powers)](int, std::span<const int> positions) -> T {
                long total = 0;
                for (int x : positions) {
                    if (x < 0 || x >= static_cast<int>(powers.size()))
                        throw ValidationError("haar functional: position out of range");
                    total += powers[static_cast<std::size_t>(x)];
                }
                return total == 0 ? T(1) : T(0);
            }};
}

bool vanishing_predicate(const Word& word, const EpsilonMatrix& eps) { return word_in_I_eps(word, eps); }

FixedPointResult fixed_point_verify(const Word& word, const LegAssignment& assignment) {
    const EpsilonMatrix eps = epsilon_of(assignment);
    if (const auto witness = reduction_witness(word, eps))
        throw ValidationError("word is not epsilon-reduced: positions " + std::to_string(witness->first + 1) + " and " +
                              std::to_string(witness->second + 1) + " are not separated");
    FixedPointResult result;
    const auto stabilizer = enumerate_block_stabilizer(word.blocks());
    const auto strings = j_sets(word, assignment);
    result.stabilizer_size = stabilizer.size();
    for (const auto& sigma : stabilizer) {
        bool noncrossing = true;
        for (const auto& J : strings) {
            if (!is_noncrossing(restrict(sigma, J).local)) {
                noncrossing = false;
                break;
            }
        }
        if (!noncrossing) continue;
        ++result.noncrossing_elements;
        if (sigma.fixed_points().empty() && word.size() > 0) {
            result.ok = false;
            result.counterexample = sigma;
            return result;
        }
    }
    return result;
}

#define EPSFREE_INSTANTIATE(T)                                                                                  \
    template void validate_operands<T>(const Word&, const LegAssignment&, std::span<const Operand<T>>,         \
                                       std::int64_t);                                                          \
    template T tr_sigma<T>(const Permutation&, std::span<const Operand<T>>);                                  \
    template MomentReport<T> exact_moment<T>(const Word&, const LegAssignment&, std::span<const Operand<T>>,  \
                                             std::int64_t, const ExactOptions&);                              \
    template MomentReport<T> asymptotic_moment<T>(const Word&, const LegAssignment&, const LimitFunctional<T>&, \
                                                  TraceConvention);                                            \
    template LimitFunctional<T> deterministic_functional<T>(std::vector<Operand<T>>);                         \
    template LimitFunctional<T> semicircular_functional<T>();                                                 \
    template LimitFunctional<T> haar_unitary_functional<T>(std::vector<int>);

EPSFREE_INSTANTIATE(GaussRational)
EPSFREE_INSTANTIATE(Complex)

#undef EPSFREE_INSTANTIATE

}  // namespace epsfree
