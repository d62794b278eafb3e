#pragma once

// Expected traces of words in Haar-conjugated tensor-leg operands:
//   exact_moment      finite-N Weingarten sum over pairs of word stabilizer elements
//   asymptotic_moment large-N limit, geodesic (non-crossing) pairs only
//   fixed_point_verify exhaustive check that block-wise non-crossing stabilizer
//                      elements of an epsilon-reduced word have a fixed point
//
// The operand scalar is either GaussRational (exact, bit-reproducible) or
// std::complex<double> (floating point; values carry rounding error).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/exact.hpp"
#include "epsfree/matrix.hpp"
#include "epsfree/symgroup.hpp"

namespace epsfree {

/// Which cyclic order a stabilizer element imposes on the trace factors.
///   sigma:         tr(A_j A_{s(j)} A_{s^2(j)} ...)
///   sigma_inverse: tr(A_j A_{s^-1(j)} ...)
enum class TraceConvention { sigma, sigma_inverse };

/// Convention in force. Pinned by the index-sum and Monte Carlo cross-checks
/// in the test suite; switching it makes those tests fail.
inline constexpr TraceConvention kTraceConvention = TraceConvention::sigma;

std::string to_string(TraceConvention convention);

/// A family's matrix on its legs K_i, of dimension N^{#K_i}.
template <typename T>
struct Operand {
    int family = 0;
    Matrix<T> local;
};

using ExactOperand = Operand<GaussRational>;
using FloatOperand = Operand<Complex>;

/// Throws ValidationError unless operands match the word family-by-family and
/// every local matrix is square of dimension N^{#K_i}.
template <typename T>
void validate_operands(const Word& word, const LegAssignment& assignment, std::span<const Operand<T>> operands,
                       std::int64_t n);

/// prod over cycles of p of tr(product of local matrices along the cycle).
/// Cycles start at their minimum and follow x -> p(x). Throws if a cycle
/// mixes families.
template <typename T>
T tr_sigma(const Permutation& p, std::span<const Operand<T>> operands);

enum class MomentMode { exact, floating, asymptotic, monte_carlo };
std::string to_string(MomentMode mode);

template <typename T>
struct MomentReport {
    T value{};
    MomentMode mode = MomentMode::exact;
    std::optional<std::int64_t> n;
    std::size_t stabilizer_size = 0;
    std::size_t terms = 0;           // pairs (s, t) summed over
    std::size_t geodesic_terms = 0;  // pairs with zero N-exponent deficit
    TraceConvention convention = kTraceConvention;
};

struct ExactOptions {
    TraceConvention convention = kTraceConvention;
    bool allow_large = false;  // forwarded to the Weingarten order bound
};

/// E tr(U_1 A_1 U_1* ... U_k A_k U_k*) with one independent Haar unitary per
/// family acting on its legs:
///   sum_{s,t} tildeWg(s^-1 t, N) tr_s(A) prod_s N^{#_k(Z^-1 t_s) + #_{k_s}(s_s) - 1}.
template <typename T>
MomentReport<T> exact_moment(const Word& word, const LegAssignment& assignment,
                             std::span<const Operand<T>> operands, std::int64_t n, const ExactOptions& options = {});

/// Limit distribution of each family: evaluates the limiting normalized trace
/// of the product of the operands at `positions` (all in one family), in order.
template <typename T>
struct LimitFunctional {
    std::string name;
    std::function<T(int family, std::span<const int> positions)> evaluate;
};

/// Fixed matrices: evaluate = tr of their product.
template <typename T>
LimitFunctional<T> deterministic_functional(std::vector<Operand<T>> operands);

/// Every family is one standard semicircular variable: Catalan(l/2) for even l, else 0.
template <typename T>
LimitFunctional<T> semicircular_functional();

/// Position j carries u_{i_j}^{powers[j]} for a Haar unitary u per family:
/// 1 if the exponents along the cycle sum to zero, else 0.
template <typename T>
LimitFunctional<T> haar_unitary_functional(std::vector<int> powers);

/// Large-N limit: sum over geodesic pairs of mu(s^-1 t) phi_s. Every
/// geodesic pair is checked to be non-crossing on every string (throws
/// std::logic_error otherwise).
template <typename T>
MomentReport<T> asymptotic_moment(const Word& word, const LegAssignment& assignment, const LimitFunctional<T>& phi,
                                  TraceConvention convention = kTraceConvention);

/// Geodesic condition on string s, in S_{k_s}: |Z_s| = |s_s| + |s_s^-1 t_s| + |t_s^-1 Z_s|.
bool is_geodesic(const RestrictedPermutation& sigma_s, const RestrictedPermutation& tau_s);

/// True iff the word is epsilon-reduced, i.e. the limit vanishes for centered operands.
bool vanishing_predicate(const Word& word, const EpsilonMatrix& eps);

struct FixedPointResult {
    bool ok = true;
    std::optional<Permutation> counterexample;
    std::size_t stabilizer_size = 0;
    std::size_t noncrossing_elements = 0;
};

/// Requires word in I^eps for eps = epsilon_of(assignment) (ValidationError otherwise).
FixedPointResult fixed_point_verify(const Word& word, const LegAssignment& assignment);

}  // namespace epsfree
