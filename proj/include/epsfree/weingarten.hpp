#pragma once

// Exact unitary and orthogonal Weingarten functions at integer dimension.
//
// Both are obtained by exact rational inversion of a Gram matrix. Because the
// unitary Wg is a class function and the orthogonal Wg depends only on the
// coset type of a pair of pairings, the Gram systems are solved on the
// p(k) x p(k) quotient by cycle type / coset type; the full Gram matrices
// are still available for verification.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/exact.hpp"
#include "epsfree/symgroup.hpp"

namespace epsfree {

inline constexpr int kDefaultMaxUnitaryOrder = 6;
inline constexpr int kDefaultMaxOrthogonalOrder = 5;

/// Wg(., N) on S_k, keyed by cycle type. Defined for N >= k.
struct WgTable {
    int k = 0;
    std::int64_t dimension = 0;
    std::map<CycleType, Rational> values;

    const Rational& operator()(const CycleType& type) const;
    const Rational& operator()(const Permutation& p) const { return (*this)(p.cycle_type()); }
};

/// Cached table for (k, N). Throws ValidationError if N < k, ResourceError
/// if k exceeds kDefaultMaxUnitaryOrder without `allow_large`.
const WgTable& unitary_wg_table(int k, std::int64_t dimension, bool allow_large = false);

Rational unitary_wg(const CycleType& type, std::int64_t dimension, bool allow_large = false);
Rational unitary_wg(const Permutation& p, std::int64_t dimension, bool allow_large = false);

/// G(s, t) = N^{#(s t^-1)} over S_k, rows/columns in all_permutations(k) order.
std::vector<std::vector<Rational>> unitary_gram_matrix(int k, std::int64_t dimension);

/// Leading coefficient mu with Wg(s, N) N^{k+|s|} -> mu:
/// prod over cycles of length l of (-1)^{l-1} Catalan(l-1).
std::int64_t mobius_mu(const CycleType& type);

std::int64_t catalan(int n);

/// prod over families i of Wg(p restricted to B_i, N^{#K_i}).
/// Throws ValidationError if p does not preserve the word's blocks or a
/// local dimension is below its block size.
Rational tilde_wg(const Permutation& p, const Word& word, const LegAssignment& assignment, std::int64_t n,
                  bool allow_large = false);

/// Perfect matching of {0..2k-1}; partner(x) is the element paired with x.
class Pairing {
public:
    Pairing() = default;
    explicit Pairing(std::vector<int> partner);

    int size() const { return static_cast<int>(partner_.size()); }
    int order() const { return size() / 2; }
    int partner(int x) const { return partner_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& partners() const { return partner_; }
    /// The fixed-point-free involution x -> partner(x).
    Permutation as_permutation() const { return Permutation(partner_); }
    /// Pairs (a, b) with a < b, sorted by a.
    std::vector<std::pair<int, int>> pairs() const;
    std::string to_string() const;

    auto operator<=>(const Pairing&) const = default;

private:
    std::vector<int> partner_;
};

/// All (2k-1)!! pairings of {0..2k-1}; the smallest free point is matched
/// first, partners in increasing order.
std::vector<Pairing> enumerate_pairings(int k);

/// Number of loops formed by superimposing p and q (= #(p q) / 2).
int loop_count(const Pairing& p, const Pairing& q);

/// Half-lengths of the loops of p and q, a partition of k.
CycleType coset_type(const Pairing& p, const Pairing& q);

/// Orthogonal Wg on P_2k x P_2k, stored by coset type.
struct OrthWgTable {
    int k = 0;
    std::int64_t dimension = 0;
    std::map<CycleType, Rational> by_type;

    Rational operator()(const Pairing& p, const Pairing& q) const;
};

const OrthWgTable& orthogonal_wg_table(int k, std::int64_t dimension, bool allow_large = false);

Rational orthogonal_wg(const Pairing& p, const Pairing& q, std::int64_t dimension, bool allow_large = false);

/// G(p, q) = N^{loops(p, q)}, rows/columns in enumerate_pairings(k) order.
std::vector<std::vector<Rational>> orthogonal_gram_matrix(int k, std::int64_t dimension);

}  // namespace epsfree
