#pragma once

// Permutations of {0..k-1}, set partitions, block stabilizers and
// non-crossing tests.
//
// All C++ APIs are 0-based. Textual forms (to_string, parse, JSON) are
// 1-based to match the usual cycle notation: "(1 5)(4 7)".
//
// Composition convention: compose(p, q)(x) = p(q(x)). Everything in the
// library that multiplies permutations goes through compose().

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace epsfree {

/// Multiset of cycle lengths, stored in non-increasing order.
class CycleType {
public:
    CycleType() = default;
    explicit CycleType(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    /// Sum of the parts, i.e. the degree k.
    int degree() const;
    /// Minimal number of transpositions, sum(part - 1).
    int length() const;
    std::string to_string() const;

    auto operator<=>(const CycleType&) const = default;

private:
    std::vector<int> parts_;
};

/// All partitions of k, in reverse lexicographic order starting at [k].
std::vector<CycleType> integer_partitions(int k);

class Permutation {
public:
    /// The empty permutation (degree 0).
    Permutation() = default;
    /// images[x] = p(x). Throws ValidationError unless a bijection of {0..k-1}.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int k);
    /// 0-based cycles; unlisted points are fixed.
    static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles);
    /// 1-based cycle notation, e.g. "(1 5)(4 7)" or "()" for the identity.
    static Permutation parse(std::string_view text, int k);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;

    /// Cycles ordered by their minimum element; each cycle starts at its
    /// minimum and follows x -> p(x). Fixed points are included.
    std::vector<std::vector<int>> cycles() const;
    /// #(p): number of cycles, fixed points included.
    int cycle_count() const;
    /// |p| = k - #(p).
    int length() const { return size() - cycle_count(); }
    CycleType cycle_type() const;
    std::vector<int> fixed_points() const;
    bool is_identity() const;

    /// 1-based cycle notation without fixed points; "()" for the identity.
    std::string to_string() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// (p o q)(x) = p(q(x)). Throws ValidationError on a size mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// Z = (0 1 ... k-1). Throws ValidationError for k < 1.
Permutation full_cycle(int k);

/// Every permutation of {0..k-1} in lexicographic order of image arrays.
std::vector<Permutation> all_permutations(int k);

/// Strictly increasing subset of {0..k-1}. Position i of the subset is the
/// i-th smallest element, which is the order restricted permutations use.
class OrderedSubset {
public:
    OrderedSubset() = default;
    /// Sorts and de-duplicates are NOT performed; throws unless strictly increasing.
    explicit OrderedSubset(std::vector<int> elements);

    const std::vector<int>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    bool empty() const { return elements_.empty(); }
    bool contains(int x) const;
    /// Position of x inside the subset, or -1.
    int position_of(int x) const;
    std::string to_string() const;

    auto operator<=>(const OrderedSubset&) const = default;

private:
    std::vector<int> elements_;
};

/// Cycle on {0..k-1} sending each element of J to the next one in increasing
/// cyclic order and fixing everything else. Empty J gives the identity.
Permutation induced_full_cycle(const OrderedSubset& J, int k);

/// A permutation of J stored on J's positions, with the back-map to ambient
/// labels kept in `support`.
struct RestrictedPermutation {
    Permutation local;
    OrderedSubset support;
    int ambient_size = 0;

    /// #_{|J|}: cycles counted inside J only (0 when J is empty).
    int local_cycle_count() const { return local.cycle_count(); }
    /// The same permutation on {0..k-1}, constant off J.
    Permutation extended() const;
};

/// Restriction of p to an invariant subset J. Throws ValidationError unless p(J) = J.
RestrictedPermutation restrict(const Permutation& p, const OrderedSubset& J);

/// Inverse of restrict(): lift a permutation of J's positions to {0..k-1}.
Permutation extend(const Permutation& local, const OrderedSubset& J, int k);

using SetPartition = std::vector<std::vector<int>>;

/// Blocks of the cycle decomposition of p (each block sorted, blocks ordered by minimum).
SetPartition cycle_partition(const Permutation& p);

/// No a < b < c < d with a, c in one block and b, d in another.
bool is_noncrossing(const SetPartition& blocks);
/// Non-crossing test for the cycle partition of p on the linear order 0..k-1.
bool is_noncrossing(const Permutation& p);

/// All permutations preserving every block of `blocks` (a partition of
/// {0..k-1}). Deterministic order: per-block lexicographic odometer with the
/// last block varying fastest. Throws ResourceError beyond `max_size` elements.
std::vector<Permutation> enumerate_block_stabilizer(const SetPartition& blocks,
                                                    std::size_t max_size = 5'000'000);

/// prod_B (#B)!, saturating at SIZE_MAX.
std::size_t block_stabilizer_size(const SetPartition& blocks);

}  // namespace epsfree
