#pragma once

// Cross-check campaign: the acceptance criteria run by the acceptance test
// binary and by `epsfree verify`. Also holds the fixed operand families and
// the worked example data both of them use.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/moments.hpp"

namespace epsfree::verify {

/// The 5 x 5 example epsilon (1-based pairs {1,2},{2,3},{3,4},{3,5} commute).
EpsilonMatrix example_epsilon();
/// (1,3,5,2,1,4,2,4) as 0-based labels.
Word example_word();
/// Model B with maximal cliques on example_epsilon().
LegAssignment example_assignment();

/// C + C^T for the cyclic shift C on C^d (traceless for d >= 2).
Matrix<GaussRational> shift_symmetric(std::size_t d);
/// Alternating +-1 diagonal, shifted to be traceless when d is odd.
Matrix<GaussRational> alternating_diagonal(std::size_t d);
/// Alternating +-1 diagonal with the last entry raised so that Tr = 1, i.e. tr = 1/d.
Matrix<GaussRational> nearly_centered_diagonal(std::size_t d);
/// a (x) I_m.
template <typename T>
Matrix<T> kron_identity(const Matrix<T>& a, std::size_t m);

/// Traceless norm-bounded operands for the example word at dimension N, one
/// pattern per family so that paired traces do not vanish.
/// With `singletons_centered = false` the two letters that occur once get
/// nearly_centered_diagonal (tr = 1/d) instead.
std::vector<ExactOperand> example_operands(std::int64_t n, bool singletons_centered = true);

/// Least-squares slope of log|y| against log x. nullopt if some y is zero.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Options {
    std::uint64_t seed = 20240611;
    int workers = 1;
    /// Restricts the exact-vs-Monte-Carlo cases to these N (each must be 2..4).
    std::vector<std::int64_t> ns;
    /// Overrides the exact-vs-Monte-Carlo trial count.
    std::optional<std::uint64_t> trials;
    /// Progress lines (one per sub-check) go here when set.
    std::function<void(const std::string&)> log;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const Options& options = {});
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const Options& options = {});

}  // namespace epsfree::verify
