#pragma once

// Monte Carlo oracle: Haar unitary/orthogonal and GUE sampling, tensor-leg
// embedding, and empirical expected normalized traces of words.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "epsfree/epsmodel.hpp"
#include "epsfree/moments.hpp"

namespace epsfree {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Counter-based stream derivation: substream(trial, stream) depends only on
/// (master_seed, trial, stream), never on scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t master_seed) : master_seed_(master_seed) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::mt19937_64 substream(std::uint64_t trial, std::uint64_t stream) const;

private:
    std::uint64_t master_seed_;
};

/// Haar unitary via QR of a complex Ginibre matrix, with R's diagonal made positive.
CMatrix haar_unitary(int dim, std::mt19937_64& gen);
/// Haar orthogonal via QR of a real Ginibre matrix, with R's diagonal made positive.
RMatrix haar_orthogonal(int dim, std::mt19937_64& gen);
/// GUE normalized so that E tr(X^2) = 1.
CMatrix gue(int dim, std::mt19937_64& gen);
/// GOE with off-diagonal variance 1/dim and diagonal variance 2/dim.
RMatrix goe(int dim, std::mt19937_64& gen);

/// Index bookkeeping for a leg set K inside the full space (C^N)^{ox S},
/// row-major over S in canonical order, local index row-major over K.
class LegLayout {
public:
    LegLayout(const std::vector<int>& legs, int num_strings, std::int64_t n);

    std::size_t full_dim() const { return full_dim_; }
    std::size_t local_dim() const { return local_offset_.size(); }
    std::size_t rest_dim() const { return rest_offset_.size(); }
    /// Full index of (local index a, complementary index b).
    std::size_t full_index(std::size_t a, std::size_t b) const { return local_offset_[a] + rest_offset_[b]; }
    /// Full indices of all local indices at complementary index b.
    const std::vector<Eigen::Index>& fibre(std::size_t b) const { return fibres_[b]; }

private:
    std::size_t full_dim_ = 1;
    std::vector<std::size_t> local_offset_;
    std::vector<std::size_t> rest_offset_;
    std::vector<std::vector<Eigen::Index>> fibres_;
};

/// Total tensor dimension N^{#S}; throws ResourceError on overflow.
std::size_t full_dimension(int num_strings, std::int64_t n);

/// local on legs K, identity elsewhere.
CMatrix embed(const CMatrix& local, const std::vector<int>& legs, int num_strings, std::int64_t n);
CMatrix embed(const CMatrix& local, int family, const LegAssignment& assignment, std::int64_t n);

/// embed(local) * m without materializing the embedded matrix.
CMatrix apply_on_legs(const CMatrix& local, const LegLayout& layout, const CMatrix& m);
/// Tr(embed(local) * m).
Complex trace_on_legs(const CMatrix& local, const LegLayout& layout, const CMatrix& m);

CMatrix to_eigen(const Matrix<Complex>& m);
Matrix<Complex> from_eigen(const CMatrix& m);

enum class HaarGroup { unitary, orthogonal };
std::string to_string(HaarGroup group);

/// exact: trace from the full product applied to the identity.
/// stochastic ("huge" mode): Hutchinson estimate from Gaussian probe vectors.
enum class TraceMode { exact, stochastic };
std::string to_string(TraceMode mode);

struct McOptions {
    int workers = 1;
    TraceMode trace = TraceMode::exact;
    int probes = 4;
    std::size_t dimension_cap = std::size_t{1} << 13;
    /// Above the cap: switch to stochastic mode instead of failing.
    bool allow_large = false;
};

struct McEstimate {
    Complex mean{};
    double std_error = 0.0;  // sample standard deviation / sqrt(trials)
    std::uint64_t trials = 0;
    TraceMode trace = TraceMode::exact;
};

/// Local matrices (one per word position) for a given trial.
using TrialSampler = std::function<std::vector<CMatrix>(std::uint64_t trial)>;

/// Mean and standard error of tr(embedded product along the word) over trials.
/// Trials run on `workers` threads; results are reduced in trial order.
McEstimate mc_estimate(const Word& word, const LegAssignment& assignment, std::int64_t n, std::uint64_t trials,
                       const Rng& rng, const TrialSampler& sampler, const McOptions& options = {});

/// Deterministic operands conjugated by one independent Haar matrix per family.
McEstimate mc_moment(const Word& word, const LegAssignment& assignment, std::span<const FloatOperand> operands,
                     std::int64_t n, std::uint64_t trials, const Rng& rng, HaarGroup group,
                     const McOptions& options = {});

/// One independent GUE matrix per family on its legs (repeated letters reuse it).
McEstimate mc_gue_moment(const Word& word, const LegAssignment& assignment, std::int64_t n, std::uint64_t trials,
                         const Rng& rng, const McOptions& options = {});

/// Mean and standard error of a sample sequence, in order.
McEstimate summarize(std::span<const Complex> samples);

}  // namespace epsfree
