#include "epsfree/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "epsfree/error.hpp"

namespace epsfree {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream id reserved for stochastic-trace probe vectors.
constexpr std::uint64_t kProbeStream = 0xFFFF'FFFF'0000'0001ULL;

void check_dim(int dim) {
    if (dim < 1) throw ValidationError("random matrix dimension must be >= 1");
}

CMatrix complex_ginibre(int dim, int cols, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix z(dim, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < dim; ++i) {
            const double re = normal(gen);
            const double im = normal(gen);
            z(i, j) = Complex(re, im);
        }
    return z;
}

}  // namespace

std::mt19937_64 Rng::substream(std::uint64_t trial, std::uint64_t stream) const {
    std::uint64_t h = splitmix64(master_seed_);
    h = splitmix64(h ^ splitmix64(trial));
    h = splitmix64(h ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
    return std::mt19937_64(h);
}

CMatrix haar_unitary(int dim, std::mt19937_64& gen) {
    check_dim(dim);
    const CMatrix z = complex_ginibre(dim, dim, gen);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    // Q R = Z is only unique up to a diagonal phase; fixing diag(R) > 0 makes Q Haar.
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0 ? d / mag : Complex(1.0);
    }
    return q;
}

RMatrix haar_orthogonal(int dim, std::mt19937_64& gen) {
    check_dim(dim);
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix z(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) z(i, j) = normal(gen);
    Eigen::HouseholderQR<RMatrix> qr(z);
    RMatrix q = qr.householderQ();
    const RMatrix& r = qr.matrixQR();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
}

CMatrix gue(int dim, std::mt19937_64& gen) {
    check_dim(dim);
    const double var = 1.0 / dim;
    std::normal_distribution<double> diag(0.0, std::sqrt(var));
    std::normal_distribution<double> off(0.0, std::sqrt(var / 2));
    CMatrix x(dim, dim);
    for (int i = 0; i < dim; ++i) {
        x(i, i) = Complex(diag(gen), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            const double re = off(gen);
            const double im = off(gen);
            x(i, j) = Complex(re, im);
            x(j, i) = std::conj(x(i, j));
        }
    }
    return x;
}

RMatrix goe(int dim, std::mt19937_64& gen) {
    check_dim(dim);
    const double var = 1.0 / dim;
    std::normal_distribution<double> diag(0.0, std::sqrt(2 * var));
    std::normal_distribution<double> off(0.0, std::sqrt(var));
    RMatrix x(dim, dim);
    for (int i = 0; i < dim; ++i) {
        x(i, i) = diag(gen);
        for (int j = i + 1; j < dim; ++j) x(i, j) = x(j, i) = off(gen);
    }
    return x;
}

std::size_t full_dimension(int num_strings, std::int64_t n) {
    if (n < 1) throw ValidationError("N must be positive");
    std::size_t d = 1;
    for (int s = 0; s < num_strings; ++s) {
        if (d > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n))
            throw ResourceError("tensor dimension N^#S overflows");
        d *= static_cast<std::size_t>(n);
    }
    return d;
}

LegLayout::LegLayout(const std::vector<int>& legs, int num_strings, std::int64_t n) {
    full_dim_ = full_dimension(num_strings, n);
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::size_t> stride(static_cast<std::size_t>(num_strings));
    for (int s = num_strings - 1, acc = 1; s >= 0; --s) {
        stride[static_cast<std::size_t>(s)] = static_cast<std::size_t>(acc);
        acc *= static_cast<int>(un);
    }
    std::vector<bool> on_leg(static_cast<std::size_t>(num_strings), false);
    for (int s : legs) {
        if (s < 0 || s >= num_strings) throw ValidationError("leg index out of range");
        on_leg[static_cast<std::size_t>(s)] = true;
    }
    std::vector<int> rest;
    for (int s = 0; s < num_strings; ++s)
        if (!on_leg[static_cast<std::size_t>(s)]) rest.push_back(s);

    auto offsets = [&](const std::vector<int>& set) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < set.size(); ++i) count *= un;
        std::vector<std::size_t> out(count, 0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rem = idx;
            std::size_t offset = 0;
            for (std::size_t t = set.size(); t-- > 0;) {
                offset += (rem % un) * stride[static_cast<std::size_t>(set[t])];
                rem /= un;
            }
            out[idx] = offset;
        }
        return out;
    };
    local_offset_ = offsets(legs);
    rest_offset_ = offsets(rest);
    fibres_.resize(rest_offset_.size());
    for (std::size_t b = 0; b < rest_offset_.size(); ++b) {
        fibres_[b].reserve(local_offset_.size());
        for (std::size_t a = 0; a < local_offset_.size(); ++a)
            fibres_[b].push_back(static_cast<Eigen::Index>(local_offset_[a] + rest_offset_[b]));
    }
}

CMatrix embed(const CMatrix& local, const std::vector<int>& legs, int num_strings, std::int64_t n) {
    const LegLayout layout(legs, num_strings, n);
    if (static_cast<std::size_t>(local.rows()) != layout.local_dim() || local.rows() != local.cols())
        throw ValidationError("embed: local matrix must be N^#K x N^#K");
    const auto d = static_cast<Eigen::Index>(layout.full_dim());
    CMatrix full = CMatrix::Zero(d, d);
    for (std::size_t b = 0; b < layout.rest_dim(); ++b) {
        const auto& f = layout.fibre(b);
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t c = 0; c < f.size(); ++c)
                full(f[a], f[c]) = local(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c));
    }
    return full;
}

CMatrix embed(const CMatrix& local, int family, const LegAssignment& assignment, std::int64_t n) {
    return embed(local, assignment.legs(family), assignment.num_strings(), n);
}

CMatrix apply_on_legs(const CMatrix& local, const LegLayout& layout, const CMatrix& m) {
    if (static_cast<std::size_t>(m.rows()) != layout.full_dim())
        throw ValidationError("apply_on_legs: row count must equal N^#S");
    if (layout.rest_dim() == 1) return local * m(layout.fibre(0), Eigen::all);
    CMatrix out(m.rows(), m.cols());
    for (std::size_t b = 0; b < layout.rest_dim(); ++b) {
        const auto& f = layout.fibre(b);
        out(f, Eigen::all) = local * m(f, Eigen::all);
    }
    return out;
}

Complex trace_on_legs(const CMatrix& local, const LegLayout& layout, const CMatrix& m) {
    Complex total = 0;
    for (std::size_t b = 0; b < layout.rest_dim(); ++b) {
        const auto& f = layout.fibre(b);
        total += local.cwiseProduct(m(f, f).transpose()).sum();
    }
    return total;
}

CMatrix to_eigen(const Matrix<Complex>& m) {
    CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

Matrix<Complex> from_eigen(const CMatrix& m) {
    Matrix<Complex> out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

std::string to_string(HaarGroup group) { return group == HaarGroup::unitary ? "unitary" : "orthogonal"; }

std::string to_string(TraceMode mode) { return mode == TraceMode::exact ? "exact" : "stochastic"; }

McEstimate summarize(std::span<const Complex> samples) {
    if (samples.size() < 2) throw ValidationError("need at least 2 samples for a standard error");
    Complex sum = 0;
    for (const auto& x : samples) sum += x;
    const double count = static_cast<double>(samples.size());
    const Complex mean = sum / count;
    double sq = 0;
    for (const auto& x : samples) sq += std::norm(x - mean);
    McEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(sq / (count - 1) / count);
    est.trials = samples.size();
    return est;
}

McEstimate mc_estimate(const Word& word, const LegAssignment& assignment, std::int64_t n, std::uint64_t trials,
                       const Rng& rng, const TrialSampler& sampler, const McOptions& options) {
    if (trials < 2) throw ValidationError("Monte Carlo needs at least 2 trials");
    if (word.max_label() >= assignment.num_families())
        throw ValidationError("word label has no leg set in the assignment");
    const std::size_t dim = full_dimension(assignment.num_strings(), n);
    TraceMode mode = options.trace;
    if (dim > options.dimension_cap) {
        if (!options.allow_large)
            throw ResourceError("tensor dimension N^#S = " + std::to_string(dim) + " exceeds the cap of " +
                                std::to_string(options.dimension_cap) +
                                "; reduce N or the number of strings, or allow large (stochastic trace) mode");
        mode = TraceMode::stochastic;
    }
    if (mode == TraceMode::stochastic && options.probes < 1) throw ValidationError("need at least one probe vector");

    const int k = word.size();
    std::vector<LegLayout> layouts;
    layouts.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) layouts.emplace_back(assignment.legs(word[j]), assignment.num_strings(), n);
    const double d = static_cast<double>(dim);

    auto run_trial = [&](std::uint64_t t) -> Complex {
        if (k == 0) return 1.0;
        const auto locals = sampler(t);
        if (static_cast<int>(locals.size()) != k) throw ValidationError("sampler returned the wrong operand count");
        const auto ku = static_cast<std::size_t>(k);
        if (mode == TraceMode::exact) {
            if (k == 1) return locals[0].trace() / static_cast<double>(locals[0].rows());
            CMatrix m = embed(locals[ku - 1], assignment.legs(word[k - 1]), assignment.num_strings(), n);
            for (std::size_t j = ku - 1; j-- > 1;) m = apply_on_legs(locals[j], layouts[j], m);
            return trace_on_legs(locals[0], layouts[0], m) / d;
        }
        auto gen = rng.substream(t, kProbeStream);
        const CMatrix probes = complex_ginibre(static_cast<int>(dim), options.probes, gen);
        CMatrix v = probes;
        for (std::size_t j = ku; j-- > 0;) v = apply_on_legs(locals[j], layouts[j], v);
        return (probes.adjoint() * v).trace() / (d * options.probes);
    };

    std::vector<Complex> values(trials);
    const auto workers = static_cast<std::uint64_t>(std::max(1, options.workers));
    if (workers == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) values[t] = run_trial(t);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t t = w; t < trials; t += workers) values[t] = run_trial(t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    McEstimate est = summarize(values);
    est.trace = mode;
    return est;
}

McEstimate mc_moment(const Word& word, const LegAssignment& assignment, std::span<const FloatOperand> operands,
                     std::int64_t n, std::uint64_t trials, const Rng& rng, HaarGroup group, const McOptions& options) {
    validate_operands(word, assignment, operands, n);
    std::vector<CMatrix> base;
    for (const auto& op : operands) base.push_back(to_eigen(op.local));
    const auto families = word.families();
    const int max_family = word.max_label();
    TrialSampler sampler = [&](std::uint64_t t) {
        std::vector<CMatrix> conj(static_cast<std::size_t>(max_family) + 1);
        for (int family : families) {
            auto gen = rng.substream(t, static_cast<std::uint64_t>(family));
            const auto dim = static_cast<int>(base[static_cast<std::size_t>(word.block_of(family).front())].rows());
            conj[static_cast<std::size_t>(family)] = group == HaarGroup::unitary
                                                         ? haar_unitary(dim, gen)
                                                         : CMatrix(haar_orthogonal(dim, gen).cast<Complex>());
        }
        std::vector<CMatrix> locals;
        locals.reserve(base.size());
        for (int j = 0; j < word.size(); ++j) {
            const CMatrix& u = conj[static_cast<std::size_t>(word[j])];
            locals.push_back(u * base[static_cast<std::size_t>(j)] * u.adjoint());
        }
        return locals;
    };
    return mc_estimate(word, assignment, n, trials, rng, sampler, options);
}

McEstimate mc_gue_moment(const Word& word, const LegAssignment& assignment, std::int64_t n, std::uint64_t trials,
                         const Rng& rng, const McOptions& options) {
    if (word.max_label() >= assignment.num_families())
        throw ValidationError("word label has no leg set in the assignment");
    const auto families = word.families();
    TrialSampler sampler = [&](std::uint64_t t) {
        std::vector<CMatrix> sample(static_cast<std::size_t>(word.max_label()) + 1);
        for (int family : families) {
            auto gen = rng.substream(t, static_cast<std::uint64_t>(family));
            const auto dim = static_cast<int>(full_dimension(assignment.leg_count(family), n));
            sample[static_cast<std::size_t>(family)] = gue(dim, gen);
        }
        std::vector<CMatrix> locals;
        for (int j = 0; j < word.size(); ++j) locals.push_back(sample[static_cast<std::size_t>(word[j])]);
        return locals;
    };
    return mc_estimate(word, assignment, n, trials, rng, sampler, options);
}

}  // namespace epsfree
