#pragma once

// epsilon-matrices, tensor-leg assignments (models A and B), words and the
// epsilon-reduced word test.
//
// Family labels are 0-based here; files and printed output use 1-based labels.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epsfree/symgroup.hpp"

namespace epsfree {

/// Symmetric 0/1 matrix with zero diagonal. 1 = commuting (classically
/// independent) pair, 0 = free pair.
class EpsilonMatrix {
public:
    EpsilonMatrix() = default;
    /// The n x n all-zeros (fully free) matrix.
    explicit EpsilonMatrix(int n);

    int size() const { return n_; }
    int operator()(int i, int j) const { return bits_[index(i, j)]; }
    bool commute(int i, int j) const { return (*this)(i, j) == 1; }
    /// Sets both (i, j) and (j, i). Throws on the diagonal.
    void set(int i, int j, int value);

    std::vector<std::vector<int>> rows() const;

    bool operator==(const EpsilonMatrix&) const = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }
    int n_ = 0;
    std::vector<int> bits_;
};

/// Checks square, binary, symmetric and zero diagonal; throws ValidationError otherwise.
EpsilonMatrix validate_epsilon(const std::vector<std::vector<int>>& m);

/// Undirected simple graph on at most 64 vertices, adjacency as bitmasks.
class Graph {
public:
    explicit Graph(int n = 0);

    int size() const { return n_; }
    bool adjacent(int i, int j) const { return (adj_[static_cast<std::size_t>(i)] >> j) & 1U; }
    std::uint64_t neighbours(int i) const { return adj_[static_cast<std::size_t>(i)]; }
    void add_edge(int i, int j);
    std::vector<std::pair<int, int>> edges() const;
    bool is_clique(const std::vector<int>& vertices) const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> adj_;
};

/// G°: distinct i, j adjacent iff eps_ij = 0.
Graph complement_graph(const EpsilonMatrix& eps);

/// All maximal cliques (Bron-Kerbosch with Tomita pivoting), each sorted,
/// list sorted lexicographically. Isolated vertices appear as singletons.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

/// Tensor blueprint: ordered string set S and a non-empty leg set K_i per family.
class LegAssignment {
public:
    LegAssignment() = default;
    /// `legs[i]` lists the string ids family i acts on. Strings are sorted
    /// ascending; leg sets are stored as sorted indices into that order.
    LegAssignment(std::vector<std::string> strings, const std::vector<std::vector<std::string>>& legs);

    int num_strings() const { return static_cast<int>(strings_.size()); }
    int num_families() const { return static_cast<int>(legs_.size()); }
    const std::vector<std::string>& strings() const { return strings_; }
    /// Indices (into strings()) of the legs of `family`, ascending.
    const std::vector<int>& legs(int family) const { return legs_.at(static_cast<std::size_t>(family)); }
    int leg_count(int family) const { return static_cast<int>(legs(family).size()); }
    bool has_leg(int family, int string) const;
    int string_index(const std::string& id) const;

    bool operator==(const LegAssignment&) const = default;

private:
    std::vector<std::string> strings_;
    std::vector<std::vector<int>> legs_;
};

enum class CoverStrategy { maximal_cliques, greedy, edges_and_vertices };

/// S = {{i, j} : eps_ij = 0} including the singletons {i}.
LegAssignment model_a(const EpsilonMatrix& eps);

/// S = a clique edge cover of G° that also covers every vertex.
LegAssignment model_b(const EpsilonMatrix& eps, CoverStrategy strategy);

/// Cliques used as strings by model_b, before conversion to a LegAssignment.
std::vector<std::vector<int>> clique_cover(const EpsilonMatrix& eps, CoverStrategy strategy);

/// String id for a vertex set, e.g. {0, 3, 4} -> "{1,4,5}".
std::string clique_id(const std::vector<int>& vertices);

/// eps_ij = 1 iff K_i and K_j are disjoint (i != j).
EpsilonMatrix epsilon_of(const LegAssignment& assignment);

/// A word (i_1, ..., i_k) of family labels with its block partition.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }
    int operator[](int position) const { return labels_[static_cast<std::size_t>(position)]; }
    const std::vector<int>& labels() const { return labels_; }
    /// Distinct labels, ascending.
    std::vector<int> families() const;
    /// B_i = {j : i_j = i} for each distinct label, in ascending label order.
    SetPartition blocks() const;
    /// Positions carrying `family`, ascending (possibly empty).
    std::vector<int> block_of(int family) const;
    int max_label() const;

    bool operator==(const Word&) const = default;

private:
    std::vector<int> labels_;
};

/// First pair j < l (lexicographically) with equal labels and no separating
/// non-commuting letter, or nullopt if the word is epsilon-reduced.
std::optional<std::pair<int, int>> reduction_witness(const Word& word, const EpsilonMatrix& eps);

/// Membership in I^eps_k by the direct definitional scan.
bool word_in_I_eps(const Word& word, const EpsilonMatrix& eps);

/// J_s = {j : s in K_{i_j}} for every string s (empty sets included), indexed like assignment.strings().
std::vector<OrderedSubset> j_sets(const Word& word, const LegAssignment& assignment);

}  // namespace epsfree
