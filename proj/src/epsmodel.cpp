#include "epsfree/epsmodel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "epsfree/error.hpp"

namespace epsfree {

EpsilonMatrix::EpsilonMatrix(int n) : n_(n) {
    if (n < 0) throw ValidationError("epsilon matrix size must be non-negative");
    bits_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

void EpsilonMatrix::set(int i, int j, int value) {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw ValidationError("epsilon index out of range");
    if (i == j) throw ValidationError("epsilon diagonal is fixed to 0");
    if (value != 0 && value != 1) throw ValidationError("epsilon entries must be 0 or 1");
    bits_[index(i, j)] = value;
    bits_[index(j, i)] = value;
}

std::vector<std::vector<int>> EpsilonMatrix::rows() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back((*this)(i, j));
    return out;
}

EpsilonMatrix validate_epsilon(const std::vector<std::vector<int>>& m) {
    const int n = static_cast<int>(m.size());
    EpsilonMatrix eps(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = m[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != n) throw ValidationError("epsilon matrix must be square");
        for (int j = 0; j < n; ++j) {
            const int v = row[static_cast<std::size_t>(j)];
            if (v != 0 && v != 1)
                throw ValidationError("epsilon entries must be 0 or 1 (row " + std::to_string(i + 1) + ")");
            if (i == j && v != 0)
                throw ValidationError("epsilon diagonal must be 0 (entry " + std::to_string(i + 1) + ")");
            if (m[static_cast<std::size_t>(j)].size() == row.size() && v != m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw ValidationError("epsilon matrix must be symmetric (entry " + std::to_string(i + 1) +
                                      "," + std::to_string(j + 1) + ")");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) eps.set(i, j, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return eps;
}

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > 64) throw ValidationError("graphs are limited to 64 vertices");
}

void Graph::add_edge(int i, int j) {
    if (i == j) throw ValidationError("self-loops are not allowed");
    adj_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    adj_[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
}

bool Graph::is_clique(const std::vector<int>& vertices) const {
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (!adjacent(vertices[a], vertices[b])) return false;
    return true;
}

Graph complement_graph(const EpsilonMatrix& eps) {
    Graph g(eps.size());
    for (int i = 0; i < eps.size(); ++i)
        for (int j = i + 1; j < eps.size(); ++j)
            if (!eps.commute(i, j)) g.add_edge(i, j);
    return g;
}

namespace {

std::vector<int> mask_to_vertices(std::uint64_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

void bron_kerbosch(const Graph& g, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   std::vector<std::vector<int>>& out) {
    if (p == 0 && x == 0) {
        out.push_back(mask_to_vertices(r));
        return;
    }
    // Pivot on the vertex of P u X with the most neighbours in P.
    int pivot = -1;
    int best = -1;
    for (std::uint64_t px = p | x; px; px &= px - 1) {
        const int u = std::countr_zero(px);
        const int score = std::popcount(p & g.neighbours(u));
        if (score > best) {
            best = score;
            pivot = u;
        }
    }
    for (std::uint64_t cand = p & ~g.neighbours(pivot); cand; cand &= cand - 1) {
        const int v = std::countr_zero(cand);
        const std::uint64_t bit = std::uint64_t{1} << v;
        bron_kerbosch(g, r | bit, p & g.neighbours(v), x & g.neighbours(v), out);
        p &= ~bit;
        x |= bit;
    }
}

std::uint64_t all_vertices(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

LegAssignment assignment_from_cliques(int n, const std::vector<std::vector<int>>& cliques) {
    std::vector<std::string> strings;
    std::vector<std::vector<std::string>> legs(static_cast<std::size_t>(n));
    for (const auto& clique : cliques) {
        const std::string id = clique_id(clique);
        strings.push_back(id);
        for (int v : clique) legs[static_cast<std::size_t>(v)].push_back(id);
    }
    return LegAssignment(std::move(strings), legs);
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
    std::vector<std::vector<int>> out;
    if (g.size() == 0) return out;
    bron_kerbosch(g, 0, all_vertices(g.size()), 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string clique_id(const std::vector<int>& vertices) {
    std::string id = "{";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) id += ',';
        id += std::to_string(vertices[i] + 1);
    }
    return id + "}";
}

LegAssignment::LegAssignment(std::vector<std::string> strings, const std::vector<std::vector<std::string>>& legs)
    : strings_(std::move(strings)) {
    std::sort(strings_.begin(), strings_.end());
    if (std::adjacent_find(strings_.begin(), strings_.end()) != strings_.end())
        throw ValidationError("string identifiers must be unique");
    if (strings_.empty()) throw ValidationError("the string set S must be non-empty");
    legs_.reserve(legs.size());
    for (std::size_t family = 0; family < legs.size(); ++family) {
        std::vector<int> indices;
        for (const auto& id : legs[family]) {
            const int idx = string_index(id);
            if (idx < 0) throw ValidationError("leg '" + id + "' is not a declared string");
            indices.push_back(idx);
        }
        std::sort(indices.begin(), indices.end());
        indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
        if (indices.empty())
            throw ValidationError("family " + std::to_string(family + 1) + " has an empty leg set");
        legs_.push_back(std::move(indices));
    }
}

bool LegAssignment::has_leg(int family, int string) const {
    const auto& l = legs(family);
    return std::binary_search(l.begin(), l.end(), string);
}

int LegAssignment::string_index(const std::string& id) const {
    auto it = std::lower_bound(strings_.begin(), strings_.end(), id);
    if (it == strings_.end() || *it != id) return -1;
    return static_cast<int>(it - strings_.begin());
}

LegAssignment model_a(const EpsilonMatrix& eps) {
    return assignment_from_cliques(eps.size(), clique_cover(eps, CoverStrategy::edges_and_vertices));
}

std::vector<std::vector<int>> clique_cover(const EpsilonMatrix& eps, CoverStrategy strategy) {
    const int n = eps.size();
    if (n == 0) throw ValidationError("epsilon matrix must have at least one index");
    std::vector<std::vector<int>> cover;
    if (strategy == CoverStrategy::edges_and_vertices) {
        for (int i = 0; i < n; ++i) {
            cover.push_back({i});
            for (int j = i + 1; j < n; ++j)
                if (!eps.commute(i, j)) cover.push_back({i, j});
        }
        std::sort(cover.begin(), cover.end());
        return cover;
    }

    const Graph g = complement_graph(eps);
    const auto cliques = maximal_cliques(g);
    if (strategy == CoverStrategy::maximal_cliques) return cliques;

    // Greedy: repeatedly take the maximal clique covering the most uncovered
    // edges; the candidate list is lexicographically sorted, so the first
    // maximum found is the lexicographically smallest.
    std::set<std::pair<int, int>> uncovered;
    for (const auto& e : g.edges()) uncovered.insert(e);
    std::vector<bool> used(cliques.size(), false);
    while (!uncovered.empty()) {
        std::size_t best = cliques.size();
        std::size_t best_gain = 0;
        for (std::size_t c = 0; c < cliques.size(); ++c) {
            if (used[c]) continue;
            std::size_t gain = 0;
            const auto& q = cliques[c];
            for (std::size_t a = 0; a < q.size(); ++a)
                for (std::size_t b = a + 1; b < q.size(); ++b) gain += uncovered.count({q[a], q[b]});
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        used[best] = true;
        const auto& q = cliques[best];
        for (std::size_t a = 0; a < q.size(); ++a)
            for (std::size_t b = a + 1; b < q.size(); ++b) uncovered.erase({q[a], q[b]});
        cover.push_back(q);
    }
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    for (const auto& q : cover)
        for (int v : q) touched[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < n; ++v)
        if (!touched[static_cast<std::size_t>(v)]) cover.push_back({v});
    std::sort(cover.begin(), cover.end());
    return cover;
}

LegAssignment model_b(const EpsilonMatrix& eps, CoverStrategy strategy) {
    return assignment_from_cliques(eps.size(), clique_cover(eps, strategy));
}

EpsilonMatrix epsilon_of(const LegAssignment& assignment) {
    const int n = assignment.num_families();
    EpsilonMatrix eps(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& a = assignment.legs(i);
            const auto& b = assignment.legs(j);
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            eps.set(i, j, common.empty() ? 1 : 0);
        }
    }
    return eps;
}

Word::Word(std::vector<int> labels) : labels_(std::move(labels)) {
    for (int label : labels_)
        if (label < 0) throw ValidationError("word labels must be non-negative");
}

std::vector<int> Word::families() const {
    std::vector<int> out = labels_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SetPartition Word::blocks() const {
    std::map<int, std::vector<int>> by_label;
    for (int j = 0; j < size(); ++j) by_label[labels_[static_cast<std::size_t>(j)]].push_back(j);
    SetPartition out;
    for (auto& [label, block] : by_label) out.push_back(std::move(block));
    return out;
}

std::vector<int> Word::block_of(int family) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        if (labels_[static_cast<std::size_t>(j)] == family) out.push_back(j);
    return out;
}

int Word::max_label() const {
    return labels_.empty() ? -1 : *std::max_element(labels_.begin(), labels_.end());
}

std::optional<std::pair<int, int>> reduction_witness(const Word& word, const EpsilonMatrix& eps) {
    if (word.max_label() >= eps.size()) throw ValidationError("word label exceeds the epsilon index range");
    const int k = word.size();
    for (int j = 0; j < k; ++j) {
        for (int l = j + 1; l < k; ++l) {
            if (word[j] != word[l]) continue;
            bool separated = false;
            for (int m = j + 1; m < l && !separated; ++m)
                separated = word[m] != word[j] && !eps.commute(word[j], word[m]);
            if (!separated) return std::make_pair(j, l);
        }
    }
    return std::nullopt;
}

bool word_in_I_eps(const Word& word, const EpsilonMatrix& eps) { return !reduction_witness(word, eps); }

std::vector<OrderedSubset> j_sets(const Word& word, const LegAssignment& assignment) {
    if (word.max_label() >= assignment.num_families())
        throw ValidationError("word label has no leg set in the assignment");
    std::vector<std::vector<int>> members(static_cast<std::size_t>(assignment.num_strings()));
    for (int j = 0; j < word.size(); ++j)
        for (int s : assignment.legs(word[j])) members[static_cast<std::size_t>(s)].push_back(j);
    std::vector<OrderedSubset> out;
    out.reserve(members.size());
    for (auto& m : members) out.emplace_back(std::move(m));
    return out;
}

}  // namespace epsfree
