#include "epsfree/symgroup.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "epsfree/error.hpp"

namespace epsfree {

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int part : parts_) {
        if (part < 1) throw ValidationError("cycle type parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int CycleType::degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int CycleType::length() const { return degree() - static_cast<int>(parts_.size()); }

std::string CycleType::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < parts_.size(); ++i) out << (i ? "," : "") << parts_[i];
    out << ']';
    return out.str();
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current,
                    std::vector<CycleType>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions_rec(remaining - part, part, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<CycleType> integer_partitions(int k) {
    std::vector<CycleType> out;
    if (k < 0) return out;
    std::vector<int> current;
    partitions_rec(k, k, current, out);
    return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int k = size();
    std::vector<bool> seen(images_.size(), false);
    for (int value : images_) {
        if (value < 0 || value >= k || seen[static_cast<std::size_t>(value)])
            throw ValidationError("permutation images must be a bijection of {0..k-1}");
        seen[static_cast<std::size_t>(value)] = true;
    }
}

Permutation Permutation::identity(int k) {
    if (k < 0) throw ValidationError("permutation size must be non-negative");
    std::vector<int> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

Permutation Permutation::from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (const auto& cycle : cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int x = cycle[i];
            if (x < 0 || x >= k || used[static_cast<std::size_t>(x)])
                throw ValidationError("cycles must be disjoint and within {0..k-1}");
            used[static_cast<std::size_t>(x)] = true;
            images[static_cast<std::size_t>(x)] = cycle[(i + 1) % cycle.size()];
        }
    }
    return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, int k) {
    std::vector<std::vector<int>> cycles;
    std::vector<int>* current = nullptr;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '(') {
            if (current) throw ValidationError("nested '(' in cycle notation");
            cycles.emplace_back();
            current = &cycles.back();
            ++i;
        } else if (c == ')') {
            if (!current) throw ValidationError("unbalanced ')' in cycle notation");
            current = nullptr;
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (!current) throw ValidationError("label outside of a cycle");
            int value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                value = value * 10 + (text[i] - '0');
                ++i;
            }
            current->push_back(value - 1);
        } else if (c == ' ' || c == ',') {
            ++i;
        } else {
            throw ValidationError(std::string("unexpected character in cycle notation: ") + c);
        }
    }
    if (current) throw ValidationError("unterminated cycle");
    return from_cycles(k, cycles);
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x)
        inv[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
    Permutation p;
    p.images_ = std::move(inv);
    return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int start = 0; start < size(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cycle;
        for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
            seen[static_cast<std::size_t>(x)] = true;
            cycle.push_back(x);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

int Permutation::cycle_count() const {
    int count = 0;
    std::vector<bool> seen(images_.size(), false);
    for (int start = 0; start < size(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        ++count;
        for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x))
            seen[static_cast<std::size_t>(x)] = true;
    }
    return count;
}

CycleType Permutation::cycle_type() const {
    std::vector<int> parts;
    for (const auto& cycle : cycles()) parts.push_back(static_cast<int>(cycle.size()));
    return CycleType(std::move(parts));
}

std::vector<int> Permutation::fixed_points() const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
        if ((*this)(x) == x) out.push_back(x);
    return out;
}

bool Permutation::is_identity() const {
    for (int x = 0; x < size(); ++x)
        if ((*this)(x) != x) return false;
    return true;
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    bool any = false;
    for (const auto& cycle : cycles()) {
        if (cycle.size() < 2) continue;
        any = true;
        out << '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) out << (i ? " " : "") << cycle[i] + 1;
        out << ')';
    }
    return any ? out.str() : "()";
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw ValidationError("compose: permutation sizes differ");
    std::vector<int> images(static_cast<std::size_t>(p.size()));
    for (int x = 0; x < p.size(); ++x) images[static_cast<std::size_t>(x)] = p(q(x));
    return Permutation(std::move(images));
}

Permutation full_cycle(int k) {
    if (k < 1) throw ValidationError("full_cycle requires k >= 1");
    std::vector<int> images(static_cast<std::size_t>(k));
    for (int x = 0; x < k; ++x) images[static_cast<std::size_t>(x)] = (x + 1) % k;
    return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(int k) {
    std::vector<int> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

OrderedSubset::OrderedSubset(std::vector<int> elements) : elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] < 0) throw ValidationError("subset elements must be non-negative");
        if (i > 0 && elements_[i - 1] >= elements_[i])
            throw ValidationError("subset elements must be strictly increasing");
    }
}

bool OrderedSubset::contains(int x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

int OrderedSubset::position_of(int x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) return -1;
    return static_cast<int>(it - elements_.begin());
}

std::string OrderedSubset::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < elements_.size(); ++i) out << (i ? "," : "") << elements_[i] + 1;
    out << '}';
    return out.str();
}

Permutation induced_full_cycle(const OrderedSubset& J, int k) {
    if (J.empty()) return Permutation::identity(k);
    return extend(full_cycle(J.size()), J, k);
}

Permutation RestrictedPermutation::extended() const { return extend(local, support, ambient_size); }

RestrictedPermutation restrict(const Permutation& p, const OrderedSubset& J) {
    std::vector<int> local(static_cast<std::size_t>(J.size()));
    for (int i = 0; i < J.size(); ++i) {
        const int x = J.elements()[static_cast<std::size_t>(i)];
        if (x >= p.size()) throw ValidationError("restrict: subset exceeds permutation size");
        const int pos = J.position_of(p(x));
        if (pos < 0) throw ValidationError("restrict: subset is not invariant under the permutation");
        local[static_cast<std::size_t>(i)] = pos;
    }
    return RestrictedPermutation{Permutation(std::move(local)), J, p.size()};
}

Permutation extend(const Permutation& local, const OrderedSubset& J, int k) {
    if (local.size() != J.size()) throw ValidationError("extend: subset and permutation sizes differ");
    std::vector<int> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    const auto& el = J.elements();
    for (int i = 0; i < J.size(); ++i) {
        if (el[static_cast<std::size_t>(i)] >= k) throw ValidationError("extend: subset exceeds k");
        images[static_cast<std::size_t>(el[static_cast<std::size_t>(i)])] =
            el[static_cast<std::size_t>(local(i))];
    }
    return Permutation(std::move(images));
}

SetPartition cycle_partition(const Permutation& p) {
    SetPartition blocks = p.cycles();
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    return blocks;
}

bool is_noncrossing(const SetPartition& blocks) {
    int k = 0;
    for (const auto& block : blocks)
        for (int x : block) k = std::max(k, x + 1);
    std::vector<int> owner(static_cast<std::size_t>(k), -1);
    std::vector<int> last(blocks.size(), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (int x : blocks[b]) {
            owner[static_cast<std::size_t>(x)] = static_cast<int>(b);
            last[b] = std::max(last[b], x);
        }
    }
    // A later element of an open block must find that block on top of the stack.
    std::vector<int> open;
    std::vector<bool> started(blocks.size(), false);
    for (int x = 0; x < k; ++x) {
        const int b = owner[static_cast<std::size_t>(x)];
        if (b < 0) continue;
        const auto ub = static_cast<std::size_t>(b);
        if (!started[ub]) {
            started[ub] = true;
            if (last[ub] != x) open.push_back(b);
            continue;
        }
        if (open.empty() || open.back() != b) return false;
        if (last[ub] == x) open.pop_back();
    }
    return true;
}

bool is_noncrossing(const Permutation& p) { return is_noncrossing(cycle_partition(p)); }

std::size_t block_stabilizer_size(const SetPartition& blocks) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    for (const auto& block : blocks) {
        for (std::size_t f = 2; f <= block.size(); ++f) {
            if (total > kMax / f) return kMax;
            total *= f;
        }
    }
    return total;
}

std::vector<Permutation> enumerate_block_stabilizer(const SetPartition& blocks, std::size_t max_size) {
    int k = 0;
    for (const auto& block : blocks) k += static_cast<int>(block.size());
    std::vector<bool> covered(static_cast<std::size_t>(k), false);
    SetPartition sorted = blocks;
    for (auto& block : sorted) {
        std::sort(block.begin(), block.end());
        for (int x : block) {
            if (x < 0 || x >= k || covered[static_cast<std::size_t>(x)])
                throw ValidationError("enumerate_block_stabilizer: blocks must partition {0..k-1}");
            covered[static_cast<std::size_t>(x)] = true;
        }
    }
    const std::size_t total = block_stabilizer_size(sorted);
    if (total > max_size)
        throw ResourceError("block stabilizer has " + std::to_string(total) +
                            " elements, above the configured bound");

    // Current arrangement of each block's images.
    std::vector<std::vector<int>> arrangement = sorted;
    std::vector<Permutation> out;
    out.reserve(total);
    while (true) {
        std::vector<int> images(static_cast<std::size_t>(k));
        for (std::size_t b = 0; b < sorted.size(); ++b)
            for (std::size_t i = 0; i < sorted[b].size(); ++i)
                images[static_cast<std::size_t>(sorted[b][i])] = arrangement[b][i];
        out.emplace_back(std::move(images));

        std::size_t b = sorted.size();
        while (b > 0) {
            --b;
            if (std::next_permutation(arrangement[b].begin(), arrangement[b].end())) break;
            // next_permutation wrapped the block back to sorted order; carry.
            if (b == 0) return out;
        }
        if (sorted.empty()) return out;
    }
}

}  // namespace epsfree
