#include "arbor/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace arbor {

namespace {

void require_branching(std::size_t b) {
    if (b == 0) throw std::invalid_argument("terminal vertex forbidden: branching count 0");
}

}  // namespace

std::string format_path(const VertexPath& path) {
    std::string out = "o";
    for (std::size_t k : path) {
        out += '.';
        out += std::to_string(k);
    }
    return out;
}

TreeSpec TreeSpec::homogeneous(std::size_t b) {
    require_branching(b);
    TreeSpec s;
    s.kind_ = Kind::homogeneous;
    s.tail_ = b;
    return s;
}

TreeSpec TreeSpec::per_level(std::vector<std::size_t> prefix, std::size_t tail) {
    for (std::size_t b : prefix) require_branching(b);
    require_branching(tail);
    TreeSpec s;
    s.kind_ = Kind::per_level;
    s.prefix_ = std::move(prefix);
    s.tail_ = tail;
    return s;
}

TreeSpec TreeSpec::explicit_table(std::vector<std::optional<std::size_t>> parents,
                                  std::size_t tail) {
    require_branching(tail);
    const std::size_t m = parents.size();
    if (m == 0) throw std::invalid_argument("explicit tree table is empty");

    std::optional<std::size_t> root;
    std::vector<std::vector<std::size_t>> kids(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!parents[i]) {
            if (root) throw std::invalid_argument("explicit tree table has more than one root");
            root = i;
            continue;
        }
        const std::size_t p = *parents[i];
        if (p >= m) {
            throw std::invalid_argument("explicit tree table: parent " + std::to_string(p) +
                                        " of vertex " + std::to_string(i) + " out of range");
        }
        if (p == i) {
            throw std::invalid_argument("explicit tree table: vertex " + std::to_string(i) +
                                        " is its own parent");
        }
        kids[p].push_back(i);
    }
    if (!root) throw std::invalid_argument("explicit tree table has no root");

    // Breadth-first from the root; children in ascending table order.
    std::vector<std::size_t> order;
    std::vector<std::size_t> depth(m, 0);
    std::vector<bool> seen(m, false);
    order.reserve(m);
    order.push_back(*root);
    seen[*root] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const std::size_t v = order[head];
        for (std::size_t c : kids[v]) {
            if (seen[c]) throw std::invalid_argument("explicit tree table contains a cycle");
            seen[c] = true;
            depth[c] = depth[v] + 1;
            order.push_back(c);
        }
    }
    if (order.size() != m) {
        throw std::invalid_argument("explicit tree table is not connected to the root");
    }

    const std::size_t height = depth[order.back()];
    TreeSpec s;
    s.kind_ = Kind::explicit_table;
    s.tail_ = tail;
    s.table_levels_.assign(height + 1, 0);
    for (std::size_t v : order) {
        ++s.table_levels_[depth[v]];
        if (depth[v] < height) {
            if (kids[v].empty()) {
                throw std::invalid_argument("terminal vertex forbidden: table vertex " +
                                            std::to_string(v) + " at depth " +
                                            std::to_string(depth[v]) + " has no children");
            }
            s.table_counts_.push_back(kids[v].size());
        }
    }
    return s;
}

std::size_t TreeSpec::prefix_depth() const noexcept {
    switch (kind_) {
    case Kind::homogeneous: return 0;
    case Kind::per_level: return prefix_.size();
    case Kind::explicit_table: return table_levels_.size() - 1;
    }
    return 0;
}

std::size_t TreeSpec::branching_at_depth(std::size_t depth) const {
    switch (kind_) {
    case Kind::homogeneous: return tail_;
    case Kind::per_level: return depth < prefix_.size() ? prefix_[depth] : tail_;
    case Kind::explicit_table:
        if (depth >= prefix_depth()) return tail_;
        throw std::logic_error("explicit tree prefix is not level-regular");
    }
    return tail_;
}

double TreeSpec::level_size(std::size_t n) const {
    if (kind_ == Kind::explicit_table) {
        const std::size_t k = prefix_depth();
        if (n <= k) return static_cast<double>(table_levels_[n]);
        return static_cast<double>(table_levels_[k]) *
               std::pow(static_cast<double>(tail_), static_cast<double>(n - k));
    }
    double size = 1.0;
    const std::size_t k = std::min(n, prefix_.size());
    for (std::size_t d = 0; d < k; ++d) size *= static_cast<double>(prefix_[d]);
    if (n > k) size *= std::pow(static_cast<double>(tail_), static_cast<double>(n - k));
    return size;
}

std::string TreeSpec::describe() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::homogeneous: out << "homogeneous(" << tail_ << ")"; break;
    case Kind::per_level:
        out << "per-level(";
        for (std::size_t i = 0; i < prefix_.size(); ++i) out << (i ? "," : "") << prefix_[i];
        out << ";" << tail_ << ")";
        break;
    case Kind::explicit_table:
        out << "explicit(levels=";
        for (std::size_t i = 0; i < table_levels_.size(); ++i) {
            out << (i ? "," : "") << table_levels_[i];
        }
        out << ";" << tail_ << ")";
        break;
    }
    return out.str();
}

// ---------------------------------------------------------------------------

TreePtr build_truncation(const TreeSpec& spec, std::size_t depth_limit) {
    auto tree = std::shared_ptr<TruncatedTree>(new TruncatedTree());
    tree->spec_ = spec;
    tree->depth_limit_ = depth_limit;

    double expected = 0.0;
    for (std::size_t n = 0; n <= depth_limit; ++n) {
        expected += spec.level_size(n);
        if (expected > static_cast<double>(max_truncation_size)) {
            throw std::length_error("truncation of " + spec.describe() + " at depth " +
                                    std::to_string(depth_limit) + " exceeds " +
                                    std::to_string(max_truncation_size) + " vertices");
        }
    }
    const auto total = static_cast<std::size_t>(expected);
    tree->parent_.reserve(total);
    tree->depth_.reserve(total);
    tree->first_child_.assign(total, 0);
    tree->child_count_.assign(total, 0);

    tree->parent_.push_back(TruncatedTree::no_parent);
    tree->depth_.push_back(0);
    tree->level_begin_.push_back(0);

    const std::size_t table_depth =
        spec.kind() == TreeSpec::Kind::explicit_table ? spec.prefix_depth() : 0;

    for (std::size_t d = 0; d < depth_limit; ++d) {
        const VertexId begin = tree->level_begin_[d];
        const VertexId end = tree->parent_.size();
        tree->level_begin_.push_back(end);
        for (VertexId v = begin; v < end; ++v) {
            std::size_t count = 0;
            if (spec.kind() == TreeSpec::Kind::explicit_table && d < table_depth) {
                count = spec.table_child_counts()[v];
            } else {
                count = spec.branching_at_depth(d);
            }
            tree->first_child_[v] = tree->parent_.size();
            tree->child_count_[v] = static_cast<std::uint32_t>(count);
            for (std::size_t c = 0; c < count; ++c) {
                tree->parent_.push_back(v);
                tree->depth_.push_back(static_cast<std::uint32_t>(d + 1));
            }
        }
    }
    tree->level_begin_.push_back(tree->parent_.size());
    // Leaves of the truncation: no realized children.
    for (VertexId v = tree->level_begin_[depth_limit]; v < tree->parent_.size(); ++v) {
        tree->first_child_[v] = tree->parent_.size();
        tree->child_count_[v] = 0;
    }
    return tree;
}

void TruncatedTree::check(VertexId v) const {
    if (v >= size()) {
        throw std::out_of_range("vertex id " + std::to_string(v) + " out of range (N = " +
                                std::to_string(size()) + ")");
    }
}

std::optional<VertexId> TruncatedTree::parent(VertexId v) const {
    check(v);
    if (v == 0) return std::nullopt;
    return parent_[v];
}

std::ranges::iota_view<VertexId, VertexId> TruncatedTree::children(VertexId v) const {
    check(v);
    return std::views::iota(first_child_[v], first_child_[v] + child_count_[v]);
}

std::size_t TruncatedTree::depth(VertexId v) const {
    check(v);
    return depth_[v];
}

std::vector<VertexId> TruncatedTree::ancestors(VertexId v) const {
    check(v);
    std::vector<VertexId> out;
    out.reserve(depth_[v]);
    while (v != 0) {
        v = parent_[v];
        out.push_back(v);
    }
    return out;
}

std::vector<VertexId> TruncatedTree::sector_vertices(VertexId v) const {
    check(v);
    // The sector meets each level in a contiguous id range.
    std::vector<VertexId> out;
    VertexId lo = v;
    VertexId hi = v + 1;
    for (std::size_t d = depth_[v]; d <= depth_limit_; ++d) {
        for (VertexId u = lo; u < hi; ++u) out.push_back(u);
        if (d == depth_limit_) break;
        const VertexId next_lo = first_child_[lo];
        const VertexId next_hi = first_child_[hi - 1] + child_count_[hi - 1];
        lo = next_lo;
        hi = next_hi;
    }
    return out;
}

bool TruncatedTree::is_ancestor(VertexId u, VertexId v) const {
    check(u);
    check(v);
    if (depth_[u] >= depth_[v]) return false;
    while (depth_[v] > depth_[u]) v = parent_[v];
    return u == v;
}

VertexId TruncatedTree::level_begin(std::size_t n) const {
    if (n > depth_limit_ + 1) throw std::out_of_range("level beyond truncation depth");
    return level_begin_[n];
}

std::vector<std::size_t> TruncatedTree::level_sizes() const {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d <= depth_limit_; ++d) {
        out.push_back(level_begin_[d + 1] - level_begin_[d]);
    }
    return out;
}

VertexPath TruncatedTree::path_of(VertexId v) const {
    check(v);
    VertexPath path(depth_[v]);
    for (std::size_t k = path.size(); k-- > 0;) {
        const VertexId p = parent_[v];
        path[k] = v - first_child_[p];
        v = p;
    }
    return path;
}

std::optional<VertexId> TruncatedTree::find(const VertexPath& path) const {
    if (path.size() > depth_limit_) return std::nullopt;
    VertexId v = 0;
    for (std::size_t k : path) {
        if (k >= child_count_[v]) return std::nullopt;
        v = first_child_[v] + k;
    }
    return v;
}

bool TruncatedTree::same_shape(const TruncatedTree& other) const noexcept {
    return this == &other || parent_ == other.parent_;
}

}  // namespace arbor
