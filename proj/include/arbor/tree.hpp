#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ranges>
#include <string>
#include <vector>

namespace arbor {

using VertexId = std::size_t;

/// Child-index path from the root: {0, 1} is the second child of the first
/// child of the root. The empty path names the root.
using VertexPath = std::vector<std::size_t>;

std::string format_path(const VertexPath& path);

/// Branching rule of a rooted, locally finite tree without terminal vertices.
///
/// All three kinds are eventually homogeneous: from depth `prefix_depth()` on
/// every vertex has `tail_branching()` children.
class TreeSpec {
public:
    enum class Kind { homogeneous, per_level, explicit_table };

    static TreeSpec homogeneous(std::size_t b);
    /// `prefix[k]` children at depth k for k < prefix.size(), then `tail`.
    static TreeSpec per_level(std::vector<std::size_t> prefix, std::size_t tail);
    /// `parents[i]` is the parent of table vertex i (nullopt for the root).
    /// Every table vertex below the deepest table level must have a child in
    /// the table; vertices on the deepest level receive `tail` children.
    static TreeSpec explicit_table(std::vector<std::optional<std::size_t>> parents,
                                   std::size_t tail);

    Kind kind() const noexcept { return kind_; }
    std::size_t tail_branching() const noexcept { return tail_; }
    /// First depth from which the tail branching applies.
    std::size_t prefix_depth() const noexcept;
    /// True when all vertices of a given depth have the same child count.
    bool level_regular() const noexcept { return kind_ != Kind::explicit_table; }

    /// Number of vertices at depth n on the infinite tree (as a double, since
    /// it grows geometrically).
    double level_size(std::size_t n) const;

    /// Per-level branching for level-regular kinds.
    std::size_t branching_at_depth(std::size_t depth) const;

    const std::vector<std::size_t>& prefix() const noexcept { return prefix_; }
    /// Explicit kind: child counts of the table vertices above the deepest
    /// table level, in breadth-first order.
    const std::vector<std::size_t>& table_child_counts() const noexcept { return table_counts_; }

    std::string describe() const;

    bool operator==(const TreeSpec&) const = default;

private:
    TreeSpec() = default;

    Kind kind_ = Kind::homogeneous;
    std::size_t tail_ = 1;
    std::vector<std::size_t> prefix_;
    std::vector<std::size_t> table_counts_;
    std::vector<std::size_t> table_levels_;
};

/// All vertices of depth <= D of the tree described by a TreeSpec.
///
/// Ids are breadth-first: the root is 0, every parent precedes its children,
/// and the children of a vertex are consecutive ids. Ids of vertices of depth
/// <= D do not depend on D.
class TruncatedTree {
public:
    static constexpr VertexId no_parent = static_cast<VertexId>(-1);

    const TreeSpec& spec() const noexcept { return spec_; }
    std::size_t depth_limit() const noexcept { return depth_limit_; }
    std::size_t size() const noexcept { return parent_.size(); }

    std::optional<VertexId> parent(VertexId v) const;
    std::ranges::iota_view<VertexId, VertexId> children(VertexId v) const;
    std::size_t depth(VertexId v) const;

    /// Strict ancestors, nearest first.
    std::vector<VertexId> ancestors(VertexId v) const;
    /// v and its descendants within the truncation, in id order.
    std::vector<VertexId> sector_vertices(VertexId v) const;
    /// Strict: u lies on the root-to-v path and u != v.
    bool is_ancestor(VertexId u, VertexId v) const;

    /// Ids of depth n occupy [level_begin(n), level_begin(n + 1)).
    VertexId level_begin(std::size_t n) const;
    std::vector<std::size_t> level_sizes() const;

    VertexPath path_of(VertexId v) const;
    std::optional<VertexId> find(const VertexPath& path) const;

    // Raw arrays for the kernels; parent of the root is `no_parent`.
    const std::vector<VertexId>& parent_array() const noexcept { return parent_; }
    const std::vector<VertexId>& first_child_array() const noexcept { return first_child_; }
    const std::vector<std::uint32_t>& child_count_array() const noexcept { return child_count_; }
    const std::vector<std::uint32_t>& depth_array() const noexcept { return depth_; }

    /// Same vertex set and parent structure.
    bool same_shape(const TruncatedTree& other) const noexcept;

private:
    friend std::shared_ptr<const TruncatedTree> build_truncation(const TreeSpec&, std::size_t);

    void check(VertexId v) const;

    TreeSpec spec_ = TreeSpec::homogeneous(1);
    std::size_t depth_limit_ = 0;
    std::vector<VertexId> parent_;
    std::vector<VertexId> first_child_;
    std::vector<std::uint32_t> child_count_;
    std::vector<std::uint32_t> depth_;
    std::vector<VertexId> level_begin_;
};

using TreePtr = std::shared_ptr<const TruncatedTree>;

/// Hard cap on realized vertices; larger requests throw std::length_error.
inline constexpr std::size_t max_truncation_size = std::size_t{1} << 26;

TreePtr build_truncation(const TreeSpec& spec, std::size_t depth_limit);

}  // namespace arbor
