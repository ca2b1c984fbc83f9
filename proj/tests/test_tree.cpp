#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "arbor/tree.hpp"

using namespace arbor;

namespace {

/// Child paths generated level by level from the branching rule alone.
std::vector<VertexPath> enumerate_paths(const TreeSpec& spec, std::size_t depth) {
    std::vector<VertexPath> all{{}};
    std::vector<VertexPath> level{{}};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<VertexPath> next;
        for (const auto& p : level) {
            for (std::size_t c = 0; c < spec.branching_at_depth(d); ++c) {
                auto q = p;
                q.push_back(c);
                next.push_back(q);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return all;
}

}  // namespace

TEST_CASE("level sizes of the basic tree kinds") {
    CHECK(build_truncation(TreeSpec::homogeneous(2), 3)->level_sizes() == std::vector<std::size_t>{1, 2, 4, 8});
    CHECK(build_truncation(TreeSpec::per_level({3}, 2), 2)->level_sizes() == std::vector<std::size_t>{1, 3, 6});
    CHECK(build_truncation(TreeSpec::homogeneous(1), 5)->size() == 6);
    CHECK(build_truncation(TreeSpec::homogeneous(3), 0)->size() == 1);
    CHECK(TreeSpec::per_level({3, 1}, 2).level_size(4) == doctest::Approx(12.0));
}

TEST_CASE("breadth-first ids agree with an independent path enumeration") {
    for (const auto& spec : {TreeSpec::homogeneous(2), TreeSpec::homogeneous(3), TreeSpec::per_level({3}, 2),
                             TreeSpec::per_level({1, 4}, 2)}) {
        const auto tree = build_truncation(spec, 4);
        const auto paths = enumerate_paths(spec, 4);
        REQUIRE(tree->size() == paths.size());
        for (VertexId v = 0; v < tree->size(); ++v) {
            CHECK(tree->path_of(v) == paths[v]);
            CHECK(tree->find(paths[v]) == v);
        }
    }
}

TEST_CASE("structural invariants of a truncation") {
    const auto tree = build_truncation(TreeSpec::per_level({3, 1}, 2), 5);
    for (VertexId v = 1; v < tree->size(); ++v) {
        const VertexId p = *tree->parent(v);
        CHECK(p < v);
        CHECK(tree->depth(v) == tree->depth(p) + 1);
        const auto ch = tree->children(p);
        CHECK(std::ranges::find(ch, v) != ch.end());
    }
    CHECK_FALSE(tree->parent(0).has_value());

    // Each sector meets each level in a contiguous id range.
    for (VertexId v = 0; v < tree->size(); ++v) {
        std::map<std::size_t, std::vector<VertexId>> by_level;
        for (VertexId u : tree->sector_vertices(v)) {
            CHECK((u == v || tree->is_ancestor(v, u)));
            by_level[tree->depth(u)].push_back(u);
        }
        for (const auto& [d, ids] : by_level) CHECK(ids.back() - ids.front() + 1 == ids.size());
    }

    const auto anc = tree->ancestors(tree->size() - 1);
    CHECK(anc.size() == 5);
    CHECK(anc.back() == 0);
    CHECK(std::is_sorted(anc.rbegin(), anc.rend()));
}

TEST_CASE("ids are stable across truncation depths") {
    const auto spec = TreeSpec::explicit_table({std::nullopt, 0, 0, 1, 1, 2}, 2);
    const auto small = build_truncation(spec, 2);
    const auto big = build_truncation(spec, 5);
    for (VertexId v = 0; v < small->size(); ++v) {
        CHECK(small->path_of(v) == big->path_of(v));
        CHECK(small->parent_array()[v] == big->parent_array()[v]);
    }
}

TEST_CASE("explicit tables") {
    // Children sorted by table id; vertex 2 has a single child.
    const auto spec = TreeSpec::explicit_table({std::nullopt, 0, 0, 1, 1, 2}, 3);
    const auto t = build_truncation(spec, 3);
    CHECK(t->level_sizes() == std::vector<std::size_t>{1, 2, 3, 9});
    CHECK(spec.tail_branching() == 3);
    CHECK_FALSE(spec.level_regular());
    CHECK(spec.level_size(3) == doctest::Approx(9.0));

    // Table ids need not be breadth-first.
    const auto shuffled = TreeSpec::explicit_table({2, 2, std::nullopt}, 1);
    CHECK(build_truncation(shuffled, 3)->level_sizes() == std::vector<std::size_t>{1, 2, 2, 2});
}

TEST_CASE("invalid trees are rejected") {
    CHECK_THROWS_WITH_AS(TreeSpec::homogeneous(0), doctest::Contains("terminal vertex forbidden"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(TreeSpec::per_level({2, 0}, 2), doctest::Contains("terminal vertex forbidden"),
                         std::invalid_argument);
    CHECK_THROWS_AS(TreeSpec::per_level({2}, 0), std::invalid_argument);
    // Vertex 2 is childless above the deepest table level.
    CHECK_THROWS_WITH_AS(TreeSpec::explicit_table({std::nullopt, 0, 0, 1}, 2),
                         doctest::Contains("terminal vertex forbidden"), std::invalid_argument);
    CHECK_THROWS_AS(TreeSpec::explicit_table({std::nullopt, std::nullopt}, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeSpec::explicit_table({1, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeSpec::explicit_table({std::nullopt, 5}, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeSpec::explicit_table({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_truncation(TreeSpec::homogeneous(2), 40), std::length_error);
    CHECK_THROWS_AS(build_truncation(TreeSpec::homogeneous(2), 2)->depth(7), std::out_of_range);
}

TEST_CASE("path formatting") {
    CHECK(format_path({}) == "o");
    CHECK(format_path({0, 1}) == "o.0.1");
    const auto t = build_truncation(TreeSpec::homogeneous(2), 2);
    CHECK_FALSE(t->find({2}).has_value());
    CHECK_FALSE(t->find({0, 0, 0}).has_value());
}
