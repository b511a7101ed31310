#include "riesz/ultrametric.hpp"

#include <cmath>
#include <functional>

#include "doctest.h"
#include "riesz/oracle.hpp"
#include "riesz/rng.hpp"
#include "test_support.hpp"

using namespace riesz;

TEST_CASE("six-taxa fixture parses to the expected metric") {
  const UltrametricTree t = testsupport::six_taxa_tree();
  REQUIRE(t.leaf_count() == 6);
  const MetricInstance m = tree_to_metric(t);
  CHECK(m.labels() == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
  CHECK(m.dist(0, 1) == doctest::Approx(7.0));   // a-b
  CHECK(m.dist(2, 3) == doctest::Approx(8.0));   // c-d
  CHECK(m.dist(0, 2) == doctest::Approx(11.0));  // across the top
  CHECK(m.dist(4, 5) == doctest::Approx(11.0));  // e-f
  CHECK(validate_metric(m).valid());
  CHECK(check_ultrametricity(m).ultrametric);
}

TEST_CASE("degenerate trees") {
  const UltrametricTree single = parse_tree_json(R"({"leaf": "x"})");
  CHECK(single.leaf_count() == 1);
  CHECK(tree_to_metric(single).size() == 1);

  const UltrametricTree cherry = parse_tree_json(
      R"({"height": 1, "children": [{"leaf": "x"}, {"leaf": "y"}]})");
  CHECK(tree_to_metric(cherry).dist(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("star trees give a single cross distance") {
  const UltrametricTree star = parse_tree_json(
      R"({"height": 2, "children": [{"leaf": "a"}, {"leaf": "b"}, {"leaf": "c"}, {"leaf": "d"}]})");
  const MetricInstance m = tree_to_metric(star);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(m.dist(i, j) == doctest::Approx(4.0));
}

TEST_CASE("tree validation rejects malformed input") {
  CHECK_THROWS_AS(parse_tree_json(R"({"height": 1})"), InputError);
  CHECK_THROWS_AS(parse_tree_json(R"({"height": 1, "children": [{"leaf": "x"}]})"),
                  InputError);  // one child
  CHECK_THROWS_AS(
      parse_tree_json(
          R"({"height": 0, "children": [{"leaf": "x"}, {"leaf": "y"}]})"),
      InputError);  // zero height
  CHECK_THROWS_AS(
      parse_tree_json(
          R"({"height": 1, "children": [{"leaf": "x"}, {"leaf": "x"}]})"),
      InputError);  // duplicate labels
  // child above parent
  CHECK_THROWS_AS(parse_tree_json(R"({"height": 1, "children": [
      {"height": 2, "children": [{"leaf": "x"}, {"leaf": "y"}]}, {"leaf": "z"}]})"),
                  InputError);
  CHECK_THROWS_AS(parse_tree_json("[1,2]"), InputError);
  CHECK_THROWS_AS(parse_tree_json("{not json"), InputError);
}

TEST_CASE("newick parsing recovers heights from branch lengths") {
  const UltrametricTree t =
      parse_newick("((a:3.5,b:3.5):2.0,(c:4,d:4):1.5,e:5.5,f:5.5);");
  const MetricInstance m = tree_to_metric(t);
  CHECK(m.dist(0, 1) == doctest::Approx(7.0));
  CHECK(m.dist(2, 3) == doctest::Approx(8.0));
  CHECK(m.dist(1, 5) == doctest::Approx(11.0));

  CHECK_THROWS_AS(parse_newick("((a:1,b:1):1,c:3);"), InputError);  // uneven depths
  CHECK_THROWS_AS(parse_newick("(a:1,b:1)"), InputError);           // missing ';'
  CHECK_THROWS_AS(parse_newick("(a,b);"), InputError);              // lengths required
}

TEST_CASE("parse_tree dispatches on the payload") {
  CHECK(parse_tree(testsupport::kSixTaxaJson).leaf_count() == 6);
  CHECK(parse_tree(" (a:1,b:1); ").leaf_count() == 2);
}

TEST_CASE("matrix round trip: build_tree_from_matrix inverts tree_to_metric") {
  const MetricInstance m = tree_to_metric(testsupport::six_taxa_tree());
  const UltrametricTree rebuilt = build_tree_from_matrix(m);
  const MetricInstance m2 = tree_to_metric(rebuilt);
  REQUIRE(m2.size() == m.size());
  // rebuilt leaf order may differ; compare by label
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      const int a = label_index(m2, m.labels()[i]);
      const int b = label_index(m2, m.labels()[j]);
      CHECK(m2.dist(a, b) == doctest::Approx(m.dist(i, j)).epsilon(1e-9));
    }
  // the fixture's three defining heights
  std::vector<double> heights;
  for (int id = 0; id < rebuilt.node_count(); ++id)
    if (!rebuilt.node(id).is_leaf()) heights.push_back(rebuilt.node(id).height);
  std::sort(heights.begin(), heights.end());
  REQUIRE(heights.size() == 5);  // binary merge tree over six leaves
  CHECK(heights.front() == doctest::Approx(3.5));
  CHECK(heights[1] == doctest::Approx(4.0));
  CHECK(heights.back() == doctest::Approx(5.5));
}

TEST_CASE("matrix round trip on random trees") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = rng.range_int(2, 10);
    const UltrametricTree t = testsupport::random_binary_tree(rng, n);
    const MetricInstance m = tree_to_metric(t);
    const MetricInstance m2 = tree_to_metric(build_tree_from_matrix(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int a = label_index(m2, m.labels()[i]);
        const int b = label_index(m2, m.labels()[j]);
        CHECK((close_rel(m2.dist(a, b), m.dist(i, j)) ||
               (i == j && m2.dist(a, b) == 0.0)));
      }
  }
}

TEST_CASE("two-point matrix becomes a cherry at half the distance") {
  const MetricInstance m({"x", "y"}, {0, 5, 5, 0});
  const UltrametricTree t = build_tree_from_matrix(m);
  REQUIRE(t.leaf_count() == 2);
  CHECK(t.node(t.root()).height == doctest::Approx(2.5));
}

TEST_CASE("non-ultrametric matrices are rejected with the triple") {
  const MetricInstance bad({"x", "y", "z"},
                           {0, 1, 2, 1, 0, 2.5, 2, 2.5, 0});
  CHECK_THROWS_WITH_AS(build_tree_from_matrix(bad),
                       doctest::Contains("x, y, z"), InputError);
}

TEST_CASE("binarize: identity on binary trees, metric-preserving on multiway") {
  SplitMix64 rng(131);
  const UltrametricTree already = testsupport::random_binary_tree(rng, 9);
  const UltrametricTree combed = binarize(already);
  CHECK(combed.node_count() == already.node_count());
  CHECK(tree_to_metric(combed).flat() == tree_to_metric(already).flat());

  const UltrametricTree star = parse_tree_json(
      R"({"height": 2, "children": [{"leaf": "a"}, {"leaf": "b"}, {"leaf": "c"}, {"leaf": "d"}]})");
  const UltrametricTree bstar = binarize(star);
  int internal = 0;
  for (int id = 0; id < bstar.node_count(); ++id) {
    if (bstar.node(id).is_leaf()) continue;
    ++internal;
    CHECK(bstar.node(id).children.size() == 2);
    CHECK(bstar.node(id).height == doctest::Approx(2.0));
  }
  CHECK(internal == 3);
  CHECK(tree_to_metric(bstar).flat() == tree_to_metric(star).flat());

  const UltrametricTree six = testsupport::six_taxa_tree();
  CHECK(tree_to_metric(binarize(six)).flat() == tree_to_metric(six).flat());
}

TEST_CASE("binarize preserves the metric of random multiway trees") {
  SplitMix64 rng(137);
  for (int trial = 0; trial < 8; ++trial) {
    // random merge tree where each step absorbs 2..4 clusters at once
    const int n = 10;
    std::vector<TreeNode> arena(n);
    std::vector<int> clusters(n);
    for (int i = 0; i < n; ++i) {
      arena[i].label = "t" + std::to_string(i);
      clusters[i] = i;
    }
    double h = 0.0;
    while (clusters.size() > 1) {
      const int take =
          std::min<int>(static_cast<int>(clusters.size()), rng.range_int(2, 4));
      h += rng.range_real(0.2, 1.0);
      TreeNode parent;
      parent.height = h;
      for (int i = 0; i < take; ++i) {
        const int pos = rng.range_int(0, static_cast<int>(clusters.size()) - 1);
        parent.children.push_back(clusters[pos]);
        clusters.erase(clusters.begin() + pos);
      }
      arena.push_back(parent);
      clusters.push_back(static_cast<int>(arena.size()) - 1);
    }
    const UltrametricTree t =
        UltrametricTree::from_nodes(std::move(arena), clusters[0]);
    CHECK(tree_to_metric(binarize(t)).flat() == tree_to_metric(t).flat());
  }
}

TEST_CASE("solver reproduces the worked six-taxa example") {
  const UltrametricTree t = testsupport::six_taxa_tree();
  const SolveResult r = solve_ultrametric(t, 3, Exponent(1));
  CHECK(r.energy == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
  // lexicographically smallest optimum: one leaf from each top-level group
  CHECK(r.subset.indices() == std::vector<int>{0, 2, 4});
  // never both halves of a cherry
  CHECK_FALSE(testsupport::contains_pair(r.subset.indices(), 0, 1));
  CHECK_FALSE(testsupport::contains_pair(r.subset.indices(), 2, 3));
}

TEST_CASE("solver edge cases") {
  const UltrametricTree t = testsupport::six_taxa_tree();
  CHECK(solve_ultrametric(t, 1, Exponent(2)).energy == 0.0);
  CHECK(solve_ultrametric(t, 1, Exponent(2)).subset.size() == 1);
  CHECK(solve_ultrametric(t, 6, Exponent(1)).subset.indices() ==
        std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS(solve_ultrametric(t, 0, Exponent(1)), InputError);
  CHECK_THROWS_AS(solve_ultrametric(t, 7, Exponent(1)), InputError);

  const UltrametricTree single = parse_tree_json(R"({"leaf": "x"})");
  CHECK(solve_ultrametric(single, 1, Exponent(1)).energy == 0.0);
}

TEST_CASE("solver matches brute force on random trees") {
  SplitMix64 rng(151);
  const double exponents[] = {0.5, 1.0, 2.0, 4.0};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.range_int(2, 12);
    const int k = rng.range_int(1, std::min(n, 6));
    const Exponent s(exponents[trial % 4]);
    const UltrametricTree t = testsupport::random_binary_tree(rng, n);
    const MetricInstance m = tree_to_metric(t);
    const SolveResult dp = solve_ultrametric(t, k, s);
    const OracleResult oracle = brute_force_riesz(m, k, s);
    CHECK(close_rel(dp.energy, oracle.optimum));
    // reconstruction consistency: the witness really has the reported energy
    CHECK((close_rel(riesz_energy(m, dp.subset, s), dp.energy) ||
           (dp.energy == 0.0 && riesz_energy(m, dp.subset, s) == 0.0)));
    // and the witness is one of the oracle's minimizers
    const auto& ws = oracle.witnesses;
    CHECK(std::find(ws.begin(), ws.end(), dp.subset.indices()) != ws.end());
  }
}

TEST_CASE("table cells are monotone in t and infeasible cells stay infinite") {
  SplitMix64 rng(171);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.range_int(2, 10);
    const int k = std::min(n + 2, 6);  // deliberately above some subtree sizes
    const UltrametricTree t = testsupport::random_binary_tree(rng, n);
    const SolveResult r = solve_ultrametric(t, std::min(n, k), Exponent(1.5));
    for (const auto& row : r.table.values)
      for (std::size_t tt = 1; tt < row.size(); ++tt)
        if (std::isfinite(row[tt])) CHECK(row[tt] >= row[tt - 1] - 1e-12);
    // leaves can host at most one point
    for (int id = 0; id < r.binarized.node_count(); ++id)
      if (r.binarized.node(id).is_leaf() && r.table.k >= 2)
        CHECK(std::isinf(r.table.values[id][2]));
  }
}

TEST_CASE("cross-term identity on the fixture root") {
  const UltrametricTree t = testsupport::six_taxa_tree();
  const CrossTermCheck one = cross_term_check(t, Subset({0}), Subset({2}), Exponent(1));
  CHECK(one.direct == doctest::Approx(1.0 / 11.0));
  CHECK(one.decomposed == doctest::Approx(1.0 / 11.0));

  const CrossTermCheck empty = cross_term_check(t, Subset(std::vector<int>{}), Subset({2, 3}), Exponent(1));
  CHECK(empty.direct == doctest::Approx(empty.decomposed));
  CHECK(empty.direct == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("cross-term identity on random sibling splits") {
  SplitMix64 rng(191);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.range_int(4, 12);
    const UltrametricTree t = testsupport::random_binary_tree(rng, n);
    // pick the root's two child subtrees and random subsets inside each
    const TreeNode& root = t.node(t.root());
    std::vector<int> left, right;
    std::vector<int> leaf_pos(t.node_count(), -1);
    for (int p = 0; p < t.leaf_count(); ++p) leaf_pos[t.leaf_order()[p]] = p;
    std::function<void(int, std::vector<int>&)> collect = [&](int u, std::vector<int>& out) {
      if (t.node(u).is_leaf()) {
        out.push_back(leaf_pos[u]);
        return;
      }
      for (int c : t.node(u).children) collect(c, out);
    };
    collect(root.children[0], left);
    collect(root.children[1], right);
    std::vector<int> a, b;
    for (int x : left)
      if (rng.uniform01() < 0.6) a.push_back(x);
    for (int x : right)
      if (rng.uniform01() < 0.6) b.push_back(x);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const CrossTermCheck c =
        cross_term_check(t, Subset(a), Subset(b), Exponent(rng.range_real(0.5, 3.0)));
    CHECK(c.abs_diff <= 1e-9 * std::max(1.0, std::abs(c.direct)));
  }
}

TEST_CASE("cross-term check rejects subsets that straddle subtrees") {
  const UltrametricTree t = testsupport::six_taxa_tree();
  CHECK_THROWS_AS(cross_term_check(t, Subset({0, 2}), Subset({4}), Exponent(1)),
                  InputError);
  CHECK_THROWS_AS(cross_term_check(t, Subset({0}), Subset({0}), Exponent(1)),
                  InputError);
}

TEST_CASE("large exponents recover max-min dispersion optima") {
  SplitMix64 rng(211);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = rng.range_int(3, 10);
    const int k = rng.range_int(2, std::min(n, 5));
    const UltrametricTree t = testsupport::random_quantized_tree(rng, n);
    const MetricInstance m = tree_to_metric(t);
    const SolveResult dp = solve_ultrametric(t, k, Exponent(64));
    const OracleResult best = brute_force_mpd(m, k);
    CHECK(mpd(m, dp.subset) == doctest::Approx(best.optimum));
  }
}
