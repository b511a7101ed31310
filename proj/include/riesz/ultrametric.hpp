#pragma once

#include <string>
#include <vector>

#include "riesz/metric.hpp"

namespace riesz {

// Arena node. Leaves carry a label; internal nodes carry a height and at
// least two children. Leaf-to-leaf distance is twice the height of the
// lowest common ancestor.
struct TreeNode {
  double height = 0.0;
  std::string label;
  std::vector<int> children;
  bool is_leaf() const { return children.empty(); }
};

class UltrametricTree {
 public:
  // Validates shape (every non-root node has exactly one parent), positive
  // internal heights nondecreasing toward the root, >= 2 children per
  // internal node, and unique leaf labels.
  static UltrametricTree from_nodes(std::vector<TreeNode> nodes, int root);

  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int id) const { return nodes_[id]; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  // Node ids of the leaves in depth-first order; this order defines the
  // point indices used by tree_to_metric and solver subsets.
  const std::vector<int>& leaf_order() const { return leaves_; }
  std::vector<std::string> leaf_labels() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = -1;
  std::vector<int> leaves_;
};

// Parses the JSON tree format ({"height": h, "children": [...]} / {"leaf":
// "name"}) or Newick with branch lengths (trailing semicolon); dispatches on
// the leading character. Newick trees must have all leaves equidistant from
// the root within 1e-9.
UltrametricTree parse_tree(const std::string& text);
UltrametricTree parse_tree_json(const std::string& text);
UltrametricTree parse_newick(const std::string& text);
std::string tree_to_json(const UltrametricTree& t);

// Full leaf-pair distance matrix, points ordered by leaf_order().
MetricInstance tree_to_metric(const UltrametricTree& t);

// Inverse of tree_to_metric for ultrametric matrices, by iterative merging of
// the closest pair of clusters. Rejects non-ultrametric input (three-point
// check) with the witnessing triple in the error message.
UltrametricTree build_tree_from_matrix(const MetricInstance& m, double rel_tol = kRelTol);

// Every multiway node replaced by a left-combed chain of binary nodes at the
// original height. Leaf order and the induced metric are unchanged.
UltrametricTree binarize(const UltrametricTree& t);

// Per-node minimum-energy table. values[id][t] is the least energy of a
// t-subset of leaves below node id; split[id][t] is the count routed to the
// first child at the chosen optimum (-1 where not applicable).
struct EnergyTable {
  int k = 0;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<int>> split;
};

struct SolveResult {
  double energy = 0.0;
  Subset subset;             // leaf indices of the input tree's leaf order
  EnergyTable table;         // indexed by nodes of `binarized`
  UltrametricTree binarized;
};

// Exact minimum Riesz s-energy k-subset on the tree, O(n k^2) time and
// O(n k) space. Multiway trees are binarized internally. Heights are
// normalized so the smallest leaf distance is 1 before exponentiation and the
// result scaled back, which keeps the split comparisons stable at large s.
// Equal-energy splits resolve toward the first (leftmost) child, which makes
// the reconstructed witness the lexicographically smallest in the common case
// of interchangeable leaves.
SolveResult solve_ultrametric(const UltrametricTree& t, int k, Exponent s);

struct CrossTermCheck {
  double direct = 0.0;      // energy of the union, evaluated pairwise
  double decomposed = 0.0;  // E(A) + E(B) + |A||B| * cross^-s
  double abs_diff = 0.0;
};

// Both evaluations of the union energy for subsets A, B drawn from sibling
// subtrees of a common internal node. Indices refer to leaf_order().
CrossTermCheck cross_term_check(const UltrametricTree& t, const Subset& a,
                                const Subset& b, Exponent s);

}  // namespace riesz
