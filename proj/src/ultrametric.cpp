#include "riesz/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace riesz {

namespace {

// Heights may come out of float arithmetic a hair below a child's height;
// accept within this relative slack and snap during construction.
constexpr double kHeightSlack = 1e-9;

}  // namespace

UltrametricTree UltrametricTree::from_nodes(std::vector<TreeNode> nodes, int root) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw InputError("tree has no nodes");
  if (root < 0 || root >= n) throw InputError("tree root out of range");

  std::vector<int> parent(n, -1);
  for (int u = 0; u < n; ++u) {
    const TreeNode& nd = nodes[u];
    if (!nd.is_leaf() && nd.children.size() < 2)
      throw InputError("internal node must have at least two children");
    for (int c : nd.children) {
      if (c < 0 || c >= n) throw InputError("child reference out of range");
      if (parent[c] != -1) throw InputError("node has two parents");
      parent[c] = u;
    }
  }
  for (int u = 0; u < n; ++u)
    if (u != root && parent[u] == -1)
      throw InputError("node unreachable from root");
  if (parent[root] != -1) throw InputError("root must not have a parent");

  UltrametricTree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;

  // Depth-first walk: collect leaves, check heights, snap float dust.
  std::set<std::string> seen_labels;
  std::function<void(int)> walk = [&](int u) {
    TreeNode& nd = t.nodes_[u];
    if (nd.is_leaf()) {
      if (nd.label.empty()) throw InputError("leaf without a label");
      if (!seen_labels.insert(nd.label).second)
        throw InputError("duplicate leaf label: " + nd.label);
      t.leaves_.push_back(u);
      return;
    }
    if (!(nd.height > 0.0))
      throw InputError("internal node height must be positive");
    for (int c : nd.children) {
      TreeNode& ch = t.nodes_[c];
      if (!ch.is_leaf()) {
        if (ch.height > nd.height * (1.0 + kHeightSlack))
          throw InputError("child height exceeds parent height");
        ch.height = std::min(ch.height, nd.height);
      }
      walk(c);
    }
  };
  walk(root);
  if (t.leaves_.empty()) throw InputError("tree has no leaves");
  return t;
}

std::vector<std::string> UltrametricTree::leaf_labels() const {
  std::vector<std::string> out;
  out.reserve(leaves_.size());
  for (int id : leaves_) out.push_back(nodes_[id].label);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

int build_from_json(const nlohmann::json& j, std::vector<TreeNode>& arena) {
  if (!j.is_object()) throw InputError("tree node must be a JSON object");
  TreeNode node;
  if (j.contains("leaf")) {
    if (!j["leaf"].is_string()) throw InputError("leaf name must be a string");
    node.label = j["leaf"].get<std::string>();
    arena.push_back(std::move(node));
    return static_cast<int>(arena.size()) - 1;
  }
  if (!j.contains("height") || !j.contains("children"))
    throw InputError("internal node needs \"height\" and \"children\"");
  if (!j["height"].is_number()) throw InputError("height must be a number");
  node.height = j["height"].get<double>();
  for (const auto& cj : j["children"])
    node.children.push_back(build_from_json(cj, arena));
  arena.push_back(std::move(node));
  return static_cast<int>(arena.size()) - 1;
}

struct NewickParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit NewickParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) throw InputError("unexpected end of Newick input");
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c)
      throw InputError(std::string("expected '") + c + "' in Newick input");
    ++pos;
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ',' || c == ')' || c == '(' || c == ':' || c == ';' ||
          std::isspace(static_cast<unsigned char>(c)))
        break;
      ++pos;
    }
    return text.substr(start, pos - start);
  }

  // Returns node id in `arena`; records edge length into `edge`.
  int subtree(std::vector<TreeNode>& arena, std::vector<double>& edge, bool is_root) {
    TreeNode node;
    if (peek() == '(') {
      ++pos;
      node.children.push_back(subtree(arena, edge, false));
      while (peek() == ',') {
        ++pos;
        node.children.push_back(subtree(arena, edge, false));
      }
      expect(')');
      name();  // internal labels permitted, ignored
    } else {
      node.label = name();
      if (node.label.empty()) throw InputError("empty leaf name in Newick input");
    }
    double len = 0.0;
    bool has_len = false;
    if (pos < text.size() && peek() == ':') {
      ++pos;
      skip_ws();
      std::size_t used = 0;
      try {
        len = std::stod(text.substr(pos), &used);
      } catch (const std::exception&) {
        throw InputError("bad branch length in Newick input");
      }
      pos += used;
      has_len = true;
    }
    if (!is_root && !has_len)
      throw InputError("Newick input requires branch lengths");
    arena.push_back(std::move(node));
    edge.push_back(len);
    return static_cast<int>(arena.size()) - 1;
  }
};

}  // namespace

UltrametricTree parse_tree_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("tree JSON parse error: ") + e.what());
  }
  std::vector<TreeNode> arena;
  const int root = build_from_json(j, arena);
  return UltrametricTree::from_nodes(std::move(arena), root);
}

UltrametricTree parse_newick(const std::string& text) {
  NewickParser p(text);
  std::vector<TreeNode> arena;
  std::vector<double> edge;
  const int root = p.subtree(arena, edge, true);
  p.skip_ws();
  if (p.pos >= text.size() || text[p.pos] != ';')
    throw InputError("Newick input must end with ';'");

  // Depth of each node from the root; all leaves must be equidistant.
  std::vector<double> depth(arena.size(), 0.0);
  std::function<void(int)> set_depth = [&](int u) {
    for (int c : arena[u].children) {
      depth[c] = depth[u] + edge[c];
      set_depth(c);
    }
  };
  set_depth(root);

  double leaf_depth = -1.0;
  for (std::size_t u = 0; u < arena.size(); ++u) {
    if (!arena[u].is_leaf()) continue;
    if (leaf_depth < 0.0) {
      leaf_depth = depth[u];
    } else if (!close_rel(leaf_depth, depth[u]) &&
               std::abs(leaf_depth - depth[u]) > kRelTol) {
      throw InputError("Newick tree is not ultrametric: leaf '" +
                       arena[u].label + "' has root distance " +
                       std::to_string(depth[u]) + ", expected " +
                       std::to_string(leaf_depth));
    }
  }
  for (std::size_t u = 0; u < arena.size(); ++u)
    if (!arena[u].is_leaf()) arena[u].height = leaf_depth - depth[u];
  return UltrametricTree::from_nodes(std::move(arena), root);
}

UltrametricTree parse_tree(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_tree_json(text);
    break;
  }
  return parse_newick(text);
}

namespace {

nlohmann::json node_to_json(const UltrametricTree& t, int id) {
  const TreeNode& nd = t.node(id);
  nlohmann::json j;
  if (nd.is_leaf()) {
    j["leaf"] = nd.label;
    return j;
  }
  j["height"] = nd.height;
  j["children"] = nlohmann::json::array();
  for (int c : nd.children) j["children"].push_back(node_to_json(t, c));
  return j;
}

}  // namespace

std::string tree_to_json(const UltrametricTree& t) {
  return node_to_json(t, t.root()).dump();
}

// ---------------------------------------------------------------------------
// Tree <-> metric

MetricInstance tree_to_metric(const UltrametricTree& t) {
  const int n = t.leaf_count();
  std::vector<int> leaf_pos(t.node_count(), -1);
  for (int p = 0; p < n; ++p) leaf_pos[t.leaf_order()[p]] = p;

  std::vector<double> flat(static_cast<std::size_t>(n) * n, 0.0);
  // At each internal node, pairs from distinct child subtrees meet there.
  std::function<std::vector<int>(int)> fill = [&](int u) -> std::vector<int> {
    const TreeNode& nd = t.node(u);
    if (nd.is_leaf()) return {leaf_pos[u]};
    std::vector<int> below;
    const double d = 2.0 * nd.height;
    for (int c : nd.children) {
      std::vector<int> part = fill(c);
      for (int a : below)
        for (int b : part) {
          flat[static_cast<std::size_t>(a) * n + b] = d;
          flat[static_cast<std::size_t>(b) * n + a] = d;
        }
      below.insert(below.end(), part.begin(), part.end());
    }
    return below;
  };
  fill(t.root());
  return MetricInstance(t.leaf_labels(), std::move(flat));
}

UltrametricTree build_tree_from_matrix(const MetricInstance& m, double rel_tol) {
  const UltrametricityReport rep = check_ultrametricity(m, rel_tol);
  if (!rep.ultrametric) {
    std::ostringstream os;
    os << "matrix is not ultrametric: triple (" << m.labels()[rep.i] << ", "
       << m.labels()[rep.j] << ", " << m.labels()[rep.k]
       << ") has unequal top two distances";
    throw InputError(os.str());
  }
  const int n = m.size();
  std::vector<TreeNode> arena(n);
  for (int i = 0; i < n; ++i) arena[i].label = m.labels()[i];
  if (n == 1) return UltrametricTree::from_nodes(std::move(arena), 0);

  // Active clusters: (arena node id, representative point). All cross-cluster
  // distances within an ultrametric agree, so one representative suffices.
  std::vector<std::pair<int, int>> clusters;
  clusters.reserve(n);
  for (int i = 0; i < n; ++i) clusters.emplace_back(i, i);

  while (clusters.size() > 1) {
    std::size_t bi = 0, bj = 1;
    double best = kInf;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = m.dist(clusters[i].second, clusters[j].second);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    TreeNode parent;
    parent.height = best / 2.0;
    const TreeNode& a = arena[clusters[bi].first];
    const TreeNode& b = arena[clusters[bj].first];
    if (!a.is_leaf()) parent.height = std::max(parent.height, a.height);
    if (!b.is_leaf()) parent.height = std::max(parent.height, b.height);
    parent.children = {clusters[bi].first, clusters[bj].first};
    arena.push_back(std::move(parent));
    clusters[bi] = {static_cast<int>(arena.size()) - 1, clusters[bi].second};
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return UltrametricTree::from_nodes(std::move(arena), clusters[0].first);
}

UltrametricTree binarize(const UltrametricTree& t) {
  std::vector<TreeNode> arena;
  std::function<int(int)> comb = [&](int u) -> int {
    const TreeNode& nd = t.node(u);
    if (nd.is_leaf()) {
      arena.push_back(nd);
      return static_cast<int>(arena.size()) - 1;
    }
    int acc = comb(nd.children[0]);
    for (std::size_t i = 1; i < nd.children.size(); ++i) {
      const int right = comb(nd.children[i]);
      TreeNode pair_node;
      pair_node.height = nd.height;
      pair_node.children = {acc, right};
      arena.push_back(std::move(pair_node));
      acc = static_cast<int>(arena.size()) - 1;
    }
    return acc;
  };
  const int root = comb(t.root());
  return UltrametricTree::from_nodes(std::move(arena), root);
}

// ---------------------------------------------------------------------------
// Dynamic program

SolveResult solve_ultrametric(const UltrametricTree& t, int k, Exponent s) {
  if (k < 1 || k > t.leaf_count())
    throw InputError("k must satisfy 1 <= k <= number of leaves");

  UltrametricTree bt = binarize(t);
  const int nodes = bt.node_count();

  // Normalize so the smallest cross distance is 1 (exponentiation stays
  // well-scaled at large s); energies are scaled back at the end.
  double min_dist = kInf;
  for (int u = 0; u < nodes; ++u)
    if (!bt.node(u).is_leaf()) min_dist = std::min(min_dist, 2.0 * bt.node(u).height);
  const bool has_internal = std::isfinite(min_dist);

  EnergyTable table;
  table.k = k;
  table.values.assign(nodes, {});
  table.split.assign(nodes, {});
  std::vector<int> leaves_below(nodes, 0);

  // Children precede parents in the binarize arena, so id order is postorder.
  for (int u = 0; u < nodes; ++u) {
    const TreeNode& nd = bt.node(u);
    auto& F = table.values[u];
    auto& S = table.split[u];
    F.assign(k + 1, kInf);
    S.assign(k + 1, -1);
    if (nd.is_leaf()) {
      leaves_below[u] = 1;
      F[0] = 0.0;
      if (k >= 1) F[1] = 0.0;
      continue;
    }
    const int v = nd.children[0], w = nd.children[1];
    leaves_below[u] = leaves_below[v] + leaves_below[w];
    const double cross = inv_power(2.0 * nd.height / min_dist, s.value());
    const int cap = std::min(k, leaves_below[u]);
    for (int tgt = 0; tgt <= cap; ++tgt) {
      const int lo = std::max(0, tgt - leaves_below[w]);
      const int hi = std::min(tgt, leaves_below[v]);
      // Descending keeps the first child's share maximal on ties.
      for (int tv = hi; tv >= lo; --tv) {
        const int tw = tgt - tv;
        const double cand = table.values[v][tv] + table.values[w][tw] +
                            static_cast<double>(tv) * tw * cross;
        if (cand < F[tgt]) {
          F[tgt] = cand;
          S[tgt] = tv;
        }
      }
    }
  }

  const int root = bt.root();
  const double back_scale =
      has_internal ? inv_power(min_dist, s.value()) : 1.0;
  for (auto& row : table.values)
    for (double& f : row)
      if (std::isfinite(f)) f *= back_scale;

  // Recover one optimal subset from the stored splits.
  std::vector<int> chosen;
  std::function<void(int, int)> pick = [&](int u, int tgt) {
    if (tgt == 0) return;
    const TreeNode& nd = bt.node(u);
    if (nd.is_leaf()) {
      chosen.push_back(u);
      return;
    }
    const int tv = table.split[u][tgt];
    pick(nd.children[0], tv);
    pick(nd.children[1], tgt - tv);
  };
  pick(root, k);

  // binarize preserves leaf order, so arena leaf ids map to input leaf
  // positions directly.
  std::vector<int> leaf_pos(nodes, -1);
  for (int p = 0; p < bt.leaf_count(); ++p) leaf_pos[bt.leaf_order()[p]] = p;
  std::vector<int> subset_idx;
  subset_idx.reserve(chosen.size());
  for (int id : chosen) subset_idx.push_back(leaf_pos[id]);
  std::sort(subset_idx.begin(), subset_idx.end());

  SolveResult result;
  result.energy = table.values[root][k];
  result.subset = Subset(std::move(subset_idx));
  result.table = std::move(table);
  result.binarized = std::move(bt);
  return result;
}

// ---------------------------------------------------------------------------
// Cross-term identity

namespace {

// Lowest node whose leaf set covers `need` (bitmask over leaf positions).
int covering_node(const UltrametricTree& t, const std::vector<std::uint64_t>& leaf_mask,
                  std::uint64_t need, int u) {
  while (true) {
    const TreeNode& nd = t.node(u);
    if (nd.is_leaf()) return u;
    int child_cover = -1;
    for (int c : nd.children) {
      if ((need & leaf_mask[c]) == need) {
        child_cover = c;
        break;
      }
    }
    if (child_cover < 0) return u;
    u = child_cover;
  }
}

}  // namespace

CrossTermCheck cross_term_check(const UltrametricTree& t, const Subset& a,
                                const Subset& b, Exponent s) {
  const int n = t.leaf_count();
  if (n > 64) throw InputError("cross_term_check supports at most 64 leaves");
  MetricInstance m = tree_to_metric(t);
  if ((!a.empty() && a.indices().back() >= n) ||
      (!b.empty() && b.indices().back() >= n))
    throw InputError("subset index out of range");

  auto mask_of = [](const Subset& sub) {
    std::uint64_t mask = 0;
    for (int i : sub.indices()) mask |= (1ULL << i);
    return mask;
  };
  const std::uint64_t ma = mask_of(a), mb = mask_of(b);
  if (ma & mb) throw InputError("subsets must be disjoint");

  CrossTermCheck out;
  if (a.empty() || b.empty()) {
    const Subset& only = a.empty() ? b : a;
    out.direct = riesz_energy(m, only, s);
    out.decomposed = out.direct;
    out.abs_diff = std::abs(out.direct - out.decomposed);
    return out;
  }

  // Leaf-set bitmask per node.
  std::vector<std::uint64_t> leaf_mask(t.node_count(), 0);
  std::vector<int> leaf_pos(t.node_count(), -1);
  for (int p = 0; p < n; ++p) leaf_pos[t.leaf_order()[p]] = p;
  std::function<void(int)> fill = [&](int u) {
    const TreeNode& nd = t.node(u);
    if (nd.is_leaf()) {
      leaf_mask[u] = 1ULL << leaf_pos[u];
      return;
    }
    for (int c : nd.children) {
      fill(c);
      leaf_mask[u] |= leaf_mask[c];
    }
  };
  fill(t.root());

  const int u = covering_node(t, leaf_mask, ma | mb, t.root());
  const TreeNode& nd = t.node(u);
  int child_a = -1, child_b = -1;
  for (int c : nd.children) {
    if ((ma & leaf_mask[c]) == ma) child_a = c;
    if ((mb & leaf_mask[c]) == mb) child_b = c;
  }
  if (child_a < 0 || child_b < 0 || child_a == child_b)
    throw InputError("subsets do not lie under sibling subtrees");

  std::vector<int> merged;
  merged.reserve(a.indices().size() + b.indices().size());
  std::merge(a.indices().begin(), a.indices().end(), b.indices().begin(),
             b.indices().end(), std::back_inserter(merged));
  out.direct = riesz_energy(m, Subset(std::move(merged)), s);
  const double cross = inv_power(2.0 * nd.height, s.value());
  out.decomposed = riesz_energy(m, a, s) + riesz_energy(m, b, s) +
                   static_cast<double>(a.size()) * b.size() * cross;
  out.abs_diff = std::abs(out.direct - out.decomposed);
  return out;
}

}  // namespace riesz
