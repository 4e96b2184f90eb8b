#include "partcat/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace partcat {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(static_cast<size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(b)] = a;
  }
};

}  // namespace

PartitionDiagram PartitionDiagram::of(int bottom, int top, SetPartition parts) {
  if (bottom < 0 || top < 0) throw std::invalid_argument("negative row size");
  if (parts.ground_size != bottom + top) {
    throw std::invalid_argument("partition ground size must be bottom + top");
  }
  PartitionDiagram d;
  d.bottom = bottom;
  d.top = top;
  d.parts = std::move(parts);
  return d;
}

PartitionDiagram PartitionDiagram::of_blocks(int bottom, int top,
                                             std::vector<std::vector<int>> blocks) {
  return of(bottom, top, SetPartition::of(bottom + top, std::move(blocks)));
}

PartitionDiagram PartitionDiagram::identity(int k) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(k));
  for (int i = 1; i <= k; ++i) blocks.push_back({i, k + i});
  return of_blocks(k, k, std::move(blocks));
}

PartitionDiagram PartitionDiagram::empty() { return of_blocks(0, 0, {}); }

std::string PartitionDiagram::to_string() const {
  std::ostringstream out;
  out << "P(" << bottom << "->" << top << ")[";
  for (size_t i = 0; i < parts.blocks.size(); ++i) {
    if (i) out << ',';
    out << '{';
    for (size_t j = 0; j < parts.blocks[i].size(); ++j) {
      if (j) out << ',';
      int v = parts.blocks[i][j];
      if (v <= bottom) {
        out << v;
      } else {
        out << (v - bottom) << '\'';
      }
    }
    out << '}';
  }
  out << ']';
  return out.str();
}

ComposeResult compose_diagrams(const PartitionDiagram& d2, const PartitionDiagram& d1) {
  if (d1.top != d2.bottom) {
    throw type_mismatch_error("composition type mismatch: " + std::to_string(d1.top) +
                              " vs " + std::to_string(d2.bottom));
  }
  const int k = d1.bottom, mid = d1.top, m = d2.top;
  // node layout: bottom 0..k-1, middle k..k+mid-1, top k+mid..k+mid+m-1
  UnionFind uf(k + mid + m);
  auto d1_node = [&](int v) { return v - 1; };      // d1 bottom and top vertices
  auto d2_node = [&](int v) { return k + v - 1; };  // d2 rows sit above d1's bottom
  for (const auto& b : d1.parts.blocks) {
    for (size_t i = 1; i < b.size(); ++i) uf.unite(d1_node(b[0]), d1_node(b[i]));
  }
  for (const auto& b : d2.parts.blocks) {
    for (size_t i = 1; i < b.size(); ++i) uf.unite(d2_node(b[0]), d2_node(b[i]));
  }
  // collect components over surviving vertices
  std::vector<std::vector<int>> by_root(static_cast<size_t>(k + mid + m));
  for (int v = 1; v <= k; ++v) by_root[static_cast<size_t>(uf.find(v - 1))].push_back(v);
  for (int j = 1; j <= m; ++j) {
    by_root[static_cast<size_t>(uf.find(k + mid + j - 1))].push_back(k + j);
  }
  std::vector<char> root_touched(static_cast<size_t>(k + mid + m), 0);
  for (int v = 0; v < k; ++v) root_touched[static_cast<size_t>(uf.find(v))] = 1;
  for (int v = k + mid; v < k + mid + m; ++v) root_touched[static_cast<size_t>(uf.find(v))] = 1;
  int beta = 0;
  for (int v = k; v < k + mid; ++v) {
    int r = uf.find(v);
    if (!root_touched[static_cast<size_t>(r)]) {
      root_touched[static_cast<size_t>(r)] = 1;  // count each middle-only component once
      ++beta;
    }
  }
  std::vector<std::vector<int>> blocks;
  for (auto& verts : by_root) {
    if (!verts.empty()) blocks.push_back(std::move(verts));
  }
  ComposeResult result;
  result.beta = beta;
  result.star = PartitionDiagram::of_blocks(k, m, std::move(blocks));
  return result;
}

PartitionDiagram tensor_diagrams(const PartitionDiagram& d1, const PartitionDiagram& d2) {
  const int k1 = d1.bottom, l1 = d1.top, k2 = d2.bottom, l2 = d2.top;
  auto map1 = [&](int v) { return v <= k1 ? v : v + k2; };
  auto map2 = [&](int v) { return v <= k2 ? k1 + v : v + k1 + l1; };
  std::vector<std::vector<int>> blocks;
  for (const auto& b : d1.parts.blocks) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int v : b) nb.push_back(map1(v));
    blocks.push_back(std::move(nb));
  }
  for (const auto& b : d2.parts.blocks) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int v : b) nb.push_back(map2(v));
    blocks.push_back(std::move(nb));
  }
  return PartitionDiagram::of_blocks(k1 + k2, l1 + l2, std::move(blocks));
}

PartitionDiagram flip(const PartitionDiagram& d) {
  auto map = [&](int v) { return v <= d.bottom ? d.top + v : v - d.bottom; };
  std::vector<std::vector<int>> blocks;
  for (const auto& b : d.parts.blocks) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int v : b) nb.push_back(map(v));
    blocks.push_back(std::move(nb));
  }
  return PartitionDiagram::of_blocks(d.top, d.bottom, std::move(blocks));
}

PartitionDiagram permutation_diagram(const std::vector<int>& sigma) {
  const int k = static_cast<int>(sigma.size());
  std::vector<char> hit(static_cast<size_t>(k) + 1, 0);
  for (int v : sigma) {
    if (v < 1 || v > k || hit[static_cast<size_t>(v)]) {
      throw std::invalid_argument("not a permutation");
    }
    hit[static_cast<size_t>(v)] = 1;
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(k));
  for (int m = 1; m <= k; ++m) blocks.push_back({m, k + sigma[static_cast<size_t>(m - 1)]});
  return PartitionDiagram::of_blocks(k, k, std::move(blocks));
}

PartitionDiagram s_i(int k, int i) {
  if (i < 1 || i >= k) throw std::invalid_argument("transposition index out of range");
  std::vector<int> sigma(static_cast<size_t>(k));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::swap(sigma[static_cast<size_t>(i - 1)], sigma[static_cast<size_t>(i)]);
  return permutation_diagram(sigma);
}

PartitionDiagram crosscap(int n) {
  if (n < 1) throw std::invalid_argument("crosscap needs n >= 1");
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) blocks.push_back({i, n + i});
  return PartitionDiagram::of_blocks(2 * n, 0, std::move(blocks));
}

PartitionDiagram bend(const PartitionDiagram& d) {
  const int k = d.bottom, l = d.top;
  auto map = [&](int v) { return v <= k ? v : k + l + 1 - (v - k); };
  std::vector<std::vector<int>> blocks;
  for (const auto& b : d.parts.blocks) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int v : b) nb.push_back(map(v));
    blocks.push_back(std::move(nb));
  }
  return PartitionDiagram::of_blocks(k + l, 0, std::move(blocks));
}

PartitionDiagram unbend(const PartitionDiagram& d, int top_count) {
  if (d.top != 0) throw type_mismatch_error("unbend expects a diagram of type m -> 0");
  if (top_count < 0 || top_count > d.bottom) {
    throw type_mismatch_error("unbend split exceeds vertex count");
  }
  const int k = d.bottom - top_count, l = top_count;
  auto map = [&](int v) { return v <= k ? v : k + (k + l + 1 - v); };
  std::vector<std::vector<int>> blocks;
  for (const auto& b : d.parts.blocks) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int v : b) nb.push_back(map(v));
    blocks.push_back(std::move(nb));
  }
  return PartitionDiagram::of_blocks(k, l, std::move(blocks));
}

PartitionDiagram gen_mu() { return PartitionDiagram::of_blocks(2, 1, {{1, 2, 3}}); }

PartitionDiagram gen_delta() { return PartitionDiagram::of_blocks(1, 2, {{1, 2, 3}}); }

PartitionDiagram gen_eps() { return PartitionDiagram::of_blocks(1, 0, {{1}}); }

PartitionDiagram gen_eta() { return PartitionDiagram::of_blocks(0, 1, {{1}}); }

PartitionDiagram gen_s() { return PartitionDiagram::of_blocks(2, 2, {{1, 4}, {2, 3}}); }

}  // namespace partcat
