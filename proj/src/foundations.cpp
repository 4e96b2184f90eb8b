#include "partcat/foundations.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace partcat {

SetPartition SetPartition::of(int ground_size, std::vector<std::vector<int>> blocks) {
  if (ground_size < 0) throw std::invalid_argument("negative ground size");
  std::vector<char> seen(static_cast<size_t>(ground_size) + 1, 0);
  int total = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    for (int v : b) {
      if (v < 1 || v > ground_size) throw std::invalid_argument("vertex out of range");
      if (seen[static_cast<size_t>(v)]) throw std::invalid_argument("duplicate vertex");
      seen[static_cast<size_t>(v)] = 1;
      ++total;
    }
    std::sort(b.begin(), b.end());
  }
  if (total != ground_size) throw std::invalid_argument("blocks do not cover the ground set");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  SetPartition p;
  p.ground_size = ground_size;
  p.blocks = std::move(blocks);
  return p;
}

SetPartition SetPartition::singletons(int ground_size) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(ground_size));
  for (int v = 1; v <= ground_size; ++v) blocks.push_back({v});
  return of(ground_size, std::move(blocks));
}

SetPartition SetPartition::from_labels(int ground_size, const std::vector<int>& label_of) {
  if (static_cast<int>(label_of.size()) != ground_size + 1) {
    throw std::invalid_argument("label vector must have ground_size + 1 entries");
  }
  std::map<int, std::vector<int>> by_label;
  for (int v = 1; v <= ground_size; ++v) by_label[label_of[static_cast<size_t>(v)]].push_back(v);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [label, verts] : by_label) blocks.push_back(std::move(verts));
  return of(ground_size, std::move(blocks));
}

int SetPartition::block_index_of(int v) const {
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return static_cast<int>(i);
  }
  throw std::invalid_argument("vertex not in partition");
}

std::vector<int> SetPartition::block_labels() const {
  std::vector<int> labels(static_cast<size_t>(ground_size) + 1, -1);
  for (size_t i = 0; i < blocks.size(); ++i) {
    for (int v : blocks[i]) labels[static_cast<size_t>(v)] = static_cast<int>(i);
  }
  return labels;
}

std::string SetPartition::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i) out << ',';
    out << '{';
    for (size_t j = 0; j < blocks[i].size(); ++j) {
      if (j) out << ',';
      out << blocks[i][j];
    }
    out << '}';
  }
  return out.str();
}

std::vector<SetPartition> enumerate_set_partitions(int m) {
  if (m < 0) throw std::invalid_argument("negative ground size");
  std::vector<SetPartition> out;
  // restricted growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1
  std::vector<int> rgs(static_cast<size_t>(std::max(m, 1)), 0);
  if (m == 0) {
    out.push_back(SetPartition::of(0, {}));
    return out;
  }
  auto emit = [&]() {
    std::vector<int> labels(static_cast<size_t>(m) + 1, 0);
    for (int v = 1; v <= m; ++v) labels[static_cast<size_t>(v)] = rgs[static_cast<size_t>(v - 1)];
    out.push_back(SetPartition::from_labels(m, labels));
  };
  // iterative lexicographic enumeration of restricted growth strings
  std::vector<int> prefix_max(static_cast<size_t>(m), 0);
  int i = 0;
  rgs[0] = 0;
  prefix_max[0] = 0;
  while (true) {
    if (i == m - 1) {
      emit();
      // backtrack to the rightmost position that can be incremented
      while (i > 0 && rgs[static_cast<size_t>(i)] == prefix_max[static_cast<size_t>(i - 1)] + 1) --i;
      if (i == 0) break;
      ++rgs[static_cast<size_t>(i)];
      prefix_max[static_cast<size_t>(i)] =
          std::max(prefix_max[static_cast<size_t>(i - 1)], rgs[static_cast<size_t>(i)]);
    } else {
      ++i;
      rgs[static_cast<size_t>(i)] = 0;
      prefix_max[static_cast<size_t>(i)] = prefix_max[static_cast<size_t>(i - 1)];
    }
  }
  return out;
}

BigInt stirling2(int m, int p) {
  if (m < 0 || p < 0) throw std::invalid_argument("negative argument");
  if (p > m) return 0;
  if (m == 0) return p == 0 ? 1 : 0;
  if (p == 0) return 0;
  // S(m,p) = p*S(m-1,p) + S(m-1,p-1)
  std::vector<BigInt> row(static_cast<size_t>(m) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int mm = 1; mm <= m; ++mm) {
    for (int pp = std::min(mm, m); pp >= 1; --pp) {
      row[static_cast<size_t>(pp)] = pp * row[static_cast<size_t>(pp)] + row[static_cast<size_t>(pp - 1)];
    }
    row[0] = 0;
  }
  return row[static_cast<size_t>(p)];
}

BigInt bell(int m) {
  BigInt total = 0;
  for (int p = 0; p <= m; ++p) total += stirling2(m, p);
  return total;
}

bool is_coarsening(const SetPartition& fine, const SetPartition& coarse) {
  if (fine.ground_size != coarse.ground_size) {
    throw std::invalid_argument("ground-size mismatch");
  }
  auto labels = coarse.block_labels();
  for (const auto& b : fine.blocks) {
    int label = labels[static_cast<size_t>(b.front())];
    for (int v : b) {
      if (labels[static_cast<size_t>(v)] != label) return false;
    }
  }
  return true;
}

std::vector<SetPartition> coarsenings(const SetPartition& p) {
  std::vector<SetPartition> out;
  for (const auto& grouping : enumerate_set_partitions(p.part_count())) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(grouping.blocks.size());
    for (const auto& group : grouping.blocks) {
      std::vector<int> merged;
      for (int bi : group) {
        const auto& src = p.blocks[static_cast<size_t>(bi - 1)];
        merged.insert(merged.end(), src.begin(), src.end());
      }
      blocks.push_back(std::move(merged));
    }
    out.push_back(SetPartition::of(p.ground_size, std::move(blocks)));
  }
  return out;
}

}  // namespace partcat
