#pragma once

#include "partcat/field.hpp"

#include <compare>
#include <string>
#include <vector>

namespace partcat {

// Canonical set partition of {1..ground_size}: vertices ascending within each
// block, blocks ordered by their minimum element.
struct SetPartition {
  int ground_size = 0;
  std::vector<std::vector<int>> blocks;

  // Validates and canonicalizes. Throws std::invalid_argument on malformed input.
  static SetPartition of(int ground_size, std::vector<std::vector<int>> blocks);
  static SetPartition singletons(int ground_size);
  // label_of[v] for v = 1..ground_size; equal labels mean same block.
  static SetPartition from_labels(int ground_size, const std::vector<int>& label_of);

  int part_count() const { return static_cast<int>(blocks.size()); }
  int block_index_of(int v) const;                // 0-based block index
  std::vector<int> block_labels() const;          // index 1..ground_size -> block index

  std::string to_string() const;  // e.g. "{1,3},{2}"

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

std::vector<SetPartition> enumerate_set_partitions(int m);
BigInt stirling2(int m, int p);
BigInt bell(int m);

// True iff every block of `fine` is contained in some block of `coarse`.
bool is_coarsening(const SetPartition& fine, const SetPartition& coarse);

// All Q with is_coarsening(P, Q), including P itself, obtained by enumerating
// set partitions of the block set of P.
std::vector<SetPartition> coarsenings(const SetPartition& p);

}  // namespace partcat
