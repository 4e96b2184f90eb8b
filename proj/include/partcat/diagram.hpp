#pragma once

#include "partcat/foundations.hpp"

#include <compare>
#include <string>
#include <vector>

namespace partcat {

// Partition diagram of type bottom -> top. Vertices 1..bottom are the bottom
// row; vertex bottom + j is the top vertex j'.
struct PartitionDiagram {
  int bottom = 0;
  int top = 0;
  SetPartition parts;  // over bottom + top vertices, canonical

  static PartitionDiagram of(int bottom, int top, SetPartition parts);
  static PartitionDiagram of_blocks(int bottom, int top, std::vector<std::vector<int>> blocks);
  static PartitionDiagram identity(int k);
  static PartitionDiagram empty();  // 0 -> 0

  int part_count() const { return parts.part_count(); }
  std::string to_string() const;  // P(k->l)[{1,2'},...]

  friend bool operator==(const PartitionDiagram&, const PartitionDiagram&) = default;
  friend auto operator<=>(const PartitionDiagram&, const PartitionDiagram&) = default;
};

struct ComposeResult {
  int beta = 0;              // count of middle-row-only components
  PartitionDiagram star;     // the glued diagram
};

// Stack d2 atop d1 (d1: k -> l, d2: l -> m) and glue the middle row.
ComposeResult compose_diagrams(const PartitionDiagram& d2, const PartitionDiagram& d1);

// d1 placed to the left of d2.
PartitionDiagram tensor_diagrams(const PartitionDiagram& d1, const PartitionDiagram& d2);

// Vertical reflection: swaps the roles of the rows.
PartitionDiagram flip(const PartitionDiagram& d);

// Blocks {m, sigma(m)'}; sigma[i-1] = sigma(i) on {1..k}.
PartitionDiagram permutation_diagram(const std::vector<int>& sigma);
// Adjacent transposition (i, i+1) on k strands, 1 <= i < k.
PartitionDiagram s_i(int k, int i);

// 2n -> 0 diagram with blocks {i, n+i}.
PartitionDiagram crosscap(int n);

// Bending bijection Hom(k,l) <-> Hom(k+l,0): top vertex j' becomes bottom
// vertex k+l+1-j (nested caps reverse the top row).
PartitionDiagram bend(const PartitionDiagram& d);
PartitionDiagram unbend(const PartitionDiagram& d, int top_count);

// Generators of P(n).
PartitionDiagram gen_mu();     // 2 -> 1, single block
PartitionDiagram gen_delta();  // 1 -> 2, single block
PartitionDiagram gen_eps();    // 1 -> 0
PartitionDiagram gen_eta();    // 0 -> 1
PartitionDiagram gen_s();      // 2 -> 2 crossing

}  // namespace partcat
