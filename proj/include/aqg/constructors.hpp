#pragma once

#include <string>
#include <vector>

#include "aqg/presentation.hpp"

namespace aqg {

struct FiniteGroupTable {
  int order = 0;
  std::vector<std::vector<int>> cayley;  // cayley[g][h] = gh
  std::vector<int> inverse;
  int identity = 0;
  std::vector<std::string> labels;

  int mul(int g, int h) const { return cayley[g][h]; }
};

// Validates the table and fills identity and inverses.
FiniteGroupTable group_from_cayley(std::vector<std::vector<int>> cayley,
                                   std::vector<std::string> labels = {});
void validate_group(const FiniteGroupTable& g);

FiniteGroupTable cyclic_group(int n);
FiniteGroupTable symmetric_group(int n);
FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);
// "Zn" or "Sn"; throws Schema for anything else or for groups above the size budget.
inline constexpr int kMaxGroupOrder = 720;
FiniteGroupTable named_group(const std::string& name);

QuantumGroupPresentation group_algebra(const FiniteGroupTable& g);
QuantumGroupPresentation function_algebra(const FiniteGroupTable& g);
// Basis delta_g (x) h at index g * |G| + h.
QuantumGroupPresentation drinfeld_double(const FiniteGroupTable& g);

}  // namespace aqg
