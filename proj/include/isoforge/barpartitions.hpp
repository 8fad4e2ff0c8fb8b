#pragma once

#include <vector>

#include "isoforge/partitions.hpp"

namespace isoforge {

// strictly decreasing positive parts
using BarPartition = std::vector<int>;

struct Bar {
  int row;     // 1-based part index
  int row2;    // second part for the two-part kind, 0 otherwise
  int kind;    // 1 shift, 2 whole part, 3 two parts
  int length;
  int leg;
};

struct BarCoreQuotient {
  BarPartition core;
  BarPartition zero;               // parts divisible by q, divided by q
  std::vector<Partition> pairs;    // runner pairs i / q-i for i = 1..(q-1)/2
  int weight() const;
};

bool is_bar_partition(const std::vector<int>& la);
std::vector<BarPartition> bar_partitions_of(int n);  // reverse lexicographic
int sigma(const BarPartition& la);                   // (-1)^{|la|-l(la)}
Int bar_z(const BarPartition& la);                   // product of parts
BarPartition parse_bar_partition(const std::string& text);

std::vector<std::pair<Bar, BarPartition>> bars(const BarPartition& la, int q);
bool is_bar_core(const BarPartition& la, int q);
BarCoreQuotient bar_core_quotient(const BarPartition& la, int q);
BarPartition from_bar_core_quotient(const BarPartition& core, const BarPartition& zero,
                                    const std::vector<Partition>& pairs, int q);
int bar_weight(const BarPartition& la, int q);
int quotient_sigma(const BarCoreQuotient& cq);
int delta_bar_sign(const BarPartition& la, int q);
BarPartition psi_bar(const BarPartition& la, int q, const BarPartition& core2);

// leg of g(b) where mu is la minus a bar of length divisible by q
int bar_quotient_leg(const BarPartition& la, const BarPartition& mu, int q);

}  // namespace isoforge
