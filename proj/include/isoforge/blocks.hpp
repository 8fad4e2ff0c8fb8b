#pragma once

#include <string>
#include <vector>

#include "isoforge/chartable.hpp"

namespace isoforge {

// predicates: all, p-regular, spin-C, brgr-Cprime, osima-Cprime, fh-regular
std::vector<bool> class_subset(const CharTable& t, const std::string& predicate, int p);
bool is_p_regular_class(const CharTable& t, int x, int p);

struct Block {
  std::vector<int> chars;  // character indices, ascending
  std::string core;        // core label (partition, bar partition or tuple)
  int weight = 0;
  int sign = 0;            // sigma of the bar core for spin blocks, 0 otherwise
};

struct BlockPartition {
  std::vector<Block> blocks;  // ordered by smallest character index
  int block_of(int chi) const;
};

BlockPartition kor_blocks(const CharTable& t, const std::vector<bool>& mask);
BlockPartition theoretical_blocks(const CharTable& t, int p);
bool same_partition(const BlockPartition& a, const BlockPartition& b);

struct LatticeSuite {
  std::vector<std::vector<mpz_class>> basis;  // rows over the masked classes
  std::vector<std::vector<mpz_class>> decomposition;  // chars x basis
  std::vector<std::vector<Rational>> duals;  // Phi_j over all classes
  BlockPartition blocks;
  bool duality_ok = false;  // <Phi_i, b_j>_C = delta
};

LatticeSuite rational_lattice_suite(const CharTable& t, const std::vector<bool>& mask);

}  // namespace isoforge
