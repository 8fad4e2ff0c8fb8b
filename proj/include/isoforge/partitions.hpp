#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoforge/exact.hpp"

namespace isoforge {

// weakly decreasing positive parts; {} is the empty partition
using Partition = std::vector<int>;

struct Hook {
  int row;  // 1-based corner cell
  int col;
  int length;
  int leg;
};

struct CoreQuotient {
  Partition core;
  std::vector<Partition> quotient;  // one component per residue, ascending
};

int size(const Partition& la);
bool is_partition(const Partition& la);
std::vector<Partition> partitions_of(int n);  // reverse lexicographic, (n) first
Partition conj(const Partition& la);
bool is_self_conj(const Partition& la);
Int z_order(const Partition& la);  // prod i^{m_i} m_i!
int sign_of_type(const Partition& pi);  // sign of a permutation of cycle type pi

std::string to_string(const Partition& la);
Partition parse_partition(const std::string& text);

// beta numbers of length N (N >= parts), descending
std::vector<int> beta_set(const Partition& la, int N);
Partition from_beta(std::vector<int> beta);

std::vector<std::pair<Hook, Partition>> hooks(const Partition& la, int q);

bool is_core(const Partition& la, int p);
CoreQuotient core_quotient(const Partition& la, int p);
Partition from_core_quotient(const Partition& core, const std::vector<Partition>& q, int p);
int weight(const Partition& la, int p);
std::vector<Partition> quotient_conj(const std::vector<Partition>& q);

int delta_sign(const Partition& la, int q);

std::vector<int> a_map(const Partition& la);  // diagonal hook lengths
Partition a_inverse(const std::vector<int>& a);
std::optional<Partition> mu_lambda(const Partition& la, int q);

Partition psi_map(const Partition& la, int p, const Partition& core2);

// leg of the hook removed in the quotient when mu is la minus a hook of length
// divisible by p
int quotient_hook_leg(const Partition& la, const Partition& mu, int p);

}  // namespace isoforge
