#pragma once

#include <string>

#include "isoforge/barpartitions.hpp"
#include "isoforge/chartable.hpp"

namespace isoforge {

bool is_odd_type(const Partition& pi);        // all parts odd
bool is_distinct_odd(const Partition& pi);    // OD
bool is_all_even(const Partition& pi);        // E
int sq_sign(int q);                           // (-1)^{(q^2-1)/8}

CharTable sn_table(int n);
CharTable an_table(int n);

// full tables of the double covers: ordinary characters lifted, then spin characters
CharTable tilde_sn_table(int n);
CharTable tilde_an_table(int n);

struct BaseGroup {
  std::string name;
  CharTable table;            // classes g_1..g_N, characters psi_1..psi_N
  std::vector<int> orders;    // element order of each class
};

BaseGroup cyclic_base(int l);     // l in {1,2,3,4,6}; classes zeta^j, psi_s(zeta^j) = w^{(s-1)j}
BaseGroup frobenius_base(int p);  // Z_p x| Z_{p-1} for p in {2,3}

CharTable wreath_table(const BaseGroup& h, int w, const std::string& family = "wreath");
CharTable dn_table(int n);
CharTable gpw_table(int p, int w);
CharTable hpw_table(int p, int w);

// a-bijection of H_{p,w}: self-dual multipartitions to splitting class types
MultiPartition hpw_a_map(const MultiPartition& mu, int p);
MultiPartition hpw_a_inverse(const MultiPartition& pi, int p);
MultiPartition star(const MultiPartition& mu);  // reversed, conjugated

// shared immutable tables; family in {sn, an, tilde-sn, tilde-an, bn, wreath-z<l>, dn, gpw, hpw}
const CharTable& cached_table(const std::string& family, int a, int b = 0);

}  // namespace isoforge
