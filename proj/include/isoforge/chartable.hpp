#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isoforge/exact.hpp"
#include "isoforge/partitions.hpp"

namespace isoforge {

using MultiPartition = std::vector<Partition>;

std::string multi_to_string(const MultiPartition& m);  // "(2),(1,1),()" style
int multi_size(const MultiPartition& m);
std::vector<MultiPartition> multipartitions_of(int parts, int n);

struct ClassLabel {
  MultiPartition base;   // one component for S_n-like groups
  int z = -1;            // -1: no central factor; 0/1 otherwise
  int split = 0;         // 0 none, +1, -1
  Int central_order = 1;

  std::string key() const;
  std::string split_tag() const;  // none, plus, minus, plusplus, ...
};

struct CharLabel {
  MultiPartition base;
  int assoc = 0;  // 0 none, +1, -1
  bool spin = false;

  std::string key() const;
};

struct CharTable {
  std::string family;
  std::map<std::string, int> params;
  Int order = 1;
  std::vector<ClassLabel> classes;
  std::vector<CharLabel> chars;
  std::vector<std::vector<ExactScalar>> values;  // values[char][class]
  // orders of the base-group classes for wreath-type tables; empty for
  // symmetric-type tables where a cycle of length j has order j
  std::vector<int> base_class_orders;

  void reindex();
  int class_index(const std::string& key) const;  // -1 if absent
  int char_index(const std::string& key) const;   // also resolves aliases
  void add_alias(const std::string& key, int idx);
  const ExactScalar& at(int chi, int x) const { return values[chi][x]; }
  int num_classes() const { return static_cast<int>(classes.size()); }
  int num_chars() const { return static_cast<int>(chars.size()); }

 private:
  std::unordered_map<std::string, int> class_idx_, char_idx_;
};

struct OrthogonalityReport {
  bool rows_ok = true;
  bool columns_ok = true;
  std::string witness;
  bool ok() const { return rows_ok && columns_ok; }
};

OrthogonalityReport check_orthogonality(const CharTable& t);

// <a, b> restricted to the classes with mask[x] (all classes when mask empty)
ExactScalar inner(const CharTable& t, int a, int b, const std::vector<bool>& mask = {});

// index of chi (x) eps for every character, matched by values
std::vector<int> twist_permutation(const CharTable& t, int eps);

struct DescentData {
  int eps = -1;                        // parent character index of the sign
  std::vector<bool> splits;            // per parent class
  // (parent char index, parent class index) -> value of chi^+ - chi^- on the + class
  std::map<std::pair<int, int>, ExactScalar> diff;
};

// Clifford descent to the kernel of a linear character of order 2
CharTable index2_descent(const CharTable& parent, const DescentData& d, const std::string& family);

}  // namespace isoforge
