#pragma once

#include <string>
#include <vector>

#include "isoforge/isometry.hpp"

namespace isoforge::detail {

struct Term {
  int src;
  int dst;
  int sign;
};

// signed bijection candidate; unmatched lists hold characters the formula
// could not pair (single against +/- pair)
struct Formula {
  std::vector<Term> terms;
  std::vector<int> src_unmatched, dst_unmatched;
};

const CharTable& side_table(const std::string& side, int p, int l, int rank);
Formula inverse_formula(const Formula& f);
Formula formula_between(const Isometry& iso, const CharTable& s, const CharTable& d);

std::vector<Partition> parts_of(const std::vector<std::string>& core);
std::vector<std::string> split_components(const std::string& text);
std::vector<int> parse_weights(const std::string& text);
std::vector<int> sorted_unique(std::vector<int> v);

}  // namespace isoforge::detail
