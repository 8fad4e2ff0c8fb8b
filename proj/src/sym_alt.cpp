#include <set>
#include <stdexcept>
#include <unordered_map>

#include "isoforge/tables.hpp"

namespace isoforge {

bool is_odd_type(const Partition& pi) {
  for (int x : pi)
    if (x % 2 == 0) return false;
  return true;
}

bool is_distinct_odd(const Partition& pi) {
  return is_odd_type(pi) && std::set<int>(pi.begin(), pi.end()).size() == pi.size();
}

bool is_all_even(const Partition& pi) {
  for (int x : pi)
    if (x % 2) return false;
  return true;
}

int sq_sign(int q) { return ((static_cast<long>(q) * q - 1) / 8) % 2 ? -1 : 1; }

namespace {

struct SnMN {
  std::unordered_map<std::string, long> memo;

  // chi_la at the cycle type pi[from..]
  long value(const Partition& la, const Partition& pi, size_t from) {
    if (from == pi.size()) return la.empty() ? 1 : 0;
    std::string key = to_string(la) + "/" + std::to_string(from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long v = 0;
    for (auto& [h, mu] : hooks(la, pi[from])) v += (h.leg % 2 ? -1 : 1) * value(mu, pi, from + 1);
    memo.emplace(key, v);
    return v;
  }
};

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

CharTable sn_table(int n) {
  if (n < 0) throw std::invalid_argument("sn_table: n < 0");
  CharTable t;
  t.family = "sn";
  t.params["n"] = n;
  t.order = factorial(n);
  auto parts = partitions_of(n);
  for (auto& pi : parts) t.classes.push_back(ClassLabel{{pi}, -1, 0, z_order(pi)});
  for (auto& la : parts) t.chars.push_back(CharLabel{{la}, 0, false});
  t.values.assign(parts.size(), std::vector<ExactScalar>(parts.size()));
  for (size_t x = 0; x < parts.size(); ++x) {
    SnMN mn;  // memo keyed by suffix index, so one per cycle type
    for (size_t a = 0; a < parts.size(); ++a) t.values[a][x] = ExactScalar(mn.value(parts[a], parts[x], 0));
  }
  t.reindex();
  return t;
}

CharTable an_table(int n) {
  CharTable s = sn_table(n);
  if (n <= 1) {
    s.family = "an";
    return s;
  }
  DescentData d;
  Partition ones(n, 1);
  d.eps = s.char_index(CharLabel{{ones}}.key());
  d.splits.resize(s.num_classes());
  for (int x = 0; x < s.num_classes(); ++x) d.splits[x] = is_distinct_odd(s.classes[x].base[0]);
  for (int a = 0; a < s.num_chars(); ++a) {
    const Partition& la = s.chars[a].base[0];
    if (!is_self_conj(la)) continue;
    auto h = a_map(la);
    Int prod = 1;
    for (int x : h) prod *= x;
    int k = static_cast<int>(h.size());
    Int sign = ((n - k) / 2) % 2 ? -1 : 1;
    Partition cls(h.begin(), h.end());
    int x = s.class_index(ClassLabel{{cls}}.key());
    d.diff[{a, x}] = ExactScalar::root(sign * prod);
  }
  return index2_descent(s, d, "an");
}

}  // namespace isoforge
