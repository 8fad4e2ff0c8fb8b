#include <set>
#include <stdexcept>
#include <unordered_map>

#include "isoforge/tables.hpp"

namespace isoforge {

namespace {

bool is_distinct(const Partition& pi) { return std::set<int>(pi.begin(), pi.end()).size() == pi.size(); }

bool in_d_minus(const Partition& pi) { return is_distinct(pi) && sigma(pi) == -1; }
bool in_d_plus(const Partition& pi) { return is_distinct(pi) && sigma(pi) == 1; }

// spin value on an odd cycle type, common to associates
struct SpinMN {
  std::unordered_map<std::string, ExactScalar> memo;

  ExactScalar value(const BarPartition& la, const Partition& pi, size_t from) {
    if (from == pi.size()) return la.empty() ? ExactScalar(1L) : ExactScalar();
    std::string key = to_string(la) + "/" + std::to_string(from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int q = pi[from];
    ExactScalar v;
    for (auto& [b, mu] : bars(la, q)) {
      long coef = b.leg % 2 ? -1 : 1;
      if (sigma(la) == 1 && sigma(mu) == -1) coef *= 2;
      v += value(mu, pi, from + 1) * Rational(coef);
    }
    v *= Rational(sq_sign(q));
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

CharTable tilde_sn_table(int n) {
  if (n < 0) throw std::invalid_argument("tilde_sn_table: n < 0");
  CharTable s = sn_table(n);
  CharTable t;
  t.family = "tilde-sn";
  t.params["n"] = n;
  t.order = 2 * factorial(n);
  std::vector<int> parent;  // S_n class of each class
  for (int x = 0; x < s.num_classes(); ++x) {
    const Partition& pi = s.classes[x].base[0];
    Int z = s.classes[x].central_order;
    if (is_odd_type(pi) || in_d_minus(pi)) {
      for (int k : {0, 1}) {
        t.classes.push_back(ClassLabel{{pi}, k, 0, 2 * z});
        parent.push_back(x);
      }
    } else {
      t.classes.push_back(ClassLabel{{pi}, -1, 0, z});
      parent.push_back(x);
    }
  }
  for (int a = 0; a < s.num_chars(); ++a) {
    t.chars.push_back(s.chars[a]);
    std::vector<ExactScalar> row;
    for (int p : parent) row.push_back(s.values[a][p]);
    t.values.push_back(std::move(row));
  }
  std::vector<SpinMN> mns(t.num_classes());
  for (auto& la : bar_partitions_of(n)) {
    std::vector<int> assocs = sigma(la) == 1 ? std::vector<int>{0} : std::vector<int>{1, -1};
    for (int e : assocs) {
      t.chars.push_back(CharLabel{{la}, e, true});
      std::vector<ExactScalar> row;
      for (int x = 0; x < t.num_classes(); ++x) {
        const auto& c = t.classes[x];
        const Partition& pi = c.base[0];
        ExactScalar v;
        if (c.z >= 0 && is_odd_type(pi)) {
          v = mns[x].value(la, pi, 0);
        } else if (c.z >= 0 && pi == la) {
          // i^{(n-l+1)/2} sqrt(z_la / 2)
          int l = static_cast<int>(la.size());
          v = ExactScalar::i_pow((n - l + 1) / 2) * ExactScalar::root(2 * bar_z(la)) / Rational(2);
          if (e < 0) v = -v;
        }
        if (c.z == 1) v = -v;
        row.push_back(v);
      }
      t.values.push_back(std::move(row));
    }
  }
  t.reindex();
  return t;
}

CharTable tilde_an_table(int n) {
  CharTable s = tilde_sn_table(n);
  if (n <= 1) {
    s.family = "tilde-an";
    return s;
  }
  DescentData d;
  Partition ones(n, 1);
  d.eps = s.char_index(CharLabel{{ones}}.key());
  d.splits.resize(s.num_classes());
  for (int x = 0; x < s.num_classes(); ++x) {
    const auto& c = s.classes[x];
    const Partition& pi = c.base[0];
    d.splits[x] = (c.z >= 0 && is_distinct_odd(pi)) || (c.z < 0 && in_d_plus(pi) && !is_odd_type(pi));
  }
  for (int a = 0; a < s.num_chars(); ++a) {
    const auto& lab = s.chars[a];
    const Partition& la = lab.base[0];
    if (!lab.spin) {
      if (!is_self_conj(la)) continue;
      auto h = a_map(la);
      Int prod = 1;
      for (int x : h) prod *= x;
      int k = static_cast<int>(h.size());
      Int sign = ((n - k) / 2) % 2 ? -1 : 1;
      Partition cls(h.begin(), h.end());
      for (int z : {0, 1}) {
        int x = s.class_index(ClassLabel{{cls}, z}.key());
        d.diff[{a, x}] = ExactScalar::root(sign * prod);
      }
      continue;
    }
    if (sigma(la) != 1) continue;
    int l = static_cast<int>(la.size());
    ExactScalar delta = ExactScalar::i_pow((n - l) / 2) * ExactScalar::root(bar_z(la));
    if (is_odd_type(la)) {
      d.diff[{a, s.class_index(ClassLabel{{la}, 0}.key())}] = delta;
      d.diff[{a, s.class_index(ClassLabel{{la}, 1}.key())}] = -delta;
    } else {
      d.diff[{a, s.class_index(ClassLabel{{la}}.key())}] = delta;
    }
  }
  return index2_descent(s, d, "tilde-an");
}

}  // namespace isoforge
