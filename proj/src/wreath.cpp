#include <map>
#include <memory>
#include <tuple>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "isoforge/tables.hpp"

namespace isoforge {

namespace {

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

ExactScalar unit_root(int l, int k) {
  k = ((k % l) + l) % l;
  if (k == 0) return ExactScalar(1L);
  if (2 * k == l) return ExactScalar(-1L);
  if (4 * k == l) return ExactScalar::root(-1);
  if (4 * k == 3 * l) return -ExactScalar::root(-1);
  Rational half(1, 2);
  // remaining cases: multiples of 1/3 and 1/6 of a turn
  int sixths = 6 * k / l;
  if (6 * k % l) throw std::invalid_argument("root of unity not representable");
  switch (sixths) {
    case 1: return ExactScalar(half) + ExactScalar::term(half, -3);
    case 2: return ExactScalar(-half) + ExactScalar::term(half, -3);
    case 4: return ExactScalar(-half) - ExactScalar::term(half, -3);
    case 5: return ExactScalar(half) - ExactScalar::term(half, -3);
  }
  throw std::logic_error("unit_root");
}

struct WreathMN {
  const BaseGroup& h;
  const MultiPartition& pi;
  std::vector<std::pair<int, int>> cycles;  // (base class, length), fixed removal order
  std::unordered_map<std::string, ExactScalar> memo;

  WreathMN(const BaseGroup& hh, const MultiPartition& p) : h(hh), pi(p) {
    for (size_t t = 0; t < pi.size(); ++t)
      for (int k : pi[t]) cycles.push_back({static_cast<int>(t), k});
  }

  ExactScalar value(const MultiPartition& mu, size_t from) {
    if (from == cycles.size()) return multi_size(mu) == 0 ? ExactScalar(1L) : ExactScalar();
    std::string key = multi_to_string(mu) + "/" + std::to_string(from);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto [t, k] = cycles[from];
    ExactScalar v;
    for (size_t s = 0; s < mu.size(); ++s) {
      const ExactScalar& psi = h.table.values[s][t];
      if (psi.is_zero()) continue;
      ExactScalar inner_sum;
      for (auto& [hk, nu] : hooks(mu[s], k)) {
        MultiPartition m2 = mu;
        m2[s] = nu;
        ExactScalar r = value(m2, from + 1);
        if (hk.leg % 2)
          inner_sum -= r;
        else
          inner_sum += r;
      }
      if (!inner_sum.is_zero()) v += psi * inner_sum;
    }
    memo.emplace(key, v);
    return v;
  }
};

}  // namespace

BaseGroup cyclic_base(int l) {
  if (l != 1 && l != 2 && l != 3 && l != 4 && l != 6)
    throw std::invalid_argument("cyclic base group Z_" + std::to_string(l) + " is not supported");
  BaseGroup b;
  b.name = "Z" + std::to_string(l);
  b.table.family = "cyclic";
  b.table.params["l"] = l;
  b.table.order = l;
  for (int j = 0; j < l; ++j) {
    b.table.classes.push_back(ClassLabel{{Partition{j + 1}}, -1, 0, l});
    b.orders.push_back(l / std::gcd(l, j));
  }
  for (int s = 1; s <= l; ++s) {
    b.table.chars.push_back(CharLabel{{Partition{s}}});
    std::vector<ExactScalar> row;
    for (int j = 0; j < l; ++j) row.push_back(unit_root(l, (s - 1) * j));
    b.table.values.push_back(row);
  }
  b.table.reindex();
  return b;
}

BaseGroup frobenius_base(int p) {
  if (p == 2) {
    BaseGroup b = cyclic_base(2);
    b.name = "F2";
    return b;
  }
  if (p != 3) throw std::invalid_argument("Z_p x| Z_{p-1} base only for p in {2,3}");
  BaseGroup b;
  b.name = "F3";
  auto& t = b.table;
  t.family = "frobenius";
  t.params["p"] = 3;
  t.order = 6;
  // g1 transposition, g2 identity, g3 three-cycle
  t.classes = {ClassLabel{{Partition{1}}, -1, 0, 2}, ClassLabel{{Partition{2}}, -1, 0, 6},
               ClassLabel{{Partition{3}}, -1, 0, 3}};
  b.orders = {2, 1, 3};
  // psi1 sign, psi2 degree two, psi3 trivial
  t.chars = {CharLabel{{Partition{1}}}, CharLabel{{Partition{2}}}, CharLabel{{Partition{3}}}};
  t.values = {{ExactScalar(-1L), ExactScalar(1L), ExactScalar(1L)},
              {ExactScalar(0L), ExactScalar(2L), ExactScalar(-1L)},
              {ExactScalar(1L), ExactScalar(1L), ExactScalar(1L)}};
  t.reindex();
  return b;
}

CharTable wreath_table(const BaseGroup& h, int w, const std::string& family) {
  if (w < 0) throw std::invalid_argument("wreath_table: w < 0");
  int N = h.table.num_classes();
  CharTable t;
  t.family = family;
  t.params["w"] = w;
  t.order = factorial(w);
  for (int i = 0; i < w; ++i) t.order *= h.table.order;
  t.base_class_orders = h.orders;
  auto mps = multipartitions_of(N, w);
  for (auto& pi : mps) {
    Int c = 1;
    for (int s = 0; s < N; ++s) {
      Int ch = h.table.classes[s].central_order;
      size_t i = 0;
      while (i < pi[s].size()) {
        size_t j = i;
        while (j < pi[s].size() && pi[s][j] == pi[s][i]) ++j;
        for (size_t m = 1; m <= j - i; ++m) c *= Int(pi[s][i]) * Int(m) * ch;
        i = j;
      }
    }
    t.classes.push_back(ClassLabel{pi, -1, 0, c});
  }
  for (auto& mu : mps) t.chars.push_back(CharLabel{mu});
  t.values.assign(mps.size(), std::vector<ExactScalar>(mps.size()));
  for (size_t x = 0; x < mps.size(); ++x) {
    WreathMN mn(h, mps[x]);
    for (size_t a = 0; a < mps.size(); ++a) t.values[a][x] = mn.value(mps[a], 0);
  }
  t.reindex();
  return t;
}

namespace {

// D_0 and D_1 are trivial; the lone character keeps the bipartition label
CharTable trivial_dn(int n) {
  CharTable t;
  t.family = "dn";
  t.params["n"] = n;
  t.order = 1;
  t.classes = {ClassLabel{{Partition(n, 1), Partition{}}, -1, 0, 1}};
  t.chars = {CharLabel{{Partition(n, 1), Partition{}}}};
  t.values = {{ExactScalar(1L)}};
  t.reindex();
  if (n == 1) t.add_alias(CharLabel{{Partition{}, Partition{1}}}.key(), 0);
  return t;
}

}  // namespace

CharTable dn_table(int n) {
  if (n < 0) throw std::invalid_argument("dn_table: n < 0");
  if (n < 2) return trivial_dn(n);
  CharTable b = wreath_table(cyclic_base(2), n, "bn");
  DescentData d;
  d.eps = b.char_index(CharLabel{{Partition{}, Partition{n}}}.key());
  d.splits.resize(b.num_classes());
  for (int x = 0; x < b.num_classes(); ++x) {
    const auto& pi = b.classes[x].base;
    d.splits[x] = pi[1].empty() && is_all_even(pi[0]);
  }
  if (n % 2 == 0) {
    CharTable s = sn_table(n / 2);
    for (int a = 0; a < b.num_chars(); ++a) {
      const auto& mu = b.chars[a].base;
      if (mu[0] != mu[1]) continue;
      int sa = s.char_index(CharLabel{{mu[0]}}.key());
      for (int x = 0; x < b.num_classes(); ++x) {
        if (!d.splits[x]) continue;
        Partition half;
        for (int k : b.classes[x].base[0]) half.push_back(k / 2);
        int sx = s.class_index(ClassLabel{{half}}.key());
        ExactScalar v = s.values[sa][sx] * Rational(Int(1) << half.size());
        if (!v.is_zero()) d.diff[{a, x}] = v;
      }
    }
  }
  CharTable t = index2_descent(b, d, "dn");
  t.params["n"] = n;
  return t;
}

CharTable gpw_table(int p, int w) {
  CharTable t = wreath_table(frobenius_base(p), w, "gpw");
  t.params["p"] = p;
  return t;
}

MultiPartition star(const MultiPartition& mu) {
  MultiPartition out;
  for (auto it = mu.rbegin(); it != mu.rend(); ++it) out.push_back(conj(*it));
  return out;
}

MultiPartition hpw_a_map(const MultiPartition& mu, int p) {
  if (star(mu) != mu) throw std::invalid_argument("hpw_a_map: multipartition is not self-dual");
  int ps = (p + 1) / 2;
  MultiPartition pi(p);
  for (int i = 1; i < ps; ++i)
    for (int x : mu[i - 1]) pi[2 * i - 2].push_back(2 * x);
  auto a = a_map(mu[ps - 1]);
  pi[p - 1] = Partition(a.begin(), a.end());
  return pi;
}

MultiPartition hpw_a_inverse(const MultiPartition& pi, int p) {
  int ps = (p + 1) / 2;
  MultiPartition mu(p);
  for (int i = 1; i < ps; ++i) {
    if (!pi[2 * i - 1].empty()) throw std::invalid_argument("hpw_a_inverse: not a splitting type");
    for (int x : pi[2 * i - 2]) {
      if (x % 2) throw std::invalid_argument("hpw_a_inverse: not a splitting type");
      mu[i - 1].push_back(x / 2);
    }
    mu[p - i] = conj(mu[i - 1]);
  }
  if (!is_distinct_odd(pi[p - 1])) throw std::invalid_argument("hpw_a_inverse: not a splitting type");
  mu[ps - 1] = a_inverse(std::vector<int>(pi[p - 1].begin(), pi[p - 1].end()));
  return mu;
}

CharTable hpw_table(int p, int w) {
  if (p != 3) throw std::invalid_argument("hpw_table: only p = 3 is supported");
  CharTable g = gpw_table(p, w);
  if (w == 0) {
    g.family = "hpw";
    return g;
  }
  DescentData d;
  MultiPartition eps_label(p);
  eps_label[0] = Partition(w, 1);
  d.eps = g.char_index(CharLabel{eps_label}.key());
  d.splits.resize(g.num_classes());
  for (int x = 0; x < g.num_classes(); ++x) {
    const auto& pi = g.classes[x].base;
    d.splits[x] = pi[1].empty() && is_all_even(pi[0]) && is_distinct_odd(pi[2]);
  }
  std::map<int, CharTable> sn;
  for (int a = 0; a < g.num_chars(); ++a) {
    const auto& mu = g.chars[a].base;
    if (star(mu) != mu) continue;
    auto target = hpw_a_map(mu, p);
    // middle factor: (sqrt(eps_p p))^d sqrt(eps_mu ph)
    auto h = a_map(mu[1]);
    int dlen = static_cast<int>(h.size());
    Int ph = 1;
    for (int x : h) ph *= x;
    Int eps_mu = ((size(mu[1]) - dlen) / 2) % 2 ? -1 : 1;
    Int eps_p = ((p - 1) / 2) % 2 ? -1 : 1;
    ExactScalar mid(1L);
    for (int i = 0; i < dlen; ++i) mid *= ExactScalar::root(eps_p * p);
    mid *= ExactScalar::root(eps_mu * ph);
    int m = size(mu[0]);
    if (!sn.count(m)) sn.emplace(m, sn_table(m));
    const CharTable& s = sn.at(m);
    int sa = s.char_index(CharLabel{{mu[0]}}.key());
    for (int x = 0; x < g.num_classes(); ++x) {
      if (!d.splits[x]) continue;
      const auto& pi = g.classes[x].base;
      if (pi[2] != target[2] || size(pi[0]) != 2 * m) continue;
      Partition half;
      for (int k : pi[0]) half.push_back(k / 2);
      int sx = s.class_index(ClassLabel{{half}}.key());
      ExactScalar v = s.values[sa][sx] * Rational(Int(1) << half.size()) * mid;
      if (!v.is_zero()) d.diff[{a, x}] = v;
    }
  }
  CharTable t = index2_descent(g, d, "hpw");
  t.params["p"] = p;
  return t;
}

const CharTable& cached_table(const std::string& family, int a, int b) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, int, int>, std::unique_ptr<CharTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({family, a, b});
    if (it != cache.end()) return *it->second;
  }
  CharTable t;
  if (family == "sn")
    t = sn_table(a);
  else if (family == "an")
    t = an_table(a);
  else if (family == "tilde-sn")
    t = tilde_sn_table(a);
  else if (family == "tilde-an")
    t = tilde_an_table(a);
  else if (family == "bn")
    t = wreath_table(cyclic_base(2), a, "bn");
  else if (family == "wreath")
    t = wreath_table(cyclic_base(a), b, "wreath");
  else if (family == "dn")
    t = dn_table(a);
  else if (family == "gpw")
    t = gpw_table(a, b);
  else if (family == "hpw")
    t = hpw_table(a, b);
  else
    throw std::invalid_argument("unknown family " + family);
  if (family == "wreath") t.params["l"] = a;
  if (family == "bn") t.params["n"] = a;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{family, a, b}];
  if (!slot) slot = std::make_unique<CharTable>(std::move(t));
  return *slot;
}

}  // namespace isoforge
