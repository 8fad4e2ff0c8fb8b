#include "isoforge/barpartitions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace isoforge {

int BarCoreQuotient::weight() const {
  int w = size(zero);
  for (auto& c : pairs) w += size(c);
  return w;
}

bool is_bar_partition(const std::vector<int>& la) {
  for (size_t i = 0; i < la.size(); ++i) {
    if (la[i] <= 0) return false;
    if (i && la[i] >= la[i - 1]) return false;
  }
  return true;
}

std::vector<BarPartition> bar_partitions_of(int n) {
  std::vector<BarPartition> out;
  BarPartition cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k - 1);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

int sigma(const BarPartition& la) {
  return ((size(la) - static_cast<int>(la.size())) % 2) ? -1 : 1;
}

Int bar_z(const BarPartition& la) {
  Int z = 1;
  for (int x : la) z *= x;
  return z;
}

BarPartition parse_bar_partition(const std::string& text) {
  auto la = parse_partition(text);
  if (!is_bar_partition(la)) throw std::invalid_argument("not a bar partition: " + text);
  return la;
}

static BarPartition sorted_desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<std::pair<Bar, BarPartition>> bars(const BarPartition& la, int q) {
  std::vector<std::pair<Bar, BarPartition>> out;
  std::set<int> parts(la.begin(), la.end());
  int n = static_cast<int>(la.size());
  for (int i = 0; i < n; ++i) {
    int x = la[i];
    if (x - q > 0 && !parts.count(x - q)) {
      int leg = 0;
      for (int y : la)
        if (y < x && y > x - q) ++leg;
      auto mu = la;
      mu[i] = x - q;
      out.push_back({Bar{i + 1, 0, 1, q, leg}, sorted_desc(mu)});
    }
    if (x == q) {
      int leg = n - 1 - i;
      auto mu = la;
      mu.erase(mu.begin() + i);
      out.push_back({Bar{i + 1, 0, 2, q, leg}, mu});
    }
    for (int j = i + 1; j < n; ++j) {
      if (x + la[j] != q) continue;
      int leg = la[j] + (j - i - 1);
      BarPartition mu;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) mu.push_back(la[k]);
      out.push_back({Bar{i + 1, j + 1, 3, q, leg}, mu});
    }
  }
  return out;
}

bool is_bar_core(const BarPartition& la, int q) { return bars(la, q).empty(); }

// Maya diagram of runner pair i: positions l >= 0 hold part i + l q,
// negative position -m is filled when part (q-i) + (m-1) q is missing.
static Partition maya_to_partition(const std::vector<int>& occupied_desc, int charge) {
  Partition p;
  for (size_t j = 0; j < occupied_desc.size(); ++j) {
    int v = occupied_desc[j] + static_cast<int>(j) + 1 - charge;
    if (v > 0) p.push_back(v);
  }
  return p;
}

BarCoreQuotient bar_core_quotient(const BarPartition& la, int q) {
  if (q < 1 || q % 2 == 0) throw std::invalid_argument("bar_core_quotient: q must be odd");
  if (!is_bar_partition(la)) throw std::invalid_argument("bar_core_quotient: not a bar partition");
  BarCoreQuotient cq;
  std::set<int> parts(la.begin(), la.end());
  for (int x : la)
    if (x % q == 0) cq.zero.push_back(x / q);
  std::vector<int> core;
  int e = (q - 1) / 2;
  for (int i = 1; i <= e; ++i) {
    int up = 0, down = 0, top = 0;
    for (int x : la) {
      if (x % q == i) ++up, top = std::max(top, (x - i) / q + 1);
      if (x % q == q - i) ++down, top = std::max(top, (x - (q - i)) / q + 1);
    }
    int c = up - down;
    std::vector<int> occ;
    for (int l = top; l >= 0; --l)
      if (parts.count(i + l * q)) occ.push_back(l);
    for (int m = 1; m <= top + 1 + static_cast<int>(la.size()); ++m)
      if (!parts.count((q - i) + (m - 1) * q)) occ.push_back(-m);
    cq.pairs.push_back(maya_to_partition(occ, c));
    for (int t = 0; t < c; ++t) core.push_back(i + t * q);
    for (int t = 0; t < -c; ++t) core.push_back(q - i + t * q);
  }
  cq.core = sorted_desc(core);
  return cq;
}

BarPartition from_bar_core_quotient(const BarPartition& core, const BarPartition& zero,
                                    const std::vector<Partition>& pairs, int q) {
  if (!is_bar_core(core, q)) throw std::invalid_argument("from_bar_core_quotient: core has a bar");
  int e = (q - 1) / 2;
  if (static_cast<int>(pairs.size()) != e) throw std::invalid_argument("bar quotient has wrong length");
  if (!is_bar_partition(zero)) throw std::invalid_argument("bar quotient: first component not strict");
  std::vector<int> parts;
  for (int z : zero) parts.push_back(z * q);
  for (int i = 1; i <= e; ++i) {
    int c = 0;
    for (int x : core) {
      if (x % q == i) ++c;
      if (x % q == q - i) --c;
    }
    const Partition& p = pairs[i - 1];
    // negative positions below -M are all filled
    int M = static_cast<int>(p.size()) + std::abs(c) + 2;
    std::set<int> occ;
    for (int j = 1; j <= 2 * M + 2; ++j) {
      int v = j - 1 < static_cast<int>(p.size()) ? p[j - 1] : 0;
      occ.insert(v - j + c);
    }
    for (int l = 0; l <= *occ.rbegin(); ++l)
      if (occ.count(l)) parts.push_back(i + l * q);
    for (int m = 1; m <= M; ++m)
      if (!occ.count(-m)) parts.push_back(q - i + (m - 1) * q);
  }
  auto out = sorted_desc(parts);
  if (!is_bar_partition(out)) throw std::logic_error("from_bar_core_quotient: repeated part");
  return out;
}

int bar_weight(const BarPartition& la, int q) { return bar_core_quotient(la, q).weight(); }

int quotient_sigma(const BarCoreQuotient& cq) {
  return ((cq.weight() - static_cast<int>(cq.zero.size())) % 2) ? -1 : 1;
}

int delta_bar_sign(const BarPartition& la, int q) {
  int s = 1;
  BarPartition cur = la;
  while (true) {
    auto bs = bars(cur, q);
    if (bs.empty()) break;
    if (bs[0].first.leg % 2) s = -s;
    cur = bs[0].second;
  }
  return s;
}

BarPartition psi_bar(const BarPartition& la, int q, const BarPartition& core2) {
  if (!is_bar_core(core2, q)) throw std::invalid_argument("psi_bar: target is not a bar core");
  auto cq = bar_core_quotient(la, q);
  return from_bar_core_quotient(core2, cq.zero, cq.pairs, q);
}

int bar_quotient_leg(const BarPartition& la, const BarPartition& mu, int q) {
  auto a = bar_core_quotient(la, q);
  auto b = bar_core_quotient(mu, q);
  if (a.core != b.core) throw std::invalid_argument("bar_quotient_leg: cores differ");
  int k = (size(la) - size(mu));
  if (k <= 0 || k % q) throw std::invalid_argument("bar_quotient_leg: bad size difference");
  k /= q;
  if (a.zero != b.zero) {
    for (auto& [bar, nu] : bars(a.zero, k))
      if (nu == b.zero) return bar.leg;
    throw std::invalid_argument("bar_quotient_leg: not a bar removal in the first component");
  }
  // runner pair i read as one runner: beads between on the nonnegative
  // half, gaps between on the negative half, plus the mirrored pairs
  // (j, -j-1) jumped over
  std::set<int> pa(la.begin(), la.end()), pb(mu.begin(), mu.end());
  for (size_t idx = 0; idx < a.pairs.size(); ++idx) {
    if (a.pairs[idx] == b.pairs[idx]) continue;
    int i = static_cast<int>(idx) + 1;
    auto filled = [&](const std::set<int>& ps, int pos) {
      return pos >= 0 ? ps.count(i + pos * q) > 0 : ps.count(q - i + (-pos - 1) * q) == 0;
    };
    int lo = -(size(la) / q + 2), hi = size(la) / q + 2;
    int from = 0, to = 0, moved = 0;
    for (int pos = lo; pos <= hi; ++pos) {
      bool x = filled(pa, pos), y = filled(pb, pos);
      if (x && !y) from = pos, ++moved;
      if (!x && y) to = pos, ++moved;
    }
    if (moved != 2 || from - to != k) throw std::invalid_argument("bar_quotient_leg: not a single bead move");
    int leg = (to < 0 && from > 0) ? std::min(from, -to - 1) % 2 : 0;
    for (int pos = to + 1; pos < from; ++pos)
      if (filled(pa, pos) == (pos >= 0)) ++leg;
    return leg;
  }
  throw std::invalid_argument("bar_quotient_leg: quotients agree");
}

}  // namespace isoforge
