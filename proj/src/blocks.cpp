#include "isoforge/blocks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "isoforge/barpartitions.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/tables.hpp"

namespace isoforge {

bool is_p_regular_class(const CharTable& t, int x, int p) {
  const auto& c = t.classes[x];
  if (t.base_class_orders.empty()) {
    for (int k : c.base[0])
      if (k % p == 0) return false;
    // the central element has order 2
    if (p == 2 && c.z == 1) return false;
    return true;
  }
  for (size_t s = 0; s < c.base.size(); ++s)
    for (int k : c.base[s])
      if ((static_cast<long>(k) * t.base_class_orders[s]) % p == 0) return false;
  return true;
}

std::vector<bool> class_subset(const CharTable& t, const std::string& predicate, int p) {
  int n = t.num_classes();
  std::vector<bool> m(n, false);
  for (int x = 0; x < n; ++x) {
    const auto& c = t.classes[x];
    if (predicate == "all") {
      m[x] = true;
    } else if (predicate == "p-regular") {
      m[x] = is_p_regular_class(t, x, p);
    } else if (predicate == "spin-C") {
      // no part that is an odd multiple of p
      bool ok = true;
      for (int k : c.base[0])
        if (k % p == 0 && (k / p) % 2 == 1) ok = false;
      m[x] = ok;
    } else if (predicate == "brgr-Cprime" || predicate == "fh-regular") {
      m[x] = c.base.back().empty();
    } else if (predicate == "osima-Cprime") {
      m[x] = c.base.front().empty();
    } else {
      throw std::invalid_argument("unknown class predicate " + predicate);
    }
  }
  return m;
}

int BlockPartition::block_of(int chi) const {
  for (size_t i = 0; i < blocks.size(); ++i)
    if (std::binary_search(blocks[i].chars.begin(), blocks[i].chars.end(), chi)) return static_cast<int>(i);
  return -1;
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int a) { return up[a] == a ? a : up[a] = find(up[a]); }
  void join(int a, int b) { up[find(a)] = find(b); }
};

BlockPartition from_labels(const std::vector<std::string>& labels) {
  std::map<std::string, int> first;
  BlockPartition bp;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    auto it = first.find(labels[i]);
    if (it == first.end()) {
      first[labels[i]] = static_cast<int>(bp.blocks.size());
      bp.blocks.push_back(Block{{i}, labels[i], 0, 0});
    } else {
      bp.blocks[it->second].chars.push_back(i);
    }
  }
  return bp;
}

}  // namespace

BlockPartition kor_blocks(const CharTable& t, const std::vector<bool>& mask) {
  int k = t.num_chars();
  std::vector<std::vector<char>> linked(k, std::vector<char>(k, 0));
  parallel_for(static_cast<size_t>(k), [&](size_t ai) {
    int a = static_cast<int>(ai);
    for (int b = a + 1; b < k; ++b) linked[a][b] = !inner(t, a, b, mask).is_zero();
  });
  UnionFind uf(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (linked[a][b]) uf.join(a, b);
  std::vector<std::string> labels(k);
  for (int a = 0; a < k; ++a) labels[a] = std::to_string(uf.find(a));
  auto bp = from_labels(labels);
  for (auto& b : bp.blocks) b.core = "";
  return bp;
}

namespace {

std::string pair_label(const std::string& a, const std::string& b) { return a < b ? a + "&" + b : b + "&" + a; }

// blocks of the base group, with a defect-zero flag
struct BaseBlocks {
  std::vector<int> block;     // per base character
  std::vector<bool> defect0;  // per block
};

BaseBlocks base_blocks(const CharTable& t, int p) {
  auto base = (t.family == "bn" || t.family == "dn") ? cyclic_base(2)
              : t.family == "wreath"                  ? cyclic_base(t.params.at("l"))
                                                      : frobenius_base(t.params.at("p"));
  const CharTable& tmp = base.table;
  std::vector<bool> mask(tmp.num_classes());
  for (int x = 0; x < tmp.num_classes(); ++x) mask[x] = base.orders[x] % p != 0;
  auto kb = kor_blocks(tmp, mask);
  BaseBlocks bb;
  bb.block.resize(tmp.num_chars());
  Int hp = 1;
  {
    Int o = tmp.order;
    while (o % p == 0) o /= p, hp *= p;
  }
  for (size_t i = 0; i < kb.blocks.size(); ++i) {
    for (int c : kb.blocks[i].chars) bb.block[c] = static_cast<int>(i);
    bool d0 = false;
    if (kb.blocks[i].chars.size() == 1) {
      int c = kb.blocks[i].chars[0];
      // identity class: the one with the largest centralizer
      int id = 0;
      for (int x = 0; x < tmp.num_classes(); ++x)
        if (tmp.classes[x].central_order == tmp.order) id = x;
      Rational deg = tmp.values[c][id].rational_part();
      mpz_class dz = deg.get_num();
      d0 = mpz_class(dz % mpz_class(static_cast<long>(hp))) == 0;
    }
    bb.defect0.push_back(d0);
  }
  return bb;
}

std::string wreath_label(const MultiPartition& mu, const BaseBlocks& bb, int p) {
  std::string lab;
  std::map<int, int> sizes;
  for (size_t s = 0; s < mu.size(); ++s) {
    int b = bb.block[s];
    if (bb.defect0[b])
      lab += "[" + std::to_string(s) + ":" + std::to_string(size(mu[s])) + ":" + to_string(core_quotient(mu[s], p).core) + "]";
    else
      sizes[b] += size(mu[s]);
  }
  for (auto& [b, n] : sizes) lab += "{" + std::to_string(b) + ":" + std::to_string(n) + "}";
  return lab;
}

}  // namespace

BlockPartition theoretical_blocks(const CharTable& t, int p) {
  int k = t.num_chars();
  std::vector<std::string> labels(k);
  std::vector<int> weights(k, 0), signs(k, 0);
  const std::string& f = t.family;
  static const std::set<std::string> known{"sn", "an", "tilde-sn", "tilde-an", "bn", "wreath", "gpw", "dn", "hpw"};
  if (!known.count(f)) throw std::invalid_argument("theoretical_blocks: unknown family " + f);
  for (int a = 0; a < k; ++a) {
    const auto& ch = t.chars[a];
    if (f == "sn" || f == "an" || ((f == "tilde-sn" || f == "tilde-an") && !ch.spin)) {
      const Partition& la = ch.base[0];
      auto cq = core_quotient(la, p);
      weights[a] = (size(la) - size(cq.core)) / p;
      std::string g = to_string(cq.core);
      bool alt = f == "an" || f == "tilde-an";
      if (!alt) {
        labels[a] = "(" + g + ")";
      } else {
        labels[a] = "(" + pair_label(g, to_string(conj(cq.core))) + ")";
        if (ch.assoc != 0 && weights[a] == 0) labels[a] += ch.assoc > 0 ? "+" : "-";
      }
    } else if (f == "tilde-sn" || f == "tilde-an") {
      const BarPartition& la = ch.base[0];
      auto cq = bar_core_quotient(la, p);
      weights[a] = cq.weight();
      signs[a] = sigma(cq.core);
      labels[a] = "spin(" + to_string(cq.core) + ")";
      if (ch.assoc != 0 && weights[a] == 0) labels[a] += ch.assoc > 0 ? "+" : "-";
    } else if (f == "bn" || f == "wreath" || f == "gpw") {
      auto bb = base_blocks(t, p);
      labels[a] = wreath_label(ch.base, bb, p);
      int w = 0;
      for (auto& c : ch.base) w += weight(c, p);
      weights[a] = w;
    } else if (f == "dn") {
      const auto& mu = ch.base;
      if (p == 2) {
        labels[a] = "principal";
        continue;
      }
      auto c1 = core_quotient(mu[0], p), c2 = core_quotient(mu[1], p);
      int w1 = (size(mu[0]) - size(c1.core)) / p, w2 = (size(mu[1]) - size(c2.core)) / p;
      weights[a] = w1 + w2;
      std::string l1 = "(" + to_string(c1.core) + ")" + std::to_string(w1);
      std::string l2 = "(" + to_string(c2.core) + ")" + std::to_string(w2);
      labels[a] = pair_label(l1, l2);
      if (ch.assoc != 0 && w1 + w2 == 0) labels[a] += ch.assoc > 0 ? "+" : "-";
    } else if (f == "hpw") {
      labels[a] = "principal";
      int w = 0;
      for (auto& c : ch.base) w += size(c);
      weights[a] = w;
    }
  }
  auto bp = from_labels(labels);
  for (auto& b : bp.blocks) {
    b.weight = weights[b.chars[0]];
    b.sign = signs[b.chars[0]];
  }
  return bp;
}

bool same_partition(const BlockPartition& a, const BlockPartition& b) {
  auto norm = [](const BlockPartition& x) {
    std::set<std::vector<int>> s;
    for (auto& bl : x.blocks) {
      auto c = bl.chars;
      std::sort(c.begin(), c.end());
      s.insert(c);
    }
    return s;
  };
  return norm(a) == norm(b);
}

LatticeSuite rational_lattice_suite(const CharTable& t, const std::vector<bool>& mask) {
  std::vector<int> cols;
  for (int x = 0; x < t.num_classes(); ++x)
    if (mask.empty() || mask[x]) cols.push_back(x);
  int k = t.num_chars(), m = static_cast<int>(cols.size());
  std::vector<std::vector<mpz_class>> rows(k, std::vector<mpz_class>(m));
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < m; ++j) {
      const auto& v = t.values[a][cols[j]];
      if (!v.is_rational()) throw std::invalid_argument("rational_lattice_suite: irrational value in " + t.chars[a].key());
      Rational q = v.rational_part();
      if (q.get_den() != 1) throw std::invalid_argument("rational_lattice_suite: non-integral value");
      rows[a][j] = q.get_num();
    }
  LatticeSuite out;
  out.decomposition.assign(k, std::vector<mpz_class>());
  // one Hermite basis per KOR block; their union is a basis of the whole lattice
  auto kor = kor_blocks(t, mask);
  std::vector<std::vector<int>> owner;  // basis row -> characters of its block
  for (const auto& blk : kor.blocks) {
    std::vector<std::vector<mpz_class>> h;
    for (int a : blk.chars) h.push_back(rows[a]);
    int kk = static_cast<int>(h.size());
    int r = 0;
    for (int j = 0; j < m && r < kk; ++j) {
      while (true) {
        int best = -1;
        for (int i = r; i < kk; ++i)
          if (h[i][j] != 0 && (best < 0 || abs(h[i][j]) < abs(h[best][j]))) best = i;
        if (best < 0) break;
        std::swap(h[r], h[best]);
        bool done = true;
        for (int i = r + 1; i < kk; ++i) {
          if (h[i][j] == 0) continue;
          mpz_class qt = h[i][j] / h[r][j];
          for (int c = j; c < m; ++c) h[i][c] -= qt * h[r][c];
          if (h[i][j] != 0) done = false;
        }
        if (done) break;
      }
      if (h[r][j] != 0) {
        if (h[r][j] < 0)
          for (int c = j; c < m; ++c) h[r][c] = -h[r][c];
        for (int i = 0; i < r; ++i) {
          mpz_class qt;
          mpz_fdiv_q(qt.get_mpz_t(), h[i][j].get_mpz_t(), h[r][j].get_mpz_t());
          for (int c = j; c < m; ++c) h[i][c] -= qt * h[r][c];
        }
        ++r;
      }
    }
    int offset = static_cast<int>(out.basis.size());
    std::vector<int> pivot(r);
    for (int i = 0; i < r; ++i) {
      int j = 0;
      while (h[i][j] == 0) ++j;
      pivot[i] = j;
      out.basis.push_back(h[i]);
    }
    for (int a : blk.chars) {
      auto v = rows[a];
      std::vector<mpz_class> coords(r);
      for (int i = 0; i < r; ++i) {
        const mpz_class& piv = h[i][pivot[i]];
        if (v[pivot[i]] % piv != 0) throw std::logic_error("lattice coordinates are not integral");
        coords[i] = v[pivot[i]] / piv;
        if (coords[i] != 0)
          for (int j = 0; j < m; ++j) v[j] -= coords[i] * h[i][j];
      }
      for (auto& e : v)
        if (e != 0) throw std::logic_error("character outside the lattice span");
      out.decomposition[a].assign(offset, 0);
      out.decomposition[a].insert(out.decomposition[a].end(), coords.begin(), coords.end());
    }
  }
  int r = static_cast<int>(out.basis.size());
  for (auto& d : out.decomposition) d.resize(r, 0);
  out.duals.assign(r, std::vector<Rational>(t.num_classes()));
  for (int i = 0; i < r; ++i)
    for (int x = 0; x < t.num_classes(); ++x) {
      Rational s = 0;
      for (int a = 0; a < k; ++a)
        if (out.decomposition[a][i] != 0) s += Rational(out.decomposition[a][i]) * t.values[a][x].rational_part();
      out.duals[i][x] = s;
    }
  out.duality_ok = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rational s = 0;
      for (int c = 0; c < m; ++c)
        s += out.duals[i][cols[c]] * Rational(out.basis[j][c]) / Rational(static_cast<long>(t.classes[cols[c]].central_order));
      s.canonicalize();
      if (s != (i == j ? 1 : 0)) out.duality_ok = false;
    }
  UnionFind uf(k);
  for (int i = 0; i < r; ++i) {
    int first = -1;
    for (int a = 0; a < k; ++a)
      if (out.decomposition[a][i] != 0) {
        if (first < 0)
          first = a;
        else
          uf.join(a, first);
      }
  }
  std::vector<std::string> labels(k);
  for (int a = 0; a < k; ++a) labels[a] = std::to_string(uf.find(a));
  out.blocks = from_labels(labels);
  return out;
}

}  // namespace isoforge
