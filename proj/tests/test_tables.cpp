#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "isoforge/tables.hpp"

using namespace isoforge;

namespace {

const CharTable& T(const std::string& f, int a, int b = 0) { return cached_table(f, a, b); }

Partition merged(Partition a, const std::vector<int>& extra) {
  a.insert(a.end(), extra.begin(), extra.end());
  std::sort(a.rbegin(), a.rend());
  return a;
}

// number of ways to drop the cycles of mu into boxes of sizes alpha
long young_perm(const Partition& mu, std::vector<int> alpha, size_t i = 0) {
  if (i == mu.size()) return std::all_of(alpha.begin(), alpha.end(), [](int x) { return x == 0; }) ? 1 : 0;
  long s = 0;
  for (auto& a : alpha)
    if (a >= mu[i]) {
      a -= mu[i];
      s += young_perm(mu, alpha, i + 1);
      a += mu[i];
    }
  return s;
}

// Jacobi-Trudi over Young permutation characters
long jt_char(const Partition& la, const Partition& mu) {
  int l = static_cast<int>(la.size());
  std::vector<int> w(l);
  std::iota(w.begin(), w.end(), 0);
  long total = 0;
  do {
    std::vector<int> alpha(l);
    bool ok = true;
    for (int i = 0; i < l; ++i) {
      alpha[i] = la[i] - i + w[i];
      if (alpha[i] < 0) ok = false;
    }
    if (!ok) continue;
    int inv = 0;
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) inv += w[i] > w[j];
    total += (inv % 2 ? -1 : 1) * young_perm(mu, alpha);
  } while (std::next_permutation(w.begin(), w.end()));
  return total;
}

int hook_sum(const Partition& la, const Partition& mu, int q) {
  int s = 0;
  for (auto& [h, rest] : hooks(la, q))
    if (rest == mu) s += h.leg % 2 ? -1 : 1;
  return s;
}

int bar_alpha(const BarPartition& la, const BarPartition& mu, int q) {
  int m = (sigma(la) == 1 && sigma(mu) == -1) ? 2 : 1;
  int s = 0;
  for (auto& [b, rest] : bars(la, q))
    if (rest == mu) s += (b.leg % 2 ? -1 : 1) * m;
  return s;
}

// chi(x g) = sum_b coeff(a, b) psi_b(g) for the rows a, where x is made of the
// cycles in `extra` and g runs over the small classes. Class labels on both
// sides are abstract, so the target of each small class is any class of the
// right type, subject to the choice being injective.
std::string mn_check(const CharTable& big, const CharTable& small, const std::vector<int>& extra,
                     const std::vector<int>& rows, const std::function<ExactScalar(int, int)>& coeff) {
  std::vector<std::vector<ExactScalar>> c(rows.size(), std::vector<ExactScalar>(small.num_chars()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (int b = 0; b < small.num_chars(); ++b) c[i][b] = coeff(rows[i], b);
  int ns = small.num_classes();
  std::vector<std::vector<int>> cand(ns);
  for (int y = 0; y < ns; ++y) {
    Partition target = merged(small.classes[y].base[0], extra);
    std::vector<ExactScalar> rhs(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (int b = 0; b < small.num_chars(); ++b)
        if (!c[i][b].is_zero()) rhs[i] += c[i][b] * small.values[b][y];
    for (int x = 0; x < big.num_classes(); ++x) {
      if (big.classes[x].base[0] != target) continue;
      bool ok = true;
      for (size_t i = 0; i < rows.size() && ok; ++i) ok = big.values[rows[i]][x] == rhs[i];
      if (ok) cand[y].push_back(x);
    }
    if (cand[y].empty()) return "no target for " + small.classes[y].key();
  }
  // distinct small classes may fuse in the big group; injectivity is only
  // required when the target type has room for all of its sources
  std::map<Partition, int> sources, room;
  for (int y = 0; y < ns; ++y) ++sources[merged(small.classes[y].base[0], extra)];
  for (int x = 0; x < big.num_classes(); ++x) ++room[big.classes[x].base[0]];
  std::vector<int> owner(big.num_classes(), -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int y, std::vector<bool>& seen) {
    for (int x : cand[y]) {
      if (seen[x]) continue;
      seen[x] = true;
      if (owner[x] < 0 || augment(owner[x], seen)) {
        owner[x] = y;
        return true;
      }
    }
    return false;
  };
  for (int y = 0; y < ns; ++y) {
    Partition target = merged(small.classes[y].base[0], extra);
    if (room[target] < sources[target]) continue;
    std::vector<bool> seen(big.num_classes(), false);
    if (!augment(y, seen)) return "no injective matching at " + small.classes[y].key();
  }
  return "";
}

std::vector<int> spin_rows(const CharTable& t) {
  std::vector<int> r;
  for (int a = 0; a < t.num_chars(); ++a)
    if (t.chars[a].spin) r.push_back(a);
  return r;
}

std::vector<int> all_rows(const CharTable& t) {
  std::vector<int> r(t.num_chars());
  std::iota(r.begin(), r.end(), 0);
  return r;
}

int identity_class(const CharTable& t) {
  for (int x = 0; x < t.num_classes(); ++x) {
    const auto& c = t.classes[x];
    bool ones = std::all_of(c.base.begin(), c.base.end(), [](const Partition& p) {
      return std::all_of(p.begin(), p.end(), [](int k) { return k == 1; });
    });
    if (ones && c.z != 1 && c.split >= 0 && c.central_order == t.order) return x;
  }
  return -1;
}

}  // namespace

TEST_CASE("class bookkeeping sums to the group order") {
  std::vector<const CharTable*> ts;
  for (int n = 0; n <= 8; ++n) ts.push_back(&T("sn", n)), ts.push_back(&T("an", n));
  for (int n = 2; n <= 8; ++n) ts.push_back(&T("tilde-sn", n)), ts.push_back(&T("tilde-an", n));
  for (int w = 1; w <= 4; ++w) ts.push_back(&T("wreath", 3, w)), ts.push_back(&T("bn", w));
  for (int w = 1; w <= 3; ++w) ts.push_back(&T("gpw", 3, w)), ts.push_back(&T("hpw", 3, w));
  for (int n = 2; n <= 6; ++n) ts.push_back(&T("dn", n));
  for (auto* t : ts) {
    mpq_class total = 0;
    for (auto& c : t->classes) {
      CHECK(t->order % c.central_order == 0);
      total += mpq_class(t->order / c.central_order);
    }
    CHECK_MESSAGE(total == mpq_class(t->order), t->family);
    CHECK(t->num_chars() == t->num_classes());
    CHECK(check_orthogonality(*t).ok());
  }
}

TEST_CASE("symmetric group against Jacobi-Trudi") {
  CHECK(T("sn", 1).values[0][0] == ExactScalar(1));
  const auto& s3 = T("sn", 3);
  CHECK(s3.at(s3.char_index("(2,1)"), s3.class_index("(3)")) == ExactScalar(-1));
  for (int n = 1; n <= 7; ++n) {
    const auto& t = T("sn", n);
    for (int a = 0; a < t.num_chars(); ++a)
      for (int x = 0; x < t.num_classes(); ++x)
        CHECK(t.values[a][x] == ExactScalar(jt_char(t.chars[a].base[0], t.classes[x].base[0])));
  }
}

TEST_CASE("sign twist conjugates the labels") {
  for (int n = 1; n <= 9; ++n) {
    const auto& t = T("sn", n);
    for (int a = 0; a < t.num_chars(); ++a) {
      int b = t.char_index(CharLabel{{conj(t.chars[a].base[0])}}.key());
      for (int x = 0; x < t.num_classes(); ++x)
        CHECK(t.values[b][x] == t.values[a][x] * Rational(sign_of_type(t.classes[x].base[0])));
    }
  }
}

TEST_CASE("small alternating groups") {
  const auto& a3 = T("an", 3);
  auto w = ExactScalar(Rational(-1, 2)) + ExactScalar::term(Rational(1, 2), -3);
  std::multiset<std::string> got, want{w.str(), w.conj().str()};
  for (int a = 0; a < a3.num_chars(); ++a)
    if (a3.chars[a].assoc > 0)
      for (int x = 0; x < a3.num_classes(); ++x)
        if (a3.classes[x].split != 0) got.insert(a3.values[a][x].str());
  CHECK(got == want);

  const auto& a4 = T("an", 4);
  std::multiset<long> sizes;
  for (auto& c : a4.classes) sizes.insert(mpz_class(a4.order / c.central_order).get_si());
  CHECK(sizes == std::multiset<long>{1, 3, 4, 4});
  int linear = 0, with_w = 0;
  int id = identity_class(a4);
  for (int a = 0; a < a4.num_chars(); ++a)
    if (a4.values[a][id] == ExactScalar(1)) {
      ++linear;
      for (auto& v : a4.values[a]) with_w += v == w;
    }
  CHECK(linear == 3);
  CHECK(with_w == 2);
}

TEST_CASE("alternating characters restrict off the split classes") {
  for (int n = 2; n <= 9; ++n) {
    const auto& s = T("sn", n);
    const auto& a = T("an", n);
    for (int c = 0; c < a.num_chars(); ++c) {
      const auto& la = a.chars[c].base[0];
      int parent = s.char_index(CharLabel{{la}}.key());
      for (int x = 0; x < a.num_classes(); ++x) {
        const auto& pi = a.classes[x].base[0];
        int y = s.class_index(ClassLabel{{pi}}.key());
        if (a.chars[c].assoc == 0) {
          CHECK(a.values[c][x] == s.values[parent][y]);
        } else if (a.classes[x].split == 0 || a_inverse(pi) != la) {
          CHECK(a.values[c][x] == s.values[parent][y] / Rational(2));
        }
      }
    }
  }
}

TEST_CASE("alternating MN rule for odd cycles") {
  for (int q : {3, 5, 7})
    for (int n = q; n <= 8; ++n) {
      const auto& big = T("an", n);
      const auto& small = T("an", n - q);
      ExactScalar rq = ExactScalar::root((q % 4 == 1) ? q : -q);
      auto coeff = [&](int a, int b) -> ExactScalar {
        const Partition& la = big.chars[a].base[0];
        const Partition& mu = small.chars[b].base[0];
        Rational al = is_self_conj(la) ? Rational(1, 2) : Rational(1);
        if (small.chars[b].assoc == 0 && !is_self_conj(mu))
          return ExactScalar(al * Rational(hook_sum(la, mu, q) + hook_sum(la, conj(mu), q)));
        auto ml = is_self_conj(la) ? mu_lambda(la, q) : std::nullopt;
        if (ml && *ml == mu) {
          // below n = 2 the pair is rho^+ = chi, rho^- = 0
          int eta = small.chars[b].assoc == 0 ? 1 : small.chars[b].assoc;
          int ee = big.chars[a].assoc * eta;
          return (ExactScalar(hook_sum(la, mu, q)) + rq * Rational(ee)) / Rational(2);
        }
        return ExactScalar(al * Rational(hook_sum(la, mu, q)));
      };
      auto msg = mn_check(big, small, {q}, all_rows(big), coeff);
      CHECK_MESSAGE(msg.empty(), "n=" << n << " q=" << q << " " << msg);
    }
}

TEST_CASE("alternating MN rule for two even cycles") {
  for (int n = 4; n <= 8; ++n) {
    const auto& big = T("an", n);
    const auto& small = T("an", n - 4);
    auto paths = [](const Partition& la, const Partition& mu) {
      int s = 0;
      for (auto& [h1, nu] : hooks(la, 2))
        for (auto& [h2, rest] : hooks(nu, 2))
          if (rest == mu) s += (h1.leg + h2.leg) % 2 ? -1 : 1;
      return s;
    };
    auto coeff = [&](int a, int b) -> ExactScalar {
      const Partition& la = big.chars[a].base[0];
      const Partition& mu = small.chars[b].base[0];
      Rational al = is_self_conj(la) ? Rational(1, 2) : Rational(1);
      int s = paths(la, mu);
      if (!is_self_conj(mu)) s += paths(la, conj(mu));
      return ExactScalar(al * Rational(s));
    };
    auto msg = mn_check(big, small, {2, 2}, all_rows(big), coeff);
    CHECK_MESSAGE(msg.empty(), "n=" << n << " " << msg);
  }
}

TEST_CASE("spin degrees and frozen values") {
  for (int n = 2; n <= 9; ++n) {
    const auto& t = T("tilde-sn", n);
    const auto& ta = T("tilde-an", n);
    int id = identity_class(t), ida = identity_class(ta);
    mpq_class nf = 1;
    for (int i = 2; i <= n; ++i) nf *= i;
    for (int a = 0; a < t.num_chars(); ++a) {
      if (!t.chars[a].spin) continue;
      const auto& la = t.chars[a].base[0];
      int l = static_cast<int>(la.size());
      mpq_class d = nf;
      for (int i = 0; i < l; ++i) {
        for (int k = 2; k <= la[i]; ++k) d /= k;
        for (int j = i + 1; j < l; ++j) d *= mpq_class(la[i] - la[j], la[i] + la[j]);
      }
      d *= mpq_class(1L << ((n - l) / 2));
      d.canonicalize();
      CHECK(t.values[a][id] == ExactScalar(Rational(d)));
      // in the double cover of A_n the characters with sigma = +1 split in halves
      if (sigma(la) == 1) d /= 2;
      d.canonicalize();
      for (int c = 0; c < ta.num_chars(); ++c)
        if (ta.chars[c].spin && ta.chars[c].base[0] == la) CHECK(ta.values[c][ida] == ExactScalar(Rational(d)));
    }
    for (const CharTable* tt : {&t, &ta})
      for (int a : spin_rows(*tt))
        for (int x = 0; x < tt->num_classes(); ++x)
          if (tt->classes[x].z < 0 && tt->classes[x].split == 0) CHECK(tt->values[a][x].is_zero());
  }
  const auto& s3 = T("tilde-sn", 3);
  CHECK(s3.at(s3.char_index("spin(2,1)+"), s3.class_index("(2,1)z0")) == ExactScalar::root(-1));
  CHECK(s3.at(s3.char_index("spin(3)"), s3.class_index("(1,1,1)z0")) == ExactScalar(2));
  CHECK(sq_sign(3) == -1);
}

TEST_CASE("spin MN rule in the double cover of S_n") {
  for (int q : {3, 5, 7})
    for (int n = q; n <= 8; ++n) {
      const auto& big = T("tilde-sn", n);
      const auto& small = T("tilde-sn", n - q);
      ExactScalar iq = ExactScalar::i_pow((q - 1) / 2) * ExactScalar::root(q);
      Rational s(sq_sign(q));
      auto coeff = [&](int a, int b) -> ExactScalar {
        if (!small.chars[b].spin) return ExactScalar();
        const BarPartition& la = big.chars[a].base[0];
        const BarPartition& mu = small.chars[b].base[0];
        int al = bar_alpha(la, mu, q);
        if (sigma(mu) == 1) return ExactScalar(s * Rational(al));
        BarPartition minus = la;
        auto it = std::find(minus.begin(), minus.end(), q);
        bool removes_q = it != minus.end() && (minus.erase(it), minus == mu);
        if (removes_q) {
          int ee = big.chars[a].assoc * small.chars[b].assoc;
          return (ExactScalar(al) + iq * Rational(ee)) * s / Rational(2);
        }
        return ExactScalar(s * Rational(al, 2));
      };
      auto msg = mn_check(big, small, {q}, spin_rows(big), coeff);
      CHECK_MESSAGE(msg.empty(), "n=" << n << " q=" << q << " " << msg);
    }
}

TEST_CASE("spin MN rule in the double cover of A_n") {
  for (int q : {3, 5})
    for (int n = q; n <= 8; ++n) {
      const auto& big = T("tilde-an", n);
      const auto& small = T("tilde-an", n - q);
      ExactScalar iq = ExactScalar::i_pow((q - 1) / 2) * ExactScalar::root(q);
      Rational s(sq_sign(q));
      auto coeff = [&](int a, int b) -> ExactScalar {
        if (!small.chars[b].spin) return ExactScalar();
        const BarPartition& la = big.chars[a].base[0];
        const BarPartition& mu = small.chars[b].base[0];
        int al = bar_alpha(la, mu, q);
        if (al == 0) return ExactScalar();
        if (sigma(la) == -1) return ExactScalar(s * Rational(al));
        if (sigma(mu) == -1) return ExactScalar(s * Rational(al, 2));
        int eta = small.chars[b].assoc == 0 ? 1 : small.chars[b].assoc;
        int ee = big.chars[a].assoc * eta;
        return (ExactScalar(al) + iq * Rational(ee)) * s / Rational(2);
      };
      auto msg = mn_check(big, small, {q}, spin_rows(big), coeff);
      CHECK_MESSAGE(msg.empty(), "n=" << n << " q=" << q << " " << msg);
    }
}

TEST_CASE("wreath MN rule is independent of the removed cycle") {
  for (int l : {2, 3, 4}) {
    BaseGroup h = cyclic_base(l);
    for (int w = 1; w <= 4; ++w) {
      const auto& big = T("wreath", l, w);
      for (int a = 1; a <= w; ++a) {
        const auto& small = T("wreath", l, w - a);
        for (int y = 0; y < small.num_classes(); ++y)
          for (int t = 0; t < l; ++t) {
            MultiPartition target = small.classes[y].base;
            target[t] = merged(target[t], {a});
            int x = big.class_index(ClassLabel{target}.key());
            REQUIRE(x >= 0);
            for (int c = 0; c < big.num_chars(); ++c) {
              const auto& mu = big.chars[c].base;
              ExactScalar rhs;
              for (int s = 0; s < l; ++s)
                for (auto& [hk, rest] : hooks(mu[s], a)) {
                  MultiPartition nu = mu;
                  nu[s] = rest;
                  int b = small.char_index(CharLabel{nu}.key());
                  rhs += h.table.values[s][t] * small.values[b][y] * Rational(hk.leg % 2 ? -1 : 1);
                }
              CHECK(big.values[c][x] == rhs);
            }
          }
      }
    }
  }
}

TEST_CASE("hyperoctahedral and type D") {
  CHECK(T("bn", 2).num_classes() == 5);
  CHECK(T("dn", 2).num_chars() == 4);
  for (int n = 1; n <= 6; ++n) {
    const auto& b = T("bn", n);
    int alpha = b.char_index(CharLabel{{{}, {n}}}.key());
    for (int x = 0; x < b.num_classes(); ++x)
      CHECK(b.values[alpha][x] == ExactScalar(b.classes[x].base[1].size() % 2 ? -1 : 1));
  }
  for (int n = 2; n <= 6; ++n)
    for (auto& c : T("dn", n).classes) CHECK(c.base[1].size() % 2 == 0);

  const auto& d4 = T("dn", 4);
  const auto& b4 = T("bn", 4);
  const auto& s2 = T("sn", 2);
  for (Partition mu : {Partition{2}, Partition{1, 1}}) {
    int theta = b4.char_index(CharLabel{{mu, mu}}.key());
    for (int eps : {1, -1}) {
      int c = d4.char_index(CharLabel{{mu, mu}, eps}.key());
      REQUIRE(c >= 0);
      for (int x = 0; x < d4.num_classes(); ++x) {
        const auto& cl = d4.classes[x];
        if (cl.split == 0) continue;
        Partition half;
        for (int k : cl.base[0]) half.push_back(k / 2);
        int y = b4.class_index(ClassLabel{cl.base}.key());
        ExactScalar chi = s2.values[s2.char_index(CharLabel{{mu}}.key())][s2.class_index(ClassLabel{{half}}.key())];
        ExactScalar want = (b4.values[theta][y] + chi * Rational(eps * cl.split * (1L << half.size()))) / Rational(2);
        CHECK(d4.values[c][x] == want);
      }
    }
  }
}

TEST_CASE("sign character of G_{3,w} twists by star") {
  BaseGroup h = frobenius_base(3);
  for (int w = 1; w <= 4; ++w) {
    const auto& g = T("gpw", 3, w);
    int eps = g.char_index(CharLabel{{Partition(w, 1), {}, {}}}.key());
    REQUIRE(eps >= 0);
    for (int x = 0; x < g.num_classes(); ++x) {
      int s = 1;
      for (int t = 0; t < 3; ++t)
        for (int j : g.classes[x].base[t]) s *= (h.orders[t] == 2 ? -1 : 1) * ((j - 1) % 2 ? -1 : 1);
      CHECK(g.values[eps][x] == ExactScalar(s));
    }
    auto tw = twist_permutation(g, eps);
    for (int a = 0; a < g.num_chars(); ++a) CHECK(g.chars[tw[a]].base == star(g.chars[a].base));
  }
}

TEST_CASE("H_{3,w} classes and the a-bijection") {
  for (int w = 1; w <= 3; ++w) {
    const auto& hh = T("hpw", 3, w);
    for (const auto& beta : partitions_of(w)) {
      int even = 0;
      for (int k : beta) even += k % 2 == 0;
      bool present = false;
      for (auto& c : hh.classes) present |= c.base == MultiPartition{{}, {}, beta};
      CHECK(present == (even % 2 == 0));
    }
  }
  for (int w = 1; w <= 4; ++w)
    for (const auto& mu : multipartitions_of(3, w))
      if (star(mu) == mu) CHECK(hpw_a_inverse(hpw_a_map(mu, 3), 3) == mu);
}
