#include <functional>
#include <set>

#include "doctest.h"
#include "isoforge/partitions.hpp"

using namespace isoforge;

namespace {

// rim hooks read off the Young diagram cell by cell
struct CellHook {
  int row, col, length, leg;
  Partition rest;
};

std::vector<CellHook> diagram_hooks(const Partition& la, int q) {
  std::vector<CellHook> out;
  auto lc = conj(la);
  for (int i = 0; i < static_cast<int>(la.size()); ++i)
    for (int j = 0; j < la[i]; ++j) {
      int arm = la[i] - j - 1, leg = lc[j] - i - 1;
      if (arm + leg + 1 != q) continue;
      // strip the rim between (i, la_i) and (i+leg, j)
      Partition mu = la;
      for (int r = i; r <= i + leg; ++r) {
        int next = (r + 1 < static_cast<int>(la.size())) ? la[r + 1] : 0;
        mu[r] = (r == i + leg) ? j : std::max(j, next - 1);
      }
      while (!mu.empty() && mu.back() == 0) mu.pop_back();
      out.push_back({i + 1, j + 1, q, leg, mu});
    }
  return out;
}

Partition diagram_core(Partition la, int p, int& removed) {
  removed = 0;
  while (true) {
    auto h = diagram_hooks(la, p);
    if (h.empty()) return la;
    la = h.back().rest;
    ++removed;
  }
}

}  // namespace

TEST_CASE("partition enumeration") {
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(5).size() == 7);
  CHECK(partitions_of(10).size() == 42);
  CHECK(partitions_of(4).front() == Partition{4});
  CHECK(partitions_of(4).back() == Partition{1, 1, 1, 1});
  CHECK(z_order({2, 1, 1}) == 4);
  CHECK(z_order({}) == 1);
}

TEST_CASE("hooks examples") {
  auto h = hooks({2, 1}, 3);
  REQUIRE(h.size() == 1);
  CHECK(h[0].first.leg == 1);
  CHECK(h[0].second.empty());
  CHECK(hooks({1}, 2).empty());
  auto h1 = hooks({2, 1}, 1);
  REQUIRE(h1.size() == 2);
  CHECK(h1[0].first.row == 1);
  CHECK(h1[0].first.col == 2);
  CHECK(h1[0].second == Partition{1, 1});
  CHECK(h1[1].first.row == 2);
  CHECK(h1[1].first.col == 1);
  CHECK(h1[1].second == Partition{2});
}

TEST_CASE("hooks agree with the diagram") {
  for (int n = 0; n <= 10; ++n)
    for (auto& la : partitions_of(n))
      for (int q = 1; q <= n; ++q) {
        auto a = hooks(la, q);
        auto b = diagram_hooks(la, q);
        REQUIRE(a.size() == b.size());
        for (size_t k = 0; k < a.size(); ++k) {
          REQUIRE(a[k].first.row == b[k].row);
          REQUIRE(a[k].first.col == b[k].col);
          REQUIRE(a[k].first.leg == b[k].leg);
          REQUIRE(a[k].second == b[k].rest);
        }
      }
}

TEST_CASE("core and quotient") {
  auto cq = core_quotient({2, 1}, 5);
  CHECK(cq.core == Partition{2, 1});
  CHECK(cq.quotient.size() == 5);
  auto c3 = core_quotient({2, 1}, 3);
  CHECK(c3.core.empty());
  CHECK(c3.quotient == std::vector<Partition>{{}, {1}, {}});
  CHECK(weight({2, 1}, 3) == 1);
  CHECK(quotient_conj({{}, {1}, {}}) == std::vector<Partition>{{}, {1}, {}});
  CHECK(conj({3, 1}) == Partition{2, 1, 1});
  for (int p : {2, 3, 5})
    for (int n = 0; n <= 12; ++n)
      for (auto& la : partitions_of(n)) {
        auto c = core_quotient(la, p);
        int removed = 0;
        REQUIRE(c.core == diagram_core(la, p, removed));
        REQUIRE(weight(la, p) == removed);
        REQUIRE(from_core_quotient(c.core, c.quotient, p) == la);
        auto cc = core_quotient(conj(la), p);
        REQUIRE(cc.core == conj(c.core));
        REQUIRE(cc.quotient == quotient_conj(c.quotient));
      }
  CHECK_THROWS(from_core_quotient({3}, {{}, {}, {}}, 3));
}

TEST_CASE("delta signs") {
  CHECK(delta_sign({2, 1}, 3) == -1);
  CHECK(delta_sign({3, 1}, 3) == 1);
  for (int n = 0; n <= 10; ++n)
    for (auto& la : partitions_of(n)) {
      for (int q : {3, 5, 7}) REQUIRE(delta_sign(la, q) == delta_sign(conj(la), q));
      // every removal path gives the same sign
      for (int q : {2, 3}) {
        std::set<int> seen;
        std::function<void(const Partition&, int)> walk = [&](const Partition& mu, int s) {
          auto hs = hooks(mu, q);
          if (hs.empty()) {
            seen.insert(s);
            return;
          }
          for (auto& [h, nu] : hs) walk(nu, h.leg % 2 ? -s : s);
        };
        walk(la, 1);
        REQUIRE(seen.size() == 1);
        REQUIRE(*seen.begin() == delta_sign(la, q));
      }
    }
}

TEST_CASE("leg parity under conjugation") {
  for (int n = 1; n <= 10; ++n)
    for (auto& la : partitions_of(n))
      for (int q : {1, 3, 5})
        for (auto& [h, mu] : hooks(la, q)) {
          bool found = false;
          for (auto& [h2, mu2] : hooks(conj(la), q))
            if (mu2 == conj(mu)) {
              REQUIRE(h.leg + h2.leg == q - 1);
              found = true;
            }
          REQUIRE(found);
        }
}

TEST_CASE("self-conjugate tools") {
  CHECK(a_map({2, 1}) == std::vector<int>{3});
  CHECK(a_inverse({3}) == Partition{2, 1});
  CHECK(a_map({3, 1, 1}) == std::vector<int>{5});
  CHECK(mu_lambda({2, 1}, 3) == Partition{});
  CHECK(a_map({}).empty());
  CHECK_FALSE(mu_lambda({2, 1}, 5).has_value());
  CHECK_THROWS(a_map({2}));
  for (int n = 0; n <= 14; ++n)
    for (auto& la : partitions_of(n)) {
      if (!is_self_conj(la)) continue;
      auto a = a_map(la);
      REQUIRE(a_inverse(a) == la);
      for (int q : a) {
        auto mu = mu_lambda(la, q);
        REQUIRE(mu.has_value());
        int selfconj = 0;
        for (auto& [h, nu] : hooks(la, q))
          if (is_self_conj(nu)) {
            ++selfconj;
            REQUIRE(nu == *mu);
          }
        REQUIRE(selfconj == 1);
      }
    }
}

TEST_CASE("transfer map") {
  CHECK(psi_map({3}, 3, {}) == Partition{3});
  auto t = psi_map({3}, 3, {1});
  CHECK(size(t) == 4);
  CHECK(core_quotient(t, 3).core == Partition{1});
  CHECK(core_quotient(t, 3).quotient == core_quotient({3}, 3).quotient);
  CHECK_THROWS(psi_map({3}, 3, {3}));
  // commutes with hook removal on quotients, and the sign transfer holds
  for (int p : {2, 3})
    for (int n = 1; n <= 10; ++n)
      for (auto& la : partitions_of(n)) {
        for (int q = p; q <= n; q += p)
          for (auto& [h, mu] : hooks(la, q)) {
            int lf = quotient_hook_leg(la, mu, p);
            int lhs = h.leg % 2 ? -1 : 1;
            int rhs = (lf % 2 ? -1 : 1) * delta_sign(la, p) * delta_sign(mu, p);
            REQUIRE(lhs == rhs);
          }
        std::vector<Partition> targets;
        for (int m = 0; m <= 4; ++m)
          for (auto& g : partitions_of(m))
            if (is_core(g, p)) targets.push_back(g);
        for (auto& core2 : targets) {
          auto psi = psi_map(la, p, core2);
          REQUIRE(size(psi) == size(core2) + p * weight(la, p));
          for (int q = p; q <= n; q += p) {
            std::set<Partition> a, b;
            for (auto& [h, mu] : hooks(psi, q)) a.insert(mu);
            for (auto& [h, mu] : hooks(la, q)) b.insert(psi_map(mu, p, core2));
            REQUIRE(a == b);
          }
        }
      }
}
