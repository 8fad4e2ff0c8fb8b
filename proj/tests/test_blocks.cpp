#include <algorithm>
#include <set>

#include "doctest.h"
#include "isoforge/barpartitions.hpp"
#include "isoforge/blocks.hpp"
#include "isoforge/tables.hpp"

using namespace isoforge;

namespace {

const CharTable& T(const std::string& f, int a, int b = 0) { return cached_table(f, a, b); }

bool regular_agrees(const CharTable& t, int p) {
  return same_partition(kor_blocks(t, class_subset(t, "p-regular", p)), theoretical_blocks(t, p));
}

bool all_rational(const CharTable& t) {
  for (auto& row : t.values)
    for (auto& v : row)
      if (!v.is_rational()) return false;
  return true;
}

}  // namespace

TEST_CASE("all classes give singleton blocks") {
  for (const CharTable* t : {&T("sn", 5), &T("an", 6), &T("tilde-sn", 5), &T("dn", 4), &T("gpw", 3, 2)}) {
    auto kb = kor_blocks(*t, class_subset(*t, "all", 0));
    CHECK(static_cast<int>(kb.blocks.size()) == t->num_chars());
  }
  const auto& s4 = T("sn", 4);
  auto L = rational_lattice_suite(s4, class_subset(s4, "all", 0));
  CHECK(L.duality_ok);
  for (size_t a = 0; a < L.decomposition.size(); ++a)
    CHECK(std::count_if(L.decomposition[a].begin(), L.decomposition[a].end(), [](const mpz_class& z) { return z != 0; }) == 1);
}

TEST_CASE("frozen small blocks") {
  const auto& s3 = T("sn", 3);
  auto kb = kor_blocks(s3, class_subset(s3, "p-regular", 3));
  REQUIRE(kb.blocks.size() == 1);
  CHECK(kb.blocks[0].chars.size() == 3);
  auto L = rational_lattice_suite(s3, class_subset(s3, "p-regular", 3));
  CHECK(L.decomposition.size() == 3);
  CHECK(L.basis.size() == 2);
  CHECK(L.blocks.blocks.size() == 1);
  CHECK(L.duality_ok);

  // S_4 at 2: every partition of 4 has empty 2-core
  const auto& s4 = T("sn", 4);
  CHECK(kor_blocks(s4, class_subset(s4, "p-regular", 2)).blocks.size() == 1);
  CHECK(regular_agrees(s4, 2));

  // S_5 at 5: the principal block holds the hook partitions
  const auto& s5 = T("sn", 5);
  auto th = theoretical_blocks(s5, 5);
  CHECK(th.blocks.size() == 3);  // plus the 5-cores (3,2) and (2,2,1)
  for (auto& b : th.blocks) {
    if (b.weight != 1) continue;
    CHECK(b.chars.size() == 5);
    for (int c : b.chars) {
      const auto& la = s5.chars[c].base[0];
      CHECK(la.size() + la[0] == 6);
    }
  }
  CHECK(regular_agrees(s5, 5));

  // spin characters of the double cover of S_5 by bar 3-core
  const auto& t5 = T("tilde-sn", 5);
  std::set<std::string> spin_cores;
  for (auto& b : theoretical_blocks(t5, 3).blocks)
    if (t5.chars[b.chars[0]].spin) spin_cores.insert(b.core);
  CHECK(spin_cores == std::set<std::string>{"spin(2)", "spin(4,1)+", "spin(4,1)-"});
}

TEST_CASE("defect zero self-conjugate cores split") {
  // (2,1) is a 3-core: rho^+ and rho^- of A_3 sit in different blocks
  const auto& a3 = T("an", 3);
  auto kb = kor_blocks(a3, class_subset(a3, "p-regular", 5));
  CHECK(kb.blocks.size() == 3);
  // (3,1,1) is a self-conjugate 3-core of 5
  const auto& a5 = T("an", 5);
  auto th = theoretical_blocks(a5, 3);
  int plus = a5.char_index("(3,1,1)+"), minus = a5.char_index("(3,1,1)-");
  CHECK(th.block_of(plus) != th.block_of(minus));
  CHECK(th.blocks[th.block_of(plus)].chars.size() == 1);
  CHECK(regular_agrees(a5, 3));
}

TEST_CASE("Gram closure matches core labels") {
  for (int n = 1; n <= 8; ++n)
    for (int p : {2, 3, 5}) CHECK_MESSAGE(regular_agrees(T("sn", n), p), "S_" << n << " p=" << p);
  for (int n = 2; n <= 8; ++n)
    for (int p : {2, 3}) CHECK_MESSAGE(regular_agrees(T("an", n), p), "A_" << n << " p=" << p);
  for (int w = 1; w <= 4; ++w) CHECK(regular_agrees(T("wreath", 2, w), 3));
  for (int n = 2; n <= 6; ++n) CHECK_MESSAGE(regular_agrees(T("dn", n), 3), "D_" << n);
  for (int w = 1; w <= 3; ++w) {
    CHECK(regular_agrees(T("gpw", 3, w), 2));
    CHECK(regular_agrees(T("gpw", 3, w), 3));
    CHECK(regular_agrees(T("hpw", 3, w), 3));
  }
}

TEST_CASE("spin blocks at both class sets") {
  for (int n = 2; n <= 8; ++n)
    for (const std::string f : {"tilde-sn", "tilde-an"}) {
      const auto& t = T(f, n);
      auto reg = kor_blocks(t, class_subset(t, "p-regular", 3));
      auto wide = kor_blocks(t, class_subset(t, "spin-C", 3));
      CHECK_MESSAGE(same_partition(reg, wide), f << n);
      CHECK_MESSAGE(same_partition(reg, theoretical_blocks(t, 3)), f << n);
    }
  for (int n = 5; n <= 9; ++n) CHECK(regular_agrees(T("tilde-sn", n), 5));
}

TEST_CASE("block metadata") {
  for (int n = 2; n <= 8; ++n) {
    const auto& s = T("sn", n);
    for (auto& b : theoretical_blocks(s, 3).blocks)
      for (int c : b.chars) {
        auto cq = core_quotient(s.chars[c].base[0], 3);
        CHECK(n == size(cq.core) + 3 * b.weight);
      }
    const auto& t = T("tilde-sn", n);
    for (auto& b : theoretical_blocks(t, 3).blocks)
      for (int c : b.chars)
        if (t.chars[c].spin) {
          auto cq = bar_core_quotient(t.chars[c].base[0], 3);
          CHECK(b.sign == sigma(cq.core));
          CHECK(n == size(cq.core) + 3 * b.weight);
        }
  }
  CHECK_THROWS(theoretical_blocks(CharTable{}, 3));
  CHECK_THROWS(class_subset(T("sn", 3), "nonsense", 3));
}

TEST_CASE("rational lattices recover the blocks") {
  std::vector<std::pair<const CharTable*, int>> cases;
  for (int n = 2; n <= 8; ++n)
    for (int p : {2, 3, 5}) cases.push_back({&T("sn", n), p});
  for (int w = 1; w <= 4; ++w)
    for (int p : {2, 3}) cases.push_back({&T("bn", w), p});
  for (int n = 2; n <= 6; ++n) cases.push_back({&T("dn", n), 3});
  for (int w = 1; w <= 3; ++w) cases.push_back({&T("gpw", 3, w), 3});
  for (auto [t, p] : cases) {
    if (!all_rational(*t)) continue;
    auto mask = class_subset(*t, "p-regular", p);
    auto L = rational_lattice_suite(*t, mask);
    CHECK(L.duality_ok);
    CHECK_MESSAGE(same_partition(L.blocks, kor_blocks(*t, mask)), t->family << " p=" << p);
  }
  CHECK_THROWS(rational_lattice_suite(T("an", 3), {}));
}
