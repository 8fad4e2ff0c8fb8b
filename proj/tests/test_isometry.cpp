#include <cstdlib>
#include <map>

#include "doctest.h"
#include "isoforge/blocks.hpp"
#include "isoforge/isometry.hpp"
#include "isoforge/tables.hpp"

using namespace isoforge;

namespace {

IsometryRequest req(const std::string& kind, int p, int w, const std::string& c1 = "", const std::string& c2 = "") {
  IsometryRequest q;
  q.kind = kind;
  q.p = p;
  q.w = w;
  q.core1 = c1;
  q.core2 = c2;
  return q;
}

IsometryRequest wreq(const std::string& kind, const std::string& c1, const std::string& c2, const std::string& b) {
  IsometryRequest q = req(kind, 3, 0, c1, c2);
  q.weights = b;
  return q;
}

std::vector<IsometryRequest> instances() {
  std::vector<IsometryRequest> v = {
      req("mainAn", 3, 2, "1", ""),
      req("mainAn", 3, 1, "", "3,1,1"),
      req("mainAn_p2", 2, 2, "", "1"),
      req("mainTilde", 3, 1, "", "1"),
      req("mainTilde", 3, 1, "1", "2"),
      req("brouetilde", 3, 1, "", "1"),
      req("brgr", 3, 2),
      req("osima", 3, 1),
      req("osima", 2, 2),
      wreq("couronne", ";1", "1;1", "1,0"),
      wreq("dn_nonconj", ";1", "2;1", "1,0"),
      req("dn_conj", 3, 1, "", "1"),
      req("fh", 3, 2),
  };
  IsometryRequest cross = req("mainTilde", 3, 1, "1", "2");
  cross.cover1 = "tilde-an";
  v.push_back(cross);
  return v;
}

std::string image_of(const Isometry& iso, const std::string& key) {
  int k = iso.image_of(iso.source->char_index(key));
  REQUIRE(k >= 0);
  return std::string(iso.sign[k] > 0 ? "+" : "-") + iso.target->chars[iso.image[k]].key();
}

}  // namespace

TEST_CASE("degenerate tables") {
  for (const CharTable* t : {&cached_table("dn", 0), &cached_table("dn", 1), &cached_table("hpw", 3, 0)}) {
    CHECK(t->num_chars() == 1);
    CHECK(t->num_classes() == 1);
    CHECK(check_orthogonality(*t).ok());
  }
  CHECK(cached_table("dn", 1).char_index("((),(1))") == 0);
}

TEST_CASE("A7 to A6 at p = 3") {
  auto iso = build_isometry(req("mainAn", 3, 2, "1", ""));
  CHECK(iso.src_block.size() == 6);
  CHECK(image_of(iso, "(7)") == "+(4,1,1)");
  CHECK(image_of(iso, "(4,2,1)") == "-(6)");
  CHECK(image_of(iso, "(4,1,1,1)+") == "-(3,2,1)-");
  auto r = verify(iso, "broue");
  CHECK(r.mixed_vanishing.pass);
  CHECK(r.broue_integrality.pass);
  CHECK(r.kor_gram.pass);
  CHECK(r.r_commutation.ran);
  CHECK(r.r_commutation.pass);
}

TEST_CASE("crossover and composition") {
  auto iso = build_isometry(req("mainTilde", 3, 1, "1", "2"));
  CHECK(iso.source->family == "tilde-sn");
  CHECK(iso.target->family == "tilde-an");
  CHECK(image_of(iso, "spin(3,1)") == "+spin(3,2)");
  CHECK(verify(iso, "broue").ok());
  auto br = build_isometry(req("brouetilde", 3, 1, "", "1"));
  CHECK(image_of(br, "spin(2,1)") == "-spin(4)");
  CHECK(verify(br, "broue").ok());
  CHECK_THROWS(build_isometry(req("brouetilde", 3, 1, "", "2")));
}

TEST_CASE("theorem modes") {
  for (auto& q : instances()) {
    INFO(q.kind << " " << q.core1 << " | " << q.core2);
    auto iso = build_isometry(q);
    CHECK(verify(iso, iso.mode).ok());
    // generalized and KOR agree on the same class sets
    auto g = verify(iso, "generalized");
    auto k = verify(iso, "kor");
    CHECK(g.mixed_vanishing.pass == k.kor_gram.pass);
    CHECK(g.ok());
  }
  CHECK(build_isometry(req("brgr", 3, 2)).mode == "broue");
  CHECK(build_isometry(req("brgr", 3, 3)).mode == "generalized");
  CHECK(build_isometry(req("osima", 3, 1)).mode == "generalized");
}

TEST_CASE("adjoint and identity kernels") {
  for (auto& q : instances()) {
    auto iso = build_isometry(q);
    auto f = i_hat(iso);
    auto b = i_hat(iso.inverse());
    for (size_t x = 0; x < f.size(); ++x)
      for (size_t y = 0; y < f[x].size(); ++y) CHECK(b[y][x] == f[x][y].conj());
  }
  // the whole character set of S_5 mapped to itself: Ihat = delta * |C(x)|
  Isometry id;
  const auto& s5 = cached_table("sn", 5);
  id.source = id.target = &s5;
  for (int a = 0; a < s5.num_chars(); ++a) {
    id.src_block.push_back(a);
    id.image.push_back(a);
    id.sign.push_back(1);
  }
  auto k = i_hat(id);
  for (int x = 0; x < s5.num_classes(); ++x)
    for (int y = 0; y < s5.num_classes(); ++y)
      CHECK(k[x][y] == (x == y ? ExactScalar(Rational(s5.classes[x].central_order)) : ExactScalar()));
}

TEST_CASE("kernel does not depend on the worker count") {
  auto iso = build_isometry(req("brgr", 3, 2));
  setenv("ISOFORGE_THREADS", "1", 1);
  auto a = i_hat(iso);
  setenv("ISOFORGE_THREADS", "4", 1);
  auto b = i_hat(iso);
  unsetenv("ISOFORGE_THREADS");
  CHECK(a == b);
}

TEST_CASE("inverse round trip") {
  auto iso = build_isometry(req("fh", 3, 2));
  auto back = iso.inverse().inverse();
  CHECK(back.src_block == iso.src_block);
  CHECK(back.image == iso.image);
  CHECK(back.sign == iso.sign);
  CHECK(verify(iso.inverse(), "generalized").ok());
}

TEST_CASE("sign flips are always caught") {
  for (auto& q : instances()) {
    auto iso = build_isometry(q);
    for (size_t k = 0; k < iso.src_block.size(); ++k) {
      auto r = verify(flip_sign(iso, k), iso.mode);
      CHECK_FALSE(r.ok());
      bool witnessed = !r.mixed_vanishing.witnesses.empty() || !r.kor_gram.witnesses.empty() ||
                       !r.r_commutation.witnesses.empty() || !r.broue_integrality.witnesses.empty();
      CHECK(witnessed);
    }
  }
}

TEST_CASE("label swaps") {
  // every swap is caught here
  for (auto q : {req("brgr", 3, 2), req("dn_conj", 3, 1, "", "1"), req("osima", 2, 2)}) {
    auto iso = build_isometry(q);
    for (size_t a = 0; a < iso.src_block.size(); ++a)
      for (size_t b = a + 1; b < iso.src_block.size(); ++b) CHECK_FALSE(verify(swap_targets(iso, a, b), iso.mode).ok());
  }
  // exchanging the images of an associate pair is conjugation by an odd
  // permutation, so the result is again a perfect isometry
  auto iso = build_isometry(req("mainAn", 3, 2, "1", ""));
  int a = iso.image_of(iso.source->char_index("(4,1,1,1)+"));
  int b = iso.image_of(iso.source->char_index("(4,1,1,1)-"));
  CHECK(verify(swap_targets(iso, a, b), "broue").ok());
  int c = iso.image_of(iso.source->char_index("(5,2)"));
  auto r = verify(swap_targets(iso, a, c), "broue");
  CHECK_FALSE(r.ok());
}

TEST_CASE("r commutation") {
  auto iso = build_isometry(req("mainAn", 3, 1, "", "3,1,1"));
  CHECK(r_commutation_check(iso).pass);
  // A8 with core (3,1,1) has room for two 3-cycles, above its weight
  auto back = iso.inverse();
  CHECK(back.source->params.at("n") == 8);
  CHECK(r_commutation_check(back).pass);
  auto bad = flip_sign(iso, 0);
  auto rb = r_commutation_check(bad);
  CHECK_FALSE(rb.pass);
  REQUIRE_FALSE(rb.witnesses.empty());
  CHECK(rb.witnesses[0].check == "r_commutation");
  for (auto& q : instances()) {
    INFO(q.kind);
    CHECK(r_commutation_check(build_isometry(q)).pass);
  }
}

TEST_CASE("rejected requests") {
  CHECK_THROWS(build_isometry(req("mainAn", 3, 2, "2", "")));       // not a core
  CHECK_THROWS(build_isometry(req("mainAn", 3, 2, "2,1", "")));     // not self-conjugate for mainAn2
  CHECK_THROWS(build_isometry(req("mainAn", 4, 2, "1", "")));       // not prime
  CHECK_THROWS(build_isometry(req("mainAn", 3, 0, "1", "")));       // no weight
  CHECK_THROWS(build_isometry(req("mainAn2", 3, 1, "", "1")));      // self-conjugate
  CHECK_THROWS(build_isometry(req("nosuch", 3, 1)));
  CHECK_THROWS(build_isometry(wreq("couronne", ";1", "1", "1,0")));  // component count
  CHECK_THROWS(verify(build_isometry(req("osima", 3, 1)), "strict"));
}
