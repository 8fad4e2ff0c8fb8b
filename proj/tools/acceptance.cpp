// one PASS/FAIL line per acceptance criterion; exit 1 only on unexpected failures
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "isoforge/barpartitions.hpp"
#include "isoforge/blocks.hpp"
#include "isoforge/isometry.hpp"
#include "isoforge/tables.hpp"

using namespace isoforge;

namespace {

struct Outcome {
  bool pass = true;
  bool expected_failure = false;  // documented as unattainable
  std::string note;
};

int unexpected = 0;

void run(int id, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass && !o.expected_failure) ++unexpected;
  std::printf("criterion %2d %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.note.c_str(), s);
  std::fflush(stdout);
}

struct TableSpec {
  std::string family;
  int a, b;
  std::vector<int> primes;
};

std::vector<TableSpec> criterion_tables() {
  std::vector<TableSpec> v;
  for (int n = 0; n <= 10; ++n) v.push_back({"sn", n, 0, {2, 3}});
  for (int n = 0; n <= 9; ++n) v.push_back({"an", n, 0, {2, 3}});
  for (int n = 0; n <= 9; ++n) v.push_back({"tilde-sn", n, 0, {3}});
  for (int n = 0; n <= 9; ++n) v.push_back({"tilde-an", n, 0, {3}});
  for (int w = 0; w <= 6; ++w) v.push_back({"bn", w, 0, {2, 3}});
  for (int w = 0; w <= 4; ++w) v.push_back({"wreath", 3, w, {2, 3}});
  for (int w = 0; w <= 3; ++w) v.push_back({"gpw", 3, w, {2, 3}});
  for (int n = 0; n <= 6; ++n) v.push_back({"dn", n, 0, {2, 3}});
  for (int w = 0; w <= 3; ++w) v.push_back({"hpw", 3, w, {3}});
  return v;
}

std::string name(const TableSpec& t) {
  return t.family + "(" + std::to_string(t.a) + (t.family == "wreath" || t.family == "gpw" || t.family == "hpw"
                                                     ? "," + std::to_string(t.b)
                                                     : "") +
         ")";
}

IsometryRequest req(const std::string& kind, int p, int w, const std::string& c1 = "", const std::string& c2 = "",
                    const std::string& weights = "", const std::string& cover1 = "") {
  IsometryRequest q;
  q.kind = kind;
  q.p = p;
  q.w = w;
  q.core1 = c1;
  q.core2 = c2;
  q.weights = weights;
  q.cover1 = cover1;
  return q;
}

std::string describe(const IsometryRequest& q) {
  std::string s = q.kind + "(p=" + std::to_string(q.p);
  if (q.w > 0) s += ",w=" + std::to_string(q.w);
  if (!q.core1.empty() || !q.core2.empty()) s += ",'" + q.core1 + "'->'" + q.core2 + "'";
  if (!q.weights.empty()) s += ",b=" + q.weights;
  if (!q.cover1.empty()) s += "," + q.cover1;
  return s + ")";
}

std::string first_witness(const VerificationReport& r) {
  for (const CheckResult* c : {&r.mixed_vanishing, &r.broue_integrality, &r.kor_gram, &r.r_commutation})
    if (!c->witnesses.empty()) {
      auto& w = c->witnesses[0];
      return w.check + " at " + w.x + " / " + w.y + " = " + w.value;
    }
  return "no witness";
}

// instance must pass every listed mode
Outcome instances(const std::vector<std::pair<IsometryRequest, std::vector<std::string>>>& list) {
  Outcome o;
  std::ostringstream os;
  for (auto& [q, modes] : list) {
    Isometry iso = build_isometry(q);
    for (auto& m : modes) {
      auto r = verify(iso, m);
      bool ok = r.ok() && (m != "broue" || (r.broue_integrality.ran && r.broue_integrality.pass));
      os << describe(q) << ":" << m << (ok ? "=ok " : "=FAILED ");
      if (!ok) {
        o.pass = false;
        os << "(" << first_witness(r) << ") ";
      }
    }
  }
  o.note = os.str();
  return o;
}

std::vector<IsometryRequest> all_instances() {
  return {req("mainAn", 3, 2, "1", ""),
          req("mainAn", 3, 1, "", "3,1,1"),
          req("mainAn_p2", 2, 2, "", "1"),
          req("mainAn_p2", 2, 1, "2,1", "1"),
          req("mainTilde", 3, 1, "", "1"),
          req("mainTilde", 3, 1, "1", "2"),
          req("brouetilde", 3, 1, "", "1"),
          req("brgr", 3, 2),
          req("osima", 3, 1),
          req("osima", 2, 2),
          req("couronne", 3, 0, ";1", "1;1", "1,0"),
          req("dn_nonconj", 3, 0, ";1", "2;1", "1,0"),
          req("dn_conj", 3, 1, "", ""),
          req("dn_conj", 3, 1, "", "1"),
          req("fh", 3, 2)};
}

}  // namespace

int main() {
  run(1, [] {
    Outcome o;
    int count = 0;
    std::string bad;
    for (auto& t : criterion_tables()) {
      const CharTable& tab = cached_table(t.family, t.a, t.b);
      ++count;
      auto rep = check_orthogonality(tab);
      if (!rep.ok()) {
        o.pass = false;
        bad += " " + name(t) + ": " + rep.witness;
      }
    }
    o.note = "both orthogonality relations, exact, " + std::to_string(count) + " tables" + (bad.empty() ? "" : ";" + bad);
    return o;
  });

  run(2, [] {
    Outcome o;
    int count = 0, spin = 0;
    std::string bad;
    for (auto& t : criterion_tables()) {
      const CharTable& tab = cached_table(t.family, t.a, t.b);
      for (int p : t.primes) {
        ++count;
        auto kb = kor_blocks(tab, class_subset(tab, "p-regular", p));
        if (!same_partition(kb, theoretical_blocks(tab, p))) {
          o.pass = false;
          bad += " " + name(t) + "@p=" + std::to_string(p);
        }
        if (t.family == "tilde-sn" || t.family == "tilde-an") {
          ++spin;
          if (!same_partition(kb, kor_blocks(tab, class_subset(tab, "spin-C", p)))) {
            o.pass = false;
            bad += " " + name(t) + " spin-C";
          }
        }
      }
    }
    o.note = "Gram blocks = core/weight blocks in " + std::to_string(count) + " cases, spin-C = p-regular in " +
             std::to_string(spin) + (bad.empty() ? "" : "; differs:" + bad);
    return o;
  });

  run(3, [] {
    return instances({{req("mainAn", 3, 2, "1", ""), {"broue"}},
                      {req("mainAn", 3, 1, "", "3,1,1"), {"broue"}}});
  });

  run(4, [] {
    Outcome o;
    o.expected_failure = true;
    // equal-weight 2-blocks of A_5 and A_6 do not exist
    auto w = [](int n) {
      std::set<int> s;
      for (auto& b : theoretical_blocks(cached_table("an", n), 2).blocks) s.insert(b.weight);
      return s;
    };
    auto w5 = w(5), w6 = w(6);
    std::string ws5, ws6;
    for (int x : w5) ws5 += std::to_string(x) + " ";
    for (int x : w6) ws6 += std::to_string(x) + " ";
    bool common = false;
    for (int x : w5) common |= w6.count(x) > 0;
    Outcome sup = instances({{req("mainAn_p2", 2, 2, "", "1"), {"broue"}},
                             {req("mainAn_p2", 2, 1, "2,1", "1"), {"broue"}},
                             {req("mainAn_p2", 2, 1, "2,1", ""), {"broue"}}});
    if (common) {
      o.pass = false;
      o.expected_failure = false;
      o.note = "A_5/A_6 share a 2-weight; instance missing from this harness";
      return o;
    }
    o.pass = false;
    o.note = "unattainable: 2-block weights of A_5 are { " + ws5 + "} and of A_6 are { " + ws6 +
             "}, no equal-weight pair; other mainAn_p2 instances: " + sup.note;
    if (!sup.pass) o.expected_failure = false;
    return o;
  });

  run(5, [] {
    return instances({{req("mainTilde", 3, 1, "", "1"), {"broue"}},
                      {req("mainTilde", 3, 1, "1", "2"), {"broue"}},
                      {req("mainTilde", 3, 1, "1", "2", "", "tilde-an"), {"broue"}},
                      {req("brouetilde", 3, 1, "", "1"), {"broue"}}});
  });

  run(6, [] { return instances({{req("brgr", 3, 2), {"generalized", "broue"}}}); });

  run(7, [] { return instances({{req("osima", 3, 1), {"generalized"}}, {req("osima", 2, 2), {"generalized"}}}); });

  run(8, [] { return instances({{req("couronne", 3, 0, ";1", "1;1", "1,0"), {"broue"}}}); });

  run(9, [] {
    return instances({{req("dn_nonconj", 3, 0, ";1", "2;1", "1,0"), {"broue"}},
                      {req("dn_conj", 3, 1, "", ""), {"broue"}},
                      {req("dn_conj", 3, 1, "", "1"), {"broue"}}});
  });

  run(10, [] { return instances({{req("fh", 3, 2), {"generalized", "broue"}}}); });

  run(11, [] {
    Outcome o;
    int n = 0;
    std::string bad;
    for (auto& q : all_instances()) {
      Isometry iso = build_isometry(q);
      ++n;
      for (const Isometry* i : {&iso}) {
        auto r = r_commutation_check(*i);
        auto b = r_commutation_check(i->inverse());
        if (!r.pass || !b.pass) {
          o.pass = false;
          auto& w = (!r.pass ? r : b).witnesses;
          bad += " " + describe(q) + (w.empty() ? "" : " [" + w[0].x + "] " + w[0].y + " " + w[0].detail);
        }
      }
    }
    o.note = "commutation over Lambda_0 and over-weight vanishing, both directions, " + std::to_string(n) +
             " isometries" + (bad.empty() ? "" : "; failing:" + bad);
    return o;
  });

  run(12, [] {
    Outcome o;
    int flips = 0, flips_caught = 0, negations = 0, swaps = 0, swaps_caught = 0, survivors_perfect = 0;
    for (auto& q : all_instances()) {
      Isometry iso = build_isometry(q);
      for (size_t k = 0; k < iso.src_block.size(); ++k) {
        ++flips;
        auto r = verify(flip_sign(iso, k), iso.mode);
        if (!r.ok() && first_witness(r) != "no witness")
          ++flips_caught;
        else if (iso.src_block.size() == 1)
          ++negations;  // flipping the only sign is -I
      }
      for (size_t a = 0; a < iso.src_block.size(); ++a)
        for (size_t b = a + 1; b < iso.src_block.size(); ++b) {
          ++swaps;
          Isometry s = swap_targets(iso, a, b);
          auto r = verify(s, iso.mode);
          if (!r.ok() && first_witness(r) != "no witness")
            ++swaps_caught;
          else if (verify(s, "generalized").ok() && verify(s, "kor").ok())
            ++survivors_perfect;
        }
    }
    o.pass = flips == flips_caught && swaps == swaps_caught;
    // an undetected swap is itself a perfect isometry passing every check,
    // so no verifier can reject it
    o.expected_failure = flips == flips_caught + negations && swaps - swaps_caught == survivors_perfect;
    o.note = "sign flips caught " + std::to_string(flips_caught) + "/" + std::to_string(flips) + ", label swaps caught " +
             std::to_string(swaps_caught) + "/" + std::to_string(swaps);
    if (negations)
      o.note += "; " + std::to_string(negations) + " uncaught flip(s) on one-character blocks, where the flip is -I";
    if (swaps != swaps_caught)
      o.note += "; the " + std::to_string(swaps - swaps_caught) +
                " undetected swaps give maps that are again perfect isometries with r-commutation (" +
                std::to_string(survivors_perfect) + " confirmed), unattainable as stated";
    return o;
  });

  run(13, [] {
    Outcome o;
    long checked = 0;
    auto fail = [&](const std::string& what) {
      if (o.pass) o.note = "first failure: " + what;
      o.pass = false;
    };
    for (int n = 0; n <= 11; ++n)
      for (auto& la : partitions_of(n)) {
        for (int p : {2, 3, 5}) {
          auto c = core_quotient(la, p);
          ++checked;
          if (from_core_quotient(c.core, c.quotient, p) != la) fail("core/quotient round trip " + to_string(la));
        }
        if (n > 10) continue;
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
          ++checked;
          if (seen.size() != 1 || *seen.begin() != delta_sign(la, q)) fail("delta order " + to_string(la));
        }
        for (int q : {3, 5, 7})
          if (delta_sign(la, q) != delta_sign(conj(la), q)) fail("delta under conjugation " + to_string(la));
        for (int p : {2, 3})
          for (int q = p; q <= n; q += p)
            for (auto& [h, mu] : hooks(la, q)) {
              ++checked;
              int lf = quotient_hook_leg(la, mu, p);
              if ((h.leg % 2 ? -1 : 1) != (lf % 2 ? -1 : 1) * delta_sign(la, p) * delta_sign(mu, p))
                fail("hook leg transfer " + to_string(la));
            }
        if (is_self_conj(la))
          for (int q : a_map(la)) {
            int selfconj = 0;
            for (auto& [h, nu] : hooks(la, q)) selfconj += is_self_conj(nu);
            ++checked;
            if (selfconj != 1) fail("unique self-conjugate hook " + to_string(la));
          }
      }
    for (int n = 0; n <= 11; ++n)
      for (auto& la : bar_partitions_of(n)) {
        for (int q : {3, 5}) {
          auto cq = bar_core_quotient(la, q);
          ++checked;
          if (from_bar_core_quotient(cq.core, cq.zero, cq.pairs, q) != la) fail("bar round trip " + to_string(la));
          if (sigma(la) != sigma(cq.core) * quotient_sigma(cq)) fail("sigma product " + to_string(la));
        }
        if (n > 10) continue;
        std::set<int> seen;
        std::function<void(const BarPartition&, int)> walk = [&](const BarPartition& mu, int s) {
          auto bs = bars(mu, 3);
          if (bs.empty()) {
            seen.insert(s);
            return;
          }
          for (auto& [b, nu] : bs) walk(nu, b.leg % 2 ? -s : s);
        };
        walk(la, 1);
        ++checked;
        if (seen.size() != 1 || *seen.begin() != delta_bar_sign(la, 3)) fail("bar delta order " + to_string(la));
        if (is_bar_core(la, 3) && delta_bar_sign(la, 3) != 1) fail("bar core sign " + to_string(la));
        for (int k = 1; 3 * k <= n; ++k)
          for (auto& [b, mu] : bars(la, 3 * k)) {
            ++checked;
            int lg = bar_quotient_leg(la, mu, 3);
            if ((b.leg % 2 ? -1 : 1) != (lg % 2 ? -1 : 1) * delta_bar_sign(la, 3) * delta_bar_sign(mu, 3))
              fail("bar leg transfer " + to_string(la));
          }
      }
    if (o.pass) o.note = std::to_string(checked) + " exhaustive checks up to size 11";
    return o;
  });

  std::printf("unexpected failures: %d\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
