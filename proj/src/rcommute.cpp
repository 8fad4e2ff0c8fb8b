#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "isoforge/isometry.hpp"
#include "isoforge/isometry_detail.hpp"
#include "isoforge/tables.hpp"

namespace isoforge {

namespace {

using Coeffs = std::vector<ExactScalar>;  // over the characters of a lower table

bool s_type(const std::string& side) {
  return side == "sn" || side == "an" || side == "tilde-sn" || side == "tilde-an";
}

bool local(const std::string& side) { return side == "gpw" || side == "hpw" || side == "osima"; }

int components(const std::string& side, int l) {
  if (s_type(side)) return 1;
  if (side == "dn") return 2;
  if (side == "wreath") return l;
  return 1;  // local sides carry a single key partition
}

int even_parts(const Partition& la) {
  return static_cast<int>(std::count_if(la.begin(), la.end(), [](int k) { return k % 2 == 0; }));
}

// singular types of a side are labelled by keys; the same key names the
// matching type on the other side
bool key_allowed(const std::string& side, const MultiPartition& key, int p) {
  if (side == "an" || side == "hpw") {
    Partition q = key[0];
    for (auto& k : q) k *= (side == "an" ? p : 1);
    if (side == "an" && p == 2) return key[0].size() % 2 == 0;
    return even_parts(q) % 2 == 0;
  }
  if (side == "tilde-sn" || side == "tilde-an") return is_odd_type(key[0]);
  if (side == "dn") return key[1].size() % 2 == 0;
  return true;
}

int reduction(const std::string& side, int units, int p) { return local(side) ? units : p * units; }

Partition merged(Partition a, const Partition& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.rbegin(), a.rend());
  return a;
}

// cycles of x_lambda per base component
MultiPartition cycles(const std::string& side, const CharTable& t, const MultiPartition& key, int p) {
  auto scaled = [&](Partition b) {
    for (auto& k : b) k *= p;
    return b;
  };
  if (s_type(side)) return {scaled(key[0])};
  if (side == "dn" || side == "wreath") {
    MultiPartition out;
    for (auto& b : key) out.push_back(scaled(b));
    return out;
  }
  int want = side == "osima" ? 1 : p;
  MultiPartition out(t.base_class_orders.size());
  for (size_t j = 0; j < t.base_class_orders.size(); ++j)
    if (t.base_class_orders[j] == want) {
      out[j] = key[0];
      return out;
    }
  throw std::logic_error("no base class of order " + std::to_string(want));
}

std::optional<std::pair<int, int>> genuine_pair(const CharTable& t, const MultiPartition& base, bool spin) {
  CharLabel a{base, 1, spin}, b{base, -1, spin};
  int i = t.char_index(a.key()), j = t.char_index(b.key());
  if (i < 0 || j < 0 || i == j) return std::nullopt;
  if (t.chars[i].base != base || t.chars[j].base != base || t.chars[i].assoc != 1 || t.chars[j].assoc != -1)
    return std::nullopt;
  return std::make_pair(i, j);
}

// the +/- pair whose difference detects a split class of the given type
std::optional<std::pair<int, int>> detector(const std::string& side, const CharTable& t, const MultiPartition& type,
                                            int p) {
  if (side == "an") {
    if (!is_distinct_odd(type[0]) || type[0].empty()) return std::nullopt;
    return genuine_pair(t, {a_inverse(type[0])}, false);
  }
  if (side == "hpw") {
    MultiPartition mu;
    try {
      mu = hpw_a_inverse(type, p);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    return genuine_pair(t, mu, false);
  }
  if (side == "tilde-sn" || side == "tilde-an") {
    if (!is_bar_partition(type[0]) || type[0].empty()) return std::nullopt;
    return genuine_pair(t, type, true);
  }
  return std::nullopt;
}

ExactScalar delta_factor(const std::string& side, const MultiPartition& cyc) {
  ExactScalar c(1);
  for (auto& comp : cyc)
    for (int q : comp) {
      if (side == "tilde-sn" || side == "tilde-an")
        c = c * ExactScalar(sq_sign(q)) * ExactScalar::i_pow((q - 1) / 2) * ExactScalar::root(q);
      else
        c = c * ExactScalar::root(((q - 1) / 2) % 2 ? -q : q);
    }
  return c;
}

struct Level {
  const CharTable* big = nullptr;
  const CharTable* small = nullptr;
  // one or two maps small class -> big class
  std::vector<std::vector<int>> ops;
  std::string error;
};

Level product_maps(const std::string& side, const CharTable& big, const CharTable& small, const MultiPartition& key,
                   int p) {
  Level lv;
  lv.big = &big;
  lv.small = &small;
  MultiPartition cyc = cycles(side, big, key, p);
  std::map<MultiPartition, std::vector<int>> by_type;
  for (int x = 0; x < big.num_classes(); ++x) by_type[big.classes[x].base].push_back(x);
  // local sides evaluate Delta with the base-group cycle lengths times p
  MultiPartition dcyc = cyc;
  if (side == "hpw")
    for (auto& comp : dcyc)
      for (auto& k : comp) k *= p;
  ExactScalar c = delta_factor(side, dcyc);
  std::vector<int> plain(small.num_classes(), -1);
  std::vector<std::vector<int>> twin(small.num_classes());
  bool doubled = false;
  for (int y = 0; y < small.num_classes(); ++y) {
    const ClassLabel& cy = small.classes[y];
    MultiPartition target(cy.base.size());
    for (size_t j = 0; j < cy.base.size(); ++j) target[j] = merged(cy.base[j], cyc[j]);
    auto it = by_type.find(target);
    if (it == by_type.end()) {
      lv.error = "no class of type " + multi_to_string(target);
      return lv;
    }
    std::vector<int> cand = it->second;
    bool odd = std::all_of(target.begin(), target.end(), [](const Partition& q) { return is_odd_type(q); });
    if (odd && cy.z >= 0) {
      std::vector<int> keep;
      for (int x : cand)
        if (big.classes[x].z == cy.z) keep.push_back(x);
      cand = keep;
    }
    if (side == "dn" && cand.size() > 1 && cy.split != 0) {
      std::vector<int> keep;
      for (int x : cand)
        if (big.classes[x].split == cy.split) keep.push_back(x);
      cand = keep;
    }
    if (cand.size() > 1) {
      auto pb = detector(side, big, target, p);
      auto ps = detector(side, small, cy.base, p);
      if (pb && ps) {
        ExactScalar ds = small.at(ps->first, y) - small.at(ps->second, y);
        std::vector<int> keep;
        for (int x : cand)
          if (big.at(pb->first, x) - big.at(pb->second, x) == c * ds) keep.push_back(x);
        cand = keep;
      } else if (cand.size() == 2 && small.num_chars() <= 2) {
        twin[y] = cand;
        doubled = true;
        continue;
      }
    }
    if (cand.size() != 1) {
      lv.error = "cannot place the product class at " + cy.key() + " (" + std::to_string(cand.size()) + " candidates)";
      return lv;
    }
    plain[y] = cand[0];
  }
  if (!doubled) {
    lv.ops.push_back(plain);
    return lv;
  }
  for (int s : {1, -1}) {
    std::vector<int> op = plain;
    for (int y = 0; y < small.num_classes(); ++y) {
      if (twin[y].empty()) continue;
      for (int x : twin[y])
        if (big.classes[x].split == s) op[y] = x;
      if (op[y] < 0) {
        lv.error = "split labels missing at " + small.classes[y].key();
        return lv;
      }
    }
    lv.ops.push_back(op);
  }
  return lv;
}

Coeffs restrict_coeffs(const Level& lv, const std::vector<int>& op, int chi) {
  const CharTable& s = *lv.small;
  Coeffs out(s.num_chars());
  for (int y = 0; y < s.num_classes(); ++y) {
    const ExactScalar& v = lv.big->at(chi, op[y]);
    if (v.is_zero()) continue;
    ExactScalar f = v / Rational(s.classes[y].central_order);
    for (int b = 0; b < s.num_chars(); ++b)
      if (!s.at(b, y).is_zero()) out[b] += f * s.at(b, y).conj();
  }
  return out;
}

bool all_zero(const Coeffs& c) {
  return std::all_of(c.begin(), c.end(), [](const ExactScalar& v) { return v.is_zero(); });
}

std::string show(const CharTable& t, const Coeffs& c) {
  std::string s;
  for (size_t b = 0; b < c.size(); ++b) {
    if (c[b].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c[b].str() + ")" + t.chars[b].key();
  }
  return s.empty() ? "0" : s;
}

struct LowerMap {
  std::map<int, std::vector<std::pair<int, int>>> to;  // src char -> signed target chars
  std::vector<int> pair_src;  // associate pair facing a single character
  int single_dst = -1;
};

LowerMap lower_map(const detail::Formula& f, const CharTable& ls, const CharTable& ld) {
  LowerMap m;
  for (auto& t : f.terms) m.to[t.src].push_back({t.dst, t.sign});
  // a single character facing an associate pair goes to their sum
  if (f.src_unmatched.size() == 1 && f.dst_unmatched.size() == 2) {
    int a = f.dst_unmatched[0], b = f.dst_unmatched[1];
    if (ld.chars[a].base == ld.chars[b].base) m.to[f.src_unmatched[0]] = {{a, 1}, {b, 1}};
  }
  if (f.src_unmatched.size() == 2 && f.dst_unmatched.size() == 1 &&
      ls.chars[f.src_unmatched[0]].base == ls.chars[f.src_unmatched[1]].base) {
    m.pair_src = f.src_unmatched;
    m.single_dst = f.dst_unmatched[0];
  }
  return m;
}

std::optional<Coeffs> apply(const LowerMap& m, const Coeffs& c, int dst_size, int& missing) {
  Coeffs out(dst_size);
  for (size_t a = 0; a < c.size(); ++a) {
    if (c[a].is_zero()) continue;
    auto it = m.to.find(static_cast<int>(a));
    if (it == m.to.end()) {
      missing = static_cast<int>(a);
      return std::nullopt;
    }
    for (auto& [b, s] : it->second) out[b] += s > 0 ? c[a] : -c[a];
  }
  return out;
}

std::string key_text(const MultiPartition& key) {
  return key.size() == 1 ? to_string(key[0]) : "(" + multi_to_string(key) + ")";
}

int max_units(const std::string& side, int rank, int p) { return local(side) ? rank : rank / p; }

void check_vanishing(CheckResult& res, const std::string& side, const CharTable& big, const std::vector<int>& block,
                     int rank, int W, int p, int l, const std::string& which) {
  for (int u = W + 1; u <= max_units(side, rank, p); ++u) {
    int comps = components(side, l);
    std::vector<MultiPartition> keys;
    if (comps == 1)
      for (auto& b : partitions_of(u)) keys.push_back({b});
    else
      keys = multipartitions_of(comps, u);
    for (auto& key : keys) {
      if (!key_allowed(side, key, p)) continue;
      const CharTable& small = detail::side_table(side, p, l, rank - reduction(side, u, p));
      Level lv = product_maps(side, big, small, key, p);
      if (!lv.error.empty()) {
        res.fail({"r_commutation", key_text(key), which, "", lv.error});
        continue;
      }
      for (auto& op : lv.ops)
        for (int chi : block) {
          Coeffs c = restrict_coeffs(lv, op, chi);
          if (!all_zero(c))
            res.fail({"r_commutation", key_text(key), big.chars[chi].key(), show(small, c),
                      which + " over-weight type does not vanish"});
        }
    }
  }
}

}  // namespace

bool has_mn_structure(const Isometry& iso) {
  static const std::vector<std::string> kinds = {"mainAn", "mainAn2", "mainAn_p2", "mainTilde",  "brouetilde", "brgr",
                                                 "osima",  "couronne", "dn_conj", "dn_nonconj", "fh"};
  return std::find(kinds.begin(), kinds.end(), iso.kind) != kinds.end();
}

CheckResult r_commutation_check(const Isometry& given) {
  if (!has_mn_structure(given)) throw std::invalid_argument("no MN structure for kind " + given.kind);
  const Isometry iso = given.inverted ? given.inverse() : given;
  CheckResult res;
  res.ran = true;
  const int p = iso.p, l = iso.l;
  int W = 0;
  if (iso.weights.empty())
    W = local(iso.dst_side) ? iso.dst_rank : (iso.src_rank - static_cast<int>(size(detail::parts_of(iso.src_core)[0]))) / p;
  else
    for (int b : iso.weights) W += b;
  int comps = components(iso.src_side, l);
  if (local(iso.dst_side)) comps = 1;

  for (int u = 1; u <= W; ++u) {
    std::vector<MultiPartition> keys;
    if (comps == 1)
      for (auto& b : partitions_of(u)) keys.push_back({b});
    else
      keys = multipartitions_of(comps, u);
    for (auto& key : keys) {
      bool ks = key_allowed(iso.src_side, key, p), kd = key_allowed(iso.dst_side, key, p);
      if (ks != kd) {
        res.fail({"r_commutation", key_text(key), "", "", "singular type admitted on one side only"});
        continue;
      }
      if (!ks) continue;
      Isometry lower = iso;
      lower.src_rank = iso.src_rank - reduction(iso.src_side, u, p);
      lower.dst_rank = iso.dst_rank - reduction(iso.dst_side, u, p);
      const CharTable& ls = detail::side_table(iso.src_side, p, l, lower.src_rank);
      const CharTable& ld = detail::side_table(iso.dst_side, p, l, lower.dst_rank);
      Level a = product_maps(iso.src_side, *iso.source, ls, key, p);
      Level b = product_maps(iso.dst_side, *iso.target, ld, key, p);
      if (!a.error.empty() || !b.error.empty()) {
        res.fail({"r_commutation", key_text(key), "", "", a.error.empty() ? b.error : a.error});
        continue;
      }
      LowerMap m = lower_map(detail::formula_between(lower, ls, ld), ls, ld);
      size_t V = a.ops.size(), Vp = b.ops.size();
      // split labels are conventions on each side; any consistent pairing will do
      auto run = [&](size_t flip, CheckResult& out) {
        for (size_t k = 0; k < iso.src_block.size(); ++k) {
          int chi = iso.src_block[k], img = iso.image[k];
          auto target_side = [&](size_t s) {
            Coeffs c = restrict_coeffs(b, b.ops[s], img);
            if (iso.sign[k] < 0)
              for (auto& v : c) v = -v;
            return c;
          };
          auto report = [&](const Coeffs& lhs, const Coeffs& rhs, const std::string& note) {
            if (lhs != rhs)
              out.fail({"r_commutation", key_text(key), iso.source->chars[chi].key(), show(ld, lhs),
                        note + "expected " + show(ld, rhs)});
          };
          int missing = -1;
          if (V == Vp) {
            for (size_t s = 0; s < V; ++s) {
              auto lhs = apply(m, restrict_coeffs(a, a.ops[s], chi), ld.num_chars(), missing);
              if (!lhs) {
                out.fail({"r_commutation", key_text(key), iso.source->chars[chi].key(), "",
                          "lower component outside the block: " + ls.chars[missing].key()});
                continue;
              }
              report(*lhs, target_side(s ^ flip), V == 2 ? (s ? "minus label, " : "plus label, ") : "");
            }
          } else if (V == 2 && Vp == 1) {
            // the source lower group is trivial; its two products land on the pair
            Coeffs lhs(ld.num_chars());
            for (size_t s = 0; s < 2; ++s) {
              Coeffs c = restrict_coeffs(a, a.ops[s], chi);
              for (size_t j = 0; j < c.size(); ++j) {
                if (c[j].is_zero()) continue;
                auto pair = m.to.find(static_cast<int>(j));
                if (pair == m.to.end() || pair->second.size() != 2) {
                  out.fail({"r_commutation", key_text(key), iso.source->chars[chi].key(), "", "no target pair"});
                  continue;
                }
                for (auto& [d, sg] : pair->second)
                  if (ld.chars[d].assoc == ((s ^ flip) == 0 ? 1 : -1)) lhs[d] += c[j];
              }
            }
            report(lhs, target_side(0), "boundary, ");
          } else {
            // the target lower group is trivial: compare pair coefficients
            Coeffs c = restrict_coeffs(a, a.ops[0], chi);
            for (size_t s = 0; s < 2; ++s) {
              Coeffs want = target_side(s ^ flip);
              Coeffs got(ld.num_chars());
              for (size_t j = 0; j < c.size(); ++j) {
                if (c[j].is_zero() || ls.chars[j].assoc != ((s ^ flip) == 0 ? 1 : -1)) continue;
                auto it = m.to.find(static_cast<int>(j));
                if (it == m.to.end()) {
                  if (m.single_dst < 0) {
                    out.fail({"r_commutation", key_text(key), iso.source->chars[chi].key(), "", "no source pair"});
                    continue;
                  }
                  got[m.single_dst] += c[j];
                  continue;
                }
                for (auto& [d, sg] : it->second) got[d] += sg > 0 ? c[j] : -c[j];
              }
              report(got, want, "boundary, ");
            }
          }
        }
      };
      CheckResult first;
      run(0, first);
      if (!first.pass && (V == 2 || Vp == 2)) {
        CheckResult second;
        run(1, second);
        if (second.pass) continue;
      }
      for (auto& w : first.witnesses) res.fail(w);
      if (!first.pass && first.witnesses.empty()) res.pass = false;
    }
  }

  int W_src = W, W_dst = W;
  check_vanishing(res, iso.src_side, *iso.source, iso.src_block, iso.src_rank, W_src, p, l, "source");
  check_vanishing(res, iso.dst_side, *iso.target, iso.dst_block, iso.dst_rank, W_dst, p, l, "target");
  return res;
}

}  // namespace isoforge
