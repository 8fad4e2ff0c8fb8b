#include "isoforge/isometry.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isoforge/barpartitions.hpp"
#include "isoforge/blocks.hpp"
#include "isoforge/isometry_detail.hpp"
#include "isoforge/parallel.hpp"
#include "isoforge/tables.hpp"

namespace isoforge {

namespace detail {

namespace {

// + and - characters for a label, or the single one in slot 0
std::pair<int, int> pm(const CharTable& t, const MultiPartition& base, bool spin) {
  CharLabel c{base, 1, spin};
  int a = t.char_index(c.key());
  if (a >= 0 && t.chars[a].assoc != 0) {
    c.assoc = -1;
    return {a, t.char_index(c.key())};
  }
  c.assoc = 0;
  int s = t.char_index(c.key());
  if (s < 0) throw std::logic_error("missing character " + c.key() + " in " + t.family);
  return {s, -1};
}

void add_pm(std::vector<int>& out, const std::pair<int, int>& c) {
  out.push_back(c.first);
  if (c.second >= 0) out.push_back(c.second);
}

std::vector<int> uniq(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Partition core_of(const Partition& la, int p) { return core_quotient(la, p).core; }

int pstar(int p) { return p == 2 ? 2 : (p + 1) / 2; }

// signed map between two labelled pairs (or singles)
void map_pm(Formula& f, const std::pair<int, int>& a, const std::pair<int, int>& b, int s, int twist) {
  bool pa = a.second >= 0, pb = b.second >= 0;
  if (pa && pb) {
    f.terms.push_back({a.first, twist > 0 ? b.first : b.second, s});
    f.terms.push_back({a.second, twist > 0 ? b.second : b.first, s});
  } else if (!pa && !pb) {
    f.terms.push_back({a.first, b.first, s});
  }
  // single against pair is left unmatched for the caller
}

void finish(Formula& f, const std::vector<int>& all_src, const std::vector<int>& all_dst) {
  std::set<int> hs, hd;
  for (auto& t : f.terms) {
    hs.insert(t.src);
    hd.insert(t.dst);
  }
  for (int a : uniq(all_src))
    if (!hs.count(a)) f.src_unmatched.push_back(a);
  for (int b : uniq(all_dst))
    if (!hd.count(b)) f.dst_unmatched.push_back(b);
}

std::vector<Partition> with_core(int n, int p, const Partition& core) {
  std::vector<Partition> out;
  if (n < 0) return out;
  for (auto& la : partitions_of(n))
    if (core_of(la, p) == core) out.push_back(la);
  return out;
}

std::vector<int> an_chars(const CharTable& t, int n, int p, const Partition& core) {
  std::vector<int> out;
  for (auto& la : with_core(n, p, core)) add_pm(out, pm(t, {la}, false));
  return uniq(out);
}

Formula an_formula(const CharTable& s, const CharTable& d, int n, int m, int p, const Partition& g1,
                   const Partition& g2) {
  Formula f;
  std::set<int> seen;
  for (auto& la : with_core(n, p, g1)) {
    auto a = pm(s, {la}, false);
    if (seen.count(a.first)) continue;
    seen.insert(a.first);
    Partition mu = psi_map(la, p, g2);
    int sg = delta_sign(la, p) * delta_sign(mu, p);
    map_pm(f, a, pm(d, {mu}, false), sg, sg);
  }
  finish(f, an_chars(s, n, p, g1), an_chars(d, m, p, g2));
  return f;
}

std::vector<BarPartition> with_bar_core(int n, int p, const BarPartition& core) {
  std::vector<BarPartition> out;
  if (n < 0) return out;
  for (auto& la : bar_partitions_of(n))
    if (bar_core_quotient(la, p).core == core) out.push_back(la);
  return out;
}

std::vector<int> spin_chars(const CharTable& t, int n, int p, const BarPartition& core) {
  std::vector<int> out;
  for (auto& la : with_bar_core(n, p, core)) add_pm(out, pm(t, {la}, true));
  return uniq(out);
}

Formula tilde_formula(const CharTable& s, const CharTable& d, int n, int m, int p, const BarPartition& g1,
                      const BarPartition& g2) {
  Formula f;
  for (auto& la : with_bar_core(n, p, g1)) {
    BarPartition mu = psi_bar(la, p, g2);
    int sg = delta_bar_sign(la, p) * delta_bar_sign(mu, p);
    map_pm(f, pm(s, {la}, true), pm(d, {mu}, true), sg, sg);
  }
  finish(f, spin_chars(s, n, p, g1), spin_chars(d, m, p, g2));
  return f;
}

std::vector<int> all_chars(const CharTable& t) {
  std::vector<int> v(t.num_chars());
  for (int i = 0; i < t.num_chars(); ++i) v[i] = i;
  return v;
}

std::vector<int> sn_chars(const CharTable& t, int n, int p, const Partition& core) {
  std::vector<int> out;
  for (auto& la : with_core(n, p, core)) out.push_back(t.char_index(CharLabel{{la}}.key()));
  return uniq(out);
}

// sign and label of the quotient twist shared by brgr and fh
MultiPartition twisted_quotient(const Partition& la, int p, int& sg) {
  auto q = core_quotient(la, p).quotient;
  int ps = pstar(p) - 1;
  sg = delta_sign(la, p) * (size(q[ps]) % 2 ? -1 : 1);
  q[ps] = conj(q[ps]);
  return q;
}

Formula brgr_formula(const CharTable& s, const CharTable& d, int n, int p, const Partition& g) {
  Formula f;
  for (auto& la : with_core(n, p, g)) {
    int sg = 1;
    auto q = twisted_quotient(la, p, sg);
    f.terms.push_back({s.char_index(CharLabel{{la}}.key()), d.char_index(CharLabel{q}.key()), sg});
  }
  finish(f, sn_chars(s, n, p, g), all_chars(d));
  return f;
}

Formula osima_formula(const CharTable& s, const CharTable& d, int n, int p, const Partition& g) {
  Formula f;
  for (auto& la : with_core(n, p, g)) {
    auto q = core_quotient(la, p).quotient;
    f.terms.push_back({s.char_index(CharLabel{{la}}.key()), d.char_index(CharLabel{q}.key()), delta_sign(la, p)});
  }
  finish(f, sn_chars(s, n, p, g), all_chars(d));
  return f;
}

Formula fh_formula(const CharTable& s, const CharTable& d, int n, int p, const Partition& g) {
  Formula f;
  std::set<int> seen;
  for (auto& la : with_core(n, p, g)) {
    auto a = pm(s, {la}, false);
    if (seen.count(a.first)) continue;
    seen.insert(a.first);
    int sg = 1;
    auto q = twisted_quotient(la, p, sg);
    map_pm(f, a, pm(d, q, false), sg, delta_sign(la, p));
  }
  finish(f, an_chars(s, n, p, g), all_chars(d));
  return f;
}

bool cores_match(const MultiPartition& mu, int p, const MultiPartition& cores) {
  for (size_t i = 0; i < mu.size(); ++i)
    if (core_of(mu[i], p) != cores[i]) return false;
  return true;
}

std::vector<MultiPartition> multi_with_cores(int parts, int n, int p, const MultiPartition& cores) {
  std::vector<MultiPartition> out;
  if (n < 0) return out;
  for (auto& mu : multipartitions_of(parts, n))
    if (cores_match(mu, p, cores)) out.push_back(mu);
  return out;
}

Formula wreath_formula(const CharTable& s, const CharTable& d, int n, int m, int p, int l,
                       const MultiPartition& g1, const MultiPartition& g2) {
  Formula f;
  std::vector<int> all_s, all_d;
  for (auto& mu : multi_with_cores(l, n, p, g1)) {
    MultiPartition nu(l);
    int sg = 1;
    for (int i = 0; i < l; ++i) {
      nu[i] = psi_map(mu[i], p, g2[i]);
      sg *= delta_sign(mu[i], p) * delta_sign(nu[i], p);
    }
    f.terms.push_back({s.char_index(CharLabel{mu}.key()), d.char_index(CharLabel{nu}.key()), sg});
    all_s.push_back(f.terms.back().src);
  }
  for (auto& mu : multi_with_cores(l, m, p, g2)) all_d.push_back(d.char_index(CharLabel{mu}.key()));
  finish(f, all_s, all_d);
  return f;
}

std::vector<int> dn_chars(const CharTable& t, int n, int p, const MultiPartition& cores) {
  std::vector<int> out;
  for (auto& mu : multi_with_cores(2, n, p, cores)) add_pm(out, pm(t, mu, false));
  if (cores[0] != cores[1])
    for (auto& mu : multi_with_cores(2, n, p, {cores[1], cores[0]})) add_pm(out, pm(t, mu, false));
  return uniq(out);
}

Formula dn_formula(const CharTable& s, const CharTable& d, int n, int m, int p, const MultiPartition& g1,
                   const MultiPartition& g2) {
  Formula f;
  std::set<int> seen;
  for (auto& mu : multi_with_cores(2, n, p, g1)) {
    auto a = pm(s, mu, false);
    if (seen.count(a.first)) continue;
    seen.insert(a.first);
    MultiPartition nu{psi_map(mu[0], p, g2[0]), psi_map(mu[1], p, g2[1])};
    int sg = 1;
    for (int i = 0; i < 2; ++i) sg *= delta_sign(mu[i], p) * delta_sign(nu[i], p);
    if (mu[0] == mu[1])
      map_pm(f, a, pm(d, nu, false), 1, sg);
    else
      map_pm(f, a, pm(d, nu, false), sg, 1);
  }
  finish(f, dn_chars(s, n, p, g1), dn_chars(d, m, p, g2));
  return f;
}

}  // namespace

const CharTable& side_table(const std::string& side, int p, int l, int rank) {
  if (rank < 0) throw std::invalid_argument("negative rank");
  if (side == "sn" || side == "an" || side == "tilde-sn" || side == "tilde-an" || side == "dn")
    return cached_table(side, rank);
  if (side == "gpw" || side == "hpw") return cached_table(side, p, rank);
  if (side == "osima") return cached_table("wreath", p, rank);
  if (side == "wreath") return l == 2 ? cached_table("bn", rank) : cached_table("wreath", l, rank);
  throw std::invalid_argument("unknown side " + side);
}

Formula inverse_formula(const Formula& f) {
  Formula g;
  for (auto& t : f.terms) g.terms.push_back({t.dst, t.src, t.sign});
  g.src_unmatched = f.dst_unmatched;
  g.dst_unmatched = f.src_unmatched;
  return g;
}

std::vector<Partition> parts_of(const std::vector<std::string>& core) {
  std::vector<Partition> out;
  for (auto& c : core) out.push_back(parse_partition(c));
  return out;
}

std::vector<std::string> split_components(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_weights(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size() || v < 0) throw std::invalid_argument("bad weight list: " + text);
    out.push_back(v);
  }
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Formula formula_between(const Isometry& iso, const CharTable& s, const CharTable& d) {
  const std::string& k = iso.kind;
  int p = iso.p, n = iso.src_rank, m = iso.dst_rank;
  auto g1 = parts_of(iso.src_core), g2 = parts_of(iso.dst_core);
  if (k == "mainAn" || k == "mainAn2" || k == "mainAn_p2") return an_formula(s, d, n, m, p, g1[0], g2[0]);
  if (k == "mainTilde") {
    if (iso.formula_inverted) return inverse_formula(tilde_formula(d, s, m, n, p, g2[0], g1[0]));
    return tilde_formula(s, d, n, m, p, g1[0], g2[0]);
  }
  if (k == "brouetilde") {
    // both sides go to the same S̃ block, then back
    BarPartition via = parse_bar_partition(iso.via_core);
    int mid_n = size(via) + (n - size(g1[0]));
    const CharTable& mid = cached_table("tilde-sn", mid_n);
    Formula f1 = tilde_formula(s, mid, n, mid_n, p, g1[0], via);
    Formula f2 = tilde_formula(d, mid, m, mid_n, p, g2[0], via);
    std::map<int, std::pair<int, int>> back;
    for (auto& t : f2.terms) back[t.dst] = {t.src, t.sign};
    Formula f;
    for (auto& t : f1.terms) {
      auto it = back.find(t.dst);
      if (it == back.end()) {
        f.src_unmatched.push_back(t.src);
        continue;
      }
      f.terms.push_back({t.src, it->second.first, t.sign * it->second.second});
    }
    // defect zero: both sides face the same intermediate pair (or single)
    if (!f1.src_unmatched.empty() && f1.src_unmatched.size() == f2.src_unmatched.size() &&
        f1.dst_unmatched == f2.dst_unmatched) {
      for (size_t i = 0; i < f1.src_unmatched.size(); ++i)
        f.terms.push_back({f1.src_unmatched[i], f2.src_unmatched[i], 1});
      return f;
    }
    for (int a : f1.src_unmatched) f.src_unmatched.push_back(a);
    for (int b : f2.src_unmatched) f.dst_unmatched.push_back(b);
    return f;
  }
  if (k == "brgr") return brgr_formula(s, d, n, p, g1[0]);
  if (k == "osima") return osima_formula(s, d, n, p, g1[0]);
  if (k == "fh") return fh_formula(s, d, n, p, g1[0]);
  if (k == "couronne") return wreath_formula(s, d, n, m, p, iso.l, g1, g2);
  if (k == "dn_conj" || k == "dn_nonconj") return dn_formula(s, d, n, m, p, g1, g2);
  throw std::invalid_argument("unknown isometry kind " + k);
}

}  // namespace detail

using detail::Formula;

int Isometry::image_of(int chi) const {
  auto it = std::lower_bound(src_block.begin(), src_block.end(), chi);
  if (it == src_block.end() || *it != chi) return -1;
  return static_cast<int>(it - src_block.begin());
}

Isometry Isometry::inverse() const {
  Isometry r = *this;
  std::swap(r.source, r.target);
  std::swap(r.c_src, r.c_dst);
  std::swap(r.src_side, r.dst_side);
  std::swap(r.src_core, r.dst_core);
  std::swap(r.src_rank, r.dst_rank);
  r.formula_inverted = !formula_inverted;
  r.inverted = !inverted;
  std::vector<std::pair<int, std::pair<int, int>>> rows;
  for (size_t k = 0; k < src_block.size(); ++k) rows.push_back({image[k], {src_block[k], sign[k]}});
  std::sort(rows.begin(), rows.end());
  r.src_block.clear();
  r.image.clear();
  r.sign.clear();
  for (auto& [b, as] : rows) {
    r.src_block.push_back(b);
    r.image.push_back(as.first);
    r.sign.push_back(as.second);
  }
  r.dst_block = src_block;
  return r;
}

namespace {

int pick_p(const IsometryRequest& q) {
  if (q.p < 2) throw std::invalid_argument("p must be a prime");
  for (int d = 2; d * d <= q.p; ++d)
    if (q.p % d == 0) throw std::invalid_argument("p must be a prime");
  return q.p;
}

void need_odd(int p, const std::string& kind) {
  if (p == 2) throw std::invalid_argument(kind + " needs an odd prime");
}

void need_w(int w) {
  if (w <= 0) throw std::invalid_argument("the weight must be positive");
}

std::string core_text(const Partition& la) { return to_string(la); }

void assign(Isometry& iso, const Formula& f, const std::vector<int>& block) {
  std::map<int, std::pair<int, int>> m;
  for (auto& t : f.terms) m[t.src] = {t.dst, t.sign};
  std::set<int> dst;
  for (int a : block) {
    auto it = m.find(a);
    if (it == m.end())
      throw std::invalid_argument("no image for " + iso.source->chars[a].key() +
                                  ": the blocks do not correspond (weight or sign mismatch)");
    iso.src_block.push_back(a);
    iso.image.push_back(it->second.first);
    iso.sign.push_back(it->second.second);
    if (!dst.insert(it->second.first).second) throw std::logic_error("isometry is not injective");
  }
  iso.dst_block.assign(dst.begin(), dst.end());
}

std::vector<int> formula_sources(const Formula& f) {
  std::vector<int> v;
  for (auto& t : f.terms) v.push_back(t.src);
  std::sort(v.begin(), v.end());
  return v;
}

void check_onto(const Isometry& iso, const std::vector<int>& expected_dst) {
  std::vector<int> e = expected_dst;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  if (e != iso.dst_block)
    throw std::invalid_argument("image is not the target block (" + std::to_string(iso.dst_block.size()) + " of " +
                                std::to_string(e.size()) + " characters)");
}

std::vector<int> dst_of(const Formula& f) {
  std::vector<int> v;
  for (auto& t : f.terms) v.push_back(t.dst);
  for (int b : f.dst_unmatched) v.push_back(b);
  return v;
}

Isometry build_an(const IsometryRequest& q, int p) {
  Partition g1 = parse_partition(q.core1), g2 = parse_partition(q.core2);
  need_w(q.w);
  if (!is_core(g1, p) || !is_core(g2, p)) throw std::invalid_argument("cores must be p-cores");
  if (q.kind == "mainAn") {
    need_odd(p, q.kind);
    if (!is_self_conj(g1) || !is_self_conj(g2)) throw std::invalid_argument("mainAn needs self-conjugate cores");
  } else if (q.kind == "mainAn2") {
    need_odd(p, q.kind);
    if (is_self_conj(g1) || is_self_conj(g2)) throw std::invalid_argument("mainAn2 needs non self-conjugate cores");
  } else if (p != 2) {
    throw std::invalid_argument("mainAn_p2 is the p = 2 case");
  }
  Isometry iso;
  iso.src_side = iso.dst_side = "an";
  iso.src_rank = size(g1) + p * q.w;
  iso.dst_rank = size(g2) + p * q.w;
  iso.source = &cached_table("an", iso.src_rank);
  iso.target = &cached_table("an", iso.dst_rank);
  iso.src_core = {core_text(g1)};
  iso.dst_core = {core_text(g2)};
  iso.mode = "broue";
  return iso;
}

Isometry build_tilde(const IsometryRequest& q, int p) {
  need_odd(p, q.kind);
  need_w(q.w);
  BarPartition g1 = parse_bar_partition(q.core1), g2 = parse_bar_partition(q.core2);
  if (!is_bar_core(g1, p) || !is_bar_core(g2, p)) throw std::invalid_argument("cores must be bar cores");
  Isometry iso;
  iso.src_rank = size(g1) + p * q.w;
  iso.dst_rank = size(g2) + p * q.w;
  iso.src_core = {core_text(g1)};
  iso.dst_core = {core_text(g2)};
  iso.mode = "broue";
  bool same = sigma(g1) == sigma(g2);
  if (q.kind == "brouetilde") {
    if (!same) throw std::invalid_argument("brouetilde needs bar cores of the same sign");
    iso.src_side = iso.dst_side = "tilde-an";
    iso.via_core = sigma(g1) == 1 ? "2" : "";
    if (!is_bar_core(parse_bar_partition(iso.via_core), p)) throw std::logic_error("intermediate core");
  } else if (same) {
    std::string c = q.cover1.empty() ? "tilde-sn" : q.cover1;
    if (c != "tilde-sn") throw std::invalid_argument("same-sign mainTilde is stated for tilde-sn; use brouetilde");
    iso.src_side = iso.dst_side = "tilde-sn";
  } else {
    std::string c = q.cover1.empty() ? "tilde-sn" : q.cover1;
    if (c != "tilde-sn" && c != "tilde-an") throw std::invalid_argument("cover1 must be tilde-sn or tilde-an");
    iso.src_side = c;
    iso.dst_side = c == "tilde-sn" ? "tilde-an" : "tilde-sn";
    // the formula runs from the alternating cover
    iso.formula_inverted = c == "tilde-sn";
  }
  iso.source = &cached_table(iso.src_side, iso.src_rank);
  iso.target = &cached_table(iso.dst_side, iso.dst_rank);
  return iso;
}

int weight_from(const IsometryRequest& q, int p, int core_size) {
  if (q.w > 0) return q.w;
  if (q.n < 0) throw std::invalid_argument("give w or n");
  if (q.n < core_size || (q.n - core_size) % p) throw std::invalid_argument("n does not fit the core");
  return (q.n - core_size) / p;
}

Isometry build_local(const IsometryRequest& q, int p) {
  Partition g = parse_partition(q.core1);
  if (!is_core(g, p)) throw std::invalid_argument("core must be a p-core");
  int w = weight_from(q, p, size(g));
  need_w(w);
  Isometry iso;
  iso.src_rank = size(g) + p * w;
  iso.dst_rank = w;
  iso.src_core = {core_text(g)};
  iso.dst_core = {};
  if (q.kind == "brgr") {
    if (p > 3) throw std::invalid_argument("brgr is available for p in {2, 3}");
    iso.src_side = "sn";
    iso.dst_side = "gpw";
    iso.mode = p > w ? "broue" : "generalized";
  } else if (q.kind == "osima") {
    iso.src_side = "sn";
    iso.dst_side = "osima";
    iso.mode = "generalized";
  } else {
    need_odd(p, q.kind);
    if (p != 3) throw std::invalid_argument("fh is available for p = 3");
    if (!is_self_conj(g)) throw std::invalid_argument("fh needs a self-conjugate core");
    iso.src_side = "an";
    iso.dst_side = "hpw";
    iso.mode = p > w ? "broue" : "generalized";
  }
  iso.source = &detail::side_table(iso.src_side, p, 0, iso.src_rank);
  iso.target = &detail::side_table(iso.dst_side, p, 0, iso.dst_rank);
  return iso;
}

MultiPartition parse_multi(const std::string& text, int parts) {
  auto comps = detail::parts_of(detail::split_components(text));
  if (static_cast<int>(comps.size()) != parts)
    throw std::invalid_argument("expected " + std::to_string(parts) + " components in '" + text + "'");
  return comps;
}

}  // namespace

Isometry build_isometry(const IsometryRequest& q) {
  int p = pick_p(q);
  Isometry iso;
  const std::string& k = q.kind;
  std::vector<int> block;
  Formula f;
  if (k == "mainAn" || k == "mainAn2" || k == "mainAn_p2") {
    iso = build_an(q, p);
  } else if (k == "mainTilde" || k == "brouetilde") {
    iso = build_tilde(q, p);
  } else if (k == "brgr" || k == "osima" || k == "fh") {
    iso = build_local(q, p);
  } else if (k == "couronne") {
    need_odd(p, k);
    if (q.l % p == 0) throw std::invalid_argument("p must not divide l");
    MultiPartition g1 = parse_multi(q.core1, q.l), g2 = parse_multi(q.core2, q.l);
    auto b = detail::parse_weights(q.weights);
    if (static_cast<int>(b.size()) != q.l) throw std::invalid_argument("one weight per component");
    iso.l = q.l;
    iso.src_side = iso.dst_side = "wreath";
    iso.src_rank = multi_size(g1);
    iso.dst_rank = multi_size(g2);
    for (int i = 0; i < q.l; ++i) {
      if (!is_core(g1[i], p) || !is_core(g2[i], p)) throw std::invalid_argument("cores must be p-cores");
      iso.src_rank += p * b[i];
      iso.dst_rank += p * b[i];
      iso.src_core.push_back(core_text(g1[i]));
      iso.dst_core.push_back(core_text(g2[i]));
    }
    iso.weights = b;
    iso.mode = "broue";
    iso.source = &detail::side_table("wreath", p, q.l, iso.src_rank);
    iso.target = &detail::side_table("wreath", p, q.l, iso.dst_rank);
  } else if (k == "dn_conj" || k == "dn_nonconj") {
    need_odd(p, k);
    MultiPartition g1, g2;
    std::vector<int> b;
    if (k == "dn_conj") {
      Partition a = parse_partition(q.core1), c = parse_partition(q.core2);
      g1 = {a, a};
      g2 = {c, c};
      need_w(q.w);
      b = {q.w, q.w};
    } else {
      g1 = parse_multi(q.core1, 2);
      g2 = parse_multi(q.core2, 2);
      if (g1[0] == g1[1] || g2[0] == g2[1]) throw std::invalid_argument("dn_nonconj needs distinct cores");
      b = detail::parse_weights(q.weights);
      if (b.size() != 2) throw std::invalid_argument("two weights expected");
      if (b[0] + b[1] <= 0) throw std::invalid_argument("the weight must be positive");
    }
    iso.src_side = iso.dst_side = "dn";
    iso.src_rank = multi_size(g1) + p * (b[0] + b[1]);
    iso.dst_rank = multi_size(g2) + p * (b[0] + b[1]);
    for (int i = 0; i < 2; ++i) {
      if (!is_core(g1[i], p) || !is_core(g2[i], p)) throw std::invalid_argument("cores must be p-cores");
      iso.src_core.push_back(core_text(g1[i]));
      iso.dst_core.push_back(core_text(g2[i]));
    }
    iso.weights = b;
    iso.mode = "broue";
    iso.source = &cached_table("dn", iso.src_rank);
    iso.target = &cached_table("dn", iso.dst_rank);
  } else {
    throw std::invalid_argument("unknown isometry kind " + k);
  }
  iso.kind = k;
  iso.p = p;
  iso.request = q;
  f = detail::formula_between(iso, *iso.source, *iso.target);

  // restrict to the requested block when the formula covers several weights
  block = formula_sources(f);
  for (int a : f.src_unmatched) block.push_back(a);
  std::vector<int> dst_expected = dst_of(f);
  if (k == "couronne" || k == "dn_nonconj" || k == "dn_conj") {
    auto keep = [&](const CharTable& t, int chi, const std::vector<std::string>& cores) {
      const auto& mu = t.chars[chi].base;
      auto b = iso.weights;
      for (size_t i = 0; i < mu.size(); ++i) {
        Partition c = parse_partition(cores[i]);
        if (core_quotient(mu[i], p).core != c) return false;
        if ((size(mu[i]) - size(c)) / p != b[i]) return false;
      }
      return true;
    };
    auto keep_either = [&](const CharTable& t, int chi, const std::vector<std::string>& cores) {
      if (keep(t, chi, cores)) return true;
      if (k == "couronne") return false;
      // the restriction identifies (mu1, mu2) with (mu2, mu1)
      const auto& mu = t.chars[chi].base;
      CharLabel sw{{mu[1], mu[0]}};
      MultiPartition swb{mu[1], mu[0]};
      for (size_t i = 0; i < 2; ++i) {
        Partition c = parse_partition(cores[i]);
        if (core_quotient(swb[i], p).core != c || (size(swb[i]) - size(c)) / p != iso.weights[i]) return false;
      }
      (void)sw;
      return true;
    };
    std::vector<int> b2, d2;
    for (int a : block)
      if (keep_either(*iso.source, a, iso.src_core)) b2.push_back(a);
    for (int a : dst_expected)
      if (keep_either(*iso.target, a, iso.dst_core)) d2.push_back(a);
    block = b2;
    dst_expected = d2;
  }
  block = detail::sorted_unique(block);
  assign(iso, f, block);
  check_onto(iso, dst_expected);

  if (iso.mode == "broue" || k == "mainTilde" || k == "brouetilde") {
    iso.c_src = class_subset(*iso.source, "p-regular", p);
    iso.c_dst = class_subset(*iso.target, "p-regular", p);
  } else {
    iso.c_src = class_subset(*iso.source, "p-regular", p);
    std::string pred = k == "brgr" ? "brgr-Cprime" : k == "osima" ? "osima-Cprime" : "fh-regular";
    iso.c_dst = class_subset(*iso.target, pred, p);
  }
  return iso;
}

std::vector<std::vector<ExactScalar>> i_hat(const Isometry& iso) {
  const CharTable& s = *iso.source;
  const CharTable& d = *iso.target;
  int X = s.num_classes(), Y = d.num_classes();
  std::vector<std::vector<ExactScalar>> out(X, std::vector<ExactScalar>(Y));
  parallel_for(static_cast<size_t>(X), [&](size_t x) {
    for (size_t k = 0; k < iso.src_block.size(); ++k) {
      ExactScalar a = s.values[iso.src_block[k]][x].conj();
      if (a.is_zero()) continue;
      if (iso.sign[k] < 0) a = -a;
      const auto& row = d.values[iso.image[k]];
      for (int y = 0; y < Y; ++y)
        if (!row[y].is_zero()) out[x][y] += a * row[y];
    }
  });
  return out;
}

void CheckResult::fail(Witness w, std::size_t cap) {
  pass = false;
  if (witnesses.size() < cap) witnesses.push_back(std::move(w));
}

bool VerificationReport::ok() const {
  for (const CheckResult* c : {&mixed_vanishing, &broue_integrality, &kor_gram, &r_commutation})
    if (c->ran && !c->pass) return false;
  return true;
}

namespace {

std::string valuations_text(const ExactScalar& v, int p) {
  std::string s = "[";
  auto vals = char_poly_valuations(v, p);
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) s += ",";
    s += vals[i] == std::numeric_limits<int>::max() ? "inf" : std::to_string(vals[i]);
  }
  return s + "]";
}

}  // namespace

VerificationReport verify(const Isometry& iso, const std::string& mode) {
  auto t0 = std::chrono::steady_clock::now();
  if (mode != "generalized" && mode != "kor" && mode != "broue")
    throw std::invalid_argument("mode must be generalized, kor or broue");
  const CharTable& s = *iso.source;
  const CharTable& d = *iso.target;
  VerificationReport r;
  r.mode = mode;
  r.source_classes = s.num_classes();
  r.target_classes = d.num_classes();
  r.block_size = static_cast<int>(iso.src_block.size());
  std::vector<bool> C = iso.c_src, Cp = iso.c_dst;
  if (mode == "broue") {
    C = class_subset(s, "p-regular", iso.p);
    Cp = class_subset(d, "p-regular", iso.p);
  }

  if (mode != "kor") {
    auto ih = i_hat(iso);
    r.mixed_vanishing.ran = true;
    for (int x = 0; x < s.num_classes(); ++x)
      for (int y = 0; y < d.num_classes(); ++y)
        if (C[x] != Cp[y] && !ih[x][y].is_zero())
          r.mixed_vanishing.fail({"mixed_vanishing", s.classes[x].key(), d.classes[y].key(), ih[x][y].str(),
                                  C[x] ? "x in C, x' outside C'" : "x outside C, x' in C'"});
    if (mode == "broue") {
      r.broue_integrality.ran = true;
      std::vector<std::pair<int, int>> cells;
      for (int x = 0; x < s.num_classes(); ++x)
        for (int y = 0; y < d.num_classes(); ++y)
          if (!ih[x][y].is_zero()) cells.push_back({x, y});
      std::vector<char> bad(cells.size(), 0);
      parallel_for(cells.size(), [&](size_t i) {
        auto [x, y] = cells[i];
        const ExactScalar& v = ih[x][y];
        if (!is_p_integral(v / Rational(s.classes[x].central_order), iso.p)) bad[i] |= 1;
        if (!is_p_integral(v / Rational(d.classes[y].central_order), iso.p)) bad[i] |= 2;
      });
      for (size_t i = 0; i < cells.size(); ++i) {
        if (!bad[i]) continue;
        auto [x, y] = cells[i];
        const ExactScalar& v = ih[x][y];
        bool first = bad[i] & 1;
        ExactScalar q = v / Rational(first ? s.classes[x].central_order : d.classes[y].central_order);
        r.broue_integrality.fail({"broue_integrality", s.classes[x].key(), d.classes[y].key(), v.str(),
                                  std::string(first ? "over |C_G(x)|" : "over |C_G'(x')|") +
                                      ", char poly valuations " + valuations_text(q, iso.p)});
      }
    }
  }

  r.kor_gram.ran = true;
  size_t B = iso.src_block.size();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < B; ++a)
    for (size_t b = a; b < B; ++b) pairs.push_back({a, b});
  std::vector<char> bad(pairs.size(), 0);
  std::vector<std::string> lhs(pairs.size()), rhs(pairs.size());
  parallel_for(pairs.size(), [&](size_t i) {
    auto [a, b] = pairs[i];
    ExactScalar u = inner(s, iso.src_block[a], iso.src_block[b], C);
    ExactScalar v = inner(d, iso.image[a], iso.image[b], Cp);
    if (iso.sign[a] * iso.sign[b] < 0) v = -v;
    if (u != v) {
      bad[i] = 1;
      lhs[i] = u.str();
      rhs[i] = v.str();
    }
  });
  for (size_t i = 0; i < pairs.size(); ++i)
    if (bad[i])
      r.kor_gram.fail({"kor_gram", s.chars[iso.src_block[pairs[i].first]].key(),
                       s.chars[iso.src_block[pairs[i].second]].key(), lhs[i], "target side " + rhs[i]});

  if (has_mn_structure(iso)) r.r_commutation = r_commutation_check(iso);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Isometry flip_sign(const Isometry& iso, std::size_t k) {
  Isometry r = iso;
  r.sign.at(k) = -r.sign.at(k);
  return r;
}

Isometry swap_targets(const Isometry& iso, std::size_t a, std::size_t b) {
  Isometry r = iso;
  std::swap(r.image.at(a), r.image.at(b));
  return r;
}

}  // namespace isoforge
