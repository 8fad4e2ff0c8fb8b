#include "isoforge/chartable.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "isoforge/parallel.hpp"

namespace isoforge {

std::string multi_to_string(const MultiPartition& m) {
  if (m.size() == 1) return "(" + to_string(m[0]) + ")";
  std::string s = "(";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += "(" + to_string(m[i]) + ")";
  }
  return s + ")";
}

int multi_size(const MultiPartition& m) {
  int s = 0;
  for (auto& c : m) s += size(c);
  return s;
}

std::vector<MultiPartition> multipartitions_of(int parts, int n) {
  std::vector<MultiPartition> out;
  MultiPartition cur(parts);
  std::function<void(int, int)> rec = [&](int k, int rest) {
    if (k == parts - 1) {
      for (auto& la : partitions_of(rest)) {
        cur[k] = la;
        out.push_back(cur);
      }
      return;
    }
    for (int s = rest; s >= 0; --s)
      for (auto& la : partitions_of(s)) {
        cur[k] = la;
        rec(k + 1, rest - s);
      }
  };
  if (parts == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(0, n);
  return out;
}

std::string ClassLabel::key() const {
  std::string s = multi_to_string(base);
  if (z >= 0) s += "z" + std::to_string(z);
  if (split > 0) s += "+";
  if (split < 0) s += "-";
  return s;
}

std::string ClassLabel::split_tag() const {
  if (split == 0) return "none";
  if (z < 0) return split > 0 ? "plus" : "minus";
  std::string a = z == 0 ? "plus" : "minus";
  return a + (split > 0 ? "plus" : "minus");
}

std::string CharLabel::key() const {
  std::string s = spin ? "spin" : "";
  s += multi_to_string(base);
  if (assoc > 0) s += "+";
  if (assoc < 0) s += "-";
  return s;
}

void CharTable::reindex() {
  class_idx_.clear();
  char_idx_.clear();
  for (int i = 0; i < num_classes(); ++i)
    if (!class_idx_.emplace(classes[i].key(), i).second)
      throw std::logic_error("duplicate class label " + classes[i].key());
  for (int i = 0; i < num_chars(); ++i)
    if (!char_idx_.emplace(chars[i].key(), i).second)
      throw std::logic_error("duplicate character label " + chars[i].key());
}

int CharTable::class_index(const std::string& key) const {
  auto it = class_idx_.find(key);
  return it == class_idx_.end() ? -1 : it->second;
}

int CharTable::char_index(const std::string& key) const {
  auto it = char_idx_.find(key);
  return it == char_idx_.end() ? -1 : it->second;
}

void CharTable::add_alias(const std::string& key, int idx) { char_idx_.emplace(key, idx); }

OrthogonalityReport check_orthogonality(const CharTable& t) {
  OrthogonalityReport rep;
  int k = t.num_chars(), c = t.num_classes();
  if (k != c) {
    rep.rows_ok = rep.columns_ok = false;
    rep.witness = "table is not square";
    return rep;
  }
  std::vector<std::vector<ExactScalar>> cj(k, std::vector<ExactScalar>(c));
  for (int a = 0; a < k; ++a)
    for (int x = 0; x < c; ++x) cj[a][x] = t.values[a][x].conj();
  std::vector<Rational> inv(c);
  for (int x = 0; x < c; ++x) inv[x] = Rational(1, static_cast<long>(t.classes[x].central_order));
  std::mutex mu;
  parallel_for(static_cast<size_t>(k), [&](size_t ai) {
    int a = static_cast<int>(ai);
    for (int b = a; b < k; ++b) {
      ExactScalar s;
      for (int x = 0; x < c; ++x) s += t.values[a][x] * cj[b][x] * inv[x];
      if (s != ExactScalar(a == b ? 1L : 0L)) {
        std::lock_guard<std::mutex> lock(mu);
        if (rep.rows_ok) rep.witness = "row " + t.chars[a].key() + " / " + t.chars[b].key() + " = " + s.str();
        rep.rows_ok = false;
        return;
      }
    }
  });
  parallel_for(static_cast<size_t>(c), [&](size_t xi) {
    int x = static_cast<int>(xi);
    for (int y = x; y < c; ++y) {
      ExactScalar s;
      for (int a = 0; a < k; ++a) s += t.values[a][x] * cj[a][y];
      ExactScalar want = x == y ? ExactScalar(Rational(static_cast<long>(t.classes[x].central_order))) : ExactScalar();
      if (s != want) {
        std::lock_guard<std::mutex> lock(mu);
        if (rep.columns_ok && rep.rows_ok)
          rep.witness = "column " + t.classes[x].key() + " / " + t.classes[y].key() + " = " + s.str();
        rep.columns_ok = false;
        return;
      }
    }
  });
  return rep;
}

ExactScalar inner(const CharTable& t, int a, int b, const std::vector<bool>& mask) {
  ExactScalar s;
  for (int x = 0; x < t.num_classes(); ++x) {
    if (!mask.empty() && !mask[x]) continue;
    const auto& u = t.values[a][x];
    const auto& v = t.values[b][x];
    if (u.is_zero() || v.is_zero()) continue;
    s += u * v.conj() * Rational(1, static_cast<long>(t.classes[x].central_order));
  }
  return s;
}

std::vector<int> twist_permutation(const CharTable& t, int eps) {
  int k = t.num_chars(), c = t.num_classes();
  std::vector<int> tw(k, -1);
  for (int a = 0; a < k; ++a) {
    std::vector<ExactScalar> want(c);
    for (int x = 0; x < c; ++x) want[x] = t.values[a][x] * t.values[eps][x];
    for (int b = 0; b < k && tw[a] < 0; ++b)
      if (t.values[b] == want) tw[a] = b;
    if (tw[a] < 0) throw std::logic_error("twist_permutation: no twisted partner for " + t.chars[a].key());
  }
  return tw;
}

CharTable index2_descent(const CharTable& parent, const DescentData& d, const std::string& family) {
  int c = parent.num_classes();
  if (d.eps < 0 || d.eps >= parent.num_chars()) throw std::invalid_argument("descent: bad sign character");
  if (static_cast<int>(d.splits.size()) != c) throw std::invalid_argument("descent: split list has wrong length");
  CharTable out;
  out.family = family;
  out.params = parent.params;
  out.order = parent.order / 2;
  out.base_class_orders = parent.base_class_orders;

  // kernel classes; a split class keeps the parent centralizer order
  std::vector<std::pair<int, int>> cls;  // (parent class, split sign)
  for (int x = 0; x < c; ++x) {
    const auto& e = parent.values[d.eps][x];
    bool in_kernel = e == ExactScalar(1L);
    if (!in_kernel && e != ExactScalar(-1L)) throw std::invalid_argument("descent: sign character is not of order 2");
    if (!in_kernel) {
      if (d.splits[x]) throw std::invalid_argument("descent: split class " + parent.classes[x].key() + " outside the kernel");
      continue;
    }
    ClassLabel lab = parent.classes[x];
    if (d.splits[x]) {
      for (int s : {1, -1}) {
        lab.split = s;
        out.classes.push_back(lab);
        cls.push_back({x, s});
      }
    } else {
      if (lab.central_order % 2) throw std::invalid_argument("descent: odd centralizer on a non-split class");
      lab.central_order /= 2;
      out.classes.push_back(lab);
      cls.push_back({x, 0});
    }
  }

  auto tw = twist_permutation(parent, d.eps);
  std::vector<std::pair<std::string, int>> aliases;
  for (int a = 0; a < parent.num_chars(); ++a) {
    int b = tw[a];
    if (b < a) continue;
    if (b > a) {
      CharLabel lab = parent.chars[a];
      lab.assoc = 0;
      std::vector<ExactScalar> row;
      for (auto [x, s] : cls) row.push_back(parent.values[a][x]);
      int idx = out.num_chars();
      out.chars.push_back(lab);
      out.values.push_back(std::move(row));
      if (parent.chars[a].key() != lab.key()) aliases.push_back({parent.chars[a].key(), idx});
      aliases.push_back({parent.chars[b].key(), idx});
      continue;
    }
    for (int eps : {1, -1}) {
      CharLabel lab = parent.chars[a];
      lab.assoc = eps;
      std::vector<ExactScalar> row;
      for (auto [x, s] : cls) {
        ExactScalar v = parent.values[a][x];
        if (s != 0) {
          auto it = d.diff.find({a, x});
          if (it != d.diff.end()) {
            if (s * eps > 0)
              v += it->second;
            else
              v -= it->second;
          }
        }
        row.push_back(v / Rational(2));
      }
      out.chars.push_back(lab);
      out.values.push_back(std::move(row));
    }
  }
  out.reindex();
  for (auto& [k, i] : aliases) out.add_alias(k, i);
  auto rep = check_orthogonality(out);
  if (!rep.ok()) throw std::runtime_error("descent to " + family + " failed orthogonality: " + rep.witness);
  return out;
}

}  // namespace isoforge
