#include "isoforge/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace isoforge {

namespace {

Int checked_mul(Int a, Int b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("radicand overflow");
  return static_cast<Int>(r);
}

bool term_order(Int a, Int b) {
  // 1 first, then by absolute value, positive before negative
  if (a == 1 || b == 1) return a == 1 && b != 1;
  Int aa = std::llabs(a), bb = std::llabs(b);
  if (aa != bb) return aa < bb;
  return a > b;
}

Rational canon(Rational q) {
  q.canonicalize();
  return q;
}

}  // namespace

RootSplit reduce_root(Int n) {
  if (n == 0) throw std::invalid_argument("reduce_root: n = 0");
  Int sign = n < 0 ? -1 : 1;
  Int m = std::llabs(n);
  Int k = 1, d = 1;
  for (Int f = 2; f * f <= m; ++f) {
    int e = 0;
    while (m % f == 0) { m /= f; ++e; }
    for (int j = 0; j < e / 2; ++j) k *= f;
    if (e % 2) d *= f;
  }
  d *= m;
  return {k, sign * d};
}

bool is_squarefree(Int n) {
  if (n == 0) return false;
  return std::llabs(reduce_root(n).k) == 1;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  Int m = std::llabs(n);
  for (Int f = 2; f * f <= m; ++f) {
    if (m % f == 0) {
      out.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

int p_valuation(const mpz_class& n, Int p) {
  if (n == 0) return 1 << 20;
  mpz_class m = abs(n);
  mpz_class pp = static_cast<long>(p);
  int v = 0;
  while (m % pp == 0) { m /= pp; ++v; }
  return v;
}

int p_valuation(const Rational& q, Int p) {
  if (q == 0) return 1 << 20;
  return p_valuation(q.get_num(), p) - p_valuation(q.get_den(), p);
}

ExactScalar::ExactScalar(long v) {
  if (v != 0) t_[1] = Rational(v);
}

ExactScalar::ExactScalar(const Rational& q) {
  if (q != 0) t_[1] = canon(q);
}

ExactScalar ExactScalar::root(Int m) {
  auto [k, d] = reduce_root(m);
  ExactScalar r;
  r.t_[d] = Rational(static_cast<long>(k));
  return r;
}

ExactScalar ExactScalar::term(const Rational& q, Int m) {
  ExactScalar r = root(m);
  r *= q;
  return r;
}

ExactScalar ExactScalar::i_pow(Int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return ExactScalar(1L);
    case 1: return root(-1);
    case 2: return ExactScalar(-1L);
    default: return -root(-1);
  }
}

bool ExactScalar::is_rational() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == 1);
}

Rational ExactScalar::rational_part() const {
  auto it = t_.find(1);
  return it == t_.end() ? Rational(0) : it->second;
}

void ExactScalar::add_term(Int m, const Rational& q) {
  if (q == 0) return;
  auto [it, inserted] = t_.try_emplace(m, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) t_.erase(it);
  }
}

ExactScalar ExactScalar::conj() const {
  ExactScalar r = *this;
  for (auto& [m, q] : r.t_)
    if (m < 0) q = -q;
  return r;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  for (auto& [m, q] : r.t_) q = -q;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  for (const auto& [m, q] : o.t_) add_term(m, q);
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  for (const auto& [m, q] : o.t_) add_term(m, -q);
  return *this;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  ExactScalar r;
  for (const auto& [ma, qa] : a.t_) {
    for (const auto& [mb, qb] : b.t_) {
      Int aa = std::llabs(ma), bb = std::llabs(mb);
      Int g = std::gcd(aa, bb);
      Int e = checked_mul(aa / g, bb / g);
      Rational c = qa * qb * Rational(static_cast<long>(g));
      bool na = ma < 0, nb = mb < 0;
      if (na && nb) {
        r.add_term(e, -c);  // i*i folds into the sign
      } else if (na || nb) {
        r.add_term(-e, c);
      } else {
        r.add_term(e, c);
      }
    }
  }
  return r;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  *this = *this * o;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const Rational& q0) {
  Rational q = canon(q0);
  if (q == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= q;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const Rational& q0) {
  Rational q = canon(q0);
  if (q == 0) throw std::domain_error("division by zero");
  for (auto& [m, c] : t_) c /= q;
  return *this;
}

ExactScalar ExactScalar::galois(const std::map<Int, int>& flips) const {
  ExactScalar r;
  for (const auto& [m, q] : t_) {
    int s = 1;
    if (m < 0) {
      auto it = flips.find(-1);
      if (it != flips.end()) s *= it->second;
    }
    for (Int f : prime_factors(m)) {
      auto it = flips.find(f);
      if (it != flips.end()) s *= it->second;
    }
    r.t_[m] = s > 0 ? q : Rational(-q);
  }
  return r;
}

std::string ExactScalar::str() const {
  if (t_.empty()) return "0";
  std::vector<Int> keys;
  for (const auto& kv : t_) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end(), term_order);
  std::string out;
  bool first = true;
  for (Int m : keys) {
    Rational q = t_.at(m);
    bool neg = q < 0;
    Rational a = neg ? Rational(-q) : q;
    std::string body;
    if (m == 1) {
      body = a.get_str();
    } else {
      body = (a == 1 ? std::string() : a.get_str() + "*") + "rt(" + std::to_string(m) + ")";
    }
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

ExactScalar ExactScalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar");
  ExactScalar r;
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    size_t end = pos;
    int depth = 0;
    while (end < s.size() && (depth > 0 || (s[end] != '+' && s[end] != '-') || end == pos)) {
      if (s[end] == '(') ++depth;
      if (s[end] == ')') --depth;
      ++end;
    }
    std::string tok = s.substr(pos, end - pos);
    Rational q = 1;
    Int m = 1;
    auto rt = tok.find("rt(");
    if (rt == std::string::npos) {
      q = Rational(tok);
    } else {
      if (rt > 0) {
        std::string coef = tok.substr(0, rt);
        if (coef.back() != '*') throw std::invalid_argument("bad scalar term: " + tok);
        coef.pop_back();
        q = Rational(coef);
      }
      auto close = tok.find(')', rt);
      if (close == std::string::npos) throw std::invalid_argument("bad scalar term: " + tok);
      m = std::stoll(tok.substr(rt + 3, close - rt - 3));
    }
    q.canonicalize();
    r += ExactScalar::term(sign * q, m);
    pos = end;
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& a) { return os << a.str(); }

std::vector<Int> field_generators(const ExactScalar& a) {
  std::vector<Int> gens;
  bool imag = false;
  for (const auto& [m, q] : a.terms()) {
    if (m < 0) imag = true;
    for (Int f : prime_factors(m)) gens.push_back(f);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (imag) gens.insert(gens.begin(), -1);
  return gens;
}

namespace {

using Poly = std::vector<ExactScalar>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

std::vector<Rational> char_poly(const ExactScalar& a) {
  Poly f{-a, ExactScalar(1L)};
  for (Int g : field_generators(a)) {
    Poly h = f;
    for (auto& c : h) c = c.galois({{g, -1}});
    f = poly_mul(f, h);
  }
  std::vector<Rational> out;
  for (const auto& c : f) {
    if (!c.is_rational()) throw std::logic_error("char_poly: irrational coefficient");
    out.push_back(c.rational_part());
  }
  return out;
}

std::vector<int> char_poly_valuations(const ExactScalar& a, Int p) {
  std::vector<int> v;
  for (const auto& c : char_poly(a)) v.push_back(p_valuation(c, p));
  return v;
}

bool is_p_integral(const ExactScalar& a, Int p) {
  if (a.is_rational()) return p_valuation(a.rational_part(), p) >= 0;
  if (p % 2 == 1) {
    // away from 2 the radical basis spans the local ring of integers,
    // so coefficientwise integrality agrees with the characteristic polynomial
    for (const auto& [m, q] : a.terms())
      if (p_valuation(q, p) < 0) return false;
    return true;
  }
  for (const auto& c : char_poly(a))
    if (p_valuation(c, p) < 0) return false;
  return true;
}

}  // namespace isoforge
