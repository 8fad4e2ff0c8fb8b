#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace isoforge {

using Int = std::int64_t;
using Rational = mpq_class;

struct RootSplit {
  Int k;  // n = k*k*d
  Int d;  // squarefree, carries the sign of n
};

RootSplit reduce_root(Int n);
bool is_squarefree(Int n);
std::vector<Int> prime_factors(Int n);  // distinct primes of |n|, ascending
int p_valuation(const mpz_class& n, Int p);
int p_valuation(const Rational& q, Int p);  // q != 0

// Rational combination of radicals sum q_m * rt(m), rt(m) = sqrt(m) for m>0
// and i*sqrt(|m|) for m<0.  Keys are squarefree and nonzero; no zero coefficients.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v);  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& q);  // NOLINT(google-explicit-constructor)

  static ExactScalar root(Int m);  // rt(m) for any nonzero m, reduced
  static ExactScalar term(const Rational& q, Int m);
  static ExactScalar i_pow(Int e);  // rt(-1)^e
  static ExactScalar parse(const std::string& text);

  const std::map<Int, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;

  ExactScalar conj() const;
  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator*=(const Rational& q);
  ExactScalar& operator/=(const Rational& q);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(ExactScalar a, const Rational& q) { return a *= q; }
  friend ExactScalar operator/(ExactScalar a, const Rational& q) { return a /= q; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.t_ == b.t_; }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  // radicands with their coefficient after applying the sign flip s(f) to
  // every prime factor f (f = -1 stands for rt(-1))
  ExactScalar galois(const std::map<Int, int>& flips) const;

  std::string str() const;

 private:
  void add_term(Int m, const Rational& q);
  std::map<Int, Rational> t_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& a);

// generators of the multi-quadratic field of a: -1 plus primes dividing radicands
std::vector<Int> field_generators(const ExactScalar& a);

// coefficients c_0..c_N of prod over all sign-flip conjugates of (X - a);
// monic, rational
std::vector<Rational> char_poly(const ExactScalar& a);

// all Galois conjugates of a are p-integral
bool is_p_integral(const ExactScalar& a, Int p);

// valuations of the characteristic-polynomial coefficients, for failure reports
std::vector<int> char_poly_valuations(const ExactScalar& a, Int p);

}  // namespace isoforge
