#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kleinia {

// p + q sqrt(D)
struct QuadElem {
  mpq_class p = 0, q = 0;
  friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.p == b.p && a.q == b.q; }
};

// Q(sqrt(D)) for squarefree D != 0, 1.
class QuadField {
 public:
  explicit QuadField(long D);
  long D() const { return d_; }
  bool one_mod_4() const { return ((d_ % 4) + 4) % 4 == 1; }

  QuadElem rational(const mpq_class& x) const { return {x, 0}; }
  QuadElem add(const QuadElem& a, const QuadElem& b) const { return {a.p + b.p, a.q + b.q}; }
  QuadElem sub(const QuadElem& a, const QuadElem& b) const { return {a.p - b.p, a.q - b.q}; }
  QuadElem neg(const QuadElem& a) const { return {-a.p, -a.q}; }
  QuadElem mul(const QuadElem& a, const QuadElem& b) const;
  QuadElem conj(const QuadElem& a) const { return {a.p, -a.q}; }
  QuadElem inv(const QuadElem& a) const;
  QuadElem div(const QuadElem& a, const QuadElem& b) const { return mul(a, inv(b)); }
  mpq_class norm(const QuadElem& a) const { return a.p * a.p - d_ * a.q * a.q; }
  bool is_zero(const QuadElem& a) const { return a.p == 0 && a.q == 0; }

  bool is_integral(const QuadElem& a) const;
  // Coordinates on the integral basis 1, w (w = sqrt D, or (1 + sqrt D)/2).
  std::pair<mpz_class, mpz_class> coords(const QuadElem& a) const;
  QuadElem from_coords(const mpz_class& u, const mpz_class& v) const;

  std::optional<QuadElem> sqrt(const QuadElem& a) const;
  bool is_square(const QuadElem& a) const { return sqrt(a).has_value(); }
  std::string str(const QuadElem& a) const;

 private:
  long d_;
};

std::optional<mpq_class> rational_sqrt(const mpq_class& x);

// A prime of the ring of integers of Q(sqrt D), D in {-1, -2, -3}.
struct QuadPrime {
  long p = 2;          // the rational prime below
  QuadElem pi;         // a generator, canonical among its associates
  int e = 1, f = 1;
  std::string name;
};

// Requires D in {-1, -2, -3} (norm-Euclidean, class number one).
std::vector<QuadPrime> primes_above(const QuadField& F, long p);
// x integral and nonzero.
int valuation(const QuadField& F, const QuadPrime& P, QuadElem x);
// Scales by a square so that the result is integral.
QuadElem integral_square_class(const QuadField& F, const QuadElem& x);
// Primes dividing 2ab, in increasing order of (p, name).
std::vector<QuadPrime> relevant_primes(const QuadField& F, const QuadElem& a, const QuadElem& b);

// Local Hilbert symbol (a,b)_P for nonzero a, b.
int local_symbol(const QuadField& F, const QuadElem& a, const QuadElem& b, const QuadPrime& P);

}  // namespace kleinia
