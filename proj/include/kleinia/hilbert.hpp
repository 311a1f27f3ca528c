#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kleinia/cyclotomic.hpp"
#include "kleinia/quadratic.hpp"
#include "kleinia/shoda.hpp"

namespace kleinia {

// Local Hilbert symbol over Q; place 0 is the real place.
int hilbert_symbol_rational(const mpq_class& a, const mpq_class& b, long place);
// Places where (a,b / Q) ramifies, as primes with 0 for the real place, sorted.
std::vector<long> rational_ramification(const mpq_class& a, const mpq_class& b);
std::vector<long> rational_prime_divisors(const mpz_class& n);

// (a,b / F) with F a subfield of Q(xi_k), a and b given in Q(xi_k).
struct QuaternionDescriptor {
  FieldDescriptor center;
  CyclotomicElement a, b;
};

// Simple component read off a crossed-product descriptor.
struct ResolvedAlgebra {
  enum class Kind { MatrixOverCyclotomic, Quaternion, HighDegreeOpaque };
  Kind kind = Kind::MatrixOverCyclotomic;
  std::size_t n = 1;             // outer matrix size [G:N]
  FieldDescriptor center;
  std::size_t inner_degree = 1;  // |N/K|: 1, 2, or larger when opaque
  std::optional<QuaternionDescriptor> quaternion;
};

ResolvedAlgebra quaternion_from_crossed_product(const CrossedProductDescriptor& d);

enum class SplitStatus { Split, Division, Unknown };
const char* split_status_name(SplitStatus s);

// a X^2 + b Y^2 = Z^2 with (X, Y) != 0, all in Q(xi_k).
struct SplitCertificate {
  CyclotomicElement x, y, z;
  std::string text;
};
bool certificate_holds(const QuaternionDescriptor& q, const SplitCertificate& c);

struct QuaternionAnalysis {
  SplitStatus status = SplitStatus::Unknown;
  std::vector<std::string> ramified;  // finite primes, then real places
  int r = 0, s = 0;                   // real and complex places of the centre
  int r1 = 0, r2 = 0;                 // ramified / unramified real places
  bool totally_definite = false;
  bool hamiltonian = false;           // certified isomorphic to (-1,-1 / F)
  std::optional<SplitCertificate> certificate;
  std::string name;                   // e.g. "M2(Q(i))", "H(Q)", "(-1,-3 / Q)"
  std::string key;                    // canonical isomorphism-class key
};

// Split verdict over Q and over Q(i), Q(sqrt-2), Q(sqrt-3); throws
// UnsupportedCenter for any other centre.
bool is_split(const QuaternionDescriptor& q);
bool is_totally_definite(const QuaternionDescriptor& q);
// Best-effort analysis for every centre; never throws UnsupportedCenter.
QuaternionAnalysis analyze_quaternion(const QuaternionDescriptor& q);

// Elements of a quadratic subfield as p + q sqrt(D).
QuadElem to_quadratic(const FieldDescriptor& F, const CyclotomicElement& x);
CyclotomicElement from_quadratic(const FieldDescriptor& F, const QuadElem& x);

}  // namespace kleinia
