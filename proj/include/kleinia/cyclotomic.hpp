#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kleinia {

// Element of Q(xi_k), stored on the power basis 1, xi, ..., xi^{phi(k)-1}.
class CyclotomicElement {
 public:
  CyclotomicElement() : CyclotomicElement(1) {}
  explicit CyclotomicElement(int k);
  static CyclotomicElement rational(int k, const mpq_class& q);
  static CyclotomicElement zeta(int k, long j);  // xi_k^j

  int conductor() const { return k_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  CyclotomicElement operator+(const CyclotomicElement& o) const;
  CyclotomicElement operator-(const CyclotomicElement& o) const;
  CyclotomicElement operator*(const CyclotomicElement& o) const;
  CyclotomicElement operator-() const;
  CyclotomicElement scaled(const mpq_class& q) const;
  // The automorphism xi -> xi^i (i coprime to k).
  CyclotomicElement galois(long i) const;

  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_value() const;  // requires is_rational()
  std::string str() const;

  friend bool operator==(const CyclotomicElement& a, const CyclotomicElement& b) {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

 private:
  struct Ctx;
  static std::shared_ptr<const Ctx> context(int k);
  void reduce_into(const std::vector<mpq_class>& raw);

  int k_;
  std::shared_ptr<const Ctx> ctx_;
  std::vector<mpq_class> c_;
};

long euler_phi(long n);
long mod_pow(long b, long e, long m);
std::vector<long> units_mod(long k);
// Coefficients (low degree first) of the k-th cyclotomic polynomial.
std::vector<long> cyclotomic_polynomial(long k);

// Squarefree part of a nonzero rational up to squares (numerator*denominator).
mpz_class squarefree_part(const mpq_class& q);

enum class FieldTag { Q, Qi, QsqrtM2, QsqrtM3, Qsqrt2, Qsqrt3, Other };
const char* field_tag_name(FieldTag t);

// Subfield of Q(xi_k) fixed by a subgroup S of (Z/k)*.
struct FieldDescriptor {
  int conductor = 1;             // the ambient k
  std::vector<long> fixing;      // S, sorted residues
  int degree = 1;
  bool totally_real = true;
  int r = 1, s = 0;              // real and complex places
  FieldTag tag = FieldTag::Q;
  long quadratic_d = 1;          // squarefree D when degree == 2
  long discriminant = 1;         // of the quadratic field when degree == 2
  // Canonical form: smallest conductor f containing the field and the image
  // of S in (Z/f)*.  Equal keys <=> isomorphic fields.
  int min_conductor = 1;
  std::vector<long> min_fixing;

  std::string key() const;
  std::string name() const;
  bool imaginary_quadratic() const { return degree == 2 && !totally_real; }
  // Kleinian-relevant: Q(i), Q(sqrt-2), Q(sqrt-3).
  bool listed_imaginary() const {
    return tag == FieldTag::Qi || tag == FieldTag::QsqrtM2 || tag == FieldTag::QsqrtM3;
  }
};

FieldDescriptor fixed_field(int k, const std::vector<long>& generators);
// Fills the tag, quadratic data and canonical key of a descriptor.
void identify_field(FieldDescriptor& f);

// sqrt(D) of a quadratic subfield as an element of Q(xi_k).
CyclotomicElement quadratic_sqrt(const FieldDescriptor& f);
// Some automorphism of Q(xi_k) that is nontrivial on the field (|S|-coset rep).
long nontrivial_on(const FieldDescriptor& f);
bool in_field(const FieldDescriptor& f, const CyclotomicElement& x);

// Sign of the real number sigma_c(x), c a unit mod k, for x fixed by
// complex conjugation.  Certified with interval bounds at growing precision.
int real_embedding_sign(const CyclotomicElement& x, long c);
double approx_real(const CyclotomicElement& x, long c);

}  // namespace kleinia
