#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "kleinia/group.hpp"

namespace kleinia {

// Element of QG.  Coefficients are kept sparse, keyed by element index, with
// no stored zeros.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(FiniteGroup G) : g_(std::move(G)) {}
  static AlgebraElement one(const FiniteGroup& G) { return basis(G, 0); }
  static AlgebraElement basis(const FiniteGroup& G, Element g, const mpq_class& c = 1);

  const FiniteGroup& group() const { return g_; }
  const std::map<Element, mpq_class>& terms() const { return c_; }
  mpq_class coeff(Element g) const;
  void add_term(Element g, const mpq_class& c);
  bool is_zero() const { return c_.empty(); }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement scaled(const mpq_class& q) const;
  // g^-1 a g
  AlgebraElement conjugate(Element g) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.g_.same_as(b.g_) && a.c_ == b.c_;
  }
  friend bool operator<(const AlgebraElement& a, const AlgebraElement& b) { return a.c_ < b.c_; }

 private:
  void same_group(const AlgebraElement& o) const;
  FiniteGroup g_;
  std::map<Element, mpq_class> c_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement hat(const Subgroup& H);
// Requires H normal in K with K/H cyclic.
AlgebraElement epsilon(const Subgroup& K, const Subgroup& H);
bool is_central(const AlgebraElement& a);
bool is_idempotent(const AlgebraElement& a);

// Sum of the distinct G-conjugates of eps(K,H).  Checks that (K,H) is a
// strong Shoda pair and that the result is a central idempotent.
AlgebraElement idempotent_e(const FiniteGroup& G, const Subgroup& K, const Subgroup& H);
// Same without the pair check (the caller already did it).
AlgebraElement conjugate_sum(const FiniteGroup& G, const AlgebraElement& eps,
                             const Subgroup& stabilizer);

// An element of K whose coset generates K/H, least index first.
Element cyclic_generator(const Subgroup& K, const Subgroup& H);

}  // namespace kleinia
