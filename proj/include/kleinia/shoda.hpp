#pragma once

#include <vector>

#include "kleinia/group.hpp"
#include "kleinia/qalg.hpp"

namespace kleinia {

struct StrongShodaPair {
  Subgroup K, H, N;     // N = N_G(H)
  std::size_t k = 1;    // [K:H]
  std::size_t n = 1;    // [G:N]
};

struct CrossedProductDescriptor {
  std::size_t n = 1;                        // [G:N]
  std::size_t k = 1;                        // [K:H]
  Element x = 0;                            // generator of K/H
  std::vector<Element> quotient_elems;      // gamma(a), least-index coset representatives of N/K
  std::vector<std::vector<int>> quotient_mul;  // multiplication of N/K on those indices
  std::vector<int> action;                  // x^{gamma(a)} = x^{action[a]} mod H
  std::vector<std::vector<int>> twisting;   // gamma(ab)^-1 gamma(a) gamma(b) = x^{twisting[a][b]}
  Subgroup faithful_kernel;                 // Core_G(H)
};

struct Pci {
  StrongShodaPair pair;
  AlgebraElement e;
  // |G| times the coefficient of the identity, i.e. dim_Q of QGe.
  std::size_t dimension() const;
};

enum class PciStrategy {
  Auto,          // abelian cover, then normal K, as needed
  AbelianCover,  // K over subgroups containing a maximal abelian A >= G'
  NormalK,       // K over all normal subgroups
  Exhaustive,    // H over subgroup class representatives, K over overgroups
};

class IncompleteDecompositionError : public Error {
 public:
  IncompleteDecompositionError(const std::string& what, std::vector<Pci> partial)
      : Error(ErrorKind::IncompleteDecomposition, what), partial_(std::move(partial)) {}
  const std::vector<Pci>& partial() const { return partial_; }

 private:
  std::vector<Pci> partial_;
};

bool is_strong_shoda_pair(const FiniteGroup& G, const Subgroup& K, const Subgroup& H);
StrongShodaPair make_pair(const FiniteGroup& G, const Subgroup& K, const Subgroup& H);

// Complete set of primitive central idempotents of QG for metabelian G,
// ordered by (dimension, pair).  Verifies idempotency, centrality and that
// the sum is 1.
std::vector<Pci> enumerate_pcis(const FiniteGroup& G, PciStrategy strategy = PciStrategy::Auto);

CrossedProductDescriptor crossed_product_data(const FiniteGroup& G, const StrongShodaPair& p);

// A maximal abelian subgroup containing G' (greedy, by element index).
Subgroup abelian_cover(const FiniteGroup& G);

}  // namespace kleinia
