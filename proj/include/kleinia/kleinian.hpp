#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kleinia/hilbert.hpp"
#include "kleinia/shoda.hpp"

namespace kleinia {

// The six types of simple algebras of Kleinian type, in their usual order.
enum class KleinianType {
  Field,              // (1)
  TotallyDefinite,    // (2) totally definite quaternion algebra
  M2Q,                // (3)
  M2Imaginary,        // (4) M2(K), K imaginary quadratic
  RealOnePlace,       // (5) division quaternion over a totally real field, one split real place
  ImaginaryDivision,  // (6) division quaternion over an imaginary quadratic field
  NotKleinian,
};
const char* kleinian_type_name(KleinianType t);
KleinianType kleinian_type_from_name(const std::string& s);

enum class UnitClass { Finite, VirtuallyFreeNonabelian, FreeByFree, Other };
// FreeByFree carries d, as in M2(Q(sqrt(-d))).
std::string unit_class_name(UnitClass u, int d = 0);

// Virtual cohomological dimension of the norm-one group of an order in
// M_n(D), D of index d, r1 ramified and r2 unramified real places, s complex.
long vcd(int n, int d, int r1, int r2, int s);

struct SimpleComponent {
  StrongShodaPair pair;
  CrossedProductDescriptor descriptor;
  ResolvedAlgebra resolved;
  std::optional<QuaternionAnalysis> quaternion;
  std::size_t dim = 0;
  std::size_t degree = 1;  // [G:K]
  bool commutative = false;
  std::string split = "n/a";  // split / division / unknown for quaternion parts
  bool totally_definite = false;
  KleinianType type = KleinianType::NotKleinian;
  std::optional<long> vcd;
  UnitClass unit_class = UnitClass::Other;
  int unit_d = 0;
  std::string algebra;  // display name, e.g. "M2(Q(sqrt(-2)))"
  std::string key;      // equal keys <=> isomorphic algebras (when resolved)
};

SimpleComponent classify_component(const FiniteGroup& G, const Pci& pci);
std::vector<SimpleComponent> decompose(const FiniteGroup& G, PciStrategy strategy = PciStrategy::Auto);

// "4Q + M2(Q) + M2(Q(sqrt(-2)))", grouped by key in order of first appearance.
std::string decomposition_text(const std::vector<SimpleComponent>& comps);

struct EVerdict {
  bool verdict = true;
  std::vector<std::string> reasons;  // one per component
};
bool allowed_by_E(const SimpleComponent& c, std::string* reason = nullptr);
EVerdict decide_E(const std::vector<SimpleComponent>& comps);
EVerdict decide_E(const FiniteGroup& G);

}  // namespace kleinia
