#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleinia/group.hpp"
#include "kleinia/words.hpp"

namespace kleinia {

using Params = std::map<std::string, long long>;

struct FamilyInfo {
  std::string name;
  std::string params;       // documented parameter ranges
  std::string description;
};
const std::vector<FamilyInfo>& catalog_families();
bool is_catalog_family(const std::string& name);

// A built catalog group together with the data it was checked against.
struct CatalogGroup {
  FiniteGroup group;
  Presentation presentation;            // stated relations, over group.named_generators()
  Presentation defining;                // complete presentation from the pc data
  std::vector<Word> declared_center;    // empty if none is stated
  std::vector<Word> center_corrections; // central elements the stated centre omits
  long long declared_order = 0;
};

// Builds, then verifies presentation relations, declared center and order.
CatalogGroup build_catalog(const std::string& family, const Params& params,
                           std::size_t max_order = kMaxGroupOrder);
FiniteGroup catalog_group(const std::string& family, const Params& params,
                          std::size_t max_order = kMaxGroupOrder);
// Complete presentation of a family group, built without realizing it (no
// order cap).  y_i and m_j are marked as repeatable kinds.
Presentation defining_presentation(const std::string& family, const Params& params);

// (M x Q) : <u> with M = C3^m and P = Q : <u> one of
//   "C8"  (Q = <u^2>),
//   "W1n" (Q = <y_i, t_i, x^2>),
//   "W21" (Q = <y_1^2, x>);
// u inverts M.
CatalogGroup build_m_extension(const std::string& base, long long n, long long m,
                               std::size_t max_order = kMaxGroupOrder);
Presentation m_extension_presentation(const std::string& base, long long n, long long m);

// K x ((M x N2) : <u>) with K = C3^k, M = C3^m; elements of G2 outside N2
// invert M.  N2 is given by generators (element indices of G2).
FiniteGroup gkm_group(int k, int m, const FiniteGroup& G2, const std::vector<Element>& n2_gens,
                      std::size_t max_order = kMaxGroupOrder);

struct GroupSpec {
  enum class Variant { Family, Permutations, Table, Product };
  Variant variant = Variant::Family;
  std::string family;
  Params params;
  std::shared_ptr<GroupSpec> g2;                // Gkm only
  std::vector<std::string> n2;                  // Gkm only: words in G2's generators
  std::vector<std::vector<int>> permutations;
  std::vector<std::vector<int>> cayley_table;
  std::vector<GroupSpec> factors;               // Product
  std::string label;

  static GroupSpec make(std::string family, Params params = {});
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec gkm(int k, int m, GroupSpec g2, std::vector<std::string> n2);

  std::string display() const;
};

FiniteGroup build_group(const GroupSpec& spec, std::size_t max_order = kMaxGroupOrder);
GroupSpec parse_group_spec(const nlohmann::json& j);
nlohmann::json to_json(const GroupSpec& spec);

}  // namespace kleinia
