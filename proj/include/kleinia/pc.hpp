#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "kleinia/group.hpp"

namespace kleinia {

using ExpVec = std::vector<int>;

// Refined consistent polycyclic presentation g_1..g_r with relative orders
// p_i (not necessarily prime):
//   g_i^{p_i} = power[i]          (a word in g_{i+1}..g_r)
//   g_k^{g_j} = conj[k][j]        (k > j, a word in g_{j+1}..g_r)
// Missing conjugates default to g_k, missing powers to the identity.
class PcPresentation {
 public:
  int add(std::string name, int rel_order);
  int index(const std::string& name) const;
  std::size_t rank() const { return names_.size(); }

  // Normal-form helpers: {{"y",1},{"t",3}} -> exponent vector.
  ExpVec vec(const std::vector<std::pair<std::string, int>>& word) const;
  void set_power(const std::string& g, ExpVec v);
  void set_conj(const std::string& k, const std::string& j, ExpVec v);

  ExpVec identity() const { return ExpVec(names_.size(), 0); }
  ExpVec gen(int i) const;
  ExpVec multiply(const ExpVec& a, const ExpVec& b) const;
  ExpVec power(const ExpVec& a, long long e) const;
  long long declared_order() const;

  // Right regular representation: closure over `named`, which should
  // generate the group.  Throws RelationCheckFailed if the closure size
  // differs from the product of the relative orders.
  FiniteGroup realize(const std::vector<ExpVec>& named, const std::vector<std::string>& names,
                      std::string label) const;

  const std::vector<std::string>& names() const { return names_; }
  int rel_order(int i) const { return rel_[i]; }
  const ExpVec& power_rel(int i) const { return power_[i]; }
  const ExpVec& conj_rel(int k, int j) const { return conj_[k][j]; }

 private:
  ExpVec mul_gen(const ExpVec& v, int j) const;

  std::vector<std::string> names_;
  std::vector<int> rel_;
  std::vector<ExpVec> power_;
  std::vector<std::vector<ExpVec>> conj_;
  mutable std::unordered_map<std::string, ExpVec> memo_;
};

}  // namespace kleinia
