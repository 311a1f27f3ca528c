#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kleinia/group.hpp"
#include "kleinia/words.hpp"

namespace kleinia {

// One group H of the list, with the exponent e allowed for the abelian
// factor A.  n and m are the numbers of y_i and m_j slots.
struct FTemplate {
  std::string branch;  // "F.1" .. "F.4"
  int exponent = 1;
  std::string family;  // W, W1n, ..., or C8:M, W1n:M, W21:M
  int group_exponent = 1;    // exponent of H, the same for every n and m >= 1
  int derived_exponent = 1;  // exponent of H', likewise
  long long n = 0, m = 0;
  Presentation presentation;
  // H has an abelian normal subgroup of index 2 (all but U1, U2).  Then so
  // does every G = phi(H) Z_e, so groups without one skip the template.
  bool abelian_index_2 = true;
};

FTemplate make_f_template(const std::string& family, long long n, long long m);
// All templates in search order, with n <= ceil(log2 |G|), m <= ceil(log3 |G|).
std::vector<FTemplate> f_templates(std::size_t group_order);

enum class FOutcome { True, False, BudgetExceeded };
const char* f_outcome_name(FOutcome o);

// phi: H -> G given on the generators (identity for unused y_i / m_j slots)
// with <phi(H), Z_e> = G, Z_e = {z in Z(G) : z^e = 1}.
struct FWitness {
  std::string branch, family;
  int exponent = 1;
  long long n = 0, m = 0;
  std::vector<std::string> names;
  std::vector<Element> images;
  std::size_t ze_order = 1;
};

struct FVerdict {
  FOutcome outcome = FOutcome::False;
  std::optional<FWitness> witness;  // set for True on nonabelian G
  std::size_t nodes = 0;
  std::string note;
};

struct FOptions {
  std::size_t budget = 20'000'000;  // candidate images tried, over all templates
};

// Abelian G is accepted outright; otherwise the templates are searched in
// order.  The first image of the first generator ranges over conjugacy
// class representatives; y_i (and m_j) images are strictly increasing and
// each outside the subgroup generated by Z_e and the earlier images.
FVerdict decide_F(const FiniteGroup& G, const FOptions& opt = {});

// Rebuilds the template and checks relations and generation.
bool verify_f_witness(const FiniteGroup& G, const FWitness& w);

}  // namespace kleinia
