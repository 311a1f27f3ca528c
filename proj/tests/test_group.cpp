#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kleinia/catalog.hpp"
#include "kleinia/group.hpp"

using namespace kleinia;

namespace {

// Permutation models on {0..n-1}, independent of the pc machinery.
FiniteGroup dihedral_perm(int n) {
  std::vector<int> r(n), s(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n, s[i] = (n - i) % n;
  return FiniteGroup::from_permutations({r, s}, "D" + std::to_string(2 * n));
}

FiniteGroup cyclic_perm(int n) {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
  return FiniteGroup::from_permutations({r}, "C" + std::to_string(n));
}

// Q8 acting on itself by right multiplication, elements +-1, +-i, +-j, +-k
// coded as 0..7 = 1, -1, i, -i, j, -j, k, -k.
FiniteGroup q8_perm() {
  auto mul = [](int a, int b) {
    static const int t[4][4] = {{0, 2, 4, 6}, {2, 1, 6, 5}, {4, 7, 1, 2}, {6, 4, 3, 1}};
    int r = t[a / 2][b / 2];
    int sign = (a % 2) ^ (b % 2) ^ (r % 2);
    return (r / 2) * 2 + sign;
  };
  std::vector<int> ri(8), rj(8);
  for (int x = 0; x < 8; ++x) ri[x] = mul(x, 2), rj[x] = mul(x, 4);
  return FiniteGroup::from_permutations({ri, rj}, "Q8");
}

std::size_t class_count_bruteforce(const FiniteGroup& G) {
  std::vector<bool> seen(G.order());
  std::size_t c = 0;
  for (Element x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    ++c;
    for (Element g = 0; g < G.order(); ++g) seen[G.conj(x, g)] = true;
  }
  return c;
}

}  // namespace

TEST_CASE("permutation closure gives the expected orders") {
  CHECK(dihedral_perm(8).order() == 16);
  CHECK(cyclic_perm(12).order() == 12);
  CHECK(q8_perm().order() == 8);
  CHECK(q8_perm().exponent() == 4);
}

TEST_CASE("catalog groups match permutation models") {
  for (int n = 3; n <= 12; ++n) CHECK(isomorphic(catalog_group("D2n", {{"n", n}}), dihedral_perm(n)));
  CHECK(isomorphic(catalog_group("Q4n", {{"n", 2}}), q8_perm()));
  CHECK_FALSE(isomorphic(catalog_group("D2n", {{"n", 4}}), q8_perm()));
  CHECK(isomorphic(catalog_group("Cn", {{"n", 10}}), cyclic_perm(10)));
}

TEST_CASE("centre, derived subgroup and conjugacy classes") {
  FiniteGroup D16 = catalog_group("D2n", {{"n", 8}});
  CHECK(center(D16).order() == 2);
  CHECK(derived_subgroup(D16).order() == 4);
  CHECK(conjugacy_classes(D16).size() == 7);

  // Centre against its definition.
  for (auto* fam : {"W", "T", "Dcal", "DcalPlus"}) {
    FiniteGroup G = catalog_group(fam, {});
    Subgroup Z = center(G);
    for (Element z = 0; z < G.order(); ++z) {
      bool central = true;
      for (Element g = 0; g < G.order() && central; ++g) central = G.mul(z, g) == G.mul(g, z);
      CHECK(Z.contains(z) == central);
    }
    CHECK(conjugacy_classes(G).size() == class_count_bruteforce(G));
  }
}

TEST_CASE("rational class count equals classes of cyclic subgroups") {
  // Independent count: elements x ~ y iff <x> and <y> are conjugate.
  for (auto [fam, p] : std::vector<std::pair<const char*, Params>>{
           {"D2n", {{"n", 8}}}, {"Q4n", {{"n", 4}}}, {"Cn", {{"n", 12}}}, {"Dcal", {}}, {"W", {}}}) {
    FiniteGroup G = catalog_group(fam, p);
    std::vector<int> cls(G.order(), -1);
    int c = 0;
    for (Element x = 0; x < G.order(); ++x) {
      if (cls[x] >= 0) continue;
      Subgroup X = generated(G, {x});
      for (Element g = 0; g < G.order(); ++g) {
        Subgroup Y = conjugate(X, g);
        for (Element y : Y.elements())
          if (generated(G, {y}) == Y) cls[y] = c;
      }
      ++c;
    }
    CHECK(rational_class_count(G) == std::size_t(c));
  }
}

TEST_CASE("subgroup lattice of small groups") {
  CHECK(all_subgroups(catalog_group("D2n", {{"n", 4}})).size() == 10);
  CHECK(all_subgroups(catalog_group("Q4n", {{"n", 2}})).size() == 6);
  CHECK(all_subgroups(catalog_group("Cn^k", {{"n", 2}, {"k", 3}})).size() == 16);
  CHECK(normal_subgroups(catalog_group("D2n", {{"n", 4}})).size() == 6);
  CHECK(subgroup_classes(catalog_group("D2n", {{"n", 4}})).size() == 8);
}

TEST_CASE("quotients and epimorphisms") {
  FiniteGroup D16 = catalog_group("D2n", {{"n", 8}});
  Quotient q = quotient(D16, center(D16));
  CHECK(q.group.order() == 8);
  CHECK(isomorphic(q.group, dihedral_perm(4)));
  CHECK(epimorphism_exists(D16, dihedral_perm(4)));
  CHECK_FALSE(epimorphism_exists(D16, q8_perm()));
  CHECK_FALSE(epimorphism_exists(catalog_group("Cn", {{"n", 8}}), catalog_group("Cn^k", {{"n", 2}, {"k", 2}})));
  // Q16 is the quotient of T by <t y^2> (used for the Q16 cross-check).
  CHECK(epimorphism_exists(catalog_group("T", {}), catalog_group("Q4n", {{"n", 4}})));
}

TEST_CASE("metabelian and index-2 abelian subgroup tests") {
  CHECK(is_metabelian(catalog_group("D2n", {{"n", 12}})));
  CHECK(is_metabelian(catalog_group("U1", {})));
  // S4 is not metabelian.
  FiniteGroup S4 = FiniteGroup::from_permutations({{1, 2, 3, 0}, {1, 0, 2, 3}}, "S4");
  CHECK_FALSE(is_metabelian(S4));

  auto brute = [](const FiniteGroup& G) {
    for (auto& H : all_subgroups(G))
      if (2 * H.order() >= G.order() && is_abelian(H)) return true;
    return false;
  };
  for (auto [fam, p] : std::vector<std::pair<const char*, Params>>{{"D2n", {{"n", 6}}},
                                                                   {"Q4n", {{"n", 3}}},
                                                                   {"Cn^k", {{"n", 2}, {"k", 3}}},
                                                                   {"W", {}},
                                                                   {"Dcal", {}},
                                                                   {"DcalPlus", {}},
                                                                   {"W1n", {{"n", 1}}}}) {
    FiniteGroup G = catalog_group(fam, p);
    CHECK(has_abelian_subgroup_of_index_at_most_2(G) == brute(G));
  }
  FiniteGroup Q8xQ8 = direct_product(q8_perm(), q8_perm());
  CHECK_FALSE(has_abelian_subgroup_of_index_at_most_2(Q8xQ8));
}

TEST_CASE("random homomorphism property: extend_homomorphism respects products") {
  FiniteGroup D24 = catalog_group("D2n", {{"n", 12}});
  FiniteGroup D8 = catalog_group("D2n", {{"n", 4}});
  // a -> a, b -> b is a homomorphism D24 -> D8 (reduce a mod 4).
  auto images = D8.named_generators();
  auto phi = extend_homomorphism(D24, D24.named_generators(), D8, images);
  REQUIRE(phi.size() == D24.order());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(0, int(D24.order()) - 1);
  for (int i = 0; i < 200; ++i) {
    Element x = Element(d(rng)), y = Element(d(rng));
    CHECK(phi[D24.mul(x, y)] == D8.mul(phi[x], phi[y]));
  }
  // a -> a, b -> a is not.
  CHECK(extend_homomorphism(D24, D24.named_generators(), D8, {images[0], images[0]}).empty());
}

TEST_CASE("table validation rejects non-groups") {
  std::vector<std::vector<Element>> bad = {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table(bad, "bad"), Error);
  std::vector<std::vector<Element>> c3 = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  CHECK(FiniteGroup::from_table(c3, "C3").order() == 3);
}
