#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "kleinia/catalog.hpp"
#include "kleinia/corpus.hpp"
#include "kleinia/kleinian.hpp"

using namespace kleinia;

namespace {

std::vector<std::string> noncommutative(const std::vector<SimpleComponent>& comps) {
  std::vector<std::string> out;
  for (auto& c : comps)
    if (!c.commutative) out.push_back(c.algebra);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const SimpleComponent* find(const std::vector<SimpleComponent>& comps, const std::string& name) {
  for (auto& c : comps)
    if (c.algebra == name) return &c;
  return nullptr;
}

std::vector<FiniteGroup> small_corpus(std::size_t cap) {
  std::vector<FiniteGroup> out;
  for (auto& e : corpus("full")) {
    try {
      out.push_back(build_group(e.spec, cap));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("vcd formula") {
  CHECK(vcd(2, 1, 0, 1, 0) == 1);
  CHECK(vcd(2, 1, 0, 0, 1) == 2);
  CHECK(vcd(1, 2, 1, 0, 0) == 0);
  CHECK(vcd(1, 2, 0, 0, 1) == 3);
  CHECK(vcd(1, 1, 0, 1, 0) == 0);
  CHECK(vcd(1, 2, 1, 1, 0) == 2);  // one split real place over a real quadratic field
  CHECK(vcd(3, 1, 0, 1, 0) == 3);  // SL3(Z)
  CHECK(vcd(2, 1, 0, 2, 0) == 3);  // Hilbert modular group
}

TEST_CASE("component classification") {
  auto D16 = decompose(catalog_group("D2n", {{"n", 8}}));
  auto* m = find(D16, "M2(Q(sqrt(2)))");
  REQUIRE(m);
  CHECK(m->type == KleinianType::NotKleinian);
  CHECK_FALSE(allowed_by_E(*m));

  auto Q16 = decompose(catalog_group("Q4n", {{"n", 4}}));
  auto* h = find(Q16, "H(Q(sqrt(2)))");
  REQUIRE(h);
  CHECK(h->type == KleinianType::TotallyDefinite);
  CHECK(h->unit_class == UnitClass::Finite);
  CHECK(h->vcd == 0);

  auto Dcal = decompose(catalog_group("Dcal", {}));
  auto* mi = find(Dcal, "M2(Q(i))");
  REQUIRE(mi);
  CHECK(mi->type == KleinianType::M2Imaginary);
  CHECK(mi->unit_class == UnitClass::FreeByFree);
  CHECK(mi->unit_d == 1);
  CHECK(mi->vcd == 2);

  auto S3 = decompose(catalog_group("D2n", {{"n", 3}}));
  auto* mq = find(S3, "M2(Q)");
  REQUIRE(mq);
  CHECK(mq->type == KleinianType::M2Q);
  CHECK(mq->unit_class == UnitClass::VirtuallyFreeNonabelian);
}

TEST_CASE("degree above 2 short-circuits condition (E)") {
  // C7 : C3 has a component of degree 3.
  FiniteGroup F21 = FiniteGroup::from_permutations({{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}}, "C7:C3");
  REQUIRE(F21.order() == 21);
  auto comps = decompose(F21);
  bool deg3 = std::any_of(comps.begin(), comps.end(), [](auto& c) { return c.degree == 3; });
  CHECK(deg3);
  CHECK_FALSE(decide_E(comps).verdict);
}

TEST_CASE("condition (E) on named groups") {
  CHECK(decide_E(catalog_group("Q4n", {{"n", 2}})).verdict);
  CHECK_FALSE(decide_E(catalog_group("D2n", {{"n", 8}})).verdict);
  CHECK(decide_E(catalog_group("T1n", {{"n", 1}})).verdict);
  CHECK(decide_E(catalog_group("Cn", {{"n", 30}})).verdict);
  CHECK(decide_E(catalog_group("D2n", {{"n", 6}})).verdict);
  CHECK_FALSE(decide_E(catalog_group("D2n", {{"n", 5}})).verdict);  // M2(Q(sqrt 5))
}

TEST_CASE("type names round trip") {
  for (auto t : {KleinianType::Field, KleinianType::TotallyDefinite, KleinianType::M2Q, KleinianType::M2Imaginary,
                 KleinianType::RealOnePlace, KleinianType::ImaginaryDivision, KleinianType::NotKleinian})
    CHECK(kleinian_type_from_name(kleinian_type_name(t)) == t);
}

TEST_CASE("properties over the corpus") {
  for (auto& G : small_corpus(96)) {
    CAPTURE(G.label());
    auto comps = decompose(G);
    bool E = decide_E(comps).verdict;
    for (auto& c : comps) {
      // vcd <= 2 exactly for types (1)-(5)
      if (c.vcd) {
        bool low = *c.vcd <= 2;
        bool first_five = c.type != KleinianType::NotKleinian && c.type != KleinianType::ImaginaryDivision;
        CHECK(low == first_five);
      }
      if (c.commutative) CHECK(c.type == KleinianType::Field);
    }
    if (E && !G.is_abelian()) {
      std::size_t ez = 1;
      for (Element z : center(G).elements()) ez = std::lcm<std::size_t>(ez, G.element_order(z));
      CHECK((4 % ez == 0 || 6 % ez == 0));
    }
    if (E) {
      // Every dihedral quotient D_2n of G has n | 4 or n | 6.
      for (auto& N : normal_subgroups(G)) {
        if (G.order() / N.order() < 10) continue;
        FiniteGroup Q = quotient(G, N).group;
        if (Q.order() % 2 || Q.is_abelian()) continue;
        if (isomorphic(Q, catalog_group("D2n", {{"n", long(Q.order() / 2)}}))) {
          long n = Q.order() / 2;
          CHECK((4 % n == 0 || 6 % n == 0));
        }
      }
    }
  }
}

TEST_CASE("a C2 factor leaves the noncommutative classes unchanged") {
  FiniteGroup C2 = catalog_group("Cn", {{"n", 2}});
  for (auto& G : small_corpus(48)) {
    CAPTURE(G.label());
    CHECK(noncommutative(decompose(direct_product(C2, G))) == noncommutative(decompose(G)));
  }
}
