#include <doctest.h>

#include <random>

#include "kleinia/catalog.hpp"
#include "kleinia/qalg.hpp"

using namespace kleinia;

namespace {

AlgebraElement random_element(const FiniteGroup& G, std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> g(0, int(G.order()) - 1), c(-5, 5);
  AlgebraElement a(G);
  for (int i = 0; i < terms; ++i) {
    mpq_class q(c(rng), 1 + (i % 3));
    q.canonicalize();
    a.add_term(Element(g(rng)), q);
  }
  return a;
}

}  // namespace

TEST_CASE("group algebra ring axioms on random elements") {
  FiniteGroup G = catalog_group("D2n", {{"n", 6}});
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(G, rng, 4), b = random_element(G, rng, 3), c = random_element(G, rng, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(AlgebraElement::one(G) * a == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("hat and epsilon are idempotents") {
  FiniteGroup G = catalog_group("Q4n", {{"n", 4}});
  for (auto& H : all_subgroups(G)) CHECK(is_idempotent(hat(H)));
  Subgroup K = generated(G, {G.named_generators()[0]});  // <a> of order 8
  CHECK(is_idempotent(epsilon(K, trivial(G))));
  CHECK(is_idempotent(epsilon(K, generated(G, {G.pow(G.named_generators()[0], 4)}))));
}

TEST_CASE("e(D8, <a>, 1) = (1 - a^2)/2") {
  FiniteGroup G = catalog_group("D2n", {{"n", 4}});
  Element a = G.named_generators()[0];
  AlgebraElement e = idempotent_e(G, generated(G, {a}), trivial(G));
  AlgebraElement expect = AlgebraElement::basis(G, 0, mpq_class(1, 2)) + AlgebraElement::basis(G, G.pow(a, 2), mpq_class(-1, 2));
  CHECK(e == expect);
  CHECK(is_central(e));
}

TEST_CASE("idempotent_e rejects a non-Shoda pair") {
  FiniteGroup G = catalog_group("D2n", {{"n", 4}});
  // K = G is not abelian.
  CHECK_THROWS_AS(idempotent_e(G, whole(G), trivial(G)), Error);
}

TEST_CASE("conjugation in QG") {
  FiniteGroup G = catalog_group("D2n", {{"n", 5}});
  Element a = G.named_generators()[0], b = G.named_generators()[1];
  AlgebraElement x = AlgebraElement::basis(G, a);
  CHECK(x.conjugate(b) == AlgebraElement::basis(G, G.inv(a)));
  CHECK(hat(generated(G, {a})).conjugate(b) == hat(generated(G, {a})));
}
