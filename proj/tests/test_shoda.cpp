#include <doctest.h>

#include <set>

#include "kleinia/catalog.hpp"
#include "kleinia/corpus.hpp"
#include "kleinia/cyclotomic.hpp"
#include "kleinia/shoda.hpp"

using namespace kleinia;

namespace {

void check_complete(const FiniteGroup& G, const std::vector<Pci>& pcis) {
  AlgebraElement sum(G);
  std::size_t dims = 0;
  for (std::size_t i = 0; i < pcis.size(); ++i) {
    CHECK(is_idempotent(pcis[i].e));
    CHECK(is_central(pcis[i].e));
    sum = sum + pcis[i].e;
    dims += pcis[i].dimension();
    for (std::size_t j = i + 1; j < pcis.size(); ++j) CHECK((pcis[i].e * pcis[j].e).is_zero());
  }
  CHECK(sum == AlgebraElement::one(G));
  CHECK(dims == G.order());
  CHECK(pcis.size() == rational_class_count(G));
}

std::set<AlgebraElement> idempotents(const std::vector<Pci>& p) {
  std::set<AlgebraElement> s;
  for (auto& x : p) s.insert(x.e);
  return s;
}

}  // namespace

TEST_CASE("strong Shoda pair recognition") {
  FiniteGroup G = catalog_group("D2n", {{"n", 4}});
  Subgroup A = generated(G, {G.named_generators()[0]});
  CHECK(is_strong_shoda_pair(G, A, trivial(G)));
  CHECK(is_strong_shoda_pair(G, whole(G), whole(G)));
  CHECK_FALSE(is_strong_shoda_pair(G, whole(G), trivial(G)));
  // K/H cyclic but K not maximal abelian mod H.
  CHECK_FALSE(is_strong_shoda_pair(G, generated(G, {G.pow(G.named_generators()[0], 2)}), trivial(G)));
}

TEST_CASE("complete idempotent sets for named groups") {
  for (auto [f, p] : std::vector<std::pair<const char*, Params>>{{"D2n", {{"n", 8}}},
                                                                  {"Q4n", {{"n", 4}}},
                                                                  {"D16minus", {}},
                                                                  {"Dcal", {}},
                                                                  {"W", {}},
                                                                  {"T", {}},
                                                                  {"U1", {}}}) {
    CAPTURE(f);
    FiniteGroup G = catalog_group(f, p);
    check_complete(G, enumerate_pcis(G));
  }
}

TEST_CASE("strategies give the same idempotents") {
  for (auto& e : corpus("full")) {
    FiniteGroup G;
    try {
      G = build_group(e.spec, 64);
    } catch (const Error&) {
      continue;
    }
    CAPTURE(e.name);
    auto a = idempotents(enumerate_pcis(G, PciStrategy::AbelianCover));
    CHECK(a == idempotents(enumerate_pcis(G, PciStrategy::NormalK)));
    if (G.order() <= 32) CHECK(a == idempotents(enumerate_pcis(G, PciStrategy::Exhaustive)));
  }
}

TEST_CASE("crossed product data of D16-") {
  FiniteGroup G = catalog_group("D16minus", {});
  for (auto& p : enumerate_pcis(G)) {
    auto d = crossed_product_data(G, p.pair);
    CHECK(d.quotient_elems.size() == G.order() / (p.pair.K.order() * p.pair.n));
    CHECK(d.k == p.pair.k);
    // M_n(Q(xi_k) * N/K)
    CHECK(p.dimension() == p.pair.n * p.pair.n * d.quotient_elems.size() * std::size_t(euler_phi(long(d.k))));
  }
}
