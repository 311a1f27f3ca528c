#include <doctest.h>

#include <numeric>

#include "kleinia/catalog.hpp"
#include "kleinia/search.hpp"

using namespace kleinia;

namespace {

std::size_t derived_exponent(const FiniteGroup& G) {
  std::size_t e = 1;
  for (Element g : derived_subgroup(G).elements()) e = std::lcm<std::size_t>(e, G.element_order(g));
  return e;
}

}  // namespace

TEST_CASE("every family builds and checks its stated relations") {
  struct Case {
    const char* family;
    Params p;
    std::size_t order;
  };
  std::vector<Case> cases = {
      {"Cn", {{"n", 1}}, 1},          {"Cn", {{"n", 7}}, 7},        {"Cn^k", {{"n", 3}, {"k", 3}}, 27},
      {"D2n", {{"n", 5}}, 10},        {"Q4n", {{"n", 3}}, 12},      {"D16plus", {}, 16},
      {"D16minus", {{"n", 3}}, 32},   {"Dcal", {}, 16},             {"DcalPlus", {}, 32},
      {"W", {}, 32},                  {"W1n", {{"n", 2}}, 64},      {"W2n", {{"n", 2}}, 64},
      {"V", {}, 128},                 {"V1n", {{"n", 1}}, 64},      {"V2n", {{"n", 1}}, 64},
      {"U1", {}, 512},                {"U2", {}, 512},              {"T", {}, 64},
      {"T1n", {{"n", 1}}, 128},       {"T2n", {{"n", 1}}, 32},      {"T3n", {{"n", 1}}, 32},
      {"T3n", {{"n", 2}}, 128},
  };
  for (auto& c : cases) {
    CAPTURE(c.family);
    CatalogGroup g = build_catalog(c.family, c.p);
    CHECK(g.group.order() == c.order);
    CHECK(g.presentation.failing(g.group, g.group.named_generators()).empty());
    CHECK(g.defining.failing(g.group, g.group.named_generators()).empty());
    CHECK(is_metabelian(g.group));
  }
}

TEST_CASE("declared centres are central") {
  for (const char* f : {"W", "V", "T", "U1", "U2", "Dcal", "DcalPlus"}) {
    CAPTURE(f);
    CatalogGroup g = build_catalog(f, {});
    Subgroup Z = center(g.group);
    for (const Word& w : g.declared_center) CHECK(Z.contains(w.eval(g.group, g.group.named_generators())));
  }
}

TEST_CASE("m-extensions: C3^m inverted by u") {
  for (long long m : {1, 2}) {
    CatalogGroup g = build_m_extension("C8", 0, m);
    long long p3 = 1;
    for (int i = 0; i < m; ++i) p3 *= 3;
    CHECK(g.group.order() == std::size_t(8 * p3));
    CHECK(center(g.group).order() == 4);
  }
  CHECK(build_m_extension("W21", 1, 1).group.order() == 16 * 3);
  CHECK(build_m_extension("W1n", 1, 1).group.order() == 16 * 3);
}

TEST_CASE("Gkm construction") {
  GroupSpec s = GroupSpec::gkm(1, 1, GroupSpec::make("Cn", {{"n", 8}}), {"a^2"});
  FiniteGroup G = build_group(s);
  CHECK(G.order() == 3 * 3 * 8);
  CHECK(center(G).order() == 3 * 4);
  // N2 of index other than 2 is rejected.
  CHECK_THROWS_AS(build_group(GroupSpec::gkm(0, 1, GroupSpec::make("Cn", {{"n", 8}}), {"a^4"})), Error);
}

TEST_CASE("order cap and parameter errors") {
  CHECK_THROWS_AS(catalog_group("T1n", {{"n", 9}}), Error);
  try {
    catalog_group("V1n", {{"n", 4}});
    FAIL("expected a cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClosureCapExceeded);
  }
  CHECK_THROWS_AS(catalog_group("D2n", {{"n", 0}}), Error);
  CHECK_THROWS_AS(catalog_group("nope", {}), Error);
  CHECK(catalog_group("D2n", {{"n", 8}}, 16).order() == 16);
  CHECK_THROWS_AS(catalog_group("D2n", {{"n", 8}}, 15), Error);
}

TEST_CASE("group spec JSON round trip") {
  std::vector<GroupSpec> specs = {
      GroupSpec::make("W1n", {{"n", 2}}),
      GroupSpec::product({GroupSpec::make("Cn", {{"n", 3}}), GroupSpec::make("Q4n", {{"n", 4}})}),
      GroupSpec::gkm(0, 1, GroupSpec::make("W2n", {{"n", 1}}), {"y1^2", "x"}),
  };
  for (auto& s : specs) {
    GroupSpec back = parse_group_spec(to_json(s));
    CHECK(back.display() == s.display());
    CHECK(to_json(back) == to_json(s));
    CHECK(build_group(back).order() == build_group(s).order());
  }
  nlohmann::json perm = {{"permutations", {{1, 2, 0}, {1, 0, 2}}}};
  CHECK(build_group(parse_group_spec(perm)).order() == 6);
}

// The search filters rely on these per-template constants; they must hold
// for every n and m, checked here at n, m in {1, 2}.
TEST_CASE("template exponents agree with the built groups") {
  auto check = [](const FTemplate& t, const FiniteGroup& H) {
    CAPTURE(t.family);
    CAPTURE(t.n);
    CAPTURE(t.m);
    CHECK(H.exponent() == std::size_t(t.group_exponent));
    CHECK(derived_exponent(H) == std::size_t(t.derived_exponent));
    CHECK(has_abelian_subgroup_of_index_at_most_2(H) == t.abelian_index_2);
  };
  for (const char* f : {"W", "V", "U1", "U2", "T"}) check(make_f_template(f, 0, 0), catalog_group(f, {}));
  for (const char* f : {"W1n", "W2n", "V1n", "V2n", "T1n", "T2n", "T3n"})
    for (long long n : {1, 2}) check(make_f_template(f, n, 0), catalog_group(f, {{"n", n}}));
  for (long long m : {1, 2}) {
    check(make_f_template("C8:M", 0, m), build_m_extension("C8", 0, m).group);
    check(make_f_template("W21:M", 1, m), build_m_extension("W21", 1, m).group);
    for (long long n : {1, 2})
      check(make_f_template("W1n:M", n, m), build_m_extension("W1n", n, m).group);
  }
}

TEST_CASE("each template group is accepted by its own search") {
  for (auto [f, n, m] : std::vector<std::tuple<const char*, long long, long long>>{
           {"W", 0, 0}, {"W1n", 1, 0}, {"V2n", 1, 0}, {"T3n", 2, 0}, {"C8:M", 0, 1}, {"W21:M", 1, 1}}) {
    FTemplate t = make_f_template(f, n, m);
    FiniteGroup H = t.family.find(':') != std::string::npos
                        ? build_m_extension(t.family.substr(0, t.family.find(':')), n, m).group
                        : catalog_group(f, n ? Params{{"n", n}} : Params{});
    FVerdict v = decide_F(H);
    CAPTURE(f);
    REQUIRE(v.outcome == FOutcome::True);
    REQUIRE(v.witness);
    CHECK(verify_f_witness(H, *v.witness));
  }
}
