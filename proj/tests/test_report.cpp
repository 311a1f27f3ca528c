#include <doctest.h>

#include <algorithm>

#include "kleinia/catalog.hpp"
#include "kleinia/report.hpp"

using namespace kleinia;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("report JSON round trips") {
  for (auto [f, p] : std::vector<std::pair<const char*, Params>>{{"D16minus", {}},
                                                                  {"D2n", {{"n", 8}}},
                                                                  {"Cn", {{"n", 6}}},
                                                                  {"T", {}},
                                                                  {"Q4n", {{"n", 4}}}}) {
    CAPTURE(f);
    KleinianReport r = unit_group_report(catalog_group(f, p));
    nlohmann::json j = to_json(r);
    CHECK(report_from_json(j) == r);
    CHECK(to_json(report_from_json(nlohmann::json::parse(j.dump()))) == j);
  }
}

TEST_CASE("report schema fields") {
  auto j = to_json(unit_group_report(catalog_group("Dcal", {})));
  for (auto* k : {"group", "order", "components", "condition_E", "condition_F", "unit_group"}) CHECK(j.contains(k));
  for (auto& c : j["components"])
    for (auto* k : {"dim", "degree", "center", "class", "split", "totally_definite", "vcd", "unit_class",
                    "kernel_order"})
      CHECK(c.contains(k));
  CHECK(j["condition_F"].contains("witness"));
}

TEST_CASE("unit group summaries") {
  // C3 : C8
  FiniteGroup G = build_group(GroupSpec::gkm(0, 1, GroupSpec::make("Cn", {{"n", 8}}), {"a^2"}));
  auto r = unit_group_report(G);
  CHECK(r.unit_group.verdict);
  CHECK(has(r.unit_group.factors, "SL2(Z)"));
  CHECK(has(r.unit_group.factors, "SL2(Z[i])"));
  CHECK(has(r.unit_group.factors, "finite ((-1,-3 / Q))"));
  CHECK(r.warnings.empty());

  // Q8 x C2 x C2: Hamiltonian, so every factor is finite.
  auto h = unit_group_report(build_group(GroupSpec::product(
      {GroupSpec::make("Q4n", {{"n", 2}}), GroupSpec::make("Cn^k", {{"n", 2}, {"k", 2}})})));
  CHECK(h.unit_group.verdict);
  CHECK(h.unit_group.center_unit_rank == 0);
  for (auto& f : h.unit_group.factors) CHECK(f.rfind("finite", 0) == 0);

  auto d = unit_group_report(catalog_group("D2n", {{"n", 8}}));
  CHECK_FALSE(d.unit_group.verdict);
  CHECK(has(d.unit_group.factors, "R1(M2(Q(sqrt(2)))), vcd 3"));
  CHECK(d.condition_F.verdict == "false");
}

TEST_CASE("centre unit rank counts r + s - 1 per component") {
  // QC5 = Q + Q(xi_5): Q(xi_5) has s = 2, rank 1.
  CHECK(unit_group_report(catalog_group("Cn", {{"n", 5}})).unit_group.center_unit_rank == 1);
  // QD16 has Q(sqrt 2) as a centre (rank 1) once.
  CHECK(unit_group_report(catalog_group("D2n", {{"n", 8}})).unit_group.center_unit_rank == 1);
}

TEST_CASE("text rendering") {
  auto r = unit_group_report(catalog_group("D16minus", {}));
  std::string t = render_text(r);
  CHECK(t.find("QG = 4Q + M2(Q) + M2(Q(sqrt(-2)))") != std::string::npos);
  CHECK(t.find("condition (E): true") != std::string::npos);
  CHECK(t.find("condition (F): true") != std::string::npos);
}

TEST_CASE("skipping condition (F)") {
  ReportOptions o;
  o.run_F = false;
  auto r = unit_group_report(catalog_group("W", {}), o);
  CHECK(r.condition_F.verdict == "skipped");
  CHECK(report_from_json(to_json(r)) == r);
}
