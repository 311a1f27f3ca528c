#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleinia/kleinian.hpp"
#include "kleinia/search.hpp"

namespace kleinia {

struct CenterInfo {
  std::string tag;  // Q, Qi, Qsqrt-2, Qsqrt-3, Qsqrt2, Qsqrt3, OTHER
  int conductor = 1;
  int degree = 1;
  std::string name;
  bool operator==(const CenterInfo&) const = default;
};

struct ComponentReport {
  std::size_t dim = 1, degree = 1;
  CenterInfo center;
  std::string kleinian_class;
  std::string split;
  bool totally_definite = false;
  std::optional<long> vcd;
  std::string unit_class;
  std::size_t kernel_order = 1;
  std::string algebra;
  bool operator==(const ComponentReport&) const = default;
};

struct ConditionE {
  bool verdict = true;
  std::vector<std::string> reasons;
  bool operator==(const ConditionE&) const = default;
};

struct ConditionF {
  std::string verdict = "skipped";  // true, false, budget_exceeded, skipped
  std::optional<FWitness> witness;
  std::size_t nodes = 0;
  std::string note;
  bool operator==(const ConditionF&) const;
};

struct UnitGroupSummary {
  bool verdict = true;               // virtually a product of free-by-free groups
  std::vector<std::string> factors;  // sorted multiset, one entry per noncommutative component
  long center_unit_rank = 0;         // sum of r + s - 1 over the component centres
  bool operator==(const UnitGroupSummary&) const = default;
};

// Timing is deliberately absent so that reports are byte-reproducible.
struct KleinianReport {
  std::string group;
  std::size_t order = 0;
  std::string decomposition;
  std::vector<ComponentReport> components;
  ConditionE condition_E;
  ConditionF condition_F;
  UnitGroupSummary unit_group;
  std::vector<std::string> warnings;
  bool operator==(const KleinianReport&) const = default;
};

struct ReportOptions {
  bool run_F = true;
  FOptions f;
  PciStrategy strategy = PciStrategy::Auto;
};

ComponentReport component_report(const SimpleComponent& c);
UnitGroupSummary unit_group_summary(const std::vector<SimpleComponent>& comps);
KleinianReport unit_group_report(const FiniteGroup& G, const ReportOptions& opt = {});

nlohmann::json to_json(const KleinianReport& r);
KleinianReport report_from_json(const nlohmann::json& j);
std::string render_text(const KleinianReport& r);

}  // namespace kleinia
