#include "kleinia/report.hpp"

#include <algorithm>
#include <sstream>

namespace kleinia {

namespace {

using nlohmann::json;

const char* tag_code(FieldTag t) {
  switch (t) {
    case FieldTag::Q: return "Q";
    case FieldTag::Qi: return "Qi";
    case FieldTag::QsqrtM2: return "Qsqrt-2";
    case FieldTag::QsqrtM3: return "Qsqrt-3";
    case FieldTag::Qsqrt2: return "Qsqrt2";
    case FieldTag::Qsqrt3: return "Qsqrt3";
    case FieldTag::Other: return "OTHER";
  }
  return "?";
}

std::string unit_factor(const SimpleComponent& c) {
  switch (c.unit_class) {
    case UnitClass::Finite: return "finite (" + c.algebra + ")";
    case UnitClass::VirtuallyFreeNonabelian: return "SL2(Z)";
    case UnitClass::FreeByFree:
      switch (c.unit_d) {
        case 1: return "SL2(Z[i])";
        case 2: return "SL2(Z[sqrt(-2)])";
        case 3: return "SL2(Z[(1+sqrt(-3))/2])";
        default: return "SL2(O(-" + std::to_string(c.unit_d) + "))";
      }
    case UnitClass::Other: break;
  }
  return "R1(" + c.algebra + ")" + (c.vcd ? ", vcd " + std::to_string(*c.vcd) : "");
}

json witness_json(const FWitness& w) {
  json images = json::array();
  for (std::size_t i = 0; i < w.names.size(); ++i)
    images.push_back(json::array({w.names[i], w.images[i]}));
  return {{"branch", w.branch}, {"family", w.family}, {"exponent", w.exponent},
          {"n", w.n},           {"m", w.m},           {"images", images},
          {"ze_order", w.ze_order}};
}

FWitness witness_from_json(const json& j) {
  FWitness w;
  w.branch = j.at("branch").get<std::string>();
  w.family = j.at("family").get<std::string>();
  w.exponent = j.at("exponent").get<int>();
  w.n = j.at("n").get<long long>();
  w.m = j.at("m").get<long long>();
  for (auto& p : j.at("images")) {
    w.names.push_back(p.at(0).get<std::string>());
    w.images.push_back(p.at(1).get<Element>());
  }
  w.ze_order = j.at("ze_order").get<std::size_t>();
  return w;
}

bool same_witness(const FWitness& a, const FWitness& b) {
  return a.branch == b.branch && a.family == b.family && a.exponent == b.exponent && a.n == b.n &&
         a.m == b.m && a.names == b.names && a.images == b.images && a.ze_order == b.ze_order;
}

}  // namespace

bool ConditionF::operator==(const ConditionF& o) const {
  if (verdict != o.verdict || nodes != o.nodes || note != o.note) return false;
  if (witness.has_value() != o.witness.has_value()) return false;
  return !witness || same_witness(*witness, *o.witness);
}

ComponentReport component_report(const SimpleComponent& c) {
  const FieldDescriptor& F = c.resolved.center;
  ComponentReport r;
  r.dim = c.dim;
  r.degree = c.degree;
  r.center = {tag_code(F.tag), F.min_conductor, F.degree, F.name()};
  r.kleinian_class = kleinian_type_name(c.type);
  r.split = c.split;
  r.totally_definite = c.totally_definite;
  r.vcd = c.vcd;
  r.unit_class = unit_class_name(c.unit_class, c.unit_d);
  r.kernel_order = c.descriptor.faithful_kernel.order();
  r.algebra = c.algebra;
  return r;
}

UnitGroupSummary unit_group_summary(const std::vector<SimpleComponent>& comps) {
  UnitGroupSummary u;
  for (auto& c : comps) {
    const FieldDescriptor& F = c.resolved.center;
    u.center_unit_rank += F.r + F.s - 1;
    if (c.commutative) continue;
    u.factors.push_back(unit_factor(c));
    const bool ok = c.unit_class == UnitClass::Finite ||
                    c.unit_class == UnitClass::VirtuallyFreeNonabelian ||
                    (c.unit_class == UnitClass::FreeByFree && c.unit_d <= 3);
    if (!ok) u.verdict = false;
  }
  std::sort(u.factors.begin(), u.factors.end());
  return u;
}

KleinianReport unit_group_report(const FiniteGroup& G, const ReportOptions& opt) {
  KleinianReport r;
  r.group = G.label();
  r.order = G.order();
  auto comps = decompose(G, opt.strategy);
  r.decomposition = decomposition_text(comps);
  for (auto& c : comps) r.components.push_back(component_report(c));
  EVerdict e = decide_E(comps);
  r.condition_E = {e.verdict, e.reasons};
  if (opt.run_F) {
    FVerdict f = decide_F(G, opt.f);
    r.condition_F.verdict = f_outcome_name(f.outcome);
    r.condition_F.witness = f.witness;
    r.condition_F.nodes = f.nodes;
    r.condition_F.note = f.note;
    if (f.outcome != FOutcome::BudgetExceeded && (f.outcome == FOutcome::True) != e.verdict)
      r.warnings.push_back("conditions (E) and (F) disagree");
  }
  r.unit_group = unit_group_summary(comps);
  if (r.unit_group.verdict != e.verdict) r.warnings.push_back("unit-group verdict differs from condition (E)");
  return r;
}

json to_json(const KleinianReport& r) {
  json comps = json::array();
  for (auto& c : r.components) {
    comps.push_back({
        {"dim", c.dim},
        {"degree", c.degree},
        {"center",
         {{"tag", c.center.tag}, {"conductor", c.center.conductor}, {"degree", c.center.degree},
          {"name", c.center.name}}},
        {"class", c.kleinian_class},
        {"split", c.split},
        {"totally_definite", c.totally_definite},
        {"vcd", c.vcd ? json(*c.vcd) : json(nullptr)},
        {"unit_class", c.unit_class},
        {"kernel_order", c.kernel_order},
        {"algebra", c.algebra},
    });
  }
  json f = {{"verdict", r.condition_F.verdict},
            {"witness", r.condition_F.witness ? witness_json(*r.condition_F.witness) : json(nullptr)},
            {"nodes", r.condition_F.nodes},
            {"note", r.condition_F.note}};
  return {
      {"group", r.group},
      {"order", r.order},
      {"decomposition", r.decomposition},
      {"components", comps},
      {"condition_E", {{"verdict", r.condition_E.verdict}, {"reasons", r.condition_E.reasons}}},
      {"condition_F", f},
      {"unit_group",
       {{"verdict", r.unit_group.verdict},
        {"factors", r.unit_group.factors},
        {"center_unit_rank", r.unit_group.center_unit_rank}}},
      {"warnings", r.warnings},
  };
}

KleinianReport report_from_json(const json& j) {
  KleinianReport r;
  r.group = j.at("group").get<std::string>();
  r.order = j.at("order").get<std::size_t>();
  r.decomposition = j.at("decomposition").get<std::string>();
  for (auto& c : j.at("components")) {
    ComponentReport x;
    x.dim = c.at("dim").get<std::size_t>();
    x.degree = c.at("degree").get<std::size_t>();
    auto& z = c.at("center");
    x.center = {z.at("tag").get<std::string>(), z.at("conductor").get<int>(), z.at("degree").get<int>(),
                z.at("name").get<std::string>()};
    x.kleinian_class = c.at("class").get<std::string>();
    x.split = c.at("split").get<std::string>();
    x.totally_definite = c.at("totally_definite").get<bool>();
    if (!c.at("vcd").is_null()) x.vcd = c.at("vcd").get<long>();
    x.unit_class = c.at("unit_class").get<std::string>();
    x.kernel_order = c.at("kernel_order").get<std::size_t>();
    x.algebra = c.at("algebra").get<std::string>();
    r.components.push_back(std::move(x));
  }
  r.condition_E.verdict = j.at("condition_E").at("verdict").get<bool>();
  r.condition_E.reasons = j.at("condition_E").at("reasons").get<std::vector<std::string>>();
  auto& f = j.at("condition_F");
  r.condition_F.verdict = f.at("verdict").get<std::string>();
  if (!f.at("witness").is_null()) r.condition_F.witness = witness_from_json(f.at("witness"));
  r.condition_F.nodes = f.at("nodes").get<std::size_t>();
  r.condition_F.note = f.at("note").get<std::string>();
  auto& u = j.at("unit_group");
  r.unit_group.verdict = u.at("verdict").get<bool>();
  r.unit_group.factors = u.at("factors").get<std::vector<std::string>>();
  r.unit_group.center_unit_rank = u.at("center_unit_rank").get<long>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string render_text(const KleinianReport& r) {
  std::ostringstream o;
  o << "group " << r.group << ", order " << r.order << "\n";
  o << "QG = " << r.decomposition << "\n";
  o << "components:\n";
  for (auto& c : r.components) {
    o << "  " << c.algebra << "  dim " << c.dim << ", degree " << c.degree << ", centre " << c.center.name;
    if (c.split != "n/a") o << ", " << c.split;
    if (c.totally_definite) o << ", totally definite";
    o << ", vcd " << (c.vcd ? std::to_string(*c.vcd) : "?") << ", " << c.kleinian_class << ", units "
      << c.unit_class << ", kernel " << c.kernel_order << "\n";
  }
  o << "condition (E): " << (r.condition_E.verdict ? "true" : "false") << "\n";
  for (auto& why : r.condition_E.reasons)
    if (!why.ends_with(": field")) o << "  " << why << "\n";
  o << "condition (F): " << r.condition_F.verdict;
  if (!r.condition_F.note.empty()) o << " (" << r.condition_F.note << ")";
  o << "\n";
  if (auto& w = r.condition_F.witness) {
    o << "  " << w->family;
    if (w->family.find('n') != std::string::npos) o << " n=" << w->n;
    if (w->m) o << " m=" << w->m;
    o << ":";
    for (std::size_t i = 0; i < w->names.size(); ++i)
      if (w->images[i]) o << " " << w->names[i] << "->" << w->images[i];
    o << ", |Z_e| = " << w->ze_order << "\n";
  }
  o << "unit group: " << (r.unit_group.verdict ? "virtually a direct product of free-by-free groups"
                                                : "not commensurable with a product of free-by-free groups")
    << "\n";
  o << "  centre unit rank " << r.unit_group.center_unit_rank;
  for (auto& f : r.unit_group.factors) o << "; " << f;
  o << "\n";
  for (auto& w : r.warnings) o << "warning: " << w << "\n";
  return o.str();
}

}  // namespace kleinia
