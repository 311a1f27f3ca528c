#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "kleinia/corpus.hpp"
#include "kleinia/report.hpp"

using namespace kleinia;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kPartial = 1, kIncomplete = 2, kCaps = 3 };

struct Config {
  std::string family, input, format = "text", corpus_name = "full";
  long long n = -1, k = -1, m = -1;
  std::size_t max_order = 0;
  std::size_t budget = FOptions{}.budget;
  unsigned jobs = 1;
  unsigned long seed = 1;
};

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::IncompleteDecomposition: return kIncomplete;
    case ErrorKind::ClosureCapExceeded:
    case ErrorKind::SubgroupCapExceeded:
    case ErrorKind::SearchBudgetExceeded: return kCaps;
    default: return kPartial;
  }
}

// --max-order, then KLEINIA_MAX_ORDER, then the command default.
std::size_t order_cap(const Config& c, std::size_t fallback) {
  if (c.max_order) return c.max_order;
  if (const char* env = std::getenv("KLEINIA_MAX_ORDER")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (!end || *end || v == 0) fail(ErrorKind::InvalidParams, "KLEINIA_MAX_ORDER must be a positive integer");
    return std::min<std::size_t>(v, kMaxGroupOrder);
  }
  return fallback;
}

GroupSpec spec_from(const Config& c) {
  if (!c.input.empty()) {
    if (!c.family.empty()) fail(ErrorKind::InvalidParams, "give either --family or --input");
    std::ifstream in(c.input);
    if (!in) fail(ErrorKind::InvalidParams, "cannot read " + c.input);
    return parse_group_spec(json::parse(in));
  }
  if (c.family.empty()) fail(ErrorKind::InvalidParams, "a group is needed: --family or --input");
  if (c.family == "Gkm") fail(ErrorKind::InvalidParams, "Gkm needs nested G2/N2 specs; use --input");
  if (!is_catalog_family(c.family)) fail(ErrorKind::InvalidParams, "unknown family " + c.family);
  Params p;
  if (c.n >= 0) p["n"] = c.n;
  if (c.k >= 0) p["k"] = c.k;
  if (c.m >= 0) p["m"] = c.m;
  return GroupSpec::make(c.family, p);
}

ReportOptions report_options(const Config& c, bool run_F) {
  ReportOptions o;
  o.run_F = run_F;
  o.f.budget = c.budget;
  return o;
}

void emit(const Config& c, const KleinianReport& r) {
  if (c.format == "json") std::cout << to_json(r).dump(2) << "\n";
  else std::cout << render_text(r);
}

int cmd_single(const Config& c, bool run_F) {
  FiniteGroup G = build_group(spec_from(c), order_cap(c, kMaxGroupOrder));
  emit(c, unit_group_report(G, report_options(c, run_F)));
  return kOk;
}

struct Row {
  std::string name;
  std::string status = "ok";  // ok, skipped, error
  std::string message;
  std::size_t order = 0;
  std::optional<KleinianReport> report;
  double ms = 0;
};

Row run_row(const CorpusEntry& e, const Config& c, std::size_t cap) {
  Row row;
  row.name = e.name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    FiniteGroup G = build_group(e.spec, cap);
    row.order = G.order();
    row.report = unit_group_report(G, report_options(c, true));
  } catch (const Error& x) {
    if (x.kind() == ErrorKind::ClosureCapExceeded) {
      row.status = "skipped";
    } else {
      row.status = "error";
    }
    row.message = x.what();
  }
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

bool agrees(const KleinianReport& r) {
  return r.condition_F.verdict == (r.condition_E.verdict ? "true" : "false");
}

int cmd_batch(const Config& c) {
  const std::size_t cap = order_cap(c, 96);
  const auto entries = corpus(c.corpus_name);
  std::vector<Row> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < entries.size();) rows[i] = run_row(entries[i], c, cap);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, c.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t ran = 0, skipped = 0, errors = 0, agree = 0, disagree = 0;
  std::vector<std::string> budget_rows, disagree_rows;
  for (auto& r : rows) {
    if (r.status == "skipped") { ++skipped; continue; }
    if (r.status == "error") { ++errors; continue; }
    ++ran;
    if (r.report->condition_F.verdict == "budget_exceeded") budget_rows.push_back(r.name);
    else if (agrees(*r.report)) ++agree;
    else { ++disagree; disagree_rows.push_back(r.name); }
  }

  if (c.format == "json") {
    json out = {{"corpus", c.corpus_name}, {"max_order", cap}, {"budget", c.budget}};
    json jr = json::array();
    for (auto& r : rows) {
      json row = {{"group", r.name}, {"status", r.status}};
      if (r.report) {
        row["order"] = r.order;
        row["E"] = r.report->condition_E.verdict;
        row["F"] = r.report->condition_F.verdict;
        row["report"] = to_json(*r.report);
      } else {
        row["message"] = r.message;
      }
      jr.push_back(row);
    }
    out["rows"] = jr;
    out["summary"] = {{"rows", rows.size()},   {"ran", ran},
                      {"skipped", skipped},    {"errors", errors},
                      {"agree", agree},        {"disagree", disagree_rows},
                      {"budget_exceeded", budget_rows}};
    std::cout << out.dump(2) << "\n";
  } else {
    double total = 0;
    std::printf("%-58s %6s  %-5s %-15s %-5s %10s\n", "group", "order", "E", "F", "agree", "ms");
    for (auto& r : rows) {
      total += r.ms;
      if (r.status != "ok") {
        std::printf("%-58s %6s  %s: %s\n", r.name.c_str(), "-", r.status.c_str(), r.message.c_str());
        continue;
      }
      const auto& k = *r.report;
      const char* a = k.condition_F.verdict == "budget_exceeded" ? "?" : agrees(k) ? "yes" : "NO";
      std::printf("%-58s %6zu  %-5s %-15s %-5s %10.1f\n", r.name.c_str(), r.order,
                  k.condition_E.verdict ? "true" : "false", k.condition_F.verdict.c_str(), a, r.ms);
    }
    std::printf("\n%zu rows: %zu ran, %zu skipped (order > %zu), %zu errors\n", rows.size(), ran, skipped,
                cap, errors);
    std::printf("E vs F: %zu agree, %zu disagree, %zu budget exceeded\n", agree, disagree, budget_rows.size());
    for (auto& n : disagree_rows) std::printf("  disagreement: %s\n", n.c_str());
    for (auto& n : budget_rows) std::printf("  budget exceeded: %s\n", n.c_str());
    std::printf("total %.1f ms\n", total);
  }
  return errors || disagree ? kPartial : kOk;
}

int cmd_catalog(const Config& c) {
  if (c.family.empty()) {
    if (c.format == "json") {
      json out = json::array();
      for (auto& f : catalog_families())
        out.push_back({{"family", f.name}, {"params", f.params}, {"description", f.description}});
      std::cout << out.dump(2) << "\n";
    } else {
      for (auto& f : catalog_families())
        std::printf("%-10s %-18s %s\n", f.name.c_str(), f.params.c_str(), f.description.c_str());
    }
    return kOk;
  }
  GroupSpec s = spec_from(c);
  CatalogGroup g = build_catalog(s.family, s.params, order_cap(c, kMaxGroupOrder));
  const FiniteGroup& G = g.group;
  std::vector<std::string> gens = G.generator_names();
  if (c.format == "json") {
    std::cout << json{{"group", G.label()},
                      {"order", G.order()},
                      {"generators", gens},
                      {"relations_checked", g.presentation.relations.size() + g.defining.relations.size()},
                      {"center_order", center(G).order()},
                      {"center_declared", !g.declared_center.empty()},
                      {"center_corrections", g.center_corrections.size()},
                      {"derived_order", derived_subgroup(G).order()},
                      {"exponent", G.exponent()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << G.label() << ": order " << G.order() << ", generators";
    for (auto& n : gens) std::cout << " " << n;
    std::cout << "\n  relations checked: " << g.presentation.relations.size() << " stated, "
              << g.defining.relations.size() << " defining\n";
    std::cout << "  |Z(G)| = " << center(G).order();
    if (!g.declared_center.empty())
      std::cout << " (declared centre verified" << (g.center_corrections.empty() ? "" : ", with corrections")
                << ")";
    std::cout << ", |G'| = " << derived_subgroup(G).order() << ", exponent " << G.exponent() << "\n";
  }
  return kOk;
}

// Quick end-to-end checks with known answers.
int cmd_selftest(const Config& c) {
  int failed = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name.c_str());
    if (!ok) ++failed;
  };
  auto text = [](const char* fam, Params p) { return decomposition_text(decompose(catalog_group(fam, p))); };
  check("QD16- = 4Q + M2(Q) + M2(Q(sqrt(-2)))", text("D16minus", {}) == "4Q + M2(Q) + M2(Q(sqrt(-2)))");
  check("QQ8 = 4Q + H(Q)", text("Q4n", {{"n", 2}}) == "4Q + H(Q)");
  check("QDcal = 8Q + M2(Q(i))", text("Dcal", {}) == "8Q + M2(Q(i))");
  check("vcd(2,1,0,1,0) = 1", vcd(2, 1, 0, 1, 0) == 1);
  check("vcd(1,2,0,0,1) = 3", vcd(1, 2, 0, 0, 1) == 3);

  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> d(-50, 50);
  bool recip = true;
  for (int i = 0; i < 50; ++i) {
    int a = d(rng), b = d(rng);
    if (!a || !b) continue;
    // a quaternion algebra over Q ramifies at an even number of places
    if (rational_ramification(a, b).size() % 2) recip = false;
  }
  check("Hilbert reciprocity on random pairs (seed " + std::to_string(c.seed) + ")", recip);

  for (auto [fam, p, expect] : std::vector<std::tuple<const char*, Params, bool>>{
           {"W", {}, true}, {"D2n", {{"n", 8}}, false}, {"T", {}, true}}) {
    FiniteGroup G = catalog_group(fam, p);
    bool e = decide_E(G).verdict;
    FVerdict f = decide_F(G);
    check(G.label() + ": E = F = " + (expect ? "true" : "false"),
          e == expect && f.outcome == (expect ? FOutcome::True : FOutcome::False));
  }
  return failed ? kPartial : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wedderburn decomposition of QG and Kleinian-type decision for finite metabelian groups"};
  app.require_subcommand(1);
  Config c;

  auto group_opts = [&](CLI::App* s) {
    s->add_option("--family", c.family, "catalog family (see: catalog)");
    s->add_option("--n", c.n, "family parameter n");
    s->add_option("--k", c.k, "family parameter k");
    s->add_option("--m", c.m, "family parameter m");
    s->add_option("--input", c.input, "group spec as JSON");
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--max-order", c.max_order, "order cap (default 4096, batch 96)")->check(CLI::Range(1ul, 4096ul));
    s->add_option("--budget", c.budget, "node budget for the condition (F) search");
    s->add_option("--jobs", c.jobs, "worker threads for batch")->check(CLI::PositiveNumber);
    s->add_option("--seed", c.seed, "seed for randomized checks");
  };

  auto* dec = app.add_subcommand("decompose", "Wedderburn decomposition with component classification");
  auto* kle = app.add_subcommand("kleinian", "conditions (E) and (F) and the unit-group summary");
  auto* bat = app.add_subcommand("batch", "run a built-in corpus");
  auto* cat = app.add_subcommand("catalog", "list families, or build and check one");
  auto* st = app.add_subcommand("selftest", "quick checks against known results");
  for (auto* s : {dec, kle, cat}) group_opts(s);
  for (auto* s : {dec, kle, bat, cat, st}) common(s);
  bat->add_option("--corpus", c.corpus_name, "theorem-f, forbidden, abelian or full")
      ->check(CLI::IsMember(corpus_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dec) return cmd_single(c, false);
    if (*kle) return cmd_single(c, true);
    if (*bat) return cmd_batch(c);
    if (*cat) return cmd_catalog(c);
    if (*st) return cmd_selftest(c);
  } catch (const Error& e) {
    std::cerr << "kleinia: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "kleinia: " << e.what() << "\n";
    return kPartial;
  }
  return kOk;
}
