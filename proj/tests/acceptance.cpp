// One PASS/FAIL line per acceptance criterion.  Usage: acceptance [path/to/kleinia]
// (the CLI is needed for the determinism check).

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kleinia/catalog.hpp"
#include "kleinia/corpus.hpp"
#include "kleinia/report.hpp"

using namespace kleinia;

namespace {

// Pinned limits.
constexpr double kGoldenSeconds = 5.0;    // per golden decomposition
constexpr double kVerdictSeconds = 10.0;  // all of criterion 3
constexpr double kSweepSeconds = 600.0;   // criterion 4
constexpr double kBudgetShare = 0.05;     // budget-exceeded rows allowed in the sweep
constexpr std::size_t kSweepOrder = 96;
constexpr int kReciprocityPairs = 200;

int failures = 0;

void line(bool ok, const std::string& id, const std::string& what) {
  std::printf("%s [%s] %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f s", s);
  return b;
}

FiniteGroup fam(const std::string& f, Params p = {}) { return catalog_group(f, p); }
FiniteGroup c3_c8() { return build_m_extension("C8", 0, 1).group; }

std::set<std::string> classes(const FiniteGroup& G) {
  std::set<std::string> s;
  for (auto& c : decompose(G))
    if (!c.commutative) s.insert(c.algebra);
  return s;
}

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (auto& x : s) out += (out.size() > 1 ? ", " : "") + x;
  return out + "}";
}

std::multiset<std::string> keys(const std::vector<SimpleComponent>& comps) {
  std::multiset<std::string> k;
  for (auto& c : comps) k.insert(c.key);
  return k;
}

void golden() {
  struct Row {
    std::string name;
    std::function<FiniteGroup()> build;
    std::string expect;
  };
  std::vector<Row> rows = {
      {"QD16-", [] { return fam("D16minus"); }, "4Q + M2(Q) + M2(Q(sqrt(-2)))"},
      {"QD16+", [] { return fam("D16plus"); }, "4Q + 2Q(i) + M2(Q(i))"},
      {"QDcal", [] { return fam("Dcal"); }, "8Q + M2(Q(i))"},
      {"QDcal+", [] { return fam("DcalPlus"); }, "4Q + 2Q(i) + 2M2(Q) + 2M2(Q(i))"},
      {"QQ8", [] { return fam("Q4n", {{"n", 2}}); }, "4Q + H(Q)"},
  };
  for (auto& r : rows) {
    auto t0 = std::chrono::steady_clock::now();
    std::string got = decomposition_text(decompose(r.build()));
    double s = seconds_since(t0);
    line(got == r.expect && s < kGoldenSeconds, "1",
         r.name + " = " + got + " (expected " + r.expect + ", " + fmt(s) + ")");
  }

  auto t0 = std::chrono::steady_clock::now();
  auto q16 = decompose(fam("Q4n", {{"n", 4}}));
  bool has = std::any_of(q16.begin(), q16.end(), [](auto& c) { return c.algebra == "H(Q(sqrt(2)))"; });
  double s = seconds_since(t0);
  line(has && s < kGoldenSeconds, "1", "QQ16 = " + decomposition_text(q16) + " contains H(Q(sqrt(2))) (" + fmt(s) + ")");

  // QT11 = Q(T11/<t^2>) + 8 M2(Q(i)), compared as multisets of component keys.
  t0 = std::chrono::steady_clock::now();
  FiniteGroup T = fam("T1n", {{"n", 1}});
  Element x = *T.named("x"), y = *T.named("y1");
  Element t = T.comm(y, x);
  auto whole = keys(decompose(T));
  auto quot = keys(decompose(quotient(T, generated(T, {T.pow(t, 2)})).group));
  std::multiset<std::string> rest;
  std::set_difference(whole.begin(), whole.end(), quot.begin(), quot.end(), std::inserter(rest, rest.end()));
  bool sub = std::includes(whole.begin(), whole.end(), quot.begin(), quot.end());
  const std::string m2i = "M2|" + fixed_field(4, {}).key();
  bool ok = sub && rest.size() == 8 && rest.count(m2i) == 8 && T.element_order(t) == 4;
  s = seconds_since(t0);
  line(ok && s < kGoldenSeconds, "1",
       "QT11 = Q(T11/<t^2>) + " + std::to_string(rest.size()) + " further components, " +
           std::to_string(rest.count(m2i)) + " of them M2(Q(i)) (" + fmt(s) + ")");
}

void class_sets() {
  auto check = [](const std::string& name, const FiniteGroup& G, std::set<std::string> expect) {
    auto got = classes(G);
    line(got == expect, "2", "C(" + name + ") = " + join(got) + " (expected " + join(expect) + ")");
  };
  check("W1n, n=1", fam("W1n", {{"n", 1}}), {"M2(Q)"});
  check("W1n, n=2", fam("W1n", {{"n", 2}}), {"M2(Q)"});
  check("W", fam("W"), {"M2(Q)", "H(Q)"});
  check("W21", fam("W2n", {{"n", 1}}), {"M2(Q)", "H(Q)"});
  check("C3:C8", c3_c8(), {"M2(Q)", "(-1,-3 / Q)", "M2(Q(i))"});

  // (F.4)(c): (C3 x Q) : <u> over W21.  Its quotient by M = C3 is W21, so
  // H(Q) from C(W21) appears next to the four classes new to this family.
  FiniteGroup G = build_m_extension("W21", 1, 1).group;
  std::set<std::string> named = {"M2(Q)", "H(Q(sqrt(3)))", "M2(Q(i))", "M2(Q(sqrt(-3)))"};
  std::set<std::string> expect = named;
  expect.insert("H(Q)");
  auto got = classes(G);
  bool quotient_ok = false;
  for (auto& N : normal_subgroups(G))
    if (N.order() == 3 && isomorphic(quotient(G, N).group, fam("W2n", {{"n", 1}}))) quotient_ok = true;
  line(got == expect && quotient_ok, "2",
       "C((F.4)(c), m=1) = " + join(got) + " (expected " + join(expect) +
           ", W21 quotient found: " + (quotient_ok ? "yes" : "no") + ")");
}

void verdicts() {
  struct Row {
    std::string name;
    std::function<FiniteGroup()> build;
    bool expect;
  };
  auto prod = [](GroupSpec a, GroupSpec b) { return [=] { return build_group(GroupSpec::product({a, b})); }; };
  std::vector<Row> rows = {
      {"D8", [] { return fam("D2n", {{"n", 4}}); }, true},
      {"Q8", [] { return fam("Q4n", {{"n", 2}}); }, true},
      {"D16+", [] { return fam("D16plus"); }, true},
      {"D16-", [] { return fam("D16minus"); }, true},
      {"Dcal", [] { return fam("Dcal"); }, true},
      {"Dcal+", [] { return fam("DcalPlus"); }, true},
      {"W", [] { return fam("W"); }, true},
      {"V", [] { return fam("V"); }, true},
      {"T", [] { return fam("T"); }, true},
      {"U1", [] { return fam("U1"); }, true},
      {"U2", [] { return fam("U2"); }, true},
      {"W21", [] { return fam("W2n", {{"n", 1}}); }, true},
      {"C3:C8", c3_c8, true},
      {"D16", [] { return fam("D2n", {{"n", 8}}); }, false},
      {"D24", [] { return fam("D2n", {{"n", 12}}); }, false},
      {"C3 x Q16", prod(GroupSpec::make("Cn", {{"n", 3}}), GroupSpec::make("Q4n", {{"n", 4}})), false},
      {"C3 x D16-", prod(GroupSpec::make("Cn", {{"n", 3}}), GroupSpec::make("D16minus")), false},
  };
  auto t0 = std::chrono::steady_clock::now();
  for (auto& r : rows) {
    FiniteGroup G = r.build();
    bool e = decide_E(G).verdict;
    FVerdict f = decide_F(G);
    bool ok = e == r.expect && f.outcome == (r.expect ? FOutcome::True : FOutcome::False);
    if (f.witness) ok = ok && verify_f_witness(G, *f.witness);
    line(ok, "3",
         r.name + ": E=" + (e ? "true" : "false") + " F=" + f_outcome_name(f.outcome) + " (expected " +
             (r.expect ? "true" : "false") + ")");
  }

  // Q16, unlike D16, is of Kleinian type: QQ16 = QD8 + H(Q(sqrt 2)) has only
  // allowed components and Q16 = T/<t y^2> is an image of T.  Three routes.
  FiniteGroup Q16 = fam("Q4n", {{"n", 4}});
  bool e = decide_E(Q16).verdict;
  FVerdict f = decide_F(Q16);
  bool image = epimorphism_exists(fam("T"), Q16);
  line(e && f.outcome == FOutcome::True && image, "3",
       std::string("Q16: E=") + (e ? "true" : "false") + " F=" + f_outcome_name(f.outcome) +
           ", T maps onto Q16: " + (image ? "yes" : "no") +
           " (expected true: QQ16 = QD8 + H(Q(sqrt(2))) and Q16 is a quotient of T)");
  double s = seconds_since(t0);
  line(s < kVerdictSeconds, "3", "verdict time " + fmt(s) + " (limit " + fmt(kVerdictSeconds) + ")");
}

struct CorpusGroup {
  std::string name;
  FiniteGroup G;
};

std::vector<CorpusGroup> sweep_groups() {
  std::vector<CorpusGroup> out;
  for (auto& e : corpus("full")) {
    try {
      out.push_back({e.name, build_group(e.spec, kSweepOrder)});
    } catch (const Error& x) {
      if (x.kind() != ErrorKind::ClosureCapExceeded) throw;
    }
  }
  return out;
}

void sweep(const std::vector<CorpusGroup>& groups) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t agree = 0;
  std::vector<std::string> disagree, budget;
  for (auto& g : groups) {
    bool e = decide_E(g.G).verdict;
    FVerdict f = decide_F(g.G);
    if (f.outcome == FOutcome::BudgetExceeded) budget.push_back(g.name);
    else if ((f.outcome == FOutcome::True) == e) ++agree;
    else disagree.push_back(g.name);
  }
  double s = seconds_since(t0);
  std::string what = std::to_string(groups.size()) + " groups of order <= " + std::to_string(kSweepOrder) + ": " +
                     std::to_string(agree) + " agree, " + std::to_string(disagree.size()) + " disagree, " +
                     std::to_string(budget.size()) + " over budget (" + fmt(s) + ")";
  for (auto& n : disagree) what += "\n       disagreement: " + n;
  for (auto& n : budget) what += "\n       over budget: " + n;
  line(disagree.empty() && budget.size() <= kBudgetShare * groups.size() && s < kSweepSeconds && !groups.empty(),
       "4", what);
}

void structure(const std::vector<CorpusGroup>& groups) {
  std::size_t bad = 0, comps = 0;
  std::string first;
  for (auto& g : groups) {
    auto pcis = enumerate_pcis(g.G);
    AlgebraElement sum(g.G);
    std::size_t dims = 0;
    bool ok = true;
    for (std::size_t i = 0; i < pcis.size(); ++i) {
      sum = sum + pcis[i].e;
      dims += pcis[i].dimension();
      for (std::size_t j = i + 1; j < pcis.size(); ++j) ok = ok && (pcis[i].e * pcis[j].e).is_zero();
    }
    ok = ok && sum == AlgebraElement::one(g.G) && dims == g.G.order() && pcis.size() == rational_class_count(g.G);
    comps += pcis.size();
    if (!ok && bad++ == 0) first = g.name;
  }
  line(bad == 0, "5",
       std::to_string(groups.size()) + " groups, " + std::to_string(comps) +
           " components: sum = 1, orthogonal, dimensions sum to |G|, count = rational classes" +
           (bad ? " (first failure: " + first + ")" : ""));
}

void vcds() {
  struct Row {
    std::array<int, 5> a;
    long expect;
  };
  for (auto [a, expect] : std::vector<Row>{{{2, 1, 0, 1, 0}, 1}, {{2, 1, 0, 0, 1}, 2}, {{1, 2, 1, 0, 0}, 0},
                                            {{1, 2, 0, 0, 1}, 3}}) {
    long got = vcd(a[0], a[1], a[2], a[3], a[4]);
    char b[96];
    std::snprintf(b, sizeof b, "vcd(%d,%d,%d,%d,%d) = %ld (expected %ld)", a[0], a[1], a[2], a[3], a[4], got, expect);
    line(got == expect, "6", b);
  }
}

void number_theory(const std::vector<CorpusGroup>& groups) {
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 60);
  int pairs = 0, good = 0;
  while (pairs < kReciprocityPairs) {
    mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
    if (a == 0 || b == 0) continue;
    a.canonicalize();
    b.canonicalize();
    ++pairs;
    int prod = hilbert_symbol_rational(a, b, 0);
    for (long p : rational_prime_divisors(mpz_class(2 * a.get_num() * a.get_den() * b.get_num() * b.get_den())))
      prod *= hilbert_symbol_rational(a, b, p);
    good += prod == 1;
  }
  line(good == pairs, "7", "Hilbert reciprocity over Q: " + std::to_string(good) + "/" + std::to_string(pairs));

  QuaternionDescriptor q;
  q.center = fixed_field(4, {});
  q.a = CyclotomicElement::zeta(4, 1);
  q.b = CyclotomicElement::rational(4, -3);
  auto an = analyze_quaternion(q);
  bool cert = an.certificate && certificate_holds(q, *an.certificate);
  line(an.status == SplitStatus::Split && cert, "7",
       std::string("(i,-3 / Q(i)) ") + split_status_name(an.status) + ", certificate " +
           (an.certificate ? an.certificate->text : "missing") + (cert ? " verified" : " not verified"));

  QuaternionDescriptor h;
  h.a = CyclotomicElement::rational(1, -1);
  h.b = CyclotomicElement::rational(1, -1);
  auto hn = analyze_quaternion(h);
  line(hn.status == SplitStatus::Division, "7", std::string("(-1,-1 / Q) ") + split_status_name(hn.status));

  // Every split quaternion component met in the sweep corpus, plus a grid
  // of (a,b) over Q, Q(i), Q(sqrt-2), Q(sqrt-3).
  std::size_t split = 0, verified = 0;
  for (auto& g : groups)
    for (auto& c : decompose(g.G)) {
      if (!c.quaternion || c.quaternion->status != SplitStatus::Split) continue;
      ++split;
      verified += c.quaternion->certificate && c.resolved.quaternion &&
                  certificate_holds(*c.resolved.quaternion, *c.quaternion->certificate);
    }
  for (auto [k, fix] : std::vector<std::pair<int, std::vector<long>>>{{1, {}}, {4, {}}, {8, {3}}, {3, {}}})
    for (long a = -12; a <= 12; ++a)
      for (long b = -12; b <= 12; ++b) {
        if (!a || !b) continue;
        QuaternionDescriptor d;
        d.center = fixed_field(k, fix);
        d.a = CyclotomicElement::rational(k, a);
        d.b = CyclotomicElement::rational(k, b);
        auto x = analyze_quaternion(d);
        if (x.status != SplitStatus::Split) continue;
        ++split;
        verified += x.certificate && certificate_holds(d, *x.certificate);
      }
  line(split > 0 && verified == split, "7",
       "split certificates satisfy aX^2 + bY^2 = Z^2 exactly: " + std::to_string(verified) + "/" +
           std::to_string(split));
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

void determinism(const char* cli) {
  if (!cli) {
    line(false, "8", "no CLI path given");
    return;
  }
  std::string base = std::string("\"") + cli + "\" batch --corpus full --format json --max-order " +
                     std::to_string(kSweepOrder) + " --seed 1";
  int s1 = 0, s8 = 0;
  std::string a = run(base + " --jobs 1", s1);
  std::string b = run(base + " --jobs 8", s8);
  line(s1 == 0 && s8 == 0 && !a.empty() && a == b, "8",
       "batch --jobs 1 vs --jobs 8: " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
           " bytes, " + (a == b ? "identical" : "different") + ", exit " + std::to_string(s1) + "/" +
           std::to_string(s8));
}

}  // namespace

int main(int argc, char** argv) {
  try {
    golden();
    class_sets();
    verdicts();
    auto groups = sweep_groups();
    sweep(groups);
    structure(groups);
    vcds();
    number_theory(groups);
    determinism(argc > 1 ? argv[1] : nullptr);
  } catch (const std::exception& e) {
    line(false, "-", std::string("aborted: ") + e.what());
  }
  std::printf("%s: %d failing line(s)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
