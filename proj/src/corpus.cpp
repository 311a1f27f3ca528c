#include "kleinia/corpus.hpp"

namespace kleinia {

namespace {

GroupSpec fam(const std::string& f, Params p = {}) { return GroupSpec::make(f, std::move(p)); }
GroupSpec cyc(long long n) { return fam("Cn", {{"n", n}}); }

void add(std::vector<CorpusEntry>& out, GroupSpec s) {
  std::string name = s.display();
  out.push_back({std::move(name), std::move(s)});
}

// 2-groups G2 with an index-2 subgroup N2 containing the squares of
// elements outside it.
std::vector<std::pair<GroupSpec, std::vector<std::string>>> gkm_bases() {
  return {
      {cyc(2), {"1"}},
      {cyc(4), {"a^2"}},
      {cyc(8), {"a^2"}},
      {fam("Cn^k", {{"n", 2}, {"k", 2}}), {"a1"}},
      {fam("D2n", {{"n", 4}}), {"a"}},
      {fam("D2n", {{"n", 4}}), {"a^2", "b"}},
      {fam("Q4n", {{"n", 2}}), {"a"}},
      {fam("W2n", {{"n", 1}}), {"y1^2", "x"}},
      {fam("W1n", {{"n", 1}}), {"y1", "y1*x*y1^-1*x^-1", "x^2"}},
      {fam("D16minus"), {"a"}},
      {fam("D16plus"), {"a"}},
      {fam("Q4n", {{"n", 4}}), {"a"}},
  };
}

std::vector<CorpusEntry> theorem_f() {
  std::vector<CorpusEntry> out;
  for (GroupSpec s : {fam("D2n", {{"n", 4}}), fam("Q4n", {{"n", 2}}), fam("D16plus"), fam("D16minus"),
                      fam("Dcal"), fam("DcalPlus"), fam("W"), fam("V"), fam("T"), fam("U1"), fam("U2"),
                      fam("Q4n", {{"n", 4}})})
    add(out, s);
  for (const char* f : {"W1n", "W2n", "V1n", "V2n", "T1n", "T2n", "T3n"})
    for (long long n : {1, 2}) add(out, fam(f, {{"n", n}}));
  add(out, GroupSpec::gkm(0, 1, cyc(8), {"a^2"}));
  add(out, GroupSpec::gkm(0, 2, cyc(8), {"a^2"}));
  add(out, GroupSpec::gkm(0, 1, fam("W2n", {{"n", 1}}), {"y1^2", "x"}));
  add(out, GroupSpec::gkm(0, 1, fam("W1n", {{"n", 1}}), {"y1", "y1*x*y1^-1*x^-1", "x^2"}));
  add(out, GroupSpec::gkm(0, 1, cyc(2), {"1"}));
  add(out, GroupSpec::gkm(0, 1, cyc(4), {"a^2"}));
  add(out, GroupSpec::product({cyc(2), fam("W")}));
  add(out, GroupSpec::product({cyc(3), fam("W")}));
  add(out, GroupSpec::product({cyc(6), fam("D2n", {{"n", 4}})}));
  add(out, GroupSpec::product({cyc(4), fam("Q4n", {{"n", 2}})}));
  add(out, GroupSpec::product({cyc(2), fam("T")}));
  return out;
}

std::vector<CorpusEntry> forbidden() {
  std::vector<CorpusEntry> out;
  add(out, fam("D2n", {{"n", 8}}));
  add(out, fam("Q4n", {{"n", 4}}));
  add(out, fam("D2n", {{"n", 12}}));
  add(out, GroupSpec::product({cyc(3), fam("Q4n", {{"n", 4}})}));
  add(out, GroupSpec::product({cyc(3), fam("D16minus")}));
  return out;
}

std::vector<CorpusEntry> abelian() {
  std::vector<CorpusEntry> out;
  for (long long n = 1; n <= 64; ++n) add(out, cyc(n));
  for (long long n : {2, 3, 4, 5, 6, 8})
    for (long long k = 2, o = n * n; o <= 64; ++k, o *= n) add(out, fam("Cn^k", {{"n", n}, {"k", k}}));
  for (auto [a, b] : {std::pair{2, 4}, {2, 8}, {4, 8}, {2, 16}, {2, 12}, {3, 9}, {4, 12}})
    add(out, GroupSpec::product({cyc(a), cyc(b)}));
  add(out, GroupSpec::product({cyc(2), cyc(2), cyc(4)}));
  return out;
}

std::vector<CorpusEntry> full() {
  std::vector<GroupSpec> bases;
  for (long long n : {1, 2, 3, 4, 6, 8, 12}) bases.push_back(cyc(n));
  bases.push_back(fam("Cn^k", {{"n", 2}, {"k", 2}}));
  bases.push_back(fam("Cn^k", {{"n", 2}, {"k", 3}}));
  for (long long n = 3; n <= 12; ++n) bases.push_back(fam("D2n", {{"n", n}}));
  for (long long n = 2; n <= 12; ++n) bases.push_back(fam("Q4n", {{"n", n}}));
  for (long long n : {2, 3}) {
    bases.push_back(fam("D16plus", {{"n", n}}));
    bases.push_back(fam("D16minus", {{"n", n}}));
  }
  for (const char* f : {"Dcal", "DcalPlus", "W", "V", "U1", "U2", "T"}) bases.push_back(fam(f));
  for (const char* f : {"W1n", "W2n", "V1n", "V2n", "T1n", "T2n", "T3n"})
    for (long long n : {1, 2}) bases.push_back(fam(f, {{"n", n}}));
  for (int k : {0, 1})
    for (auto& [g2, n2] : gkm_bases()) bases.push_back(GroupSpec::gkm(k, 1, g2, n2));

  std::vector<CorpusEntry> out;
  for (auto& b : bases) add(out, b);
  for (long long c : {2, 3, 4})
    for (auto& b : bases) add(out, GroupSpec::product({cyc(c), b}));
  return out;
}

}  // namespace

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"theorem-f", "forbidden", "abelian", "full"};
  return names;
}

std::vector<CorpusEntry> corpus(const std::string& name) {
  if (name == "theorem-f") return theorem_f();
  if (name == "forbidden") return forbidden();
  if (name == "abelian") return abelian();
  if (name == "full") return full();
  fail(ErrorKind::InvalidParams, "unknown corpus '" + name + "'");
}

}  // namespace kleinia
