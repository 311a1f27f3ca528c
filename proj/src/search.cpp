#include "kleinia/search.hpp"

#include <cmath>
#include <numeric>

#include "kleinia/catalog.hpp"

namespace kleinia {

namespace {

long long ceil_log(std::size_t n, int base) {
  long long k = 0;
  for (std::size_t p = 1; p < n; p *= base) ++k;
  return std::max<long long>(k, 1);
}

struct Budget {};

class Search {
 public:
  Search(const FiniteGroup& G, const FTemplate& t, const std::vector<Element>& center_elems,
         const std::vector<Element>& class_reps, std::size_t budget, std::size_t& used)
      : G_(G), t_(t), P_(t.presentation), budget_(budget), used_(used), reps_(class_reps) {
    const int r = int(P_.names.size());
    bucket_.resize(r);
    for (std::size_t i = 0; i < P_.relations.size(); ++i) {
      int g = P_.relations[i].max_generator();
      if (g >= 0) bucket_[g].push_back(i);
    }
    nfixed_ = 0;
    while (nfixed_ < r && P_.kind[nfixed_] < 0) ++nfixed_;
    for (int i = nfixed_; i < r; ++i)
      if (P_.kind[i] < 0) fail(ErrorKind::Internal, "fixed generator after a repeatable one");
    last_kind_ = r;
    while (last_kind_ > nfixed_ && P_.kind[last_kind_ - 1] == P_.kind[r - 1]) --last_kind_;
    std::vector<Element> ze;
    for (Element z : center_elems)
      if (G.pow(z, t.exponent) == 0) ze.push_back(z);
    ze_ = generated(G, ze);
    ze_order_ = ze_.order();
    ze_gens_ = generating_set(ze_);
    images_.assign(r, 0);
  }

  std::optional<FWitness> run() {
    if (dfs(0, {})) {
      FWitness w;
      w.branch = t_.branch;
      w.family = t_.family;
      w.exponent = t_.exponent;
      w.n = t_.n;
      w.m = t_.m;
      w.names = P_.names;
      w.images = images_;
      w.ze_order = ze_order_;
      return w;
    }
    return std::nullopt;
  }

 private:
  bool relations_hold(int pos) const {
    for (std::size_t i : bucket_[pos])
      if (!P_.relations[i].holds(G_, images_)) return false;
    return true;
  }

  bool generates(const std::vector<Element>& span_gens) const {
    std::vector<Element> g = ze_gens_;
    g.insert(g.end(), span_gens.begin(), span_gens.end());
    return generated(G_, g).order() == G_.order();
  }

  bool accept(const std::vector<Element>& span_gens) const {
    return generates(span_gens) && P_.failing(G_, images_).empty();
  }

  void tick() {
    if (++used_ > budget_) throw Budget{};
  }

  std::vector<Element> orbit_reps(int pos) const {
    std::vector<Element> fixed(images_.begin(), images_.begin() + pos);
    auto gens = generating_set(centralizer(G_, generated(G_, fixed)));
    std::vector<Element> reps;
    std::vector<bool> seen(G_.order(), false);
    for (Element x = 0; x < G_.order(); ++x) {
      if (seen[x]) continue;
      reps.push_back(x);
      std::vector<Element> orbit{x};
      seen[x] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (Element g : gens) {
          Element y = G_.conj(orbit[i], g);
          if (!seen[y]) {
            seen[y] = true;
            orbit.push_back(y);
          }
        }
    }
    return reps;
  }

  bool completes(std::vector<Element> gens, const std::vector<Element>& extra) const {
    Subgroup S = generated(G_, gens);
    for (Element c : extra) {
      if (S.order() == G_.order()) break;
      if (S.contains(c)) continue;
      gens.push_back(c);
      S = generated(G_, gens);
    }
    return S.order() == G_.order();
  }

  int next_kind_start(int pos) const {
    const int r = int(P_.names.size());
    int k = P_.kind[pos];
    while (pos < r && P_.kind[pos] == k) ++pos;
    return pos;
  }

  // Slots before pos are decided; span_gens are the nontrivial images.
  bool dfs(int pos, std::vector<Element> span_gens) {
    const int r = int(P_.names.size());
    if (pos >= r) return false;
    if (pos < nfixed_) {
      // Conjugating a solution by g gives a solution, so each fixed slot
      // only needs one image per orbit of the centralizer of the earlier ones.
      const std::vector<Element> cands = pos == 0 ? reps_ : orbit_reps(pos);
      for (Element c : cands) {
        tick();
        images_[pos] = c;
        if (!relations_hold(pos)) continue;
        auto next = span_gens;
        if (c) next.push_back(c);
        if (pos + 1 == nfixed_ && accept(next)) return true;
        if (dfs(pos + 1, next)) return true;
      }
      images_[pos] = 0;
      return false;
    }
    // A repeatable slot: an image above the previous one of the same kind
    // and outside the current span, or no more generators of this kind.
    Element lo = 1;
    if (pos > 0 && P_.kind[pos - 1] == P_.kind[pos]) lo = images_[pos - 1] + 1;
    if (pos == 0 || P_.kind[pos - 1] != P_.kind[pos] || images_[pos - 1] != 0) {
      std::vector<Element> g = ze_gens_;
      g.insert(g.end(), span_gens.begin(), span_gens.end());
      Subgroup span = generated(G_, g);
      std::vector<Element> viable;
      for (std::size_t c = lo; c < G_.order(); ++c) {
        if (span.contains(Element(c))) continue;
        tick();
        images_[pos] = Element(c);
        if (relations_hold(pos)) viable.push_back(Element(c));
      }
      // In the last block every later image is one of these candidates, so
      // if they cannot complete the span to G nothing below can either.
      if (pos >= last_kind_ && !completes(g, viable)) viable.clear();
      for (Element c : viable) {
        images_[pos] = c;
        auto next = span_gens;
        next.push_back(c);
        if (accept(next)) return true;
        if (dfs(pos + 1, next)) return true;
      }
      images_[pos] = 0;
    }
    return dfs(next_kind_start(pos), span_gens);
  }

  const FiniteGroup& G_;
  const FTemplate& t_;
  const Presentation& P_;
  std::size_t budget_;
  std::size_t& used_;
  std::vector<std::vector<std::size_t>> bucket_;
  int nfixed_ = 0;
  int last_kind_ = 0;  // first slot of the last repeatable block
  std::vector<Element> reps_;
  Subgroup ze_;
  std::size_t ze_order_ = 1;
  std::vector<Element> ze_gens_;
  std::vector<Element> images_;
};

}  // namespace

const char* f_outcome_name(FOutcome o) {
  switch (o) {
    case FOutcome::True: return "true";
    case FOutcome::False: return "false";
    case FOutcome::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

FTemplate make_f_template(const std::string& family, long long n, long long m) {
  FTemplate t;
  t.family = family;
  t.n = n;
  t.m = m;
  if (family == "W" || family == "W1n" || family == "W2n") {
    t.branch = "F.1";
    t.exponent = 6;
    t.group_exponent = 4;
    t.derived_exponent = 2;
  } else if (family == "V" || family == "V1n" || family == "V2n" || family == "U1" || family == "U2") {
    t.branch = "F.2";
    t.exponent = 4;
    t.group_exponent = family == "U1" ? 4 : 8;
    t.derived_exponent = 2;
    t.abelian_index_2 = family[0] != 'U';
  } else if (family == "T" || family == "T1n" || family == "T2n" || family == "T3n") {
    t.branch = "F.3";
    t.exponent = 2;
    t.group_exponent = 8;
    t.derived_exponent = 4;
  } else if (family == "C8:M") {
    t.branch = "F.4";
    t.exponent = 4;
    t.group_exponent = 24;
    t.derived_exponent = 3;
    t.presentation = m_extension_presentation("C8", 0, m);
    return t;
  } else if (family == "W1n:M") {
    t.branch = "F.4";
    t.exponent = 6;
    t.group_exponent = 12;
    t.derived_exponent = 6;
    t.presentation = m_extension_presentation("W1n", n, m);
    return t;
  } else if (family == "W21:M") {
    t.branch = "F.4";
    t.exponent = 2;
    t.group_exponent = 12;
    t.derived_exponent = 6;
    t.presentation = m_extension_presentation("W21", 1, m);
    return t;
  } else {
    fail(ErrorKind::InvalidParams, "unknown template " + family);
  }
  Params p;
  if (family.back() == 'n') p["n"] = n;
  t.presentation = defining_presentation(family, p);
  return t;
}

std::vector<FTemplate> f_templates(std::size_t order) {
  const long long N = ceil_log(order, 2), M = ceil_log(order, 3);
  std::vector<FTemplate> out;
  for (const char* f : {"W", "W1n", "W2n", "V", "V1n", "V2n", "U1", "U2", "T", "T1n", "T2n", "T3n"}) {
    std::string s = f;
    out.push_back(make_f_template(s, s.back() == 'n' ? N : 0, 0));
  }
  out.push_back(make_f_template("C8:M", 0, M));
  out.push_back(make_f_template("W1n:M", N, M));
  out.push_back(make_f_template("W21:M", 1, M));
  return out;
}

FVerdict decide_F(const FiniteGroup& G, const FOptions& opt) {
  FVerdict v;
  if (G.is_abelian()) {
    v.outcome = FOutcome::True;
    v.note = "abelian";
    return v;
  }
  const long long N = ceil_log(G.order(), 2), M = ceil_log(G.order(), 3);
  const bool index2 = has_abelian_subgroup_of_index_at_most_2(G);
  const std::vector<Element> zg = center(G).elements();
  std::size_t derived_exp = 1;
  for (Element g : derived_subgroup(G).elements()) derived_exp = std::lcm<std::size_t>(derived_exp, G.element_order(g));
  std::vector<Element> reps;
  for (auto& cls : conjugacy_classes(G)) reps.push_back(cls.front());
  try {
    for (const FTemplate& t : f_templates(G.order())) {
      if (t.abelian_index_2 && !index2) continue;
      // g = h z with h in phi(H), z in Z_e central, so g^L = 1 for L = lcm(exp H, e).
      if (std::lcm<std::size_t>(t.group_exponent, t.exponent) % G.exponent() != 0) continue;
      // G' = phi(H').
      if (t.derived_exponent % derived_exp != 0) continue;
      Search s(G, t, zg, reps, opt.budget, v.nodes);
      if (auto w = s.run()) {
        if (!verify_f_witness(G, *w)) fail(ErrorKind::Internal, "condition (F) witness fails verification");
        v.outcome = FOutcome::True;
        v.witness = std::move(w);
        v.note = "image of A x " + t.family + " with exp(A) | " + std::to_string(t.exponent);
        return v;
      }
    }
  } catch (const Budget&) {
    v.outcome = FOutcome::BudgetExceeded;
    v.note = "node budget " + std::to_string(opt.budget) + " exhausted";
    return v;
  }
  v.outcome = FOutcome::False;
  v.note = "all templates exhausted with n <= " + std::to_string(N) + ", m <= " + std::to_string(M);
  return v;
}

bool verify_f_witness(const FiniteGroup& G, const FWitness& w) {
  FTemplate t = make_f_template(w.family, w.n, w.m);
  if (t.presentation.names != w.names || w.images.size() != w.names.size()) return false;
  for (Element e : w.images)
    if (e >= G.order()) return false;
  if (!t.presentation.failing(G, w.images).empty()) return false;
  std::vector<Element> gens = w.images;
  for (Element z : center(G).elements())
    if (G.pow(z, t.exponent) == 0) gens.push_back(z);
  return generated(G, gens).order() == G.order();
}

}  // namespace kleinia
