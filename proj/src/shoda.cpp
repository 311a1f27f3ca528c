#include "kleinia/shoda.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace kleinia {

namespace {

std::size_t euler_phi(std::size_t n) {
  std::size_t r = n;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

// g outside K with [g, K] <= H would enlarge K/H to a bigger abelian group.
bool maximal_abelian(const FiniteGroup& G, const Subgroup& K, const Subgroup& H, const Subgroup& N) {
  auto kg = generating_set(K);
  ElementSet covered = K.members();
  for (Element g : N.elements()) {
    if (covered.contains(g)) continue;
    for (Element k : K.elements()) covered.insert(G.mul(g, k));
    bool all = true;
    for (Element k : kg)
      if (!H.contains(G.comm(g, k))) {
        all = false;
        break;
      }
    if (all) return false;
  }
  return true;
}

bool cyclic_quotient(const Subgroup& K, const Subgroup& H) {
  try {
    cyclic_generator(K, H);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Normal subgroups H of K containing K' with K/H cyclic: the kernels of the
// linear characters of K, found by assigning values in Z/e to generators of
// K/K' and keeping the consistent assignments.
std::vector<Subgroup> cyclic_quotient_kernels(const Subgroup& K) {
  const FiniteGroup& G = K.group();
  Subgroup D = derived_subgroup(K);
  auto del = D.elements();
  std::vector<Element> id(G.order(), kNone), rep;
  for (Element x : K.elements()) {
    if (id[x] != kNone) continue;
    Element c = Element(rep.size());
    rep.push_back(x);
    for (Element d : del) id[G.mul(x, d)] = c;
  }
  const std::size_t m = rep.size();
  auto qmul = [&](std::size_t a, std::size_t b) { return id[G.mul(rep[a], rep[b])]; };
  std::vector<std::size_t> ord(m, 1);
  std::size_t e = 1;
  for (std::size_t a = 1; a < m; ++a) {
    std::size_t o = 1, y = a;
    while (y != 0) y = qmul(y, a), ++o;
    ord[a] = o;
    e = std::lcm(e, o);
  }
  // greedy generating set of K/K'
  std::vector<std::size_t> gens;
  std::vector<char> in(m, 0);
  in[0] = 1;
  std::vector<std::size_t> list{0};
  std::vector<std::size_t> byord(m);
  std::iota(byord.begin(), byord.end(), 0);
  std::stable_sort(byord.begin(), byord.end(), [&](auto a, auto b) { return ord[a] > ord[b]; });
  for (std::size_t a : byord) {
    if (in[a]) continue;
    gens.push_back(a);
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t g : gens) {
        std::size_t y = qmul(list[i], g);
        if (!in[y]) in[y] = 1, list.push_back(y);
      }
  }
  std::vector<std::size_t> val(gens.size());
  std::set<std::vector<char>> kernels;
  std::vector<Subgroup> out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      std::vector<long> chi(m, -1);
      chi[0] = 0;
      std::vector<std::size_t> l{0};
      for (std::size_t p = 0; p < l.size(); ++p)
        for (std::size_t s = 0; s < gens.size(); ++s) {
          std::size_t y = qmul(l[p], gens[s]);
          long v = long((chi[l[p]] + val[s]) % e);
          if (chi[y] < 0) {
            chi[y] = v;
            l.push_back(y);
          } else if (chi[y] != v) {
            return;
          }
        }
      std::vector<char> ker(m);
      for (std::size_t a = 0; a < m; ++a) ker[a] = chi[a] == 0;
      if (!kernels.insert(ker).second) return;
      ElementSet s(G.order());
      for (Element x : K.elements())
        if (ker[id[x]]) s.insert(x);
      out.emplace_back(G, std::move(s));
      return;
    }
    for (std::size_t c = 0; c < e; ++c) {
      if ((ord[gens[i]] * c) % e) continue;
      val[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

struct Collector {
  const FiniteGroup& G;
  AlgebraElement sum;
  const AlgebraElement one;
  std::vector<Pci> found;
  std::unordered_set<ElementSet, ElementSetHash> seen_h;  // per current K
  bool done = false;

  explicit Collector(const FiniteGroup& g) : G(g), sum(g), one(AlgebraElement::one(g)) {}

  void consider(const Subgroup& K, const Subgroup& H) {
    if (done) return;
    if (seen_h.count(H.members())) return;
    // All G-conjugates of H give the same idempotent with this K.
    Subgroup N = normalizer(G, H);
    {
      ElementSet covered = N.members();
      for (Element g = 0; g < G.order(); ++g) {
        if (covered.contains(g)) continue;
        for (Element x : N.elements()) covered.insert(G.mul(x, g));
        seen_h.insert(conjugate(H, g).members());
      }
      seen_h.insert(H.members());
    }
    if (!is_normal(K, whole(G)) || !maximal_abelian(G, K, H, N)) return;
    StrongShodaPair p{K, H, N, K.order() / H.order(), G.order() / N.order()};
    AlgebraElement e = conjugate_sum(G, epsilon(K, H), N);
    for (auto& f : found)
      if (f.e == e) {
        if (std::tie(H, K) < std::tie(f.pair.H, f.pair.K)) f.pair = p;
        return;
      }
    if (!is_central(e)) fail(ErrorKind::NotIdempotent, "e(G,K,H) is not central");
    if (!is_idempotent(e)) fail(ErrorKind::NotIdempotent, "e(G,K,H) is not idempotent");
    // dim QGe = [G:K]^2 phi(k) / [N:K]
    std::size_t nk = N.order() / K.order();
    std::size_t expect = (G.order() / K.order()) * (G.order() / K.order()) * euler_phi(p.k) / nk;
    Pci pci{p, e};
    if (pci.dimension() != expect)
      fail(ErrorKind::Internal, "component dimension disagrees with [G:K]^2 phi(k)/[N:K]");
    sum = sum + e;
    found.push_back(std::move(pci));
    if (sum == one) done = true;
  }
};

void run_strategy(const FiniteGroup& G, PciStrategy s, Collector& c) {
  if (s == PciStrategy::AbelianCover || s == PciStrategy::NormalK) {
    std::vector<Subgroup> Ks;
    if (s == PciStrategy::AbelianCover) {
      Ks = subgroups_containing(G, abelian_cover(G));
    } else {
      Ks = normal_subgroups(G);
    }
    std::sort(Ks.begin(), Ks.end());
    for (const Subgroup& K : Ks) {
      if (c.done) return;
      c.seen_h.clear();
      for (const Subgroup& H : cyclic_quotient_kernels(K)) c.consider(K, H);
    }
    return;
  }
  auto normals = normal_subgroups(G);
  for (auto& cls : subgroup_classes(G)) {
    const Subgroup& H = cls.front();
    for (const Subgroup& K : normals) {
      if (c.done) return;
      if (!H.members().subset_of(K.members())) continue;
      if (!is_normal(H, K) || !cyclic_quotient(K, H)) continue;
      c.seen_h.clear();
      c.consider(K, H);
    }
  }
}

}  // namespace

std::size_t Pci::dimension() const {
  mpq_class c = e.coeff(0) * int(e.group().order());
  return c.get_num().get_ui();
}

Subgroup abelian_cover(const FiniteGroup& G) {
  Subgroup A = derived_subgroup(G);
  if (!is_abelian(A)) return A;
  auto gens = generating_set(A);
  for (Element x = 0; x < G.order(); ++x) {
    if (A.contains(x)) continue;
    bool ok = true;
    for (Element g : gens)
      if (G.mul(x, g) != G.mul(g, x)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    gens.push_back(x);
    A = generated(G, gens);
  }
  return A;
}

bool is_strong_shoda_pair(const FiniteGroup& G, const Subgroup& K, const Subgroup& H) {
  if (!H.members().subset_of(K.members())) return false;
  if (!is_normal(H, K) || !is_normal(G, K)) return false;
  if (!cyclic_quotient(K, H)) return false;
  return maximal_abelian(G, K, H, normalizer(G, H));
}

StrongShodaPair make_pair(const FiniteGroup& G, const Subgroup& K, const Subgroup& H) {
  if (!is_strong_shoda_pair(G, K, H)) fail(ErrorKind::NotShodaPair, "not a strong Shoda pair");
  Subgroup N = normalizer(G, H);
  return {K, H, N, K.order() / H.order(), G.order() / N.order()};
}

AlgebraElement idempotent_e(const FiniteGroup& G, const Subgroup& K, const Subgroup& H) {
  if (!is_strong_shoda_pair(G, K, H)) fail(ErrorKind::NotShodaPair, "not a strong Shoda pair");
  AlgebraElement e = conjugate_sum(G, epsilon(K, H), normalizer(G, H));
  if (!is_central(e) || !is_idempotent(e))
    fail(ErrorKind::NotIdempotent, "e(G,K,H) is not a central idempotent");
  return e;
}

std::vector<Pci> enumerate_pcis(const FiniteGroup& G, PciStrategy strategy) {
  Collector c(G);
  if (strategy == PciStrategy::Auto) {
    if (is_metabelian(G)) run_strategy(G, PciStrategy::AbelianCover, c);
    if (!c.done) run_strategy(G, PciStrategy::NormalK, c);
  } else {
    run_strategy(G, strategy, c);
  }
  auto sorted = c.found;
  std::sort(sorted.begin(), sorted.end(), [](const Pci& a, const Pci& b) {
    auto da = a.dimension(), db = b.dimension();
    if (da != db) return da < db;
    return std::tie(a.pair.H, a.pair.K) < std::tie(b.pair.H, b.pair.K);
  });
  if (!c.done)
    throw IncompleteDecompositionError(
        "strong Shoda pairs do not account for all of QG (is G metabelian?)", sorted);
  // Central idempotents summing to 1 are pairwise orthogonal: the e_i e_j
  // (i != j) are idempotents of trace >= 0 whose sum is 0.  Check it anyway
  // where it is cheap.
  if (G.order() <= 256)
    for (std::size_t i = 0; i < sorted.size(); ++i)
      for (std::size_t j = i + 1; j < sorted.size(); ++j)
        if (!(sorted[i].e * sorted[j].e).is_zero())
          fail(ErrorKind::NotIdempotent, "primitive central idempotents are not orthogonal");
  return sorted;
}

CrossedProductDescriptor crossed_product_data(const FiniteGroup& G, const StrongShodaPair& p) {
  CrossedProductDescriptor d;
  d.n = G.order() / p.N.order();
  d.k = p.k;
  d.x = cyclic_generator(p.K, p.H);
  // exponent of each element of K modulo H
  std::vector<int> powH(G.order(), -1);
  {
    Element cur = 0;
    for (std::size_t i = 0; i < p.k; ++i) {
      for (Element h : p.H.elements()) powH[G.mul(cur, h)] = int(i);
      cur = G.mul(cur, d.x);
    }
  }
  std::vector<Element> coset(G.order(), kNone);
  for (Element y : p.N.elements()) {
    if (coset[y] != kNone) continue;
    Element c = Element(d.quotient_elems.size());
    d.quotient_elems.push_back(y);
    for (Element k : p.K.elements()) coset[G.mul(y, k)] = c;
  }
  const std::size_t m = d.quotient_elems.size();
  const auto& gam = d.quotient_elems;
  d.quotient_mul.assign(m, std::vector<int>(m));
  d.action.resize(m);
  d.twisting.assign(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a) {
    d.action[a] = powH[G.conj(d.x, gam[a])];
    for (std::size_t b = 0; b < m; ++b) {
      int ab = coset[G.mul(gam[a], gam[b])];
      d.quotient_mul[a][b] = ab;
      Element w = G.mul(G.inv(gam[ab]), G.mul(gam[a], gam[b]));
      d.twisting[a][b] = powH[w];
    }
  }
  const long k = long(p.k);
  for (std::size_t a = 0; a < m; ++a) {
    if (a != 0 && (d.action[a] % k + k) % k == 1 % k && k > 1)
      fail(ErrorKind::Internal, "action of N/K on K/H is not faithful");
    for (std::size_t b = 0; b < m; ++b) {
      int ab = d.quotient_mul[a][b];
      if ((long(d.action[a]) * d.action[b] - d.action[ab]) % k != 0)
        fail(ErrorKind::Internal, "action is not a homomorphism");
      for (std::size_t c = 0; c < m; ++c) {
        int bc = d.quotient_mul[b][c];
        long lhs = d.twisting[ab][c] + long(d.action[c]) * d.twisting[a][b];
        long rhs = d.twisting[a][bc] + d.twisting[b][c];
        if ((lhs - rhs) % k != 0) fail(ErrorKind::Internal, "twisting is not a cocycle");
      }
    }
  }
  d.faithful_kernel = core(G, p.H);
  return d;
}

}  // namespace kleinia
