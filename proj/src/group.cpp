#include "kleinia/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

namespace kleinia {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorKind::SubgroupCapExceeded: return "SubgroupCapExceeded";
    case ErrorKind::RelationCheckFailed: return "RelationCheckFailed";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::NotCyclicQuotient: return "NotCyclicQuotient";
    case ErrorKind::NotShodaPair: return "NotShodaPair";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::IncompleteDecomposition: return "IncompleteDecomposition";
    case ErrorKind::TwistingNotCentral: return "TwistingNotCentral";
    case ErrorKind::UnsupportedCenter: return "UnsupportedCenter";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "?";
}

// ---- ElementSet -----------------------------------------------------------

ElementSet::ElementSet(std::size_t universe) : n_(universe), words_((universe + 63) / 64, 0) {}

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<Element> ElementSet::members() const {
  std::vector<Element> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t x = words_[w];
    while (x) {
      int b = std::countr_zero(x);
      out.push_back(Element(w * 64 + b));
      x &= x - 1;
    }
  }
  return out;
}

bool ElementSet::subset_of(const ElementSet& o) const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~o.words_[w]) return false;
  return true;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
  ElementSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] &= o.words_[w];
  return r;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
  ElementSet r = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) r.words_[w] |= o.words_[w];
  return r;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto w : words_) h = (h ^ std::size_t(w)) * 1099511628211ull + (h >> 29);
  return h;
}

std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
  for (std::size_t w = 0; w < std::min(a.words_.size(), b.words_.size()); ++w) {
    std::uint64_t x = a.words_[w], y = b.words_[w];
    if (x == y) continue;
    // Lowest differing bit decides, unless one list is a prefix of the other.
    std::uint64_t diff = x ^ y;
    int bit = std::countr_zero(diff);
    bool in_a = (x >> bit) & 1u;
    // Does the set missing this bit have any larger element at all?
    const ElementSet& missing = in_a ? b : a;
    bool more = false;
    std::uint64_t rest = missing.words_[w] & ~((std::uint64_t{2} << bit) - 1);
    if (bit == 63) rest = 0;
    if (rest) more = true;
    for (std::size_t v = w + 1; !more && v < missing.words_.size(); ++v) more = missing.words_[v];
    if (!more) return in_a ? std::strong_ordering::greater : std::strong_ordering::less;
    return in_a ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.words_.size() <=> b.words_.size();
}

// ---- FiniteGroup -----------------------------------------------------------

FiniteGroup FiniteGroup::finish(std::size_t n, std::vector<Element> flat, std::string label,
                                std::vector<Element> gens, std::vector<std::string> names,
                                bool validate) {
  auto d = std::make_shared<Data>();
  d->n = n;
  d->table = std::move(flat);
  d->label = std::move(label);
  d->gens = std::move(gens);
  d->gen_names = std::move(names);
  if (d->gen_names.size() != d->gens.size()) {
    d->gen_names.clear();
    for (std::size_t i = 0; i < d->gens.size(); ++i) d->gen_names.push_back("g" + std::to_string(i + 1));
  }
  const auto& t = d->table;
  if (validate) {
    if (n == 0 || t.size() != n * n) fail(ErrorKind::InvalidTable, "table size");
    for (std::size_t a = 0; a < n; ++a) {
      if (t[a] != a || t[a * n] != a) fail(ErrorKind::InvalidTable, "element 0 is not the identity");
      std::vector<char> seen(n, 0);
      for (std::size_t b = 0; b < n; ++b) {
        Element c = t[a * n + b];
        if (c >= n || seen[c]) fail(ErrorKind::InvalidTable, "row is not a permutation");
        seen[c] = 1;
      }
    }
    auto check = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
        fail(ErrorKind::InvalidTable, "not associative");
    };
    if (n <= 64) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c) check(a, b, c);
    } else {
      std::mt19937_64 rng(n * 7919 + 17);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      const std::size_t samples = 10 * n * n;
      for (std::size_t i = 0; i < samples; ++i) check(pick(rng), pick(rng), pick(rng));
    }
  }
  d->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t[a * n + b] == 0) {
        d->inverse[a] = Element(b);
        break;
      }
  d->orders.assign(n, 1);
  for (std::size_t a = 1; a < n; ++a) {
    unsigned k = 1;
    Element x = Element(a);
    while (x != 0) {
      x = t[x * n + a];
      ++k;
    }
    d->orders[a] = k;
  }
  FiniteGroup G;
  G.d_ = std::move(d);
  return G;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Element>> table, std::string label,
                                    std::vector<Element> named_generators,
                                    std::vector<std::string> generator_names) {
  const std::size_t n = table.size();
  if (n > kMaxGroupOrder) fail(ErrorKind::ClosureCapExceeded, "table larger than 4096");
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (auto& row : table) {
    if (row.size() != n) fail(ErrorKind::InvalidTable, "table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  for (auto g : named_generators)
    if (g >= n) fail(ErrorKind::InvalidTable, "generator out of range");
  return finish(n, std::move(flat), std::move(label), std::move(named_generators),
                std::move(generator_names), true);
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens,
                                           std::string label) {
  std::size_t d = 0;
  for (auto& p : gens) d = std::max(d, p.size());
  std::vector<std::vector<int>> g2;
  for (auto& p : gens) {
    std::vector<int> q(d);
    std::vector<char> seen(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      int v = i < p.size() ? p[i] : int(i);
      if (v < 0 || std::size_t(v) >= d || seen[v]) fail(ErrorKind::InvalidParams, "not a permutation");
      seen[v] = 1;
      q[i] = v;
    }
    g2.push_back(std::move(q));
  }
  std::vector<int> id(d);
  std::iota(id.begin(), id.end(), 0);
  auto mul = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
  };
  return closure(g2, id, mul, std::move(label));
}

Element FiniteGroup::pow(Element a, long long e) const {
  long long o = element_order(a);
  e %= o;
  if (e < 0) e += o;
  Element r = 0, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::optional<Element> FiniteGroup::named(const std::string& name) const {
  for (std::size_t i = 0; i < d_->gen_names.size(); ++i)
    if (d_->gen_names[i] == name) return d_->gens[i];
  return std::nullopt;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (auto o : d_->orders) e = std::lcm(e, std::size_t(o));
  return e;
}

bool FiniteGroup::is_abelian() const {
  const std::size_t n = order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (mul(Element(a), Element(b)) != mul(Element(b), Element(a))) return false;
  return true;
}

FiniteGroup FiniteGroup::relabeled(std::string label) const {
  auto d = std::make_shared<Data>(*d_);
  d->label = std::move(label);
  FiniteGroup G;
  G.d_ = std::move(d);
  return G;
}

// ---- subgroup operations ------------------------------------------------

Subgroup whole(const FiniteGroup& G) {
  ElementSet s(G.order());
  for (Element i = 0; i < G.order(); ++i) s.insert(i);
  return Subgroup(G, std::move(s));
}

Subgroup trivial(const FiniteGroup& G) {
  ElementSet s(G.order());
  s.insert(0);
  return Subgroup(G, std::move(s));
}

namespace {

// Extends the closed set `s` (a subgroup) by the generators `gens`.
void close_under(const FiniteGroup& G, ElementSet& s, std::vector<Element>& list,
                 const std::vector<Element>& gens) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (Element g : gens) {
      Element x = G.mul(list[i], g);
      if (!s.contains(x)) {
        s.insert(x);
        list.push_back(x);
      }
    }
  }
}

}  // namespace

Subgroup generated(const FiniteGroup& G, const std::vector<Element>& gens) {
  ElementSet s(G.order());
  s.insert(0);
  std::vector<Element> list{0};
  close_under(G, s, list, gens);
  return Subgroup(G, std::move(s));
}

std::vector<Element> generating_set(const Subgroup& H) {
  const FiniteGroup& G = H.group();
  std::vector<Element> gens;
  ElementSet s(G.order());
  s.insert(0);
  std::vector<Element> list{0};
  // Prefer elements of large order; ties by index.
  auto elems = H.elements();
  std::stable_sort(elems.begin(), elems.end(), [&](Element a, Element b) {
    return G.element_order(a) > G.element_order(b);
  });
  for (Element e : elems) {
    if (s.contains(e)) continue;
    gens.push_back(e);
    close_under(G, s, list, gens);
    if (list.size() == H.order()) break;
  }
  return gens;
}

Subgroup join(const Subgroup& A, const Subgroup& B) {
  if (B.members().subset_of(A.members())) return A;
  if (A.members().subset_of(B.members())) return B;
  auto gens = generating_set(A);
  auto gb = generating_set(B);
  gens.insert(gens.end(), gb.begin(), gb.end());
  return generated(A.group(), gens);
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  return Subgroup(A.group(), A.members() & B.members());
}

Subgroup centralizer(const FiniteGroup& G, const Subgroup& H) {
  auto gens = generating_set(H);
  ElementSet s(G.order());
  for (Element g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (Element h : gens)
      if (G.mul(g, h) != G.mul(h, g)) {
        ok = false;
        break;
      }
    if (ok) s.insert(g);
  }
  return Subgroup(G, std::move(s));
}

Subgroup center(const FiniteGroup& G) { return centralizer(G, whole(G)); }

Subgroup derived_subgroup(const Subgroup& H) {
  const FiniteGroup& G = H.group();
  auto el = H.elements();
  std::vector<Element> comms;
  ElementSet seen(G.order());
  for (Element a : el)
    for (Element b : el) {
      Element c = G.comm(a, b);
      if (!seen.contains(c)) {
        seen.insert(c);
        comms.push_back(c);
      }
    }
  return generated(G, comms);
}

Subgroup derived_subgroup(const FiniteGroup& G) { return derived_subgroup(whole(G)); }

Subgroup conjugate(const Subgroup& H, Element g) {
  const FiniteGroup& G = H.group();
  ElementSet s(G.order());
  for (Element h : H.elements()) s.insert(G.conj(h, g));
  return Subgroup(G, std::move(s));
}

Subgroup normalizer(const FiniteGroup& G, const Subgroup& H) {
  auto gens = generating_set(H);
  ElementSet s(G.order());
  for (Element g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (Element h : gens)
      if (!H.contains(G.conj(h, g))) {
        ok = false;
        break;
      }
    if (ok) s.insert(g);
  }
  return Subgroup(G, std::move(s));
}

Subgroup core(const FiniteGroup& G, const Subgroup& H) {
  ElementSet s = H.members();
  auto hel = H.elements();
  for (Element g = 0; g < G.order(); ++g) {
    ElementSet c(G.order());
    for (Element h : hel) c.insert(G.conj(h, g));
    s = s & c;
  }
  return Subgroup(G, std::move(s));
}

bool is_normal(const Subgroup& H, const Subgroup& in) {
  const FiniteGroup& G = H.group();
  if (!H.members().subset_of(in.members())) return false;
  auto hg = generating_set(H);
  for (Element g : generating_set(in))
    for (Element h : hg)
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

bool is_normal(const FiniteGroup& G, const Subgroup& H) { return is_normal(H, whole(G)); }

bool is_abelian(const Subgroup& H) {
  const FiniteGroup& G = H.group();
  auto gens = generating_set(H);
  for (Element a : gens)
    for (Element b : gens)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

bool is_metabelian(const FiniteGroup& G) { return is_abelian(derived_subgroup(G)); }

bool has_abelian_subgroup_of_index_at_most_2(const FiniteGroup& G) {
  if (G.is_abelian()) return true;
  // Index-2 subgroups are the kernels of the nonzero functionals on G/S,
  // S = <g^2>, an elementary abelian 2-group.
  std::vector<Element> squares;
  for (Element g = 0; g < G.order(); ++g) squares.push_back(G.mul(g, g));
  Quotient q = quotient(G, generated(G, squares));
  const FiniteGroup& Q = q.group;
  auto basis = generating_set(whole(Q));
  const std::size_t r = basis.size();
  std::vector<unsigned> coord(Q.order(), 0);
  std::vector<bool> seen(Q.order(), false);
  seen[0] = true;
  std::vector<Element> done{0};
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t m = done.size();
    for (std::size_t j = 0; j < m; ++j) {
      Element e = Q.mul(done[j], basis[i]);
      if (seen[e]) fail(ErrorKind::Internal, "G/<g^2> basis is not independent");
      seen[e] = true;
      coord[e] = coord[done[j]] | (1u << i);
      done.push_back(e);
    }
  }
  for (unsigned f = 1; f < (1u << r); ++f) {
    ElementSet K(G.order());
    for (Element g = 0; g < G.order(); ++g)
      if (std::popcount(coord[q.projection[g]] & f) % 2 == 0) K.insert(g);
    if (is_abelian(Subgroup(G, K))) return true;
  }
  return false;
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& G) {
  std::vector<std::vector<Element>> out;
  std::vector<char> done(G.order(), 0);
  auto gens = G.named_generators().empty() ? generating_set(whole(G)) : G.named_generators();
  for (Element x = 0; x < G.order(); ++x) {
    if (done[x]) continue;
    std::vector<Element> cls{x};
    done[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Element g : gens) {
        Element y = G.conj(cls[i], g);
        if (!done[y]) {
          done[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

std::size_t rational_class_count(const FiniteGroup& G) {
  // Classes of cyclic subgroups under conjugation.
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::size_t count = 0;
  auto gens = G.named_generators().empty() ? generating_set(whole(G)) : G.named_generators();
  for (Element x = 0; x < G.order(); ++x) {
    Subgroup C = generated(G, {x});
    if (seen.count(C.members())) continue;
    ++count;
    std::vector<ElementSet> orbit{C.members()};
    seen.insert(C.members());
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Element g : gens) {
        Subgroup D = conjugate(Subgroup(G, orbit[i]), g);
        if (seen.insert(D.members()).second) orbit.push_back(D.members());
      }
  }
  return count;
}

namespace {

std::vector<ElementSet> conjugacy_orbit(const FiniteGroup& G, const ElementSet& s,
                                        const std::vector<Element>& gens) {
  std::vector<ElementSet> orbit{s};
  std::unordered_set<ElementSet, ElementSetHash> seen{s};
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (Element g : gens) {
      ElementSet t(G.order());
      for (Element h : orbit[i].members()) t.insert(G.conj(h, g));
      if (seen.insert(t).second) orbit.push_back(std::move(t));
    }
  return orbit;
}

constexpr std::size_t kMaxSubgroupCount = 200000;

}  // namespace

std::vector<std::vector<Subgroup>> subgroup_classes(const FiniteGroup& G) {
  if (G.order() > kMaxLatticeOrder)
    fail(ErrorKind::SubgroupCapExceeded,
         "subgroup lattice of a group of order " + std::to_string(G.order()));
  auto ggens = G.named_generators().empty() ? generating_set(whole(G)) : G.named_generators();
  // Cyclic subgroups, one per distinct subgroup.
  std::vector<Element> cyc_gen;
  {
    std::unordered_set<ElementSet, ElementSetHash> cs;
    for (Element x = 1; x < G.order(); ++x)
      if (cs.insert(generated(G, {x}).members()).second) cyc_gen.push_back(x);
  }
  std::unordered_set<ElementSet, ElementSetHash> all;
  std::vector<std::vector<ElementSet>> classes;
  std::vector<std::vector<Element>> rep_gens;
  auto add_class = [&](const ElementSet& s, std::vector<Element> gens) {
    if (all.count(s)) return;
    auto orbit = conjugacy_orbit(G, s, ggens);
    for (auto& o : orbit) all.insert(o);
    if (all.size() > kMaxSubgroupCount)
      fail(ErrorKind::SubgroupCapExceeded, "too many subgroups");
    classes.push_back(std::move(orbit));
    rep_gens.push_back(std::move(gens));
  };
  add_class(trivial(G).members(), {});
  // Every subgroup J > 1 is <U, x> for a maximal subgroup U of J; U may be
  // replaced by a class representative after conjugating J.
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const ElementSet rep = classes[c][0];
    const auto gens = rep_gens[c];
    for (Element x : cyc_gen) {
      if (rep.contains(x)) continue;
      auto g2 = gens;
      g2.push_back(x);
      Subgroup J = generated(G, g2);
      add_class(J.members(), std::move(g2));
    }
  }
  std::vector<std::vector<Subgroup>> out;
  for (auto& cl : classes) {
    std::vector<Subgroup> v;
    for (auto& s : cl) v.emplace_back(G, s);
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
  std::vector<Subgroup> out;
  for (auto& cl : subgroup_classes(G))
    for (auto& s : cl) out.push_back(s);
  return out;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& G) {
  auto ggens = G.named_generators().empty() ? generating_set(whole(G)) : G.named_generators();
  auto classes = conjugacy_classes(G);
  // Normal closures of single classes, then closure under products.
  std::vector<Subgroup> closures;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  for (auto& cl : classes) {
    Subgroup N = generated(G, cl);
    if (seen.insert(N.members()).second) closures.push_back(N);
  }
  std::vector<Subgroup> all = closures;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < closures.size(); ++j) {
      if (closures[j].members().subset_of(all[i].members())) continue;
      Subgroup J = join(all[i], closures[j]);
      if (seen.insert(J.members()).second) {
        all.push_back(J);
        if (all.size() > kMaxSubgroupCount)
          fail(ErrorKind::SubgroupCapExceeded, "too many normal subgroups");
      }
    }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Subgroup> subgroups_containing(const FiniteGroup& G, const Subgroup& N) {
  Quotient q = quotient(G, N);
  std::vector<Subgroup> out;
  for (const Subgroup& U : all_subgroups(q.group)) {
    ElementSet s(G.order());
    for (Element x = 0; x < G.order(); ++x)
      if (U.contains(q.projection[x])) s.insert(x);
    out.emplace_back(G, std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Quotient quotient(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) fail(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
  const std::size_t n = G.order();
  std::vector<Element> proj(n, kNone), section;
  auto nel = N.elements();
  for (Element x = 0; x < n; ++x) {
    if (proj[x] != kNone) continue;
    Element id = Element(section.size());
    section.push_back(x);
    for (Element h : nel) proj[G.mul(x, h)] = id;
  }
  const std::size_t m = section.size();
  std::vector<std::vector<Element>> table(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a][b] = proj[G.mul(section[a], section[b])];
  std::vector<Element> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < G.named_generators().size(); ++i) {
    gens.push_back(proj[G.named_generators()[i]]);
    names.push_back(G.generator_names()[i]);
  }
  Quotient q;
  q.group = FiniteGroup::from_table(std::move(table), G.label() + "/N", std::move(gens),
                                    std::move(names));
  q.projection = std::move(proj);
  q.section = std::move(section);
  return q;
}

Embedded as_group(const Subgroup& H, std::string label) {
  const FiniteGroup& G = H.group();
  auto el = H.elements();
  std::vector<Element> from(G.order(), kNone);
  for (std::size_t i = 0; i < el.size(); ++i) from[el[i]] = Element(i);
  std::vector<std::vector<Element>> table(el.size(), std::vector<Element>(el.size()));
  for (std::size_t a = 0; a < el.size(); ++a)
    for (std::size_t b = 0; b < el.size(); ++b) table[a][b] = from[G.mul(el[a], el[b])];
  std::vector<Element> gens;
  for (Element g : generating_set(H)) gens.push_back(from[g]);
  Embedded e;
  e.group = FiniteGroup::from_table(std::move(table), label.empty() ? G.label() + "_sub" : label,
                                    std::move(gens));
  e.to_parent = std::move(el);
  e.from_parent = std::move(from);
  return e;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B, std::string label) {
  const std::size_t na = A.order(), nb = B.order();
  if (na * nb > kMaxGroupOrder) fail(ErrorKind::ClosureCapExceeded, "direct product too large");
  std::vector<std::vector<Element>> table(na * nb, std::vector<Element>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      table[x][y] = A.mul(Element(x / nb), Element(y / nb)) * Element(nb) +
                    B.mul(Element(x % nb), Element(y % nb));
  std::vector<Element> gens;
  std::vector<std::string> names;
  std::set<std::string> used;
  for (std::size_t i = 0; i < A.named_generators().size(); ++i) {
    gens.push_back(A.named_generators()[i] * Element(nb));
    names.push_back(A.generator_names()[i]);
    used.insert(names.back());
  }
  for (std::size_t i = 0; i < B.named_generators().size(); ++i) {
    gens.push_back(B.named_generators()[i]);
    std::string nm = B.generator_names()[i];
    while (used.count(nm)) nm += "'";
    used.insert(nm);
    names.push_back(nm);
  }
  if (label.empty()) label = A.label() + "x" + B.label();
  return FiniteGroup::from_table(std::move(table), std::move(label), std::move(gens),
                                 std::move(names));
}

std::vector<Element> extend_homomorphism(const FiniteGroup& G, const std::vector<Element>& gens,
                                         const FiniteGroup& H, const std::vector<Element>& images) {
  std::vector<Element> img(G.order(), kNone);
  img[0] = 0;
  std::vector<Element> list{0};
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Element x = G.mul(list[i], gens[s]);
      Element y = H.mul(img[list[i]], images[s]);
      if (img[x] == kNone) {
        img[x] = y;
        list.push_back(x);
      } else if (img[x] != y) {
        return {};
      }
    }
  if (list.size() != G.order()) return {};
  return img;
}

namespace {

struct Invariants {
  std::size_t order, center, derived, classes;
  std::vector<std::size_t> order_hist;
  bool operator==(const Invariants&) const = default;
};

Invariants invariants(const FiniteGroup& G) {
  Invariants inv{G.order(), center(G).order(), derived_subgroup(G).order(),
                 conjugacy_classes(G).size(), {}};
  inv.order_hist.assign(G.order() + 1, 0);
  for (Element x = 0; x < G.order(); ++x) inv.order_hist[G.element_order(x)]++;
  return inv;
}

// Search for images of gens (in G) in H defining a surjective homomorphism;
// injective as well if `iso`.  The partial map is extended generator by
// generator over the subgroup generated so far, so a bad image is rejected
// as soon as a relation among the assigned generators fails.
bool search_epi(const FiniteGroup& G, const FiniteGroup& H, bool iso) {
  auto gens = generating_set(whole(G));
  const std::size_t r = gens.size();
  std::vector<Element> images(r);
  std::vector<Element> class_reps;
  for (auto& c : conjugacy_classes(H)) class_reps.push_back(c.front());
  std::vector<Element> everything(H.order());
  std::iota(everything.begin(), everything.end(), 0);

  // Extends map (defined on the closure list) by generator i with image y.
  auto extend = [&](std::vector<Element>& img, std::vector<Element>& list, std::size_t i) {
    for (std::size_t p = 0; p < list.size(); ++p)
      for (std::size_t s = 0; s <= i; ++s) {
        Element x = G.mul(list[p], gens[s]);
        Element y = H.mul(img[list[p]], images[s]);
        if (img[x] == kNone) {
          img[x] = y;
          list.push_back(x);
        } else if (img[x] != y) {
          return false;
        }
      }
    return true;
  };
  std::function<bool(std::size_t, const std::vector<Element>&, const std::vector<Element>&)> rec =
      [&](std::size_t i, const std::vector<Element>& img, const std::vector<Element>& list) -> bool {
    if (i == r) {
      std::vector<char> hit(H.order(), 0);
      std::size_t cnt = 0;
      for (Element x : list)
        if (!hit[img[x]]) hit[img[x]] = 1, ++cnt;
      return cnt == H.order();
    }
    unsigned og = G.element_order(gens[i]);
    const auto& cand = i == 0 ? class_reps : everything;
    for (Element y : cand) {
      unsigned oy = H.element_order(y);
      if (iso ? oy != og : og % oy != 0) continue;
      images[i] = y;
      auto img2 = img;
      auto list2 = list;
      if (!extend(img2, list2, i)) continue;
      if (iso) {
        std::vector<char> hit(H.order(), 0);
        bool inj = true;
        for (Element x : list2)
          if (hit[img2[x]]++) { inj = false; break; }
        if (!inj) continue;
      }
      if (rec(i + 1, img2, list2)) return true;
    }
    return false;
  };
  std::vector<Element> img0(G.order(), kNone);
  img0[0] = 0;
  return rec(0, img0, {0});
}

}  // namespace

bool epimorphism_exists(const FiniteGroup& G, const FiniteGroup& H) {
  if (G.order() % H.order() != 0) return false;
  if (H.order() == 1) return true;
  return search_epi(G, H, false);
}

bool isomorphic(const FiniteGroup& G, const FiniteGroup& H) {
  if (G.order() != H.order()) return false;
  if (!(invariants(G) == invariants(H))) return false;
  return search_epi(G, H, true);
}

}  // namespace kleinia
