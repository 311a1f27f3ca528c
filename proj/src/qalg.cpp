#include "kleinia/qalg.hpp"

#include <algorithm>
#include <set>

namespace kleinia {

AlgebraElement AlgebraElement::basis(const FiniteGroup& G, Element g, const mpq_class& c) {
  AlgebraElement a(G);
  a.add_term(g, c);
  return a;
}

mpq_class AlgebraElement::coeff(Element g) const {
  auto it = c_.find(g);
  return it == c_.end() ? mpq_class(0) : it->second;
}

void AlgebraElement::add_term(Element g, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = c_.emplace(g, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

void AlgebraElement::same_group(const AlgebraElement& o) const {
  if (!g_.same_as(o.g_)) fail(ErrorKind::GroupMismatch, "algebra elements over different groups");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  same_group(o);
  AlgebraElement r = *this;
  for (auto& [g, c] : o.c_) r.add_term(g, c);
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  same_group(o);
  AlgebraElement r = *this;
  for (auto& [g, c] : o.c_) r.add_term(g, -c);
  return r;
}

AlgebraElement AlgebraElement::scaled(const mpq_class& q) const {
  AlgebraElement r(g_);
  if (q == 0) return r;
  for (auto& [g, c] : c_) r.c_.emplace(g, c * q);
  return r;
}

AlgebraElement AlgebraElement::conjugate(Element x) const {
  AlgebraElement r(g_);
  for (auto& [g, c] : c_) r.c_.emplace(g_.conj(g, x), c);
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const { return multiply(*this, o); }

namespace {

struct Scaled {
  mpz_class den = 1;
  std::vector<Element> idx;
  std::vector<mpz_class> num;
  std::size_t max_bits = 0;
  bool small = true;
};

Scaled scale(const AlgebraElement& a) {
  Scaled s;
  for (auto& [g, c] : a.terms()) mpz_lcm(s.den.get_mpz_t(), s.den.get_mpz_t(), c.get_den_mpz_t());
  for (auto& [g, c] : a.terms()) {
    mpz_class v = c.get_num() * (s.den / c.get_den());
    s.max_bits = std::max<std::size_t>(s.max_bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    if (!v.fits_slong_p()) s.small = false;
    s.idx.push_back(g);
    s.num.push_back(std::move(v));
  }
  return s;
}

std::size_t bitlen(std::size_t x) {
  std::size_t b = 0;
  while (x) ++b, x >>= 1;
  return b;
}

}  // namespace

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.group().same_as(b.group()))
    fail(ErrorKind::GroupMismatch, "algebra elements over different groups");
  const FiniteGroup& G = a.group();
  AlgebraElement r(G);
  if (a.is_zero() || b.is_zero()) return r;
  Scaled sa = scale(a), sb = scale(b);
  const std::size_t n = G.order();
  const mpz_class den = sa.den * sb.den;
  std::vector<Element> touched;
  std::vector<char> mark(n, 0);
  auto touch = [&](Element g) {
    if (!mark[g]) mark[g] = 1, touched.push_back(g);
  };
  // Integer products fit in 128 bits unless the coefficients are huge.
  const bool fast = sa.small && sb.small &&
                    sa.max_bits + sb.max_bits + bitlen(std::min(sa.idx.size(), sb.idx.size())) < 125;
  if (fast) {
    std::vector<__int128> acc(n, 0);
    std::vector<long> na(sa.num.size()), nb(sb.num.size());
    for (std::size_t i = 0; i < na.size(); ++i) na[i] = sa.num[i].get_si();
    for (std::size_t j = 0; j < nb.size(); ++j) nb[j] = sb.num[j].get_si();
    for (std::size_t i = 0; i < na.size(); ++i)
      for (std::size_t j = 0; j < nb.size(); ++j) {
        Element g = G.mul(sa.idx[i], sb.idx[j]);
        acc[g] += (__int128)na[i] * nb[j];
        touch(g);
      }
    std::sort(touched.begin(), touched.end());
    for (Element g : touched) {
      __int128 v = acc[g];
      if (v == 0) continue;
      bool neg = v < 0;
      unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
      mpz_class z = mpz_class((unsigned long)(u >> 64)) << 64;
      z += mpz_class((unsigned long)(u & ~0ul));
      if (neg) z = -z;
      mpq_class q(z, den);
      q.canonicalize();
      r.add_term(g, q);
    }
    return r;
  }
  std::vector<mpz_class> acc(n);
  for (std::size_t i = 0; i < sa.idx.size(); ++i)
    for (std::size_t j = 0; j < sb.idx.size(); ++j) {
      Element g = G.mul(sa.idx[i], sb.idx[j]);
      acc[g] += sa.num[i] * sb.num[j];
      touch(g);
    }
  std::sort(touched.begin(), touched.end());
  for (Element g : touched) {
    if (acc[g] == 0) continue;
    mpq_class q(acc[g], den);
    q.canonicalize();
    r.add_term(g, q);
  }
  return r;
}

AlgebraElement hat(const Subgroup& H) {
  AlgebraElement a(H.group());
  mpq_class c(1, H.order());
  for (Element h : H.elements()) a.add_term(h, c);
  return a;
}

Element cyclic_generator(const Subgroup& K, const Subgroup& H) {
  const FiniteGroup& G = K.group();
  const std::size_t k = K.order() / H.order();
  for (Element x : K.elements()) {
    std::size_t j = 1;
    Element y = x;
    while (!H.contains(y)) {
      y = G.mul(y, x);
      ++j;
    }
    if (j == k) return x;
  }
  fail(ErrorKind::NotCyclicQuotient, "K/H is not cyclic");
}

AlgebraElement epsilon(const Subgroup& K, const Subgroup& H) {
  if (!H.members().subset_of(K.members()) || !is_normal(H, K))
    fail(ErrorKind::NotCyclicQuotient, "H is not normal in K");
  if (K.order() == H.order()) return hat(K);
  const FiniteGroup& G = K.group();
  const std::size_t k = K.order() / H.order();
  Element x = cyclic_generator(K, H);
  const AlgebraElement hH = hat(H);
  AlgebraElement e = AlgebraElement::one(G);
  std::size_t m = k;
  for (std::size_t p = 2; p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    // L/H is the subgroup of order p of the cyclic group K/H.
    ElementSet L = H.members();
    Element y = G.pow(x, long(k / p));
    Element cur = 0;
    for (std::size_t i = 1; i < p; ++i) {
      cur = G.mul(cur, y);
      for (Element h : H.elements()) L.insert(G.mul(cur, h));
    }
    e = e * (hH - hat(Subgroup(G, L)));
  }
  return e;
}

bool is_central(const AlgebraElement& a) {
  const FiniteGroup& G = a.group();
  auto gens = G.named_generators().empty() ? generating_set(whole(G)) : G.named_generators();
  for (Element g : gens)
    if (!(a.conjugate(g) == a)) return false;
  return true;
}

bool is_idempotent(const AlgebraElement& a) { return a * a == a; }

AlgebraElement conjugate_sum(const FiniteGroup& G, const AlgebraElement& eps,
                             const Subgroup& stabilizer) {
  std::set<AlgebraElement> seen;
  AlgebraElement sum(G);
  ElementSet covered(G.order());
  auto st = stabilizer.elements();
  for (Element g = 0; g < G.order(); ++g) {
    if (covered.contains(g)) continue;
    for (Element s : st) covered.insert(G.mul(s, g));
    AlgebraElement c = eps.conjugate(g);
    if (seen.insert(c).second) sum = sum + c;
  }
  return sum;
}

}  // namespace kleinia
