#include "kleinia/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kleinia/errors.hpp"

namespace kleinia {

std::vector<long> rational_prime_divisors(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::vector<long> ps;
  for (long p = 2; mpz_class(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) {
    if (!n.fits_slong_p()) fail(ErrorKind::Internal, "prime factor too large");
    ps.push_back(n.get_si());
  }
  return ps;
}

namespace {

// Integer in the same square class.
mpz_class integral_class(const mpq_class& x) { return x.get_num() * x.get_den(); }

int split_off(mpz_class& x, long p) {
  int v = 0;
  while (x % p == 0) x /= p, ++v;
  return v;
}

int mod8(const mpz_class& x) {
  mpz_class r = x % 8;
  if (r < 0) r += 8;
  return int(r.get_si());
}

}  // namespace

int hilbert_symbol_rational(const mpq_class& a, const mpq_class& b, long place) {
  if (a == 0 || b == 0) fail(ErrorKind::InvalidParams, "Hilbert symbol of zero");
  if (place == 0) return a < 0 && b < 0 ? -1 : 1;
  mpz_class u = integral_class(a), v = integral_class(b);
  const long p = place;
  int al = split_off(u, p), be = split_off(v, p);
  if (p == 2) {
    int um = mod8(u), vm = mod8(v);
    int eu = ((um - 1) / 2) & 1, ev = ((vm - 1) / 2) & 1;
    int wu = ((um * um - 1) / 8) & 1, wv = ((vm * vm - 1) / 8) & 1;
    return ((eu * ev + al * wv + be * wu) & 1) ? -1 : 1;
  }
  mpz_class P = p;
  int s = 1;
  if ((al * be) & 1 && ((p - 1) / 2) & 1) s = -s;
  if (be & 1) s *= mpz_legendre(u.get_mpz_t(), P.get_mpz_t());
  if (al & 1) s *= mpz_legendre(v.get_mpz_t(), P.get_mpz_t());
  return s;
}

std::vector<long> rational_ramification(const mpq_class& a, const mpq_class& b) {
  std::vector<long> out;
  if (hilbert_symbol_rational(a, b, 0) == -1) out.push_back(0);
  for (long p : rational_prime_divisors(2 * integral_class(a) * integral_class(b)))
    if (hilbert_symbol_rational(a, b, p) == -1) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

const char* split_status_name(SplitStatus s) {
  switch (s) {
    case SplitStatus::Split: return "split";
    case SplitStatus::Division: return "division";
    case SplitStatus::Unknown: return "unknown";
  }
  return "?";
}

QuadElem to_quadratic(const FieldDescriptor& F, const CyclotomicElement& x) {
  CyclotomicElement r = quadratic_sqrt(F);
  CyclotomicElement xt = x.galois(nontrivial_on(F));
  mpq_class p = (x + xt).scaled(mpq_class(1, 2)).rational_value();
  mpq_class q = ((x - xt) * r).rational_value() / (2 * F.quadratic_d);
  QuadElem e{p, q};
  if (!(from_quadratic(F, e) == x)) fail(ErrorKind::Internal, "element is not in the quadratic field");
  return e;
}

CyclotomicElement from_quadratic(const FieldDescriptor& F, const QuadElem& x) {
  return CyclotomicElement::rational(F.conductor, x.p) + quadratic_sqrt(F).scaled(x.q);
}

ResolvedAlgebra quaternion_from_crossed_product(const CrossedProductDescriptor& d) {
  ResolvedAlgebra r;
  r.n = d.n;
  r.inner_degree = d.quotient_elems.size();
  const int k = int(d.k);
  if (r.inner_degree == 1) {
    r.kind = ResolvedAlgebra::Kind::MatrixOverCyclotomic;
    r.center = fixed_field(k, {});
    return r;
  }
  if (r.inner_degree > 2) {
    r.kind = ResolvedAlgebra::Kind::HighDegreeOpaque;
    std::vector<long> gens(d.action.begin(), d.action.end());
    r.center = fixed_field(k, gens);
    return r;
  }
  r.kind = ResolvedAlgebra::Kind::Quaternion;
  const long s = d.action[1];
  r.center = fixed_field(k, {s});
  CyclotomicElement xi = CyclotomicElement::zeta(k, 1);
  CyclotomicElement alpha = xi - xi.galois(s);
  CyclotomicElement a = alpha * alpha;
  CyclotomicElement b = CyclotomicElement::zeta(k, d.twisting[1][1]);
  if (!(b.galois(s) == b)) fail(ErrorKind::TwistingNotCentral, "u^2 = " + b.str() + " is not central");
  if (!(a.galois(s) == a) || a.is_zero()) fail(ErrorKind::Internal, "alpha^2 is not in the centre");
  r.quaternion = QuaternionDescriptor{r.center, a, b};
  return r;
}

bool certificate_holds(const QuaternionDescriptor& q, const SplitCertificate& c) {
  if (c.x.is_zero() && c.y.is_zero()) return false;
  return q.a * c.x * c.x + q.b * c.y * c.y == c.z * c.z;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::string qstr(const mpq_class& x) { return x.get_str(); }

std::optional<SplitCertificate> rational_certificate(const QuaternionDescriptor& q, long max_bound) {
  const mpq_class A = q.a.rational_value(), B = q.b.rational_value();
  const int k = q.a.conductor();
  for (long bound = 1; bound <= max_bound; bound *= 2)
    for (long x = 0; x <= bound; ++x)
      for (long y = -bound; y <= bound; ++y) {
        if (x == 0 && y <= 0) continue;
        auto z = rational_sqrt(A * x * x + B * y * y);
        if (!z) continue;
        SplitCertificate c{CyclotomicElement::rational(k, x), CyclotomicElement::rational(k, y),
                           CyclotomicElement::rational(k, *z), ""};
        c.text = "X=" + std::to_string(x) + ", Y=" + std::to_string(y) + ", Z=" + qstr(*z);
        return c;
      }
  return std::nullopt;
}

// a or b a rational square c^2: (X, Y, Z) = (1/c, 0, 1) or (0, 1/c, 1).
std::optional<SplitCertificate> square_certificate(const QuaternionDescriptor& q) {
  const int k = q.a.conductor();
  for (int which = 0; which < 2; ++which) {
    const CyclotomicElement& v = which ? q.b : q.a;
    if (!v.is_rational()) continue;
    auto c = rational_sqrt(v.rational_value());
    if (!c) continue;
    mpq_class inv = 1 / *c;
    auto one = CyclotomicElement::rational(k, 1), zero = CyclotomicElement::rational(k, 0);
    auto w = CyclotomicElement::rational(k, inv);
    SplitCertificate cert = which ? SplitCertificate{zero, w, one, ""} : SplitCertificate{w, zero, one, ""};
    cert.text = std::string(which ? "X=0, Y=" : "X=") + qstr(inv) + (which ? ", Z=1" : ", Y=0, Z=1");
    return cert;
  }
  return std::nullopt;
}

std::optional<SplitCertificate> quadratic_certificate(const QuaternionDescriptor& q, long max_bound) {
  const FieldDescriptor& F = q.center;
  QuadField K(F.quadratic_d);
  const QuadElem a = to_quadratic(F, q.a), b = to_quadratic(F, q.b);
  for (long bound = 1; bound <= max_bound; bound *= 2) {
    std::vector<QuadElem> box;
    for (long u = -bound; u <= bound; ++u)
      for (long v = -bound; v <= bound; ++v) box.push_back(K.from_coords(u, v));
    std::vector<QuadElem> sq(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) sq[i] = K.mul(box[i], box[i]);
    for (std::size_t i = 0; i < box.size(); ++i)
      for (std::size_t j = 0; j < box.size(); ++j) {
        if (K.is_zero(box[i]) && K.is_zero(box[j])) continue;
        QuadElem w = K.add(K.mul(a, sq[i]), K.mul(b, sq[j]));
        auto z = K.sqrt(w);
        if (!z) continue;
        SplitCertificate c{from_quadratic(F, box[i]), from_quadratic(F, box[j]), from_quadratic(F, *z), ""};
        c.text = "X=" + K.str(box[i]) + ", Y=" + K.str(box[j]) + ", Z=" + K.str(*z);
        return c;
      }
  }
  return std::nullopt;
}

// Least representative of each coset of the fixing group: the real
// embeddings of a totally real centre.
std::vector<long> embedding_reps(const FieldDescriptor& F) {
  std::vector<long> reps;
  std::vector<char> seen(std::max(F.conductor, 2), 0);
  for (long u : units_mod(F.conductor)) {
    if (seen[u]) continue;
    reps.push_back(u);
    for (long s : F.fixing) seen[(u * s) % std::max(F.conductor, 1)] = 1;
  }
  return reps;
}

// Small canonical pair (a,b) over Q with the given ramification set.
std::string canonical_rational_pair(const std::vector<long>& ram) {
  std::vector<long> cand;
  for (long m = 1; m <= 200; ++m) {
    bool sqfree = true;
    for (long p = 2; p * p <= m; ++p)
      if (m % (p * p) == 0) sqfree = false;
    if (!sqfree) continue;
    cand.push_back(-m);
    cand.push_back(m);
  }
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i; j < cand.size(); ++j)
      if (rational_ramification(cand[i], cand[j]) == ram)
        return "(" + std::to_string(cand[i]) + "," + std::to_string(cand[j]) + " / Q)";
  std::string s = "(ramified at ";
  for (std::size_t i = 0; i < ram.size(); ++i) s += (i ? "," : "") + (ram[i] ? std::to_string(ram[i]) : "inf");
  return s + " / Q)";
}

bool hamiltonian_pair(const QuaternionDescriptor& q) {
  const FieldDescriptor& F = q.center;
  if (F.degree == 1) {
    return rational_ramification(q.a.rational_value(), q.b.rational_value()) == std::vector<long>{0, 2};
  }
  if (F.degree != 2 || !F.totally_real) return false;
  QuadField K(F.quadratic_d);
  QuadElem a = to_quadratic(F, q.a), b = to_quadratic(F, q.b);
  QuadElem mab = K.neg(K.mul(a, b));
  // (x,y) with -x and -y squares is (-1,-1); (a,b) = (a,-ab) = (b,-ab).
  auto neg_square = [&](const QuadElem& x) { return K.is_square(K.neg(x)); };
  return (neg_square(a) && neg_square(b)) || (neg_square(a) && neg_square(mab)) ||
         (neg_square(b) && neg_square(mab));
}

std::string pair_text(const QuaternionDescriptor& q) {
  const FieldDescriptor& F = q.center;
  std::string a, b;
  if (F.degree == 1) a = qstr(q.a.rational_value()), b = qstr(q.b.rational_value());
  else if (F.degree == 2) {
    QuadField K(F.quadratic_d);
    a = K.str(to_quadratic(F, q.a)), b = K.str(to_quadratic(F, q.b));
  } else
    a = q.a.str(), b = q.b.str();
  return "(" + a + "," + b + " / " + F.name() + ")";
}

}  // namespace

QuaternionAnalysis analyze_quaternion(const QuaternionDescriptor& q) {
  const FieldDescriptor& F = q.center;
  if (q.a.is_zero() || q.b.is_zero()) fail(ErrorKind::InvalidParams, "quaternion parameters must be nonzero");
  if (!in_field(F, q.a) || !in_field(F, q.b)) fail(ErrorKind::InvalidParams, "parameters are not in the centre");
  QuaternionAnalysis r;
  r.r = F.r;
  r.s = F.s;
  std::vector<std::string> real_ram;
  if (F.totally_real) {
    for (long c : embedding_reps(F)) {
      int sa = real_embedding_sign(q.a, c), sb = real_embedding_sign(q.b, c);
      if (sa < 0 && sb < 0) {
        ++r.r1;
        real_ram.push_back(F.degree == 1 ? "inf" : "inf_" + std::to_string(c));
      }
    }
    r.r2 = r.r - r.r1;
    r.totally_definite = r.r1 == r.r;
  }

  if (F.degree == 1) {
    auto ram = rational_ramification(q.a.rational_value(), q.b.rational_value());
    for (long p : ram)
      if (p) r.ramified.push_back(std::to_string(p));
    r.status = ram.empty() ? SplitStatus::Split : SplitStatus::Division;
    if (r.status == SplitStatus::Split) {
      r.certificate = rational_certificate(q, 1024);
      if (!r.certificate) fail(ErrorKind::Internal, "split over Q but no certificate within the search box");
      r.name = "M2(Q)";
    } else {
      r.name = ram == std::vector<long>{0, 2} ? "H(Q)" : canonical_rational_pair(ram);
    }
  } else if (F.listed_imaginary()) {
    QuadField K(F.quadratic_d);
    QuadElem a = to_quadratic(F, q.a), b = to_quadratic(F, q.b);
    int product = 1;
    for (auto& P : relevant_primes(K, a, b)) {
      int s = local_symbol(K, a, b, P);
      product *= s;
      if (s == -1) r.ramified.push_back(P.name);
    }
    // no real places, so the finite symbols must multiply to 1
    if (product != 1) fail(ErrorKind::Internal, "reciprocity fails for " + pair_text(q));
    r.status = r.ramified.empty() ? SplitStatus::Split : SplitStatus::Division;
    if (r.status == SplitStatus::Split) {
      r.certificate = quadratic_certificate(q, 16);
      if (!r.certificate) fail(ErrorKind::Internal, "split but no certificate within the search box");
      r.name = "M2(" + F.name() + ")";
    } else {
      r.name = pair_text(q);
    }
  } else {
    if (r.r1 > 0) r.status = SplitStatus::Division;
    else if ((r.certificate = square_certificate(q))) r.status = SplitStatus::Split;
    else if (F.degree == 2 && (r.certificate = quadratic_certificate(q, 4)))
      r.status = SplitStatus::Split;
    else if (q.a.is_rational() && q.b.is_rational() && (r.certificate = rational_certificate(q, 64)))
      r.status = SplitStatus::Split;
    if (r.status == SplitStatus::Split) r.name = "M2(" + F.name() + ")";
    else if (r.totally_definite && hamiltonian_pair(q)) r.hamiltonian = true, r.name = "H(" + F.name() + ")";
    else r.name = pair_text(q);
  }
  if (F.degree == 1 && r.status == SplitStatus::Division && r.totally_definite)
    r.hamiltonian = hamiltonian_pair(q);
  for (auto& s : real_ram) r.ramified.push_back(s);

  if (r.status == SplitStatus::Split) r.key = "M2|" + F.key();
  else if (r.hamiltonian) r.key = "H|" + F.key();
  else if (r.status == SplitStatus::Division && (F.degree == 1 || F.listed_imaginary()))
    r.key = "D|" + F.key() + "|" + join(r.ramified);
  else r.key = "?|" + F.key() + "|" + q.a.str() + "|" + q.b.str();
  return r;
}

bool is_split(const QuaternionDescriptor& q) {
  if (q.center.degree != 1 && !q.center.listed_imaginary())
    fail(ErrorKind::UnsupportedCenter, "split test supports Q, Q(i), Q(sqrt(-2)), Q(sqrt(-3)); got " +
                                           q.center.name());
  return analyze_quaternion(q).status == SplitStatus::Split;
}

bool is_totally_definite(const QuaternionDescriptor& q) {
  if (!q.center.totally_real) return false;
  for (long c : embedding_reps(q.center))
    if (real_embedding_sign(q.a, c) >= 0 || real_embedding_sign(q.b, c) >= 0) return false;
  return true;
}

}  // namespace kleinia
