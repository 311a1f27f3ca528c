#include "kleinia/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "kleinia/errors.hpp"

namespace kleinia {

namespace {
mpq_class half(const mpz_class& x) {
  mpq_class r(x, 2);
  r.canonicalize();
  return r;
}
}  // namespace

QuadField::QuadField(long D) : d_(D) {
  if (D == 0 || D == 1) fail(ErrorKind::InvalidParams, "quadratic field needs squarefree D != 0, 1");
  for (long p = 2; p * p <= std::labs(D); ++p)
    if (D % (p * p) == 0) fail(ErrorKind::InvalidParams, "D is not squarefree");
}

QuadElem QuadField::mul(const QuadElem& a, const QuadElem& b) const {
  return {a.p * b.p + d_ * a.q * b.q, a.p * b.q + a.q * b.p};
}

QuadElem QuadField::inv(const QuadElem& a) const {
  mpq_class n = norm(a);
  if (n == 0) fail(ErrorKind::InvalidParams, "inverse of zero");
  return {a.p / n, -a.q / n};
}

std::pair<mpz_class, mpz_class> QuadField::coords(const QuadElem& a) const {
  // one_mod_4: p + q sqrt D = (p - q) + 2q w
  mpq_class u = one_mod_4() ? mpq_class(a.p - a.q) : a.p;
  mpq_class v = one_mod_4() ? mpq_class(2 * a.q) : a.q;
  if (u.get_den() != 1 || v.get_den() != 1) fail(ErrorKind::Internal, "element is not integral");
  return {u.get_num(), v.get_num()};
}

QuadElem QuadField::from_coords(const mpz_class& u, const mpz_class& v) const {
  if (one_mod_4()) return {mpq_class(u) + half(v), half(v)};
  return {mpq_class(u), mpq_class(v)};
}

bool QuadField::is_integral(const QuadElem& a) const {
  mpq_class u = one_mod_4() ? mpq_class(a.p - a.q) : a.p;
  mpq_class v = one_mod_4() ? mpq_class(2 * a.q) : a.q;
  return u.get_den() == 1 && v.get_den() == 1;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& x) {
  if (x < 0) return std::nullopt;
  mpz_class n = sqrt(x.get_num()), d = sqrt(x.get_den());
  if (n * n != x.get_num() || d * d != x.get_den()) return std::nullopt;
  return mpq_class(n, d);
}

std::optional<QuadElem> QuadField::sqrt(const QuadElem& a) const {
  if (a.q == 0) {
    if (auto r = rational_sqrt(a.p)) return QuadElem{*r, 0};
    if (auto r = rational_sqrt(a.p / d_)) return QuadElem{0, *r};
    return std::nullopt;
  }
  // (s + t sqrt D)^2 = a forces s^2 - D t^2 = +-sqrt(N(a)) and s^2 = (p +- n)/2.
  auto n = rational_sqrt(norm(a));
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    mpq_class s2 = (a.p + sign * *n) / 2;
    auto s = rational_sqrt(s2);
    if (!s || *s == 0) continue;
    QuadElem r{*s, a.q / (2 * *s)};
    if (mul(r, r) == a) return r;
  }
  return std::nullopt;
}

std::string QuadField::str(const QuadElem& a) const {
  std::ostringstream os;
  std::string root = d_ == -1 ? "i" : "sqrt(" + std::to_string(d_) + ")";
  if (a.q == 0) {
    os << a.p;
    return os.str();
  }
  if (a.p != 0) os << a.p << (a.q < 0 ? "-" : "+");
  else if (a.q < 0) os << "-";
  mpq_class c = abs(a.q);
  if (c != 1) os << c << "*";
  os << root;
  return os.str();
}

namespace {

bool supported(const QuadField& F) { return F.D() == -1 || F.D() == -2 || F.D() == -3; }

std::vector<QuadElem> units(const QuadField& F) {
  if (F.D() == -1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  if (F.D() == -3) {
    std::vector<QuadElem> u;
    for (int s : {1, -1}) {
      u.push_back({s, 0});
      u.push_back({half(-s), half(s)});
      u.push_back({half(-s), half(-s)});
    }
    return u;
  }
  return {{1, 0}, {-1, 0}};
}

// Associate of least argument in [0, 2 pi).
QuadElem canonical_associate(const QuadField& F, const QuadElem& x) {
  const double root = std::sqrt(double(std::labs(F.D())));
  QuadElem best;
  double best_arg = 10;
  for (auto& u : units(F)) {
    QuadElem y = F.mul(u, x);
    double arg = std::atan2(y.q.get_d() * root, y.p.get_d());
    if (arg < -1e-12) arg += 2 * M_PI;
    if (arg < best_arg - 1e-9) best_arg = arg, best = y;
  }
  return best;
}

bool divides(const QuadField& F, const QuadElem& pi, const QuadElem& x) {
  return F.is_integral(F.div(x, pi));
}

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = (__int128)r * b % p;
    b = (__int128)b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

long modp(const mpq_class& x, long p) {
  mpz_class n = x.get_num() % p, d = x.get_den() % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0) fail(ErrorKind::Internal, "denominator divisible by p");
  mpz_class di;
  mpz_invert(di.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
  return mpz_class(n * di % p).get_si();
}

// Residue field F_q, q = p or p^2 = F_p[s]/(s^2 - D).
struct Residue {
  long p;
  int f;
  long D;
  long r;  // image of sqrt D when f = 1
  using E = std::pair<long, long>;
  E of(const QuadElem& x) const {
    if (f == 1) return {(modp(x.p, p) + (__int128)modp(x.q, p) * r) % p, 0};
    return {modp(x.p, p), modp(x.q, p)};
  }
  E mul(E a, E b) const {
    long Dm = ((D % p) + p) % p;
    long u = ((__int128)a.first * b.first + (__int128)a.second * b.second % p * Dm) % p;
    long v = ((__int128)a.first * b.second + (__int128)a.second * b.first) % p;
    return {u, v};
  }
  E pow(E a, long long e) const {
    E r{1, 0};
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  E inv(E a) const {
    long long q = f == 1 ? p : (long long)p * p;
    return pow(a, q - 2);
  }
  int chi(E a) const {
    long long q = f == 1 ? p : (long long)p * p;
    E r = pow(a, (q - 1) / 2);
    if (r == E{1, 0}) return 1;
    if (r == E{p - 1, 0}) return -1;
    fail(ErrorKind::Internal, "quadratic character of zero");
  }
};

QuadElem divide_out(const QuadField& F, const QuadPrime& P, QuadElem x, int times) {
  for (int i = 0; i < times; ++i) x = F.div(x, P.pi);
  return x;
}

int tame_symbol(const QuadField& F, const QuadElem& a, const QuadElem& b, const QuadPrime& P) {
  Residue R{P.p, P.f, F.D(), 0};
  if (P.f == 1) {
    if (P.pi.q == 0 || modp(P.pi.q, P.p) == 0) R.r = 0;  // ramified: sqrt D = 0 mod pi
    else R.r = ((P.p - modp(P.pi.p, P.p)) % P.p) * (__int128)modp(1 / P.pi.q, P.p) % P.p;
    if (((__int128)R.r * R.r - F.D()) % P.p != 0) fail(ErrorKind::Internal, "residue map is not a ring map");
  }
  int al = valuation(F, P, a), be = valuation(F, P, b);
  auto a0 = R.of(divide_out(F, P, a, al)), b0 = R.of(divide_out(F, P, b, be));
  auto v = R.mul(R.pow(a0, be), R.inv(R.pow(b0, al)));
  if ((al * be) & 1) v = R.mul(v, {P.p - 1, 0});
  return R.chi(v);
}

// O / pi^M on coordinates (u, v) of u + v w, reduced by the Hermite form
// [[A, B], [0, C]] of the lattice pi^M O.
struct DyadicRing {
  long D;
  bool m4;
  long m;  // w^2 = w + m when m4
  using E = std::pair<long, long>;
  E mul(E a, E b) const {
    if (m4) return {a.first * b.first + m * a.second * b.second,
                    a.first * b.second + a.second * b.first + a.second * b.second};
    return {a.first * b.first + D * a.second * b.second, a.first * b.second + a.second * b.first};
  }
  E conj(E a) const { return m4 ? E{a.first + a.second, -a.second} : E{a.first, -a.second}; }
};

struct Hnf {
  long A, B, C;
  std::pair<long, long> reduce(long u, long v) const {
    long t = u / A;
    if (u - t * A < 0) --t;
    u -= t * A;
    v -= t * B;
    v %= C;
    if (v < 0) v += C;
    return {u, v};
  }
};

Hnf hnf(const DyadicRing& R, std::pair<long, long> g) {
  auto r1 = g;                       // g * 1
  auto r2 = R.mul(g, {0, 1});        // g * w
  long a1 = r1.first, b1 = r1.second, a2 = r2.first, b2 = r2.second;
  // extended gcd on the first column
  long s0 = 1, t0 = 0, s1 = 0, t1 = 1, x = a1, y = a2;
  while (y != 0) {
    long q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  long g0 = x, B = s0 * b1 + t0 * b2;
  if (g0 < 0) g0 = -g0, B = -B;
  long C = std::labs((a2 / x) * b1 - (a1 / x) * b2);
  if (g0 == 0 || C == 0) fail(ErrorKind::Internal, "degenerate lattice");
  B %= C;
  if (B < 0) B += C;
  return {g0, B, C};
}

int dyadic_symbol(const QuadField& F, QuadElem a, QuadElem b, const QuadPrime& P) {
  const int e = P.e;
  // Strip pi^2 factors; the square class is unchanged.
  int va = valuation(F, P, a), vb = valuation(F, P, b);
  a = divide_out(F, P, a, va - va % 2);
  b = divide_out(F, P, b, vb - vb % 2);
  va %= 2, vb %= 2;
  const int N = 2 * (2 * e + va + vb) + 3;

  DyadicRing R{F.D(), F.one_mod_4(), (F.D() - 1) / 4};
  auto [pu, pv] = F.coords(P.pi);
  const DyadicRing::E pi{pu.get_si(), pv.get_si()};
  const long npi = F.norm(P.pi).get_num().get_si();
  auto power = [&](int k) {
    DyadicRing::E r{1, 0};
    for (int i = 0; i < k; ++i) r = R.mul(r, pi);
    return r;
  };
  const Hnf HN = hnf(R, power(N)), HT = hnf(R, power(N - e)), HS = hnf(R, power(2 * e + 1)),
            H1 = hnf(R, pi);
  auto big = [&](const QuadElem& x) {
    auto [u, v] = F.coords(x);
    mpz_class A = HN.A, C = HN.C;
    // reduce in mpz first so the values fit
    mpz_class t;
    mpz_fdiv_q(t.get_mpz_t(), u.get_mpz_t(), A.get_mpz_t());
    u -= t * A;
    v -= t * HN.B;
    v = v % C;
    if (v < 0) v += C;
    return DyadicRing::E{u.get_si(), v.get_si()};
  };
  const auto ra = big(a), rb = big(b);

  auto is_unit = [&](DyadicRing::E x) { return H1.reduce(x.first, x.second) != DyadicRing::E{0, 0}; };
  auto div_pi = [&](DyadicRing::E x, DyadicRing::E& out) {
    auto y = R.mul(x, R.conj(pi));
    if (y.first % npi || y.second % npi) return false;
    out = {y.first / npi, y.second / npi};
    return true;
  };

  std::set<DyadicRing::E> unit_squares;
  for (long u = 0; u < HS.A; ++u)
    for (long v = 0; v < HS.C; ++v)
      if (is_unit({u, v})) {
        auto s = R.mul({u, v}, {u, v});
        unit_squares.insert(HS.reduce(s.first, s.second));
      }

  // aX^2 + bY^2 = Z^2 is solvable iff a t^2 + b or a + b t^2 is a square for
  // some integral t.  A value with v >= N - 2e - 1 forces v(a) = v(b), and
  // then -a/b is a square up to a factor 1 mod 4 pi, so the form is isotropic.
  auto square_or_isotropic = [&](DyadicRing::E w) {
    w = HN.reduce(w.first, w.second);
    if (w == DyadicRing::E{0, 0}) return true;
    int v = 0;
    DyadicRing::E q;
    while (div_pi(w, q)) w = q, ++v;
    if (v >= N - 2 * e - 1) return true;
    if (v % 2) return false;
    return unit_squares.count(HS.reduce(w.first, w.second)) > 0;
  };
  for (long u = 0; u < HT.A; ++u)
    for (long v = 0; v < HT.C; ++v) {
      auto t2 = R.mul({u, v}, {u, v});
      auto x = R.mul(ra, t2);
      auto y = R.mul(rb, t2);
      if (square_or_isotropic({x.first + rb.first, x.second + rb.second})) return 1;
      if (square_or_isotropic({ra.first + y.first, ra.second + y.second})) return 1;
    }
  return -1;
}

std::vector<long> prime_factors(mpz_class n) {
  n = abs(n);
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

}  // namespace

std::vector<QuadPrime> primes_above(const QuadField& F, long p) {
  if (!supported(F)) fail(ErrorKind::UnsupportedCenter, "prime decomposition needs D in {-1,-2,-3}");
  const long D = F.D();
  auto make = [&](QuadElem pi, int e, int f) {
    QuadPrime P;
    P.p = p;
    P.pi = canonical_associate(F, pi);
    P.e = e;
    P.f = f;
    P.name = "(" + F.str(P.pi) + ")";
    return P;
  };
  if (p == 2 && D == -1) return {make({1, 1}, 2, 1)};
  if (p == 2 && D == -2) return {make({0, 1}, 2, 1)};
  if (p == 2 && D == -3) return {make({2, 0}, 1, 2)};
  if (p == 3 && D == -3) return {make({0, 1}, 2, 1)};
  if (legendre(D, p) != 1) return {make({p, 0}, 1, 2)};
  // split: find an element of norm p
  for (long v = 1; v * v * std::labs(D) <= 4 * p; ++v) {
    if (D == -3) {
      long rest = 4 * p - 3 * v * v;
      long u = std::lround(std::sqrt(double(rest)));
      if (rest >= 0 && u * u == rest && (u - v) % 2 == 0) {
        QuadElem pi{half(u), half(v)};
        auto A = make(pi, 1, 1), B = make(F.conj(pi), 1, 1);
        return A.name < B.name ? std::vector{A, B} : std::vector{B, A};
      }
    } else {
      long rest = p + D * v * v;
      long u = std::lround(std::sqrt(double(std::max(rest, 0L))));
      if (rest >= 0 && u * u == rest) {
        QuadElem pi{u, v};
        auto A = make(pi, 1, 1), B = make(F.conj(pi), 1, 1);
        return A.name < B.name ? std::vector{A, B} : std::vector{B, A};
      }
    }
  }
  fail(ErrorKind::Internal, "no element of norm " + std::to_string(p));
}

int valuation(const QuadField& F, const QuadPrime& P, QuadElem x) {
  if (F.is_zero(x)) fail(ErrorKind::InvalidParams, "valuation of zero");
  if (!F.is_integral(x)) fail(ErrorKind::InvalidParams, "valuation needs an integral element");
  int v = 0;
  while (divides(F, P.pi, x)) x = F.div(x, P.pi), ++v;
  return v;
}

QuadElem integral_square_class(const QuadField&, const QuadElem& x) {
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), x.p.get_den_mpz_t(), x.q.get_den_mpz_t());
  mpq_class s = mpq_class(d) * d;
  return {x.p * s, x.q * s};
}

std::vector<QuadPrime> relevant_primes(const QuadField& F, const QuadElem& a, const QuadElem& b) {
  QuadElem A = integral_square_class(F, a), B = integral_square_class(F, b);
  mpz_class n = 2 * F.norm(A).get_num() * F.norm(B).get_num();
  std::vector<QuadPrime> out;
  for (long p : prime_factors(n))
    for (auto& P : primes_above(F, p)) out.push_back(P);
  return out;
}

int local_symbol(const QuadField& F, const QuadElem& a, const QuadElem& b, const QuadPrime& P) {
  if (F.is_zero(a) || F.is_zero(b)) fail(ErrorKind::InvalidParams, "Hilbert symbol of zero");
  QuadElem A = integral_square_class(F, a), B = integral_square_class(F, b);
  if (P.p == 2) return dyadic_symbol(F, A, B, P);
  return tame_symbol(F, A, B, P);
}

}  // namespace kleinia
