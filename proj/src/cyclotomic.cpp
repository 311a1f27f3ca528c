#include "kleinia/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <mpfr.h>

#include "kleinia/errors.hpp"

namespace kleinia {

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

long mod_pow(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<long> units_mod(long k) {
  std::vector<long> u;
  if (k <= 1) return {0};
  for (long i = 1; i < k; ++i)
    if (std::gcd(i, k) == 1) u.push_back(i);
  return u;
}

static int mobius(long n) {
  int m = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

std::vector<long> cyclotomic_polynomial(long k) {
  // Product of (x^d - 1)^mu(k/d): multiply the positive factors, then divide
  // by the negative ones (exact, monic).
  std::vector<long> p{1};
  std::vector<long> divisors;
  for (long d = 1; d <= k; ++d)
    if (k % d == 0 && mobius(k / d) != 0) divisors.push_back(d);
  for (long d : divisors) {
    if (mobius(k / d) != 1) continue;
    std::vector<long> r(p.size() + d, 0);
    for (std::size_t i = 0; i < p.size(); ++i) r[i + d] += p[i], r[i] -= p[i];
    p = std::move(r);
  }
  for (long d : divisors) {
    if (mobius(k / d) != -1) continue;
    // exact division by x^d - 1, top coefficient first
    std::vector<long> q(p.size() - d, 0);
    for (std::size_t i = p.size() - 1; i + 1 > std::size_t(d); --i) {
      long c = p[i];
      q[i - d] = c;
      p[i] -= c;
      p[i - d] += c;
    }
    p = std::move(q);
  }
  return p;
}

struct CyclotomicElement::Ctx {
  int k;
  int phi;
  std::vector<std::vector<long>> power;  // xi^m reduced, m in [0, k)
};

std::shared_ptr<const CyclotomicElement::Ctx> CyclotomicElement::context(int k) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Ctx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto c = std::make_shared<Ctx>();
  c->k = k;
  c->phi = int(euler_phi(k));
  auto phi_poly = cyclotomic_polynomial(k);
  std::vector<long> cur(c->phi, 0);
  cur[0] = 1;
  for (int m = 0; m < k; ++m) {
    c->power.push_back(cur);
    // multiply by xi
    long top = cur[c->phi - 1];
    for (int i = c->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < c->phi; ++i) cur[i] -= top * phi_poly[i];
  }
  cache.emplace(k, c);
  return c;
}

CyclotomicElement::CyclotomicElement(int k) : k_(k) {
  if (k < 1) fail(ErrorKind::InvalidParams, "cyclotomic conductor must be positive");
  ctx_ = context(k);
  c_.assign(ctx_->phi, 0);
}

CyclotomicElement CyclotomicElement::rational(int k, const mpq_class& q) {
  CyclotomicElement e(k);
  e.c_[0] = q;
  return e;
}

CyclotomicElement CyclotomicElement::zeta(int k, long j) {
  CyclotomicElement e(k);
  j %= k;
  if (j < 0) j += k;
  for (int i = 0; i < e.ctx_->phi; ++i) e.c_[i] = e.ctx_->power[j][i];
  return e;
}

void CyclotomicElement::reduce_into(const std::vector<mpq_class>& raw) {
  c_.assign(ctx_->phi, 0);
  for (std::size_t m = 0; m < raw.size(); ++m) {
    if (raw[m] == 0) continue;
    const auto& row = ctx_->power[m % k_];
    for (int i = 0; i < ctx_->phi; ++i)
      if (row[i]) c_[i] += raw[m] * row[i];
  }
}

static void same_conductor(int a, int b) {
  if (a != b) fail(ErrorKind::GroupMismatch, "cyclotomic elements over different fields");
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
  same_conductor(k_, o.k_);
  CyclotomicElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
  same_conductor(k_, o.k_);
  CyclotomicElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicElement CyclotomicElement::operator-() const { return scaled(-1); }

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
  same_conductor(k_, o.k_);
  std::vector<mpq_class> raw(2 * c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
  }
  CyclotomicElement r(k_);
  r.reduce_into(raw);
  return r;
}

CyclotomicElement CyclotomicElement::scaled(const mpq_class& q) const {
  CyclotomicElement r = *this;
  for (auto& c : r.c_) c *= q;
  return r;
}

CyclotomicElement CyclotomicElement::galois(long i) const {
  i %= k_;
  if (i < 0) i += k_;
  if (k_ > 1 && std::gcd(i, long(k_)) != 1) fail(ErrorKind::InvalidParams, "galois exponent not a unit");
  std::vector<mpq_class> raw(k_, 0);
  for (std::size_t j = 0; j < c_.size(); ++j) raw[(j * i) % k_] += c_[j];
  CyclotomicElement r(k_);
  r.reduce_into(raw);
  return r;
}

bool CyclotomicElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& c) { return c == 0; });
}

bool CyclotomicElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& c) { return c == 0; });
}

mpq_class CyclotomicElement::rational_value() const {
  if (!is_rational()) fail(ErrorKind::Internal, "cyclotomic element is not rational: " + str());
  return c_[0];
}

std::string CyclotomicElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    mpq_class c = c_[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    if (i == 0) os << a;
    else {
      if (a != 1) os << a << "*";
      os << "z" << k_;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

mpz_class squarefree_part(const mpq_class& q) {
  if (q == 0) fail(ErrorKind::InvalidParams, "squarefree part of zero");
  mpz_class m = q.get_num() * q.get_den();
  int sign = sgn(m);
  m = abs(m);
  mpz_class r = 1;
  for (mpz_class p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    if (e & 1) r *= p;
  }
  r *= m;
  return sign * r;
}

const char* field_tag_name(FieldTag t) {
  switch (t) {
    case FieldTag::Q: return "Q";
    case FieldTag::Qi: return "Q(i)";
    case FieldTag::QsqrtM2: return "Q(sqrt(-2))";
    case FieldTag::QsqrtM3: return "Q(sqrt(-3))";
    case FieldTag::Qsqrt2: return "Q(sqrt(2))";
    case FieldTag::Qsqrt3: return "Q(sqrt(3))";
    case FieldTag::Other: return "other";
  }
  return "?";
}

static std::vector<long> close_subgroup(long k, const std::vector<long>& gens) {
  std::vector<long> S{1 % k};
  for (std::size_t i = 0; i < S.size(); ++i)
    for (long g : gens) {
      long v = ((S[i] * g) % k + k) % k;
      if (std::find(S.begin(), S.end(), v) == S.end()) S.push_back(v);
    }
  std::sort(S.begin(), S.end());
  return S;
}

FieldDescriptor fixed_field(int k, const std::vector<long>& generators) {
  for (long g : generators)
    if (k > 1 && std::gcd(((g % k) + k) % k, long(k)) != 1)
      fail(ErrorKind::InvalidParams, "fixing generator is not a unit");
  FieldDescriptor f;
  f.conductor = k;
  f.fixing = close_subgroup(k, generators);
  f.degree = int(euler_phi(k) / long(f.fixing.size()));
  f.totally_real = k <= 2 || std::binary_search(f.fixing.begin(), f.fixing.end(), long(k - 1));
  if (f.totally_real) f.r = f.degree, f.s = 0;
  else f.r = 0, f.s = f.degree / 2;
  identify_field(f);
  return f;
}

long nontrivial_on(const FieldDescriptor& f) {
  for (long u : units_mod(f.conductor))
    if (!std::binary_search(f.fixing.begin(), f.fixing.end(), u)) return u;
  fail(ErrorKind::Internal, "field is Q; no nontrivial automorphism");
}

bool in_field(const FieldDescriptor& f, const CyclotomicElement& x) {
  for (long s : f.fixing)
    if (!(x.galois(s) == x)) return false;
  return true;
}

namespace {

struct QuadraticData {
  CyclotomicElement beta;
  mpq_class t, n;  // beta^2 - t beta + n = 0
};

QuadraticData quadratic_generator(const FieldDescriptor& f) {
  const int k = f.conductor;
  const long tau = nontrivial_on(f);
  for (long j = 1; j < k; ++j) {
    CyclotomicElement b(k);
    for (long s : f.fixing) b = b + CyclotomicElement::zeta(k, j * s);
    if (b.is_rational()) continue;
    CyclotomicElement bt = b.galois(tau);
    return {b, (b + bt).rational_value(), (b * bt).rational_value()};
  }
  fail(ErrorKind::Internal, "no generating period for quadratic field");
}

}  // namespace

void identify_field(FieldDescriptor& f) {
  const long k = f.conductor;
  // Smallest f | k whose reduction kernel lies in S.
  for (long d = 1; d <= k; ++d) {
    if (k % d) continue;
    bool ok = true;
    for (long u : units_mod(k))
      if (u % d == 1 % d && !std::binary_search(f.fixing.begin(), f.fixing.end(), u)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    f.min_conductor = int(d);
    std::vector<long> img;
    for (long s : f.fixing) img.push_back(s % d);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    f.min_fixing = img;
    break;
  }
  f.tag = FieldTag::Other;
  f.quadratic_d = 1;
  f.discriminant = 1;
  if (f.degree == 1) {
    f.tag = FieldTag::Q;
    return;
  }
  if (f.degree != 2) return;
  QuadraticData q = quadratic_generator(f);
  mpq_class disc = q.t * q.t - 4 * q.n;
  long D = squarefree_part(disc).get_si();
  f.quadratic_d = D;
  f.discriminant = ((D % 4) + 4) % 4 == 1 ? D : 4 * D;
  switch (D) {
    case -1: f.tag = FieldTag::Qi; break;
    case -2: f.tag = FieldTag::QsqrtM2; break;
    case -3: f.tag = FieldTag::QsqrtM3; break;
    case 2: f.tag = FieldTag::Qsqrt2; break;
    case 3: f.tag = FieldTag::Qsqrt3; break;
    default: f.tag = FieldTag::Other;
  }
}

CyclotomicElement quadratic_sqrt(const FieldDescriptor& f) {
  if (f.degree != 2) fail(ErrorKind::InvalidParams, "field is not quadratic");
  QuadraticData q = quadratic_generator(f);
  mpq_class disc = q.t * q.t - 4 * q.n;
  // (2 beta - t)^2 = disc = D * c^2
  mpq_class ratio = disc / f.quadratic_d;
  mpz_class num = sqrt(ratio.get_num()), den = sqrt(ratio.get_den());
  if (num * num != ratio.get_num() || den * den != ratio.get_den())
    fail(ErrorKind::Internal, "discriminant is not D times a square");
  mpq_class c(num, den);
  CyclotomicElement r = (q.beta.scaled(2) - CyclotomicElement::rational(f.conductor, q.t)).scaled(1 / c);
  if (!(r * r == CyclotomicElement::rational(f.conductor, f.quadratic_d)))
    fail(ErrorKind::Internal, "square root check failed");
  return r;
}

std::string FieldDescriptor::key() const {
  std::ostringstream os;
  os << min_conductor << ":";
  for (std::size_t i = 0; i < min_fixing.size(); ++i) os << (i ? "," : "") << min_fixing[i];
  return os.str();
}

std::string FieldDescriptor::name() const {
  if (degree == 1) return "Q";
  if (degree == 2) {
    if (quadratic_d == -1) return "Q(i)";
    return "Q(sqrt(" + std::to_string(quadratic_d) + "))";
  }
  std::string z = "Q(zeta_" + std::to_string(min_conductor) + ")";
  if (min_fixing.size() == 1) return z;
  if (min_fixing.size() == 2 && min_fixing[1] == min_conductor - 1) return z + "^+";
  return z + "^<" + key().substr(key().find(':') + 1) + ">";
}

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// Returns sigma_c(x) at precision p and an upper bound on the error.
std::pair<double, double> evaluate(const CyclotomicElement& x, long c, mpfr_prec_t p, int* sign) {
  const long k = x.conductor();
  Mpfr sum(p), term(p), arg(p), pi2(p), q(p), err(p);
  mpfr_set_zero(sum.v, 1);
  mpfr_const_pi(pi2.v, MPFR_RNDN);
  mpfr_mul_2ui(pi2.v, pi2.v, 1, MPFR_RNDN);
  mpfr_set_zero(err.v, 1);
  const auto& cs = x.coeffs();
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (cs[j] == 0) continue;
    long m = long((__int128)c * long(j) % k);
    mpfr_mul_si(arg.v, pi2.v, m, MPFR_RNDN);
    mpfr_div_si(arg.v, arg.v, k, MPFR_RNDN);
    mpfr_cos(term.v, arg.v, MPFR_RNDN);
    mpfr_set_q(q.v, cs[j].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.v, term.v, q.v, MPFR_RNDN);
    mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
    mpfr_abs(q.v, q.v, MPFR_RNDN);
    mpfr_add(err.v, err.v, q.v, MPFR_RNDU);
  }
  // Each term carries a few ulps from pi, the argument, cos and the product,
  // and the running sum adds one more; 2^6 (terms + 8) ulps covers both.
  mpfr_mul_ui(err.v, err.v, cs.size() + 8, MPFR_RNDU);
  mpfr_mul_2si(err.v, err.v, 6 - long(p), MPFR_RNDU);
  Mpfr a(p);
  mpfr_abs(a.v, sum.v, MPFR_RNDN);
  if (sign) *sign = mpfr_cmp(a.v, err.v) > 0 ? mpfr_sgn(sum.v) : 0;
  return {mpfr_get_d(sum.v, MPFR_RNDN), mpfr_get_d(err.v, MPFR_RNDU)};
}

}  // namespace

int real_embedding_sign(const CyclotomicElement& x, long c) {
  if (x.is_zero()) return 0;
  if (!(x.galois(-1) == x)) fail(ErrorKind::InvalidParams, "element is not real");
  for (mpfr_prec_t p = 128; p <= 16384; p *= 2) {
    int s = 0;
    evaluate(x, c, p, &s);
    if (s != 0) return s;
  }
  fail(ErrorKind::Internal, "could not certify the sign of " + x.str());
}

double approx_real(const CyclotomicElement& x, long c) { return evaluate(x, c, 64, nullptr).first; }

}  // namespace kleinia
