#include <doctest.h>

#include <cmath>
#include <random>

#include "kleinia/hilbert.hpp"

using namespace kleinia;

namespace {

bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return n != 0;
}

// a x^2 + b y^2 = z^2 with small integers, not all zero.  For squarefree
// |a|, |b| <= 15 a solution, if any, has |x|, |y| below 16 (Holzer).
bool conic_has_point(long a, long b) {
  for (long x = 0; x <= 16; ++x)
    for (long y = 0; y <= 16; ++y) {
      if (!x && !y) continue;
      long v = a * x * x + b * y * y;
      if (v < 0) continue;
      long z = std::lround(std::sqrt(double(v)));
      if (z * z == v) return true;
    }
  return false;
}

QuaternionDescriptor over(int k, std::vector<long> fixing, CyclotomicElement a, CyclotomicElement b) {
  QuaternionDescriptor q;
  q.center = fixed_field(k, fixing);
  q.a = a;
  q.b = b;
  return q;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  for (int k : {1, 3, 4, 5, 8, 12, 24}) {
    auto z = CyclotomicElement::zeta(k, 1);
    auto p = CyclotomicElement::rational(k, 1);
    for (int i = 0; i < k; ++i) p = p * z;
    CHECK(p == CyclotomicElement::rational(k, 1));
    CHECK(int(z.coeffs().size()) == euler_phi(k));
  }
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(8) == std::vector<long>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  // (xi_8 + xi_8^-1)^2 = 2
  auto s = CyclotomicElement::zeta(8, 1) + CyclotomicElement::zeta(8, 7);
  CHECK(s * s == CyclotomicElement::rational(8, 2));
  CHECK(s.galois(3) == -s);
  // 1 + xi_3 + xi_3^2 = 0
  CHECK((CyclotomicElement::rational(3, 1) + CyclotomicElement::zeta(3, 1) + CyclotomicElement::zeta(3, 2)).is_zero());
}

TEST_CASE("subfields of cyclotomic fields are identified") {
  CHECK(fixed_field(8, {7}).tag == FieldTag::Qsqrt2);
  CHECK(fixed_field(8, {3}).tag == FieldTag::QsqrtM2);
  CHECK(fixed_field(8, {5}).tag == FieldTag::Qi);
  CHECK(fixed_field(12, {11}).tag == FieldTag::Qsqrt3);
  CHECK(fixed_field(12, {7}).tag == FieldTag::QsqrtM3);
  CHECK(fixed_field(12, {5}).tag == FieldTag::Qi);
  CHECK(fixed_field(3, {}).tag == FieldTag::QsqrtM3);
  CHECK(fixed_field(5, {}).tag == FieldTag::Other);
  CHECK(fixed_field(5, {}).degree == 4);
  CHECK(fixed_field(16, {15}).degree == 4);
  CHECK(fixed_field(16, {15}).totally_real);
  // Q(i) inside Q(xi_4) and Q(xi_8) and Q(xi_12) share one key.
  CHECK(fixed_field(4, {}).key() == fixed_field(8, {5}).key());
  CHECK(fixed_field(4, {}).key() == fixed_field(12, {5}).key());
  CHECK(fixed_field(8, {7}).key() != fixed_field(8, {3}).key());
  auto F = fixed_field(8, {7});
  CHECK(F.r == 2);
  CHECK(F.s == 0);
  auto K = fixed_field(24, {});
  CHECK(K.degree == 8);
  CHECK(K.s == 4);
}

TEST_CASE("real embeddings are signed exactly") {
  auto s = CyclotomicElement::zeta(8, 1) + CyclotomicElement::zeta(8, 7);  // sqrt 2
  CHECK(real_embedding_sign(s, 1) == 1);
  CHECK(real_embedding_sign(s, 3) == -1);
  CHECK(approx_real(s, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // 2 cos(2 pi / 5) - (sqrt 5 - 1)/2 = 0 exactly, so test a close neighbour
  auto c = CyclotomicElement::zeta(5, 1) + CyclotomicElement::zeta(5, 4);
  auto near = c - CyclotomicElement::rational(5, mpq_class(618033988, 1000000000));
  CHECK(real_embedding_sign(near, 1) == 1);
}

TEST_CASE("Hilbert symbols over Q against conic points") {
  for (long a = -15; a <= 15; ++a)
    for (long b = -15; b <= 15; ++b) {
      if (!squarefree(a) || !squarefree(b)) continue;
      CAPTURE(a);
      CAPTURE(b);
      auto ram = rational_ramification(a, b);
      CHECK(ram.size() % 2 == 0);
      CHECK(ram.empty() == conic_has_point(a, b));
    }
  CHECK(hilbert_symbol_rational(-1, -1, 0) == -1);
  CHECK(hilbert_symbol_rational(-1, -1, 2) == -1);
  CHECK(hilbert_symbol_rational(-1, -1, 3) == 1);
  CHECK(rational_ramification(-1, -3) == std::vector<long>{0, 3});
}

TEST_CASE("Hilbert reciprocity on random rational pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 200; ++i) {
    mpq_class a(d(rng), 1 + std::labs(d(rng)) % 20), b(d(rng), 1 + std::labs(d(rng)) % 20);
    if (a == 0 || b == 0) continue;
    a.canonicalize();
    b.canonicalize();
    int prod = hilbert_symbol_rational(a, b, 0);
    for (long p : rational_prime_divisors(mpz_class(2 * a.get_num() * a.get_den() * b.get_num() * b.get_den())))
      prod *= hilbert_symbol_rational(a, b, p);
    CHECK(prod == 1);
  }
}

TEST_CASE("quadratic fields") {
  QuadField F(-1);
  QuadElem i{0, 1};
  CHECK(F.mul(i, i) == F.rational(-1));
  CHECK(F.norm(QuadElem{3, 4}) == 25);
  CHECK(primes_above(F, 2).size() == 1);
  CHECK(primes_above(F, 2)[0].e == 2);
  CHECK(primes_above(F, 5).size() == 2);
  CHECK(primes_above(F, 3)[0].f == 2);
  QuadField G(-3);
  CHECK(G.is_integral(QuadElem{mpq_class(1, 2), mpq_class(1, 2)}));
  CHECK_FALSE(QuadField(-1).is_integral(QuadElem{mpq_class(1, 2), mpq_class(1, 2)}));
  CHECK(G.sqrt(G.rational(-3)).has_value());
  CHECK_FALSE(G.sqrt(G.rational(2)).has_value());
}

TEST_CASE("local symbols over Q(i), Q(sqrt-2), Q(sqrt-3) satisfy reciprocity") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (long D : {-1, -2, -3}) {
    QuadField F(D);
    for (int i = 0; i < 40; ++i) {
      QuadElem a{d(rng), d(rng)}, b{d(rng), d(rng)};
      if (F.is_zero(a) || F.is_zero(b)) continue;
      int prod = 1;
      for (auto& P : relevant_primes(F, a, b)) prod *= local_symbol(F, a, b, P);
      CHECK(prod == 1);  // no real places
    }
  }
}

TEST_CASE("quaternion algebras") {
  auto q = [](int k, long v) { return CyclotomicElement::rational(k, v); };
  auto H = over(1, {}, q(1, -1), q(1, -1));
  CHECK_FALSE(is_split(H));
  CHECK(is_totally_definite(H));
  CHECK(analyze_quaternion(H).name == "H(Q)");

  auto iq = over(4, {}, CyclotomicElement::zeta(4, 1), q(4, -3));
  CHECK(is_split(iq));
  auto an = analyze_quaternion(iq);
  CHECK(an.status == SplitStatus::Split);
  REQUIRE(an.certificate);
  CHECK(certificate_holds(iq, *an.certificate));

  auto m13 = over(1, {}, q(1, -1), q(1, -3));
  CHECK_FALSE(is_split(m13));
  CHECK(analyze_quaternion(m13).name == "(-1,-3 / Q)");

  // (-1,-1 / Q(sqrt 2)) is totally definite; (-1,-1 / Q(sqrt -2)) splits.
  auto Hs2 = over(8, {7}, q(8, -1), q(8, -1));
  auto an2 = analyze_quaternion(Hs2);
  CHECK(an2.totally_definite);
  CHECK(an2.r1 == 2);
  auto Hm2 = over(8, {3}, q(8, -1), q(8, -1));
  auto an3 = analyze_quaternion(Hm2);
  CHECK(an3.status == SplitStatus::Split);
  REQUIRE(an3.certificate);
  CHECK(certificate_holds(Hm2, *an3.certificate));
}

TEST_CASE("every split verdict carries a valid certificate") {
  for (long a = -7; a <= 7; ++a)
    for (long b = -7; b <= 7; ++b) {
      if (!a || !b) continue;
      for (auto [k, fix] : std::vector<std::pair<int, std::vector<long>>>{{1, {}}, {4, {}}, {8, {3}}, {3, {}}}) {
        auto Q = over(k, fix, CyclotomicElement::rational(k, a), CyclotomicElement::rational(k, b));
        auto an = analyze_quaternion(Q);
        if (an.status != SplitStatus::Split) continue;
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(k);
        REQUIRE(an.certificate);
        CHECK(certificate_holds(Q, *an.certificate));
      }
    }
}
