#include "kleinia/kleinian.hpp"

#include <map>

namespace kleinia {

namespace {

const char* const kTypeNames[] = {
    "(1) field",
    "(2) totally definite quaternion",
    "(3) M2(Q)",
    "(4) M2(imaginary quadratic)",
    "(5) quaternion, one unramified real place",
    "(6) quaternion over imaginary quadratic",
    "not Kleinian",
};

std::string matrix_name(std::size_t n, const std::string& inner) {
  return n == 1 ? inner : "M" + std::to_string(n) + "(" + inner + ")";
}

// Type and unit class of M_m(F), m >= 2.
void classify_matrix(SimpleComponent& c, std::size_t m, const FieldDescriptor& F) {
  c.vcd = vcd(int(m), 1, 0, F.r, F.s);
  if (m != 2) return;
  if (F.degree == 1) {
    c.type = KleinianType::M2Q;
    c.unit_class = UnitClass::VirtuallyFreeNonabelian;
  } else if (F.imaginary_quadratic()) {
    c.type = KleinianType::M2Imaginary;
    const long d = -F.quadratic_d;
    if (d == 1 || d == 2 || d == 3 || d == 7 || d == 11) {
      c.unit_class = UnitClass::FreeByFree;
      c.unit_d = int(d);
    }
  }
}

}  // namespace

const char* kleinian_type_name(KleinianType t) { return kTypeNames[int(t)]; }

KleinianType kleinian_type_from_name(const std::string& s) {
  for (int i = 0; i <= int(KleinianType::NotKleinian); ++i)
    if (s == kTypeNames[i]) return KleinianType(i);
  fail(ErrorKind::InvalidParams, "unknown Kleinian type '" + s + "'");
}

std::string unit_class_name(UnitClass u, int d) {
  switch (u) {
    case UnitClass::Finite: return "Finite";
    case UnitClass::VirtuallyFreeNonabelian: return "VirtuallyFreeNonabelian";
    case UnitClass::FreeByFree: return "FreeByFree(" + std::to_string(d) + ")";
    case UnitClass::Other: return "Other";
  }
  return "?";
}

long vcd(int n, int d, int r1, int r2, int s) {
  if (n < 1 || d < 1 || r1 < 0 || r2 < 0 || s < 0) fail(ErrorKind::InvalidParams, "vcd arguments");
  const long m = long(n) * d;
  return r2 * (m + 2) * (m - 1) / 2 + r1 * (m - 2) * (m + 1) / 2 + s * (m * m - 1) - n + 1;
}

SimpleComponent classify_component(const FiniteGroup& G, const Pci& pci) {
  SimpleComponent c;
  c.pair = pci.pair;
  c.descriptor = crossed_product_data(G, pci.pair);
  c.resolved = quaternion_from_crossed_product(c.descriptor);
  c.dim = pci.dimension();
  c.degree = c.resolved.n * c.resolved.inner_degree;
  const FieldDescriptor& F = c.resolved.center;
  const std::size_t n = c.resolved.n;

  switch (c.resolved.kind) {
    case ResolvedAlgebra::Kind::MatrixOverCyclotomic:
      c.commutative = n == 1;
      c.algebra = matrix_name(n, F.name());
      c.key = "M" + std::to_string(n) + "|" + F.key();
      if (c.commutative) {
        c.type = KleinianType::Field;
        c.unit_class = UnitClass::Finite;
        c.vcd = vcd(1, 1, 0, F.r, F.s);
      } else {
        c.split = "split";
        classify_matrix(c, n, F);
      }
      break;

    case ResolvedAlgebra::Kind::Quaternion: {
      const auto& qa = *(c.quaternion = analyze_quaternion(*c.resolved.quaternion));
      c.split = split_status_name(qa.status);
      c.totally_definite = qa.totally_definite;
      if (qa.status == SplitStatus::Split) {
        c.algebra = matrix_name(2 * n, F.name());
        c.key = "M" + std::to_string(2 * n) + "|" + F.key();
        classify_matrix(c, 2 * n, F);
        break;
      }
      c.algebra = matrix_name(n, qa.name);
      c.key = "M" + std::to_string(n) + "|" + qa.key;
      if (qa.status == SplitStatus::Division) c.vcd = vcd(int(n), 2, qa.r1, qa.r2, F.s);
      if (n != 1) break;
      if (qa.status == SplitStatus::Division) {
        if (qa.totally_definite) {
          c.type = KleinianType::TotallyDefinite;
          c.unit_class = UnitClass::Finite;
        } else if (F.s == 0 && qa.r2 == 1) {
          c.type = KleinianType::RealOnePlace;
        } else if (F.imaginary_quadratic()) {
          c.type = KleinianType::ImaginaryDivision;
        }
      } else if (F.imaginary_quadratic()) {
        // Either M2(F) or a division algebra: Kleinian in both cases, so an
        // unresolved split status would leave the type open.  The centres
        // reachable from a cyclotomic crossed product are all resolved.
        fail(ErrorKind::UnsupportedCenter, "split status over " + F.name() + " not decided");
      }
      // Otherwise r1 = 0 over a centre other than Q or an imaginary
      // quadratic field: neither M2(F) nor the division algebra is Kleinian.
      break;
    }

    case ResolvedAlgebra::Kind::HighDegreeOpaque:
      c.algebra = matrix_name(n, "crossed product of degree " + std::to_string(c.resolved.inner_degree) +
                                     " over " + F.name());
      c.key = "X" + std::to_string(n) + "|" + std::to_string(c.resolved.inner_degree) + "|" + F.key();
      break;
  }
  return c;
}

std::vector<SimpleComponent> decompose(const FiniteGroup& G, PciStrategy strategy) {
  std::vector<SimpleComponent> out;
  for (const Pci& p : enumerate_pcis(G, strategy)) out.push_back(classify_component(G, p));
  return out;
}

std::string decomposition_text(const std::vector<SimpleComponent>& comps) {
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::size_t, std::string>> count;
  for (auto& c : comps) {
    auto [it, fresh] = count.try_emplace(c.key, 0, c.algebra);
    if (fresh) order.push_back(c.key);
    ++it->second.first;
  }
  std::string s;
  for (auto& k : order) {
    auto& [m, name] = count[k];
    if (!s.empty()) s += " + ";
    if (m > 1) s += std::to_string(m);
    s += name;
  }
  return s;
}

bool allowed_by_E(const SimpleComponent& c, std::string* reason) {
  auto say = [&](bool ok, const std::string& why) {
    if (reason) *reason = c.algebra + ": " + why;
    return ok;
  };
  if (c.commutative) return say(true, "field");
  if (c.degree > 2) return say(false, "degree " + std::to_string(c.degree) + " > 2");
  if (c.totally_definite) return say(true, "totally definite quaternion algebra");
  const FieldDescriptor& F = c.resolved.center;
  if (F.tag == FieldTag::Other) return say(false, "centre " + F.name() + " not allowed");
  if (F.totally_real && F.tag != FieldTag::Q)
    return say(false, "centre " + F.name() + " is real and the algebra is not totally definite");
  if (c.split == "split") return say(true, "M2 over an allowed centre");
  if (F.tag == FieldTag::Q) return say(false, "quaternion over Q ramified at finite primes only");
  return say(false, "division algebra over " + F.name());
}

EVerdict decide_E(const std::vector<SimpleComponent>& comps) {
  EVerdict v;
  for (auto& c : comps) {
    std::string why;
    if (!allowed_by_E(c, &why)) v.verdict = false;
    v.reasons.push_back(why);
  }
  return v;
}

EVerdict decide_E(const FiniteGroup& G) { return decide_E(decompose(G)); }

}  // namespace kleinia
