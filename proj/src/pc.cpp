#include "kleinia/pc.hpp"

namespace kleinia {

int PcPresentation::add(std::string name, int rel_order) {
  if (rel_order < 2) fail(ErrorKind::InvalidParams, "relative order must be at least 2");
  names_.push_back(std::move(name));
  rel_.push_back(rel_order);
  for (auto& p : power_) p.push_back(0);
  for (auto& row : conj_)
    for (auto& c : row) c.push_back(0);
  const std::size_t r = names_.size();
  power_.push_back(ExpVec(r, 0));
  conj_.emplace_back();
  for (std::size_t j = 0; j + 1 < r; ++j) conj_.back().push_back(gen(int(r - 1)));
  memo_.clear();
  return int(r - 1);
}

int PcPresentation::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return int(i);
  fail(ErrorKind::Internal, "unknown pc generator " + name);
}

ExpVec PcPresentation::gen(int i) const {
  ExpVec v(names_.size(), 0);
  v[i] = 1;
  return v;
}

ExpVec PcPresentation::vec(const std::vector<std::pair<std::string, int>>& word) const {
  ExpVec v = identity();
  for (auto& [n, e] : word) v = multiply(v, power(gen(index(n)), e));
  return v;
}

void PcPresentation::set_power(const std::string& g, ExpVec v) {
  int i = index(g);
  for (int k = 0; k <= i; ++k)
    if (v[k]) fail(ErrorKind::Internal, "power relation not in the lower series");
  power_[i] = std::move(v);
  memo_.clear();
}

void PcPresentation::set_conj(const std::string& k, const std::string& j, ExpVec v) {
  int ik = index(k), ij = index(j);
  if (ik <= ij) fail(ErrorKind::Internal, "conjugate relation needs k > j");
  for (int q = 0; q <= ij; ++q)
    if (v[q]) fail(ErrorKind::Internal, "conjugate relation not in the lower series");
  conj_[ik][ij] = std::move(v);
  memo_.clear();
}

long long PcPresentation::declared_order() const {
  long long n = 1;
  for (int p : rel_) n *= p;
  return n;
}

ExpVec PcPresentation::mul_gen(const ExpVec& v, int j) const {
  std::string key(v.begin(), v.end());
  key.push_back(char(j));
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  const int r = int(names_.size());
  // v * g_j = head * g_j^{own} * tail * g_j = head * g_j^{own+1} * tail^{g_j}
  ExpVec tail_conj = identity();
  for (int k = j + 1; k < r; ++k)
    if (v[k]) tail_conj = multiply(tail_conj, power(conj_[k][j], v[k]));
  ExpVec out = identity();
  for (int i = 0; i < j; ++i) out[i] = v[i];
  int own = v[j] + 1;
  ExpVec rest = tail_conj;
  if (own == rel_[j]) {
    own = 0;
    rest = multiply(power_[j], tail_conj);
  }
  out[j] = own;
  for (int k = j + 1; k < r; ++k) out[k] = rest[k];
  memo_.emplace(std::move(key), out);
  return out;
}

ExpVec PcPresentation::multiply(const ExpVec& a, const ExpVec& b) const {
  ExpVec r = a;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int e = 0; e < b[i]; ++e) r = mul_gen(r, int(i));
  return r;
}

ExpVec PcPresentation::power(const ExpVec& a, long long e) const {
  if (e < 0) {
    // a^-1 = a^{m-1} where m is the order of a; find m by iteration.
    ExpVec x = a;
    long long m = 1;
    while (x != identity()) {
      x = multiply(x, a);
      ++m;
    }
    e = ((e % m) + m) % m;
  }
  ExpVec r = identity(), b = a;
  while (e) {
    if (e & 1) r = multiply(r, b);
    b = multiply(b, b);
    e >>= 1;
  }
  return r;
}

FiniteGroup PcPresentation::realize(const std::vector<ExpVec>& named,
                                    const std::vector<std::string>& names,
                                    std::string label) const {
  auto mul = [this](const ExpVec& a, const ExpVec& b) { return multiply(a, b); };
  FiniteGroup G = FiniteGroup::closure(named, identity(), mul, label, names);
  if ((long long)G.order() != declared_order())
    fail(ErrorKind::RelationCheckFailed, label + ": closure has order " +
                                             std::to_string(G.order()) + ", expected " +
                                             std::to_string(declared_order()));
  return G;
}

}  // namespace kleinia
