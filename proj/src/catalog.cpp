#include "kleinia/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "kleinia/pc.hpp"

namespace kleinia {

namespace {

struct Builder {
  PcPresentation pc;
  std::vector<std::string> names;
  std::vector<ExpVec> named;
  Presentation P;
  std::vector<Word> center;
  // Central elements missing from a stated centre; the check then asks for
  // stated <= Z(G) and <stated, extra> = Z(G).
  std::vector<Word> center_extra;
  bool has_center = false;

  // Each pc generator as a word in the named generators.
  std::map<std::string, Word> pcdef;

  // Declares a named generator realized by a pc word.
  Word named_gen(const std::string& name, const std::vector<std::pair<std::string, int>>& pcword,
                 int kind = -1) {
    names.push_back(name);
    named.push_back(pc.vec(pcword));
    Word w = Word::gen(P.add_gen(name, kind));
    if (pcword.size() == 1 && pcword[0].second == 1 && !pcdef.count(pcword[0].first))
      pcdef[pcword[0].first] = w;
    return w;
  }
  void define(const std::string& pcname, Word w) { pcdef[pcname] = std::move(w); }
  ExpVec v(const std::vector<std::pair<std::string, int>>& w) const { return pc.vec(w); }

  Word word_of(const ExpVec& e) const {
    Word w;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) w = w * pcdef_at(int(i)).pow(e[i]);
    return w;
  }
  const Word& pcdef_at(int i) const {
    auto it = pcdef.find(pc.names()[i]);
    if (it == pcdef.end()) fail(ErrorKind::Internal, "pc generator " + pc.names()[i] + " has no definition");
    return it->second;
  }

  // The pc relations over the named generators, plus each named generator
  // as its pc word.  Since the pc words generate and satisfy a consistent pc
  // presentation, the result presents a group of order at most prod p_i.
  Presentation defining() const {
    Presentation D;
    D.names = P.names;
    D.kind = P.kind;
    D.kind_names = P.kind_names;
    const int r = int(pc.rank());
    for (int i = 0; i < r; ++i) {
      const Word& g = pcdef_at(i);
      D.rel(g.pow(pc.rel_order(i)), word_of(pc.power_rel(i)), pc.names()[i] + " power");
      for (int j = 0; j < i; ++j)
        D.rel(conj(g, pcdef_at(j)), word_of(pc.conj_rel(i, j)), pc.names()[i] + "^" + pc.names()[j]);
    }
    for (std::size_t j = 0; j < named.size(); ++j) {
      Word w = word_of(named[j]);
      Word self = Word::gen(int(j));
      if (w.letters() != self.letters()) D.rel(self, w, names[j] + " as pc word");
    }
    return D;
  }
};

std::string idx(const std::string& base, int i) { return base + std::to_string(i); }

long long param(const Params& p, const std::string& key, long long def, long long lo,
                long long hi = 1LL << 40) {
  auto it = p.find(key);
  long long v = it == p.end() ? def : it->second;
  if (v < lo || v > hi)
    fail(ErrorKind::InvalidParams, "parameter " + key + "=" + std::to_string(v) + " out of range");
  return v;
}

void require(long long order, std::size_t max_order, const std::string& fam) {
  if (order > (long long)max_order)
    fail(ErrorKind::ClosureCapExceeded,
         fam + " has order " + std::to_string(order) + " above the cap " + std::to_string(max_order));
}

void commute(Presentation& P, const Word& a, const Word& b, const std::string& text) {
  P.rel(comm(a, b), Word(), text);
}

// ---- families -------------------------------------------------------------

void cyclic(Builder& B, long long n, long long k) {
  for (int i = 1; i <= k && n > 1; ++i) B.pc.add(k == 1 ? "a" : idx("a", i), int(n));
  std::vector<Word> a;
  for (int i = 1; i <= k; ++i) {
    std::string nm = k == 1 ? "a" : idx("a", i);
    a.push_back(n > 1 ? B.named_gen(nm, {{nm, 1}}) : B.named_gen(nm, {}));
    B.P.rel1(a.back().pow(int(n)), nm + "^n");
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) commute(B.P, a[i], a[j], "abelian");
}

void dihedral(Builder& B, long long n) {
  B.pc.add("b", 2);
  if (n > 1) {
    B.pc.add("a", int(n));
    B.pc.set_conj("a", "b", B.v({{"a", int(n - 1)}}));
  }
  Word a = n > 1 ? B.named_gen("a", {{"a", 1}}) : B.named_gen("a", {});
  Word b = B.named_gen("b", {{"b", 1}});
  B.P.rel1(a.pow(int(n)), "a^n");
  B.P.rel1(b.pow(2), "b^2");
  B.P.rel(conj(a, b), a.inverse(), "a^b = a^-1");
}

void quaternion(Builder& B, long long n) {
  B.pc.add("b", 2);
  B.pc.add("a", int(2 * n));
  B.pc.set_power("b", B.v({{"a", int(n)}}));
  B.pc.set_conj("a", "b", B.v({{"a", int(2 * n - 1)}}));
  Word a = B.named_gen("a", {{"a", 1}});
  Word b = B.named_gen("b", {{"b", 1}});
  B.P.rel1(a.pow(int(2 * n)), "a^2n");
  B.P.rel(b.pow(2), a.pow(int(n)), "b^2 = a^n");
  B.P.rel(conj(a, b), a.inverse(), "a^b = a^-1");
}

// a of order 2^{n+1}, a^b = a^{2^n + sign}
void semidihedral(Builder& B, long long n, int sign) {
  const int ord = 1 << (n + 1), e = (1 << n) + sign;
  B.pc.add("b", 2);
  B.pc.add("a", ord);
  B.pc.set_conj("a", "b", B.v({{"a", e}}));
  Word a = B.named_gen("a", {{"a", 1}});
  Word b = B.named_gen("b", {{"b", 1}});
  B.P.rel1(a.pow(ord), "a order");
  B.P.rel1(b.pow(2), "b^2");
  B.P.rel(conj(a, b), a.pow(e), "a^b");
}

void dcal(Builder& B, bool plus) {
  B.pc.add("b", 2);
  B.pc.add("a", plus ? 4 : 2);
  B.pc.add("c", 4);
  // b a b^-1 = c^2 a, resp. c a^3; b is an involution so this is a^b.
  if (plus)
    B.pc.set_conj("a", "b", B.v({{"a", 3}, {"c", 1}}));
  else
    B.pc.set_conj("a", "b", B.v({{"a", 1}, {"c", 2}}));
  Word c = B.named_gen("c", {{"c", 1}});
  Word a = B.named_gen("a", {{"a", 1}});
  Word b = B.named_gen("b", {{"b", 1}});
  B.P.rel1(c.pow(4), "c^4");
  B.P.rel1(a.pow(plus ? 4 : 2), "a order");
  B.P.rel1(b.pow(2), "b^2");
  commute(B.P, c, a, "c central");
  commute(B.P, c, b, "c central");
  B.P.rel(comm(b, a), plus ? c * a.pow(2) : c.pow(2), "(b,a)");
  B.center = {c};
  B.has_center = true;
}

// W (xo = 4) and V (xo = 8): t = (y,x), x^2 and y^2 central.
void w_or_v(Builder& B, int xo) {
  B.pc.add("x", 2);
  B.pc.add("y", 2);
  B.pc.add("t", 2);
  B.pc.add("X", xo / 2);
  B.pc.add("Y", xo / 2);
  B.pc.set_power("x", B.v({{"X", 1}}));
  B.pc.set_power("y", B.v({{"Y", 1}}));
  B.pc.set_conj("y", "x", B.v({{"y", 1}, {"t", 1}}));
  Word x = B.named_gen("x", {{"x", 1}});
  Word y = B.named_gen("y", {{"y", 1}});
  Word t = comm(y, x);
  B.define("t", y.inverse() * x.inverse() * y * x);
  B.define("X", x.pow(2));
  B.define("Y", y.pow(2));
  B.P.rel1(x.pow(xo), "x order");
  B.P.rel1(y.pow(xo), "y order");
  B.P.rel1(t.pow(2), "t^2");
  commute(B.P, t, x, "t central");
  commute(B.P, t, y, "t central");
  commute(B.P, x.pow(2), y, "x^2 central");
  commute(B.P, y.pow(2), x, "y^2 central");
  B.center = {x.pow(2), y.pow(2), t};
  B.has_center = true;
}

// W1n (xo = 4, yo = 2) and V1n (xo = 8, yo = 4): t_i = (y_i,x) central of order 2.
void x1n(Builder& B, long long n, int xo, int yo) {
  B.pc.add("x", 2);
  for (int i = 1; i <= n; ++i) {
    B.pc.add(idx("y", i), 2);
    B.pc.add(idx("t", i), 2);
    if (yo == 4) B.pc.add(idx("Y", i), 2);
  }
  B.pc.add("X", xo / 2);
  B.pc.set_power("x", B.v({{"X", 1}}));
  for (int i = 1; i <= n; ++i) {
    if (yo == 4) B.pc.set_power(idx("y", i), B.v({{idx("Y", i), 1}}));
    B.pc.set_conj(idx("y", i), "x", B.v({{idx("y", i), 1}, {idx("t", i), 1}}));
  }
  Word x = B.named_gen("x", {{"x", 1}});
  B.P.kind_names = {"y"};
  std::vector<Word> y, t;
  for (int i = 1; i <= n; ++i) {
    y.push_back(B.named_gen(idx("y", i), {{idx("y", i), 1}}, 0));
    t.push_back(comm(y.back(), x));
    B.define(idx("t", i), y.back().inverse() * x.inverse() * y.back() * x);
    if (yo == 4) B.define(idx("Y", i), y.back().pow(2));
  }
  B.define("X", x.pow(2));
  B.P.rel1(x.pow(xo), "x order");
  for (int i = 0; i < n; ++i) {
    B.P.rel1(y[i].pow(yo), "y order");
    B.P.rel1(t[i].pow(2), "t^2");
    commute(B.P, t[i], x, "t central");
    commute(B.P, t[i], y[i], "t central");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) commute(B.P, y[i], y[j], "y commute");
      commute(B.P, t[i], y[j], "t central");
    }
  B.center = t;
  if (yo == 4)
    for (auto& w : y) B.center.push_back(w.pow(2));
  B.center.push_back(x.pow(2));
  B.has_center = true;
}

// y_i of order yo, x of order xo, y^x = y^e, abelian base.
void x2n(Builder& B, long long n, int xo, int yo, int e, const std::function<Word(const Word&, const Word&)>& tdef,
         int tpow) {
  B.pc.add("x", 2);
  for (int i = 1; i <= n; ++i) B.pc.add(idx("y", i), yo);
  B.pc.add("X", xo / 2);
  B.pc.set_power("x", B.v({{"X", 1}}));
  for (int i = 1; i <= n; ++i) B.pc.set_conj(idx("y", i), "x", B.v({{idx("y", i), e}}));
  Word x = B.named_gen("x", {{"x", 1}});
  B.P.kind_names = {"y"};
  std::vector<Word> y;
  for (int i = 1; i <= n; ++i) y.push_back(B.named_gen(idx("y", i), {{idx("y", i), 1}}, 0));
  B.define("X", x.pow(2));
  B.P.rel1(x.pow(xo), "x order");
  for (int i = 0; i < n; ++i) {
    B.P.rel1(y[i].pow(yo), "y order");
    B.P.rel(conj(y[i], x), y[i].pow(e), "y^x");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) commute(B.P, y[i], y[j], "y commute");
  for (auto& w : y) B.center.push_back(tdef(w, x).pow(tpow));
  B.center.push_back(x.pow(2));
  B.has_center = true;
}

void u_family(Builder& B, bool two) {
  for (int i = 1; i <= 3; ++i) B.pc.add(idx("y", i), 2);
  if (!two) {
    B.pc.add("t12", 2);
    B.pc.add("t13", 2);
  }
  B.pc.add("t23", 2);
  B.pc.add("Y1", 2);
  B.pc.add("Y2", two ? 4 : 2);
  B.pc.add("Y3", two ? 4 : 2);
  for (int i = 1; i <= 3; ++i) B.pc.set_power(idx("y", i), B.v({{idx("Y", i), 1}}));
  // t12 = Y2^2 and t13 = Y3^2 in the second group.
  auto t12 = two ? std::pair<std::string, int>{"Y2", 2} : std::pair<std::string, int>{"t12", 1};
  auto t13 = two ? std::pair<std::string, int>{"Y3", 2} : std::pair<std::string, int>{"t13", 1};
  B.pc.set_conj("y2", "y1", B.v({{"y2", 1}, t12}));
  B.pc.set_conj("y3", "y1", B.v({{"y3", 1}, t13}));
  B.pc.set_conj("y3", "y2", B.v({{"y3", 1}, {"t23", 1}}));
  std::vector<Word> y;
  for (int i = 1; i <= 3; ++i) y.push_back(B.named_gen(idx("y", i), {{idx("y", i), 1}}));
  auto t = [&](int i, int j) { return comm(y[j - 1], y[i - 1]); };
  auto pc_t = [&](int i, int j) { return y[j - 1].inverse() * y[i - 1].inverse() * y[j - 1] * y[i - 1]; };
  if (!two) {
    B.define("t12", pc_t(1, 2));
    B.define("t13", pc_t(1, 3));
  }
  B.define("t23", pc_t(2, 3));
  for (int i = 1; i <= 3; ++i) B.define(idx("Y", i), y[i - 1].pow(2));
  B.P.rel1(y[0].pow(4), "y1 order");
  B.P.rel1(y[1].pow(two ? 8 : 4), "y2 order");
  B.P.rel1(y[2].pow(two ? 8 : 4), "y3 order");
  if (two) {
    B.P.rel(y[1].pow(4), t(1, 2), "y2^4 = t12");
    B.P.rel(y[2].pow(4), t(1, 3), "y3^4 = t13");
  }
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    B.P.rel1(t(i, j).pow(2), "t^2");
    for (int k = 0; k < 3; ++k) commute(B.P, t(i, j), y[k], "t central");
  }
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      if (k != l) commute(B.P, y[k].pow(2), y[l], "y^2 central");
  B.center = {t(1, 2), t(1, 3), t(2, 3), y[0].pow(2), y[1].pow(2), y[2].pow(2)};
  B.has_center = true;
}

void t_family(Builder& B) {
  B.pc.add("x", 2);
  B.pc.add("y", 8);
  B.pc.add("t", 4);
  B.pc.set_power("x", B.v({{"t", 2}}));
  B.pc.set_conj("y", "x", B.v({{"y", 1}, {"t", 3}}));
  B.pc.set_conj("t", "x", B.v({{"t", 3}}));
  Word x = B.named_gen("x", {{"x", 1}});
  Word y = B.named_gen("y", {{"y", 1}});
  Word t = comm(y, x);
  // y^x = y t^3, so t = (y^-1 y^x)^3
  B.define("t", (y.inverse() * x.inverse() * y * x).pow(3));
  B.P.rel1(y.pow(8), "y^8");
  B.P.rel1(t.pow(4), "t^4");
  B.P.rel(x.pow(2), t.pow(2), "x^2 = t^2");
  B.P.rel(comm(x, t), t.pow(2), "(x,t) = t^2");
  commute(B.P, t, y, "base abelian");
}

// Relations shared by T1n and the y_2..y_n part of T3n.
void t_block(Builder& B, const Word& x, const std::vector<Word>& y) {
  std::vector<Word> t;
  for (auto& w : y) t.push_back(comm(w, x));
  for (std::size_t i = 0; i < y.size(); ++i) {
    B.P.rel1(y[i].pow(4), "y order");
    B.P.rel1(t[i].pow(4), "t order");
    B.P.rel(comm(t[i], x), t[i].pow(2), "(t,x) = t^2");
    commute(B.P, t[i], y[i], "base abelian");
  }
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (i == j) continue;
      if (i < j) {
        commute(B.P, y[i], y[j], "base abelian");
        commute(B.P, t[i], t[j], "base abelian");
      }
      commute(B.P, t[i], y[j], "base abelian");
    }
}

void t1n(Builder& B, long long n) {
  B.pc.add("x", 2);
  for (int i = 1; i <= n; ++i) {
    B.pc.add(idx("y", i), 4);
    B.pc.add(idx("t", i), 4);
  }
  B.pc.add("X", 4);
  B.pc.set_power("x", B.v({{"X", 1}}));
  for (int i = 1; i <= n; ++i) {
    B.pc.set_conj(idx("y", i), "x", B.v({{idx("y", i), 1}, {idx("t", i), 3}}));
    B.pc.set_conj(idx("t", i), "x", B.v({{idx("t", i), 3}}));
  }
  Word x = B.named_gen("x", {{"x", 1}});
  B.P.kind_names = {"y"};
  std::vector<Word> y;
  for (int i = 1; i <= n; ++i) {
    y.push_back(B.named_gen(idx("y", i), {{idx("y", i), 1}}, 0));
    B.define(idx("t", i), (y.back().inverse() * x.inverse() * y.back() * x).pow(3));
  }
  B.define("X", x.pow(2));
  B.P.rel1(x.pow(8), "x^8");
  t_block(B, x, y);
  for (auto& w : y) B.center.push_back(comm(w, x).pow(2));
  B.center.push_back(x.pow(2));
  // y_i^2 t_i is central as well: (y^2)^x = t^2 y^2 and t^x = t^-1.
  for (auto& w : y) B.center_extra.push_back(w.pow(2) * comm(w, x));
  B.has_center = true;
}

// For i >= 2 the relations forced on a Kleinian quotient are used:
// y_i^2 = t_i, hence t_i^2 = 1 and x inverts y_i.  Taking <t_i>_4
// independent of y_i gives a group mapping onto C4 x D16-.
void t3n(Builder& B, long long n) {
  B.pc.add("x", 2);
  B.pc.add("y1", 8);
  B.pc.add("z", 2);  // z = y1^2 t1
  for (int i = 2; i <= n; ++i) B.pc.add(idx("y", i), 4);
  B.pc.set_power("x", B.v({{"y1", 4}}));
  B.pc.set_conj("y1", "x", B.v({{"y1", 3}, {"z", 1}}));
  for (int i = 2; i <= n; ++i) B.pc.set_conj(idx("y", i), "x", B.v({{idx("y", i), 3}}));
  Word x = B.named_gen("x", {{"x", 1}});
  Word y1 = B.named_gen("y1", {{"y1", 1}});
  B.P.kind_names = {"y"};
  std::vector<Word> y;
  for (int i = 2; i <= n; ++i) y.push_back(B.named_gen(idx("y", i), {{idx("y", i), 1}}, 0));
  B.define("z", y1.pow(-3) * x.inverse() * y1 * x);
  Word t1 = comm(y1, x);
  B.P.rel1(y1.pow(8), "y1^8");
  B.P.rel1((y1.pow(2) * t1).pow(2), "(y1^2 t1)^2");
  commute(B.P, t1, y1, "base abelian");
  B.P.rel(comm(t1, x), t1.pow(2), "(t1,x) = t1^2");
  B.P.rel(x.pow(2), t1.pow(2), "x^2 = t1^2");
  for (std::size_t i = 0; i < y.size(); ++i) {
    B.P.rel1(y[i].pow(4), "y order");
    B.P.rel(comm(y[i], x), y[i].pow(2), "t_i = y_i^2");
    commute(B.P, y[i], y1, "base abelian");
    for (std::size_t j = i + 1; j < y.size(); ++j) commute(B.P, y[i], y[j], "base abelian");
  }
  B.center.push_back(t1.pow(2));
  for (auto& w : y) B.center.push_back(w.pow(2));
  B.center_extra.push_back(y1.pow(2) * t1);
  B.has_center = true;
}

const std::vector<FamilyInfo> kFamilies = {
    {"Cn", "n>=1", "cyclic group of order n"},
    {"Cn^k", "n>=1, k>=1", "direct power C_n^k"},
    {"D2n", "n>=1", "dihedral group of order 2n"},
    {"Q4n", "n>=1", "dicyclic (generalized quaternion) group of order 4n"},
    {"D16plus", "n>=2 (default 2)", "<a> : <b>, a of order 2^(n+1), a^b = a^(2^n+1)"},
    {"D16minus", "n>=2 (default 2)", "<a> : <b>, a of order 2^(n+1), a^b = a^(2^n-1)"},
    {"Dcal", "-", "(<c>_4 x <a>_2) : <b>_2, (b,a) = c^2, order 16"},
    {"DcalPlus", "-", "(<c>_4 x <a>_4) : <b>_2, (b,a) = c a^2, order 32"},
    {"W", "-", "t = (y,x) central, x^4 = y^4 = 1, x^2, y^2 central; order 32"},
    {"W1n", "n>=1", "(prod <t_i>_2 x <y_i>_2) : <x>_4, t_i = (y_i,x); order 4^(n+1)"},
    {"W2n", "n>=1", "prod <y_i>_4 : <x>_4, y_i^x = y_i^-1; order 4^(n+1)"},
    {"V", "-", "as W with x, y of order 8; order 128"},
    {"V1n", "n>=1", "(prod <t_i>_2 x <y_i>_4) : <x>_8; order 8^(n+1)"},
    {"V2n", "n>=1", "prod <y_i>_8 : <x>_8, y_i^x = y_i^5; order 8^n * 8"},
    {"U1", "-", "t_ij = (y_j,y_i), y_k^4 = 1; order 512"},
    {"U2", "-", "as U1 with y_2^4 = t_12, y_3^4 = t_13; order 512"},
    {"T", "-", "(<t>_4 x <y>_8) : <x>, x^2 = t^2 = (x,t); order 64"},
    {"T1n", "n>=1", "(prod <t_i>_4 x <y_i>_4) : <x>_8, (t_i,x) = t_i^2; order 16^n * 8"},
    {"T2n", "n>=1", "prod <y_i>_8 : <x>_4, y_i^x = y_i^3; order 8^n * 4"},
    {"T3n", "n>=1", "x^2 = t_1^2, <y_1>_8, z = y_1^2 t_1 of order 2; y_i^2 = t_i for i >= 2; order 32 * 4^(n-1)"},
    {"Gkm", "k>=0, m>=1, G2 spec, N2 words", "C3^k x ((C3^m x N2) : <u>), u inverting C3^m"},
};

}  // namespace

const std::vector<FamilyInfo>& catalog_families() { return kFamilies; }

bool is_catalog_family(const std::string& name) {
  for (auto& f : kFamilies)
    if (f.name == name) return true;
  return false;
}

namespace {

// max_order = 0 skips the order cap (presentation only).
void assemble(Builder& B, const std::string& family, const Params& p, std::size_t max_order,
              long long& order, std::string& label) {
  label = family;
  auto require = [&](long long ord, std::size_t cap, const std::string& fam) {
    if (cap) kleinia::require(ord, cap, fam);
  };
  auto with_n = [&](long long n) { label = family + "(n=" + std::to_string(n) + ")"; };
  if (family == "Cn" || family == "Cn^k") {
    long long n = param(p, "n", 2, 1), k = param(p, "k", 1, 1, 64);
    order = 1;
    for (int i = 0; i < k; ++i) {
      order *= n;
      require(order, max_order, family);
    }
    label = "C" + std::to_string(n) + (k > 1 ? "^" + std::to_string(k) : "");
    cyclic(B, n, k);
  } else if (family == "D2n") {
    long long n = param(p, "n", 4, 1);
    order = 2 * n;
    require(order, max_order, family);
    label = "D" + std::to_string(2 * n);
    dihedral(B, n);
  } else if (family == "Q4n") {
    long long n = param(p, "n", 2, 1);
    order = 4 * n;
    require(order, max_order, family);
    label = "Q" + std::to_string(4 * n);
    quaternion(B, n);
  } else if (family == "D16plus" || family == "D16minus") {
    long long n = param(p, "n", 2, 2, 10);
    order = 1LL << (n + 2);
    require(order, max_order, family);
    bool plus = family == "D16plus";
    label = "D" + std::to_string(order) + (plus ? "+" : "-");
    semidihedral(B, n, plus ? 1 : -1);
  } else if (family == "Dcal" || family == "DcalPlus") {
    bool plus = family == "DcalPlus";
    order = plus ? 32 : 16;
    dcal(B, plus);
  } else if (family == "W" || family == "V") {
    order = family == "W" ? 32 : 128;
    require(order, max_order, family);
    w_or_v(B, family == "W" ? 4 : 8);
  } else if (family == "W1n" || family == "V1n") {
    long long n = param(p, "n", 1, 1, 12);
    bool w = family == "W1n";
    order = w ? (4LL << (2 * n)) : (8LL << (3 * n));
    require(order, max_order, family);
    with_n(n);
    x1n(B, n, w ? 4 : 8, w ? 2 : 4);
  } else if (family == "W2n") {
    long long n = param(p, "n", 1, 1, 12);
    order = 4LL << (2 * n);
    require(order, max_order, family);
    with_n(n);
    // t_i = (y_i,x) = y_i^2
    x2n(B, n, 4, 4, 3, [](const Word& y, const Word& x) { return comm(y, x); }, 1);
  } else if (family == "V2n") {
    long long n = param(p, "n", 1, 1, 12);
    order = 8LL << (3 * n);
    require(order, max_order, family);
    with_n(n);
    x2n(B, n, 8, 8, 5, [](const Word& y, const Word&) { return y; }, 4);
    // The stated centre <t_i, x^2> with t_i = y_i^4 misses y_i^2, which is
    // central because y^x = y^5.
    for (std::size_t i = 0; i < std::size_t(n); ++i) B.center_extra.push_back(Word::gen(int(i + 1), 2));
  } else if (family == "T2n") {
    long long n = param(p, "n", 1, 1, 12);
    order = 4LL << (3 * n);
    require(order, max_order, family);
    with_n(n);
    x2n(B, n, 4, 8, 3, [](const Word& y, const Word& x) { return comm(y, x); }, 2);
  } else if (family == "U1" || family == "U2") {
    order = 512;
    require(order, max_order, family);
    u_family(B, family == "U2");
  } else if (family == "T") {
    order = 64;
    require(order, max_order, family);
    t_family(B);
  } else if (family == "T1n") {
    long long n = param(p, "n", 1, 1, 12);
    order = 8LL << (4 * n);
    require(order, max_order, family);
    with_n(n);
    t1n(B, n);
  } else if (family == "T3n") {
    long long n = param(p, "n", 1, 1, 12);
    order = 32LL << (2 * (n - 1));
    require(order, max_order, family);
    with_n(n);
    t3n(B, n);
  } else if (family == "Gkm") {
    fail(ErrorKind::InvalidParams, "Gkm needs nested G2/N2 specs; use build_group");
  } else {
    fail(ErrorKind::InvalidParams, "unknown family " + family);
  }

}

CatalogGroup finish(Builder& B, long long order, const std::string& label) {
  CatalogGroup out;
  out.group = B.pc.realize(B.named, B.names, label);
  out.defining = B.defining();
  out.presentation = std::move(B.P);
  out.declared_order = order;
  if ((long long)out.group.order() != order)
    fail(ErrorKind::RelationCheckFailed, label + ": order " + std::to_string(out.group.order()));
  auto bad = out.presentation.failing(out.group, out.group.named_generators());
  if (!bad.empty())
    fail(ErrorKind::RelationCheckFailed,
         label + ": relation '" + out.presentation.relations[bad.front()].text + "' fails");
  bad = out.defining.failing(out.group, out.group.named_generators());
  if (!bad.empty())
    fail(ErrorKind::RelationCheckFailed,
         label + ": pc relation '" + out.defining.relations[bad.front()].text + "' fails");
  if (B.has_center) {
    std::vector<Element> zg;
    const auto& ng = out.group.named_generators();
    for (auto& w : B.center) zg.push_back(w.eval(out.group, ng));
    Subgroup Z = center(out.group);
    if (!generated(out.group, zg).members().subset_of(Z.members()))
      fail(ErrorKind::RelationCheckFailed, label + ": declared centre is not central");
    for (auto& w : B.center_extra) zg.push_back(w.eval(out.group, ng));
    if (!(generated(out.group, zg) == Z))
      fail(ErrorKind::RelationCheckFailed, label + ": declared centre differs");
    out.declared_center = std::move(B.center);
    out.center_corrections = std::move(B.center_extra);
  }
  return out;
}

}  // namespace

CatalogGroup build_catalog(const std::string& family, const Params& p, std::size_t max_order) {
  Builder B;
  long long order = 0;
  std::string label;
  assemble(B, family, p, max_order, order, label);
  return finish(B, order, label);
}

Presentation defining_presentation(const std::string& family, const Params& p) {
  Builder B;
  long long order = 0;
  std::string label;
  assemble(B, family, p, 0, order, label);
  return B.defining();
}

namespace {

// Appends M = C3^m as the last pc generators; chi(g) = -1 marks the pc
// generators of the base that invert M.
void extend_by_m(Builder& B, long long m, const std::set<std::string>& inverting) {
  const std::vector<std::string> base = B.pc.names();
  for (int j = 1; j <= m; ++j) B.pc.add(idx("m", j), 3);
  for (auto& v : B.named) v.resize(B.pc.rank(), 0);
  for (int j = 1; j <= m; ++j)
    for (auto& g : base)
      if (inverting.count(g)) B.pc.set_conj(idx("m", j), g, B.v({{idx("m", j), 2}}));
  const int kind = int(B.P.kind_names.size());
  B.P.kind_names.push_back("m");
  std::vector<Word> ms;
  for (int j = 1; j <= m; ++j) ms.push_back(B.named_gen(idx("m", j), {{idx("m", j), 1}}, kind));
  for (std::size_t j = 0; j < ms.size(); ++j) {
    B.P.rel1(ms[j].pow(3), "m^3");
    for (std::size_t l = j + 1; l < ms.size(); ++l) commute(B.P, ms[j], ms[l], "M abelian");
  }
  B.has_center = false;
  B.center.clear();
  B.center_extra.clear();
}

void assemble_m_extension(Builder& B, const std::string& base, long long n, long long m,
                          std::size_t max_order, long long& order, std::string& label) {
  if (m < 0) fail(ErrorKind::InvalidParams, "m must be nonnegative");
  std::set<std::string> inverting;
  if (base == "C8") {
    assemble(B, "Cn", {{"n", 8}}, max_order, order, label);
    inverting = {"a"};
  } else if (base == "W1n") {
    assemble(B, "W1n", {{"n", n}}, max_order, order, label);
    inverting = {"x"};
  } else if (base == "W21") {
    assemble(B, "W2n", {{"n", 1}}, max_order, order, label);
    inverting = {"y1"};
  } else {
    fail(ErrorKind::InvalidParams, "unknown base " + base + " for the C3^m extension");
  }
  for (int j = 0; j < m; ++j) order *= 3;
  if (max_order) require(order, max_order, "C3^m extension");
  label = "C3^" + std::to_string(m) + ":" + label;
  extend_by_m(B, m, inverting);
}

}  // namespace

CatalogGroup build_m_extension(const std::string& base, long long n, long long m, std::size_t max_order) {
  Builder B;
  long long order = 0;
  std::string label;
  assemble_m_extension(B, base, n, m, max_order, order, label);
  return finish(B, order, label);
}

Presentation m_extension_presentation(const std::string& base, long long n, long long m) {
  Builder B;
  long long order = 0;
  std::string label;
  assemble_m_extension(B, base, n, m, 0, order, label);
  return B.defining();
}

FiniteGroup catalog_group(const std::string& family, const Params& params, std::size_t max_order) {
  return build_catalog(family, params, max_order).group;
}

FiniteGroup gkm_group(int k, int m, const FiniteGroup& G2, const std::vector<Element>& n2_gens,
                      std::size_t max_order) {
  if (k < 0 || m < 1) fail(ErrorKind::InvalidParams, "Gkm needs k >= 0 and m >= 1");
  long long order = G2.order();
  for (int i = 0; i < k + m; ++i) order *= 3;
  require(order, max_order, "Gkm");
  Subgroup N2 = generated(G2, n2_gens);
  if (2 * N2.order() != G2.order()) fail(ErrorKind::InvalidParams, "N2 must have index 2 in G2");
  {
    std::size_t o = G2.order();
    while (o % 2 == 0) o /= 2;
    if (o != 1) fail(ErrorKind::InvalidParams, "G2 must be a 2-group");
  }
  // element: k coordinates, m coordinates (mod 3), then the G2 index
  const int r = k + m;
  using T = std::vector<int>;
  auto mul = [&](const T& a, const T& b) {
    T c(r + 1);
    const bool inv = !N2.contains(Element(a[r]));
    for (int i = 0; i < k; ++i) c[i] = (a[i] + b[i]) % 3;
    for (int i = k; i < r; ++i) c[i] = (a[i] + (inv ? 3 - b[i] : b[i])) % 3;
    c[r] = G2.mul(Element(a[r]), Element(b[r]));
    return c;
  };
  std::vector<T> gens;
  std::vector<std::string> names;
  std::set<std::string> used;
  for (int i = 0; i < r; ++i) {
    T g(r + 1, 0);
    g[i] = 1;
    gens.push_back(g);
    names.push_back(i < k ? idx("k", i + 1) : idx("m", i - k + 1));
    used.insert(names.back());
  }
  for (std::size_t i = 0; i < G2.named_generators().size(); ++i) {
    T g(r + 1, 0);
    g[r] = G2.named_generators()[i];
    gens.push_back(g);
    std::string nm = G2.generator_names()[i];
    while (used.count(nm)) nm += "'";
    used.insert(nm);
    names.push_back(nm);
  }
  std::string label = "G(k=" + std::to_string(k) + ",m=" + std::to_string(m) + ";" + G2.label() + ")";
  FiniteGroup G = FiniteGroup::closure(gens, T(r + 1, 0), mul, label, names, max_order);
  if ((long long)G.order() != order)
    fail(ErrorKind::RelationCheckFailed, label + ": G2's named generators do not generate it");
  // Post-check: K central, M abelian of exponent 3, G2 acts through N2.
  const auto& ng = G.named_generators();
  for (int i = 0; i < r; ++i) {
    if (G.element_order(ng[i]) != 3) fail(ErrorKind::RelationCheckFailed, label + ": 3-part order");
    for (std::size_t j = 0; j < ng.size(); ++j) {
      Element expect = ng[i];
      if (i >= k && j >= std::size_t(r) && !N2.contains(G2.named_generators()[j - r]))
        expect = G.inv(ng[i]);
      if (G.conj(ng[i], ng[j]) != expect) fail(ErrorKind::RelationCheckFailed, label + ": action");
    }
  }
  return G;
}

// ---- GroupSpec ------------------------------------------------------------

GroupSpec GroupSpec::make(std::string family, Params params) {
  GroupSpec s;
  s.variant = Variant::Family;
  s.family = std::move(family);
  s.params = std::move(params);
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.variant = Variant::Product;
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::gkm(int k, int m, GroupSpec g2, std::vector<std::string> n2) {
  GroupSpec s = make("Gkm", {{"k", k}, {"m", m}});
  s.g2 = std::make_shared<GroupSpec>(std::move(g2));
  s.n2 = std::move(n2);
  return s;
}

std::string GroupSpec::display() const {
  if (!label.empty()) return label;
  switch (variant) {
    case Variant::Permutations: return "perm-group";
    case Variant::Table: return "table-group";
    case Variant::Product: {
      std::string s;
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " x " : "") + factors[i].display();
      return s;
    }
    case Variant::Family: break;
  }
  if (family == "Gkm") {
    std::string s = "Gkm(k=" + std::to_string(params.count("k") ? params.at("k") : 0) +
                    ",m=" + std::to_string(params.count("m") ? params.at("m") : 1) + ";G2=" +
                    (g2 ? g2->display() : "?") + ";N2=<";
    for (std::size_t i = 0; i < n2.size(); ++i) s += (i ? "," : "") + n2[i];
    return s + ">)";
  }
  std::string s = family;
  if (!params.empty()) {
    s += "(";
    bool first = true;
    for (auto& [k, v] : params) {
      s += (first ? "" : ",") + k + "=" + std::to_string(v);
      first = false;
    }
    s += ")";
  }
  return s;
}

FiniteGroup build_group(const GroupSpec& spec, std::size_t max_order) {
  switch (spec.variant) {
    case GroupSpec::Variant::Permutations: {
      auto G = FiniteGroup::from_permutations(spec.permutations, spec.display());
      if (G.order() > max_order) fail(ErrorKind::ClosureCapExceeded, "permutation group too large");
      return G;
    }
    case GroupSpec::Variant::Table: {
      std::vector<std::vector<Element>> t;
      for (auto& row : spec.cayley_table) {
        std::vector<Element> r;
        for (int v : row) {
          if (v < 0 || v >= int(spec.cayley_table.size()))
            fail(ErrorKind::InvalidTable, "entry out of range");
          r.push_back(Element(v));
        }
        t.push_back(std::move(r));
      }
      if (t.size() > max_order) fail(ErrorKind::ClosureCapExceeded, "table too large");
      return FiniteGroup::from_table(std::move(t), spec.display());
    }
    case GroupSpec::Variant::Product: {
      if (spec.factors.empty()) fail(ErrorKind::InvalidParams, "empty product");
      FiniteGroup G = build_group(spec.factors[0], max_order);
      for (std::size_t i = 1; i < spec.factors.size(); ++i) {
        FiniteGroup H = build_group(spec.factors[i], max_order);
        if (G.order() * H.order() > max_order)
          fail(ErrorKind::ClosureCapExceeded, "product above the order cap");
        G = direct_product(G, H);
      }
      return G.relabeled(spec.display());
    }
    case GroupSpec::Variant::Family: break;
  }
  if (spec.family == "Gkm") {
    if (!spec.g2) fail(ErrorKind::InvalidParams, "Gkm needs a G2 spec");
    FiniteGroup G2 = build_group(*spec.g2, max_order);
    std::vector<Element> n2;
    for (auto& w : spec.n2) n2.push_back(parse_word(w, G2.generator_names()).eval(G2, G2.named_generators()));
    auto k = spec.params.count("k") ? spec.params.at("k") : 0;
    auto m = spec.params.count("m") ? spec.params.at("m") : 1;
    return gkm_group(int(k), int(m), G2, n2, max_order).relabeled(spec.display());
  }
  return catalog_group(spec.family, spec.params, max_order);
}

GroupSpec parse_group_spec(const nlohmann::json& j) {
  GroupSpec s;
  int variants = int(j.contains("family")) + int(j.contains("permutations")) +
                 int(j.contains("cayley_table")) + int(j.contains("product"));
  if (variants != 1) fail(ErrorKind::InvalidParams, "group spec needs exactly one variant");
  if (j.contains("label")) s.label = j["label"].get<std::string>();
  if (j.contains("permutations")) {
    s.variant = GroupSpec::Variant::Permutations;
    s.permutations = j["permutations"].get<std::vector<std::vector<int>>>();
    if (j.contains("degree")) {
      int d = j["degree"].get<int>();
      for (auto& p : s.permutations)
        if (int(p.size()) != d) fail(ErrorKind::InvalidParams, "permutation length differs from degree");
    }
  } else if (j.contains("cayley_table")) {
    s.variant = GroupSpec::Variant::Table;
    s.cayley_table = j["cayley_table"].get<std::vector<std::vector<int>>>();
  } else if (j.contains("product")) {
    s.variant = GroupSpec::Variant::Product;
    for (auto& f : j["product"]) s.factors.push_back(parse_group_spec(f));
  } else {
    s.variant = GroupSpec::Variant::Family;
    s.family = j["family"].get<std::string>();
    if (!is_catalog_family(s.family)) fail(ErrorKind::InvalidParams, "unknown family " + s.family);
    if (j.contains("params"))
      for (auto& [k, v] : j["params"].items()) {
        if (v.is_number_integer()) s.params[k] = v.get<long long>();
        else if (k == "G2") s.g2 = std::make_shared<GroupSpec>(parse_group_spec(v));
        else if (k == "N2") s.n2 = v.get<std::vector<std::string>>();
        else fail(ErrorKind::InvalidParams, "parameter " + k + " must be an integer");
      }
    if (j.contains("G2")) s.g2 = std::make_shared<GroupSpec>(parse_group_spec(j["G2"]));
    if (j.contains("N2")) s.n2 = j["N2"].get<std::vector<std::string>>();
  }
  return s;
}

nlohmann::json to_json(const GroupSpec& s) {
  nlohmann::json j;
  switch (s.variant) {
    case GroupSpec::Variant::Permutations: j["permutations"] = s.permutations; break;
    case GroupSpec::Variant::Table: j["cayley_table"] = s.cayley_table; break;
    case GroupSpec::Variant::Product: {
      j["product"] = nlohmann::json::array();
      for (auto& f : s.factors) j["product"].push_back(to_json(f));
      break;
    }
    case GroupSpec::Variant::Family: {
      j["family"] = s.family;
      nlohmann::json p = nlohmann::json::object();
      for (auto& [k, v] : s.params) p[k] = v;
      j["params"] = p;
      if (s.g2) j["G2"] = to_json(*s.g2);
      if (!s.n2.empty()) j["N2"] = s.n2;
      break;
    }
  }
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

}  // namespace kleinia
