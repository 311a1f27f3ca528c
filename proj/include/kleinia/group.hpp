#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kleinia/errors.hpp"

namespace kleinia {

using Element = std::uint16_t;

inline constexpr std::size_t kMaxGroupOrder = 4096;
inline constexpr std::size_t kMaxLatticeOrder = 256;

// Bitset over the element indices of a fixed group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);

  std::size_t universe() const { return n_; }
  void insert(Element i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void erase(Element i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(Element i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  std::size_t count() const;
  std::vector<Element> members() const;
  bool subset_of(const ElementSet& o) const;
  ElementSet operator&(const ElementSet& o) const;
  ElementSet operator|(const ElementSet& o) const;
  std::size_t hash() const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  // Lexicographic on the sorted member lists.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

// Immutable finite group given by a full multiplication table.  Element 0
// is the identity.  Copies share the table.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  // Validates identity, inverses and associativity (exhaustive up to order
  // 64, 10*n^2 random triples above).
  static FiniteGroup from_table(std::vector<std::vector<Element>> table, std::string label,
                                std::vector<Element> named_generators = {},
                                std::vector<std::string> generator_names = {});

  // Permutations act on {0..d-1}; the product p*q applies p first.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       std::string label = "perm");

  // Generic breadth-first closure.  Elements are indexed in discovery order
  // starting from the identity; named generator i gets the index of gens[i].
  template <class T, class Mul>
  static FiniteGroup closure(const std::vector<T>& gens, const T& identity, Mul mul,
                             std::string label, std::vector<std::string> names = {},
                             std::size_t cap = kMaxGroupOrder);

  std::size_t order() const { return d_ ? d_->n : 0; }
  Element mul(Element a, Element b) const { return d_->table[std::size_t(a) * d_->n + b]; }
  Element inv(Element a) const { return d_->inverse[a]; }
  Element pow(Element a, long long e) const;
  unsigned element_order(Element a) const { return d_->orders[a]; }
  // x^y = y^-1 x y
  Element conj(Element x, Element y) const { return mul(inv(y), mul(x, y)); }
  // (x,y) = x y x^-1 y^-1
  Element comm(Element x, Element y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }

  const std::string& label() const { return d_->label; }
  const std::vector<Element>& named_generators() const { return d_->gens; }
  const std::vector<std::string>& generator_names() const { return d_->gen_names; }
  std::optional<Element> named(const std::string& name) const;
  std::size_t exponent() const;
  bool is_abelian() const;

  // Identity of the underlying table; two handles with the same id are the
  // same group.
  const void* id() const { return d_.get(); }
  bool same_as(const FiniteGroup& o) const { return d_ == o.d_; }
  bool valid() const { return bool(d_); }

  FiniteGroup relabeled(std::string label) const;

 private:
  struct Data {
    std::size_t n = 0;
    std::vector<Element> table;
    std::vector<Element> inverse;
    std::vector<unsigned> orders;
    std::vector<Element> gens;
    std::vector<std::string> gen_names;
    std::string label;
  };
  static FiniteGroup finish(std::size_t n, std::vector<Element> flat, std::string label,
                            std::vector<Element> gens, std::vector<std::string> names,
                            bool validate);
  std::shared_ptr<const Data> d_;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FiniteGroup g, ElementSet members) : g_(std::move(g)), m_(std::move(members)) {}

  const FiniteGroup& group() const { return g_; }
  const ElementSet& members() const { return m_; }
  std::size_t order() const { return m_.count(); }
  bool contains(Element e) const { return m_.contains(e); }
  std::vector<Element> elements() const { return m_.members(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.m_ == b.m_; }
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    return a.m_ <=> b.m_;
  }

 private:
  FiniteGroup g_;
  ElementSet m_;
};

// --- subgroup operations -------------------------------------------------

Subgroup whole(const FiniteGroup& G);
Subgroup trivial(const FiniteGroup& G);
Subgroup generated(const FiniteGroup& G, const std::vector<Element>& gens);
Subgroup join(const Subgroup& A, const Subgroup& B);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
std::vector<Element> generating_set(const Subgroup& H);

Subgroup center(const FiniteGroup& G);
Subgroup centralizer(const FiniteGroup& G, const Subgroup& H);
Subgroup derived_subgroup(const FiniteGroup& G);
Subgroup derived_subgroup(const Subgroup& H);
Subgroup normalizer(const FiniteGroup& G, const Subgroup& H);
Subgroup core(const FiniteGroup& G, const Subgroup& H);
Subgroup conjugate(const Subgroup& H, Element g);
bool is_normal(const Subgroup& H, const Subgroup& in);
bool is_normal(const FiniteGroup& G, const Subgroup& H);
bool is_abelian(const Subgroup& H);
bool is_metabelian(const FiniteGroup& G);
bool has_abelian_subgroup_of_index_at_most_2(const FiniteGroup& G);

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& G);
std::size_t rational_class_count(const FiniteGroup& G);

// All subgroups, one conjugacy class after another, sorted by order and
// then lexicographic bitset.  Refuses groups above kMaxLatticeOrder.
std::vector<std::vector<Subgroup>> subgroup_classes(const FiniteGroup& G);
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);
std::vector<Subgroup> normal_subgroups(const FiniteGroup& G);
// Subgroups of G that contain N, computed through G/N (no lattice cap on G).
std::vector<Subgroup> subgroups_containing(const FiniteGroup& G, const Subgroup& N);

struct Quotient {
  FiniteGroup group;
  std::vector<Element> projection;   // element of G -> element of G/N
  std::vector<Element> section;      // least-index representative of each coset
};
Quotient quotient(const FiniteGroup& G, const Subgroup& N);

struct Embedded {
  FiniteGroup group;
  std::vector<Element> to_parent;    // element of the new group -> element of G
  std::vector<Element> from_parent;  // inverse, kNone outside the subgroup
};
inline constexpr Element kNone = 0xffff;
Embedded as_group(const Subgroup& H, std::string label = "");

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B, std::string label = "");

// Backtracking over images of a fixed generating set of G.
bool epimorphism_exists(const FiniteGroup& G, const FiniteGroup& H);
bool isomorphic(const FiniteGroup& G, const FiniteGroup& H);

// Extends generator images to a full map; empty if not a homomorphism.
std::vector<Element> extend_homomorphism(const FiniteGroup& G, const std::vector<Element>& gens,
                                         const FiniteGroup& H, const std::vector<Element>& images);

// ------------------------------------------------------------------------

template <class T, class Mul>
FiniteGroup FiniteGroup::closure(const std::vector<T>& gens, const T& identity, Mul mul,
                                 std::string label, std::vector<std::string> names,
                                 std::size_t cap) {
  std::map<T, Element> index;
  std::vector<T> elems{identity};
  index.emplace(identity, 0);
  // right[i][s] = index of elems[i] * gens[s]
  std::vector<std::vector<Element>> right;
  // parent[i] = (p, s) with elems[i] = elems[p] * gens[s]
  std::vector<std::pair<Element, std::size_t>> parent{{0, 0}};
  std::vector<Element> gen_index(gens.size());
  auto find_or_add = [&](const T& t, Element p, std::size_t s) -> Element {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    if (elems.size() >= cap)
      fail(ErrorKind::ClosureCapExceeded,
           label + " exceeds " + std::to_string(cap) + " elements");
    Element id = Element(elems.size());
    elems.push_back(t);
    index.emplace(t, id);
    parent.emplace_back(p, s);
    return id;
  };
  // The named generators are inserted first so that they get small indices.
  for (std::size_t s = 0; s < gens.size(); ++s) gen_index[s] = find_or_add(gens[s], 0, s);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::vector<Element> row(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s) {
      T prod = mul(elems[i], gens[s]);
      row[s] = find_or_add(prod, Element(i), s);
    }
    right.push_back(std::move(row));
  }
  const std::size_t n = elems.size();
  // Fill the table row by row: a*b = (a*parent(b))*gen.  Process b in
  // discovery order so the parent column is already known.
  std::vector<Element> flat(n * n);
  for (std::size_t a = 0; a < n; ++a) flat[a * n] = Element(a);
  for (std::size_t b = 1; b < n; ++b) {
    auto [p, s] = parent[b];
    for (std::size_t a = 0; a < n; ++a) flat[a * n + b] = right[flat[a * n + p]][s];
  }
  return finish(n, std::move(flat), std::move(label), std::move(gen_index), std::move(names),
                true);
}

}  // namespace kleinia
