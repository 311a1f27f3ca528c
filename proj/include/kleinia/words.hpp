#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kleinia/group.hpp"

namespace kleinia {

// Word in abstract generators 0..r-1, as (generator, exponent) letters.
class Word {
 public:
  Word() = default;
  static Word gen(int i, int e = 1) {
    Word w;
    if (e) w.letters_.emplace_back(i, e);
    return w;
  }

  Word operator*(const Word& o) const;
  Word inverse() const;
  Word pow(int e) const;
  int max_generator() const;  // -1 for the empty word
  const std::vector<std::pair<int, int>>& letters() const { return letters_; }

  Element eval(const FiniteGroup& G, const std::vector<Element>& images) const;

 private:
  std::vector<std::pair<int, int>> letters_;
};

// (x,y) = x y x^-1 y^-1
inline Word comm(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }
// x^y = y^-1 x y
inline Word conj(const Word& x, const Word& y) { return y.inverse() * x * y; }

struct Relation {
  Word lhs, rhs;
  std::string text;
  int max_generator() const { return std::max(lhs.max_generator(), rhs.max_generator()); }
  bool holds(const FiniteGroup& G, const std::vector<Element>& images) const {
    return lhs.eval(G, images) == rhs.eval(G, images);
  }
};

// A presentation with named generators.  Generators of a repeatable kind
// (y_1..y_n of the catalog families) carry the kind index; fixed ones -1.
struct Presentation {
  std::vector<std::string> names;
  std::vector<int> kind;
  std::vector<std::string> kind_names;
  std::vector<Relation> relations;

  int add_gen(std::string name, int kind_id = -1) {
    names.push_back(std::move(name));
    kind.push_back(kind_id);
    return int(names.size()) - 1;
  }
  void rel(Word l, Word r, std::string text = "") {
    relations.push_back({std::move(l), std::move(r), std::move(text)});
  }
  void rel1(Word l, std::string text = "") { rel(std::move(l), Word(), std::move(text)); }
  // Indices of the failing relations.
  std::vector<std::size_t> failing(const FiniteGroup& G, const std::vector<Element>& images) const;
};

// Parses words such as "y1^2*x", "x^-1 t", "1" over the given generator names.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

}  // namespace kleinia
