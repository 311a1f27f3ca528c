#include "kleinia/words.hpp"

#include <algorithm>
#include <cctype>

namespace kleinia {

Word Word::operator*(const Word& o) const {
  Word r = *this;
  for (auto [g, e] : o.letters_) {
    if (!r.letters_.empty() && r.letters_.back().first == g) {
      r.letters_.back().second += e;
      if (r.letters_.back().second == 0) r.letters_.pop_back();
    } else {
      r.letters_.emplace_back(g, e);
    }
  }
  return r;
}

Word Word::inverse() const {
  Word r;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    r.letters_.emplace_back(it->first, -it->second);
  return r;
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  Word r;
  for (int i = 0; i < std::abs(e); ++i) r = r * base;
  return r;
}

int Word::max_generator() const {
  int m = -1;
  for (auto [g, e] : letters_) m = std::max(m, g);
  return m;
}

Element Word::eval(const FiniteGroup& G, const std::vector<Element>& images) const {
  Element r = 0;
  for (auto [g, e] : letters_) r = G.mul(r, G.pow(images[g], e));
  return r;
}

std::vector<std::size_t> Presentation::failing(const FiniteGroup& G,
                                               const std::vector<Element>& images) const {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (!relations[i].holds(G, images)) bad.push_back(i);
  return bad;
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  Word w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] == '1' && (i + 1 == text.size() || !std::isalnum((unsigned char)text[i + 1]))) {
      ++i;
      skip();
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_' || text[j] == '\''))
      ++j;
    std::string name = text.substr(i, j - i);
    auto it = std::find(names.begin(), names.end(), name);
    if (name.empty() || it == names.end())
      fail(ErrorKind::InvalidParams, "unknown generator '" + name + "' in word '" + text + "'");
    int e = 1;
    i = j;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t k = i;
      if (k < text.size() && (text[k] == '-' || text[k] == '+')) ++k;
      while (k < text.size() && std::isdigit((unsigned char)text[k])) ++k;
      if (k == i) fail(ErrorKind::InvalidParams, "bad exponent in word '" + text + "'");
      e = std::stoi(text.substr(i, k - i));
      i = k;
    }
    w = w * Word::gen(int(it - names.begin()), e);
    skip();
  }
  return w;
}

}  // namespace kleinia
