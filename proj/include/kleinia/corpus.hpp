#pragma once

#include <string>
#include <vector>

#include "kleinia/catalog.hpp"

namespace kleinia {

struct CorpusEntry {
  std::string name;
  GroupSpec spec;
};

// "theorem-f": groups of the (F) list and small images of them;
// "forbidden": D16, Q16, D24, C3 x Q16, C3 x D16-;
// "abelian": abelian groups of small order;
// "full": catalog families at small parameters (n <= 2, k <= 1, m <= 1),
//         Gkm groups and products with C2, C3, C4.
// Entries are listed in a fixed order; filtering by order is the caller's.
const std::vector<std::string>& corpus_names();
std::vector<CorpusEntry> corpus(const std::string& name);

}  // namespace kleinia
