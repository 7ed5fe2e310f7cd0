#pragma once

#include <map>
#include <optional>
#include <string>

#include "packcol/families.hpp"

namespace packcol {

// Claimed packing chromatic number, as a closed interval.
struct ClaimedValue {
  int theorem = 0;
  int lower = 0;
  int upper = 0;
  bool exact() const { return lower == upper; }
};

inline std::optional<ClaimedValue> claimed_chi(const std::string& family, const std::map<std::string, int>& p) {
  auto get = [&](const char* k) {
    auto it = p.find(k);
    return it == p.end() ? -1 : it->second;
  };
  if (family == "CORONA") {
    int n = get("n");
    if (n < 3) return std::nullopt;
    int v = n <= 4 ? 4 : 5;
    return ClaimedValue{3, v, v};
  }
  if (family == "CL") {
    int n = get("n");
    if (n < 3) return std::nullopt;
    int v = 6;
    if (n == 3 || (n % 2 == 0 && n != 8 && n != 14)) v = 5;
    if (n == 7 || n == 8 || n == 9) v = 7;
    return ClaimedValue{4, v, v};
  }
  if (family == "H" || (family == "GENH" && get("l") == 1)) {
    int r = get("r");
    if (r < 2) return std::nullopt;
    if (r % 2 == 0) return ClaimedValue{5, 5, 5};
    return ClaimedValue{5, 6, 7};
  }
  if (family == "GENH") {
    int l = get("l"), r = get("r");
    if (l < 2 || r < 2) return std::nullopt;
    if (l == 2) {
      int v = (r == 2 || r == 4 || r == 7 || r == 8 || r == 11) ? 7 : 6;
      return ClaimedValue{7, v, v};
    }
    if (l == 5) return ClaimedValue{8, 6, 6};
    int v = r % 2 == 0 ? 5 : 6;
    return ClaimedValue{6, v, v};
  }
  return std::nullopt;
}

}  // namespace packcol
