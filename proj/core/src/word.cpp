#include "thompson/word.hpp"

#include <algorithm>

namespace thompson {

bool is_binary_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

bool is_prefix(std::string_view prefix, std::string_view w) {
  return prefix.size() <= w.size() && w.compare(0, prefix.size(), prefix) == 0;
}

std::size_t common_prefix_length(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

bool shortlex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_leaf_sequence(const std::vector<std::string_view>& leaves) {
  if (leaves.empty()) return false;
  if (leaves.size() == 1) return leaves[0].empty();
  const auto all_of_digit = [](std::string_view w, char d) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [d](char c) { return c == d; });
  };
  if (!all_of_digit(leaves.front(), '0') || !all_of_digit(leaves.back(), '1')) return false;
  // Consecutive leaves have the shape p01^m and p10^k; with the outer leaves
  // pinned to 0 and 1 the intervals tile [0,1].
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    std::string_view a = leaves[i];
    std::string_view b = leaves[i + 1];
    if (!is_binary_word(a) || !is_binary_word(b)) return false;
    std::size_t ea = a.find_last_not_of('1');
    std::size_t eb = b.find_last_not_of('0');
    if (ea == std::string_view::npos || eb == std::string_view::npos) return false;
    if (a[ea] != '0' || b[eb] != '1' || ea != eb) return false;
    if (a.compare(0, ea, b.substr(0, eb)) != 0) return false;
  }
  return true;
}

}  // namespace thompson
