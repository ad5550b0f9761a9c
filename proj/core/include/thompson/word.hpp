#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace thompson {

// A finite word over {0,1}, stored as the characters '0' and '1'.
using BinaryWord = std::string;

bool is_binary_word(std::string_view w);
bool is_prefix(std::string_view prefix, std::string_view w);
std::size_t common_prefix_length(std::string_view a, std::string_view b);

// Length first, then lexicographic with 0 < 1.
bool shortlex_less(std::string_view a, std::string_view b);

// True iff the words, in the given order, are the leaves of a finite binary
// tree read left to right (a complete prefix code listed in order).
bool is_leaf_sequence(const std::vector<std::string_view>& leaves);

}  // namespace thompson
