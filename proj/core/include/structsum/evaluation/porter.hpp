#pragma once

#include <string>
#include <string_view>

namespace structsum::evaluation {

// Porter (1980) suffix stripping for lowercase ASCII words. Words of two
// letters or fewer, and words with non-letters, are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace structsum::evaluation
