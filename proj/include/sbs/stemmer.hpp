#pragma once

#include <string>
#include <string_view>

namespace sbs {

/// English Snowball (Porter2) suffix stripper.
///
/// Expects a lowercase word; tokens containing characters outside [a-z']
/// are returned unchanged, as are words of fewer than three letters.
[[nodiscard]] std::string porter2_stem(std::string_view word);

}  // namespace sbs
