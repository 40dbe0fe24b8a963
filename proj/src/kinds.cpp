#include "rclmc/kinds.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace rclmc {

namespace {
constexpr std::array<std::string_view, 6> kNames = {
    "O-LMC", "U-LMC", "RCD-O-LMC", "RCD-U-LMC", "RCAD-O-LMC", "RCAD-U-LMC"};
}

std::string_view variant_name(SamplerVariant v) {
  return kNames[static_cast<std::size_t>(v)];
}

std::optional<SamplerVariant> parse_variant(std::string_view s) {
  std::string norm(s);
  std::transform(norm.begin(), norm.end(), norm.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::toupper(c));
  });
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (norm == kNames[i]) return static_cast<SamplerVariant>(i);
  return std::nullopt;
}

}  // namespace rclmc
