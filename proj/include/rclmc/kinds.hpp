#ifndef RCLMC_KINDS_HPP
#define RCLMC_KINDS_HPP

#include <optional>
#include <string>
#include <string_view>

namespace rclmc {

/// The six sampler variants: {full gradient, single random coordinate,
/// variance-reduced random coordinate} x {overdamped, underdamped}.
enum class SamplerVariant {
  o_lmc,
  u_lmc,
  rcd_o_lmc,
  rcd_u_lmc,
  rcad_o_lmc,
  rcad_u_lmc,
};

enum class GradMode { finite_difference, exact };

constexpr bool is_underdamped(SamplerVariant v) {
  return v == SamplerVariant::u_lmc || v == SamplerVariant::rcd_u_lmc ||
         v == SamplerVariant::rcad_u_lmc;
}

constexpr bool uses_rcd(SamplerVariant v) {
  return v == SamplerVariant::rcd_o_lmc || v == SamplerVariant::rcd_u_lmc;
}

constexpr bool uses_rcad(SamplerVariant v) {
  return v == SamplerVariant::rcad_o_lmc || v == SamplerVariant::rcad_u_lmc;
}

std::string_view variant_name(SamplerVariant v);

/// Parses "RCAD-O-LMC", "rcad_o_lmc", etc. Returns nullopt on unknown names.
std::optional<SamplerVariant> parse_variant(std::string_view s);

}  // namespace rclmc

#endif  // RCLMC_KINDS_HPP
