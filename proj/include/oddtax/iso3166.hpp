#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace oddtax::iso3166 {

struct Country {
  std::string_view alpha2;
  std::string_view name;
};

/// Edition of the embedded alpha-2 snapshot.
inline constexpr std::string_view kSnapshot = "ISO 3166-1:2020 (249 assigned codes)";

/// All officially assigned alpha-2 codes, sorted by code.
std::span<const Country> countries();

bool is_assigned(std::string_view alpha2);

/// Short English name; DE, JP and US use the taxonomy's display names.
std::optional<std::string_view> name_of(std::string_view alpha2);

}  // namespace oddtax::iso3166
