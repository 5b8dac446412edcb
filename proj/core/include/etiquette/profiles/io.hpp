#pragma once

#include <filesystem>
#include <iosfwd>

#include "etiquette/profiles/profile.hpp"

namespace etiquette::profiles {

// Profile JSON layout:
//   {"schema_version": 1, "name": ..., "scenarios": {"highway": {...}, "local": {...}}}
// with each distribution as {"family": ..., "params": {...}, "units": ...}.
// Round-trips are lossless at full numeric precision; missing scenario blocks
// or fields load as absent.
inline constexpr int kProfileSchemaVersion = 1;

void save_profile_json(std::ostream& out, const EtiquetteProfile& profile);
void save_profile_json(const std::filesystem::path& path, const EtiquetteProfile& profile);

EtiquetteProfile load_profile_json(std::istream& in);
EtiquetteProfile load_profile_json(const std::filesystem::path& path);

}  // namespace etiquette::profiles
