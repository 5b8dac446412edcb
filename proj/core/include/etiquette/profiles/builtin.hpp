#pragma once

#include <string>
#include <vector>

#include "etiquette/profiles/profile.hpp"

namespace etiquette::profiles {

// Reference profiles shipped with the library. "spmd-2018" carries the
// published highway/local parameter tables from a 2018 naturalistic-driving
// study. Unknown names raise a DomainError listing what is available.
EtiquetteProfile builtin_profile(const std::string& name);

std::vector<std::string> builtin_profile_names();

}  // namespace etiquette::profiles
