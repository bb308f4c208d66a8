#pragma once

#include <map>
#include <string>

namespace weilad {

/// Files under data/ (corpus and finite-model instances), keyed by their
/// path relative to data/.
const std::map<std::string, std::string>& embedded_data();

}  // namespace weilad
