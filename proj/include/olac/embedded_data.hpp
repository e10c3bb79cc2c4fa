#pragma once

#include <map>
#include <string_view>

namespace olac::embedded {

/// Shipped data files keyed by their path relative to data/.
const std::map<std::string_view, std::string_view>& files();

}  // namespace olac::embedded
