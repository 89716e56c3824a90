#pragma once

#include <json.hpp>

#include "gkcs/states.hpp"

// JSON state export/import.  Doubles serialize with shortest round-trip
// representation, so export -> import reproduces every value bit-exactly.

namespace gkcs::json_io {

nlohmann::json combined_to_json(const states::CombinedCS& cs);
states::CombinedCS combined_from_json(const nlohmann::json& j);

}  // namespace gkcs::json_io
