#pragma once

#include <string>

namespace scsamp {

// 17 significant digits, enough for any double to round-trip.
std::string format_number(double v);

}  // namespace scsamp
