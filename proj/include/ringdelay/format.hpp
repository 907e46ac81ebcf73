#pragma once

#include <string>

namespace ringdelay {

/// Scientific notation with the shortest digits that round-trip.
std::string format_double(double value);

}  // namespace ringdelay
