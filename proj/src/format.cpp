#include "ringdelay/format.hpp"

#include <array>
#include <charconv>

namespace ringdelay {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific);
    return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

}  // namespace ringdelay
