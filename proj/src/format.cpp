#include "gnc/format.hpp"

#include <array>
#include <charconv>

namespace gnc {

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), end);
}

std::string format_list(std::span<const double> xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_double(xs[i]);
    }
    out += ']';
    return out;
}

}  // namespace gnc
