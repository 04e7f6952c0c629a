#pragma once
#include <cstdint>
#include <string>
#include <string_view>

namespace tssp {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex_u64(std::uint64_t v);

} // namespace tssp
