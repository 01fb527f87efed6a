#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace latkit {

using Bits = boost::dynamic_bitset<std::uint64_t>;
using Id = std::uint32_t;

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) {
        f(static_cast<Id>(i));
    }
}

inline std::vector<Id> bits_to_ids(const Bits& b) {
    std::vector<Id> out;
    out.reserve(b.count());
    for_each_bit(b, [&](Id i) { out.push_back(i); });
    return out;
}

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return std::hash<Bits>{}(b); }
};

}  // namespace latkit
