#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mispec {

// Subsets of a carrier of at most 64 elements.
using ElemSet = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr ElemSet bit(int i) { return ElemSet{1} << i; }
constexpr bool has(ElemSet s, int i) { return (s >> i) & 1u; }
constexpr int count(ElemSet s) { return std::popcount(s); }
constexpr ElemSet all_of(int n) { return n >= 64 ? ~ElemSet{0} : bit(n) - 1; }
constexpr bool subset(ElemSet a, ElemSet b) { return (a & ~b) == 0; }

inline std::vector<int> members(ElemSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

template <class F>
void for_each_bit(ElemSet s, F&& f) {
    while (s) {
        f(std::countr_zero(s));
        s &= s - 1;
    }
}

} // namespace mispec
