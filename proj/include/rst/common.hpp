/*
 * common.hpp: shared typedefs and small helpers.
 *
 * Conventions used throughout the library:
 *  - all public positions, indexes and ranks are 1-based;
 *  - rank_v(i) counts occurrences of v in the prefix of length i (inclusive);
 *  - select_v(j) returns the 1-based position of the j-th occurrence of v;
 *  - sequences are stored 0-based internally, converted at the interface.
 */

#ifndef RST_COMMON_HPP
#define RST_COMMON_HPP

#include <cassert>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rst {

typedef std::uint64_t size_type;
typedef std::uint8_t  byte_type;
typedef std::uint32_t symbol_type;   // wavelet tree / token symbols
typedef std::int64_t  value_type;    // raw token values (can be negative)

// Range of positions [first, second], 1-based, inclusive. Empty iff first > second.
typedef std::pair<size_type, size_type> range_type;

inline bool empty_range(const range_type& r) { return r.first > r.second; }
inline size_type range_length(const range_type& r) { return empty_range(r) ? 0 : r.second - r.first + 1; }

constexpr size_type WORD_BITS = 64;

inline size_type words_for_bits(size_type bits) { return (bits + WORD_BITS - 1) / WORD_BITS; }

inline size_type bit_width(size_type value)
{
  size_type w = 1;
  while(value >>= 1) { w++; }
  return w;
}

// FNV-1a over a byte sequence; used to bind target indexes to their reference.
inline std::uint64_t fnv1a_hash(const byte_type* data, size_type n)
{
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for(size_type i = 0; i < n; i++) { h ^= data[i]; h *= 0x100000001B3ULL; }
  return h;
}

} // namespace rst

#endif // RST_COMMON_HPP
