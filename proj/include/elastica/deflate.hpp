#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace elastica::deflate {

/// Fixed encoder policy. Every knob that changes the output bytes is here;
/// nothing is read from the environment.
struct Policy {
    static constexpr std::size_t window = 32768;
    static constexpr std::size_t min_match = 3;
    static constexpr std::size_t max_match = 258;
    static constexpr std::size_t max_chain = 4096;
    static constexpr std::size_t good_match = 32;   // chain budget quartered once a match this long is in hand
    static constexpr std::size_t nice_match = 258;  // stop searching at this length
    static constexpr std::size_t max_lazy = 258;    // no lazy lookahead past this length
    static constexpr std::size_t too_far = 4096;    // length-3 matches farther than this are dropped
    static constexpr std::size_t block_symbols = 16383;
    static constexpr unsigned max_code_bits = 15;
    static constexpr unsigned max_codelen_bits = 7;
};

/// Adler-32 checksum (RFC 1950).
std::uint32_t adler32(std::span<const std::uint8_t> data) noexcept;

/// Raw DEFLATE stream (RFC 1951).
///
/// Greedy hash-chain search with one-step lazy evaluation, the same shape as
/// zlib's level-9 "slow" path. Each block is emitted as stored, fixed or
/// dynamic Huffman, whichever is smallest (ties: fixed, then dynamic).
/// Dynamic codes are optimal length-limited codes from package-merge.
std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> data);

/// zlib stream (RFC 1950) around deflate_raw: header 0x78 0xDA (32K window,
/// maximum-compression flag, no dictionary) and a big-endian Adler-32 trailer.
/// Framing overhead is exactly 6 bytes.
std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> data);

}  // namespace elastica::deflate
