#pragma once

// Compressor fixture corpus. Every input is generated from fixed seeds, so
// the golden compressed lengths recorded against it are platform independent.

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "elastica/rng.hpp"

namespace fixtures {

inline std::string uniform_ternary(std::size_t n, std::uint64_t seed) {
    elastica::Xoshiro256 rng(seed);
    std::string out(n, '0');
    for (auto& c : out) c = "+0-"[static_cast<int>(rng.uniform() * 3.0)];
    return out;
}

inline std::string skewed_ternary(std::size_t n, std::uint64_t seed, double p) {
    elastica::Xoshiro256 rng(seed);
    std::string out(n, '0');
    for (auto& c : out) {
        if (rng.uniform() >= 1.0 - p) c = rng.bit() ? '-' : '+';
    }
    return out;
}

inline std::string random_bytes(std::size_t n, std::uint64_t seed) {
    elastica::Xoshiro256 rng(seed);
    std::string out(n, '\0');
    for (auto& c : out) c = static_cast<char>(rng() >> 56);
    return out;
}

inline std::string text_lines() {
    std::string out;
    char line[96];
    for (int i = 0; i < 200; ++i) {
        std::snprintf(line, sizeof line, "line %d: the quick brown fox jumps over the lazy dog\n", i);
        out += line;
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> corpus() {
    return {
        {"single_byte", "a"},
        {"zeros_6200", std::string(6200, '0')},
        {"uniform_ternary_6200", uniform_ternary(6200, 20110101)},
        {"skewed_ternary_70000", skewed_ternary(70000, 77, 0.2)},
        {"random_bytes_4096", random_bytes(4096, 7)},
        {"text_lines", text_lines()},
    };
}

}  // namespace fixtures
