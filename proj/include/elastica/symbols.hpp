#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elastica/beam.hpp"

namespace elastica {

enum class Alphabet { Ternary, Binary };

using Symbol = std::int8_t;

/// Ordered sequence over {-1, 0, +1} (ternary) or {-1, +1} (binary).
class SymbolSeq {
public:
    SymbolSeq() = default;
    /// Throws ContractError if a symbol is outside the alphabet.
    SymbolSeq(std::vector<Symbol> symbols, Alphabet alphabet, std::string provenance = {});

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    Alphabet alphabet() const noexcept { return alphabet_; }
    const std::string& provenance() const noexcept { return provenance_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

    std::size_t alphabet_size() const noexcept { return alphabet_ == Alphabet::Ternary ? 3 : 2; }

    /// One byte per symbol: '+', '0', '-'.
    std::string serialize() const;
    /// Inverse of serialize(); the alphabet is given, not inferred.
    static SymbolSeq parse(std::string_view text, Alphabet alphabet, std::string provenance = {});

    friend bool operator==(const SymbolSeq& a, const SymbolSeq& b) noexcept {
        return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
    }

private:
    std::vector<Symbol> symbols_;
    Alphabet alphabet_ = Alphabet::Ternary;
    std::string provenance_;
};

char symbol_char(Symbol s) noexcept;

/// +1 if a > tau, -1 if a < -tau, 0 otherwise (|a| == tau maps to 0).
/// Throws ContractError on NaN input or negative tau.
Symbol ternarize(double a, double tau);

/// Ternarized samples n = 1..M of nodes N-5, ..., N-1, concatenated in that
/// order. Length 5*M. Requires N >= 6.
SymbolSeq output_sequence(const DisplacementField& field, const BeamConfig& config, double tau);

/// Drops the zeros, keeping order. Result is tagged binary.
SymbolSeq nonzero_subsequence(const SymbolSeq& seq);

/// Fraction of +1 symbols. Throws UndefinedStatistic on an empty sequence.
double frequency_ones(const SymbolSeq& seq);

}  // namespace elastica
