#include "elastica/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/error.hpp"

namespace elastica {

using detail::require;

namespace {
bool in_alphabet(Symbol s, Alphabet alphabet) noexcept {
    if (s == 1 || s == -1) return true;
    return s == 0 && alphabet == Alphabet::Ternary;
}
}  // namespace

SymbolSeq::SymbolSeq(std::vector<Symbol> symbols, Alphabet alphabet, std::string provenance)
    : symbols_(std::move(symbols)), alphabet_(alphabet), provenance_(std::move(provenance)) {
    for (Symbol s : symbols_) {
        require(in_alphabet(s, alphabet_), "symbol outside declared alphabet");
    }
}

char symbol_char(Symbol s) noexcept { return s > 0 ? '+' : (s < 0 ? '-' : '0'); }

std::string SymbolSeq::serialize() const {
    std::string out(symbols_.size(), '0');
    std::transform(symbols_.begin(), symbols_.end(), out.begin(), symbol_char);
    return out;
}

SymbolSeq SymbolSeq::parse(std::string_view text, Alphabet alphabet, std::string provenance) {
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '+': symbols.push_back(1); break;
            case '-': symbols.push_back(-1); break;
            case '0': symbols.push_back(0); break;
            default: throw ContractError(std::string("invalid symbol character '") + c + "'");
        }
    }
    return SymbolSeq(std::move(symbols), alphabet, std::move(provenance));
}

Symbol ternarize(double a, double tau) {
    require(!std::isnan(a), "cannot ternarize NaN");
    require(tau >= 0.0, "threshold must be non-negative");
    if (a > tau) return 1;
    if (a < -tau) return -1;
    return 0;
}

SymbolSeq output_sequence(const DisplacementField& field, const BeamConfig& config, double tau) {
    require(config.interior >= 6, "output window needs N >= 6");
    require(field.values.nodes() == config.node_count() && field.values.steps() == config.level_count(),
            "field shape does not match beam config");
    const std::size_t n_nodes = config.interior;
    std::vector<Symbol> out;
    out.reserve(5 * config.steps);
    for (std::size_t node = n_nodes - 5; node <= n_nodes - 1; ++node) {
        const auto series = field.values.row(node);
        for (std::size_t n = 1; n <= config.steps; ++n) out.push_back(ternarize(series[n], tau));
    }
    return SymbolSeq(std::move(out), Alphabet::Ternary, "output nodes N-5..N-1");
}

SymbolSeq nonzero_subsequence(const SymbolSeq& seq) {
    std::vector<Symbol> kept;
    kept.reserve(seq.size());
    std::copy_if(seq.symbols().begin(), seq.symbols().end(), std::back_inserter(kept),
                 [](Symbol s) { return s != 0; });
    return SymbolSeq(std::move(kept), Alphabet::Binary, seq.provenance() + " (nonzero)");
}

double frequency_ones(const SymbolSeq& seq) {
    if (seq.empty()) throw UndefinedStatistic("frequency of ones is undefined for an empty sequence");
    const auto ones = std::count(seq.symbols().begin(), seq.symbols().end(), Symbol{1});
    return static_cast<double>(ones) / static_cast<double>(seq.size());
}

}  // namespace elastica
