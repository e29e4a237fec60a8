#include <doctest.h>

#include <cmath>
#include <limits>

#include "elastica/beam.hpp"
#include "elastica/error.hpp"
#include "elastica/rng.hpp"
#include "elastica/symbols.hpp"

using namespace elastica;

namespace {

SymbolSeq ternary(std::vector<Symbol> s) { return SymbolSeq(std::move(s), Alphabet::Ternary); }

DisplacementField blank_field(const BeamConfig& c) { return {Grid(c.node_count(), c.level_count())}; }

}  // namespace

TEST_CASE("ternarize threshold rule") {
    CHECK(ternarize(0.2, 0.1) == 1);
    CHECK(ternarize(-0.3, 0.1) == -1);
    CHECK(ternarize(0.1, 0.1) == 0);
    CHECK(ternarize(-0.1, 0.1) == 0);
    CHECK(ternarize(0.0, 0.0) == 0);
    CHECK(ternarize(1e-300, 0.0) == 1);
    CHECK_THROWS_AS(ternarize(std::nan(""), 0.1), ContractError);
    CHECK_THROWS_AS(ternarize(1.0, -0.1), ContractError);
    CHECK(ternarize(std::numeric_limits<double>::infinity(), 0.1) == 1);
}

TEST_CASE("ternarize is odd away from the threshold") {
    Xoshiro256 rng(5);
    for (int i = 0; i < 10000; ++i) {
        const double a = (rng.uniform() - 0.5) * 1.0;
        if (std::abs(a) == 0.1) continue;
        CHECK(ternarize(-a, 0.1) == -ternarize(a, 0.1));
    }
}

TEST_CASE("alphabet validation and serialization") {
    CHECK_THROWS_AS(SymbolSeq({1, 0, -1}, Alphabet::Binary), ContractError);
    CHECK_THROWS_AS(SymbolSeq({2}, Alphabet::Ternary), ContractError);
    const auto s = ternary({1, 0, -1, -1});
    CHECK(s.serialize() == "+0--");
    CHECK(SymbolSeq::parse("+0--", Alphabet::Ternary) == s);
    CHECK_THROWS_AS(SymbolSeq::parse("+0x", Alphabet::Ternary), ContractError);
    CHECK_THROWS_AS(SymbolSeq::parse("+0", Alphabet::Binary), ContractError);
    CHECK(s.alphabet_size() == 3);
}

TEST_CASE("output sequence takes nodes N-5..N-1 over levels 1..M") {
    const BeamConfig c = reference_beam();
    auto field = blank_field(c);
    const auto quiet = output_sequence(field, c, 0.1);
    CHECK(quiet.size() == 1000);
    CHECK(quiet.serialize() == std::string(1000, '0'));

    for (std::size_t n = 0; n < c.level_count(); ++n) field.values(25, n) = 1.0;
    const auto s = output_sequence(field, c, 0.1).serialize();
    CHECK(s.substr(0, 200) == std::string(200, '+'));
    CHECK(s.substr(200) == std::string(800, '0'));

    auto marked = blank_field(c);
    marked.values(29, 200) = -1.0;  // last sample of the last node
    marked.values(26, 0) = 5.0;     // level 0 is not sampled
    marked.values(24, 7) = 5.0;     // outside the window
    marked.values(30, 7) = 5.0;
    const auto m = output_sequence(marked, c, 0.1).serialize();
    CHECK(m.back() == '-');
    CHECK(m.substr(0, 999) == std::string(999, '0'));

    BeamConfig other = c;
    other.interior = 12;
    other.steps = 400;
    other.horizon = 70.0;
    CHECK(output_sequence(blank_field(other), other, 0.1).size() == 5 * other.steps);
}

TEST_CASE("nonzero subsequence") {
    const auto sub = nonzero_subsequence(ternary({1, 0, -1, 0, 0, 1}));
    CHECK(sub.alphabet() == Alphabet::Binary);
    CHECK(sub.serialize() == "+-+");
    CHECK(nonzero_subsequence(ternary({0, 0, 0})).empty());
    CHECK(nonzero_subsequence(ternary({1, -1, -1})).serialize() == "+--");

    Xoshiro256 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Symbol> v(1 + rng() % 300);
        std::size_t zeros = 0;
        for (auto& x : v) {
            x = static_cast<Symbol>(static_cast<int>(rng() % 3) - 1);
            zeros += x == 0;
        }
        CHECK(nonzero_subsequence(ternary(v)).size() + zeros == v.size());
    }
}

TEST_CASE("frequency of ones") {
    CHECK(frequency_ones(SymbolSeq({1, 1, -1, -1}, Alphabet::Binary)) == 0.5);
    CHECK(frequency_ones(SymbolSeq(std::vector<Symbol>(7, 1), Alphabet::Binary)) == 1.0);
    CHECK(frequency_ones(SymbolSeq({1, -1, -1}, Alphabet::Binary)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(frequency_ones(SymbolSeq({}, Alphabet::Binary)), UndefinedStatistic);

    const std::vector<Symbol> s{1, -1, 1, 1, -1};
    std::vector<Symbol> twice = s;
    twice.insert(twice.end(), s.begin(), s.end());
    CHECK(frequency_ones(SymbolSeq(twice, Alphabet::Binary)) == frequency_ones(SymbolSeq(s, Alphabet::Binary)));
}
