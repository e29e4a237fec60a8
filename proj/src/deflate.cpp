#include "elastica/deflate.hpp"

#include <algorithm>
#include <array>

namespace elastica::deflate {

namespace {

constexpr std::size_t kLitLenCodes = 286;
constexpr std::size_t kDistCodes = 30;
constexpr std::size_t kCodeLenCodes = 19;
constexpr std::uint16_t kEndOfBlock = 256;

constexpr std::array<std::uint16_t, 29> kLengthBase = {3,  4,  5,  6,  7,  8,  9,  10, 11,  13,
                                                       15, 17, 19, 23, 27, 31, 35, 43, 51,  59,
                                                       67, 83, 99, 115, 131, 163, 195, 227, 258};
constexpr std::array<std::uint8_t, 29> kLengthExtra = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
                                                       2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
constexpr std::array<std::uint16_t, 30> kDistBase = {1,    2,    3,    4,    5,    7,     9,     13,    17,  25,
                                                     33,   49,   65,   97,   129,  193,   257,   385,   513, 769,
                                                     1025, 1537, 2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577};
constexpr std::array<std::uint8_t, 30> kDistExtra = {0, 0, 0, 0, 1, 1, 2, 2,  3,  3,  4,  4,  5,  5,  6,
                                                     6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};
constexpr std::array<std::uint8_t, kCodeLenCodes> kCodeLenOrder = {16, 17, 18, 0, 8,  7, 9,  6, 10, 5,
                                                                   11, 4,  12, 3, 13, 2, 14, 1, 15};

std::size_t length_code(std::size_t length) {
    // Index into kLengthBase of the last base <= length.
    const auto it = std::upper_bound(kLengthBase.begin(), kLengthBase.end(), length);
    return static_cast<std::size_t>(it - kLengthBase.begin()) - 1;
}

std::size_t dist_code(std::size_t dist) {
    const auto it = std::upper_bound(kDistBase.begin(), kDistBase.end(), dist);
    return static_cast<std::size_t>(it - kDistBase.begin()) - 1;
}

class BitWriter {
public:
    void put(std::uint32_t value, unsigned bits) {
        acc_ |= static_cast<std::uint64_t>(value) << fill_;
        fill_ += bits;
        while (fill_ >= 8) {
            out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFFU));
            acc_ >>= 8;
            fill_ -= 8;
        }
    }
    void align() {
        if (fill_ > 0) put(0, 8 - fill_);
    }
    void put_byte(std::uint8_t b) { out_.push_back(b); }
    unsigned pending_bits() const noexcept { return fill_; }
    std::vector<std::uint8_t> finish() {
        align();
        return std::move(out_);
    }

private:
    std::vector<std::uint8_t> out_;
    std::uint64_t acc_ = 0;
    unsigned fill_ = 0;
};

/// Literal when dist == 0, otherwise a (length, distance) back-reference.
struct Token {
    std::uint16_t value;
    std::uint16_t dist;
};

// ---------------------------------------------------------------------------
// LZ77 parse

class Matcher {
public:
    explicit Matcher(std::span<const std::uint8_t> data)
        : data_(data), head_(kHashSize, -1), prev_(data.size(), -1) {}

    struct Match {
        std::size_t length = 0;
        std::size_t dist = 0;
    };

    /// Longest match starting at pos against earlier positions.
    /// Matches shorter than min_match are reported as length 0.
    Match longest(std::size_t pos, std::size_t have) {
        insert_upto(pos);
        Match best;
        if (pos + Policy::min_match > data_.size()) return best;
        const std::size_t limit = std::min(Policy::max_match, data_.size() - pos);
        std::size_t chain = have >= Policy::good_match ? Policy::max_chain / 4 : Policy::max_chain;
        std::int64_t cand = head_[hash_at(pos)];
        while (cand >= 0 && chain-- > 0) {
            const auto c = static_cast<std::size_t>(cand);
            const std::size_t dist = pos - c;
            if (dist > Policy::window) break;
            if (data_[c + best.length] == data_[pos + best.length] || best.length == 0) {
                std::size_t len = 0;
                while (len < limit && data_[c + len] == data_[pos + len]) ++len;
                if (len > best.length) {
                    best = {len, dist};
                    if (len >= Policy::nice_match || len == limit) break;
                }
            }
            cand = prev_[c];
        }
        if (best.length < Policy::min_match) return {};
        if (best.length == Policy::min_match && best.dist > Policy::too_far) return {};
        return best;
    }

    /// Hash every position before `end` that has not been hashed yet.
    void insert_upto(std::size_t end) {
        end = std::min(end, data_.size() >= 2 ? data_.size() - 2 : 0);
        for (; next_ < end; ++next_) {
            const std::size_t h = hash_at(next_);
            prev_[next_] = head_[h];
            head_[h] = static_cast<std::int64_t>(next_);
        }
    }

private:
    static constexpr std::size_t kHashBits = 15;
    static constexpr std::size_t kHashSize = std::size_t{1} << kHashBits;

    std::size_t hash_at(std::size_t pos) const noexcept {
        const std::size_t h = (std::size_t{data_[pos]} << 10) ^ (std::size_t{data_[pos + 1]} << 5) ^ data_[pos + 2];
        return h & (kHashSize - 1);
    }

    std::span<const std::uint8_t> data_;
    std::vector<std::int64_t> head_;
    std::vector<std::int64_t> prev_;
    std::size_t next_ = 0;
};

std::vector<Token> lz77_parse(std::span<const std::uint8_t> data) {
    std::vector<Token> tokens;
    tokens.reserve(data.size() / 2 + 16);
    Matcher matcher(data);
    std::size_t pos = 0;
    Matcher::Match current;
    bool have_current = false;
    while (pos < data.size()) {
        if (!have_current) current = matcher.longest(pos, 0);
        have_current = false;
        if (current.length == 0) {
            tokens.push_back({data[pos], 0});
            ++pos;
            continue;
        }
        if (current.length < Policy::max_lazy && pos + 1 < data.size()) {
            const Matcher::Match next = matcher.longest(pos + 1, current.length);
            if (next.length > current.length) {
                tokens.push_back({data[pos], 0});
                ++pos;
                current = next;
                have_current = true;
                continue;
            }
        }
        tokens.push_back({static_cast<std::uint16_t>(current.length), static_cast<std::uint16_t>(current.dist)});
        pos += current.length;
    }
    return tokens;
}

// ---------------------------------------------------------------------------
// Huffman codes

/// Optimal code lengths bounded by `max_bits` (package-merge). Symbols with
/// zero frequency get length 0. With fewer than two used symbols, the lowest
/// unused indices are promoted so the code stays complete.
std::vector<std::uint8_t> limited_lengths(std::span<const std::uint32_t> freq, unsigned max_bits) {
    std::vector<std::uint8_t> lengths(freq.size(), 0);
    std::vector<std::size_t> used;
    for (std::size_t s = 0; s < freq.size(); ++s) {
        if (freq[s] > 0) used.push_back(s);
    }
    for (std::size_t s = 0; used.size() < 2 && s < freq.size(); ++s) {
        if (freq[s] == 0) used.push_back(s);
    }
    std::sort(used.begin(), used.end());
    if (used.size() == 2) {
        lengths[used[0]] = lengths[used[1]] = 1;
        return lengths;
    }

    struct Node {
        std::uint64_t weight;
        int leaf;   // symbol index, or -1 for a package
        int left;   // children indices in the previous level
        int right;
    };
    std::vector<Node> leaves;
    leaves.reserve(used.size());
    for (std::size_t s : used) leaves.push_back({std::max<std::uint64_t>(freq[s], 1), static_cast<int>(s), -1, -1});
    std::stable_sort(leaves.begin(), leaves.end(),
                     [](const Node& a, const Node& b) { return a.weight < b.weight; });

    std::vector<std::vector<Node>> levels;
    levels.push_back(leaves);
    for (unsigned l = 1; l < max_bits; ++l) {
        const auto& prev = levels.back();
        std::vector<Node> packages;
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
            packages.push_back({prev[i].weight + prev[i + 1].weight, -1, static_cast<int>(i), static_cast<int>(i + 1)});
        }
        std::vector<Node> merged;
        merged.reserve(leaves.size() + packages.size());
        std::merge(leaves.begin(), leaves.end(), packages.begin(), packages.end(), std::back_inserter(merged),
                   [](const Node& a, const Node& b) { return a.weight < b.weight; });
        levels.push_back(std::move(merged));
    }

    // Each leaf occurrence among the first 2n-2 items of the last level adds one bit.
    std::vector<std::pair<std::size_t, int>> stack;
    const std::size_t take = 2 * used.size() - 2;
    for (std::size_t i = 0; i < take; ++i) stack.emplace_back(levels.size() - 1, static_cast<int>(i));
    while (!stack.empty()) {
        const auto [level, index] = stack.back();
        stack.pop_back();
        const Node& node = levels[level][static_cast<std::size_t>(index)];
        if (node.leaf >= 0) {
            ++lengths[static_cast<std::size_t>(node.leaf)];
        } else {
            stack.emplace_back(level - 1, node.left);
            stack.emplace_back(level - 1, node.right);
        }
    }
    return lengths;
}

std::uint32_t reverse_bits(std::uint32_t code, unsigned bits) {
    std::uint32_t r = 0;
    for (unsigned i = 0; i < bits; ++i) {
        r = (r << 1) | (code & 1U);
        code >>= 1;
    }
    return r;
}

/// Canonical codes (RFC 1951 3.2.2), stored bit-reversed for LSB-first output.
std::vector<std::uint32_t> canonical_codes(std::span<const std::uint8_t> lengths) {
    std::array<std::uint32_t, 16> count{};
    for (auto len : lengths) {
        if (len) ++count[len];
    }
    std::array<std::uint32_t, 16> next{};
    std::uint32_t code = 0;
    for (unsigned bits = 1; bits < 16; ++bits) {
        code = (code + count[bits - 1]) << 1;
        next[bits] = code;
    }
    std::vector<std::uint32_t> codes(lengths.size(), 0);
    for (std::size_t s = 0; s < lengths.size(); ++s) {
        if (lengths[s]) codes[s] = reverse_bits(next[lengths[s]]++, lengths[s]);
    }
    return codes;
}

struct CodeSet {
    std::vector<std::uint8_t> lit_len;
    std::vector<std::uint8_t> dist;
};

CodeSet fixed_codes() {
    CodeSet c{std::vector<std::uint8_t>(288), std::vector<std::uint8_t>(30, 5)};
    for (std::size_t s = 0; s < 288; ++s) c.lit_len[s] = s < 144 ? 8 : s < 256 ? 9 : s < 280 ? 7 : 8;
    return c;
}

struct Histogram {
    std::array<std::uint32_t, kLitLenCodes> lit_len{};
    std::array<std::uint32_t, kDistCodes> dist{};
};

Histogram histogram(std::span<const Token> tokens) {
    Histogram h;
    for (const Token& t : tokens) {
        if (t.dist == 0) {
            ++h.lit_len[t.value];
        } else {
            ++h.lit_len[257 + length_code(t.value)];
            ++h.dist[dist_code(t.dist)];
        }
    }
    ++h.lit_len[kEndOfBlock];
    return h;
}

std::uint64_t payload_bits(const Histogram& h, const CodeSet& codes) {
    std::uint64_t bits = 0;
    for (std::size_t s = 0; s < kLitLenCodes; ++s) {
        if (h.lit_len[s] == 0) continue;
        bits += std::uint64_t{h.lit_len[s]} * codes.lit_len[s];
        if (s >= 257) bits += std::uint64_t{h.lit_len[s]} * kLengthExtra[s - 257];
    }
    for (std::size_t d = 0; d < kDistCodes; ++d) {
        bits += std::uint64_t{h.dist[d]} * (codes.dist[d] + kDistExtra[d]);
    }
    return bits;
}

/// Run-length encoded code-length sequence (symbols 0..18 with extra bits).
struct CodeLenToken {
    std::uint8_t symbol;
    std::uint8_t extra;
};

std::vector<CodeLenToken> run_length_encode(std::span<const std::uint8_t> lengths) {
    std::vector<CodeLenToken> out;
    std::size_t i = 0;
    while (i < lengths.size()) {
        const std::uint8_t v = lengths[i];
        std::size_t run = 1;
        while (i + run < lengths.size() && lengths[i + run] == v) ++run;
        i += run;
        if (v == 0) {
            while (run >= 11) {
                const std::size_t n = std::min<std::size_t>(run, 138);
                out.push_back({18, static_cast<std::uint8_t>(n - 11)});
                run -= n;
            }
            if (run >= 3) {
                out.push_back({17, static_cast<std::uint8_t>(run - 3)});
                run = 0;
            }
            for (; run > 0; --run) out.push_back({0, 0});
        } else {
            out.push_back({v, 0});
            --run;
            while (run >= 3) {
                const std::size_t n = std::min<std::size_t>(run, 6);
                out.push_back({16, static_cast<std::uint8_t>(n - 3)});
                run -= n;
            }
            for (; run > 0; --run) out.push_back({v, 0});
        }
    }
    return out;
}

unsigned codelen_extra_bits(std::uint8_t symbol) { return symbol == 16 ? 2 : symbol == 17 ? 3 : symbol == 18 ? 7 : 0; }

struct DynamicHeader {
    CodeSet codes;
    std::size_t hlit = 0;
    std::size_t hdist = 0;
    std::size_t hclen = 0;
    std::vector<CodeLenToken> rle;
    std::vector<std::uint8_t> cl_lengths;
    std::uint64_t bits = 0;
};

DynamicHeader build_dynamic(const Histogram& h) {
    DynamicHeader d;
    d.codes.lit_len = limited_lengths(h.lit_len, Policy::max_code_bits);
    d.codes.dist = limited_lengths(h.dist, Policy::max_code_bits);

    d.hlit = kLitLenCodes;
    while (d.hlit > 257 && d.codes.lit_len[d.hlit - 1] == 0) --d.hlit;
    d.hdist = kDistCodes;
    while (d.hdist > 1 && d.codes.dist[d.hdist - 1] == 0) --d.hdist;

    std::vector<std::uint8_t> all(d.codes.lit_len.begin(), d.codes.lit_len.begin() + static_cast<std::ptrdiff_t>(d.hlit));
    all.insert(all.end(), d.codes.dist.begin(), d.codes.dist.begin() + static_cast<std::ptrdiff_t>(d.hdist));
    d.rle = run_length_encode(all);

    std::array<std::uint32_t, kCodeLenCodes> cl_freq{};
    for (const auto& t : d.rle) ++cl_freq[t.symbol];
    d.cl_lengths = limited_lengths(cl_freq, Policy::max_codelen_bits);

    d.hclen = kCodeLenCodes;
    while (d.hclen > 4 && d.cl_lengths[kCodeLenOrder[d.hclen - 1]] == 0) --d.hclen;

    d.bits = 5 + 5 + 4 + 3 * d.hclen;
    for (const auto& t : d.rle) d.bits += d.cl_lengths[t.symbol] + codelen_extra_bits(t.symbol);
    return d;
}

void write_tokens(BitWriter& w, std::span<const Token> tokens, const CodeSet& codes) {
    const auto lit_codes = canonical_codes(codes.lit_len);
    const auto dist_codes = canonical_codes(codes.dist);
    for (const Token& t : tokens) {
        if (t.dist == 0) {
            w.put(lit_codes[t.value], codes.lit_len[t.value]);
            continue;
        }
        const std::size_t lc = length_code(t.value);
        w.put(lit_codes[257 + lc], codes.lit_len[257 + lc]);
        if (kLengthExtra[lc]) w.put(t.value - kLengthBase[lc], kLengthExtra[lc]);
        const std::size_t dc = dist_code(t.dist);
        w.put(dist_codes[dc], codes.dist[dc]);
        if (kDistExtra[dc]) w.put(t.dist - kDistBase[dc], kDistExtra[dc]);
    }
    w.put(lit_codes[kEndOfBlock], codes.lit_len[kEndOfBlock]);
}

void write_block(BitWriter& w, std::span<const Token> tokens, std::span<const std::uint8_t> raw, bool last) {
    const Histogram h = histogram(tokens);
    static const CodeSet fixed = fixed_codes();
    const DynamicHeader dyn = build_dynamic(h);

    const std::uint64_t fixed_bits = 3 + payload_bits(h, fixed);
    const std::uint64_t dynamic_bits = 3 + dyn.bits + payload_bits(h, dyn.codes);
    const bool can_store = raw.size() <= 0xFFFF;
    const unsigned pad = (8 - (w.pending_bits() + 3) % 8) % 8;
    const std::uint64_t stored_bits = 3 + pad + 32 + 8 * std::uint64_t{raw.size()};

    const std::uint32_t final_bit = last ? 1U : 0U;
    if (can_store && stored_bits < fixed_bits && stored_bits < dynamic_bits) {
        w.put(final_bit, 1);
        w.put(0, 2);
        w.align();
        const auto len = static_cast<std::uint16_t>(raw.size());
        w.put(len, 16);
        w.put(static_cast<std::uint16_t>(~len), 16);
        for (std::uint8_t b : raw) w.put_byte(b);
    } else if (fixed_bits <= dynamic_bits) {
        w.put(final_bit, 1);
        w.put(1, 2);
        write_tokens(w, tokens, fixed);
    } else {
        w.put(final_bit, 1);
        w.put(2, 2);
        w.put(static_cast<std::uint32_t>(dyn.hlit - 257), 5);
        w.put(static_cast<std::uint32_t>(dyn.hdist - 1), 5);
        w.put(static_cast<std::uint32_t>(dyn.hclen - 4), 4);
        for (std::size_t i = 0; i < dyn.hclen; ++i) w.put(dyn.cl_lengths[kCodeLenOrder[i]], 3);
        const auto cl_codes = canonical_codes(dyn.cl_lengths);
        for (const auto& t : dyn.rle) {
            w.put(cl_codes[t.symbol], dyn.cl_lengths[t.symbol]);
            if (const unsigned extra = codelen_extra_bits(t.symbol)) w.put(t.extra, extra);
        }
        write_tokens(w, tokens, dyn.codes);
    }
}

}  // namespace

std::uint32_t adler32(std::span<const std::uint8_t> data) noexcept {
    constexpr std::uint32_t kMod = 65521;
    std::uint32_t a = 1;
    std::uint32_t b = 0;
    for (std::uint8_t byte : data) {
        a = (a + byte) % kMod;
        b = (b + a) % kMod;
    }
    return (b << 16) | a;
}

std::vector<std::uint8_t> deflate_raw(std::span<const std::uint8_t> data) {
    const std::vector<Token> tokens = lz77_parse(data);
    BitWriter w;
    if (tokens.empty()) {
        write_block(w, {}, {}, true);
        return w.finish();
    }
    std::size_t raw_pos = 0;
    for (std::size_t start = 0; start < tokens.size(); start += Policy::block_symbols) {
        const std::size_t end = std::min(tokens.size(), start + Policy::block_symbols);
        const std::span<const Token> block(tokens.data() + start, end - start);
        std::size_t raw_len = 0;
        for (const Token& t : block) raw_len += t.dist == 0 ? 1 : t.value;
        write_block(w, block, data.subspan(raw_pos, raw_len), end == tokens.size());
        raw_pos += raw_len;
    }
    return w.finish();
}

std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out = {0x78, 0xDA};
    const std::vector<std::uint8_t> body = deflate_raw(data);
    out.insert(out.end(), body.begin(), body.end());
    const std::uint32_t check = adler32(data);
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>((check >> shift) & 0xFFU));
    return out;
}

}  // namespace elastica::deflate
