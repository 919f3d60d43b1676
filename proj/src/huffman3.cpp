#include "dnacloud/huffman3.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <stdexcept>

#include "dnacloud/errors.hpp"

namespace dnacloud {

namespace {

constexpr int kSymbols = 257;  // 256 bytes + zero-weight filler
constexpr int kFiller = 256;

struct Node {
    std::uint64_t weight;
    int tie;  // symbol value for leaves, 257+creation order for merges
    int child[3];
};

struct HeapOrder {
    const std::vector<Node>* nodes;
    bool operator()(int a, int b) const {
        const Node& na = (*nodes)[a];
        const Node& nb = (*nodes)[b];
        if (na.weight != nb.weight) return na.weight > nb.weight;
        return na.tie > nb.tie;
    }
};

}  // namespace

Huffman3Table Huffman3Table::build() {
    std::vector<Node> nodes;
    nodes.reserve(kSymbols * 2);
    for (int s = 0; s < kSymbols; ++s)
        nodes.push_back({s == kFiller ? 0ULL : 1ULL, s, {-1, -1, -1}});

    std::vector<int> heap(kSymbols);
    for (int s = 0; s < kSymbols; ++s) heap[s] = s;
    HeapOrder ord{&nodes};
    std::priority_queue<int, std::vector<int>, HeapOrder> pq(ord, std::move(heap));

    int next_tie = kSymbols;
    while (pq.size() > 1) {
        const int a = pq.top(); pq.pop();
        const int b = pq.top(); pq.pop();
        const int c = pq.top(); pq.pop();
        Node merged{nodes[a].weight + nodes[b].weight + nodes[c].weight,
                    next_tie++, {a, b, c}};
        nodes.push_back(merged);
        pq.push(static_cast<int>(nodes.size()) - 1);
    }

    std::uint8_t lengths[kSymbols] = {};
    std::vector<std::pair<int, std::uint8_t>> stack;  // node, depth
    stack.emplace_back(pq.top(), 0);
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& node = nodes[idx];
        if (node.child[0] < 0) {
            lengths[node.tie] = depth;
        } else {
            for (int k = 0; k < 3; ++k)
                stack.emplace_back(node.child[k],
                                   static_cast<std::uint8_t>(depth + 1));
        }
    }

    Huffman3Table table;
    table.assign_canonical(lengths);
    return table;
}

void Huffman3Table::assign_canonical(const std::uint8_t* lengths) {
    for (int s = 0; s < 256; ++s) {
        if (lengths[s] != 5 && lengths[s] != 6)
            throw std::logic_error("huffman3: codeword length outside {5,6}");
        len_[s] = lengths[s];
        total_trits_ += lengths[s];
        if (lengths[s] == 5)
            ++n5_;
        else
            ++n6_;
    }
    first6_ = static_cast<std::uint16_t>(3 * n5_);

    // canonical order: length 5 symbols by value, then length 6
    std::uint32_t code = 0;
    std::uint8_t prev_len = 0;
    std::uint16_t i5 = 0, i6 = 0;
    for (int len = 5; len <= 6; ++len) {
        for (int s = 0; s < 256; ++s) {
            if (len_[s] != len) continue;
            if (prev_len == 0) {
                code = 0;
            } else {
                ++code;
                for (int k = prev_len; k < len; ++k) code *= 3;
            }
            prev_len = static_cast<std::uint8_t>(len);
            std::uint32_t v = code;
            for (int k = len - 1; k >= 0; --k) {
                trits_[s][k] = static_cast<std::uint8_t>(v % 3);
                v /= 3;
            }
            if (len == 5)
                sym5_[i5++] = static_cast<std::uint8_t>(s);
            else
                sym6_[i6++] = static_cast<std::uint8_t>(s);
        }
    }
}

const Huffman3Table& Huffman3Table::instance() {
    static const Huffman3Table table = build();
    return table;
}

bool Huffman3Table::operator==(const Huffman3Table& other) const {
    return std::memcmp(len_, other.len_, sizeof(len_)) == 0 &&
           std::memcmp(trits_, other.trits_, sizeof(trits_)) == 0 &&
           n5_ == other.n5_ && n6_ == other.n6_ && first6_ == other.first6_ &&
           std::memcmp(sym5_, other.sym5_, sizeof(sym5_)) == 0 &&
           std::memcmp(sym6_, other.sym6_, sizeof(sym6_)) == 0 &&
           total_trits_ == other.total_trits_;
}

std::size_t Huffman3Table::decode_one(const std::uint8_t* trits,
                                      std::size_t available,
                                      std::uint8_t& byte) const {
    if (available < 5) return 0;
    const std::uint32_t v5 = trits[0] * 81u + trits[1] * 27u + trits[2] * 9u +
                             trits[3] * 3u + trits[4];
    if (v5 < n5_) {
        byte = sym5_[v5];
        return 5;
    }
    if (available < 6) return 0;
    const std::uint32_t v6 = v5 * 3u + trits[5];
    const std::uint32_t idx = v6 - first6_;
    if (v6 < first6_ || idx >= n6_)
        throw CodecError(Errc::invalid_prefix,
                         "huffman3: 6-trit path matches no codeword");
    byte = sym6_[idx];
    return 6;
}

void encode_bytes_append(std::span<const std::uint8_t> data,
                         const Huffman3Table& table, TritSeq& out) {
    out.reserve(out.size() + data.size() * 6);
    for (const std::uint8_t b : data) {
        const auto cw = table.codeword(b);
        out.insert(out.end(), cw.begin(), cw.end());
    }
}

TritSeq encode_bytes(std::span<const std::uint8_t> data,
                     const Huffman3Table& table) {
    TritSeq out;
    encode_bytes_append(data, table, out);
    return out;
}

Huffman3Decoded decode_trits(std::span<const std::uint8_t> trits,
                             const Huffman3Table& table) {
    Huffman3Decoded result;
    std::size_t pos = 0;
    std::uint8_t byte = 0;
    while (true) {
        const std::size_t used =
            table.decode_one(trits.data() + pos, trits.size() - pos, byte);
        if (used == 0) break;
        result.bytes.push_back(byte);
        pos += used;
    }
    result.consumed = pos;
    result.leftover.assign(trits.begin() + pos, trits.end());
    return result;
}

void Huffman3Decoder::update(std::span<const std::uint8_t> trits,
                             std::vector<std::uint8_t>& out) {
    std::size_t ip = 0;
    std::uint8_t byte = 0;
    while (carry_len_ > 0) {
        while (carry_len_ < 6 && ip < trits.size())
            carry_[carry_len_++] = trits[ip++];
        const std::size_t used = table_->decode_one(carry_, carry_len_, byte);
        if (used == 0) return;  // still incomplete, all input absorbed
        out.push_back(byte);
        std::memmove(carry_, carry_ + used, carry_len_ - used);
        carry_len_ -= used;
    }
    while (true) {
        const std::size_t used =
            table_->decode_one(trits.data() + ip, trits.size() - ip, byte);
        if (used == 0) break;
        out.push_back(byte);
        ip += used;
    }
    carry_len_ = trits.size() - ip;
    if (carry_len_ > 0) std::memcpy(carry_, trits.data() + ip, carry_len_);
}

}  // namespace dnacloud
