#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "avss/field.hpp"
#include "avss/util.hpp"

namespace avss {

// Systematic Reed-Solomon in evaluation form: the payload is read as
// evaluations of an implied polynomial at points 1..k and extended to points
// 1..n, so the first k shards are exactly the (length-prefixed, zero-padded)
// payload. Byte flavor works per position over GF(2^8) and is what the
// network layers use; the field flavor mirrors it over F_p for tests that
// pin down the algebra.

struct Shard {
    uint32_t index = 0;  // 0-based shard position, < n
    Bytes data;
};

size_t rs_shard_size(size_t payload_len, int k);

// n shards of rs_shard_size bytes each. Throws std::invalid_argument unless
// 1 <= k <= n <= 255.
std::vector<Bytes> rs_encode(std::span<const uint8_t> payload, int k, int n);

// Erasure decode from any k distinct shards; nullopt on malformed input
// (too few distinct indices, index out of range, ragged sizes, or an
// implausible length prefix).
std::optional<Bytes> rs_decode(std::span<const Shard> shards, int k, int n);

// Field flavor. Payload length must be a multiple of k (throws otherwise);
// each shard holds payload.size()/k elements.
std::vector<std::vector<Fp>> rs_encode_field(std::span<const Fp> payload, int k, int n);
std::optional<std::vector<Fp>> rs_decode_field(std::span<const std::pair<uint32_t, std::vector<Fp>>> shards, int k,
                                               int n);

}  // namespace avss
