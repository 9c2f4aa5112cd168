#pragma once

#include <sodium.h>

#include <span>

#include "avss/util.hpp"

namespace avss {

// The one hash used everywhere (Merkle trees, KDF, mock group encodings).
// Metrics report it by name.
constexpr const char* kHashName = "sha256";
constexpr size_t kHashSize = 32;

inline Hash32 sha256(std::span<const uint8_t> data) {
    Hash32 out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

// Incremental wrapper for domain-tagged hashing.
class Sha256 {
public:
    Sha256() { crypto_hash_sha256_init(&st_); }

    Sha256& update(std::span<const uint8_t> data) {
        crypto_hash_sha256_update(&st_, data.data(), data.size());
        return *this;
    }
    Sha256& update_byte(uint8_t b) { return update({&b, 1}); }
    Sha256& update_u16(uint16_t v) {
        uint8_t b[2] = {uint8_t(v & 0xff), uint8_t(v >> 8)};
        return update({b, 2});
    }
    Sha256& update_u32(uint32_t v) {
        uint8_t b[4];
        for (int i = 0; i < 4; i++) b[i] = uint8_t(v >> (8 * i));
        return update({b, 4});
    }

    Hash32 final() {
        Hash32 out;
        crypto_hash_sha256_final(&st_, out.data());
        return out;
    }

private:
    crypto_hash_sha256_state st_;
};

}  // namespace avss
