#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace avss {

using Bytes = std::vector<uint8_t>;
using Hash32 = std::array<uint8_t, 32>;
using PartyId = uint16_t;

// Little-endian integer helpers for wire layouts.
inline void put_u16(Bytes& out, uint16_t v) {
    out.push_back(uint8_t(v & 0xff));
    out.push_back(uint8_t(v >> 8));
}

inline void put_u32(Bytes& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(uint8_t(v >> (8 * i)));
}

inline uint16_t get_u16(const uint8_t* p) {
    return uint16_t(p[0]) | uint16_t(p[1]) << 8;
}

inline uint32_t get_u32(const uint8_t* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= uint32_t(p[i]) << (8 * i);
    return v;
}

// Cursor over a byte buffer; every read is bounds-checked so malformed
// payloads surface as a clean failure instead of UB.
struct ByteReader {
    const uint8_t* p;
    size_t len;
    size_t off = 0;

    explicit ByteReader(std::span<const uint8_t> b) : p(b.data()), len(b.size()) {}

    bool ok(size_t k) const { return off + k <= len; }
    bool done() const { return off == len; }

    bool read_u8(uint8_t& v) {
        if (!ok(1)) return false;
        v = p[off++];
        return true;
    }
    bool read_u16(uint16_t& v) {
        if (!ok(2)) return false;
        v = get_u16(p + off);
        off += 2;
        return true;
    }
    bool read_u32(uint32_t& v) {
        if (!ok(4)) return false;
        v = get_u32(p + off);
        off += 4;
        return true;
    }
    bool read_bytes(uint8_t* dst, size_t k) {
        if (!ok(k)) return false;
        std::memcpy(dst, p + off, k);
        off += k;
        return true;
    }
    bool read_vec(Bytes& dst, size_t k) {
        if (!ok(k)) return false;
        dst.assign(p + off, p + off + k);
        off += k;
        return true;
    }
};

inline std::string to_hex(std::span<const uint8_t> b) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(b.size() * 2);
    for (uint8_t c : b) {
        s.push_back(digits[c >> 4]);
        s.push_back(digits[c & 0xf]);
    }
    return s;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// All randomness flows through this wrapper. mt19937_64 has a portable,
// fully specified output sequence; the bounded draw below avoids
// std::uniform_int_distribution, whose mapping is implementation-defined.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // Unbiased draw in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    void fill(std::span<uint8_t> out) {
        size_t i = 0;
        while (i < out.size()) {
            uint64_t v = eng_();
            for (int k = 0; k < 8 && i < out.size(); k++, i++) out[i] = uint8_t(v >> (8 * k));
        }
    }

    // Child stream keyed by tag; consumes one draw from the parent so
    // distinct forks see unrelated sequences.
    Rng fork(uint64_t tag) { return Rng(splitmix64(eng_() ^ splitmix64(tag ^ 0xa5a5a5a5deadbeefull))); }

private:
    std::mt19937_64 eng_;
};

// Deterministic per-trial seed derivation used by fuzzers and sweeps.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51ed270b2f6cull));
}

}  // namespace avss
