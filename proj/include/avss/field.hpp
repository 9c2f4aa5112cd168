#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avss/util.hpp"

namespace avss {

// 256-bit unsigned integer, 4 little-endian 64-bit limbs. Just enough
// surface for field reduction and exponent scanning; GMP's mpn layer does
// the actual limb arithmetic in field.cpp.
struct U256 {
    std::array<uint64_t, 4> w{0, 0, 0, 0};

    static U256 from_u64(uint64_t x) {
        U256 r;
        r.w[0] = x;
        return r;
    }
    static U256 from_bytes_le(std::span<const uint8_t> b);  // b.size() == 32
    std::array<uint8_t, 32> to_bytes_le() const;

    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    bool bit(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int bit_length() const;

    bool operator==(const U256& o) const { return w == o.w; }
    bool operator!=(const U256& o) const { return !(*this == o); }
};

class PrimeField;

// Field element. Carries a pointer to its field so mixed-field arithmetic
// is caught at the call site (checked in debug builds). Default-constructed
// elements are placeholders and must be assigned before use.
struct Fp {
    U256 v;
    const PrimeField* f = nullptr;

    Fp() = default;
    Fp(U256 value, const PrimeField* field) : v(value), f(field) {}

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator-() const;
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp pow(const U256& e) const;
    Fp pow_u64(uint64_t e) const { return pow(U256::from_u64(e)); }
    Fp inv() const;  // throws std::domain_error on zero

    bool is_zero() const { return v.is_zero(); }
    bool operator==(const Fp& o) const;
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::array<uint8_t, 32> to_bytes_le() const { return v.to_bytes_le(); }
};

// Prime field F_p with p up to 256 bits. Instances must outlive every
// element created from them; the protocol stack keeps one per run.
class PrimeField {
public:
    explicit PrimeField(const U256& modulus);  // throws on modulus < 2

    // Group order of ristretto255; the scalar field shared by both
    // commitment backends. l = 2^252 + 27742317777372353535851937790883648493.
    static const PrimeField& ristretto_order();

    const U256& modulus() const { return p_; }
    int bit_length() const { return bits_; }

    Fp zero() const { return Fp(U256{}, this); }
    Fp one() const { return from_u64(1); }
    Fp from_u64(uint64_t x) const;
    Fp from_i64(int64_t x) const;  // negatives map to p - |x|

    // Rejects encodings >= p (canonical form only).
    std::optional<Fp> from_bytes_le(std::span<const uint8_t> b) const;
    Fp reduce(const U256& x) const;

    // Uniform element: mask to bit_length() bits, reject >= p.
    Fp sample(Rng& rng) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    friend struct Fp;
    U256 p_;
    U256 p_minus_2_;
    int bits_;
    int limbs_;  // significant limbs of p, the mpn divisor length
};

// Montgomery batch inversion; throws std::domain_error if any input is zero.
std::vector<Fp> batch_inverse(std::span<const Fp> xs);

}  // namespace avss
