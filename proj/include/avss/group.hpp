#pragma once

#include <span>
#include <string_view>

#include "avss/field.hpp"
#include "avss/util.hpp"

namespace avss {

// Byte-level prime-order group interface. Elements travel as opaque byte
// strings; both implementations share the ristretto255 scalar field so the
// whole stack runs over a single F_p.
class GroupOps {
public:
    virtual ~GroupOps() = default;

    virtual std::string_view name() const = 0;
    virtual size_t element_size() const = 0;
    const PrimeField& scalar_field() const { return PrimeField::ristretto_order(); }

    virtual Bytes generator() const = 0;
    virtual Bytes identity() const = 0;
    // Deterministic independent generator derived from a label (nothing-up-
    // my-sleeve second base for Pedersen-style commitments).
    virtual Bytes derive(std::string_view label) const = 0;

    virtual bool validate(std::span<const uint8_t> e) const = 0;
    // Group operation and scalar exponentiation. Inputs must validate;
    // throws std::invalid_argument otherwise.
    virtual Bytes mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const = 0;
    virtual Bytes pow(std::span<const uint8_t> base, const Fp& e) const = 0;
};

// Real group: libsodium ristretto255, 32-byte elements.
class RistrettoGroup final : public GroupOps {
public:
    RistrettoGroup();
    std::string_view name() const override { return "ristretto255"; }
    size_t element_size() const override { return 32; }
    Bytes generator() const override;
    Bytes identity() const override;
    Bytes derive(std::string_view label) const override;
    bool validate(std::span<const uint8_t> e) const override;
    Bytes mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const override;
    Bytes pow(std::span<const uint8_t> base, const Fp& e) const override;
};

// Simulated pairing-friendly source group with 48-byte elements. An element
// encodes its own discrete log plus a binding checksum, so the pairing
// below is computable; every verification equation behaves exactly as it
// would over a real bilinear group, but discrete logs are transparent, so
// this backend models sizes and algebra, not cryptographic hardness.
class ExpGroup final : public GroupOps {
public:
    std::string_view name() const override { return "simulated-pairing-g1"; }
    size_t element_size() const override { return 48; }
    Bytes generator() const override;
    Bytes identity() const override;
    Bytes derive(std::string_view label) const override;
    bool validate(std::span<const uint8_t> e) const override;
    Bytes mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const override;
    Bytes pow(std::span<const uint8_t> base, const Fp& e) const override;

    // Bilinear map into a target group with the same encoding shape (48
    // bytes, distinct checksum domain): e(g^a, g^b) = gt^(a*b).
    Bytes pair(std::span<const uint8_t> a, std::span<const uint8_t> b) const;
    Bytes gt_mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const;
};

}  // namespace avss
