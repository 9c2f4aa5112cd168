#include "avss/group.hpp"

#include <sodium.h>

#include <stdexcept>

#include "avss/hashes.hpp"

namespace avss {

RistrettoGroup::RistrettoGroup() {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
}

Bytes RistrettoGroup::generator() const {
    // base^1; sodium has no exported constant for the canonical base point.
    uint8_t one[32] = {1};
    Bytes out(32);
    crypto_scalarmult_ristretto255_base(out.data(), one);
    return out;
}

Bytes RistrettoGroup::identity() const {
    return Bytes(32, 0);  // all-zero is the canonical identity encoding
}

Bytes RistrettoGroup::derive(std::string_view label) const {
    uint8_t uniform[64];
    Hash32 h0 = Sha256().update_byte(0x20).update({reinterpret_cast<const uint8_t*>(label.data()), label.size()}).final();
    Hash32 h1 = Sha256().update_byte(0x21).update(h0).final();
    std::memcpy(uniform, h0.data(), 32);
    std::memcpy(uniform + 32, h1.data(), 32);
    Bytes out(32);
    crypto_core_ristretto255_from_hash(out.data(), uniform);
    return out;
}

bool RistrettoGroup::validate(std::span<const uint8_t> e) const {
    return e.size() == 32 && crypto_core_ristretto255_is_valid_point(e.data()) == 1;
}

Bytes RistrettoGroup::mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const {
    if (!validate(a) || !validate(b)) throw std::invalid_argument("ristretto mul: invalid element");
    Bytes out(32);
    if (crypto_core_ristretto255_add(out.data(), a.data(), b.data()) != 0)
        throw std::invalid_argument("ristretto mul: add failed");
    return out;
}

Bytes RistrettoGroup::pow(std::span<const uint8_t> base, const Fp& e) const {
    if (!validate(base)) throw std::invalid_argument("ristretto pow: invalid element");
    if (e.is_zero()) return identity();
    Bytes out(32);
    auto scalar = e.to_bytes_le();
    // sodium reports -1 both for bad input and for an identity result; the
    // input is validated above, so -1 here means the result is the identity
    // (e.g. base is the identity).
    if (crypto_scalarmult_ristretto255(out.data(), scalar.data(), base.data()) != 0) return identity();
    return out;
}

namespace {

constexpr uint8_t kTagG1 = 0x30;
constexpr uint8_t kTagGT = 0x31;

std::array<uint8_t, 16> exp_checksum(uint8_t domain, std::span<const uint8_t> exp32) {
    Hash32 h = Sha256().update_byte(domain).update(exp32).final();
    std::array<uint8_t, 16> out;
    std::memcpy(out.data(), h.data(), 16);
    return out;
}

Bytes encode_exp(uint8_t domain, const Fp& e) {
    auto le = e.to_bytes_le();
    Bytes out(le.begin(), le.end());
    auto ck = exp_checksum(domain, le);
    out.insert(out.end(), ck.begin(), ck.end());
    return out;
}

std::optional<Fp> decode_exp(uint8_t domain, std::span<const uint8_t> e) {
    if (e.size() != 48) return std::nullopt;
    auto v = PrimeField::ristretto_order().from_bytes_le(e.subspan(0, 32));
    if (!v) return std::nullopt;
    auto ck = exp_checksum(domain, e.subspan(0, 32));
    if (std::memcmp(ck.data(), e.data() + 32, 16) != 0) return std::nullopt;
    return v;
}

Fp require_exp(uint8_t domain, std::span<const uint8_t> e, const char* what) {
    auto v = decode_exp(domain, e);
    if (!v) throw std::invalid_argument(what);
    return *v;
}

}  // namespace

Bytes ExpGroup::generator() const {
    return encode_exp(kTagG1, PrimeField::ristretto_order().one());
}

Bytes ExpGroup::identity() const {
    return encode_exp(kTagG1, PrimeField::ristretto_order().zero());
}

Bytes ExpGroup::derive(std::string_view label) const {
    Hash32 h = Sha256().update_byte(0x22).update({reinterpret_cast<const uint8_t*>(label.data()), label.size()}).final();
    return encode_exp(kTagG1, PrimeField::ristretto_order().reduce(U256::from_bytes_le(h)));
}

bool ExpGroup::validate(std::span<const uint8_t> e) const {
    return decode_exp(kTagG1, e).has_value();
}

Bytes ExpGroup::mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const {
    Fp x = require_exp(kTagG1, a, "simulated group mul: invalid element");
    Fp y = require_exp(kTagG1, b, "simulated group mul: invalid element");
    return encode_exp(kTagG1, x + y);
}

Bytes ExpGroup::pow(std::span<const uint8_t> base, const Fp& e) const {
    Fp x = require_exp(kTagG1, base, "simulated group pow: invalid element");
    return encode_exp(kTagG1, x * e);
}

Bytes ExpGroup::pair(std::span<const uint8_t> a, std::span<const uint8_t> b) const {
    Fp x = require_exp(kTagG1, a, "pairing: invalid element");
    Fp y = require_exp(kTagG1, b, "pairing: invalid element");
    return encode_exp(kTagGT, x * y);
}

Bytes ExpGroup::gt_mul(std::span<const uint8_t> a, std::span<const uint8_t> b) const {
    Fp x = require_exp(kTagGT, a, "gt mul: invalid element");
    Fp y = require_exp(kTagGT, b, "gt mul: invalid element");
    return encode_exp(kTagGT, x + y);
}

}  // namespace avss
