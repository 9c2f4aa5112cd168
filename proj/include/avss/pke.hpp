#pragma once

#include <optional>
#include <span>

#include "avss/group.hpp"

namespace avss {

// Hybrid encryption against a static receiver key: hashed-DH KEM plus a
// hash keystream and a 32-byte integrity tag. The KDF binds receiver id,
// session and slot, so a ciphertext is only openable in the position it was
// created for, and anyone holding a *revealed* receiver secret key can run
// the same decryption (what implication verification does).
//
// Ciphertext layout: [group element eph][u32 body length][body][32-byte tag].

struct Keypair {
    Fp sk;
    Bytes pk;
};

struct PkeContext {
    uint16_t receiver = 0;
    uint16_t slot = 0;
    uint32_t session = 0;
};

Keypair pke_keygen(const GroupOps& grp, Rng& rng);
bool pke_verify_key(const GroupOps& grp, std::span<const uint8_t> pk, const Fp& sk);

size_t pke_ciphertext_size(const GroupOps& grp, size_t msg_len);

// Throws std::invalid_argument on a malformed public key.
Bytes pke_encrypt(const GroupOps& grp, std::span<const uint8_t> pk, const PkeContext& ctx,
                  std::span<const uint8_t> msg, Rng& rng);

// nullopt on any malformation or tag mismatch (DecryptionFailure).
std::optional<Bytes> pke_decrypt(const GroupOps& grp, const Fp& sk, const PkeContext& ctx,
                                 std::span<const uint8_t> ct);

}  // namespace avss
