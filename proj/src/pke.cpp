#include "avss/pke.hpp"

#include "avss/hashes.hpp"

namespace avss {

namespace {

Hash32 derive_key(const GroupOps& grp, std::span<const uint8_t> shared, std::span<const uint8_t> eph,
                  const PkeContext& ctx) {
    (void)grp;
    return Sha256()
        .update_byte(0x50)
        .update(shared)
        .update(eph)
        .update_u16(ctx.receiver)
        .update_u32(ctx.session)
        .update_u16(ctx.slot)
        .final();
}

void apply_keystream(const Hash32& key, std::span<uint8_t> body) {
    for (size_t off = 0, blk = 0; off < body.size(); off += 32, blk++) {
        Hash32 pad = Sha256().update_byte(0x51).update(key).update_u32(uint32_t(blk)).final();
        size_t n = std::min<size_t>(32, body.size() - off);
        for (size_t i = 0; i < n; i++) body[off + i] ^= pad[i];
    }
}

Hash32 compute_tag(const Hash32& key, std::span<const uint8_t> body) {
    return Sha256().update_byte(0x52).update(key).update(body).final();
}

}  // namespace

Keypair pke_keygen(const GroupOps& grp, Rng& rng) {
    Fp sk = grp.scalar_field().sample(rng);
    while (sk.is_zero()) sk = grp.scalar_field().sample(rng);
    return Keypair{sk, grp.pow(grp.generator(), sk)};
}

bool pke_verify_key(const GroupOps& grp, std::span<const uint8_t> pk, const Fp& sk) {
    if (!grp.validate(pk) || !sk.f) return false;
    Bytes expect = grp.pow(grp.generator(), sk);
    return pk.size() == expect.size() && std::equal(pk.begin(), pk.end(), expect.begin());
}

size_t pke_ciphertext_size(const GroupOps& grp, size_t msg_len) {
    return grp.element_size() + 4 + msg_len + 32;
}

Bytes pke_encrypt(const GroupOps& grp, std::span<const uint8_t> pk, const PkeContext& ctx,
                  std::span<const uint8_t> msg, Rng& rng) {
    if (!grp.validate(pk)) throw std::invalid_argument("pke_encrypt: malformed public key");
    Fp r = grp.scalar_field().sample(rng);
    while (r.is_zero()) r = grp.scalar_field().sample(rng);
    Bytes eph = grp.pow(grp.generator(), r);
    Bytes shared = grp.pow(pk, r);
    Hash32 key = derive_key(grp, shared, eph, ctx);

    Bytes out = eph;
    put_u32(out, uint32_t(msg.size()));
    size_t body_off = out.size();
    out.insert(out.end(), msg.begin(), msg.end());
    apply_keystream(key, std::span(out).subspan(body_off));
    Hash32 tag = compute_tag(key, std::span(out).subspan(body_off));
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
}

std::optional<Bytes> pke_decrypt(const GroupOps& grp, const Fp& sk, const PkeContext& ctx,
                                 std::span<const uint8_t> ct) {
    size_t es = grp.element_size();
    if (!sk.f || ct.size() < es + 4 + 32) return std::nullopt;
    auto eph = ct.subspan(0, es);
    if (!grp.validate(eph)) return std::nullopt;
    uint32_t len = get_u32(ct.data() + es);
    if (ct.size() != es + 4 + size_t(len) + 32) return std::nullopt;
    auto body = ct.subspan(es + 4, len);
    auto tag = ct.subspan(es + 4 + len, 32);

    Bytes shared = grp.pow(eph, sk);
    Hash32 key = derive_key(grp, shared, eph, ctx);
    Hash32 expect = compute_tag(key, body);
    if (!std::equal(expect.begin(), expect.end(), tag.begin())) return std::nullopt;

    Bytes msg(body.begin(), body.end());
    apply_keystream(key, msg);
    return msg;
}

}  // namespace avss
