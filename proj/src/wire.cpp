#include "avss/wire.hpp"

namespace avss {

const char* msg_kind_name(MsgKind k) {
    switch (k) {
        case MsgKind::Val: return "VAL";
        case MsgKind::Echo: return "ECHO";
        case MsgKind::ReadyRbc: return "READY_RBC";
        case MsgKind::Frag: return "FRAG";
        case MsgKind::FragAck: return "FRAG_ACK";
        case MsgKind::Fetch: return "FETCH";
        case MsgKind::FragReply: return "FRAG_REPLY";
        case MsgKind::Ok: return "OK";
        case MsgKind::Ready: return "READY";
        case MsgKind::Implicate: return "IMPLICATE";
        case MsgKind::R1: return "R1";
        case MsgKind::R2: return "R2";
    }
    return "?";
}

bool msg_kind_valid(uint8_t k) {
    return k >= uint8_t(MsgKind::Val) && k <= uint8_t(MsgKind::R2);
}

Bytes encode_frame(const Frame& f) {
    Bytes out;
    out.reserve(kHeaderSize + f.msg.payload.size());
    out.push_back(uint8_t(f.msg.kind));
    put_u16(out, f.sender);
    put_u16(out, f.receiver);
    put_u32(out, f.msg.session);
    put_u32(out, uint32_t(f.msg.payload.size()));
    out.insert(out.end(), f.msg.payload.begin(), f.msg.payload.end());
    return out;
}

std::optional<Frame> decode_frame(std::span<const uint8_t> b) {
    if (b.size() < kHeaderSize) return std::nullopt;
    if (!msg_kind_valid(b[0])) return std::nullopt;
    Frame f;
    f.msg.kind = MsgKind(b[0]);
    f.sender = get_u16(b.data() + 1);
    f.receiver = get_u16(b.data() + 3);
    f.msg.session = get_u32(b.data() + 5);
    uint32_t len = get_u32(b.data() + 9);
    if (b.size() != kHeaderSize + size_t(len)) return std::nullopt;
    f.msg.payload.assign(b.begin() + kHeaderSize, b.end());
    return f;
}

void write_shard(Bytes& out, const Shard& s) {
    put_u32(out, s.index);
    put_u32(out, uint32_t(s.data.size()));
    out.insert(out.end(), s.data.begin(), s.data.end());
}

bool read_shard(ByteReader& r, Shard& s) {
    uint32_t len;
    if (!r.read_u32(s.index) || !r.read_u32(len)) return false;
    return r.read_vec(s.data, len);
}

void write_branch(Bytes& out, const MerkleBranch& b) {
    put_u32(out, b.leaf_index);
    out.push_back(uint8_t(b.sibs.size()));
    for (const Hash32& h : b.sibs) out.insert(out.end(), h.begin(), h.end());
}

bool read_branch(ByteReader& r, MerkleBranch& b) {
    uint8_t depth;
    if (!r.read_u32(b.leaf_index) || !r.read_u8(depth)) return false;
    if (depth > 32) return false;
    b.sibs.assign(depth, Hash32{});
    for (auto& h : b.sibs)
        if (!r.read_bytes(h.data(), 32)) return false;
    return true;
}

Bytes encode_rbc_shard(const RbcShardPayload& p) {
    Bytes out(p.root.begin(), p.root.end());
    write_branch(out, p.branch);
    write_shard(out, p.shard);
    return out;
}

std::optional<RbcShardPayload> decode_rbc_shard(std::span<const uint8_t> b) {
    RbcShardPayload p;
    ByteReader r(b);
    if (!r.read_bytes(p.root.data(), 32) || !read_branch(r, p.branch) || !read_shard(r, p.shard) || !r.done())
        return std::nullopt;
    return p;
}

Bytes encode_rbc_ready(const Hash32& root) {
    return Bytes(root.begin(), root.end());
}

std::optional<Hash32> decode_rbc_ready(std::span<const uint8_t> b) {
    if (b.size() != 32) return std::nullopt;
    Hash32 h;
    std::memcpy(h.data(), b.data(), 32);
    return h;
}

static void write_frag_entry(Bytes& out, const FragEntry& e) {
    put_u32(out, e.segment);
    write_branch(out, e.branch);
    write_shard(out, e.shard);
}

static bool read_frag_entry(ByteReader& r, FragEntry& e) {
    return r.read_u32(e.segment) && read_branch(r, e.branch) && read_shard(r, e.shard);
}

Bytes encode_frag(const FragPayload& p) {
    Bytes out;
    put_u32(out, uint32_t(p.entries.size()));
    for (const FragEntry& e : p.entries) write_frag_entry(out, e);
    return out;
}

std::optional<FragPayload> decode_frag(std::span<const uint8_t> b) {
    FragPayload p;
    ByteReader r(b);
    uint32_t count;
    if (!r.read_u32(count) || count > (1u << 20)) return std::nullopt;
    p.entries.resize(count);
    for (auto& e : p.entries)
        if (!read_frag_entry(r, e)) return std::nullopt;
    if (!r.done()) return std::nullopt;
    return p;
}

Bytes encode_fetch(uint32_t segment) {
    Bytes out;
    put_u32(out, segment);
    return out;
}

std::optional<uint32_t> decode_fetch(std::span<const uint8_t> b) {
    if (b.size() != 4) return std::nullopt;
    return get_u32(b.data());
}

Bytes encode_frag_reply(const FragEntry& e) {
    Bytes out;
    write_frag_entry(out, e);
    return out;
}

std::optional<FragEntry> decode_frag_reply(std::span<const uint8_t> b) {
    FragEntry e;
    ByteReader r(b);
    if (!read_frag_entry(r, e) || !r.done()) return std::nullopt;
    return e;
}

Bytes encode_implicate(const ImplicatePayload& p) {
    Bytes out(p.sk.begin(), p.sk.end());
    put_u16(out, p.k);
    return out;
}

std::optional<ImplicatePayload> decode_implicate(std::span<const uint8_t> b) {
    if (b.size() != 34) return std::nullopt;
    ImplicatePayload p;
    std::memcpy(p.sk.data(), b.data(), 32);
    p.k = get_u16(b.data() + 32);
    return p;
}

Bytes encode_r1(const R1Payload& p) {
    Bytes out;
    put_u16(out, p.column);
    out.insert(out.end(), p.value.begin(), p.value.end());
    out.insert(out.end(), p.witness.begin(), p.witness.end());
    return out;
}

std::optional<R1Payload> decode_r1(std::span<const uint8_t> b, size_t witness_size) {
    if (b.size() != 2 + 32 + witness_size) return std::nullopt;
    R1Payload p;
    p.column = get_u16(b.data());
    std::memcpy(p.value.data(), b.data() + 2, 32);
    p.witness.assign(b.begin() + 34, b.end());
    return p;
}

Bytes encode_r2(const R2Payload& p) {
    Bytes out;
    put_u16(out, p.column);
    out.insert(out.end(), p.value.begin(), p.value.end());
    return out;
}

std::optional<R2Payload> decode_r2(std::span<const uint8_t> b) {
    if (b.size() != 34) return std::nullopt;
    R2Payload p;
    p.column = get_u16(b.data());
    std::memcpy(p.value.data(), b.data() + 2, 32);
    return p;
}

}  // namespace avss
