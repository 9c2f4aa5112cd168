#pragma once

#include <optional>
#include <vector>

#include "avss/merkle.hpp"
#include "avss/rs.hpp"
#include "avss/util.hpp"

namespace avss {

// Every message on the simulated network is one frame:
//   [1 kind][2 sender][2 receiver][4 session][4 payload length] ++ payload
// (little-endian). Sessions 0..B-1 address sharing instances; the reserved
// values below address the two broadcast channels and the dispersal layer.
enum class MsgKind : uint8_t {
    Val = 1,
    Echo = 2,
    ReadyRbc = 3,
    Frag = 4,
    FragAck = 5,
    Fetch = 6,
    FragReply = 7,
    Ok = 8,
    Ready = 9,
    Implicate = 10,
    R1 = 11,
    R2 = 12,
};

constexpr size_t kHeaderSize = 13;
constexpr uint32_t kSessionRbcCommits = 0xffff0000u;
constexpr uint32_t kSessionRbcRoots = 0xffff0001u;
constexpr uint32_t kSessionAvid = 0xffff0002u;

const char* msg_kind_name(MsgKind k);
bool msg_kind_valid(uint8_t k);

struct Message {
    MsgKind kind;
    uint32_t session = 0;
    Bytes payload;
};

struct Frame {
    PartyId sender = 0;
    PartyId receiver = 0;
    Message msg;
};

Bytes encode_frame(const Frame& f);
std::optional<Frame> decode_frame(std::span<const uint8_t> b);

// Shard wire form: [u32 index][u32 length][data].
void write_shard(Bytes& out, const Shard& s);
bool read_shard(ByteReader& r, Shard& s);

// Branch wire form: [u32 leaf index][u8 depth][depth * 32 bytes].
void write_branch(Bytes& out, const MerkleBranch& b);
bool read_branch(ByteReader& r, MerkleBranch& b);

// VAL and ECHO carry the same shape.
struct RbcShardPayload {
    Hash32 root{};
    MerkleBranch branch;
    Shard shard;
};
Bytes encode_rbc_shard(const RbcShardPayload& p);
std::optional<RbcShardPayload> decode_rbc_shard(std::span<const uint8_t> b);

Bytes encode_rbc_ready(const Hash32& root);
std::optional<Hash32> decode_rbc_ready(std::span<const uint8_t> b);

struct FragEntry {
    uint32_t segment = 0;
    MerkleBranch branch;
    Shard shard;
};
struct FragPayload {
    std::vector<FragEntry> entries;  // [u32 count] ++ entries
};
Bytes encode_frag(const FragPayload& p);
std::optional<FragPayload> decode_frag(std::span<const uint8_t> b);

Bytes encode_fetch(uint32_t segment);
std::optional<uint32_t> decode_fetch(std::span<const uint8_t> b);

Bytes encode_frag_reply(const FragEntry& e);
std::optional<FragEntry> decode_frag_reply(std::span<const uint8_t> b);

struct ImplicatePayload {
    std::array<uint8_t, 32> sk{};  // revealed decryption key, field encoding
    uint16_t k = 0;                // failing ciphertext slot, 1-based
};
Bytes encode_implicate(const ImplicatePayload& p);
std::optional<ImplicatePayload> decode_implicate(std::span<const uint8_t> b);

struct R1Payload {
    uint16_t column = 0;  // receiver's column index
    std::array<uint8_t, 32> value{};
    Bytes witness;  // backend witness serialization, fixed size per backend
};
Bytes encode_r1(const R1Payload& p);
std::optional<R1Payload> decode_r1(std::span<const uint8_t> b, size_t witness_size);

struct R2Payload {
    uint16_t column = 0;  // sender's reconstructed column index
    std::array<uint8_t, 32> value{};
};
Bytes encode_r2(const R2Payload& p);
std::optional<R2Payload> decode_r2(std::span<const uint8_t> b);

}  // namespace avss
