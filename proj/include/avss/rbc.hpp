#pragma once

#include <map>
#include <optional>
#include <set>

#include "avss/proto.hpp"

namespace avss {

// Reliable broadcast, erasure-coded Bracha style: the broadcaster encodes
// the value (n-2f, n), Merkle-roots the shards and VALs one shard per
// party; parties ECHO their shard, re-encode and check the root once n-f
// ECHOes arrive, then READY; f+1 READYs amplify, 2f+1 READYs plus n-2f
// ECHOes deliver. One ECHO and one READY per instance, ECHO bookkeeping is
// keyed by root so an equivocating broadcaster just splits the quorums.
class RbcPeer {
public:
    RbcPeer(int n, int f, uint32_t session, PartyId self, PartyId broadcaster, Phase phase);

    static std::vector<Outbound> broadcaster_start(int n, int f, uint32_t session, std::span<const uint8_t> value,
                                                   Phase phase);

    StepResult on_message(PartyId from, const Message& msg);

    bool delivered() const { return delivered_; }
    const Bytes& value() const { return value_; }

private:
    struct RootState {
        std::map<PartyId, Shard> echoes;  // branch-verified shards by sender
        std::set<PartyId> readys;
        bool checked = false;  // ran the n-f interpolate-and-recommit check
        bool check_ok = false;
        bool aborted = false;  // check failed: never READY for this root
        Bytes decoded;         // cached value when check_ok
    };

    StepResult on_val(PartyId from, std::span<const uint8_t> payload);
    StepResult on_echo(PartyId from, std::span<const uint8_t> payload);
    StepResult on_ready(PartyId from, std::span<const uint8_t> payload);
    StepResult run_thresholds(const Hash32& root);
    Bytes decode_from_echoes(const RootState& st) const;
    std::vector<Outbound> multicast(MsgKind kind, Bytes payload) const;

    int n_, f_;
    uint32_t session_;
    PartyId self_, bcaster_;
    Phase phase_;
    bool echo_sent_ = false, ready_sent_ = false, delivered_ = false;
    Bytes value_;
    std::map<Hash32, RootState> roots_;
};

}  // namespace avss
