#pragma once

#include <map>
#include <optional>
#include <set>

#include "avss/rbc.hpp"

namespace avss {

// Asynchronous verifiable information dispersal for the ciphertext store.
// The dealer cuts the store into fixed segments, encodes each (t+1, n),
// reliably broadcasts the vector of per-segment Merkle roots, and hands
// every party its fragment of every segment in one direct FRAG message. A
// party acks after all of its fragments verify against the delivered
// roots; 2t+1 acks mean at least t+1 correct parties hold verified
// fragments, so any later retrieve quorum can be met. Retrieval is a pull:
// FETCH a segment from everyone, decode from the first t+1 verified
// replies, re-encode and compare to the root. Because the root pins every
// leaf, one subset failing that check means every subset fails, so a
// mismatch is a definitive retrieve failure, not bad luck.
class AvidPeer {
public:
    struct RetrieveResult {
        uint32_t segment = 0;
        std::optional<Bytes> value;  // nullopt: definitive failure
    };

    AvidPeer(int n, int t, uint32_t seg_count, PartyId self, PartyId dealer);

    static std::vector<Outbound> dealer_start(int n, int t, std::span<const Bytes> segments);

    // Handles roots-RBC traffic and Frag/FragAck/Fetch/FragReply. in_phase
    // is the phase the arriving message was sent under; FETCH replies
    // inherit it.
    StepResult on_message(PartyId from, const Message& msg, Phase in_phase);

    StepResult start_retrieve(uint32_t segment, Phase phase);
    std::vector<RetrieveResult> take_results();

    bool roots_known() const { return roots_rbc_.delivered() && !roots_bad_; }
    bool complete() const { return complete_; }

private:
    struct Retrieval {
        Phase phase = Phase::Dispersal;
        std::map<PartyId, Shard> replies;
        bool done = false;
        std::optional<Bytes> value;
    };

    StepResult on_roots_rbc(PartyId from, const Message& msg);
    StepResult on_frag(PartyId from, std::span<const uint8_t> payload);
    StepResult on_frag_ack(PartyId from, std::span<const uint8_t> payload);
    StepResult on_fetch(PartyId from, std::span<const uint8_t> payload, Phase in_phase);
    StepResult on_frag_reply(PartyId from, std::span<const uint8_t> payload);
    StepResult adopt_frag(FragPayload frags);  // roots are known at this point
    Outbound reply_to_fetch(PartyId to, uint32_t segment, Phase phase) const;
    void finish_retrieval(uint32_t segment, Retrieval& ret);

    int n_, t_;
    uint32_t seg_count_;
    PartyId self_, dealer_;
    RbcPeer roots_rbc_;
    std::vector<Hash32> roots_;
    bool roots_bad_ = false;
    std::optional<FragPayload> pending_frag_;   // arrived before the roots
    bool frag_seen_ = false, frag_ok_ = false;  // frag_ok_: all entries verified, ack sent
    std::vector<FragEntry> my_frags_;           // index = segment, valid iff frag_ok_
    std::set<PartyId> acks_;
    bool complete_ = false;
    std::vector<std::pair<PartyId, std::pair<uint32_t, Phase>>> pending_fetches_;
    std::map<uint32_t, Retrieval> retrievals_;
    std::vector<RetrieveResult> results_;
};

}  // namespace avss
