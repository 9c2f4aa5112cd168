#pragma once

#include <map>
#include <optional>
#include <set>

#include "avss/avid.hpp"
#include "avss/pke.hpp"
#include "avss/polycommit.hpp"

namespace avss {

// Batched verifiable secret sharing for n = 3t+1 parties, t+1 secrets per
// instance. The dealer samples one bivariate phi per instance, commits to
// the columns phi(., k) for k = 1..t+1, reliably broadcasts the
// commitments, and disperses each party's t+1 encrypted (share, witness)
// pairs through AVID. Parties validate their own decrypted shares against
// the common commitments, vote OK, turn 2t+1 OKs into READY, and output
// once 2t+1 READYs are in and they hold shares, either decrypted or
// recovered. A party whose ciphertexts are bad reveals its decryption key
// (IMPLICATE); anyone can re-run its decryption against the dispersed
// ciphertexts and either confirm (dealer guilty, the whole batch enters
// share recovery) or discard the accusation. Recovery rebuilds column j at
// party j from t+1 proven row points (R1), then every party's row from
// 2t+1 column evaluations (R2) with up to t of them lying.

struct ProtocolParams {
    int n = 0;
    int t = 0;
    int batch = 1;
    const PolyCommitBackend* backend = nullptr;
    std::vector<Bytes> party_pks;  // indexed by PartyId; slot 0 unused

    uint32_t seg_count() const { return uint32_t(batch) * uint32_t(n); }
    uint32_t segment_of(int b, PartyId i) const { return uint32_t(b) * uint32_t(n) + uint32_t(i - 1); }
    size_t ct_size() const;       // one encrypted slot, fixed width
    size_t segment_size() const;  // (t+1) slots
};

// Everything the dealer derives from the secrets. phis/hats never leave
// the dealer; commits_payload goes out via RBC and segments via AVID.
struct DealerOutput {
    std::vector<BivarPoly> phis;
    std::vector<BivarPoly> hats;
    Bytes commits_payload;        // batch * (t+1) commitments at a fixed stride
    std::vector<Bytes> segments;  // batch * n, segment_of() order
};

// secrets[b] are the row-zero values of instance b; at most t+1 each.
DealerOutput build_deal(const ProtocolParams& p, std::span<const std::vector<Fp>> secrets, Rng& rng);

// One slot's plaintext (share || witness) encrypted for party i. Fault
// injection re-encrypts with share_delta != 0: a wrong share under the
// honest witness, which is exactly what validation must catch.
Bytes encrypt_slot(const ProtocolParams& p, const DealerOutput& d, int b, PartyId i, int k, Rng& rng,
                   uint64_t share_delta = 0);

std::vector<Outbound> submit_deal(const ProtocolParams& p, const DealerOutput& d);

struct OutputShares {
    uint32_t instance = 0;
    std::vector<Fp> shares;          // phi(self, k), k = 1..t+1
    std::vector<Witness> witnesses;  // empty when via_recovery
    bool via_recovery = false;
};

enum class EventKind : uint8_t {
    RbcDelivered,
    CommitsInvalid,
    AvidComplete,
    Validated,
    OkSent,
    ReadySent,
    Output,
    ImplicateSent,
    ImplicateDiscarded,
    ImplicateConfirmed,
    RecoveryEntered,
    R1Sent,
    ColumnReady,
    R2Sent,
    RowRecovered,
    RetrieveFailed,
};
const char* event_kind_name(EventKind k);

struct Event {
    EventKind kind = EventKind::RbcDelivered;
    int32_t instance = -1;  // -1: batch-wide
    int64_t a = 0;
    int64_t b = 0;
};

class AvssParty {
public:
    // skip_ready_gate is a deliberately planted bug used by the
    // premature_output fixture: output on validation without waiting for
    // the READY quorum. The gate-order check must flag such a run.
    AvssParty(ProtocolParams params, PartyId self, Fp sk, bool skip_ready_gate = false);

    StepResult handle(PartyId from, const Message& msg, Phase in_phase);
    std::vector<Event> take_events();
    const std::vector<OutputShares>& outputs() const { return outputs_; }
    bool in_recovery() const { return in_recovery_; }

private:
    struct Instance {
        bool validated = false, valid = false;
        std::vector<Fp> shares;
        std::vector<Witness> witnesses;
        std::set<PartyId> ok_set, ready_set;
        bool ready_sent = false, output_done = false, r1_sent = false;
        std::map<PartyId, Fp> r1;  // proven points of our column, by row
        bool column_ready = false;
        Poly col_poly;
        std::map<PartyId, Fp> r2;  // row points, by column = sender
        bool row_done = false;
        std::vector<Fp> rec_shares;
    };
    struct PendingImplication {
        PartyId accuser = 0;
        uint32_t inst = 0;
        uint16_t k = 0;
        Fp sk;
    };

    StepResult on_commits_rbc(PartyId from, const Message& msg);
    StepResult on_avid(PartyId from, const Message& msg, Phase in_phase);
    StepResult on_ok(PartyId from, uint32_t b, const Bytes& payload);
    StepResult on_ready(PartyId from, uint32_t b, const Bytes& payload);
    StepResult on_implicate(PartyId from, uint32_t b, const Bytes& payload);
    StepResult on_r1(PartyId from, uint32_t b, const Bytes& payload);
    StepResult on_r2(PartyId from, uint32_t b, const Bytes& payload);
    StepResult after_deps_change();
    StepResult drain_retrievals();
    StepResult validate_instance(uint32_t b, const std::optional<Bytes>& seg);
    StepResult maybe_implicate(uint32_t b, uint16_t k);
    StepResult process_implication(const PendingImplication& e);
    StepResult finish_implication(const PendingImplication& e, const std::optional<Bytes>& seg);
    bool judge_implication(const PendingImplication& e, const std::optional<Bytes>& seg) const;
    StepResult enter_recovery();
    StepResult send_r1_round(uint32_t b);
    void try_output(uint32_t b);
    std::vector<Outbound> multicast(MsgKind kind, uint32_t session, const Bytes& payload, Phase ph) const;
    void event(EventKind k, int32_t instance = -1, int64_t a = 0, int64_t b = 0);
    const Commitment& commit_at(uint32_t b, int k) const { return commits_[size_t(b) * size_t(params_.t + 1) + size_t(k - 1)]; }

    ProtocolParams params_;
    PartyId self_;
    Fp sk_;
    bool skip_ready_gate_;
    RbcPeer commits_rbc_;
    AvidPeer avid_;
    bool deps_ready_ = false, commits_ok_ = false;
    std::vector<Commitment> commits_;  // batch * (t+1) once parsed
    std::vector<Instance> inst_;
    bool implicate_sent_ = false, in_recovery_ = false;
    std::set<PartyId> implication_seen_;  // budget: one accusation per accuser, ever
    std::vector<PendingImplication> pending_impl_;
    std::map<uint32_t, PendingImplication> verif_;  // by segment under retrieval
    std::vector<std::vector<Commitment>> all_commits_;  // [b][column-1], recovery only
    std::vector<std::pair<PartyId, Message>> pending_r_;  // R1/R2 before recovery
    std::vector<OutputShares> outputs_;
    std::vector<Event> events_;
};

}  // namespace avss
