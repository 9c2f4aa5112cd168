#pragma once

#include <map>
#include <string>

#include "avss/hbavss.hpp"

namespace avss {

// Deterministic single-threaded message-passing simulator. Every send goes
// into one pending set; the scheduler picks which pending message to
// deliver next, the receiver's state machine runs to completion, and its
// sends join the set. A run ends when the set drains (quiescence) or the
// step budget is exhausted, which is reported as a verdict failure, never
// papered over. All randomness, including the adversarial choices, derives
// from the scenario seed, so a failing seed replays exactly.

enum class SchedulerKind : uint8_t { Fifo, Random, AdversarialDelay };
enum class DealerFault : uint8_t { Honest, GarbleCiphertexts, WrongShares, CrashAfterFirstRound };
enum class PartyFault : uint8_t { Honest, Crash, Silent, SpuriousImplicate, LieR1, LieR2, Equivocate };

const char* scheduler_name(SchedulerKind k);
const char* dealer_fault_name(DealerFault k);
const char* party_fault_name(PartyFault k);

struct PartyFaultSpec {
    PartyFault kind = PartyFault::Honest;
    uint64_t after_step = 0;  // Crash only: drops everything past this step
};

struct Scenario {
    std::string name;
    int n = 0, t = 0, batch = 1;
    uint64_t seed = 0;
    SchedulerKind scheduler = SchedulerKind::Random;
    std::vector<PartyId> delay_targets;  // AdversarialDelay: starved receivers
    BackendKind backend = BackendKind::Pairing;
    DealerFault dealer_fault = DealerFault::Honest;
    std::vector<PartyId> dealer_targets;  // garble/wrong-shares victims
    std::map<PartyId, PartyFaultSpec> party_faults;
    int trials = 1;             // used by the fuzz driver
    std::string bug_fixture;    // "" or "premature_output"
    uint64_t max_steps = 0;     // 0: derived from n/batch
};

uint64_t default_max_steps(const Scenario& sc);

struct TraceRecord {
    uint64_t step = 0;
    MsgKind kind = MsgKind::Val;
    PartyId from = 0, to = 0;
    uint32_t session = 0;
    uint32_t bytes = 0;  // frame size; 0 for self delivery
    Phase phase = Phase::Broadcast;
    bool self = false;
    bool waste = false;    // receiver discarded it without effect
    bool dropped = false;  // receiver already crashed
};

struct EventRecord {
    uint64_t step = 0;
    PartyId party = 0;
    Event ev;
};

struct Metrics {
    uint64_t messages = 0;
    uint64_t total_bytes = 0;  // non-self frames, waste and dropped included
    uint64_t waste_bytes = 0;
    uint64_t dropped_bytes = 0;
    uint64_t self_messages = 0;
    uint64_t steps = 0;
    std::map<std::string, uint64_t> bytes_by_kind;
    std::map<std::string, uint64_t> bytes_by_phase;
    double bytes_per_secret = 0;  // total_bytes / (batch * (t+1))
    std::string backend_name, hash_name;
};

Metrics account(const std::vector<TraceRecord>& trace, const Scenario& sc);
Hash32 hash_trace(const std::vector<TraceRecord>& trace);

struct Verdict {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct RunResult {
    std::vector<TraceRecord> trace;
    std::vector<EventRecord> events;
    std::map<PartyId, std::vector<OutputShares>> outputs;  // correct-form accessor, all parties
    std::vector<std::vector<Fp>> dealt_secrets;            // [instance][k-1], for outside checks
    Metrics metrics;
    std::vector<Verdict> verdicts;
    bool all_pass = false;
    bool quiescent = false;
    uint64_t steps = 0;
    Hash32 trace_hash{};
};

RunResult run(const Scenario& sc);

struct FuzzFailure {
    uint64_t seed = 0;
    std::string failed;  // comma-joined verdict names
};
struct FuzzResult {
    int trials = 0;
    std::vector<FuzzFailure> failures;
};

// Same scenario under `trials` derived seeds; every failure is replayable
// by setting Scenario::seed to the reported value.
FuzzResult schedule_fuzz(const Scenario& templ, int trials);

}  // namespace avss
