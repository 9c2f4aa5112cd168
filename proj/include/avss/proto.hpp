#pragma once

#include <vector>

#include "avss/wire.hpp"

namespace avss {

// Which protocol phase a message belongs to for byte accounting. Assigned
// by the sender at emission time; replies to a pull (FETCH/FRAG_REPLY)
// inherit the phase of the request that triggered them.
enum class Phase : uint8_t {
    Broadcast,    // commitment RBC
    Dispersal,    // AVID roots RBC, fragments, acks, own-share retrieval
    Agreement,    // OK / READY
    Implication,  // IMPLICATE and implication-verification retrievals
    Recovery,     // R1 / R2
};

const char* phase_name(Phase p);

struct Outbound {
    PartyId to = 0;
    Message msg;
    Phase phase = Phase::Broadcast;
};

// What a state machine produced while consuming one message. waste marks
// messages dropped without effect (late, duplicate, malformed); the
// simulator folds that into metrics.
struct StepResult {
    std::vector<Outbound> out;
    bool waste = false;

    // Appends another result's messages; the waste judgment stays with the
    // handler that consumed the triggering message.
    void append(StepResult&& o) {
        for (auto& m : o.out) out.push_back(std::move(m));
    }
};

}  // namespace avss
