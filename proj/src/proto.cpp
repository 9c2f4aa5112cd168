#include "avss/proto.hpp"

namespace avss {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Broadcast: return "broadcast";
        case Phase::Dispersal: return "dispersal";
        case Phase::Agreement: return "agreement";
        case Phase::Implication: return "implication";
        case Phase::Recovery: return "recovery";
    }
    return "?";
}

}  // namespace avss
