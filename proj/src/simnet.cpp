#include "avss/simnet.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "avss/hashes.hpp"

namespace avss {

const char* scheduler_name(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::Fifo: return "fifo";
        case SchedulerKind::Random: return "random";
        case SchedulerKind::AdversarialDelay: return "adversarial_delay";
    }
    return "?";
}

const char* dealer_fault_name(DealerFault k) {
    switch (k) {
        case DealerFault::Honest: return "honest";
        case DealerFault::GarbleCiphertexts: return "garble_ciphertexts";
        case DealerFault::WrongShares: return "wrong_shares";
        case DealerFault::CrashAfterFirstRound: return "crash_after_first_round";
    }
    return "?";
}

const char* party_fault_name(PartyFault k) {
    switch (k) {
        case PartyFault::Honest: return "honest";
        case PartyFault::Crash: return "crash";
        case PartyFault::Silent: return "silent";
        case PartyFault::SpuriousImplicate: return "spurious_implicate";
        case PartyFault::LieR1: return "lie_r1";
        case PartyFault::LieR2: return "lie_r2";
        case PartyFault::Equivocate: return "equivocate";
    }
    return "?";
}

uint64_t default_max_steps(const Scenario& sc) {
    const uint64_t n = uint64_t(sc.n), b = uint64_t(sc.batch);
    return 20000 + 30 * b * n * n + 10 * n * n * n;
}

Metrics account(const std::vector<TraceRecord>& trace, const Scenario& sc) {
    Metrics m;
    m.backend_name = std::string(backend_name(sc.backend));
    m.hash_name = kHashName;
    for (const auto& r : trace) {
        ++m.messages;
        m.steps = std::max(m.steps, r.step);
        if (r.self) {
            ++m.self_messages;
            continue;
        }
        m.total_bytes += r.bytes;
        m.bytes_by_kind[msg_kind_name(r.kind)] += r.bytes;
        m.bytes_by_phase[phase_name(r.phase)] += r.bytes;
        if (r.waste) m.waste_bytes += r.bytes;
        if (r.dropped) m.dropped_bytes += r.bytes;
    }
    m.bytes_per_secret = double(m.total_bytes) / (double(sc.batch) * double(sc.t + 1));
    return m;
}

Hash32 hash_trace(const std::vector<TraceRecord>& trace) {
    Sha256 h;
    for (const auto& r : trace) {
        h.update_u32(uint32_t(r.step));
        h.update_byte(uint8_t(r.kind));
        h.update_u16(r.from);
        h.update_u16(r.to);
        h.update_u32(r.session);
        h.update_u32(r.bytes);
        h.update_byte(uint8_t(r.phase));
        h.update_byte(uint8_t((r.self ? 1 : 0) | (r.waste ? 2 : 0) | (r.dropped ? 4 : 0)));
    }
    return h.final();
}

namespace {

struct Envelope {
    PartyId from = 0, to = 0;
    Message msg;
    Phase phase = Phase::Broadcast;
    bool self = false;
};

// Pending messages under one of three delivery orders. The adversarial
// scheduler starves the target parties: nothing is delivered to them while
// anything else is pending, the worst asynchrony short of dropping.
class PendingSet {
public:
    PendingSet(SchedulerKind kind, std::set<PartyId> targets) : kind_(kind), targets_(std::move(targets)) {}

    void push(Envelope&& e) {
        switch (kind_) {
            case SchedulerKind::Fifo: fifo_.push_back(std::move(e)); break;
            case SchedulerKind::Random: bag_.push_back(std::move(e)); break;
            case SchedulerKind::AdversarialDelay:
                (targets_.count(e.to) ? starved_ : preferred_).push_back(std::move(e));
                break;
        }
    }

    bool empty() const { return fifo_.empty() && bag_.empty() && preferred_.empty() && starved_.empty(); }

    Envelope pop(Rng& rng) {
        switch (kind_) {
            case SchedulerKind::Fifo: {
                Envelope e = std::move(fifo_.front());
                fifo_.pop_front();
                return e;
            }
            case SchedulerKind::Random: {
                size_t i = size_t(rng.below(bag_.size()));
                std::swap(bag_[i], bag_.back());
                Envelope e = std::move(bag_.back());
                bag_.pop_back();
                return e;
            }
            case SchedulerKind::AdversarialDelay: {
                auto& q = preferred_.empty() ? starved_ : preferred_;
                Envelope e = std::move(q.front());
                q.pop_front();
                return e;
            }
        }
        throw std::logic_error("unreachable");
    }

private:
    SchedulerKind kind_;
    std::set<PartyId> targets_;
    std::deque<Envelope> fifo_, preferred_, starved_;
    std::vector<Envelope> bag_;
};

struct FaultState {
    PartyFault kind = PartyFault::Honest;
    uint64_t crash_after = 0;
    bool spurious_done = false;
};

void validate_scenario(const Scenario& sc) {
    if (sc.t < 1 || sc.n < 3 * sc.t + 1) throw std::invalid_argument("scenario: need n >= 3t+1, t >= 1");
    if (sc.batch < 1 || sc.batch > 0xffff) throw std::invalid_argument("scenario: bad batch");
    if (sc.trials < 1) throw std::invalid_argument("scenario: trials < 1");
    if (!sc.bug_fixture.empty() && sc.bug_fixture != "premature_output")
        throw std::invalid_argument("scenario: unknown bug_fixture '" + sc.bug_fixture + "'");
    auto check_party = [&](PartyId p, const char* what) {
        if (p < 1 || int(p) > sc.n) throw std::invalid_argument(std::string("scenario: ") + what + " out of range");
    };
    for (PartyId p : sc.delay_targets) check_party(p, "delay target");
    for (PartyId p : sc.dealer_targets) check_party(p, "dealer target");
    for (const auto& [p, spec] : sc.party_faults) {
        check_party(p, "faulty party");
        (void)spec;
    }
    if (sc.scheduler == SchedulerKind::AdversarialDelay && sc.delay_targets.empty())
        throw std::invalid_argument("scenario: adversarial_delay needs delay_targets");
}

// Sender-side Byzantine transforms applied to a party's outbound batch.
void apply_party_fault(FaultState& f, const Fp& sk, int n, std::vector<Outbound>& out) {
    switch (f.kind) {
        case PartyFault::Honest:
        case PartyFault::Crash:  // receive-side handled in the loop
            return;
        case PartyFault::Silent: out.clear(); return;
        case PartyFault::LieR1:
            for (auto& o : out)
                if (o.msg.kind == MsgKind::R1 && o.msg.payload.size() > 2) o.msg.payload[2] ^= 0x01;
            return;
        case PartyFault::LieR2:
            for (auto& o : out)
                if (o.msg.kind == MsgKind::R2 && o.msg.payload.size() > 2) o.msg.payload[2] ^= 0x01;
            return;
        case PartyFault::Equivocate:
            for (auto& o : out)
                if (o.to % 2 == 1 && !o.msg.payload.empty()) o.msg.payload.back() ^= 0x01;
            return;
        case PartyFault::SpuriousImplicate: {
            if (f.spurious_done) return;
            uint32_t session = 0;
            bool found = false;
            for (const auto& o : out)
                if (o.msg.kind == MsgKind::Ok) {
                    session = o.msg.session;
                    found = true;
                    break;
                }
            if (!found) return;
            f.spurious_done = true;
            ImplicatePayload p;
            p.sk = sk.to_bytes_le();
            p.k = 1;
            Bytes payload = encode_implicate(p);
            for (int i = 1; i <= n; ++i)
                out.push_back(Outbound{PartyId(i), Message{MsgKind::Implicate, session, payload}, Phase::Implication});
            return;
        }
    }
}

struct Judgement {
    const Scenario& sc;
    const ProtocolParams& params;
    const DealerOutput& deal;
    const std::vector<std::vector<Fp>>& secrets;
    const RunResult& res;

    bool correct(PartyId p) const {
        auto it = sc.party_faults.find(p);
        return it == sc.party_faults.end() || it->second.kind == PartyFault::Honest;
    }
    std::vector<PartyId> correct_parties() const {
        std::vector<PartyId> v;
        for (int i = 1; i <= sc.n; ++i)
            if (correct(PartyId(i))) v.push_back(PartyId(i));
        return v;
    }
    int faulty_count() const {
        int c = 0;
        for (const auto& [p, spec] : sc.party_faults) {
            (void)p;
            if (spec.kind != PartyFault::Honest) ++c;
        }
        return c;
    }
    Commitment dealer_commit(uint32_t b, int k) const {
        const size_t stride = params.backend->commitment_size();
        const size_t idx = size_t(b) * size_t(params.t + 1) + size_t(k - 1);
        Commitment c;
        c.data.assign(deal.commits_payload.begin() + idx * stride, deal.commits_payload.begin() + (idx + 1) * stride);
        return c;
    }
};

Verdict judge_quiescence(const Judgement& J) {
    std::ostringstream d;
    d << J.res.steps << " steps";
    return {"quiescence", J.res.quiescent, d.str()};
}

Verdict judge_conservation(const Judgement& J) {
    const Metrics& m = J.res.metrics;
    uint64_t by_kind = 0, by_phase = 0, total = 0, msgs = 0;
    bool shape_ok = true;
    for (const auto& [k, v] : m.bytes_by_kind) {
        (void)k;
        by_kind += v;
    }
    for (const auto& [k, v] : m.bytes_by_phase) {
        (void)k;
        by_phase += v;
    }
    for (const auto& r : J.res.trace) {
        ++msgs;
        total += r.bytes;
        if (r.self && r.bytes != 0) shape_ok = false;
        if (!r.self && r.bytes < kHeaderSize) shape_ok = false;
    }
    bool pass = shape_ok && by_kind == m.total_bytes && by_phase == m.total_bytes && total == m.total_bytes &&
                msgs == m.messages && m.waste_bytes <= m.total_bytes;
    std::ostringstream d;
    d << m.total_bytes << " bytes, " << m.waste_bytes << " waste";
    return {"conservation", pass, d.str()};
}

bool liveness_applicable(const Judgement& J) {
    if (!J.res.quiescent) return false;
    if (J.sc.dealer_fault == DealerFault::CrashAfterFirstRound) return false;
    if (J.sc.dealer_fault != DealerFault::Honest && int(J.sc.dealer_targets.size()) > J.sc.t) return false;
    return J.faulty_count() <= J.sc.t;
}

Verdict judge_liveness(const Judgement& J) {
    if (!liveness_applicable(J)) return {"liveness", true, "n/a for this fault load"};
    for (PartyId p : J.correct_parties()) {
        std::set<uint32_t> got;
        auto it = J.res.outputs.find(p);
        if (it != J.res.outputs.end())
            for (const auto& o : it->second) got.insert(o.instance);
        if (int(got.size()) != J.sc.batch) {
            std::ostringstream d;
            d << "party " << p << " output " << got.size() << "/" << J.sc.batch << " instances";
            return {"liveness", false, d.str()};
        }
    }
    return {"liveness", true, "all correct parties output every instance"};
}

Verdict judge_agreement(const Judgement& J) {
    if (!J.res.quiescent) return {"agreement", true, "n/a: not quiescent"};
    auto correct = J.correct_parties();
    for (int b = 0; b < J.sc.batch; ++b) {
        int holders = 0;
        for (PartyId p : correct) {
            auto it = J.res.outputs.find(p);
            if (it == J.res.outputs.end()) continue;
            for (const auto& o : it->second)
                if (o.instance == uint32_t(b)) ++holders;
        }
        if (holders != 0 && holders != int(correct.size())) {
            std::ostringstream d;
            d << "instance " << b << ": " << holders << "/" << correct.size() << " correct parties output";
            return {"agreement", false, d.str()};
        }
    }
    return {"agreement", true, "all-or-none per instance"};
}

Verdict judge_one_bivariate(const Judgement& J) {
    const PrimeField& F = J.params.backend->field();
    for (int b = 0; b < J.sc.batch; ++b) {
        std::vector<std::pair<PartyId, const OutputShares*>> outs;
        for (PartyId p : J.correct_parties()) {
            auto it = J.res.outputs.find(p);
            if (it == J.res.outputs.end()) continue;
            for (const auto& o : it->second)
                if (o.instance == uint32_t(b)) outs.push_back({p, &o});
        }
        if (outs.empty()) continue;
        if (int(outs.size()) < J.sc.t + 1)
            return {"one_bivariate", false, "fewer than t+1 correct outputs to cross-check"};
        for (int k = 1; k <= J.sc.t + 1; ++k) {
            PointList pts;
            for (const auto& [p, o] : outs) pts.push_back({F.from_u64(p), o->shares[size_t(k - 1)]});
            PointList head(pts.begin(), pts.begin() + (J.sc.t + 1));
            PointList tail(pts.end() - (J.sc.t + 1), pts.end());
            Poly ph = lagrange_interpolate(head, J.sc.t);
            Poly pt2 = lagrange_interpolate(tail, J.sc.t);
            if (!(ph == pt2)) {
                std::ostringstream d;
                d << "instance " << b << " slot " << k << ": head/tail interpolants differ";
                return {"one_bivariate", false, d.str()};
            }
            for (const auto& [x, y] : pts)
                if (!(ph.eval(x) == y)) {
                    std::ostringstream d;
                    d << "instance " << b << " slot " << k << ": an output share is off the polynomial";
                    return {"one_bivariate", false, d.str()};
                }
            if (!(ph.eval(F.zero()) == J.secrets[size_t(b)][size_t(k - 1)])) {
                std::ostringstream d;
                d << "instance " << b << " slot " << k << ": reconstructed secret differs from dealt secret";
                return {"one_bivariate", false, d.str()};
            }
        }
    }
    return {"one_bivariate", true, "outputs interpolate to the dealt polynomial"};
}

Verdict judge_output_verifies(const Judgement& J) {
    const PrimeField& F = J.params.backend->field();
    for (PartyId p : J.correct_parties()) {
        auto it = J.res.outputs.find(p);
        if (it == J.res.outputs.end()) continue;
        for (const auto& o : it->second) {
            if (o.shares.size() != size_t(J.sc.t + 1)) return {"output_verifies", false, "wrong share count"};
            if (!o.via_recovery) {
                if (o.witnesses.size() != size_t(J.sc.t + 1))
                    return {"output_verifies", false, "missing witnesses on direct output"};
                for (int k = 1; k <= J.sc.t + 1; ++k) {
                    if (!J.params.backend->verify_eval(J.dealer_commit(o.instance, k), F.from_u64(p),
                                                       o.shares[size_t(k - 1)], o.witnesses[size_t(k - 1)])) {
                        std::ostringstream d;
                        d << "party " << p << " instance " << o.instance << " slot " << k
                          << ": witness fails VerifyEval";
                        return {"output_verifies", false, d.str()};
                    }
                }
            } else {
                if (!o.witnesses.empty()) return {"output_verifies", false, "recovered output carries witnesses"};
                for (int k = 1; k <= J.sc.t + 1; ++k) {
                    Fp want = J.deal.phis[o.instance].eval(F.from_u64(p), F.from_u64(uint64_t(k)));
                    if (!(o.shares[size_t(k - 1)] == want)) {
                        std::ostringstream d;
                        d << "party " << p << " instance " << o.instance << " slot " << k
                          << ": recovered share is not the dealt evaluation";
                        return {"output_verifies", false, d.str()};
                    }
                }
            }
        }
    }
    return {"output_verifies", true, "every output share checks out"};
}

Verdict judge_gate_order(const Judgement& J) {
    // Recomputed from the trace, not from the party's own claim: an output
    // by p for instance b must be preceded (or triggered) by READY
    // deliveries to p from at least 2t+1 distinct senders.
    std::map<std::pair<PartyId, uint32_t>, std::vector<std::pair<uint64_t, PartyId>>> readys;
    for (const auto& r : J.res.trace)
        if (r.kind == MsgKind::Ready && !r.dropped) readys[{r.to, r.session}].push_back({r.step, r.from});
    for (const auto& er : J.res.events) {
        if (er.ev.kind != EventKind::Output) continue;
        std::set<PartyId> senders;
        auto it = readys.find({er.party, uint32_t(er.ev.instance)});
        if (it != readys.end())
            for (const auto& [step, from] : it->second)
                if (step <= er.step) senders.insert(from);
        if (int(senders.size()) < 2 * J.sc.t + 1) {
            std::ostringstream d;
            d << "party " << er.party << " output instance " << er.ev.instance << " after only " << senders.size()
              << " READY senders";
            return {"gate_order", false, d.str()};
        }
    }
    return {"gate_order", true, "every output behind a 2t+1 READY quorum"};
}

Verdict judge_secrecy(const Judgement& J) {
    if (J.sc.dealer_fault != DealerFault::Honest) return {"secrecy", true, "n/a: dealer not honest"};
    int discarded = 0;
    for (const auto& er : J.res.events) {
        if (!J.correct(er.party)) continue;
        switch (er.ev.kind) {
            case EventKind::ImplicateConfirmed:
            case EventKind::RecoveryEntered:
            case EventKind::R1Sent:
            case EventKind::R2Sent:
            case EventKind::ColumnReady:
            case EventKind::RowRecovered: {
                std::ostringstream d;
                d << "party " << er.party << ": " << event_kind_name(er.ev.kind) << " despite honest dealer";
                return {"secrecy", false, d.str()};
            }
            case EventKind::ImplicateSent: {
                std::ostringstream d;
                d << "correct party " << er.party << " implicated an honest dealer";
                return {"secrecy", false, d.str()};
            }
            case EventKind::ImplicateDiscarded: ++discarded; break;
            default: break;
        }
    }
    std::ostringstream d;
    d << "no recovery material revealed; " << discarded << " accusations discarded";
    return {"secrecy", true, d.str()};
}

Verdict judge_recovery_thresholds(const Judgement& J) {
    for (const auto& er : J.res.events) {
        if (!J.correct(er.party)) continue;
        if (er.ev.kind == EventKind::ColumnReady && er.ev.a != int64_t(J.sc.t + 1)) {
            std::ostringstream d;
            d << "party " << er.party << " rebuilt a column from " << er.ev.a << " points, want exactly "
              << J.sc.t + 1;
            return {"recovery_thresholds", false, d.str()};
        }
        if (er.ev.kind == EventKind::RowRecovered &&
            (er.ev.a < int64_t(2 * J.sc.t + 1) || er.ev.a > int64_t(J.sc.n))) {
            std::ostringstream d;
            d << "party " << er.party << " recovered a row from " << er.ev.a << " points, want >= " << 2 * J.sc.t + 1;
            return {"recovery_thresholds", false, d.str()};
        }
    }
    return {"recovery_thresholds", true, "column at exactly t+1, row at >= 2t+1"};
}

}  // namespace

RunResult run(const Scenario& sc) {
    validate_scenario(sc);
    Rng master(sc.seed);
    Rng rng_setup = master.fork(1);
    Rng rng_keys = master.fork(2);
    Rng rng_secrets = master.fork(3);
    Rng rng_deal = master.fork(4);
    Rng rng_fault = master.fork(5);
    Rng rng_sched = master.fork(6);

    auto backend = make_backend(sc.backend, sc.t, rng_setup.next_u64());
    const GroupOps& grp = backend->key_group();
    const PrimeField& F = backend->field();

    std::vector<Fp> sks(size_t(sc.n) + 1, F.zero());
    std::vector<Bytes> pks(size_t(sc.n) + 1);
    for (int i = 1; i <= sc.n; ++i) {
        Keypair kp = pke_keygen(grp, rng_keys);
        sks[size_t(i)] = kp.sk;
        pks[size_t(i)] = kp.pk;
    }

    ProtocolParams params{sc.n, sc.t, sc.batch, backend.get(), pks};

    std::vector<std::vector<Fp>> secrets(size_t(sc.batch));
    for (auto& s : secrets)
        for (int k = 0; k <= sc.t; ++k) s.push_back(F.sample(rng_secrets));

    DealerOutput deal = build_deal(params, secrets, rng_deal);

    switch (sc.dealer_fault) {
        case DealerFault::GarbleCiphertexts:
            for (PartyId v : sc.dealer_targets)
                for (int b = 0; b < sc.batch; ++b)
                    for (auto& byte : deal.segments[params.segment_of(b, v)]) byte ^= 0x5a;
            break;
        case DealerFault::WrongShares:
            for (PartyId v : sc.dealer_targets) {
                for (int b = 0; b < sc.batch; ++b) {
                    Bytes seg;
                    for (int k = 1; k <= sc.t + 1; ++k) {
                        Bytes ct = encrypt_slot(params, deal, b, v, k, rng_fault, 1);
                        seg.insert(seg.end(), ct.begin(), ct.end());
                    }
                    deal.segments[params.segment_of(b, v)] = std::move(seg);
                }
            }
            break;
        default: break;
    }

    std::vector<Outbound> first = submit_deal(params, deal);
    if (sc.dealer_fault == DealerFault::CrashAfterFirstRound)
        std::erase_if(first, [&](const Outbound& o) { return int(o.to) > sc.n / 2; });

    std::vector<FaultState> fs(size_t(sc.n) + 1);
    for (const auto& [p, spec] : sc.party_faults) {
        fs[p].kind = spec.kind;
        fs[p].crash_after = spec.after_step;
    }

    PartyId fixture_party = 0;
    if (sc.bug_fixture == "premature_output") {
        for (int i = 1; i <= sc.n && fixture_party == 0; ++i)
            if (fs[size_t(i)].kind == PartyFault::Honest) fixture_party = PartyId(i);
        if (fixture_party == 0) throw std::invalid_argument("scenario: fixture needs one honest party");
    }

    std::vector<std::unique_ptr<AvssParty>> parties(size_t(sc.n) + 1);
    for (int i = 1; i <= sc.n; ++i)
        parties[size_t(i)] =
            std::make_unique<AvssParty>(params, PartyId(i), sks[size_t(i)], PartyId(i) == fixture_party);

    PendingSet pending(sc.scheduler, {sc.delay_targets.begin(), sc.delay_targets.end()});
    auto enqueue = [&](PartyId from, Outbound&& o) {
        const PartyId to = o.to;
        pending.push(Envelope{from, to, std::move(o.msg), o.phase, from == to});
    };
    for (auto& o : first) enqueue(0, std::move(o));

    RunResult res;
    const uint64_t max_steps = sc.max_steps ? sc.max_steps : default_max_steps(sc);
    uint64_t step = 0;
    while (!pending.empty() && step < max_steps) {
        ++step;
        Envelope env = pending.pop(rng_sched);
        TraceRecord tr;
        tr.step = step;
        tr.kind = env.msg.kind;
        tr.from = env.from;
        tr.to = env.to;
        tr.session = env.msg.session;
        tr.bytes = env.self ? 0u : uint32_t(kHeaderSize + env.msg.payload.size());
        tr.phase = env.phase;
        tr.self = env.self;
        FaultState& f = fs[env.to];
        if (f.kind == PartyFault::Crash && step > f.crash_after) {
            tr.dropped = true;
            tr.waste = true;
            res.trace.push_back(tr);
            continue;
        }
        StepResult r = parties[env.to]->handle(env.from, env.msg, env.phase);
        tr.waste = r.waste;
        res.trace.push_back(tr);
        for (auto& ev : parties[env.to]->take_events()) res.events.push_back(EventRecord{step, env.to, ev});
        apply_party_fault(f, sks[env.to], sc.n, r.out);
        for (auto& o : r.out) enqueue(env.to, std::move(o));
    }
    res.quiescent = pending.empty();
    res.steps = step;
    res.dealt_secrets = secrets;
    for (int i = 1; i <= sc.n; ++i) res.outputs[PartyId(i)] = parties[size_t(i)]->outputs();
    res.metrics = account(res.trace, sc);
    res.metrics.steps = step;
    res.trace_hash = hash_trace(res.trace);

    Judgement J{sc, params, deal, secrets, res};
    res.verdicts.push_back(judge_quiescence(J));
    res.verdicts.push_back(judge_conservation(J));
    res.verdicts.push_back(judge_liveness(J));
    res.verdicts.push_back(judge_agreement(J));
    res.verdicts.push_back(judge_one_bivariate(J));
    res.verdicts.push_back(judge_output_verifies(J));
    res.verdicts.push_back(judge_gate_order(J));
    res.verdicts.push_back(judge_secrecy(J));
    res.verdicts.push_back(judge_recovery_thresholds(J));
    res.all_pass = std::all_of(res.verdicts.begin(), res.verdicts.end(), [](const Verdict& v) { return v.pass; });
    return res;
}

FuzzResult schedule_fuzz(const Scenario& templ, int trials) {
    FuzzResult fr;
    fr.trials = trials;
    for (int i = 0; i < trials; ++i) {
        Scenario sc = templ;
        sc.seed = derive_seed(templ.seed, uint64_t(i));
        RunResult r = run(sc);
        if (!r.all_pass) {
            std::string names;
            for (const auto& v : r.verdicts)
                if (!v.pass) {
                    if (!names.empty()) names += ",";
                    names += v.name;
                }
            fr.failures.push_back(FuzzFailure{sc.seed, names});
        }
    }
    return fr;
}

}  // namespace avss
