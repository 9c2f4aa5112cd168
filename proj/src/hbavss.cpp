#include "avss/hbavss.hpp"

#include <stdexcept>

namespace avss {

namespace {

void check_params(const ProtocolParams& p) {
    if (p.t < 1 || p.n < 3 * p.t + 1) throw std::invalid_argument("hbavss: need n >= 3t+1, t >= 1");
    if (p.batch < 1 || p.batch > 0xffff) throw std::invalid_argument("hbavss: bad batch size");
    if (!p.backend || p.backend->max_degree() != p.t) throw std::invalid_argument("hbavss: backend/t mismatch");
    if (p.party_pks.size() != size_t(p.n) + 1) throw std::invalid_argument("hbavss: need n public keys");
}

}  // namespace

size_t ProtocolParams::ct_size() const {
    return pke_ciphertext_size(backend->key_group(), 32 + backend->witness_size());
}

size_t ProtocolParams::segment_size() const { return size_t(t + 1) * ct_size(); }

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::RbcDelivered: return "rbc_delivered";
        case EventKind::CommitsInvalid: return "commits_invalid";
        case EventKind::AvidComplete: return "avid_complete";
        case EventKind::Validated: return "validated";
        case EventKind::OkSent: return "ok_sent";
        case EventKind::ReadySent: return "ready_sent";
        case EventKind::Output: return "output";
        case EventKind::ImplicateSent: return "implicate_sent";
        case EventKind::ImplicateDiscarded: return "implicate_discarded";
        case EventKind::ImplicateConfirmed: return "implicate_confirmed";
        case EventKind::RecoveryEntered: return "recovery_entered";
        case EventKind::R1Sent: return "r1_sent";
        case EventKind::ColumnReady: return "column_ready";
        case EventKind::R2Sent: return "r2_sent";
        case EventKind::RowRecovered: return "row_recovered";
        case EventKind::RetrieveFailed: return "retrieve_failed";
    }
    return "?";
}

Bytes encrypt_slot(const ProtocolParams& p, const DealerOutput& d, int b, PartyId i, int k, Rng& rng,
                   uint64_t share_delta) {
    const PrimeField& F = p.backend->field();
    const Fp y = F.from_u64(uint64_t(k));
    const Fp x = F.from_u64(uint64_t(i));
    Fp share = d.phis[size_t(b)].eval(x, y) + F.from_u64(share_delta);
    Witness w = p.backend->create_witness(d.phis[size_t(b)].column(y), d.hats[size_t(b)].column(y), x);
    Bytes pt;
    auto sb = share.to_bytes_le();
    pt.insert(pt.end(), sb.begin(), sb.end());
    Bytes wb = p.backend->serialize_witness(w);
    pt.insert(pt.end(), wb.begin(), wb.end());
    PkeContext ctx{uint16_t(i), uint16_t(k), uint32_t(b)};
    return pke_encrypt(p.backend->key_group(), p.party_pks[i], ctx, pt, rng);
}

DealerOutput build_deal(const ProtocolParams& p, std::span<const std::vector<Fp>> secrets, Rng& rng) {
    check_params(p);
    if (secrets.size() != size_t(p.batch)) throw std::invalid_argument("hbavss: one secret vector per instance");
    const PrimeField& F = p.backend->field();
    DealerOutput d;
    d.phis.reserve(secrets.size());
    d.hats.reserve(secrets.size());
    for (const auto& s : secrets) {
        d.phis.push_back(sample_bivariate(s, p.t, F, rng));
        d.hats.push_back(random_bivariate(p.t, F, rng));
    }
    for (int b = 0; b < p.batch; ++b) {
        for (int k = 1; k <= p.t + 1; ++k) {
            const Fp y = F.from_u64(uint64_t(k));
            Commitment c = p.backend->commit(d.phis[size_t(b)].column(y), d.hats[size_t(b)].column(y));
            d.commits_payload.insert(d.commits_payload.end(), c.data.begin(), c.data.end());
        }
    }
    d.segments.reserve(p.seg_count());
    for (int b = 0; b < p.batch; ++b) {
        for (int i = 1; i <= p.n; ++i) {
            Bytes seg;
            seg.reserve(p.segment_size());
            for (int k = 1; k <= p.t + 1; ++k) {
                Bytes ct = encrypt_slot(p, d, b, PartyId(i), k, rng);
                seg.insert(seg.end(), ct.begin(), ct.end());
            }
            d.segments.push_back(std::move(seg));
        }
    }
    return d;
}

std::vector<Outbound> submit_deal(const ProtocolParams& p, const DealerOutput& d) {
    std::vector<Outbound> out =
        RbcPeer::broadcaster_start(p.n, p.t, kSessionRbcCommits, d.commits_payload, Phase::Broadcast);
    std::vector<Outbound> avid = AvidPeer::dealer_start(p.n, p.t, d.segments);
    for (auto& o : avid) out.push_back(std::move(o));
    return out;
}

AvssParty::AvssParty(ProtocolParams params, PartyId self, Fp sk, bool skip_ready_gate)
    : params_(std::move(params)),
      self_(self),
      sk_(sk),
      skip_ready_gate_(skip_ready_gate),
      commits_rbc_(params_.n, params_.t, kSessionRbcCommits, self, 0, Phase::Broadcast),
      avid_(params_.n, params_.t, params_.seg_count(), self, 0) {
    check_params(params_);
    inst_.resize(size_t(params_.batch));
}

void AvssParty::event(EventKind k, int32_t instance, int64_t a, int64_t b) {
    events_.push_back(Event{k, instance, a, b});
}

std::vector<Event> AvssParty::take_events() {
    std::vector<Event> out;
    out.swap(events_);
    return out;
}

std::vector<Outbound> AvssParty::multicast(MsgKind kind, uint32_t session, const Bytes& payload, Phase ph) const {
    std::vector<Outbound> out;
    out.reserve(size_t(params_.n));
    for (int i = 1; i <= params_.n; ++i)
        out.push_back(Outbound{PartyId(i), Message{kind, session, payload}, ph});
    return out;
}

StepResult AvssParty::handle(PartyId from, const Message& msg, Phase in_phase) {
    if (msg.session == kSessionRbcCommits) return on_commits_rbc(from, msg);
    if (msg.session == kSessionRbcRoots || msg.session == kSessionAvid) return on_avid(from, msg, in_phase);
    if (msg.session < uint32_t(params_.batch)) {
        switch (msg.kind) {
            case MsgKind::Ok: return on_ok(from, msg.session, msg.payload);
            case MsgKind::Ready: return on_ready(from, msg.session, msg.payload);
            case MsgKind::Implicate: return on_implicate(from, msg.session, msg.payload);
            case MsgKind::R1: return on_r1(from, msg.session, msg.payload);
            case MsgKind::R2: return on_r2(from, msg.session, msg.payload);
            default: return {{}, true};
        }
    }
    return {{}, true};
}

StepResult AvssParty::on_commits_rbc(PartyId from, const Message& msg) {
    const bool was = commits_rbc_.delivered();
    StepResult r = commits_rbc_.on_message(from, msg);
    if (was || !commits_rbc_.delivered()) return r;
    const Bytes& payload = commits_rbc_.value();
    const size_t stride = params_.backend->commitment_size();
    const size_t want = size_t(params_.batch) * size_t(params_.t + 1);
    commits_ok_ = payload.size() == want * stride && stride > 0;
    if (commits_ok_) {
        commits_.resize(want);
        for (size_t idx = 0; idx < want; ++idx) {
            if (!params_.backend->parse_commitment({payload.data() + idx * stride, stride}, commits_[idx])) {
                commits_ok_ = false;
                commits_.clear();
                break;
            }
        }
    }
    event(EventKind::RbcDelivered, -1, commits_ok_ ? 1 : 0);
    if (!commits_ok_) event(EventKind::CommitsInvalid);
    r.append(after_deps_change());
    return r;
}

StepResult AvssParty::on_avid(PartyId from, const Message& msg, Phase in_phase) {
    const bool was = avid_.complete();
    StepResult r = avid_.on_message(from, msg, in_phase);
    if (!was && avid_.complete()) {
        event(EventKind::AvidComplete);
        r.append(after_deps_change());
    }
    r.append(drain_retrievals());
    return r;
}

StepResult AvssParty::after_deps_change() {
    StepResult r;
    if (deps_ready_ || !commits_rbc_.delivered() || !avid_.complete()) return r;
    deps_ready_ = true;
    if (commits_ok_) {
        for (int b = 0; b < params_.batch; ++b)
            r.append(avid_.start_retrieve(params_.segment_of(b, self_), Phase::Dispersal));
    }
    std::vector<PendingImplication> pend;
    pend.swap(pending_impl_);
    for (const auto& e : pend) r.append(process_implication(e));
    r.append(drain_retrievals());
    return r;
}

StepResult AvssParty::drain_retrievals() {
    StepResult r;
    for (const auto& res : avid_.take_results()) {
        const uint32_t b = res.segment / uint32_t(params_.n);
        const PartyId j = PartyId(res.segment % uint32_t(params_.n) + 1);
        if (!res.value) event(EventKind::RetrieveFailed, int32_t(b), j);
        if (j == self_ && commits_ok_ && !inst_[b].validated) r.append(validate_instance(b, res.value));
        auto it = verif_.find(res.segment);
        if (it != verif_.end()) {
            PendingImplication e = it->second;
            verif_.erase(it);
            r.append(finish_implication(e, res.value));
        }
    }
    return r;
}

StepResult AvssParty::validate_instance(uint32_t b, const std::optional<Bytes>& seg) {
    Instance& I = inst_[b];
    I.validated = true;
    StepResult r;
    const PrimeField& F = params_.backend->field();
    uint16_t bad_k = 0;
    if (!seg || seg->size() != params_.segment_size()) {
        bad_k = 1;  // nothing slot-specific to point at; slot 1 stands in
    } else {
        const size_t cs = params_.ct_size();
        std::vector<Fp> shares;
        std::vector<Witness> wits;
        for (int k = 1; k <= params_.t + 1 && bad_k == 0; ++k) {
            std::span<const uint8_t> ct{seg->data() + size_t(k - 1) * cs, cs};
            PkeContext ctx{self_, uint16_t(k), b};
            auto pt = pke_decrypt(params_.backend->key_group(), sk_, ctx, ct);
            if (!pt || pt->size() != 32 + params_.backend->witness_size()) {
                bad_k = uint16_t(k);
                break;
            }
            auto share = F.from_bytes_le({pt->data(), 32});
            Witness w;
            if (!share || !params_.backend->parse_witness({pt->data() + 32, pt->size() - 32}, w)) {
                bad_k = uint16_t(k);
                break;
            }
            if (!params_.backend->verify_eval(commit_at(b, k), F.from_u64(self_), *share, w)) {
                bad_k = uint16_t(k);
                break;
            }
            shares.push_back(*share);
            wits.push_back(std::move(w));
        }
        if (bad_k == 0) {
            I.valid = true;
            I.shares = std::move(shares);
            I.witnesses = std::move(wits);
        }
    }
    event(EventKind::Validated, int32_t(b), I.valid ? 1 : 0, bad_k);
    if (I.valid) {
        r.append({multicast(MsgKind::Ok, b, {}, Phase::Agreement), false});
        event(EventKind::OkSent, int32_t(b));
        try_output(b);
        r.append(send_r1_round(b));
    } else {
        r.append(maybe_implicate(b, bad_k));
    }
    return r;
}

StepResult AvssParty::maybe_implicate(uint32_t b, uint16_t k) {
    if (implicate_sent_) return {};
    implicate_sent_ = true;
    ImplicatePayload p;
    p.sk = sk_.to_bytes_le();
    p.k = k == 0 ? uint16_t(1) : k;
    event(EventKind::ImplicateSent, int32_t(b), p.k);
    return {multicast(MsgKind::Implicate, b, encode_implicate(p), Phase::Implication), false};
}

StepResult AvssParty::on_ok(PartyId from, uint32_t b, const Bytes& payload) {
    if (!payload.empty()) return {{}, true};
    Instance& I = inst_[b];
    if (!I.ok_set.insert(from).second) return {{}, true};
    StepResult r;
    if (int(I.ok_set.size()) >= 2 * params_.t + 1 && !I.ready_sent) {
        I.ready_sent = true;
        r.append({multicast(MsgKind::Ready, b, {}, Phase::Agreement), false});
        event(EventKind::ReadySent, int32_t(b), int64_t(I.ok_set.size()));
    }
    return r;
}

StepResult AvssParty::on_ready(PartyId from, uint32_t b, const Bytes& payload) {
    if (!payload.empty()) return {{}, true};
    Instance& I = inst_[b];
    if (!I.ready_set.insert(from).second) return {{}, true};
    StepResult r;
    if (int(I.ready_set.size()) >= params_.t + 1 && !I.ready_sent) {
        I.ready_sent = true;  // amplification
        r.append({multicast(MsgKind::Ready, b, {}, Phase::Agreement), false});
        event(EventKind::ReadySent, int32_t(b), int64_t(I.ready_set.size()));
    }
    if (int(I.ready_set.size()) >= 2 * params_.t + 1) try_output(b);
    return r;
}

void AvssParty::try_output(uint32_t b) {
    Instance& I = inst_[b];
    if (I.output_done) return;
    if (int(I.ready_set.size()) < 2 * params_.t + 1 && !skip_ready_gate_) return;
    OutputShares o;
    o.instance = b;
    if (I.valid) {
        o.shares = I.shares;
        o.witnesses = I.witnesses;
        o.via_recovery = false;
    } else if (I.row_done) {
        o.shares = I.rec_shares;
        o.via_recovery = true;
    } else {
        return;
    }
    I.output_done = true;
    event(EventKind::Output, int32_t(b), int64_t(I.ready_set.size()), o.via_recovery ? 1 : 0);
    outputs_.push_back(std::move(o));
}

StepResult AvssParty::on_implicate(PartyId from, uint32_t b, const Bytes& payload) {
    // One accusation per accuser, ever; a malformed one still burns it.
    if (!implication_seen_.insert(from).second) return {{}, true};
    auto p = decode_implicate(payload);
    if (!p) return {{}, true};
    const PrimeField& F = params_.backend->field();
    auto sk = F.from_bytes_le(p->sk);
    if (!sk || !pke_verify_key(params_.backend->key_group(), params_.party_pks[from], *sk) || p->k < 1 ||
        p->k > uint16_t(params_.t + 1)) {
        event(EventKind::ImplicateDiscarded, int32_t(b), from);
        return {{}, true};
    }
    PendingImplication e{from, b, p->k, *sk};
    if (!deps_ready_) {
        pending_impl_.push_back(e);
        return {};
    }
    return process_implication(e);
}

StepResult AvssParty::process_implication(const PendingImplication& e) {
    if (!commits_ok_) {
        // The agreed commitment payload is itself invalid: the dealer is
        // already proven faulty, no retrieval needed (and recovery has no
        // commitments to rebuild against, so it stalls harmlessly).
        event(EventKind::ImplicateConfirmed, int32_t(e.inst), e.accuser);
        return enter_recovery();
    }
    const uint32_t seg = params_.segment_of(int(e.inst), e.accuser);
    verif_.emplace(seg, e);
    StepResult r = avid_.start_retrieve(seg, Phase::Implication);
    r.append(drain_retrievals());  // cached result, if this segment was already fetched
    return r;
}

bool AvssParty::judge_implication(const PendingImplication& e, const std::optional<Bytes>& seg) const {
    if (!seg || seg->size() != params_.segment_size()) return true;
    const size_t cs = params_.ct_size();
    std::span<const uint8_t> ct{seg->data() + size_t(e.k - 1) * cs, cs};
    PkeContext ctx{e.accuser, e.k, e.inst};
    auto pt = pke_decrypt(params_.backend->key_group(), e.sk, ctx, ct);
    if (!pt || pt->size() != 32 + params_.backend->witness_size()) return true;
    const PrimeField& F = params_.backend->field();
    auto share = F.from_bytes_le({pt->data(), 32});
    Witness w;
    if (!share || !params_.backend->parse_witness({pt->data() + 32, pt->size() - 32}, w)) return true;
    return !params_.backend->verify_eval(commit_at(e.inst, e.k), F.from_u64(e.accuser), *share, w);
}

StepResult AvssParty::finish_implication(const PendingImplication& e, const std::optional<Bytes>& seg) {
    if (!judge_implication(e, seg)) {
        event(EventKind::ImplicateDiscarded, int32_t(e.inst), e.accuser);
        return {};
    }
    event(EventKind::ImplicateConfirmed, int32_t(e.inst), e.accuser);
    return enter_recovery();
}

StepResult AvssParty::enter_recovery() {
    StepResult r;
    if (in_recovery_ || !commits_ok_) return r;
    in_recovery_ = true;
    event(EventKind::RecoveryEntered);
    const PrimeField& F = params_.backend->field();
    std::vector<Fp> xs;
    for (int c = 1; c <= params_.t + 1; ++c) xs.push_back(F.from_u64(uint64_t(c)));
    all_commits_.resize(size_t(params_.batch));
    for (int b = 0; b < params_.batch; ++b) {
        std::vector<Commitment> base;
        for (int k = 1; k <= params_.t + 1; ++k) base.push_back(commit_at(uint32_t(b), k));
        auto& row = all_commits_[size_t(b)];
        row.resize(size_t(params_.n));
        for (int c = 1; c <= params_.n; ++c)
            row[size_t(c - 1)] = c <= params_.t + 1
                                     ? base[size_t(c - 1)]
                                     : interpolate_commitment(*params_.backend, base, xs, F.from_u64(uint64_t(c)));
    }
    for (int b = 0; b < params_.batch; ++b) r.append(send_r1_round(uint32_t(b)));
    std::vector<std::pair<PartyId, Message>> pend;
    pend.swap(pending_r_);
    for (auto& [from, msg] : pend) {
        if (msg.kind == MsgKind::R1)
            r.append(on_r1(from, msg.session, msg.payload));
        else
            r.append(on_r2(from, msg.session, msg.payload));
    }
    return r;
}

// Parties holding proven shares hand every column holder one point of them,
// witnessed so liars are filtered at arrival. Runs when recovery starts, or
// when a still-in-flight validation turns out valid after recovery started.
StepResult AvssParty::send_r1_round(uint32_t b) {
    Instance& I = inst_[b];
    StepResult r;
    if (!in_recovery_ || !I.valid || I.r1_sent) return r;
    I.r1_sent = true;
    const PrimeField& F = params_.backend->field();
    std::vector<Fp> xs;
    for (int c = 1; c <= params_.t + 1; ++c) xs.push_back(F.from_u64(uint64_t(c)));
    PointList pts;
    for (int k = 1; k <= params_.t + 1; ++k) pts.push_back({F.from_u64(uint64_t(k)), I.shares[size_t(k - 1)]});
    Poly row = lagrange_interpolate(pts, params_.t);
    for (int j = 1; j <= params_.n; ++j) {
        Witness w = j <= params_.t + 1
                        ? I.witnesses[size_t(j - 1)]
                        : interpolate_witness(*params_.backend, I.witnesses, xs, F.from_u64(uint64_t(j)));
        R1Payload p;
        p.column = uint16_t(j);
        p.value = row.eval(F.from_u64(uint64_t(j))).to_bytes_le();
        p.witness = params_.backend->serialize_witness(w);
        r.out.push_back(Outbound{PartyId(j), Message{MsgKind::R1, b, encode_r1(p)}, Phase::Recovery});
    }
    event(EventKind::R1Sent, int32_t(b), params_.n);
    return r;
}

StepResult AvssParty::on_r1(PartyId from, uint32_t b, const Bytes& payload) {
    if (!in_recovery_) {
        if (commits_rbc_.delivered() && !commits_ok_) return {{}, true};  // recovery can never start
        pending_r_.push_back({from, Message{MsgKind::R1, b, payload}});
        return {};
    }
    Instance& I = inst_[b];
    if (I.column_ready) return {{}, true};
    auto p = decode_r1(payload, params_.backend->witness_size());
    if (!p || p->column != self_) return {{}, true};
    const PrimeField& F = params_.backend->field();
    auto val = F.from_bytes_le(p->value);
    Witness w;
    if (!val || !params_.backend->parse_witness(p->witness, w)) return {{}, true};
    if (!params_.backend->verify_eval(all_commits_[b][size_t(self_ - 1)], F.from_u64(from), *val, w))
        return {{}, true};
    if (!I.r1.emplace(from, *val).second) return {{}, true};
    if (int(I.r1.size()) < params_.t + 1) return {};
    PointList pts;
    for (const auto& [i, v] : I.r1) pts.push_back({F.from_u64(i), v});
    I.col_poly = lagrange_interpolate(pts, params_.t);
    I.column_ready = true;
    event(EventKind::ColumnReady, int32_t(b), int64_t(I.r1.size()));
    StepResult r;
    for (int j = 1; j <= params_.n; ++j) {
        R2Payload q;
        q.column = self_;
        q.value = I.col_poly.eval(F.from_u64(uint64_t(j))).to_bytes_le();
        r.out.push_back(Outbound{PartyId(j), Message{MsgKind::R2, b, encode_r2(q)}, Phase::Recovery});
    }
    event(EventKind::R2Sent, int32_t(b));
    return r;
}

StepResult AvssParty::on_r2(PartyId from, uint32_t b, const Bytes& payload) {
    if (!in_recovery_) {
        if (commits_rbc_.delivered() && !commits_ok_) return {{}, true};
        pending_r_.push_back({from, Message{MsgKind::R2, b, payload}});
        return {};
    }
    Instance& I = inst_[b];
    if (I.valid || I.row_done) return {{}, true};  // nothing to recover (anymore)
    auto p = decode_r2(payload);
    if (!p || p->column != from) return {{}, true};  // parties only report their own column
    const PrimeField& F = params_.backend->field();
    auto val = F.from_bytes_le(p->value);
    if (!val) return {{}, true};
    if (!I.r2.emplace(from, *val).second) return {{}, true};
    if (int(I.r2.size()) < 2 * params_.t + 1) return {};
    PointList pts;
    for (const auto& [j, v] : I.r2) pts.push_back({F.from_u64(j), v});
    // Up to t of these evaluations may be lies; the quorum guarantees the
    // honest row still dominates. Ambiguity here is a parameter bug and
    // deliberately fatal.
    auto row = robust_interpolate(pts, params_.t, 2 * params_.t + 1);
    if (!row) return {};
    I.rec_shares.clear();
    for (int k = 1; k <= params_.t + 1; ++k) I.rec_shares.push_back(row->eval(F.from_u64(uint64_t(k))));
    I.row_done = true;
    event(EventKind::RowRecovered, int32_t(b), int64_t(I.r2.size()));
    try_output(b);
    return {};
}

}  // namespace avss
