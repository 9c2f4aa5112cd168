#include "avss/avid.hpp"

#include <stdexcept>

namespace avss {

AvidPeer::AvidPeer(int n, int t, uint32_t seg_count, PartyId self, PartyId dealer)
    : n_(n),
      t_(t),
      seg_count_(seg_count),
      self_(self),
      dealer_(dealer),
      roots_rbc_(n, t, kSessionRbcRoots, self, dealer, Phase::Dispersal) {
    if (seg_count == 0) throw std::invalid_argument("avid: no segments");
}

std::vector<Outbound> AvidPeer::dealer_start(int n, int t, std::span<const Bytes> segments) {
    if (segments.empty()) throw std::invalid_argument("avid: no segments");
    const int k = t + 1;
    std::vector<std::vector<Bytes>> shards;
    std::vector<MerkleTree> trees;
    shards.reserve(segments.size());
    trees.reserve(segments.size());
    Bytes roots_payload;
    for (const Bytes& seg : segments) {
        shards.push_back(rs_encode(seg, k, n));
        trees.push_back(MerkleTree::build(shards.back()));
        const Hash32& r = trees.back().root();
        roots_payload.insert(roots_payload.end(), r.begin(), r.end());
    }
    std::vector<Outbound> out = RbcPeer::broadcaster_start(n, t, kSessionRbcRoots, roots_payload, Phase::Dispersal);
    for (int i = 1; i <= n; ++i) {
        FragPayload fp;
        fp.entries.reserve(segments.size());
        for (uint32_t m = 0; m < segments.size(); ++m) {
            FragEntry e;
            e.segment = m;
            e.branch = trees[m].branch(size_t(i - 1));
            e.shard = Shard{uint32_t(i - 1), shards[m][size_t(i - 1)]};
            fp.entries.push_back(std::move(e));
        }
        out.push_back(Outbound{PartyId(i), Message{MsgKind::Frag, kSessionAvid, encode_frag(fp)}, Phase::Dispersal});
    }
    return out;
}

StepResult AvidPeer::on_message(PartyId from, const Message& msg, Phase in_phase) {
    if (msg.session == kSessionRbcRoots) return on_roots_rbc(from, msg);
    if (msg.session != kSessionAvid) return {{}, true};
    switch (msg.kind) {
        case MsgKind::Frag: return on_frag(from, msg.payload);
        case MsgKind::FragAck: return on_frag_ack(from, msg.payload);
        case MsgKind::Fetch: return on_fetch(from, msg.payload, in_phase);
        case MsgKind::FragReply: return on_frag_reply(from, msg.payload);
        default: return {{}, true};
    }
}

StepResult AvidPeer::on_roots_rbc(PartyId from, const Message& msg) {
    const bool was_delivered = roots_rbc_.delivered();
    StepResult r = roots_rbc_.on_message(from, msg);
    if (was_delivered || !roots_rbc_.delivered()) return r;

    const Bytes& payload = roots_rbc_.value();
    if (payload.size() != size_t(seg_count_) * 32 || payload.empty()) {
        roots_bad_ = true;  // agreed-on but unusable: dispersal can never complete
        return r;
    }
    roots_.resize(seg_count_);
    for (uint32_t m = 0; m < seg_count_; ++m)
        std::copy_n(payload.begin() + size_t(m) * 32, 32, roots_[m].begin());

    if (pending_frag_) {
        FragPayload fp = std::move(*pending_frag_);
        pending_frag_.reset();
        r.append(adopt_frag(std::move(fp)));
    }
    complete_ = int(acks_.size()) >= 2 * t_ + 1;
    return r;
}

StepResult AvidPeer::adopt_frag(FragPayload frags) {
    for (uint32_t m = 0; m < seg_count_; ++m) {
        const FragEntry& e = frags.entries[m];
        const uint32_t my_leaf = uint32_t(self_ - 1);
        if (e.segment != m || e.branch.leaf_index != my_leaf || e.shard.index != my_leaf) return {{}, true};
        if (!merkle_verify(roots_[m], e.branch, e.shard.data, size_t(n_))) return {{}, true};
    }
    my_frags_ = std::move(frags.entries);
    frag_ok_ = true;
    StepResult r;
    for (int i = 1; i <= n_; ++i)
        r.out.push_back(Outbound{PartyId(i), Message{MsgKind::FragAck, kSessionAvid, {}}, Phase::Dispersal});
    for (auto& [to, seg_phase] : pending_fetches_)
        r.out.push_back(reply_to_fetch(to, seg_phase.first, seg_phase.second));
    pending_fetches_.clear();
    return r;
}

StepResult AvidPeer::on_frag(PartyId from, std::span<const uint8_t> payload) {
    if (from != dealer_ || frag_seen_) return {{}, true};
    auto fp = decode_frag(payload);
    if (!fp || fp->entries.size() != size_t(seg_count_)) return {{}, true};
    frag_seen_ = true;
    if (!roots_rbc_.delivered()) {
        pending_frag_ = std::move(*fp);
        return {};
    }
    if (roots_bad_) return {{}, true};
    return adopt_frag(std::move(*fp));
}

StepResult AvidPeer::on_frag_ack(PartyId from, std::span<const uint8_t> payload) {
    if (!payload.empty()) return {{}, true};
    if (!acks_.insert(from).second) return {{}, true};
    complete_ = roots_known() && int(acks_.size()) >= 2 * t_ + 1;
    return {};
}

Outbound AvidPeer::reply_to_fetch(PartyId to, uint32_t segment, Phase phase) const {
    return Outbound{to, Message{MsgKind::FragReply, kSessionAvid, encode_frag_reply(my_frags_[segment])}, phase};
}

StepResult AvidPeer::on_fetch(PartyId from, std::span<const uint8_t> payload, Phase in_phase) {
    auto seg = decode_fetch(payload);
    if (!seg || *seg >= seg_count_) return {{}, true};
    if (!frag_ok_) {
        // We may still be waiting for the dealer; serve once our fragment
        // verifies. If it never does, the fetcher's quorum is on the other
        // 2t+1 ackers anyway.
        pending_fetches_.push_back({from, {*seg, in_phase}});
        return {};
    }
    return {{reply_to_fetch(from, *seg, in_phase)}, false};
}

StepResult AvidPeer::start_retrieve(uint32_t segment, Phase phase) {
    if (segment >= seg_count_) throw std::invalid_argument("avid: segment out of range");
    auto it = retrievals_.find(segment);
    if (it != retrievals_.end()) {
        if (it->second.done) results_.push_back(RetrieveResult{segment, it->second.value});
        return {};
    }
    Retrieval ret;
    ret.phase = phase;
    retrievals_.emplace(segment, std::move(ret));
    StepResult r;
    for (int i = 1; i <= n_; ++i)
        r.out.push_back(Outbound{PartyId(i), Message{MsgKind::Fetch, kSessionAvid, encode_fetch(segment)}, phase});
    return r;
}

StepResult AvidPeer::on_frag_reply(PartyId from, std::span<const uint8_t> payload) {
    auto e = decode_frag_reply(payload);
    if (!e) return {{}, true};
    auto it = retrievals_.find(e->segment);
    if (it == retrievals_.end() || it->second.done) return {{}, true};
    if (!roots_known()) return {{}, true};  // cannot happen for our own fetches, but stay strict
    const uint32_t leaf = uint32_t(from - 1);
    if (e->branch.leaf_index != leaf || e->shard.index != leaf) return {{}, true};
    if (!merkle_verify(roots_[e->segment], e->branch, e->shard.data, size_t(n_))) return {{}, true};
    Retrieval& ret = it->second;
    if (!ret.replies.emplace(from, std::move(e->shard)).second) return {{}, true};
    if (int(ret.replies.size()) == t_ + 1) finish_retrieval(e->segment, ret);
    return {};
}

void AvidPeer::finish_retrieval(uint32_t segment, Retrieval& ret) {
    std::vector<Shard> sub;
    sub.reserve(ret.replies.size());
    for (const auto& [from, sh] : ret.replies) {
        (void)from;
        sub.push_back(sh);
    }
    std::optional<Bytes> value = rs_decode(sub, t_ + 1, n_);
    if (value) {
        std::vector<Bytes> reenc = rs_encode(*value, t_ + 1, n_);
        if (MerkleTree::build(reenc).root() != roots_[segment]) value.reset();
    }
    ret.done = true;
    ret.value = std::move(value);
    results_.push_back(RetrieveResult{segment, ret.value});
    ret.replies.clear();
}

std::vector<AvidPeer::RetrieveResult> AvidPeer::take_results() {
    std::vector<RetrieveResult> out;
    out.swap(results_);
    return out;
}

}  // namespace avss
