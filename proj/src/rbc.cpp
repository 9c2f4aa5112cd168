#include "avss/rbc.hpp"

#include <stdexcept>

namespace avss {

namespace {

std::optional<Bytes> decode_echo_subset(const std::map<PartyId, Shard>& echoes, int k, int n) {
    std::vector<Shard> sub;
    sub.reserve(size_t(k));
    for (const auto& [from, sh] : echoes) {
        (void)from;
        sub.push_back(sh);
        if (int(sub.size()) == k) break;
    }
    return rs_decode(sub, k, n);
}

}  // namespace

RbcPeer::RbcPeer(int n, int f, uint32_t session, PartyId self, PartyId broadcaster, Phase phase)
    : n_(n), f_(f), session_(session), self_(self), bcaster_(broadcaster), phase_(phase) {
    if (n < 3 * f + 1 || f < 0) throw std::invalid_argument("rbc: need n >= 3f+1");
    if (self < 1 || int(self) > n) throw std::invalid_argument("rbc: self out of range");
}

std::vector<Outbound> RbcPeer::broadcaster_start(int n, int f, uint32_t session, std::span<const uint8_t> value,
                                                 Phase phase) {
    if (n < 3 * f + 1 || f < 0) throw std::invalid_argument("rbc: need n >= 3f+1");
    const int k = n - 2 * f;
    std::vector<Bytes> shards = rs_encode(value, k, n);
    MerkleTree tree = MerkleTree::build(shards);
    std::vector<Outbound> out;
    out.reserve(size_t(n));
    for (int i = 1; i <= n; ++i) {
        RbcShardPayload p;
        p.root = tree.root();
        p.branch = tree.branch(size_t(i - 1));
        p.shard = Shard{uint32_t(i - 1), shards[size_t(i - 1)]};
        out.push_back(Outbound{PartyId(i), Message{MsgKind::Val, session, encode_rbc_shard(p)}, phase});
    }
    return out;
}

std::vector<Outbound> RbcPeer::multicast(MsgKind kind, Bytes payload) const {
    std::vector<Outbound> out;
    out.reserve(size_t(n_));
    for (int i = 1; i <= n_; ++i)
        out.push_back(Outbound{PartyId(i), Message{kind, session_, payload}, phase_});
    return out;
}

StepResult RbcPeer::on_message(PartyId from, const Message& msg) {
    if (msg.session != session_) return {{}, true};
    if (delivered_) return {{}, true};  // late: the instance is closed for us
    switch (msg.kind) {
        case MsgKind::Val: return on_val(from, msg.payload);
        case MsgKind::Echo: return on_echo(from, msg.payload);
        case MsgKind::ReadyRbc: return on_ready(from, msg.payload);
        default: return {{}, true};
    }
}

StepResult RbcPeer::on_val(PartyId from, std::span<const uint8_t> payload) {
    if (from != bcaster_ || echo_sent_) return {{}, true};
    auto p = decode_rbc_shard(payload);
    if (!p) return {{}, true};
    const uint32_t my_leaf = uint32_t(self_ - 1);
    if (p->branch.leaf_index != my_leaf || p->shard.index != my_leaf) return {{}, true};
    if (!merkle_verify(p->root, p->branch, p->shard.data, size_t(n_))) return {{}, true};
    echo_sent_ = true;
    return {multicast(MsgKind::Echo, encode_rbc_shard(*p)), false};
}

StepResult RbcPeer::on_echo(PartyId from, std::span<const uint8_t> payload) {
    auto p = decode_rbc_shard(payload);
    if (!p) return {{}, true};
    const uint32_t leaf = uint32_t(from - 1);
    if (p->branch.leaf_index != leaf || p->shard.index != leaf) return {{}, true};
    if (!merkle_verify(p->root, p->branch, p->shard.data, size_t(n_))) return {{}, true};
    RootState& st = roots_[p->root];
    if (!st.echoes.emplace(from, std::move(p->shard)).second) return {{}, true};
    return run_thresholds(p->root);
}

StepResult RbcPeer::on_ready(PartyId from, std::span<const uint8_t> payload) {
    auto root = decode_rbc_ready(payload);
    if (!root) return {{}, true};
    RootState& st = roots_[*root];
    if (!st.readys.insert(from).second) return {{}, true};
    return run_thresholds(*root);
}

StepResult RbcPeer::run_thresholds(const Hash32& root) {
    RootState& st = roots_[root];
    StepResult r;

    // n-f verified echoes: interpolate, re-encode, and only READY if the
    // recomputed tree matches the root. A broadcaster that disperses shards
    // of inconsistent codewords dies here at every correct party.
    if (int(st.echoes.size()) >= n_ - f_ && !st.checked) {
        st.checked = true;
        auto value = decode_echo_subset(st.echoes, n_ - 2 * f_, n_);
        if (value) {
            std::vector<Bytes> reenc = rs_encode(*value, n_ - 2 * f_, n_);
            if (MerkleTree::build(reenc).root() == root) {
                st.check_ok = true;
                st.decoded = std::move(*value);
            }
        }
        st.aborted = !st.check_ok;
        if (st.check_ok && !ready_sent_) {
            ready_sent_ = true;
            r.append({multicast(MsgKind::ReadyRbc, encode_rbc_ready(root)), false});
        }
    }

    // f+1 readys: amplify even without an echo quorum of our own.
    if (int(st.readys.size()) >= f_ + 1 && !ready_sent_ && !st.aborted) {
        ready_sent_ = true;
        r.append({multicast(MsgKind::ReadyRbc, encode_rbc_ready(root)), false});
    }

    // 2f+1 readys and n-2f echoes: deliver. At least one correct party ran
    // the re-encode check for this root (the first correct READY cannot be
    // an amplification), so under collision resistance every verified echo
    // shard belongs to one fixed codeword and any decode subset agrees. A
    // mismatch here is an impossible state, not a protocol outcome.
    if (int(st.readys.size()) >= 2 * f_ + 1 && int(st.echoes.size()) >= n_ - 2 * f_) {
        std::optional<Bytes> value;
        if (st.check_ok) {
            value = st.decoded;
        } else {
            value = decode_echo_subset(st.echoes, n_ - 2 * f_, n_);
            if (value) {
                std::vector<Bytes> reenc = rs_encode(*value, n_ - 2 * f_, n_);
                if (MerkleTree::build(reenc).root() != root) value.reset();
            }
        }
        if (!value) throw std::logic_error("rbc: delivery decode contradicts the root");
        delivered_ = true;
        value_ = std::move(*value);
    }
    return r;
}

}  // namespace avss
