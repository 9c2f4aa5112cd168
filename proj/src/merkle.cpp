#include "avss/merkle.hpp"

#include <stdexcept>

#include "avss/hashes.hpp"

namespace avss {

namespace {

Hash32 leaf_hash(std::span<const uint8_t> data) {
    return Sha256().update_byte(0x00).update(data).final();
}

Hash32 node_hash(const Hash32& l, const Hash32& r) {
    return Sha256().update_byte(0x01).update(l).update(r).final();
}

const Hash32& empty_slot_hash() {
    static const Hash32 h = Sha256().update_byte(0x02).final();
    return h;
}

}  // namespace

int merkle_depth_for(size_t leaf_count) {
    int d = 0;
    while ((size_t(1) << d) < leaf_count) d++;
    return d;
}

MerkleTree MerkleTree::build(std::span<const Bytes> leaves) {
    if (leaves.empty()) throw std::invalid_argument("MerkleTree: no leaves");
    MerkleTree t;
    t.leaf_count_ = leaves.size();
    t.depth_ = merkle_depth_for(leaves.size());
    size_t width = size_t(1) << t.depth_;
    t.nodes_.assign(2 * width, Hash32{});
    for (size_t i = 0; i < width; i++)
        t.nodes_[width + i] = i < leaves.size() ? leaf_hash(leaves[i]) : empty_slot_hash();
    for (size_t i = width; i-- > 1;) t.nodes_[i] = node_hash(t.nodes_[2 * i], t.nodes_[2 * i + 1]);
    return t;
}

MerkleBranch MerkleTree::branch(size_t leaf_index) const {
    if (leaf_index >= leaf_count_) throw std::out_of_range("MerkleTree::branch: leaf index out of range");
    MerkleBranch b;
    b.leaf_index = uint32_t(leaf_index);
    size_t pos = (size_t(1) << depth_) + leaf_index;
    while (pos > 1) {
        b.sibs.push_back(nodes_[pos ^ 1]);
        pos >>= 1;
    }
    return b;
}

bool merkle_verify(const Hash32& root, const MerkleBranch& branch, std::span<const uint8_t> leaf_data,
                   size_t expected_leaf_count) {
    if (expected_leaf_count == 0) return false;
    if (int(branch.sibs.size()) != merkle_depth_for(expected_leaf_count)) return false;
    if (branch.leaf_index >= expected_leaf_count) return false;
    Hash32 acc = leaf_hash(leaf_data);
    size_t idx = branch.leaf_index;
    for (const Hash32& sib : branch.sibs) {
        acc = (idx & 1) ? node_hash(sib, acc) : node_hash(acc, sib);
        idx >>= 1;
    }
    return acc == root;
}

}  // namespace avss
