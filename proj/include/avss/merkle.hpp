#pragma once

#include <span>
#include <vector>

#include "avss/util.hpp"

namespace avss {

// Authentication path for one leaf; siblings ordered bottom-up. The wire
// form is [u32 leaf_index][u8 depth][depth * 32 bytes].
struct MerkleBranch {
    uint32_t leaf_index = 0;
    std::vector<Hash32> sibs;
};

// SHA-256 Merkle tree with domain separation: leaves hash as 0x00||data,
// inner nodes as 0x01||left||right, and the tree is padded to a power of
// two with a distinguished empty-slot hash so leaf indices are stable.
class MerkleTree {
public:
    static MerkleTree build(std::span<const Bytes> leaves);  // throws on empty input

    const Hash32& root() const { return nodes_[1]; }
    size_t leaf_count() const { return leaf_count_; }
    int depth() const { return depth_; }
    MerkleBranch branch(size_t leaf_index) const;  // throws std::out_of_range

private:
    size_t leaf_count_ = 0;
    int depth_ = 0;
    std::vector<Hash32> nodes_;  // 1-based heap layout
};

// Verifies data against root under a branch. The caller supplies the leaf
// count it expects for this tree so a forged branch cannot smuggle in a
// different depth or an out-of-range index.
bool merkle_verify(const Hash32& root, const MerkleBranch& branch, std::span<const uint8_t> leaf_data,
                   size_t expected_leaf_count);

int merkle_depth_for(size_t leaf_count);

}  // namespace avss
