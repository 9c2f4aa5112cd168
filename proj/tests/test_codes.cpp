#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avss/gf256.hpp"
#include "avss/hashes.hpp"
#include "avss/merkle.hpp"
#include "avss/rs.hpp"

using namespace avss;

namespace {

Bytes random_bytes(Rng& rng, size_t n) {
    Bytes b(n);
    rng.fill(b);
    return b;
}

// next k-combination of indices in [0, n)
bool next_combination(std::vector<int>& idx, int n) {
    int k = int(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[size_t(i)] == n - k + i) i--;
    if (i < 0) return false;
    idx[size_t(i)]++;
    for (int j = i + 1; j < k; j++) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
    return true;
}

}  // namespace

TEST_CASE("gf256 is a field") {
    gf256::init_tables();
    // spot inverses and full multiplicative round trip
    for (int a = 1; a < 256; a++) {
        uint8_t inv = gf256::inv(uint8_t(a));
        CHECK(gf256::mul(uint8_t(a), inv) == 1);
    }
    // associativity / distributivity on a sample grid
    for (int a = 1; a < 256; a += 17)
        for (int b = 1; b < 256; b += 13)
            for (int c = 1; c < 256; c += 29) {
                CHECK(gf256::mul(uint8_t(a), gf256::mul(uint8_t(b), uint8_t(c))) ==
                      gf256::mul(gf256::mul(uint8_t(a), uint8_t(b)), uint8_t(c)));
                CHECK(gf256::mul(uint8_t(a), uint8_t(b ^ c)) ==
                      uint8_t(gf256::mul(uint8_t(a), uint8_t(b)) ^ gf256::mul(uint8_t(a), uint8_t(c))));
            }
    CHECK(gf256::mul(0, 200) == 0);
    CHECK_THROWS_AS(gf256::inv(0), std::domain_error);
}

TEST_CASE("field RS fixed example") {
    // payload in evaluation form: 1+2x at x=1,2 -> (3,5); extends to (7,9)
    const PrimeField f13(U256::from_u64(13));
    std::vector<Fp> payload = {f13.from_u64(3), f13.from_u64(5)};
    auto shards = rs_encode_field(payload, 2, 4);
    REQUIRE(shards.size() == 4);
    for (auto& s : shards) REQUIRE(s.size() == 1);
    CHECK(shards[0][0] == f13.from_u64(3));
    CHECK(shards[1][0] == f13.from_u64(5));
    CHECK(shards[2][0] == f13.from_u64(7));
    CHECK(shards[3][0] == f13.from_u64(9));

    // decode from the two parity shards
    std::vector<std::pair<uint32_t, std::vector<Fp>>> have = {{2, shards[2]}, {3, shards[3]}};
    auto back = rs_decode_field(have, 2, 4);
    REQUIRE(back.has_value());
    CHECK((*back)[0] == payload[0]);
    CHECK((*back)[1] == payload[1]);
}

TEST_CASE("byte RS: systematic prefix and padding") {
    Rng rng(1);
    Bytes payload = random_bytes(rng, 23);
    int k = 3, n = 7;
    auto shards = rs_encode(payload, k, n);
    REQUIRE(shards.size() == size_t(n));
    size_t S = rs_shard_size(payload.size(), k);
    CHECK(S == 9);  // ceil(27 / 3)
    Bytes padded;
    put_u32(padded, uint32_t(payload.size()));
    padded.insert(padded.end(), payload.begin(), payload.end());
    padded.resize(size_t(k) * S, 0);
    for (int i = 0; i < k; i++) {
        REQUIRE(shards[size_t(i)].size() == S);
        CHECK(Bytes(padded.begin() + long(size_t(i) * S), padded.begin() + long(size_t(i + 1) * S)) ==
              shards[size_t(i)]);
    }
}

TEST_CASE("byte RS: k equals n means plain chunking") {
    Rng rng(2);
    Bytes payload = random_bytes(rng, 40);
    auto shards = rs_encode(payload, 4, 4);
    Bytes glued;
    for (auto& s : shards) glued.insert(glued.end(), s.begin(), s.end());
    CHECK(get_u32(glued.data()) == 40);
    CHECK(Bytes(glued.begin() + 4, glued.begin() + 44) == payload);
}

TEST_CASE("byte RS: every k-subset decodes to the payload") {
    Rng rng(3);
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 7}, {5, 8}, {1, 5}}) {
        Bytes payload = random_bytes(rng, 10 + size_t(rng.below(60)));
        auto shards = rs_encode(payload, k, n);
        std::vector<int> idx(static_cast<size_t>(k));
        for (int i = 0; i < k; i++) idx[size_t(i)] = i;
        do {
            std::vector<Shard> have;
            for (int i : idx) have.push_back(Shard{uint32_t(i), shards[size_t(i)]});
            auto got = rs_decode(have, k, n);
            REQUIRE(got.has_value());
            CHECK(*got == payload);
        } while (next_combination(idx, n));
    }
}

TEST_CASE("byte RS: decode failure taxonomy") {
    Rng rng(4);
    Bytes payload = random_bytes(rng, 32);
    auto shards = rs_encode(payload, 3, 5);
    // too few distinct shards
    std::vector<Shard> dup = {{0, shards[0]}, {0, shards[0]}, {0, shards[0]}};
    CHECK_FALSE(rs_decode(dup, 3, 5).has_value());
    // out-of-range index
    std::vector<Shard> oob = {{0, shards[0]}, {1, shards[1]}, {9, shards[2]}};
    CHECK_FALSE(rs_decode(oob, 3, 5).has_value());
    // ragged shard sizes
    Bytes trunc = shards[2];
    trunc.pop_back();
    std::vector<Shard> ragged = {{0, shards[0]}, {1, shards[1]}, {2, trunc}};
    CHECK_FALSE(rs_decode(ragged, 3, 5).has_value());
    // absurd length prefix
    std::vector<Shard> lying = {{0, shards[0]}, {1, shards[1]}, {2, shards[2]}};
    lying[0].data[0] = 0xff;
    lying[0].data[1] = 0xff;
    CHECK_FALSE(rs_decode(lying, 3, 5).has_value());
    CHECK_THROWS_AS(rs_encode(payload, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(rs_encode(payload, 5, 4), std::invalid_argument);
}

TEST_CASE("byte RS: encode is deterministic") {
    Rng rng(5);
    Bytes payload = random_bytes(rng, 100);
    CHECK(rs_encode(payload, 4, 10) == rs_encode(payload, 4, 10));
}

TEST_CASE("merkle: branches verify and reject tampering") {
    Rng rng(6);
    for (size_t leaves : {1u, 2u, 3u, 4u, 7u, 8u, 13u}) {
        std::vector<Bytes> data;
        for (size_t i = 0; i < leaves; i++) data.push_back(random_bytes(rng, 5 + i));
        auto tree = MerkleTree::build(data);
        CHECK(tree.depth() == merkle_depth_for(leaves));
        for (size_t i = 0; i < leaves; i++) {
            auto br = tree.branch(i);
            CHECK(merkle_verify(tree.root(), br, data[i], leaves));

            // flipped leaf byte
            Bytes bad = data[i];
            bad[0] ^= 1;
            CHECK_FALSE(merkle_verify(tree.root(), br, bad, leaves));

            // flipped root byte
            Hash32 bad_root = tree.root();
            bad_root[3] ^= 0x40;
            CHECK_FALSE(merkle_verify(bad_root, br, data[i], leaves));

            // flipped sibling byte (depth-0 trees have no siblings)
            if (!br.sibs.empty()) {
                auto bad_br = br;
                bad_br.sibs[0][7] ^= 2;
                CHECK_FALSE(merkle_verify(tree.root(), bad_br, data[i], leaves));
            }

            // wrong index
            auto moved = br;
            moved.leaf_index = (br.leaf_index + 1) % uint32_t(leaves);
            if (leaves > 1) CHECK_FALSE(merkle_verify(tree.root(), moved, data[i], leaves));
        }
    }
}

TEST_CASE("merkle: padding slots are distinguished from real leaves") {
    // A tree over 3 leaves pads to width 4; the pad slot is not reachable
    // through verification (index bound) and an empty real leaf does not
    // collide with the pad hash.
    std::vector<Bytes> data = {{1, 2}, {}, {3}};
    auto tree = MerkleTree::build(data);
    auto br = tree.branch(1);
    CHECK(merkle_verify(tree.root(), br, data[1], 3));

    MerkleBranch forged = br;
    forged.leaf_index = 3;
    CHECK_FALSE(merkle_verify(tree.root(), forged, Bytes{}, 3));

    // depth mismatch: a branch from a smaller tree is rejected outright
    CHECK_FALSE(merkle_verify(tree.root(), MerkleBranch{1, {}}, data[1], 3));

    // two identical single-leaf sets with different pad content differ
    auto t2 = MerkleTree::build(std::vector<Bytes>{{9}});
    auto t3 = MerkleTree::build(std::vector<Bytes>{{9}, {}});
    CHECK(t2.root() != t3.root());
}

TEST_CASE("merkle: deterministic roots") {
    std::vector<Bytes> data = {{1}, {2, 2}, {3, 3, 3}};
    CHECK(MerkleTree::build(data).root() == MerkleTree::build(data).root());
    data[2][0] ^= 1;
    CHECK(MerkleTree::build(data).root() !=
          MerkleTree::build(std::vector<Bytes>{{1}, {2, 2}, {3, 3, 3}}).root());
}

TEST_CASE("sha256 known answer") {
    // FIPS 180 "abc" vector pins the hash wiring
    Bytes abc = {'a', 'b', 'c'};
    CHECK(to_hex(sha256(abc)) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
