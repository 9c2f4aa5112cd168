#include "avss/rs.hpp"

#include <map>

#include "avss/gf256.hpp"
#include "avss/poly.hpp"

namespace avss {

namespace {

void check_params(int k, int n) {
    if (k < 1 || n < k || n > 255) throw std::invalid_argument("rs: need 1 <= k <= n <= 255");
}

// Lagrange evaluation coefficients in GF(2^8): weight[c] such that
// f(target) = sum_c weight[c] * f(support[c]). Addition is XOR, so the
// usual numerator/denominator products carry over directly.
std::vector<uint8_t> gf_lagrange_row(std::span<const uint8_t> support, uint8_t target) {
    size_t k = support.size();
    std::vector<uint8_t> row(k);
    for (size_t c = 0; c < k; c++) {
        if (support[c] == target) {
            std::fill(row.begin(), row.end(), 0);
            row[c] = 1;
            return row;
        }
    }
    for (size_t c = 0; c < k; c++) {
        uint8_t num = 1, den = 1;
        for (size_t m = 0; m < k; m++) {
            if (m == c) continue;
            num = gf256::mul(num, uint8_t(target ^ support[m]));
            den = gf256::mul(den, uint8_t(support[c] ^ support[m]));
        }
        row[c] = gf256::mul(num, gf256::inv(den));
    }
    return row;
}

// Parity rows for the standard point layout (support 1..k, targets k+1..n),
// cached per (n, k). Single-threaded by design, so no locking.
const std::vector<std::vector<uint8_t>>& parity_rows(int k, int n) {
    static std::map<std::pair<int, int>, std::vector<std::vector<uint8_t>>> cache;
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
    std::vector<uint8_t> support(static_cast<size_t>(k));
    for (int c = 0; c < k; c++) support[size_t(c)] = uint8_t(c + 1);
    std::vector<std::vector<uint8_t>> rows;
    for (int i = k; i < n; i++) rows.push_back(gf_lagrange_row(support, uint8_t(i + 1)));
    return cache.emplace(std::pair{n, k}, std::move(rows)).first->second;
}

}  // namespace

size_t rs_shard_size(size_t payload_len, int k) {
    return (payload_len + 4 + size_t(k) - 1) / size_t(k);
}

std::vector<Bytes> rs_encode(std::span<const uint8_t> payload, int k, int n) {
    check_params(k, n);
    size_t S = rs_shard_size(payload.size(), k);
    Bytes padded;
    padded.reserve(size_t(k) * S);
    put_u32(padded, uint32_t(payload.size()));
    padded.insert(padded.end(), payload.begin(), payload.end());
    padded.resize(size_t(k) * S, 0);

    std::vector<Bytes> shards{};
    shards.resize(size_t(n));
    for (int i = 0; i < k; i++)
        shards[size_t(i)].assign(padded.begin() + long(size_t(i) * S), padded.begin() + long(size_t(i + 1) * S));
    const auto& rows = parity_rows(k, n);
    for (int i = k; i < n; i++) {
        const auto& row = rows[size_t(i - k)];
        Bytes& out = shards[size_t(i)];
        out.assign(S, 0);
        for (int c = 0; c < k; c++) {
            uint8_t w = row[size_t(c)];
            if (w == 0) continue;
            const uint8_t* src = padded.data() + size_t(c) * S;
            for (size_t j = 0; j < S; j++) out[j] ^= gf256::mul(w, src[j]);
        }
    }
    return shards;
}

std::optional<Bytes> rs_decode(std::span<const Shard> shards, int k, int n) {
    check_params(k, n);
    // First k distinct, in-range, same-size shards win.
    std::vector<const Shard*> use;
    for (const Shard& s : shards) {
        if (int(use.size()) == k) break;
        if (s.index >= uint32_t(n)) return std::nullopt;
        bool dup = false;
        for (const Shard* u : use)
            if (u->index == s.index) dup = true;
        if (dup) continue;
        if (!use.empty() && s.data.size() != use[0]->data.size()) return std::nullopt;
        use.push_back(&s);
    }
    if (int(use.size()) < k) return std::nullopt;
    size_t S = use[0]->data.size();
    if (S == 0) return std::nullopt;

    std::vector<uint8_t> support(static_cast<size_t>(k));
    for (int c = 0; c < k; c++) support[size_t(c)] = uint8_t(use[size_t(c)]->index + 1);

    Bytes padded(size_t(k) * S, 0);
    for (int tgt = 0; tgt < k; tgt++) {
        auto row = gf_lagrange_row(support, uint8_t(tgt + 1));
        uint8_t* dst = padded.data() + size_t(tgt) * S;
        for (int c = 0; c < k; c++) {
            uint8_t w = row[size_t(c)];
            if (w == 0) continue;
            const uint8_t* src = use[size_t(c)]->data.data();
            for (size_t j = 0; j < S; j++) dst[j] ^= gf256::mul(w, src[j]);
        }
    }

    uint32_t len = get_u32(padded.data());
    if (size_t(len) + 4 > padded.size()) return std::nullopt;
    return Bytes(padded.begin() + 4, padded.begin() + 4 + long(len));
}

std::vector<std::vector<Fp>> rs_encode_field(std::span<const Fp> payload, int k, int n) {
    check_params(k, n);
    if (payload.empty() || payload.size() % size_t(k) != 0)
        throw std::invalid_argument("rs_encode_field: payload length must be a positive multiple of k");
    const PrimeField* f = payload[0].f;
    size_t S = payload.size() / size_t(k);

    std::vector<std::vector<Fp>> shards{};
    shards.resize(size_t(n));
    for (int i = 0; i < k; i++)
        shards[size_t(i)].assign(payload.begin() + long(size_t(i) * S), payload.begin() + long(size_t(i + 1) * S));

    std::vector<Fp> support(static_cast<size_t>(k));
    for (int c = 0; c < k; c++) support[size_t(c)] = f->from_u64(uint64_t(c) + 1);
    for (int i = k; i < n; i++) {
        auto row = lagrange_coefficients(support, f->from_u64(uint64_t(i) + 1));
        auto& out = shards[size_t(i)];
        out.assign(S, f->zero());
        for (int c = 0; c < k; c++)
            for (size_t j = 0; j < S; j++) out[j] += row[size_t(c)] * payload[size_t(c) * S + j];
    }
    return shards;
}

std::optional<std::vector<Fp>> rs_decode_field(std::span<const std::pair<uint32_t, std::vector<Fp>>> shards, int k,
                                               int n) {
    check_params(k, n);
    std::vector<const std::pair<uint32_t, std::vector<Fp>>*> use;
    for (const auto& s : shards) {
        if (int(use.size()) == k) break;
        if (s.first >= uint32_t(n)) return std::nullopt;
        bool dup = false;
        for (const auto* u : use)
            if (u->first == s.first) dup = true;
        if (dup) continue;
        if (!use.empty() && s.second.size() != use[0]->second.size()) return std::nullopt;
        use.push_back(&s);
    }
    if (int(use.size()) < k || use[0]->second.empty()) return std::nullopt;
    size_t S = use[0]->second.size();
    const PrimeField* f = use[0]->second[0].f;

    std::vector<Fp> support(static_cast<size_t>(k));
    for (int c = 0; c < k; c++) support[size_t(c)] = f->from_u64(uint64_t(use[size_t(c)]->first) + 1);

    std::vector<Fp> payload(size_t(k) * S, f->zero());
    for (int tgt = 0; tgt < k; tgt++) {
        auto row = lagrange_coefficients(support, f->from_u64(uint64_t(tgt) + 1));
        for (int c = 0; c < k; c++)
            for (size_t j = 0; j < S; j++) payload[size_t(tgt) * S + j] += row[size_t(c)] * use[size_t(c)]->second[j];
    }
    return payload;
}

}  // namespace avss
