#include "avss/field.hpp"

#include <gmp.h>

#include <cassert>
#include <stdexcept>

namespace avss {

static_assert(sizeof(mp_limb_t) == 8, "64-bit limbs expected");

U256 U256::from_bytes_le(std::span<const uint8_t> b) {
    if (b.size() != 32) throw std::invalid_argument("U256: need 32 bytes");
    U256 r;
    for (int i = 0; i < 4; i++) {
        uint64_t limb = 0;
        for (int k = 0; k < 8; k++) limb |= uint64_t(b[i * 8 + k]) << (8 * k);
        r.w[i] = limb;
    }
    return r;
}

std::array<uint8_t, 32> U256::to_bytes_le() const {
    std::array<uint8_t, 32> out;
    for (int i = 0; i < 4; i++)
        for (int k = 0; k < 8; k++) out[i * 8 + k] = uint8_t(w[i] >> (8 * k));
    return out;
}

int U256::bit_length() const {
    for (int i = 3; i >= 0; i--)
        if (w[i] != 0) return 64 * i + 64 - __builtin_clzll(w[i]);
    return 0;
}

static int cmp4(const uint64_t* a, const uint64_t* b) {
    return mpn_cmp(reinterpret_cast<const mp_limb_t*>(a), reinterpret_cast<const mp_limb_t*>(b), 4);
}

PrimeField::PrimeField(const U256& modulus) : p_(modulus) {
    bits_ = p_.bit_length();
    if (bits_ < 2) throw std::invalid_argument("PrimeField: modulus too small");
    limbs_ = (bits_ + 63) / 64;
    // p - 2, used as the inversion exponent (Fermat). p >= 2 so no borrow
    // past the low limbs.
    p_minus_2_ = p_;
    mp_limb_t two = 2;
    mpn_sub(reinterpret_cast<mp_limb_t*>(p_minus_2_.w.data()), reinterpret_cast<const mp_limb_t*>(p_.w.data()), 4,
            &two, 1);
}

const PrimeField& PrimeField::ristretto_order() {
    // l = 2^252 + 27742317777372353535851937790883648493
    static const PrimeField f(U256{{0x5812631a5cf5d3edull, 0x14def9dea2f79cd6ull, 0ull, 0x1000000000000000ull}});
    return f;
}

Fp PrimeField::from_u64(uint64_t x) const {
    return reduce(U256::from_u64(x));
}

Fp PrimeField::from_i64(int64_t x) const {
    if (x >= 0) return from_u64(uint64_t(x));
    Fp m = from_u64(uint64_t(-x));
    return -m;
}

std::optional<Fp> PrimeField::from_bytes_le(std::span<const uint8_t> b) const {
    if (b.size() != 32) return std::nullopt;
    U256 v = U256::from_bytes_le(b);
    if (cmp4(v.w.data(), p_.w.data()) >= 0) return std::nullopt;
    return Fp(v, this);
}

Fp PrimeField::reduce(const U256& x) const {
    if (cmp4(x.w.data(), p_.w.data()) < 0) return Fp(x, this);
    mp_limb_t q[5], r[4] = {0, 0, 0, 0};
    mpn_tdiv_qr(q, r, 0, reinterpret_cast<const mp_limb_t*>(x.w.data()), 4,
                reinterpret_cast<const mp_limb_t*>(p_.w.data()), limbs_);
    U256 out;
    for (int i = 0; i < limbs_; i++) out.w[i] = r[i];
    return Fp(out, this);
}

Fp PrimeField::sample(Rng& rng) const {
    U256 v;
    int top = bits_ & 63;
    uint64_t mask = top == 0 ? ~0ull : ((1ull << top) - 1);
    for (;;) {
        for (int i = 0; i < 4; i++) v.w[i] = i < limbs_ ? rng.next_u64() : 0;
        v.w[limbs_ - 1] &= mask;
        if (cmp4(v.w.data(), p_.w.data()) < 0) return Fp(v, this);
    }
}

static void check_same_field(const Fp& a, const Fp& b) {
    assert(a.f && b.f && (a.f == b.f || *a.f == *b.f));
    (void)a;
    (void)b;
}

Fp Fp::operator+(const Fp& o) const {
    check_same_field(*this, o);
    U256 r;
    mp_limb_t cy = mpn_add_n(reinterpret_cast<mp_limb_t*>(r.w.data()), reinterpret_cast<const mp_limb_t*>(v.w.data()),
                             reinterpret_cast<const mp_limb_t*>(o.v.w.data()), 4);
    if (cy || cmp4(r.w.data(), f->p_.w.data()) >= 0) {
        mp_limb_t br = mpn_sub_n(reinterpret_cast<mp_limb_t*>(r.w.data()), reinterpret_cast<const mp_limb_t*>(r.w.data()),
                                 reinterpret_cast<const mp_limb_t*>(f->p_.w.data()), 4);
        assert(br == cy);
        (void)br;
    }
    return Fp(r, f);
}

Fp Fp::operator-(const Fp& o) const {
    check_same_field(*this, o);
    U256 r;
    mp_limb_t br = mpn_sub_n(reinterpret_cast<mp_limb_t*>(r.w.data()), reinterpret_cast<const mp_limb_t*>(v.w.data()),
                             reinterpret_cast<const mp_limb_t*>(o.v.w.data()), 4);
    if (br)
        mpn_add_n(reinterpret_cast<mp_limb_t*>(r.w.data()), reinterpret_cast<const mp_limb_t*>(r.w.data()),
                  reinterpret_cast<const mp_limb_t*>(f->p_.w.data()), 4);
    return Fp(r, f);
}

Fp Fp::operator-() const {
    assert(f);
    if (v.is_zero()) return *this;
    U256 r;
    mpn_sub_n(reinterpret_cast<mp_limb_t*>(r.w.data()), reinterpret_cast<const mp_limb_t*>(f->p_.w.data()),
              reinterpret_cast<const mp_limb_t*>(v.w.data()), 4);
    return Fp(r, f);
}

Fp Fp::operator*(const Fp& o) const {
    check_same_field(*this, o);
    mp_limb_t prod[8];
    mpn_mul_n(prod, reinterpret_cast<const mp_limb_t*>(v.w.data()), reinterpret_cast<const mp_limb_t*>(o.v.w.data()),
              4);
    mp_limb_t q[9], r[4] = {0, 0, 0, 0};
    mpn_tdiv_qr(q, r, 0, prod, 8, reinterpret_cast<const mp_limb_t*>(f->p_.w.data()), f->limbs_);
    U256 out;
    for (int i = 0; i < f->limbs_; i++) out.w[i] = r[i];
    return Fp(out, f);
}

Fp Fp::pow(const U256& e) const {
    assert(f);
    Fp acc = f->one();
    int n = e.bit_length();
    for (int i = n - 1; i >= 0; i--) {
        acc = acc * acc;
        if (e.bit(i)) acc = acc * *this;
    }
    return acc;
}

Fp Fp::inv() const {
    assert(f);
    if (v.is_zero()) throw std::domain_error("Fp::inv: zero has no inverse");
    return pow(f->p_minus_2_);
}

bool Fp::operator==(const Fp& o) const {
    check_same_field(*this, o);
    return v == o.v;
}

std::vector<Fp> batch_inverse(std::span<const Fp> xs) {
    if (xs.empty()) return {};
    const PrimeField* f = xs[0].f;
    std::vector<Fp> prefix(xs.size());
    Fp acc = f->one();
    for (size_t i = 0; i < xs.size(); i++) {
        if (xs[i].is_zero()) throw std::domain_error("batch_inverse: zero input");
        prefix[i] = acc;
        acc = acc * xs[i];
    }
    Fp inv = acc.inv();
    std::vector<Fp> out(xs.size());
    for (size_t i = xs.size(); i-- > 0;) {
        out[i] = inv * prefix[i];
        inv = inv * xs[i];
    }
    return out;
}

}  // namespace avss
