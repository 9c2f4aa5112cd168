#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "avss/polycommit.hpp"

using namespace avss;

namespace {

const PrimeField& FL = PrimeField::ristretto_order();

Poly random_poly(int deg, Rng& rng) {
    Poly p;
    for (int i = 0; i <= deg; i++) p.c.push_back(FL.sample(rng));
    return p;
}

std::vector<BackendKind> both = {BackendKind::Pairing, BackendKind::DiscreteLog};

}  // namespace

TEST_CASE("setup is deterministic per seed") {
    for (auto kind : both) {
        auto a = make_backend(kind, 2, 99);
        auto b = make_backend(kind, 2, 99);
        CHECK(a->params_fingerprint() == b->params_fingerprint());
        Rng rng(1);
        Poly phi = random_poly(2, rng), aux = random_poly(2, rng);
        CHECK(a->commit(phi, aux) == b->commit(phi, aux));
    }
    CHECK_THROWS_AS(make_backend(BackendKind::Pairing, 0, 1), DegreeError);
}

TEST_CASE("commitment and witness sizes match the byte model") {
    auto pairing = make_backend(BackendKind::Pairing, 3, 7);
    CHECK(pairing->commitment_size() == 48);
    CHECK(pairing->witness_size() == 80);
    auto dl = make_backend(BackendKind::DiscreteLog, 3, 7);
    CHECK(dl->commitment_size() == 32 * 4);
    CHECK(dl->witness_size() == 32);

    Rng rng(2);
    Poly phi = random_poly(3, rng), aux = random_poly(3, rng);
    CHECK(pairing->commit(phi, aux).data.size() == 48);
    CHECK(pairing->serialize_witness(pairing->create_witness(phi, aux, FL.from_u64(1))).size() == 80);
    CHECK(dl->commit(phi, aux).data.size() == 128);
    CHECK(dl->serialize_witness(dl->create_witness(phi, aux, FL.from_u64(1))).size() == 32);
}

TEST_CASE("commit to the zero polynomial is the identity") {
    for (auto kind : both) {
        auto pc = make_backend(kind, 2, 5);
        Commitment c = pc->commit(Poly::zero(), Poly::zero());
        // identity commitments are recognizably canonical: committing again
        // and combining with zero coefficients both land on the same bytes
        Commitment via_combine = pc->combine_commitments(std::vector<Commitment>{c},
                                                         std::vector<Fp>{FL.zero()});
        CHECK(c == via_combine);
        // verifies the zero evaluation everywhere
        Witness w = pc->create_witness(Poly::zero(), Poly::zero(), FL.from_u64(4));
        CHECK(pc->verify_eval(c, FL.from_u64(4), FL.zero(), w));
    }
}

TEST_CASE("verify accepts true evaluations and rejects everything else") {
    for (auto kind : both) {
        auto pc = make_backend(kind, 2, 11);
        Rng rng(3);
        Poly phi = random_poly(2, rng), aux = random_poly(2, rng);
        Commitment c = pc->commit(phi, aux);
        for (int i = 1; i <= 7; i++) {
            Fp x = FL.from_u64(uint64_t(i));
            Witness w = pc->create_witness(phi, aux, x);
            CHECK(pc->verify_eval(c, x, phi.eval(x), w));
            // wrong value
            CHECK_FALSE(pc->verify_eval(c, x, phi.eval(x) + FL.one(), w));
            // wrong point
            CHECK_FALSE(pc->verify_eval(c, x + FL.one(), phi.eval(x), w));
            // wrong hiding evaluation
            Witness bad = w;
            bad.hiding += FL.one();
            CHECK_FALSE(pc->verify_eval(c, x, phi.eval(x), bad));
        }
        // witness for a different polynomial
        Poly other = random_poly(2, rng);
        Witness foreign = pc->create_witness(other, aux, FL.from_u64(1));
        CHECK_FALSE(pc->verify_eval(c, FL.from_u64(1), other.eval(FL.from_u64(1)), foreign));
        CHECK_THROWS_AS(pc->commit(random_poly(3, rng), Poly::zero()), DegreeError);
    }
}

TEST_CASE("malformed serializations are rejected, not trusted") {
    for (auto kind : both) {
        auto pc = make_backend(kind, 2, 13);
        Rng rng(4);
        Poly phi = random_poly(2, rng), aux = random_poly(2, rng);
        Commitment c = pc->commit(phi, aux);
        Witness w = pc->create_witness(phi, aux, FL.from_u64(2));

        Commitment parsed;
        CHECK(pc->parse_commitment(c.data, parsed));
        CHECK(parsed == c);

        Bytes short_c(c.data.begin(), c.data.end() - 1);
        CHECK_FALSE(pc->parse_commitment(short_c, parsed));
        Bytes junk(pc->commitment_size(), 0xff);
        CHECK_FALSE(pc->parse_commitment(junk, parsed));

        Bytes wb = pc->serialize_witness(w);
        Witness back;
        CHECK(pc->parse_witness(wb, back));
        CHECK(pc->verify_eval(c, FL.from_u64(2), phi.eval(FL.from_u64(2)), back));
        Bytes non_canonical = wb;
        std::fill(non_canonical.end() - 32, non_canonical.end(), 0xff);  // hiding >= field order
        CHECK_FALSE(pc->parse_witness(non_canonical, back));
        Bytes short_w(wb.begin(), wb.end() - 1);
        CHECK_FALSE(pc->parse_witness(short_w, back));
    }
    // pairing group encodings carry a checksum; flipping any byte breaks it
    auto pc = make_backend(BackendKind::Pairing, 2, 13);
    Rng rng(5);
    Commitment c = pc->commit(random_poly(2, rng), random_poly(2, rng));
    for (size_t pos : {0u, 20u, 40u, 47u}) {
        Bytes bent = c.data;
        bent[pos] ^= 1;
        Commitment out;
        CHECK_FALSE(pc->parse_commitment(bent, out));
    }
}

TEST_CASE("additive homomorphism") {
    for (auto kind : both) {
        auto pc = make_backend(kind, 2, 17);
        Rng rng(6);
        Poly p1 = random_poly(2, rng), a1 = random_poly(2, rng);
        Poly p2 = random_poly(2, rng), a2 = random_poly(2, rng);
        Fp ca = FL.sample(rng), cb = FL.sample(rng);

        Poly pc_sum, aux_sum;
        for (int j = 0; j <= 2; j++) {
            pc_sum.c.push_back(ca * p1.c[size_t(j)] + cb * p2.c[size_t(j)]);
            aux_sum.c.push_back(ca * a1.c[size_t(j)] + cb * a2.c[size_t(j)]);
        }

        Commitment c1 = pc->commit(p1, a1), c2 = pc->commit(p2, a2);
        Commitment combined =
            pc->combine_commitments(std::vector<Commitment>{c1, c2}, std::vector<Fp>{ca, cb});
        CHECK(combined == pc->commit(pc_sum, aux_sum));

        Fp x = FL.from_u64(3);
        Witness w1 = pc->create_witness(p1, a1, x), w2 = pc->create_witness(p2, a2, x);
        Witness wc = pc->combine_witnesses(std::vector<Witness>{w1, w2}, std::vector<Fp>{ca, cb});
        CHECK(pc->verify_eval(combined, x, pc_sum.eval(x), wc));
    }
}

TEST_CASE("interpolated commitments equal direct commitments to interpolated columns") {
    // The recovery path in one lemma: committing to the first t+1 columns of
    // a bivariate polynomial determines the commitments to every other
    // column, byte for byte.
    for (auto kind : both) {
        for (int t : {1, 2, 3}) {
            int n = 3 * t + 1;
            auto pc = make_backend(kind, t, 23);
            Rng rng(uint64_t(100 + t));
            BivarPoly phi = random_bivariate(t, FL, rng);
            BivarPoly phi_hat = random_bivariate(t, FL, rng);

            std::vector<Commitment> cs;
            std::vector<Fp> xs;
            for (int k = 1; k <= t + 1; k++) {
                Fp y = FL.from_u64(uint64_t(k));
                cs.push_back(pc->commit(phi.column(y), phi_hat.column(y)));
                xs.push_back(y);
            }
            for (int k = 1; k <= n; k++) {
                Fp y = FL.from_u64(uint64_t(k));
                Commitment direct = pc->commit(phi.column(y), phi_hat.column(y));
                Commitment interp = interpolate_commitment(*pc, cs, xs, y);
                CHECK(direct == interp);
            }
        }
    }
}

TEST_CASE("witnesses interpolate across columns like commitments do") {
    for (auto kind : both) {
        int t = 2, n = 7;
        auto pc = make_backend(kind, t, 29);
        Rng rng(31);
        BivarPoly phi = random_bivariate(t, FL, rng);
        BivarPoly phi_hat = random_bivariate(t, FL, rng);

        Fp i = FL.from_u64(5);  // a fixed row
        std::vector<Witness> ws;
        std::vector<Fp> xs;
        for (int k = 1; k <= t + 1; k++) {
            Fp y = FL.from_u64(uint64_t(k));
            ws.push_back(pc->create_witness(phi.column(y), phi_hat.column(y), i));
            xs.push_back(y);
        }
        for (int k = 1; k <= n; k++) {
            Fp y = FL.from_u64(uint64_t(k));
            Witness direct = pc->create_witness(phi.column(y), phi_hat.column(y), i);
            Witness interp = interpolate_witness(*pc, ws, xs, y);
            CHECK(direct.elem == interp.elem);
            CHECK(direct.hiding == interp.hiding);
            Commitment ck = pc->commit(phi.column(y), phi_hat.column(y));
            CHECK(pc->verify_eval(ck, i, phi.eval(i, y), interp));
        }
    }
}

TEST_CASE("backends agree on accept/reject across a shared corpus") {
    auto pa = make_backend(BackendKind::Pairing, 2, 37);
    auto dl = make_backend(BackendKind::DiscreteLog, 2, 37);
    CHECK(&pa->field() == &dl->field());
    Rng rng(8);
    for (int trial = 0; trial < 25; trial++) {
        Poly phi = random_poly(2, rng), aux = random_poly(2, rng);
        Commitment c1 = pa->commit(phi, aux), c2 = dl->commit(phi, aux);
        Fp x = FL.from_u64(1 + rng.below(9));
        Witness w1 = pa->create_witness(phi, aux, x), w2 = dl->create_witness(phi, aux, x);
        Fp claim = phi.eval(x);
        if (rng.below(2) == 0) claim += FL.one();  // half the corpus lies
        bool v1 = pa->verify_eval(c1, x, claim, w1);
        bool v2 = dl->verify_eval(c2, x, claim, w2);
        CHECK(v1 == v2);
        CHECK(v1 == (claim == phi.eval(x)));
    }
}
