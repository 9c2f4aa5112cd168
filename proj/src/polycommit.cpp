#include "avss/polycommit.hpp"

#include <cassert>

#include "avss/hashes.hpp"

namespace avss {

std::string_view backend_name(BackendKind k) {
    return k == BackendKind::Pairing ? "pairing" : "dl";
}

PolyCommitBackend::PolyCommitBackend(int t) : t_(t) {
    if (t < 1) throw DegreeError("polycommit: t must be at least 1");
}

bool PolyCommitBackend::parse_commitment(std::span<const uint8_t> b, Commitment& out) const {
    if (b.size() != commitment_size() || !validate_commitment(b)) return false;
    out.data.assign(b.begin(), b.end());
    return true;
}

bool PolyCommitBackend::parse_witness(std::span<const uint8_t> b, Witness& out) const {
    if (b.size() != witness_size()) return false;
    size_t es = witness_elem_size();
    if (!validate_witness_elem(b.subspan(0, es))) return false;
    auto hiding = field().from_bytes_le(b.subspan(es, 32));
    if (!hiding) return false;
    out.elem.assign(b.begin(), b.begin() + long(es));
    out.hiding = *hiding;
    return true;
}

Bytes PolyCommitBackend::serialize_witness(const Witness& w) const {
    assert(w.elem.size() == witness_elem_size());
    Bytes out = w.elem;
    auto h = w.hiding.to_bytes_le();
    out.insert(out.end(), h.begin(), h.end());
    return out;
}

namespace {

void check_combine_args(size_t items, size_t coeffs) {
    if (items == 0 || items != coeffs) throw std::invalid_argument("polycommit combine: size mismatch");
}

Fp poly_coeff(const Poly& p, size_t j, const PrimeField& f) {
    return j < p.c.size() ? p.c[j] : f.zero();
}

// PolyCommitPed over the simulated pairing group: C = g^{phi(alpha)} *
// h^{aux(alpha)} built from published powers of alpha, witnesses commit to
// the quotient (phi - phi(i))/(x - i) and its aux companion, and
// verification is the two-pairing product check.
class PairingBackend final : public PolyCommitBackend {
public:
    PairingBackend(int t, uint64_t seed) : PolyCommitBackend(t) {
        Rng rng(seed);
        Fp alpha = field().sample(rng);
        g_ = grp_.generator();
        h_ = grp_.derive("polycommit-ped-h");
        Fp ap = field().one();
        for (int j = 0; j <= t; j++) {
            gpow_.push_back(grp_.pow(g_, ap));
            hpow_.push_back(grp_.pow(h_, ap));
            ap *= alpha;
        }
    }

    BackendKind kind() const override { return BackendKind::Pairing; }
    const GroupOps& key_group() const override { return grp_; }
    size_t commitment_size() const override { return grp_.element_size(); }
    size_t witness_elem_size() const override { return grp_.element_size(); }

    Bytes params_fingerprint() const override {
        Sha256 h;
        h.update_byte(0x40).update_u16(uint16_t(t_));
        for (const Bytes& e : gpow_) h.update(e);
        for (const Bytes& e : hpow_) h.update(e);
        auto d = h.final();
        return Bytes(d.begin(), d.end());
    }

    Commitment commit(const Poly& phi, const Poly& aux) const override {
        return Commitment{msm(phi, aux)};
    }

    Witness create_witness(const Poly& phi, const Poly& aux, const Fp& i) const override {
        check_degree(phi, aux);
        Poly psi = deflate(phi, i);
        Fp hiding;
        Poly psi_hat = deflate(aux, i, &hiding);
        return Witness{msm_unchecked(psi, psi_hat), hiding};
    }

    bool verify_eval(const Commitment& c, const Fp& i, const Fp& value, const Witness& w) const override {
        if (c.data.size() != commitment_size() || !grp_.validate(c.data)) return false;
        if (w.elem.size() != witness_elem_size() || !grp_.validate(w.elem) || !w.hiding.f) return false;
        // e(C, g) == e(w, g^{alpha - i}) * e(g^y h^{y_hat}, g)
        Bytes lhs = grp_.pair(c.data, g_);
        Bytes shifted = grp_.mul(gpow_[1], grp_.pow(g_, -i));
        Bytes opening = grp_.mul(grp_.pow(g_, value), grp_.pow(h_, w.hiding));
        Bytes rhs = grp_.gt_mul(grp_.pair(w.elem, shifted), grp_.pair(opening, g_));
        return lhs == rhs;
    }

    Commitment combine_commitments(std::span<const Commitment> cs, std::span<const Fp> coeffs) const override {
        check_combine_args(cs.size(), coeffs.size());
        Bytes acc = grp_.identity();
        for (size_t j = 0; j < cs.size(); j++) acc = grp_.mul(acc, grp_.pow(cs[j].data, coeffs[j]));
        return Commitment{acc};
    }

    Witness combine_witnesses(std::span<const Witness> ws, std::span<const Fp> coeffs) const override {
        check_combine_args(ws.size(), coeffs.size());
        Bytes acc = grp_.identity();
        Fp hiding = field().zero();
        for (size_t j = 0; j < ws.size(); j++) {
            acc = grp_.mul(acc, grp_.pow(ws[j].elem, coeffs[j]));
            hiding += coeffs[j] * ws[j].hiding;
        }
        return Witness{acc, hiding};
    }

protected:
    bool validate_commitment(std::span<const uint8_t> b) const override { return grp_.validate(b); }
    bool validate_witness_elem(std::span<const uint8_t> b) const override { return grp_.validate(b); }

private:
    void check_degree(const Poly& phi, const Poly& aux) const {
        if (phi.degree() > t_ || aux.degree() > t_) throw DegreeError("polycommit: polynomial degree exceeds t");
    }

    Bytes msm(const Poly& phi, const Poly& aux) const {
        check_degree(phi, aux);
        return msm_unchecked(phi, aux);
    }

    Bytes msm_unchecked(const Poly& phi, const Poly& aux) const {
        Bytes acc = grp_.identity();
        for (int j = 0; j <= t_; j++) {
            acc = grp_.mul(acc, grp_.pow(gpow_[size_t(j)], poly_coeff(phi, size_t(j), field())));
            acc = grp_.mul(acc, grp_.pow(hpow_[size_t(j)], poly_coeff(aux, size_t(j), field())));
        }
        return acc;
    }

    ExpGroup grp_;
    Bytes g_, h_;
    std::vector<Bytes> gpow_, hpow_;
};

// Pedersen coefficient-vector commitments over ristretto255: one hiding
// commitment per coefficient, Feldman-style verification of evaluations.
// There is no succinct witness element; the witness is the companion
// polynomial's evaluation alone, which is why it is 32 bytes on the wire.
class DlBackend final : public PolyCommitBackend {
public:
    DlBackend(int t, uint64_t /*seed: setup is deterministic, no trapdoor*/) : PolyCommitBackend(t) {
        g_ = grp_.generator();
        h_ = grp_.derive("pedersen-vector-h");
    }

    BackendKind kind() const override { return BackendKind::DiscreteLog; }
    const GroupOps& key_group() const override { return grp_; }
    size_t commitment_size() const override { return grp_.element_size() * size_t(t_ + 1); }
    size_t witness_elem_size() const override { return 0; }

    Bytes params_fingerprint() const override {
        Sha256 h;
        h.update_byte(0x41).update_u16(uint16_t(t_)).update(g_).update(h_);
        auto d = h.final();
        return Bytes(d.begin(), d.end());
    }

    Commitment commit(const Poly& phi, const Poly& aux) const override {
        if (phi.degree() > t_ || aux.degree() > t_) throw DegreeError("polycommit: polynomial degree exceeds t");
        Bytes out;
        out.reserve(commitment_size());
        for (int j = 0; j <= t_; j++) {
            Bytes cj = grp_.mul(grp_.pow(g_, poly_coeff(phi, size_t(j), field())),
                                grp_.pow(h_, poly_coeff(aux, size_t(j), field())));
            out.insert(out.end(), cj.begin(), cj.end());
        }
        return Commitment{std::move(out)};
    }

    Witness create_witness(const Poly& phi, const Poly& aux, const Fp& i) const override {
        if (phi.degree() > t_ || aux.degree() > t_) throw DegreeError("polycommit: polynomial degree exceeds t");
        return Witness{{}, aux.eval(i)};
    }

    bool verify_eval(const Commitment& c, const Fp& i, const Fp& value, const Witness& w) const override {
        if (c.data.size() != commitment_size() || !w.elem.empty() || !w.hiding.f) return false;
        size_t es = grp_.element_size();
        for (int j = 0; j <= t_; j++)
            if (!grp_.validate(std::span(c.data).subspan(size_t(j) * es, es))) return false;
        Bytes lhs = grp_.mul(grp_.pow(g_, value), grp_.pow(h_, w.hiding));
        Bytes rhs = grp_.identity();
        Fp ip = field().one();
        for (int j = 0; j <= t_; j++) {
            rhs = grp_.mul(rhs, grp_.pow(std::span(c.data).subspan(size_t(j) * es, es), ip));
            ip *= i;
        }
        return lhs == rhs;
    }

    Commitment combine_commitments(std::span<const Commitment> cs, std::span<const Fp> coeffs) const override {
        check_combine_args(cs.size(), coeffs.size());
        size_t es = grp_.element_size();
        Bytes out;
        out.reserve(commitment_size());
        for (int j = 0; j <= t_; j++) {
            Bytes acc = grp_.identity();
            for (size_t m = 0; m < cs.size(); m++) {
                if (cs[m].data.size() != commitment_size())
                    throw std::invalid_argument("polycommit combine: malformed commitment");
                acc = grp_.mul(acc, grp_.pow(std::span(cs[m].data).subspan(size_t(j) * es, es), coeffs[m]));
            }
            out.insert(out.end(), acc.begin(), acc.end());
        }
        return Commitment{std::move(out)};
    }

    Witness combine_witnesses(std::span<const Witness> ws, std::span<const Fp> coeffs) const override {
        check_combine_args(ws.size(), coeffs.size());
        Fp hiding = field().zero();
        for (size_t j = 0; j < ws.size(); j++) {
            if (!ws[j].elem.empty()) throw std::invalid_argument("polycommit combine: unexpected witness element");
            hiding += coeffs[j] * ws[j].hiding;
        }
        return Witness{{}, hiding};
    }

protected:
    bool validate_commitment(std::span<const uint8_t> b) const override {
        size_t es = grp_.element_size();
        for (int j = 0; j <= t_; j++)
            if (!grp_.validate(b.subspan(size_t(j) * es, es))) return false;
        return true;
    }
    bool validate_witness_elem(std::span<const uint8_t> b) const override { return b.empty(); }

private:
    RistrettoGroup grp_;
    Bytes g_, h_;
};

}  // namespace

std::unique_ptr<PolyCommitBackend> make_backend(BackendKind kind, int t, uint64_t setup_seed) {
    if (kind == BackendKind::Pairing) return std::make_unique<PairingBackend>(t, setup_seed);
    return std::make_unique<DlBackend>(t, setup_seed);
}

Commitment interpolate_commitment(const PolyCommitBackend& pc, std::span<const Commitment> cs,
                                  std::span<const Fp> xs, const Fp& target) {
    return pc.combine_commitments(cs, lagrange_coefficients(xs, target));
}

Witness interpolate_witness(const PolyCommitBackend& pc, std::span<const Witness> ws, std::span<const Fp> xs,
                            const Fp& target) {
    return pc.combine_witnesses(ws, lagrange_coefficients(xs, target));
}

}  // namespace avss
