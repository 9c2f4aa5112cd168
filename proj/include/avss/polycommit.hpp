#pragma once

#include <memory>
#include <span>
#include <string_view>

#include "avss/group.hpp"
#include "avss/poly.hpp"

namespace avss {

struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class BackendKind { Pairing, DiscreteLog };

std::string_view backend_name(BackendKind k);

struct Commitment {
    Bytes data;
    bool operator==(const Commitment& o) const { return data == o.data; }
};

// Evaluation witness. elem is the backend-specific group part (empty for the
// discrete-log backend); hiding is the companion polynomial's evaluation,
// present in both backends. Serialized form is elem || hiding (32 bytes).
struct Witness {
    Bytes elem;
    Fp hiding;
};

// Hiding polynomial commitments with evaluation proofs and an additive
// homomorphism: a linear combination of commitments commits to the same
// linear combination of polynomials, and likewise for witnesses. The
// protocol leans on the homomorphism to interpolate commitments/witnesses
// for columns the dealer never shipped.
class PolyCommitBackend {
public:
    virtual ~PolyCommitBackend() = default;

    virtual BackendKind kind() const = 0;
    std::string_view name() const { return backend_name(kind()); }
    int max_degree() const { return t_; }
    const PrimeField& field() const { return PrimeField::ristretto_order(); }
    // Group in which party encryption keypairs live.
    virtual const GroupOps& key_group() const = 0;

    virtual size_t commitment_size() const = 0;
    virtual size_t witness_elem_size() const = 0;
    size_t witness_size() const { return witness_elem_size() + 32; }
    // Digest of the public parameters; setup with equal seeds must agree.
    virtual Bytes params_fingerprint() const = 0;

    // Commit to phi with companion polynomial aux (the caller's randomness;
    // for bivariate sharing the aux columns must come from one bivariate
    // polynomial so witnesses interpolate). Throws DegreeError above t.
    virtual Commitment commit(const Poly& phi, const Poly& aux) const = 0;
    virtual Witness create_witness(const Poly& phi, const Poly& aux, const Fp& i) const = 0;
    // Total: malformed bytes and wrong-size inputs return false.
    virtual bool verify_eval(const Commitment& c, const Fp& i, const Fp& value, const Witness& w) const = 0;

    // sum_j coeffs[j] * items[j] under the homomorphism.
    virtual Commitment combine_commitments(std::span<const Commitment> cs, std::span<const Fp> coeffs) const = 0;
    virtual Witness combine_witnesses(std::span<const Witness> ws, std::span<const Fp> coeffs) const = 0;

    bool parse_commitment(std::span<const uint8_t> b, Commitment& out) const;
    bool parse_witness(std::span<const uint8_t> b, Witness& out) const;
    Bytes serialize_witness(const Witness& w) const;

protected:
    explicit PolyCommitBackend(int t);
    virtual bool validate_commitment(std::span<const uint8_t> b) const = 0;
    virtual bool validate_witness_elem(std::span<const uint8_t> b) const = 0;
    int t_;
};

// Deterministic setup from seed; throws DegreeError for t < 1.
std::unique_ptr<PolyCommitBackend> make_backend(BackendKind kind, int t, uint64_t setup_seed);

// Degree-|xs|-1 interpolation of commitments (resp. witnesses) given at
// distinct columns xs, evaluated at target.
Commitment interpolate_commitment(const PolyCommitBackend& pc, std::span<const Commitment> cs,
                                  std::span<const Fp> xs, const Fp& target);
Witness interpolate_witness(const PolyCommitBackend& pc, std::span<const Witness> ws, std::span<const Fp> xs,
                            const Fp& target);

}  // namespace avss
