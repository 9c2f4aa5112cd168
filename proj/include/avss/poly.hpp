#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "avss/field.hpp"

namespace avss {

struct DuplicatePointError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// More than degree+1 points were supplied and the extras do not lie on the
// interpolated polynomial.
struct InconsistentPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Robust interpolation found two distinct polynomials that each agree with a
// quorum of the supplied points. That can only happen if the caller's quorum
// parameter is too small for the error budget; fail loudly rather than pick.
struct QuorumAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense univariate polynomial, coefficients lowest-degree first. Trailing
// zeros are permitted; degree() reports the effective degree (-1 for zero).
struct Poly {
    std::vector<Fp> c;

    static Poly zero() { return Poly{}; }
    static Poly constant(const Fp& v) { return Poly{{v}}; }

    int degree() const;
    bool is_zero() const { return degree() < 0; }
    Fp eval(const Fp& x) const;  // Horner
    bool operator==(const Poly& o) const;
};

using PointList = std::vector<std::pair<Fp, Fp>>;

// Unique polynomial of degree <= degree_bound through the given points.
// Throws DuplicatePointError on repeated x, std::invalid_argument if fewer
// than degree_bound+1 points, InconsistentPointError if extra points
// disagree with the interpolant.
Poly lagrange_interpolate(std::span<const std::pair<Fp, Fp>> pts, int degree_bound);

// Coefficients lambda_j with f(target) = sum_j lambda_j * f(xs[j]) for every
// polynomial f of degree < xs.size(). Throws DuplicatePointError.
std::vector<Fp> lagrange_coefficients(std::span<const Fp> xs, const Fp& target);

// Quotient of p by the linear factor (x - a); the remainder p(a) is written
// to *remainder when requested. Exact division iff p(a) == 0.
Poly deflate(const Poly& p, const Fp& a, Fp* remainder = nullptr);

// Degree-bound interpolation tolerant of wrong values: returns the unique
// polynomial of degree <= degree_bound that agrees with at least `quorum` of
// the points, or nullopt if no such polynomial is recoverable yet
// (Berlekamp-Welch, scanning candidate error counts 0..(m-d-1)/2). Throws
// QuorumAmbiguityError if two distinct polynomials reach the quorum and
// DuplicatePointError on repeated x. Requires quorum > degree_bound.
std::optional<Poly> robust_interpolate(std::span<const std::pair<Fp, Fp>> pts, int degree_bound, int quorum);

// Bivariate polynomial of degree at most t in each variable. Coefficient of
// x^a y^b lives at m[a * (t+1) + b]. x indexes parties (rows), y indexes
// columns; shared secrets sit on row zero: phi(0, k).
struct BivarPoly {
    int t = 0;
    std::vector<Fp> m;

    Fp eval(const Fp& x, const Fp& y) const;
    Poly row(const Fp& x) const;     // phi(x, .) as a polynomial in y
    Poly column(const Fp& y) const;  // phi(., y) as a polynomial in x
};

// Uniformly random phi of degree (t,t) subject to phi(0, k) = secrets[k-1]
// for k = 1..secrets.size(). Requires secrets.size() <= t+1.
BivarPoly sample_bivariate(std::span<const Fp> secrets, int t, const PrimeField& field, Rng& rng);

// Fully random phi of degree (t,t); the hiding companion polynomial.
BivarPoly random_bivariate(int t, const PrimeField& field, Rng& rng);

}  // namespace avss
