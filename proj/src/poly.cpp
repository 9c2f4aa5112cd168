#include "avss/poly.hpp"

#include <algorithm>

namespace avss {

int Poly::degree() const {
    for (size_t i = c.size(); i-- > 0;)
        if (!c[i].is_zero()) return int(i);
    return -1;
}

Fp Poly::eval(const Fp& x) const {
    Fp acc = x.f->zero();
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

bool Poly::operator==(const Poly& o) const {
    size_t n = std::max(c.size(), o.c.size());
    for (size_t i = 0; i < n; i++) {
        bool az = i >= c.size() || c[i].is_zero();
        bool bz = i >= o.c.size() || o.c[i].is_zero();
        if (az != bz) return false;
        if (!az && !(c[i] == o.c[i])) return false;
    }
    return true;
}

static void check_distinct(std::span<const std::pair<Fp, Fp>> pts) {
    for (size_t i = 0; i < pts.size(); i++)
        for (size_t j = i + 1; j < pts.size(); j++)
            if (pts[i].first == pts[j].first) throw DuplicatePointError("interpolation: duplicate x coordinate");
}

Poly deflate(const Poly& p, const Fp& a, Fp* remainder) {
    const PrimeField* f = a.f;
    if (p.c.empty()) {
        if (remainder) *remainder = f->zero();
        return Poly{};
    }
    Poly q;
    q.c.assign(p.c.size() - 1, f->zero());
    Fp carry = f->zero();
    for (size_t i = p.c.size(); i-- > 0;) {
        Fp cur = p.c[i] + carry * a;
        if (i == 0) {
            if (remainder) *remainder = cur;
        } else {
            q.c[i - 1] = cur;
        }
        carry = cur;
    }
    return q;
}

Poly lagrange_interpolate(std::span<const std::pair<Fp, Fp>> pts, int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("lagrange_interpolate: negative degree bound");
    size_t need = size_t(degree_bound) + 1;
    if (pts.size() < need) throw std::invalid_argument("lagrange_interpolate: not enough points");
    check_distinct(pts);
    const PrimeField* f = pts[0].first.f;

    // Master product P(x) = prod (x - x_j) over the first degree_bound+1
    // points; each basis numerator is P deflated by one root.
    Poly master;
    master.c = {f->one()};
    for (size_t j = 0; j < need; j++) {
        Poly next;
        next.c.assign(master.c.size() + 1, f->zero());
        for (size_t i = 0; i < master.c.size(); i++) {
            next.c[i + 1] += master.c[i];
            next.c[i] -= master.c[i] * pts[j].first;
        }
        master = std::move(next);
    }

    std::vector<Fp> denoms(need);
    std::vector<Poly> numers(need);
    for (size_t j = 0; j < need; j++) {
        numers[j] = deflate(master, pts[j].first);
        denoms[j] = numers[j].eval(pts[j].first);
    }
    std::vector<Fp> dinv = batch_inverse(denoms);

    Poly out;
    out.c.assign(need, f->zero());
    for (size_t j = 0; j < need; j++) {
        Fp scale = pts[j].second * dinv[j];
        for (size_t i = 0; i < need; i++) out.c[i] += numers[j].c[i] * scale;
    }

    for (size_t j = need; j < pts.size(); j++)
        if (!(out.eval(pts[j].first) == pts[j].second))
            throw InconsistentPointError("lagrange_interpolate: extra point off the interpolant");
    return out;
}

std::vector<Fp> lagrange_coefficients(std::span<const Fp> xs, const Fp& target) {
    size_t n = xs.size();
    if (n == 0) throw std::invalid_argument("lagrange_coefficients: empty support");
    const PrimeField* f = target.f;
    for (size_t i = 0; i < n; i++)
        for (size_t j = i + 1; j < n; j++)
            if (xs[i] == xs[j]) throw DuplicatePointError("lagrange_coefficients: duplicate x coordinate");

    // Target on the support: the indicator vector.
    for (size_t j = 0; j < n; j++) {
        if (xs[j] == target) {
            std::vector<Fp> out(n, f->zero());
            out[j] = f->one();
            return out;
        }
    }

    // prefix[j] = prod_{m<j} (target - x_m), suffix likewise from the right.
    std::vector<Fp> prefix(n + 1), suffix(n + 1);
    prefix[0] = f->one();
    suffix[n] = f->one();
    for (size_t j = 0; j < n; j++) prefix[j + 1] = prefix[j] * (target - xs[j]);
    for (size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * (target - xs[j]);

    std::vector<Fp> denoms(n);
    for (size_t j = 0; j < n; j++) {
        Fp d = f->one();
        for (size_t m = 0; m < n; m++)
            if (m != j) d *= xs[j] - xs[m];
        denoms[j] = d;
    }
    std::vector<Fp> dinv = batch_inverse(denoms);

    std::vector<Fp> out(n);
    for (size_t j = 0; j < n; j++) out[j] = prefix[j] * suffix[j + 1] * dinv[j];
    return out;
}

namespace {

// Row-reduce the augmented system in place. Returns false when inconsistent;
// otherwise writes a particular solution (free variables zero).
bool solve_linear(std::vector<std::vector<Fp>>& rows, size_t nvars, std::vector<Fp>& sol, const PrimeField* f) {
    size_t m = rows.size();
    std::vector<int> pivot_of_col(nvars, -1);
    size_t r = 0;
    for (size_t col = 0; col < nvars && r < m; col++) {
        size_t piv = m;
        for (size_t i = r; i < m; i++)
            if (!rows[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv == m) continue;
        std::swap(rows[r], rows[piv]);
        Fp inv = rows[r][col].inv();
        for (size_t j = col; j <= nvars; j++) rows[r][j] *= inv;
        for (size_t i = 0; i < m; i++) {
            if (i == r || rows[i][col].is_zero()) continue;
            Fp factor = rows[i][col];
            for (size_t j = col; j <= nvars; j++) rows[i][j] -= factor * rows[r][j];
        }
        pivot_of_col[col] = int(r);
        r++;
    }
    for (size_t i = r; i < m; i++)
        if (!rows[i][nvars].is_zero()) return false;
    sol.assign(nvars, f->zero());
    for (size_t col = 0; col < nvars; col++)
        if (pivot_of_col[col] >= 0) sol[col] = rows[size_t(pivot_of_col[col])][nvars];
    return true;
}

// Exact polynomial division; nullopt when the remainder is nonzero.
std::optional<Poly> divide_exact(const Poly& num, const Poly& den, const PrimeField* f) {
    int dn = num.degree(), dd = den.degree();
    if (dd < 0) return std::nullopt;
    if (dn < 0) return Poly{};
    if (dn < dd) return std::nullopt;
    std::vector<Fp> rem(num.c.begin(), num.c.begin() + dn + 1);
    Fp lead_inv = den.c[size_t(dd)].inv();
    Poly q;
    q.c.assign(size_t(dn - dd) + 1, f->zero());
    for (int i = dn; i >= dd; i--) {
        Fp coef = rem[size_t(i)] * lead_inv;
        q.c[size_t(i - dd)] = coef;
        if (coef.is_zero()) continue;
        for (int j = 0; j <= dd; j++) rem[size_t(i - dd + j)] -= coef * den.c[size_t(j)];
    }
    for (const Fp& x : rem)
        if (!x.is_zero()) return std::nullopt;
    return q;
}

}  // namespace

namespace {

int agreement_count(const Poly& phi, std::span<const std::pair<Fp, Fp>> pts) {
    int a = 0;
    for (const auto& [x, y] : pts)
        if (phi.eval(x) == y) a++;
    return a;
}

// Every polynomial of degree <= d agreeing with >= quorum points shows up
// as the interpolant of some (d+1)-subset of its agreeing points, so
// enumerating subsets finds them all. Exponential, but only reached for
// loose parameters (see robust_interpolate below).
std::vector<Poly> quorum_candidates_exhaustive(std::span<const std::pair<Fp, Fp>> pts, int d, int quorum) {
    int m = int(pts.size());
    std::vector<Poly> found;
    std::vector<int> idx(size_t(d) + 1);
    for (int i = 0; i <= d; i++) idx[size_t(i)] = i;
    for (;;) {
        PointList sub;
        for (int i : idx) sub.push_back(pts[size_t(i)]);
        Poly phi = lagrange_interpolate(sub, d);
        if (agreement_count(phi, pts) >= quorum) {
            bool known = false;
            for (const Poly& c : found)
                if (c == phi) known = true;
            if (!known) found.push_back(phi);
        }
        int i = d;
        while (i >= 0 && idx[size_t(i)] == m - (d + 1) + i) i--;
        if (i < 0) break;
        idx[size_t(i)]++;
        for (int j = i + 1; j <= d; j++) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
    }
    return found;
}

}  // namespace

std::optional<Poly> robust_interpolate(std::span<const std::pair<Fp, Fp>> pts, int degree_bound, int quorum) {
    if (degree_bound < 0) throw std::invalid_argument("robust_interpolate: negative degree bound");
    if (quorum <= degree_bound) throw std::invalid_argument("robust_interpolate: quorum must exceed degree bound");
    check_distinct(pts);
    int m = int(pts.size());
    if (m < quorum) return std::nullopt;
    const PrimeField* f = pts[0].first.f;
    int d = degree_bound;

    // Two distinct degree-<=d polynomials overlap in at most d points, so
    // with 2*quorum - d > m a second quorum-reaching polynomial cannot
    // exist and Berlekamp-Welch below is guaranteed to find the one that
    // does (its error count m - quorum fits the decoding radius). The
    // protocol always sits in this regime (quorum 2t+1, degree t, m <= n).
    // Looser parameters fall back to exhaustive search, the only way to
    // actually witness an ambiguous quorum and fail loudly on it.
    if (2 * quorum - d <= m) {
        auto found = quorum_candidates_exhaustive(pts, d, quorum);
        if (found.size() > 1)
            throw QuorumAmbiguityError("robust_interpolate: multiple polynomials reach the quorum");
        if (found.empty()) return std::nullopt;
        return found[0];
    }

    int e_max = std::min((m - d - 1) / 2, m - quorum);

    // Powers of each x up to the largest needed exponent.
    int max_pow = d + e_max;
    std::vector<std::vector<Fp>> xp;
    xp.resize(size_t(m));
    for (int i = 0; i < m; i++) {
        xp[size_t(i)].resize(size_t(max_pow) + 1);
        Fp acc = f->one();
        for (int k = 0; k <= max_pow; k++) {
            xp[size_t(i)][size_t(k)] = acc;
            acc *= pts[size_t(i)].first;
        }
    }

    for (int e = 0; e <= e_max; e++) {
        // Berlekamp-Welch: find Q (deg <= d+e) and monic E (deg e) with
        // Q(x_i) = y_i * E(x_i) at every point. Unknowns are the d+e+1
        // coefficients of Q and the e low coefficients of E.
        size_t nq = size_t(d + e) + 1;
        size_t nvars = nq + size_t(e);
        std::vector<std::vector<Fp>> rows;
        rows.resize(size_t(m));
        for (int i = 0; i < m; i++) {
            auto& row = rows[size_t(i)];
            row.assign(nvars + 1, f->zero());
            const Fp& y = pts[size_t(i)].second;
            for (size_t v = 0; v < nq; v++) row[v] = xp[size_t(i)][v];
            for (int u = 0; u < e; u++) row[nq + size_t(u)] = -(y * xp[size_t(i)][size_t(u)]);
            row[nvars] = y * xp[size_t(i)][size_t(e)];
        }
        std::vector<Fp> sol;
        if (!solve_linear(rows, nvars, sol, f)) continue;

        Poly Q, E;
        Q.c.assign(sol.begin(), sol.begin() + long(nq));
        E.c.assign(size_t(e) + 1, f->zero());
        for (int u = 0; u < e; u++) E.c[size_t(u)] = sol[nq + size_t(u)];
        E.c[size_t(e)] = f->one();

        auto phi = divide_exact(Q, E, f);
        if (!phi || phi->degree() > d) continue;
        if (agreement_count(*phi, pts) >= quorum) return phi;
    }
    return std::nullopt;
}

Fp BivarPoly::eval(const Fp& x, const Fp& y) const {
    return row(x).eval(y);
}

Poly BivarPoly::row(const Fp& x) const {
    const PrimeField* f = x.f;
    size_t w = size_t(t) + 1;
    Poly out;
    out.c.assign(w, f->zero());
    // Horner in x for each y-coefficient.
    for (size_t b = 0; b < w; b++) {
        Fp acc = f->zero();
        for (size_t a = w; a-- > 0;) acc = acc * x + m[a * w + b];
        out.c[b] = acc;
    }
    return out;
}

Poly BivarPoly::column(const Fp& y) const {
    const PrimeField* f = y.f;
    size_t w = size_t(t) + 1;
    Poly out;
    out.c.assign(w, f->zero());
    for (size_t a = 0; a < w; a++) {
        Fp acc = f->zero();
        for (size_t b = w; b-- > 0;) acc = acc * y + m[a * w + b];
        out.c[a] = acc;
    }
    return out;
}

BivarPoly sample_bivariate(std::span<const Fp> secrets, int t, const PrimeField& field, Rng& rng) {
    if (t < 1) throw std::invalid_argument("sample_bivariate: t must be at least 1");
    size_t w = size_t(t) + 1;
    if (secrets.size() > w) throw std::invalid_argument("sample_bivariate: too many secrets for degree t");

    // Row zero is pinned by phi(0,k) = s_k at k = 1..secrets.size(); any
    // remaining slots up to t+1 take fresh random values so the row stays
    // uniform subject to the constraints.
    PointList pts;
    for (size_t k = 0; k < secrets.size(); k++) pts.emplace_back(field.from_u64(k + 1), secrets[k]);
    for (size_t k = secrets.size(); k < w; k++) pts.emplace_back(field.from_u64(k + 1), field.sample(rng));
    Poly row0 = lagrange_interpolate(pts, t);

    BivarPoly phi;
    phi.t = t;
    phi.m.assign(w * w, field.zero());
    for (size_t b = 0; b < w; b++) phi.m[b] = b < row0.c.size() ? row0.c[b] : field.zero();
    for (size_t a = 1; a < w; a++)
        for (size_t b = 0; b < w; b++) phi.m[a * w + b] = field.sample(rng);
    return phi;
}

BivarPoly random_bivariate(int t, const PrimeField& field, Rng& rng) {
    if (t < 1) throw std::invalid_argument("random_bivariate: t must be at least 1");
    size_t w = size_t(t) + 1;
    BivarPoly phi;
    phi.t = t;
    phi.m.assign(w * w, field.zero());
    for (size_t a = 0; a < w; a++)
        for (size_t b = 0; b < w; b++) phi.m[a * w + b] = field.sample(rng);
    return phi;
}

}  // namespace avss
