/**
 * The projective-line model: truncated-Laurent Čech complexes for the
 * two-object fiber-product category over the standard affine cover.
 *
 * Objects are twists 𝗔(j) = (polynomials in z, polynomials in z⁻¹, gluing by
 * multiplication with z^{−j}).  The hom complex between twists j₁ and j₂ has
 * degree 0 the pair of polynomial spaces and degree 1 a Laurent window, with
 * differential (μ, ν) ↦ μ(z) − z^{j₂−j₁}·ν(z⁻¹).  The degree-1 window is
 * shifted by the twist so that no image term is ever clipped; with that
 * choice kernel and cokernel agree with the untruncated model for every
 * N ≥ |j₂−j₁|.
 */

#ifndef COHESIVE_CECH_P1_HPP
#define COHESIVE_CECH_P1_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "algebra.hpp"  // ValidationReport
#include "complex.hpp"

namespace cohesive {

/// A truncated Laurent coefficient vector over exponents −N..N.
struct LaurentWindow {
    Field field;
    int N = 0;
    MatrixK coeffs;  // (2N+1) x 1, row e+N holds the z^e coefficient

    LaurentWindow(const Field& f, int n) : field(f), N(n), coeffs(f, 2 * n + 1, 1) {
        if (n <= 0) throw std::invalid_argument("laurent_window: N must be positive");
    }
    std::size_t size() const { return static_cast<std::size_t>(2 * N + 1); }
    Scalar& at(int e) { return coeffs.at(static_cast<std::size_t>(e + N), 0); }
    const Scalar& at(int e) const { return coeffs.at(static_cast<std::size_t>(e + N), 0); }
};

struct TwistedCechComplex {
    Field field;
    int j1 = 0, j2 = 0, N = 0;
    int lo_exp = 0;           // lowest exponent of the degree-1 space: twist − N
    LaurentWindow nominal;    // the symmetric window −N..N of the model
    FiniteComplex complex;    // degree 0: μ then ν coefficients; degree 1: window

    int twist() const { return j2 - j1; }
    std::size_t mu_index(int i) const { return static_cast<std::size_t>(i); }
    std::size_t nu_index(int i) const { return static_cast<std::size_t>(N + 1 + i); }
    std::size_t window_index(int e) const { return static_cast<std::size_t>(e - lo_exp); }
    int hi_exp() const { return N; }
};

inline int q_minimum_truncation(int j1, int j2) { return std::max(std::abs(j2 - j1), 1); }

/// Assemble the two-term hom complex between the twists j₁ and j₂.
inline TwistedCechComplex build_q_complex(int j1, int j2, int N, const Field& f) {
    int min_n = q_minimum_truncation(j1, j2);
    if (N < min_n)
        throw std::invalid_argument("build_q_complex: truncation " + std::to_string(N) +
                                    " too small; the minimum for twists (" + std::to_string(j1) +
                                    ", " + std::to_string(j2) + ") is " + std::to_string(min_n));
    TwistedCechComplex out{f, j1, j2, N, (j2 - j1) - N, LaurentWindow(f, N), FiniteComplex()};
    std::size_t dim0 = static_cast<std::size_t>(2 * N + 2);
    std::size_t dim1 = static_cast<std::size_t>(out.hi_exp() - out.lo_exp + 1);
    out.complex = FiniteComplex(f, 0, {dim0, dim1});
    MatrixK d(f, dim1, dim0);
    int t = out.twist();
    for (int i = 0; i <= N; ++i) {
        d.at(out.window_index(i), out.mu_index(i)) = Scalar::one(f);       // μ: +z^i
        d.at(out.window_index(t - i), out.nu_index(i)) = Scalar(f, -1);    // ν: −z^{t−i}
    }
    out.complex.set_differential(0, d);
    return out;
}

struct QCohomology {
    std::size_t h0 = 0, h1 = 0;
    std::vector<int> h0_exponents;  // z-exponents of kernel generators (μ side)
    std::vector<int> h1_exponents;  // Laurent exponents of cokernel generators
};

inline std::string monomial_name(int e) { return "z^" + std::to_string(e); }

/// Dimensions and monomial generators of H⁰ (kernel) and H¹ (cokernel).
inline QCohomology q_cohomology(const TwistedCechComplex& c) {
    QCohomology out;
    const Field& f = c.field;
    MatrixK d = c.complex.differential(0);
    MatrixK ker = d.kernel_basis();
    out.h0 = ker.cols();
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        // leading μ-side monomial of the kernel vector
        for (int i = 0; i <= c.N; ++i)
            if (!ker.at(c.mu_index(i), j).is_zero()) {
                out.h0_exponents.push_back(i);
                break;
            }
    }
    std::sort(out.h0_exponents.begin(), out.h0_exponents.end());
    MatrixK span = d.image_basis();
    for (int e = c.lo_exp; e <= c.hi_exp(); ++e) {
        MatrixK v(f, c.complex.dim(1), 1);
        v.at(c.window_index(e), 0) = Scalar::one(f);
        if (span.cols() > 0 && span.solve(v)) continue;
        if (span.cols() == 0 && v.is_zero()) continue;
        out.h1_exponents.push_back(e);
        span = span.augment(v).image_basis();
    }
    out.h1 = out.h1_exponents.size();
    return out;
}

/// True iff dimensions and generator classes agree between N and N+1.
inline bool stabilization_check(int j1, int j2, int N, const Field& f) {
    QCohomology a = q_cohomology(build_q_complex(j1, j2, N, f));
    QCohomology b = q_cohomology(build_q_complex(j1, j2, N + 1, f));
    return a.h0 == b.h0 && a.h1 == b.h1 && a.h0_exponents == b.h0_exponents &&
           a.h1_exponents == b.h1_exponents;
}

/// The three-complex sequence for the model pair: the window part (shifted
/// glue slot) includes into the hom complex, which projects onto the pair of
/// polynomial parts.  Verifies degreewise short exactness and exactness of
/// the induced long sequence at every spot of the degree window [lo, hi].
inline ValidationReport p1_les_check(int j1, int j2, int N, const Field& f, int lo = -3,
                                     int hi = 3) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string witness) {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    };
    TwistedCechComplex q = build_q_complex(j1, j2, N, f);
    FiniteComplex sub(f, 1, {q.complex.dim(1)});          // the glue slot, degree 1
    FiniteComplex pair(f, 0, {q.complex.dim(0)});         // μ ⊕ ν, degree 0
    ChainMap inc{&sub, &q.complex, {}};
    inc.maps.emplace(1, MatrixK::identity(f, q.complex.dim(1)));
    ChainMap proj{&q.complex, &pair, {}};
    proj.maps.emplace(0, MatrixK::identity(f, q.complex.dim(0)));
    add("inclusion-chain-map", inc.commutes(), "");
    add("projection-chain-map", proj.commutes(), "");
    {
        bool pass = true;
        for (int t = 0; t <= 1; ++t)
            if (sub.dim(t) + pair.dim(t) != q.complex.dim(t)) pass = false;
        add("degreewise-short-exact", pass, "dimension mismatch");
    }

    Cohomology hs(sub), hq(q.complex), hp(pair);
    // induced maps and the connecting map δ: H⁰(pair) → H¹(sub), which lifts
    // a pair through the identity and applies the full differential
    std::map<int, MatrixK> im, pm, dm;
    for (int t = lo; t <= hi; ++t) {
        MatrixK i_t(f, hq.dim(t), hs.dim(t));
        for (std::size_t cidx = 0; cidx < hs.dim(t); ++cidx) {
            MatrixK rep_v = hs.space(t)->representatives.column(cidx);
            MatrixK cls = hq.class_of(t, inc.map(t) * rep_v);
            for (std::size_t r = 0; r < cls.rows(); ++r) i_t.at(r, cidx) = cls.at(r, 0);
        }
        im.emplace(t, std::move(i_t));
        MatrixK p_t(f, hp.dim(t), hq.dim(t));
        for (std::size_t cidx = 0; cidx < hq.dim(t); ++cidx) {
            MatrixK rep_v = hq.space(t)->representatives.column(cidx);
            MatrixK cls = hp.class_of(t, proj.map(t) * rep_v);
            for (std::size_t r = 0; r < cls.rows(); ++r) p_t.at(r, cidx) = cls.at(r, 0);
        }
        pm.emplace(t, std::move(p_t));
        MatrixK d_t(f, hs.dim(t + 1), hp.dim(t));
        for (std::size_t cidx = 0; cidx < hp.dim(t); ++cidx) {
            MatrixK lift = hp.space(t)->representatives.column(cidx);  // pair = quotient coords
            MatrixK img = q.complex.differential(t) * lift;            // lands in the sub part
            MatrixK cls = hs.class_of(t + 1, img);
            for (std::size_t r = 0; r < cls.rows(); ++r) d_t.at(r, cidx) = cls.at(r, 0);
        }
        dm.emplace(t, std::move(d_t));
    }
    auto exact_at = [&](const std::string& name, const MatrixK& into, const MatrixK& out_of,
                        std::size_t middle) {
        bool zero = (out_of * into).is_zero();
        bool ranks = into.rank() + out_of.rank() == middle;
        add(name, zero && ranks,
            zero ? "rank defect" : "composite not zero");
    };
    for (int t = lo; t <= hi; ++t) {
        exact_at("exact-at-sub-" + std::to_string(t), t > lo ? dm.at(t - 1) : MatrixK(f, hs.dim(t), 0),
                 im.at(t), hs.dim(t));
        exact_at("exact-at-full-" + std::to_string(t), im.at(t), pm.at(t), hq.dim(t));
        exact_at("exact-at-pair-" + std::to_string(t), pm.at(t), dm.at(t), hp.dim(t));
    }
    return rep;
}

}  // namespace cohesive

#endif
