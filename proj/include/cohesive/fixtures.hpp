/**
 * Shipped fixtures: the nodal degree-zero square (k[x,y]/(xy,x²,y²) as a
 * fiber product of two dual-number rings over k) and its one- and
 * two-generator exterior thickenings, the second with curvature.
 *
 * In the curved fixture the square δ₁·δ₁ is not zero but −x·δ₁δ₂ (in A and
 * B); this deformation is what lets a rank-one module carry a connection
 * correction u = δ₁ with u² = −c while the differential stays zero.
 */

#ifndef COHESIVE_FIXTURES_HPP
#define COHESIVE_FIXTURES_HPP

#include "algebra.hpp"

namespace cohesive {

inline std::shared_ptr<GradedAlgebra> ground_field_algebra(const Field& f) {
    auto a = std::make_shared<GradedAlgebra>(f, std::vector<std::vector<std::string>>{{"1"}});
    MatrixK one(f, 1, 1);
    one.at(0, 0) = Scalar::one(f);
    a->set_product(0, 0, 0, 0, one);
    return a;
}

/// k[t]/(t²) with basis {1, t}.
inline std::shared_ptr<GradedAlgebra> dual_numbers(const Field& f, const std::string& var) {
    auto a = std::make_shared<GradedAlgebra>(f, std::vector<std::vector<std::string>>{{"1", var}});
    auto e = [&](std::size_t i) {
        MatrixK v(f, 2, 1);
        v.at(i, 0) = Scalar::one(f);
        return v;
    };
    a->set_product(0, 0, 0, 0, e(0));
    a->set_product(0, 0, 0, 1, e(1));
    a->set_product(0, 1, 0, 0, e(1));
    // t·t = 0 (default)
    return a;
}

/// k[x,y]/(xy, x², y²) with basis {1, x, y}.
inline std::shared_ptr<GradedAlgebra> nodal_ring(const Field& f) {
    auto a = std::make_shared<GradedAlgebra>(
        f, std::vector<std::vector<std::string>>{{"1", "x", "y"}});
    auto e = [&](std::size_t i) {
        MatrixK v(f, 3, 1);
        v.at(i, 0) = Scalar::one(f);
        return v;
    };
    for (std::size_t i = 0; i < 3; ++i) {
        a->set_product(0, 0, 0, i, e(i));
        a->set_product(0, i, 0, 0, e(i));
    }
    // x², y², xy, yx all zero (default)
    return a;
}

/**
 * R ⊗ Λ(δ₁..δ_g) for g ∈ {0,1,2}, truncated at degree g, with R a degree-zero
 * algebra.  For g = 2 the relation δ₁·δ₁ = deform·δ₁δ₂ (deform ∈ R, default 0)
 * and a curvature c = curv·δ₁δ₂ are supported; the derivation is zero.
 * Basis layout: degree 1 is [r·δ₁ …][r·δ₂ …], degree 2 is [r·δ₁δ₂ …].
 */
inline std::shared_ptr<GradedAlgebra> tensor_exterior(const AlgebraPtr& r0, int g,
                                                      std::optional<MatrixK> deform = {},
                                                      std::optional<MatrixK> curv = {}) {
    const Field& f = r0->field();
    std::size_t n = r0->dim(0);
    std::vector<std::vector<std::string>> names(static_cast<std::size_t>(g) + 1);
    auto nm = [&](std::size_t r, const std::string& suffix) {
        const std::string& b = r0->basis_name(0, r);
        return suffix.empty() ? b : (b == "1" ? suffix : b + "*" + suffix);
    };
    for (std::size_t r = 0; r < n; ++r) names[0].push_back(nm(r, ""));
    if (g >= 1)
        for (std::size_t r = 0; r < n; ++r) names[1].push_back(nm(r, g == 1 ? "d" : "d1"));
    if (g == 2) {
        for (std::size_t r = 0; r < n; ++r) names[1].push_back(nm(r, "d2"));
        for (std::size_t r = 0; r < n; ++r) names[2].push_back(nm(r, "d1d2"));
    }
    auto a = std::make_shared<GradedAlgebra>(f, names);

    // ring product of two degree-0 coordinate columns, as a column
    auto rprod = [&](const MatrixK& u, const MatrixK& v) {
        return (from_coords(r0, 0, u) * from_coords(r0, 0, v)).comp(0);
    };
    auto unitcol = [&](std::size_t i) {
        MatrixK v(f, n, 1);
        v.at(i, 0) = Scalar::one(f);
        return v;
    };
    MatrixK t = deform ? *deform : MatrixK(f, n, 1);

    // exterior words: 0 = 1, 1 = δ₁, 2 = δ₂, 3 = δ₁δ₂
    auto word_of = [&](int deg, std::size_t idx) -> std::pair<int, std::size_t> {
        if (deg == 0) return {0, idx};
        if (deg == 1) return {g == 2 && idx >= n ? 2 : 1, idx % n};
        return {3, idx};
    };
    struct WordProd {
        int word = -1;  // -1 means zero
        int sign = 1;
        bool deformed = false;  // multiply the ring part by t as well
    };
    auto wmul = [&](int w1, int w2) -> WordProd {
        if (w1 == 0) return {w2, 1, false};
        if (w2 == 0) return {w1, 1, false};
        if (w1 == 1 && w2 == 1) return {3, 1, true};  // δ₁δ₁ = t·δ₁δ₂
        if (w1 == 1 && w2 == 2) return {3, 1, false};
        if (w1 == 2 && w2 == 1) return {3, -1, false};
        return {};  // δ₂δ₂ and anything meeting δ₁δ₂: zero (or out of range)
    };
    auto word_degree = [](int w) { return w == 0 ? 0 : (w == 3 ? 2 : 1); };
    auto index_of = [&](int w, std::size_t r) -> std::size_t { return w == 2 ? n + r : r; };

    for (int d1 = 0; d1 <= g; ++d1)
        for (int d2 = 0; d1 + d2 <= g; ++d2)
            for (std::size_t i = 0; i < a->dim(d1); ++i)
                for (std::size_t j = 0; j < a->dim(d2); ++j) {
                    auto [w1, r1] = word_of(d1, i);
                    auto [w2, r2] = word_of(d2, j);
                    WordProd wp = wmul(w1, w2);
                    if (wp.word < 0) continue;
                    MatrixK rc = rprod(unitcol(r1), unitcol(r2));
                    if (wp.deformed) rc = rprod(rc, t);
                    if (wp.sign < 0) rc = -rc;
                    int dd = word_degree(wp.word);
                    MatrixK out(f, a->dim(dd), 1);
                    for (std::size_t r = 0; r < n; ++r) out.at(index_of(wp.word, r), 0) = rc.at(r, 0);
                    a->set_product(d1, i, d2, j, out);
                }
    a->set_unit(r0->unit_coords());
    if (curv && g == 2) a->set_curvature(*curv);
    return a;
}

/// Extend a degree-zero algebra map identically on the exterior generators.
inline CurvedDgaMap extend_map(const AlgebraPtr& src, const AlgebraPtr& tgt, const MatrixK& m0,
                               int g) {
    CurvedDgaMap m{src, tgt, {}, zero_element(tgt)};
    m.f.push_back(m0);
    const Field& f = m0.field();
    if (g >= 1) {
        if (g == 1)
            m.f.push_back(m0);
        else {
            MatrixK d1(f, 2 * m0.rows(), 2 * m0.cols());
            for (std::size_t i = 0; i < m0.rows(); ++i)
                for (std::size_t j = 0; j < m0.cols(); ++j) {
                    d1.at(i, j) = m0.at(i, j);
                    d1.at(m0.rows() + i, m0.cols() + j) = m0.at(i, j);
                }
            m.f.push_back(d1);
            m.f.push_back(m0);
        }
    }
    return m;
}

struct SquareFixture {
    AlgebraPtr A, B, C, D;
    DescentSquare square;
};

namespace detail {

inline MatrixK map_matrix(const Field& f, std::size_t r, std::size_t c,
                          std::vector<long long> e) {
    MatrixK m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, e[i * c + j]);
    return m;
}

inline std::vector<AlgebraElement> exterior_module_basis(const AlgebraPtr& x, int g) {
    std::vector<AlgebraElement> b{unit_element(x)};
    if (g >= 1) b.push_back(basis_element(x, 1, 0));
    if (g == 2) {
        b.push_back(basis_element(x, 1, x->dim(0)));
        b.push_back(basis_element(x, 2, 0));
    }
    return b;
}

/// Shared assembly: the nodal degree-zero square thickened by g exterior
/// generators, optionally deformed/curved in A and B (coefficient ±x).
inline SquareFixture nodal_thickening(const Field& f, int g, bool curved) {
    auto a0 = nodal_ring(f);
    auto b0 = dual_numbers(f, "x");
    auto c0 = dual_numbers(f, "y");
    auto d0 = ground_field_algebra(f);

    auto col = [&](const AlgebraPtr& r, std::vector<long long> e) {
        MatrixK v(r->field(), r->dim(0), 1);
        for (std::size_t i = 0; i < e.size(); ++i) v.at(i, 0) = Scalar(f, e[i]);
        return v;
    };
    SquareFixture fx;
    if (curved) {
        fx.A = tensor_exterior(a0, g, col(a0, {0, -1, 0}), col(a0, {0, 1, 0}));
        fx.B = tensor_exterior(b0, g, col(b0, {0, -1}), col(b0, {0, 1}));
    } else {
        fx.A = tensor_exterior(a0, g);
        fx.B = tensor_exterior(b0, g);
    }
    fx.C = tensor_exterior(c0, g);
    fx.D = tensor_exterior(d0, g);

    MatrixK f0 = map_matrix(f, 2, 3, {1, 0, 0, 0, 1, 0});
    MatrixK k0 = map_matrix(f, 2, 3, {1, 0, 0, 0, 0, 1});
    MatrixK g0 = map_matrix(f, 1, 2, {1, 0});
    MatrixK l0 = map_matrix(f, 1, 2, {1, 0});
    fx.square.f = extend_map(fx.A, fx.B, f0, g);
    fx.square.k = extend_map(fx.A, fx.C, k0, g);
    fx.square.g = extend_map(fx.B, fx.D, g0, g);
    fx.square.l = extend_map(fx.C, fx.D, l0, g);
    fx.square.basis_a = exterior_module_basis(fx.A, g);
    fx.square.basis_b = exterior_module_basis(fx.B, g);
    fx.square.basis_c = exterior_module_basis(fx.C, g);
    fx.square.basis_d = exterior_module_basis(fx.D, g);
    return fx;
}

}  // namespace detail

/// The degree-zero square: k[x,y]/(xy,x²,y²) → k[x]/(x²), k[y]/(y²) → k.
inline SquareFixture nodal_square(const Field& f) { return detail::nodal_thickening(f, 0, false); }

/// The nodal square tensored with Λ(δ); d = 0, c = 0.
inline SquareFixture sq1_square(const Field& f) { return detail::nodal_thickening(f, 1, false); }

/// The curved fixture: nodal square with two exterior generators,
/// c_A = c_B = x·δ₁δ₂, c_C = c_D = 0, δ₁·δ₁ = −x·δ₁δ₂ in A and B.
inline SquareFixture sq2_square(const Field& f) { return detail::nodal_thickening(f, 2, true); }

}  // namespace cohesive

#endif
