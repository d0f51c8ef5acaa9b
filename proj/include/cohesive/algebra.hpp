/**
 * Finite-dimensional graded algebras with derivation and curvature, given by
 * structure constants; elements, curved maps, the degree-zero fiber product,
 * and validation of the assumptions the gluing theorems need.
 *
 * Conventions: degrees run 0..maxDegree and products that would exceed
 * maxDegree are zero by fiat (truncation).  The degree-zero part is required
 * commutative and central; validators enforce this.
 */

#ifndef COHESIVE_ALGEBRA_HPP
#define COHESIVE_ALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "matrix.hpp"

namespace cohesive {

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

class GradedAlgebra {
public:
    GradedAlgebra(const Field& f, std::vector<std::vector<std::string>> basis_names)
        : field_(f), names_(std::move(basis_names)) {
        if (names_.empty()) throw std::invalid_argument("algebra needs a degree-0 part");
        max_degree_ = static_cast<int>(names_.size()) - 1;
        for (int d = 0; d <= max_degree_; ++d)
            derivation_.push_back(MatrixK(f, dim(d + 1), dim(d)));
        unit_ = MatrixK(f, dim(0), 1);
        unit_.at(0, 0) = Scalar::one(f);
        curvature_ = MatrixK(f, dim(2), 1);
    }

    const Field& field() const { return field_; }
    int max_degree() const { return max_degree_; }

    std::size_t dim(int d) const {
        if (d < 0 || d > max_degree_) return 0;
        return names_[static_cast<std::size_t>(d)].size();
    }

    const std::string& basis_name(int d, std::size_t i) const {
        return names_[static_cast<std::size_t>(d)][i];
    }

    /// Coordinates (in degree d1+d2) of the product of basis elements
    /// (d1,i)·(d2,j); zero when unset or out of the truncation range.
    MatrixK product_coords(int d1, std::size_t i, int d2, std::size_t j) const {
        auto it = products_.find({d1, i, d2, j});
        if (it != products_.end()) return it->second;
        return MatrixK(field_, dim(d1 + d2), 1);
    }

    void set_product(int d1, std::size_t i, int d2, std::size_t j, MatrixK coords) {
        if (d1 + d2 > max_degree_) {
            if (!coords.is_zero()) throw std::invalid_argument("product exceeds max degree");
            return;
        }
        if (coords.rows() != dim(d1 + d2) || coords.cols() != 1)
            throw std::invalid_argument("product coordinate shape mismatch");
        products_[{d1, i, d2, j}] = std::move(coords);
    }

    const MatrixK& unit_coords() const { return unit_; }
    void set_unit(MatrixK u) {
        if (u.rows() != dim(0) || u.cols() != 1) throw std::invalid_argument("unit shape");
        unit_ = std::move(u);
    }

    /// Derivation matrix in degree d: dim(d+1) x dim(d).
    MatrixK derivation(int d) const {
        if (d < 0 || d > max_degree_) return MatrixK(field_, dim(d + 1), dim(d));
        return derivation_[static_cast<std::size_t>(d)];
    }
    void set_derivation(int d, MatrixK m) {
        if (d < 0 || d > max_degree_) throw std::invalid_argument("derivation degree");
        if (m.rows() != dim(d + 1) || m.cols() != dim(d))
            throw std::invalid_argument("derivation shape");
        derivation_[static_cast<std::size_t>(d)] = std::move(m);
    }

    const MatrixK& curvature_coords() const { return curvature_; }
    void set_curvature(MatrixK c) {
        if (c.rows() != dim(2) || c.cols() != 1) throw std::invalid_argument("curvature shape");
        curvature_ = std::move(c);
    }

private:
    Field field_;
    int max_degree_;
    std::vector<std::vector<std::string>> names_;
    std::map<std::tuple<int, std::size_t, int, std::size_t>, MatrixK> products_;
    std::vector<MatrixK> derivation_;
    MatrixK unit_;
    MatrixK curvature_;
};

/// A (possibly inhomogeneous) element, stored as one coordinate column per
/// degree of its owner.
class AlgebraElement {
public:
    AlgebraElement() = default;

    explicit AlgebraElement(AlgebraPtr owner) : owner_(std::move(owner)) {
        for (int d = 0; d <= owner_->max_degree(); ++d)
            comps_.push_back(MatrixK(owner_->field(), owner_->dim(d), 1));
    }

    const AlgebraPtr& owner() const { return owner_; }

    const MatrixK& comp(int d) const { return comps_[static_cast<std::size_t>(d)]; }
    Scalar& at(int d, std::size_t i) { return comps_[static_cast<std::size_t>(d)].at(i, 0); }
    const Scalar& at(int d, std::size_t i) const {
        return comps_[static_cast<std::size_t>(d)].at(i, 0);
    }
    void set_comp(int d, MatrixK col) {
        if (col.rows() != owner_->dim(d) || col.cols() != 1)
            throw std::invalid_argument("component shape");
        comps_[static_cast<std::size_t>(d)] = std::move(col);
    }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Degree if homogeneous (zero counts as any; reported as degree 0).
    std::optional<int> homogeneous_degree() const {
        std::optional<int> deg;
        for (int d = 0; d <= owner_->max_degree(); ++d)
            if (!comp(d).is_zero()) {
                if (deg) return std::nullopt;
                deg = d;
            }
        return deg ? deg : std::optional<int>(0);
    }

    bool operator==(const AlgebraElement& o) const {
        check_owner(o);
        return comps_ == o.comps_;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    AlgebraElement operator-() const {
        AlgebraElement r = *this;
        for (auto& c : r.comps_) c = -c;
        return r;
    }
    AlgebraElement& operator+=(const AlgebraElement& o) {
        check_owner(o);
        for (std::size_t d = 0; d < comps_.size(); ++d) comps_[d] += o.comps_[d];
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this += -o; }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Scalar& s, AlgebraElement a) {
        for (auto& c : a.comps_) c = s * c;
        return a;
    }

    /// Algebra product via the structure constants.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        const GradedAlgebra& alg = *a.owner_;
        AlgebraElement r(a.owner_);
        for (int d1 = 0; d1 <= alg.max_degree(); ++d1)
            for (int d2 = 0; d1 + d2 <= alg.max_degree(); ++d2) {
                if (a.comp(d1).is_zero() || b.comp(d2).is_zero()) continue;
                for (std::size_t i = 0; i < alg.dim(d1); ++i)
                    for (std::size_t j = 0; j < alg.dim(d2); ++j) {
                        Scalar co = a.at(d1, i) * b.at(d2, j);
                        if (co.is_zero()) continue;
                        MatrixK p = alg.product_coords(d1, i, d2, j);
                        for (std::size_t t = 0; t < p.rows(); ++t)
                            r.at(d1 + d2, t) += co * p.at(t, 0);
                    }
            }
        return r;
    }

    /// The algebra derivation applied to this element.
    AlgebraElement d() const {
        AlgebraElement r(owner_);
        for (int deg = 0; deg < owner_->max_degree(); ++deg)
            r.set_comp(deg + 1, r.comp(deg + 1) + owner_->derivation(deg) * comp(deg));
        return r;
    }

    std::string str() const {
        std::string s;
        for (int d = 0; d <= owner_->max_degree(); ++d)
            for (std::size_t i = 0; i < owner_->dim(d); ++i)
                if (!at(d, i).is_zero()) {
                    if (!s.empty()) s += " + ";
                    s += at(d, i).str() + "*" + owner_->basis_name(d, i);
                }
        return s.empty() ? "0" : s;
    }

private:
    void check_owner(const AlgebraElement& o) const {
        if (owner_.get() != o.owner_.get())
            throw std::invalid_argument("elements of different algebras");
    }
    AlgebraPtr owner_;
    std::vector<MatrixK> comps_;
};

inline AlgebraElement zero_element(const AlgebraPtr& a) { return AlgebraElement(a); }

inline AlgebraElement basis_element(const AlgebraPtr& a, int d, std::size_t i) {
    AlgebraElement e(a);
    e.at(d, i) = Scalar::one(a->field());
    return e;
}

inline AlgebraElement unit_element(const AlgebraPtr& a) {
    AlgebraElement e(a);
    e.set_comp(0, a->unit_coords());
    return e;
}

inline AlgebraElement curvature_element(const AlgebraPtr& a) {
    AlgebraElement e(a);
    if (a->dim(2) > 0) e.set_comp(2, a->curvature_coords());
    return e;
}

inline AlgebraElement from_coords(const AlgebraPtr& a, int d, const MatrixK& col) {
    AlgebraElement e(a);
    e.set_comp(d, col);
    return e;
}

/// Graded commutator [a, b] = ab − (−1)^{|a||b|} ba on homogeneous pieces.
inline AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
    const AlgebraPtr& alg = a.owner();
    AlgebraElement r(alg);
    for (int d1 = 0; d1 <= alg->max_degree(); ++d1) {
        AlgebraElement a1 = from_coords(alg, d1, a.comp(d1));
        if (a1.is_zero()) continue;
        for (int d2 = 0; d2 <= alg->max_degree(); ++d2) {
            AlgebraElement b2 = from_coords(alg, d2, b.comp(d2));
            if (b2.is_zero()) continue;
            AlgebraElement ab = a1 * b2;
            AlgebraElement ba = b2 * a1;
            r += (d1 * d2) % 2 == 0 ? ab - ba : ab + ba;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Validation reports
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;  // failing basis element(s) or empty
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    std::string str() const {
        std::string s;
        for (const auto& c : checks) {
            s += (c.pass ? "pass  " : "FAIL  ") + c.name;
            if (!c.pass && !c.witness.empty()) s += "  [" + c.witness + "]";
            s += "\n";
        }
        return s;
    }
};

/// Check every curved-dga axiom on the structure-constant tables.
inline ValidationReport validate_curved_dga(const AlgebraPtr& a) {
    ValidationReport rep;
    const GradedAlgebra& alg = *a;
    auto add = [&rep](std::string name, bool pass, std::string witness) {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    };

    AlgebraElement one = unit_element(a);
    {
        bool pass = true;
        std::string w;
        for (int d = 0; d <= alg.max_degree() && pass; ++d)
            for (std::size_t i = 0; i < alg.dim(d) && pass; ++i) {
                AlgebraElement e = basis_element(a, d, i);
                if (one * e != e || e * one != e) {
                    pass = false;
                    w = alg.basis_name(d, i);
                }
            }
        add("unital", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        for (int d1 = 0; d1 <= alg.max_degree() && pass; ++d1)
            for (int d2 = 0; d2 <= alg.max_degree() && pass; ++d2)
                for (int d3 = 0; d3 <= alg.max_degree() && pass; ++d3)
                    for (std::size_t i = 0; i < alg.dim(d1) && pass; ++i)
                        for (std::size_t j = 0; j < alg.dim(d2) && pass; ++j)
                            for (std::size_t t = 0; t < alg.dim(d3) && pass; ++t) {
                                AlgebraElement x = basis_element(a, d1, i);
                                AlgebraElement y = basis_element(a, d2, j);
                                AlgebraElement z = basis_element(a, d3, t);
                                if ((x * y) * z != x * (y * z)) {
                                    pass = false;
                                    w = alg.basis_name(d1, i) + ", " + alg.basis_name(d2, j) +
                                        ", " + alg.basis_name(d3, t);
                                }
                            }
        add("associative", pass, w);
    }
    {
        // degree-0 part commutative and central
        bool pass = true;
        std::string w;
        for (std::size_t i = 0; i < alg.dim(0) && pass; ++i)
            for (int d = 0; d <= alg.max_degree() && pass; ++d)
                for (std::size_t j = 0; j < alg.dim(d) && pass; ++j) {
                    AlgebraElement x = basis_element(a, 0, i);
                    AlgebraElement y = basis_element(a, d, j);
                    if (x * y != y * x) {
                        pass = false;
                        w = alg.basis_name(0, i) + ", " + alg.basis_name(d, j);
                    }
                }
        add("degree-zero-central", pass, w);
    }
    {
        // graded Leibniz on basis pairs
        bool pass = true;
        std::string w;
        for (int d1 = 0; d1 <= alg.max_degree() && pass; ++d1)
            for (int d2 = 0; d2 <= alg.max_degree() && pass; ++d2)
                for (std::size_t i = 0; i < alg.dim(d1) && pass; ++i)
                    for (std::size_t j = 0; j < alg.dim(d2) && pass; ++j) {
                        AlgebraElement x = basis_element(a, d1, i);
                        AlgebraElement y = basis_element(a, d2, j);
                        AlgebraElement lhs = (x * y).d();
                        AlgebraElement rhs = x.d() * y +
                                             (d1 % 2 == 0 ? x * y.d() : -(x * y.d()));
                        if (lhs != rhs) {
                            pass = false;
                            w = alg.basis_name(d1, i) + ", " + alg.basis_name(d2, j);
                        }
                    }
        add("leibniz", pass, w);
    }
    {
        // d² = [c, ·]
        bool pass = true;
        std::string w;
        AlgebraElement c = curvature_element(a);
        for (int d = 0; d <= alg.max_degree() && pass; ++d)
            for (std::size_t i = 0; i < alg.dim(d) && pass; ++i) {
                AlgebraElement x = basis_element(a, d, i);
                if (x.d().d() != bracket(c, x)) {
                    pass = false;
                    w = alg.basis_name(d, i);
                }
            }
        add("d-squared-is-curvature-bracket", pass, w);
    }
    add("bianchi", curvature_element(a).d().is_zero(), "dc != 0");
    return rep;
}

// ---------------------------------------------------------------------------
// Curved dga maps
// ---------------------------------------------------------------------------

struct CurvedDgaMap {
    AlgebraPtr source, target;
    std::vector<MatrixK> f;  // per source degree d: target.dim(d) x source.dim(d)
    AlgebraElement omega;    // degree-1 element of the target

    MatrixK matrix(int d) const {
        if (d < 0 || d >= static_cast<int>(f.size()))
            return MatrixK(target->field(), target->dim(d), source->dim(d));
        return f[static_cast<std::size_t>(d)];
    }

    AlgebraElement apply(const AlgebraElement& x) const {
        if (x.owner().get() != source.get())
            throw std::invalid_argument("map applied to element of wrong algebra");
        AlgebraElement r(target);
        for (int d = 0; d <= source->max_degree(); ++d)
            if (target->dim(d) > 0)
                r.set_comp(d, r.comp(d) + matrix(d) * x.comp(d));
        return r;
    }

    bool operator==(const CurvedDgaMap& o) const {
        if (source.get() != o.source.get() || target.get() != o.target.get()) return false;
        for (int d = 0; d <= source->max_degree(); ++d)
            if (!(matrix(d) == o.matrix(d))) return false;
        return omega == o.omega;
    }
};

inline CurvedDgaMap identity_map(const AlgebraPtr& a) {
    CurvedDgaMap m{a, a, {}, zero_element(a)};
    for (int d = 0; d <= a->max_degree(); ++d)
        m.f.push_back(MatrixK::identity(a->field(), a->dim(d)));
    return m;
}

/// g ∘ f, with the correction composed as ω = ω_g + g(ω_f).
inline CurvedDgaMap compose(const CurvedDgaMap& g, const CurvedDgaMap& f) {
    if (f.target.get() != g.source.get()) throw std::invalid_argument("compose: endpoint mismatch");
    CurvedDgaMap m{f.source, g.target, {}, g.omega + g.apply(f.omega)};
    for (int d = 0; d <= f.source->max_degree(); ++d) m.f.push_back(g.matrix(d) * f.matrix(d));
    return m;
}

/// Check the curved-map axioms on all basis elements.
inline ValidationReport validate_cdga_map(const CurvedDgaMap& m) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string witness) {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    };
    const GradedAlgebra& src = *m.source;
    for (int d = 0; d <= src.max_degree(); ++d)
        if (m.matrix(d).rows() != m.target->dim(d) || m.matrix(d).cols() != src.dim(d))
            throw std::invalid_argument("validate_cdga_map: matrix shape mismatch in degree " +
                                        std::to_string(d));
    if (auto deg = m.omega.homogeneous_degree(); !deg || (*deg != 1 && !m.omega.is_zero()))
        throw std::invalid_argument("validate_cdga_map: omega must be homogeneous of degree 1");

    add("unital", m.apply(unit_element(m.source)) == unit_element(m.target), "f(1) != 1");
    {
        bool pass = true;
        std::string w;
        for (int d1 = 0; d1 <= src.max_degree() && pass; ++d1)
            for (int d2 = 0; d2 <= src.max_degree() && pass; ++d2)
                for (std::size_t i = 0; i < src.dim(d1) && pass; ++i)
                    for (std::size_t j = 0; j < src.dim(d2) && pass; ++j) {
                        AlgebraElement x = basis_element(m.source, d1, i);
                        AlgebraElement y = basis_element(m.source, d2, j);
                        if (m.apply(x * y) != m.apply(x) * m.apply(y)) {
                            pass = false;
                            w = src.basis_name(d1, i) + ", " + src.basis_name(d2, j);
                        }
                    }
        add("multiplicative", pass, w);
    }
    {
        // f(d₁a) = d₂f(a) + [ω, f(a)]
        bool pass = true;
        std::string w;
        for (int d = 0; d <= src.max_degree() && pass; ++d)
            for (std::size_t i = 0; i < src.dim(d) && pass; ++i) {
                AlgebraElement x = basis_element(m.source, d, i);
                if (m.apply(x.d()) != m.apply(x).d() + bracket(m.omega, m.apply(x))) {
                    pass = false;
                    w = src.basis_name(d, i);
                }
            }
        add("intertwines-derivations", pass, w);
    }
    {
        AlgebraElement lhs = m.apply(curvature_element(m.source));
        AlgebraElement rhs = curvature_element(m.target) + m.omega.d() + m.omega * m.omega;
        add("curvature-transform", lhs == rhs,
            "f(c1) = " + lhs.str() + " vs c2+dw+w^2 = " + rhs.str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Degree-zero fiber product
// ---------------------------------------------------------------------------

struct FiberProductResult {
    std::shared_ptr<GradedAlgebra> algebra;  // degree-0 algebra, dim = kernel dim
    MatrixK embed;                           // (dim B0 + dim C0) x dim, basis as kernel vectors
    MatrixK proj_b;                          // dim B0 x dim
    MatrixK proj_c;                          // dim C0 x dim
};

/// The kernel of B⁰ ⊕ C⁰ → D⁰, (b,c) ↦ g0(b) − l0(c), with its induced
/// multiplication; throws if the kernel is not closed under multiplication.
inline FiberProductResult build_degree_zero_fiber_product(const AlgebraPtr& b0,
                                                          const AlgebraPtr& c0,
                                                          const AlgebraPtr& d0,
                                                          const MatrixK& g0, const MatrixK& l0) {
    const Field& kf = b0->field();
    std::size_t nb = b0->dim(0), nc = c0->dim(0), nd = d0->dim(0);
    if (g0.rows() != nd || g0.cols() != nb || l0.rows() != nd || l0.cols() != nc)
        throw std::invalid_argument("fiber product: map shapes");
    MatrixK diff(kf, nd, nb + nc);
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nb; ++j) diff.at(i, j) = g0.at(i, j);
        for (std::size_t j = 0; j < nc; ++j) diff.at(i, nb + j) = -l0.at(i, j);
    }
    MatrixK ker = diff.kernel_basis();
    std::size_t n = ker.cols();

    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    auto alg = std::make_shared<GradedAlgebra>(kf, std::vector<std::vector<std::string>>{names});

    auto split = [&](const MatrixK& v) {
        std::pair<AlgebraElement, AlgebraElement> bc{zero_element(b0), zero_element(c0)};
        MatrixK vb(kf, nb, 1), vc(kf, nc, 1);
        for (std::size_t i = 0; i < nb; ++i) vb.at(i, 0) = v.at(i, 0);
        for (std::size_t i = 0; i < nc; ++i) vc.at(i, 0) = v.at(nb + i, 0);
        bc.first.set_comp(0, vb);
        bc.second.set_comp(0, vc);
        return bc;
    };
    auto join = [&](const AlgebraElement& b, const AlgebraElement& c) {
        MatrixK v(kf, nb + nc, 1);
        for (std::size_t i = 0; i < nb; ++i) v.at(i, 0) = b.at(0, i);
        for (std::size_t i = 0; i < nc; ++i) v.at(nb + i, 0) = c.at(0, i);
        return v;
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto [bi, ci] = split(ker.column(i));
            auto [bj, cj] = split(ker.column(j));
            auto coords = ker.solve(join(bi * bj, ci * cj));
            if (!coords)
                throw std::runtime_error("fiber product: multiplication not closed (corrupt input)");
            alg->set_product(0, i, 0, j, *coords);
        }
    auto unitc = ker.solve(join(unit_element(b0), unit_element(c0)));
    if (!unitc) throw std::runtime_error("fiber product: unit not in kernel (corrupt input)");
    alg->set_unit(*unitc);

    MatrixK pb(kf, nb, n), pc(kf, nc, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < nb + nc; ++i) {
            if (i < nb)
                pb.at(i, j) = ker.at(i, j);
            else
                pc.at(i - nb, j) = ker.at(i, j);
        }
    return {alg, ker, pb, pc};
}

// ---------------------------------------------------------------------------
// The commuting square and its assumptions
// ---------------------------------------------------------------------------

struct DescentSquare {
    CurvedDgaMap f;  // A -> B
    CurvedDgaMap k;  // A -> C
    CurvedDgaMap g;  // B -> D
    CurvedDgaMap l;  // C -> D
    // Recorded homogeneous bases of each algebra as a module over its own
    // degree-zero part (freeness certificates).
    std::vector<AlgebraElement> basis_a, basis_b, basis_c, basis_d;

    const AlgebraPtr& A() const { return f.source; }
    const AlgebraPtr& B() const { return f.target; }
    const AlgebraPtr& C() const { return k.target; }
    const AlgebraPtr& D() const { return g.target; }
};

/// Is X free over X⁰ with the given homogeneous elements as basis?  Checks,
/// per degree, that (x⁰_r b_i) spans X^deg(b_i) bijectively.
inline bool evaluation_bijective(const AlgebraPtr& x, const std::vector<AlgebraElement>& elems,
                                 std::string* witness) {
    const Field& kf = x->field();
    std::size_t n0 = x->dim(0);
    for (int d = 0; d <= x->max_degree(); ++d) {
        std::vector<const AlgebraElement*> at_d;
        for (const auto& e : elems) {
            auto deg = e.homogeneous_degree();
            if (!deg) {
                if (witness) *witness = "basis element not homogeneous";
                return false;
            }
            if (*deg == d && !e.is_zero()) at_d.push_back(&e);
        }
        MatrixK m(kf, x->dim(d), at_d.size() * n0);
        for (std::size_t i = 0; i < at_d.size(); ++i)
            for (std::size_t r = 0; r < n0; ++r) {
                AlgebraElement prod = *at_d[i] * basis_element(x, 0, r);
                for (std::size_t t = 0; t < x->dim(d); ++t)
                    m.at(t, i * n0 + r) = prod.at(d, t);
            }
        if (m.rows() != m.cols() || !m.inverse()) {
            if (witness)
                *witness = "degree " + std::to_string(d) + ": evaluation map " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           " rank " + std::to_string(MatrixK(m).rank());
            return false;
        }
    }
    return true;
}

/// The four standing assumptions (plus exact commutation of the square).
inline ValidationReport check_descent_assumptions(const DescentSquare& s) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string witness) {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    };

    add("square-commutes", compose(s.g, s.f) == compose(s.l, s.k), "g∘f != l∘k");

    {
        // A⁰ ≅ B⁰ ×_{D⁰} C⁰ via (f⁰, k⁰)
        const Field& kf = s.A()->field();
        std::size_t na = s.A()->dim(0), nb = s.B()->dim(0), nc = s.C()->dim(0),
                    nd = s.D()->dim(0);
        MatrixK diff(kf, nd, nb + nc);
        MatrixK g0 = s.g.matrix(0), l0 = s.l.matrix(0);
        for (std::size_t i = 0; i < nd; ++i) {
            for (std::size_t j = 0; j < nb; ++j) diff.at(i, j) = g0.at(i, j);
            for (std::size_t j = 0; j < nc; ++j) diff.at(i, nb + j) = -l0.at(i, j);
        }
        MatrixK ker = diff.kernel_basis();
        MatrixK fk(kf, nb + nc, na);
        MatrixK f0 = s.f.matrix(0), k0 = s.k.matrix(0);
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t i = 0; i < nb; ++i) fk.at(i, j) = f0.at(i, j);
            for (std::size_t i = 0; i < nc; ++i) fk.at(nb + i, j) = k0.at(i, j);
        }
        bool pass = fk.rank() == na && ker.cols() == na;
        if (pass)
            for (std::size_t j = 0; j < na && pass; ++j) pass = in_span(ker, fk.column(j));
        add("degree-zero-fiber-product", pass,
            "dim A0 = " + std::to_string(na) + ", kernel dim = " + std::to_string(ker.cols()) +
                ", rank(f0,k0) = " + std::to_string(fk.rank()));
    }

    {
        MatrixK l0 = s.l.matrix(0);
        bool pass = l0.rank() == s.D()->dim(0);
        add("l0-surjective", pass, "rank " + std::to_string(MatrixK(l0).rank()) + " < " +
                                       std::to_string(s.D()->dim(0)));
    }

    {
        std::string w;
        bool pass = evaluation_bijective(s.A(), s.basis_a, &w) &&
                    evaluation_bijective(s.B(), s.basis_b, &w) &&
                    evaluation_bijective(s.C(), s.basis_c, &w) &&
                    evaluation_bijective(s.D(), s.basis_d, &w);
        add("freeness-over-degree-zero", pass, w);
    }

    {
        // base change maps B⁰⊗_{A⁰}A → B etc., evaluated on the recorded bases
        auto images = [](const CurvedDgaMap& m, const std::vector<AlgebraElement>& basis) {
            std::vector<AlgebraElement> out;
            for (const auto& e : basis) out.push_back(m.apply(e));
            return out;
        };
        std::string w;
        bool pass = evaluation_bijective(s.B(), images(s.f, s.basis_a), &w) &&
                    evaluation_bijective(s.C(), images(s.k, s.basis_a), &w) &&
                    evaluation_bijective(s.D(), images(s.g, s.basis_b), &w) &&
                    evaluation_bijective(s.D(), images(s.l, s.basis_c), &w);
        add("base-change-bijective", pass, w);
    }
    return rep;
}

}  // namespace cohesive

#endif
