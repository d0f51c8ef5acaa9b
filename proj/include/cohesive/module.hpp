/**
 * Cohesive modules over a curved dga and their hom complexes.
 *
 * A module is a list of "atoms": an idempotent over the degree-zero part of a
 * carrier algebra, a module degree, and a view map from the base algebra into
 * the carrier.  Honest cohesive modules have carrier == base and identity
 * views; pushforwards and cones of comparison maps reuse the same shape with
 * foreign carriers (quasi-cohesive values).
 *
 * The connection is the Grassmann base connection ∇₀(v) = (−1)^j e·d(v) on
 * each atom plus matricial correction components between atoms; Leibniz holds
 * by construction and all twist data (pullback/pushforward ω-terms) folds
 * into the components.
 *
 * Hom complexes are built only against sources that are cohesive over the
 * base; their spaces are idempotent-compressed matrices over the target
 * carrier and stay finite-dimensional.
 */

#ifndef COHESIVE_MODULE_HPP
#define COHESIVE_MODULE_HPP

#include <map>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "complex.hpp"

namespace cohesive {

// ---------------------------------------------------------------------------
// Matrices with algebra entries
// ---------------------------------------------------------------------------

class AMat {
public:
    AMat() = default;
    AMat(AlgebraPtr alg, std::size_t rows, std::size_t cols)
        : alg_(std::move(alg)), rows_(rows), cols_(cols),
          e_(rows * cols, AlgebraElement(alg_)) {}

    static AMat identity(const AlgebraPtr& alg, std::size_t n) {
        AMat m(alg, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = unit_element(alg);
        return m;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    AlgebraElement& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const AlgebraElement& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const AMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const AMat& o) const { return !(*this == o); }

    AMat operator-() const {
        AMat r = *this;
        for (auto& x : r.e_) x = -x;
        return r;
    }
    AMat& operator+=(const AMat& o) {
        for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
        return *this;
    }
    AMat& operator-=(const AMat& o) { return *this += -o; }
    friend AMat operator+(AMat a, const AMat& b) { return a += b; }
    friend AMat operator-(AMat a, const AMat& b) { return a += -b; }

    friend AMat operator*(const AMat& a, const AMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("AMat product shape");
        AMat r(a.alg_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                for (std::size_t t = 0; t < a.cols_; ++t)
                    r.at(i, j) += a.at(i, t) * b.at(t, j);
        return r;
    }

    friend AMat operator*(const Scalar& s, AMat a) {
        for (auto& x : a.e_) x = s * x;
        return a;
    }

    /// Left-multiply each entry by a (central) algebra element.
    AMat scaled_by(const AlgebraElement& s) const {
        AMat r = *this;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    /// Right-multiply each entry.
    AMat times_element(const AlgebraElement& s) const {
        AMat r = *this;
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    /// Entrywise derivation of the carrier algebra.
    AMat dmap() const {
        AMat r = *this;
        for (auto& x : r.e_) x = x.d();
        return r;
    }

    /// Entrywise application of a curved-dga map's linear part.
    AMat transported(const CurvedDgaMap& m) const {
        AMat r(m.target, rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = m.apply(e_[i]);
        return r;
    }

    /// The degree-k part, flattened to a scalar column (entry-major layout).
    MatrixK flatten_degree(int k) const {
        std::size_t dk = alg_->dim(k);
        MatrixK col(alg_->field(), rows_ * cols_ * dk, 1);
        for (std::size_t i = 0; i < e_.size(); ++i)
            for (std::size_t b = 0; b < dk; ++b) col.at(i * dk + b, 0) = e_[i].at(k, b);
        return col;
    }

    static AMat unflatten_degree(const AlgebraPtr& alg, std::size_t rows, std::size_t cols, int k,
                                 const MatrixK& col) {
        AMat m(alg, rows, cols);
        std::size_t dk = alg->dim(k);
        for (std::size_t i = 0; i < rows * cols; ++i)
            for (std::size_t b = 0; b < dk; ++b)
                m.e_[i].at(k, b) = col.at(i * dk + b, 0);
        return m;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[ ";
            for (std::size_t j = 0; j < cols_; ++j) s += at(i, j).str() + " ; ";
            s += "]\n";
        }
        return s;
    }

private:
    AlgebraPtr alg_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<AlgebraElement> e_;
};

// ---------------------------------------------------------------------------
// Modules
// ---------------------------------------------------------------------------

struct Atom {
    AlgebraPtr carrier;
    CurvedDgaMap view;  // base -> carrier
    int degree = 0;
    AMat idempotent;  // n x n over carrier, degree-0 entries

    std::size_t rank() const { return idempotent.rows(); }
};

/// A matricial map between atoms: entries over the destination carrier,
/// applied as mat · transport(argument).
struct Component {
    AMat mat;
    CurvedDgaMap transport;  // source carrier -> destination carrier
};

class GenModule {
public:
    GenModule() = default;
    explicit GenModule(AlgebraPtr base, bool quasi = false)
        : base_(std::move(base)), quasi_(quasi) {}

    const AlgebraPtr& base() const { return base_; }
    bool quasi() const { return quasi_; }
    void set_quasi(bool q) { quasi_ = q; }

    std::size_t atom_count() const { return atoms_.size(); }
    const Atom& atom(std::size_t i) const { return atoms_[i]; }
    Atom& atom(std::size_t i) { return atoms_[i]; }

    std::size_t add_atom(Atom a) {
        atoms_.push_back(std::move(a));
        return atoms_.size() - 1;
    }

    const std::map<std::pair<std::size_t, std::size_t>, Component>& comps() const {
        return comps_;
    }
    const Component* comp(std::size_t dst, std::size_t src) const {
        auto it = comps_.find({dst, src});
        return it == comps_.end() ? nullptr : &it->second;
    }
    void set_comp(std::size_t dst, std::size_t src, Component c) {
        if (c.mat.is_zero())
            comps_.erase({dst, src});
        else
            comps_[{dst, src}] = std::move(c);
    }
    void add_comp(std::size_t dst, std::size_t src, const Component& c) {
        auto it = comps_.find({dst, src});
        if (it == comps_.end())
            set_comp(dst, src, c);
        else {
            it->second.mat += c.mat;
            if (it->second.mat.is_zero()) comps_.erase(it);
        }
    }

    /// True when every atom's carrier is the base with the identity view.
    bool over_base() const {
        for (const auto& a : atoms_)
            if (a.carrier.get() != base_.get()) return false;
        return true;
    }

    bool is_zero() const { return atoms_.empty(); }

private:
    AlgebraPtr base_;
    bool quasi_ = false;
    std::vector<Atom> atoms_;
    std::map<std::pair<std::size_t, std::size_t>, Component> comps_;
};

inline Atom free_atom(const AlgebraPtr& base, int degree, std::size_t rank) {
    return Atom{base, identity_map(base), degree, AMat::identity(base, rank)};
}

/// Free rank-n module concentrated in one degree, zero correction.
inline GenModule free_module(const AlgebraPtr& base, int degree, std::size_t rank) {
    GenModule m(base);
    m.add_atom(free_atom(base, degree, rank));
    return m;
}

/// The value matrix of the connection from atom src into atom dst: columns
/// are the dst-components of 𝔼(generator).  Includes the Grassmann part.
inline AMat connection_value(const GenModule& m, std::size_t dst, std::size_t src) {
    const Atom& s = m.atom(src);
    const Atom& d = m.atom(dst);
    AMat val(d.carrier, d.rank(), s.rank());
    if (dst == src) {
        AMat g = s.idempotent * s.idempotent.dmap();
        val += (s.degree % 2 == 0) ? g : -g;
    }
    if (const Component* c = m.comp(dst, src)) val += c->mat;
    return val;
}

/// Apply the connection to an element given per atom as a column (or a block
/// of columns) over each atom's carrier.
inline std::map<std::size_t, AMat> apply_connection(const GenModule& m,
                                                    const std::map<std::size_t, AMat>& v) {
    std::map<std::size_t, AMat> out;
    auto acc = [&out](std::size_t p, AMat x) {
        if (x.is_zero()) return;
        auto it = out.find(p);
        if (it == out.end())
            out.emplace(p, std::move(x));
        else
            it->second += x;
    };
    for (const auto& [src, col] : v) {
        const Atom& a = m.atom(src);
        AMat g = a.idempotent * col.dmap();
        acc(src, a.degree % 2 == 0 ? g : -g);
        for (const auto& [key, c] : m.comps())
            if (key.second == src) acc(key.first, c.mat * col.transported(c.transport));
    }
    return out;
}

/// Structure and relative-curvature validation.  Curvature is checked on the
/// generators (columns of each idempotent): 𝔼∘𝔼(gen) + gen·view(c) = 0.
inline ValidationReport check_cohesive(const GenModule& m) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string witness) {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    };
    {
        bool pass = true;
        std::string w;
        for (std::size_t i = 0; i < m.atom_count() && pass; ++i) {
            const AMat& e = m.atom(i).idempotent;
            if (e * e != e) {
                pass = false;
                w = "atom " + std::to_string(i);
            }
        }
        add("idempotents", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        for (const auto& [key, c] : m.comps()) {
            const Atom& d = m.atom(key.first);
            const Atom& s = m.atom(key.second);
            AMat compressed =
                d.idempotent * c.mat * s.idempotent.transported(c.transport);
            if (compressed != c.mat) {
                pass = false;
                w = "component (" + std::to_string(key.first) + "," +
                    std::to_string(key.second) + ") not compressed";
                break;
            }
            // total degree one: entries of algebra degree k need j_dst + k = j_src + 1
            int k = s.degree + 1 - d.degree;
            for (std::size_t r = 0; r < c.mat.rows() && pass; ++r)
                for (std::size_t t = 0; t < c.mat.cols() && pass; ++t) {
                    const AlgebraElement& x = c.mat.at(r, t);
                    for (int deg = 0; deg <= x.owner()->max_degree(); ++deg)
                        if (deg != k && !x.comp(deg).is_zero()) {
                            pass = false;
                            w = "component (" + std::to_string(key.first) + "," +
                                std::to_string(key.second) + ") has degree-" +
                                std::to_string(deg) + " entries, expected " + std::to_string(k);
                        }
                }
            if (!pass) break;
        }
        add("component-degrees", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        AlgebraElement c_base = curvature_element(m.base());
        for (std::size_t i = 0; i < m.atom_count() && pass; ++i) {
            const Atom& a = m.atom(i);
            std::map<std::size_t, AMat> gen{{i, a.idempotent}};
            auto ff = apply_connection(m, apply_connection(m, gen));
            AlgebraElement ci = a.view.apply(c_base);
            for (auto& [p, val] : ff) {
                if (p == i) val += a.idempotent.times_element(ci);
                if (!val.is_zero()) {
                    pass = false;
                    w = "atom " + std::to_string(i) + " curvature component at atom " +
                        std::to_string(p);
                }
            }
            if (pass && ff.find(i) == ff.end() &&
                !a.idempotent.times_element(ci).is_zero()) {
                pass = false;
                w = "atom " + std::to_string(i) + ": e·c != 0 with no connection terms";
            }
        }
        add("relative-curvature", pass, w);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// A morphism between two modules over one base, as matricial components
/// (tgt atom, src atom).  For a morphism of total degree t the entries of
/// component (m,i) are forced into algebra degree t + j_i − j_m.
struct GenMorphism {
    int degree = 0;
    std::map<std::pair<std::size_t, std::size_t>, Component> comps;

    const Component* comp(std::size_t dst, std::size_t src) const {
        auto it = comps.find({dst, src});
        return it == comps.end() ? nullptr : &it->second;
    }
    void add(std::size_t dst, std::size_t src, const AMat& mat, const CurvedDgaMap& tr) {
        if (mat.is_zero()) return;
        auto it = comps.find({dst, src});
        if (it == comps.end())
            comps[{dst, src}] = Component{mat, tr};
        else {
            it->second.mat += mat;
            if (it->second.mat.is_zero()) comps.erase(it);
        }
    }
    bool is_zero() const {
        for (const auto& [k, c] : comps)
            if (!c.mat.is_zero()) return false;
        return true;
    }
    bool operator==(const GenMorphism& o) const {
        if (degree != o.degree) return false;
        auto covered = [](const GenMorphism& a, const GenMorphism& b) {
            for (const auto& [k, c] : a.comps) {
                const Component* oc = b.comp(k.first, k.second);
                if (oc ? (c.mat != oc->mat) : !c.mat.is_zero()) return false;
            }
            return true;
        };
        return covered(*this, o) && covered(o, *this);
    }
};

inline GenMorphism identity_morphism(const GenModule& m) {
    GenMorphism id;
    for (std::size_t i = 0; i < m.atom_count(); ++i)
        id.add(i, i, m.atom(i).idempotent, identity_map(m.atom(i).carrier));
    return id;
}

/// g ∘ f through a shared middle module.
inline GenMorphism compose_hom(const GenMorphism& g, const GenMorphism& f) {
    GenMorphism r;
    r.degree = g.degree + f.degree;
    for (const auto& [gk, gc] : g.comps)
        for (const auto& [fk, fc] : f.comps) {
            if (gk.second != fk.first) continue;
            r.add(gk.first, fk.second, gc.mat * fc.mat.transported(gc.transport),
                  compose(gc.transport, fc.transport));
        }
    return r;
}

/// The hom-complex differential dφ = 𝔼_tgt∘φ − (−1)^{|φ|} φ∘𝔼_src, computed
/// on generators and reassembled; valid for sources cohesive over the base.
inline GenMorphism hom_differential(const GenModule& src, const GenModule& tgt,
                                    const GenMorphism& phi) {
    GenMorphism out;
    out.degree = phi.degree + 1;
    bool flip = phi.degree % 2 != 0;  // (−1)^t
    for (const auto& [key, c] : phi.comps) {
        std::size_t m = key.first, i = key.second;
        const Atom& am = tgt.atom(m);
        const Atom& ai = src.atom(i);
        // target Grassmann
        {
            AMat g = am.idempotent * c.mat.dmap();
            out.add(m, i, am.degree % 2 == 0 ? g : -g, c.transport);
        }
        // target connection components
        for (const auto& [xk, xc] : tgt.comps())
            if (xk.second == m)
                out.add(xk.first, i, xc.mat * c.mat.transported(xc.transport),
                        compose(xc.transport, c.transport));
        // source Grassmann: φ((−1)^{j_i} e_i·d(e_i) · gen)
        {
            AMat g = ai.idempotent * ai.idempotent.dmap();
            AMat term = c.mat * g.transported(c.transport);
            bool neg = flip == (ai.degree % 2 == 0);  // −(−1)^t (−1)^{j_i}
            out.add(m, i, neg ? -term : term, c.transport);
        }
        // source connection components (i' -> i): φ comp at (m, i) eats values at i
        for (const auto& [sk, sc] : src.comps())
            if (sk.first == i) {
                AMat term = c.mat * sc.mat.transported(c.transport);
                out.add(m, sk.second, flip ? term : -term,
                        compose(c.transport, sc.transport));
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hom complexes with enumerated bases
// ---------------------------------------------------------------------------

struct HomBasisEntry {
    std::size_t tgt_atom, src_atom;
    int form_degree;  // k
    AMat mat;         // a basis morphism component
};

class HomComplex {
public:
    HomComplex(GenModule src, GenModule tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
        if (!src_.over_base())
            throw std::invalid_argument("hom_complex: source must be cohesive over the base");
        if (src_.base().get() != tgt_.base().get())
            throw std::invalid_argument("hom_complex: different base algebras");
        enumerate();
        assemble();
        if (auto bad = complex_.square_check())
            throw std::runtime_error("hom_complex: d² != 0 at degree " + std::to_string(*bad));
    }

    const GenModule& source() const { return src_; }
    const GenModule& target() const { return tgt_; }
    const FiniteComplex& complex() const { return complex_; }

    std::size_t dim(int t) const {
        auto it = basis_.find(t);
        return it == basis_.end() ? 0 : it->second.size();
    }
    const std::vector<HomBasisEntry>& basis(int t) const {
        static const std::vector<HomBasisEntry> empty;
        auto it = basis_.find(t);
        return it == basis_.end() ? empty : it->second;
    }

    GenMorphism element(int t, const MatrixK& coords) const {
        GenMorphism phi;
        phi.degree = t;
        const auto& b = basis(t);
        if (coords.rows() != b.size() || coords.cols() != 1)
            throw std::invalid_argument("element: coordinate shape");
        for (std::size_t r = 0; r < b.size(); ++r) {
            if (coords.at(r, 0).is_zero()) continue;
            phi.add(b[r].tgt_atom, b[r].src_atom, coords.at(r, 0) * b[r].mat,
                    tgt_.atom(b[r].tgt_atom).view);
        }
        return phi;
    }

    MatrixK coordinates(const GenMorphism& phi) const {
        const auto& b = basis(phi.degree);
        // ambient flatten per (m,i,k) block, in basis-aligned layout
        auto blocks = block_layout(phi.degree);
        MatrixK target_col = flatten(phi, blocks);
        MatrixK basis_mat(field(), target_col.rows(), b.size());
        for (std::size_t cidx = 0; cidx < b.size(); ++cidx) {
            GenMorphism unit;
            unit.degree = phi.degree;
            unit.add(b[cidx].tgt_atom, b[cidx].src_atom, b[cidx].mat,
                     tgt_.atom(b[cidx].tgt_atom).view);
            MatrixK col = flatten(unit, blocks);
            for (std::size_t r = 0; r < col.rows(); ++r) basis_mat.at(r, cidx) = col.at(r, 0);
        }
        auto x = basis_mat.solve(target_col);
        if (!x) throw std::invalid_argument("coordinates: morphism outside the enumerated space");
        return *x;
    }

    GenMorphism differential(const GenMorphism& phi) const {
        return hom_differential(src_, tgt_, phi);
    }

    bool is_closed(const GenMorphism& phi) const { return differential(phi).is_zero(); }

    int lo() const { return complex_.lo(); }
    int hi() const { return complex_.hi(); }

private:
    const Field& field() const { return src_.base()->field(); }

    struct Block {
        std::size_t tgt_atom, src_atom;
        int form_degree;
        std::size_t size;  // flattened ambient size
    };

    std::vector<Block> block_layout(int t) const {
        std::vector<Block> blocks;
        for (std::size_t m = 0; m < tgt_.atom_count(); ++m)
            for (std::size_t i = 0; i < src_.atom_count(); ++i) {
                int k = t + src_.atom(i).degree - tgt_.atom(m).degree;
                const AlgebraPtr& carrier = tgt_.atom(m).carrier;
                if (k < 0 || k > carrier->max_degree()) continue;
                std::size_t sz = tgt_.atom(m).rank() * src_.atom(i).rank() * carrier->dim(k);
                if (sz == 0) continue;
                blocks.push_back({m, i, k, sz});
            }
        return blocks;
    }

    MatrixK flatten(const GenMorphism& phi, const std::vector<Block>& blocks) const {
        std::size_t total = 0;
        for (const auto& b : blocks) total += b.size;
        MatrixK col(field(), total, 1);
        std::size_t off = 0;
        for (const auto& b : blocks) {
            if (const Component* c = phi.comp(b.tgt_atom, b.src_atom)) {
                MatrixK f = c->mat.flatten_degree(b.form_degree);
                for (std::size_t r = 0; r < f.rows(); ++r) col.at(off + r, 0) = f.at(r, 0);
            }
            off += b.size;
        }
        return col;
    }

    void enumerate() {
        int tmin = 0, tmax = 0;
        bool first = true;
        for (std::size_t m = 0; m < tgt_.atom_count(); ++m)
            for (std::size_t i = 0; i < src_.atom_count(); ++i) {
                int base_t = tgt_.atom(m).degree - src_.atom(i).degree;
                int top = base_t + tgt_.atom(m).carrier->max_degree();
                if (first) {
                    tmin = base_t;
                    tmax = top;
                    first = false;
                } else {
                    tmin = std::min(tmin, base_t);
                    tmax = std::max(tmax, top);
                }
            }
        if (first) return;  // a zero module on either side
        for (int t = tmin; t <= tmax; ++t) {
            std::vector<HomBasisEntry> entries;
            for (const Block& b : block_layout(t)) {
                const Atom& am = tgt_.atom(b.tgt_atom);
                const Atom& ai = src_.atom(b.src_atom);
                const AlgebraPtr& carrier = am.carrier;
                AMat e_src = ai.idempotent.transported(am.view);
                std::size_t n = b.size;
                // fixed space of M ↦ e_tgt · M · view(e_src)
                MatrixK proj(field(), n, n);
                std::size_t dk = carrier->dim(b.form_degree);
                for (std::size_t c = 0; c < n; ++c) {
                    MatrixK unit(field(), n, 1);
                    unit.at(c, 0) = Scalar::one(field());
                    AMat M = AMat::unflatten_degree(carrier, am.rank(), ai.rank(),
                                                    b.form_degree, unit);
                    MatrixK img = (am.idempotent * M * e_src).flatten_degree(b.form_degree);
                    for (std::size_t r = 0; r < n; ++r) proj.at(r, c) = img.at(r, 0);
                }
                (void)dk;
                MatrixK fixed = (proj - MatrixK::identity(field(), n)).kernel_basis();
                for (std::size_t c = 0; c < fixed.cols(); ++c)
                    entries.push_back({b.tgt_atom, b.src_atom, b.form_degree,
                                       AMat::unflatten_degree(carrier, am.rank(), ai.rank(),
                                                              b.form_degree, fixed.column(c))});
            }
            if (!entries.empty()) basis_.emplace(t, std::move(entries));
        }
    }

    void assemble() {
        if (basis_.empty()) {
            complex_ = FiniteComplex();
            return;
        }
        int lo = basis_.begin()->first, hi = basis_.rbegin()->first;
        std::vector<std::size_t> dims;
        for (int t = lo; t <= hi; ++t) dims.push_back(dim(t));
        complex_ = FiniteComplex(field(), lo, dims);
        for (int t = lo; t < hi; ++t) {
            MatrixK d(field(), dim(t + 1), dim(t));
            for (std::size_t c = 0; c < dim(t); ++c) {
                MatrixK unit(field(), dim(t), 1);
                unit.at(c, 0) = Scalar::one(field());
                GenMorphism img = differential(element(t, unit));
                MatrixK coords = coordinates(img);
                for (std::size_t r = 0; r < dim(t + 1); ++r) d.at(r, c) = coords.at(r, 0);
            }
            complex_.set_differential(t, d);
        }
    }

    GenModule src_, tgt_;
    std::map<int, std::vector<HomBasisEntry>> basis_;
    FiniteComplex complex_;
};

// ---------------------------------------------------------------------------
// Shift, cone, direct sum
// ---------------------------------------------------------------------------

/// ℰ[1]: degrees drop by one, connection negated (the Grassmann sign flips
/// with the degree parity automatically; components are negated explicitly).
inline GenModule shift(const GenModule& m, int times = 1) {
    GenModule out(m.base(), m.quasi());
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        Atom a = m.atom(i);
        a.degree -= times;
        out.add_atom(std::move(a));
    }
    bool neg = times % 2 != 0;
    for (const auto& [k, c] : m.comps())
        out.set_comp(k.first, k.second, Component{neg ? -c.mat : c.mat, c.transport});
    return out;
}

/// Direct sum; atoms of b are re-indexed after those of a.
inline GenModule direct_sum(const GenModule& a, const GenModule& b) {
    GenModule out(a.base(), a.quasi() || b.quasi());
    for (std::size_t i = 0; i < a.atom_count(); ++i) out.add_atom(a.atom(i));
    std::size_t off = a.atom_count();
    for (std::size_t i = 0; i < b.atom_count(); ++i) out.add_atom(b.atom(i));
    for (const auto& [k, c] : a.comps()) out.set_comp(k.first, k.second, c);
    for (const auto& [k, c] : b.comps()) out.set_comp(k.first + off, k.second + off, c);
    return out;
}

/// Cone of a closed degree-0 morphism φ: E → F, with connection
/// [[𝔽, φ],[0, 𝔼[1]]].  E's atoms follow F's.
inline GenModule cone(const GenMorphism& phi, const GenModule& e, const GenModule& f) {
    if (phi.degree != 0) throw std::invalid_argument("cone: morphism must have degree 0");
    GenModule out = direct_sum(f, shift(e));
    std::size_t off = f.atom_count();
    for (const auto& [k, c] : phi.comps) out.add_comp(k.first, k.second + off, c);
    return out;
}

// ---------------------------------------------------------------------------
// Pullback and pushforward along curved maps
// ---------------------------------------------------------------------------

/// f* of a cohesive module over the map's source algebra: idempotents pushed
/// through f⁰, connection values transported, twisted by (−1)^j ω.
inline GenModule pullback(const CurvedDgaMap& f, const GenModule& m) {
    if (m.base().get() != f.source.get())
        throw std::invalid_argument("pullback: module not over the map's source");
    if (!m.over_base()) throw std::invalid_argument("pullback: module must be cohesive");
    GenModule out(f.target);
    std::vector<AMat> new_e;
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        Atom a = m.atom(i);
        AMat e2 = a.idempotent.transported(f);
        new_e.push_back(e2);
        out.add_atom(Atom{f.target, identity_map(f.target), a.degree, e2});
    }
    CurvedDgaMap id2 = identity_map(f.target);
    for (std::size_t dst = 0; dst < m.atom_count(); ++dst)
        for (std::size_t src = 0; src < m.atom_count(); ++src) {
            AMat val = connection_value(m, dst, src).transported(f);
            if (dst == src) {
                const Atom& a = m.atom(src);
                // twist (−1)^j e⊗ω, as a left matrix ω·e (degree-0 entries commute)
                AMat tw = new_e[src].scaled_by(f.omega);
                val += (a.degree % 2 == 0) ? tw : -tw;
                // subtract the new Grassmann value to recover the component
                AMat g = new_e[src] * new_e[src].dmap();
                val -= (a.degree % 2 == 0) ? g : -g;
            }
            if (!val.is_zero()) out.set_comp(dst, src, Component{val, id2});
        }
    return out;
}

/// Pullback on morphisms between cohesive modules (entrywise transport).
inline GenMorphism pullback_mor(const CurvedDgaMap& f, const GenMorphism& phi) {
    GenMorphism out;
    out.degree = phi.degree;
    CurvedDgaMap id2 = identity_map(f.target);
    for (const auto& [k, c] : phi.comps) out.add(k.first, k.second, c.mat.transported(f), id2);
    return out;
}

/// f_* of a module over the map's target algebra: same matrices, carrier kept,
/// views composed with f, connection twisted by −(−1)^j ω (through the old
/// view).  The result is quasi-cohesive over the map's source.
inline GenModule pushforward(const CurvedDgaMap& f, const GenModule& m) {
    if (m.base().get() != f.target.get())
        throw std::invalid_argument("pushforward: module not over the map's target");
    GenModule out(f.source, true);
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        Atom a = m.atom(i);
        a.view = compose(a.view, f);
        out.add_atom(a);
    }
    for (const auto& [k, c] : m.comps()) out.set_comp(k.first, k.second, c);
    if (!f.omega.is_zero())
        for (std::size_t i = 0; i < m.atom_count(); ++i) {
            const Atom& a = m.atom(i);
            AlgebraElement w = m.atom(i).view.apply(f.omega);  // old view: carrier image of ω
            AMat tw = a.idempotent.scaled_by(w);
            out.add_comp(i, i, Component{a.degree % 2 == 0 ? -tw : tw,
                                         identity_map(a.carrier)});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Degree-zero complexes and the homotopy-equivalence criterion
// ---------------------------------------------------------------------------

/// The complex (ℰ, 𝔼⁰): per degree, the ground-field space ⊕ e·(X⁰)^n with
/// the form-degree-0 part of the connection.
struct DegreeZeroComplex {
    FiniteComplex complex;
    // per atom: its degree, offset inside that degree, and a k-basis of
    // e·(X⁰)^n inside the ambient coordinate space (X⁰)^n ≅ k^{n·dim X⁰}
    struct AtomSpace {
        int degree;
        std::size_t offset;
        MatrixK basis;  // ambient x dim
    };
    std::vector<AtomSpace> atoms;
};

namespace detail_mod {

/// k-linear matrix of "apply mat·transport(·)" from ambient (X_src⁰)^{n_src}
/// to (X_dst⁰)^{n_dst}, keeping only degree-0 output entries.
inline MatrixK entry_action(const AMat& mat, const CurvedDgaMap& transport,
                            const AlgebraPtr& src_carrier, std::size_t n_src) {
    const AlgebraPtr& dst_carrier = mat.algebra();
    const Field& kf = dst_carrier->field();
    std::size_t d_src = src_carrier->dim(0), d_dst = dst_carrier->dim(0);
    MatrixK out(kf, mat.rows() * d_dst, n_src * d_src);
    for (std::size_t c = 0; c < n_src; ++c)
        for (std::size_t b = 0; b < d_src; ++b) {
            AMat col(src_carrier, n_src, 1);
            col.at(c, 0) = basis_element(src_carrier, 0, b);
            MatrixK img = (mat * col.transported(transport)).flatten_degree(0);
            for (std::size_t r = 0; r < img.rows(); ++r)
                out.at(r, c * d_src + b) = img.at(r, 0);
        }
    return out;
}

}  // namespace detail_mod

inline DegreeZeroComplex degree_zero_complex(const GenModule& m) {
    DegreeZeroComplex out;
    const Field& kf = m.base()->field();
    if (m.atom_count() == 0) return out;
    // per-atom subspace bases
    out.atoms.resize(m.atom_count());
    int lo = m.atom(0).degree, hi = m.atom(0).degree;
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        const Atom& a = m.atom(i);
        MatrixK mult = detail_mod::entry_action(a.idempotent, identity_map(a.carrier),
                                                a.carrier, a.rank());
        out.atoms[i] = {a.degree, 0, mult.image_basis()};
        lo = std::min(lo, a.degree);
        hi = std::max(hi, a.degree);
    }
    std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < m.atom_count(); ++i) {
        out.atoms[i].offset = dims[static_cast<std::size_t>(out.atoms[i].degree - lo)];
        dims[static_cast<std::size_t>(out.atoms[i].degree - lo)] += out.atoms[i].basis.cols();
    }
    out.complex = FiniteComplex(kf, lo, dims);
    // differential: degree-0 entry parts of the connection components
    for (int t = lo; t < hi; ++t) {
        MatrixK d(kf, out.complex.dim(t + 1), out.complex.dim(t));
        for (const auto& [key, c] : m.comps()) {
            const auto& as = out.atoms[key.second];
            const auto& ad = out.atoms[key.first];
            if (as.degree != t || ad.degree != t + 1) continue;
            MatrixK act = detail_mod::entry_action(c.mat, c.transport,
                                                   m.atom(key.second).carrier,
                                                   m.atom(key.second).rank());
            MatrixK images = act * as.basis;
            auto coords = ad.basis.solve(images);
            if (!coords)
                throw std::runtime_error("degree_zero_complex: component image escapes e·M");
            for (std::size_t r = 0; r < coords->rows(); ++r)
                for (std::size_t cc = 0; cc < coords->cols(); ++cc)
                    d.at(ad.offset + r, as.offset + cc) = coords->at(r, cc);
        }
        out.complex.set_differential(t, d);
    }
    if (auto bad = out.complex.square_check())
        throw std::runtime_error("degree_zero_complex: d² != 0 at " + std::to_string(*bad));
    return out;
}

/// The chain map induced on degree-zero complexes by a closed degree-0
/// morphism (its form-degree-0 components).
inline ChainMap degree_zero_map(const GenMorphism& phi, const GenModule& src,
                                const GenModule& tgt, const DegreeZeroComplex& zs,
                                const DegreeZeroComplex& zt) {
    ChainMap f{&zs.complex, &zt.complex, {}};
    std::map<int, MatrixK> maps;
    for (const auto& [key, c] : phi.comps) {
        const auto& as = zs.atoms[key.second];
        const auto& ad = zt.atoms[key.first];
        if (as.degree != ad.degree) continue;  // only the form-degree-0 part
        int t = as.degree;
        auto it = maps.find(t);
        if (it == maps.end())
            it = maps.emplace(t, MatrixK(zs.complex.field(), zt.complex.dim(t),
                                         zs.complex.dim(t)))
                     .first;
        MatrixK act = detail_mod::entry_action(c.mat, c.transport, src.atom(key.second).carrier,
                                               src.atom(key.second).rank());
        MatrixK images = act * as.basis;
        auto coords = ad.basis.solve(images);
        if (!coords) throw std::runtime_error("degree_zero_map: image escapes target space");
        for (std::size_t r = 0; r < coords->rows(); ++r)
            for (std::size_t cc = 0; cc < coords->cols(); ++cc)
                it->second.at(ad.offset + r, as.offset + cc) = coords->at(r, cc);
    }
    f.maps = std::move(maps);
    return f;
}

struct EquivalenceVerdict {
    bool equivalence = false;
    InducedCohomologyMap certificate;
};

/// Is a closed degree-0 morphism a homotopy equivalence?  Criterion: its
/// form-degree-0 component is a quasi-isomorphism of the (ℰ, 𝔼⁰) complexes.
inline EquivalenceVerdict is_homotopy_equivalence(const GenMorphism& phi, const GenModule& src,
                                                  const GenModule& tgt) {
    DegreeZeroComplex zs = degree_zero_complex(src);
    DegreeZeroComplex zt = degree_zero_complex(tgt);
    ChainMap f = degree_zero_map(phi, src, tgt, zs, zt);
    if (!f.commutes())
        throw std::invalid_argument("is_homotopy_equivalence: morphism not closed in degree 0");
    Cohomology hs(zs.complex), ht(zt.complex);
    InducedCohomologyMap ind = induced_cohomology_map(f, hs, ht);
    return {ind.quasi_isomorphism, std::move(ind)};
}

// ---------------------------------------------------------------------------
// Direct H⁰-inverse search (cross-check for the criterion above)
// ---------------------------------------------------------------------------

struct InverseCertificate {
    GenMorphism psi;      // closed degree-0 candidate inverse
    GenMorphism h_src;    // degree −1: ψφ − id = d(h_src)
    GenMorphism h_tgt;    // degree −1: φψ − id = d(h_tgt)
};

/// Solve for an inverse of φ up to homotopy by exact linear algebra over the
/// four hom complexes; returns nothing when no inverse class exists.
inline std::optional<InverseCertificate> find_h0_inverse(
    const GenMorphism& phi, const HomComplex& hom_st, const HomComplex& hom_ts,
    const HomComplex& hom_ss, const HomComplex& hom_tt) {
    const Field& kf = hom_st.source().base()->field();
    std::size_t n_psi = hom_ts.dim(0), n_hs = hom_ss.dim(-1), n_ht = hom_tt.dim(-1);
    std::size_t rows = 0;
    // equations: dψ = 0; ψφ − d h_s = id_s; φψ − d h_t = id_t
    MatrixK d_psi = hom_ts.complex().differential(0);
    std::size_t r1 = d_psi.rows(), r2 = hom_ss.dim(0), r3 = hom_tt.dim(0);
    rows = r1 + r2 + r3;
    MatrixK sys(kf, rows, n_psi + n_hs + n_ht);
    MatrixK rhs(kf, rows, 1);
    // columns for ψ unknowns
    for (std::size_t c = 0; c < n_psi; ++c) {
        MatrixK unit(kf, n_psi, 1);
        unit.at(c, 0) = Scalar::one(kf);
        GenMorphism psi = hom_ts.element(0, unit);
        for (std::size_t r = 0; r < r1; ++r) sys.at(r, c) = d_psi.at(r, c);
        MatrixK pf = hom_ss.coordinates(compose_hom(psi, phi));
        for (std::size_t r = 0; r < r2; ++r) sys.at(r1 + r, c) = pf.at(r, 0);
        MatrixK fp = hom_tt.coordinates(compose_hom(phi, psi));
        for (std::size_t r = 0; r < r3; ++r) sys.at(r1 + r2 + r, c) = fp.at(r, 0);
    }
    MatrixK d_hs = hom_ss.complex().differential(-1);
    for (std::size_t c = 0; c < n_hs; ++c)
        for (std::size_t r = 0; r < r2; ++r)
            sys.at(r1 + r, n_psi + c) = -d_hs.at(r, c);
    MatrixK d_ht = hom_tt.complex().differential(-1);
    for (std::size_t c = 0; c < n_ht; ++c)
        for (std::size_t r = 0; r < r3; ++r)
            sys.at(r1 + r2 + r, n_psi + n_hs + c) = -d_ht.at(r, c);
    MatrixK id_s = hom_ss.coordinates(identity_morphism(hom_ss.source()));
    for (std::size_t r = 0; r < r2; ++r) rhs.at(r1 + r, 0) = id_s.at(r, 0);
    MatrixK id_t = hom_tt.coordinates(identity_morphism(hom_tt.source()));
    for (std::size_t r = 0; r < r3; ++r) rhs.at(r1 + r2 + r, 0) = id_t.at(r, 0);

    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    MatrixK psi_c(kf, n_psi, 1), hs_c(kf, n_hs, 1), ht_c(kf, n_ht, 1);
    for (std::size_t i = 0; i < n_psi; ++i) psi_c.at(i, 0) = sol->at(i, 0);
    for (std::size_t i = 0; i < n_hs; ++i) hs_c.at(i, 0) = sol->at(n_psi + i, 0);
    for (std::size_t i = 0; i < n_ht; ++i) ht_c.at(i, 0) = sol->at(n_psi + n_hs + i, 0);
    return InverseCertificate{hom_ts.element(0, psi_c), hom_ss.element(-1, hs_c),
                              hom_tt.element(-1, ht_c)};
}

}  // namespace cohesive

#endif
