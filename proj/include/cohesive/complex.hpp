/**
 * Bounded complexes of finite-dimensional vector spaces: cohomology with
 * chosen representatives, induced maps on cohomology, quasi-isomorphism
 * verdicts.
 */

#ifndef COHESIVE_COMPLEX_HPP
#define COHESIVE_COMPLEX_HPP

#include <map>
#include <vector>

#include "matrix.hpp"

namespace cohesive {

/// A complex concentrated in degrees [lo, hi], differential of degree +1.
class FiniteComplex {
public:
    FiniteComplex() : field_{0}, lo_(0), hi_(-1) {}

    FiniteComplex(const Field& f, int lo, std::vector<std::size_t> dims) : field_(f), lo_(lo) {
        hi_ = lo + static_cast<int>(dims.size()) - 1;
        dims_ = std::move(dims);
        for (std::size_t t = 0; t + 1 < dims_.size(); ++t)
            diff_.push_back(MatrixK(f, dims_[t + 1], dims_[t]));
    }

    const Field& field() const { return field_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool empty() const { return hi_ < lo_; }

    std::size_t dim(int t) const {
        if (t < lo_ || t > hi_) return 0;
        return dims_[static_cast<std::size_t>(t - lo_)];
    }

    /// Differential out of degree t (dim(t+1) x dim(t)); zero off range.
    MatrixK differential(int t) const {
        if (t < lo_ || t >= hi_) return MatrixK(field_, dim(t + 1), dim(t));
        return diff_[static_cast<std::size_t>(t - lo_)];
    }

    void set_differential(int t, MatrixK d) {
        if (t < lo_ || t >= hi_) {
            if (!d.is_zero()) throw std::invalid_argument("differential outside degree range");
            return;
        }
        if (d.rows() != dim(t + 1) || d.cols() != dim(t))
            throw std::invalid_argument("differential shape mismatch");
        diff_[static_cast<std::size_t>(t - lo_)] = std::move(d);
    }

    /// Degree at which d*d first fails to vanish, if any.
    std::optional<int> square_check() const {
        for (int t = lo_; t + 1 < hi_; ++t)
            if (!(differential(t + 1) * differential(t)).is_zero()) return t;
        return std::nullopt;
    }

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto d : dims_) n += d;
        return n;
    }

private:
    Field field_;
    int lo_, hi_;
    std::vector<std::size_t> dims_;
    std::vector<MatrixK> diff_;
};

/// Cohomology in one degree: dimension plus chosen cocycle representatives
/// (columns), completing a basis of the boundary space inside the cocycles.
struct CohomologySpace {
    std::size_t dim = 0;
    MatrixK representatives;  // ambient_dim x dim
    MatrixK boundaries;       // ambient_dim x dim(image of previous differential)
    MatrixK cocycles;         // ambient_dim x dim(kernel)
};

class Cohomology {
public:
    explicit Cohomology(const FiniteComplex& c) : complex_(c) {
        if (auto bad = c.square_check())
            throw std::invalid_argument("complex_cohomology: d*d != 0 at degree " +
                                        std::to_string(*bad));
        for (int t = c.lo(); t <= c.hi(); ++t) {
            CohomologySpace h;
            h.cocycles = c.differential(t).kernel_basis();
            h.boundaries = c.differential(t - 1).image_basis();
            // Column-reduce [boundaries | cocycles]; cocycle columns carrying
            // new pivots represent a basis of H^t.
            MatrixK aug = h.boundaries.augment(h.cocycles);
            MatrixK red = aug;
            std::vector<std::size_t> pivots = red.rref();
            std::vector<std::size_t> chosen;
            for (auto p : pivots)
                if (p >= h.boundaries.cols()) chosen.push_back(p - h.boundaries.cols());
            h.dim = chosen.size();
            h.representatives = MatrixK(c.field(), c.dim(t), h.dim);
            for (std::size_t j = 0; j < chosen.size(); ++j)
                for (std::size_t i = 0; i < c.dim(t); ++i)
                    h.representatives.at(i, j) = h.cocycles.at(i, chosen[j]);
            spaces_.emplace(t, std::move(h));
        }
    }

    const FiniteComplex& complex() const { return complex_; }

    std::size_t dim(int t) const {
        auto it = spaces_.find(t);
        return it == spaces_.end() ? 0 : it->second.dim;
    }

    const CohomologySpace* space(int t) const {
        auto it = spaces_.find(t);
        return it == spaces_.end() ? nullptr : &it->second;
    }

    /// Coordinates of a cocycle's class in the chosen basis of H^t.
    MatrixK class_of(int t, const MatrixK& cocycle) const {
        auto it = spaces_.find(t);
        if (it == spaces_.end()) {
            if (!cocycle.is_zero()) throw std::invalid_argument("class_of: nonzero out of range");
            return MatrixK(complex_.field(), 0, 1);
        }
        const CohomologySpace& h = it->second;
        MatrixK basis = h.representatives.augment(h.boundaries);
        auto x = basis.solve(cocycle);
        if (!x) throw std::invalid_argument("class_of: vector is not a cocycle class member");
        MatrixK coords(complex_.field(), h.dim, cocycle.cols());
        for (std::size_t i = 0; i < h.dim; ++i)
            for (std::size_t j = 0; j < cocycle.cols(); ++j) coords.at(i, j) = x->at(i, j);
        return coords;
    }

private:
    FiniteComplex complex_;
    std::map<int, CohomologySpace> spaces_;
};

/// A chain map between two finite complexes, one matrix per degree.
struct ChainMap {
    const FiniteComplex* source = nullptr;
    const FiniteComplex* target = nullptr;
    std::map<int, MatrixK> maps;

    MatrixK map(int t) const {
        auto it = maps.find(t);
        if (it != maps.end()) return it->second;
        return MatrixK(target->field(), target->dim(t), source->dim(t));
    }

    bool commutes() const {
        int lo = std::min(source->lo(), target->lo());
        int hi = std::max(source->hi(), target->hi());
        for (int t = lo; t < hi; ++t)
            if (!(target->differential(t) * map(t) == map(t + 1) * source->differential(t)))
                return false;
        return true;
    }
};

struct InducedCohomologyMap {
    std::map<int, MatrixK> maps;  // H^t(source) -> H^t(target)
    bool quasi_isomorphism = false;
};

/// The induced map on cohomology (all degrees where either side is nonzero),
/// plus the quasi-isomorphism verdict.
inline InducedCohomologyMap induced_cohomology_map(const ChainMap& f, const Cohomology& hs,
                                                   const Cohomology& ht) {
    if (!f.commutes()) throw std::invalid_argument("induced_cohomology_map: not a chain map");
    InducedCohomologyMap out;
    out.quasi_isomorphism = true;
    int lo = std::min(f.source->lo(), f.target->lo());
    int hi = std::max(f.source->hi(), f.target->hi());
    for (int t = lo; t <= hi; ++t) {
        const CohomologySpace* s = hs.space(t);
        std::size_t sd = s ? s->dim : 0, td = ht.dim(t);
        if (sd == 0 && td == 0) continue;
        MatrixK m(f.target->field(), td, sd);
        if (sd > 0) {
            MatrixK images = f.map(t) * s->representatives;
            m = ht.class_of(t, images);
        }
        if (sd != td || (sd > 0 && m.rank() != sd)) out.quasi_isomorphism = false;
        out.maps.emplace(t, std::move(m));
    }
    return out;
}

}  // namespace cohesive

#endif
