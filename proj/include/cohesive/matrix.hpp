/**
 * Dense exact matrices over Q or F_p: elimination, rank, kernel, images,
 * linear solves.  Everything downstream reduces to these routines.
 */

#ifndef COHESIVE_MATRIX_HPP
#define COHESIVE_MATRIX_HPP

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace cohesive {

class MatrixK {
public:
    MatrixK() : field_{0}, rows_(0), cols_(0) {}

    MatrixK(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

    static MatrixK identity(const Field& f, std::size_t n) {
        MatrixK m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& s : data_)
            if (!s.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MatrixK& a, const MatrixK& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!(a.data_[i] == b.data_[i])) return false;
        return true;
    }

    MatrixK operator-() const {
        MatrixK r(*this);
        for (auto& s : r.data_) s = -s;
        return r;
    }

    MatrixK& operator+=(const MatrixK& o) {
        check_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    MatrixK& operator-=(const MatrixK& o) {
        check_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend MatrixK operator+(MatrixK a, const MatrixK& b) { return a += b; }
    friend MatrixK operator-(MatrixK a, const MatrixK& b) { return a -= b; }

    friend MatrixK operator*(const Scalar& s, MatrixK m) {
        for (auto& x : m.data_) x = s * x;
        return m;
    }

    friend MatrixK operator*(const MatrixK& a, const MatrixK& b) {
        require_same_field(a.field_, b.field_);
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        MatrixK r(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    MatrixK transpose() const {
        MatrixK r(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    MatrixK column(std::size_t j) const {
        MatrixK c(field_, rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    /// [this | other], side by side.
    MatrixK augment(const MatrixK& o) const {
        require_same_field(field_, o.field_);
        if (rows_ != o.rows_) throw std::invalid_argument("augment: row mismatch");
        MatrixK r(field_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    /// Reduced row-echelon form; returns the pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t pr = r;
            while (pr < rows_ && at(pr, c).is_zero()) ++pr;
            if (pr == rows_) continue;
            swap_rows(pr, r);
            Scalar inv = at(r, c).inverse();
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = inv * at(r, j);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                Scalar factor = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) -= factor * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        MatrixK m(*this);
        return m.rref().size();
    }

    /// Basis of the null space, one column per basis vector.  Deterministic:
    /// free columns in increasing order, each with unit coordinate.
    MatrixK kernel_basis() const {
        MatrixK m(*this);
        std::vector<std::size_t> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::size_t nul = cols_ - pivots.size();
        MatrixK ker(field_, cols_, nul);
        std::size_t kcol = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            ker.at(c, kcol) = Scalar::one(field_);
            for (std::size_t pi = 0; pi < pivots.size(); ++pi)
                ker.at(pivots[pi], kcol) = -m.at(pi, c);
            ++kcol;
        }
        return ker;
    }

    /// Basis of the column space: the columns of *this that carry pivots.
    MatrixK image_basis() const {
        MatrixK m(*this);
        std::vector<std::size_t> pivots = m.rref();
        MatrixK im(field_, rows_, pivots.size());
        for (std::size_t j = 0; j < pivots.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) im.at(i, j) = at(i, pivots[j]);
        return im;
    }

    /// Solve this * X = rhs; nullopt when inconsistent.  Free variables are 0.
    std::optional<MatrixK> solve(const MatrixK& rhs) const {
        if (rhs.rows_ != rows_) throw std::invalid_argument("solve: row mismatch");
        MatrixK aug = augment(rhs);
        std::vector<std::size_t> pivots = aug.rref();
        for (auto c : pivots)
            if (c >= cols_) return std::nullopt;
        MatrixK x(field_, cols_, rhs.cols_);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                x.at(pivots[pi], j) = aug.at(pi, cols_ + j);
        return x;
    }

    std::optional<MatrixK> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        auto x = solve(identity(field_, rows_));
        if (x && (*this) * (*x) == identity(field_, rows_)) return x;
        return std::nullopt;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i == 0 ? "[" : " ";
            for (std::size_t j = 0; j < cols_; ++j) {
                s += at(i, j).str();
                if (j + 1 < cols_) s += " ";
            }
            s += i + 1 < rows_ ? ";\n" : "]";
        }
        return s;
    }

private:
    void check_shape(const MatrixK& o) const {
        require_same_field(field_, o.field_);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

/// Does v lie in the column span of basis?
inline bool in_span(const MatrixK& basis, const MatrixK& v) {
    return basis.solve(v).has_value() || v.is_zero();
}

}  // namespace cohesive

#endif
