#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "padic/ring_element.hpp"
#include "padic/scalar.hpp"

namespace padic {

// Dense matrix over an exact coefficient ring (Scalar or RingElement). The
// ring supplies zero_like/one_like so entries carry their context with them.
template <class R>
class Matrix {
  public:
    Matrix() = default;
    Matrix(long rows, long cols, const R& fill)
        : rows_(rows), cols_(cols), data_((size_t)(rows * cols), fill) {}

    static Matrix identity(long n, const R& exemplar) {
        Matrix m(n, n, exemplar.zero_like());
        for (long i = 0; i < n; ++i) m(i, i) = exemplar.one_like();
        return m;
    }
    static Matrix zero(long rows, long cols, const R& exemplar) {
        return Matrix(rows, cols, exemplar.zero_like());
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    R& operator()(long i, long j) { return data_[(size_t)(i * cols_ + j)]; }
    const R& operator()(long i, long j) const { return data_[(size_t)(i * cols_ + j)]; }

    const R& exemplar() const { return data_.at(0); }

    Matrix operator+(const Matrix& o) const {
        check_shape_(o);
        Matrix r = *this;
        for (size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_shape_(o);
        Matrix r = *this;
        for (size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw ContextMismatch("matrix product shape mismatch");
        Matrix r(rows_, o.cols_, exemplar().zero_like());
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const R& a = (*this)(i, k);
                for (long j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }
    Matrix scaled(const R& c) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * c;
        return r;
    }

    bool equal_at_precision(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t k = 0; k < data_.size(); ++k)
            if (!data_[k].equal_at_precision(o.data_[k])) return false;
        return true;
    }
    bool is_zero_at_precision() const {
        for (const auto& x : data_)
            if (!x.is_zero_at_precision()) return false;
        return true;
    }

    Matrix canonical_at_precision() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x.canonical_at_precision();
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using S = decltype(f(data_[0]));
        Matrix<S> r(rows_, cols_, f(data_[0]));
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    // smallest entry valuation (matrices over integral rings: always >= 0)
    Valuation min_valuation() const {
        Valuation v = Valuation::infinity();
        for (const auto& x : data_) {
            Valuation vx = x.valuation();
            if (vx < v) v = vx;
        }
        return v;
    }
    Valuation min_valuation_internal() const {
        Valuation v = Valuation::infinity();
        for (const auto& x : data_) {
            Valuation vx = x.valuation_internal();
            if (vx < v) v = vx;
        }
        return v;
    }

    Matrix divide_exact_by_p_pow(long k) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x.divide_exact_by_p_pow(k);
        return r;
    }
    Matrix divide_exact(long k) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x.divide_exact(k);
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        for (long i = 0; i < rows_; ++i) {
            os << (i == 0 ? "[[" : " [");
            for (long j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
            os << (i + 1 == rows_ ? "]]" : "]\n");
        }
        return os.str();
    }

  private:
    long rows_ = 0, cols_ = 0;
    std::vector<R> data_;

    void check_shape_(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ContextMismatch("matrix shape mismatch");
    }
};

using ScalarMatrix = Matrix<Scalar>;
using LaurentMatrix = Matrix<RingElement>;

// Gauss-Jordan inverse over the local ring Scalar: pivots must be units.
inline std::optional<ScalarMatrix> try_inverse(const ScalarMatrix& m) {
    if (!m.square()) return std::nullopt;
    long n = m.rows();
    ScalarMatrix a = m;
    ScalarMatrix inv = ScalarMatrix::identity(n, m.exemplar());
    for (long col = 0; col < n; ++col) {
        long pivot = -1;
        for (long r = col; r < n; ++r)
            if (a(r, col).is_unit()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;  // singular modulo the maximal ideal
        if (pivot != col)
            for (long j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        Scalar pi = a(col, col).inv();
        for (long j = 0; j < n; ++j) {
            a(col, j) *= pi;
            inv(col, j) *= pi;
        }
        for (long r = 0; r < n; ++r) {
            if (r == col) continue;
            Scalar f = a(r, col);
            bool zero = true;
            for (const auto& c : f.coeffs())
                if (c != 0) zero = false;
            if (zero) continue;
            for (long j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Inverse of g = 1 + h with v(h) > 0, over any of the coefficient rings.
template <class R>
Matrix<R> inverse_one_plus_small(const Matrix<R>& g) {
    if (!g.square()) throw ContextMismatch("inverse of a non-square matrix");
    Matrix<R> id = Matrix<R>::identity(g.rows(), g.exemplar());
    Matrix<R> h = id - g;  // g = 1 - h, g^{-1} = sum h^k
    Valuation vh = h.min_valuation_internal();
    if (vh.infinite) return id;
    if (vh.num <= 0) throw NotAUnit("matrix is not congruent to 1 modulo the maximal ideal");
    const auto& ctx = *g.exemplar().zero_like().ctx();
    long target = ctx.N + ctx.guard;
    long steps = (target * vh.den + vh.num - 1) / vh.num + 1;
    Matrix<R> acc = id;
    Matrix<R> pow = id;
    for (long k = 1; k <= steps; ++k) {
        pow = pow * h;
        if (pow.min_valuation_internal().infinite) break;
        acc = acc + pow;
    }
    return acc;
}

inline ScalarMatrix inverse(const ScalarMatrix& m) {
    auto inv = try_inverse(m);
    if (!inv) throw NotAUnit("matrix determinant is not a unit at this precision");
    return *inv;
}

inline LaurentMatrix inverse(const LaurentMatrix& m) {
    // constant unit part + small tail; enough for gauges and cocycle values
    long n = m.rows();
    bool constant = true;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!m(i, j).is_constant()) constant = false;
    if (constant) {
        ScalarMatrix cm = m.map([](const RingElement& e) { return e.constant_part(); });
        ScalarMatrix ci = inverse(cm);
        const RingElement& ex = m.exemplar();
        return ci.map([&](const Scalar& s) {
            return RingElement::constant(ex.ctx(), ex.vars(), ex.box(), s);
        });
    }
    ScalarMatrix cm = m.map([](const RingElement& e) { return e.constant_part(); });
    ScalarMatrix ci = inverse(cm);
    const RingElement& ex = m.exemplar();
    LaurentMatrix lift = ci.map([&](const Scalar& s) {
        return RingElement::constant(ex.ctx(), ex.vars(), ex.box(), s);
    });
    // m * lift = 1 + small if the non-constant tail has positive valuation
    return lift * inverse_one_plus_small(m * lift);
}

}  // namespace padic
