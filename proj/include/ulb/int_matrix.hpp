#ifndef ULB_INT_MATRIX_HPP
#define ULB_INT_MATRIX_HPP

#include "ulb/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ulb {

// Dense integer matrix with arbitrary-precision entries, row-major storage.
// Values are immutable in spirit: all operations return fresh matrices.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix row_vector(const std::vector<Integer>& v);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Integer& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    Integer& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    const Integer& at(std::size_t i, std::size_t j) const;

    std::vector<Integer> row(std::size_t i) const;
    std::vector<Integer> col(std::size_t j) const;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Integer& c) const;

    bool operator==(const IntMatrix& rhs) const = default;
    // Lexicographic order on (rows, cols, entries); used for canonical forms.
    std::strong_ordering operator<=>(const IntMatrix& rhs) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;

    // Rows [r0, r1) and columns [c0, c1).
    IntMatrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

    // The stacked matrix [this; other].
    IntMatrix vstack(const IntMatrix& other) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += c * row_j, col_i += c * col_j
    void add_row(std::size_t i, std::size_t j, const Integer& c);
    void add_col(std::size_t i, std::size_t j, const Integer& c);
    void negate_row(std::size_t i);

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Integer> entries_;
};

Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b);

// Dense rational matrix; just enough surface for exact elimination results.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}
    explicit RatMatrix(const IntMatrix& m);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    Rational& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }

    RatMatrix operator*(const RatMatrix& rhs) const;
    bool operator==(const RatMatrix& rhs) const = default;

    bool is_identity() const;
    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> entries_;
};

} // namespace ulb

#endif
