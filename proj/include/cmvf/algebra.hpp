#pragma once

// Exact coefficient arithmetic over Q and GF(p), and sparse column-major
// matrices with the elimination kernels used by homology and by the
// connection-matrix reduction.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmvf {

using Rational = boost::multiprecision::cpp_rational;

/// Coefficient field tag: the rationals, or GF(p) for a prime p.
class Field {
public:
    static Field rationals() noexcept { return Field(0); }

    /// Throws ConfigError unless p is prime.
    static Field prime(std::uint32_t p);

    /// Accepts "Q", "GF(p)" and "GF:p".
    static Field parse(std::string_view text);

    bool is_rational() const noexcept { return p_ == 0; }
    std::uint32_t characteristic() const noexcept { return p_; }

    /// "Q" or "GF(p)".
    std::string name() const;

    friend bool operator==(Field, Field) = default;

private:
    explicit Field(std::uint32_t p) noexcept : p_(p) {}

    std::uint32_t p_ = 0;
};

/// An element of a Field. Operations between different fields throw MixedField.
class Scalar {
public:
    Scalar(Field field, long long value);
    Scalar(Field field, const Rational& value);

    static Scalar zero(Field field) { return Scalar(field, 0); }
    static Scalar one(Field field) { return Scalar(field, 1); }

    /// "num/den" or an integer; over GF(p) any integer is reduced mod p.
    static Scalar parse(Field field, std::string_view text);

    Field field() const noexcept { return field_; }
    bool is_zero() const noexcept;

    /// Throws ZeroInverse on zero.
    Scalar inverse() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Serialized form: "num/den" over Q, the residue in [0, p) over GF(p).
    std::string to_string() const;

    std::uint32_t residue() const noexcept { return residue_; }
    const Rational& rational() const noexcept { return rational_; }

private:
    void require_same_field(const Scalar& other) const;

    Field field_;
    std::uint32_t residue_ = 0;
    Rational rational_;
};

Scalar field_inverse(const Scalar& a);

struct Entry {
    std::uint32_t index;
    Scalar value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by index, no stored zeros.
using SparseVector = std::vector<Entry>;

/// Returns y + a*x. Both inputs must be sorted; the result is sorted and zero-free.
SparseVector axpy(const SparseVector& y, const Scalar& a, const SparseVector& x);

class SparseMatrix {
public:
    SparseMatrix(Field field, std::size_t rows, std::size_t cols);

    /// Row-major dense literal, for tests and small fixtures.
    static SparseMatrix from_dense(Field field, const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    Field field() const noexcept { return field_; }

    const SparseVector& column(std::size_t c) const { return columns_.at(c); }

    /// Validates ordering, bounds, field and absence of zeros.
    void set_column(std::size_t c, SparseVector column);

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& value);

    std::size_t nonzeros() const noexcept;
    bool is_zero() const noexcept { return nonzeros() == 0; }

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;

    /// Submatrix on the given (sorted) row and column index lists.
    SparseMatrix restrict(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> cols) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    Field field_;
    std::size_t rows_;
    std::vector<SparseVector> columns_;
};

struct ColumnReduction {
    std::size_t rank = 0;
    /// Pivot (lowest) row of each column after reduction, or npos for zero columns.
    std::vector<std::size_t> pivot_rows;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Column reduction with lowest-row pivots, columns processed left to right.
/// Columns flagged in `skip` are treated as zero (clearing).
ColumnReduction reduce_columns(const SparseMatrix& m, std::span<const char> skip = {});

std::size_t rank(const SparseMatrix& m);

/// Eliminates pivot (row, col): returns the matrix on the remaining rows and
/// columns with M'[i,j] = M[i,j] - M[i,col] * M[row,col]^-1 * M[row,j].
/// Throws PivotZero when M[row,col] = 0.
SparseMatrix reduce_pair(const SparseMatrix& m, std::size_t row, std::size_t col);

} // namespace cmvf
