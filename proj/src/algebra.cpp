#include "cmvf/algebra.hpp"

#include "cmvf/error.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

namespace cmvf {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::uint32_t reduce_mod(long long value, std::uint32_t p)
{
    long long r = value % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mod(const boost::multiprecision::cpp_int& value, std::uint32_t p)
{
    boost::multiprecision::cpp_int r = value % p;
    if (r < 0)
        r += p;
    return r.convert_to<std::uint32_t>();
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p)
{
    std::uint64_t result = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1)
            result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

Field Field::prime(std::uint32_t p)
{
    if (!is_prime(p))
        throw Error(ErrorCode::ConfigError, "GF(p) requires a prime, got " + std::to_string(p));
    return Field(p);
}

Field Field::parse(std::string_view text)
{
    if (text == "Q")
        return rationals();
    std::string_view digits;
    if (text.starts_with("GF(") && text.ends_with(")"))
        digits = text.substr(3, text.size() - 4);
    else if (text.starts_with("GF:"))
        digits = text.substr(3);
    else
        throw Error(ErrorCode::ConfigError, "unknown field '" + std::string(text) + "'");
    std::uint32_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw Error(ErrorCode::ConfigError, "bad field characteristic in '" + std::string(text) + "'");
    return prime(p);
}

std::string Field::name() const
{
    return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(Field field, long long value) : field_(field)
{
    if (field_.is_rational())
        rational_ = value;
    else
        residue_ = reduce_mod(value, field_.characteristic());
}

Scalar::Scalar(Field field, const Rational& value) : field_(field)
{
    if (field_.is_rational()) {
        rational_ = value;
        return;
    }
    const std::uint32_t p = field_.characteristic();
    const std::uint32_t den = reduce_mod(boost::multiprecision::denominator(value), p);
    if (den == 0)
        throw Error(ErrorCode::ZeroInverse, "denominator vanishes in " + field_.name());
    const std::uint32_t num = reduce_mod(boost::multiprecision::numerator(value), p);
    residue_ = static_cast<std::uint32_t>(std::uint64_t(num) * pow_mod(den, p - 2, p) % p);
}

Scalar Scalar::parse(Field field, std::string_view text)
{
    auto parse_int = [&](std::string_view s) {
        if (s.empty() || s.find_first_not_of("+-0123456789") != std::string_view::npos ||
            s.find_first_of("0123456789") == std::string_view::npos)
            throw Error(ErrorCode::InvalidFormat, "bad scalar '" + std::string(text) + "'");
        if (s.front() == '+')
            s.remove_prefix(1);
        return boost::multiprecision::cpp_int(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Scalar(field, Rational(parse_int(text)));
    const auto num = parse_int(text.substr(0, slash));
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw Error(ErrorCode::InvalidFormat, "zero denominator in '" + std::string(text) + "'");
    return Scalar(field, Rational(num, den));
}

bool Scalar::is_zero() const noexcept
{
    return field_.is_rational() ? rational_ == 0 : residue_ == 0;
}

void Scalar::require_same_field(const Scalar& other) const
{
    if (!(field_ == other.field_))
        throw Error(ErrorCode::MixedField, field_.name() + " vs " + other.field_.name());
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw Error(ErrorCode::ZeroInverse, "inverse of zero in " + field_.name());
    Scalar result = *this;
    if (field_.is_rational())
        result.rational_ = 1 / rational_;
    else
        result.residue_ = pow_mod(residue_, field_.characteristic() - 2, field_.characteristic());
    return result;
}

Scalar Scalar::operator-() const
{
    Scalar result = *this;
    if (field_.is_rational())
        result.rational_ = -rational_;
    else if (residue_ != 0)
        result.residue_ = field_.characteristic() - residue_;
    return result;
}

Scalar& Scalar::operator+=(const Scalar& other)
{
    require_same_field(other);
    if (field_.is_rational())
        rational_ += other.rational_;
    else
        residue_ = static_cast<std::uint32_t>((std::uint64_t(residue_) + other.residue_) %
                                              field_.characteristic());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other)
{
    return *this += -other;
}

Scalar& Scalar::operator*=(const Scalar& other)
{
    require_same_field(other);
    if (field_.is_rational())
        rational_ *= other.rational_;
    else
        residue_ = static_cast<std::uint32_t>(std::uint64_t(residue_) * other.residue_ %
                                              field_.characteristic());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other)
{
    require_same_field(other);
    return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (!(a.field_ == b.field_))
        return false;
    return a.field_.is_rational() ? a.rational_ == b.rational_ : a.residue_ == b.residue_;
}

std::string Scalar::to_string() const
{
    if (!field_.is_rational())
        return std::to_string(residue_);
    return boost::multiprecision::numerator(rational_).str() + "/" +
           boost::multiprecision::denominator(rational_).str();
}

Scalar field_inverse(const Scalar& a)
{
    return a.inverse();
}

SparseVector axpy(const SparseVector& y, const Scalar& a, const SparseVector& x)
{
    SparseVector out;
    out.reserve(y.size() + x.size());
    auto iy = y.begin();
    auto ix = x.begin();
    while (iy != y.end() || ix != x.end()) {
        if (ix == x.end() || (iy != y.end() && iy->index < ix->index)) {
            out.push_back(*iy++);
        } else if (iy == y.end() || ix->index < iy->index) {
            Scalar v = a * ix->value;
            if (!v.is_zero())
                out.push_back({ix->index, std::move(v)});
            ++ix;
        } else {
            Scalar v = iy->value + a * ix->value;
            if (!v.is_zero())
                out.push_back({iy->index, std::move(v)});
            ++iy;
            ++ix;
        }
    }
    return out;
}

SparseMatrix::SparseMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), columns_(cols)
{
}

SparseMatrix SparseMatrix::from_dense(Field field, const std::vector<std::vector<long long>>& rows)
{
    const std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(field, rows.size(), n_cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n_cols)
            throw Error(ErrorCode::InvalidFormat, "ragged dense matrix literal");
        for (std::size_t c = 0; c < n_cols; ++c) {
            Scalar v(field, rows[r][c]);
            if (!v.is_zero())
                m.columns_[c].push_back({static_cast<std::uint32_t>(r), std::move(v)});
        }
    }
    return m;
}

void SparseMatrix::set_column(std::size_t c, SparseVector column)
{
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].index >= rows_ || (i > 0 && column[i - 1].index >= column[i].index) ||
            column[i].value.is_zero() || !(column[i].value.field() == field_))
            throw Error(ErrorCode::InvalidFormat, "malformed sparse column");
    }
    columns_.at(c) = std::move(column);
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.index < row; });
    if (it != col.end() && it->index == r)
        return it->value;
    return Scalar::zero(field_);
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& value)
{
    if (r >= rows_)
        throw Error(ErrorCode::InvalidFormat, "row out of range");
    auto& col = columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, std::size_t row) { return e.index < row; });
    const bool present = it != col.end() && it->index == r;
    if (value.is_zero()) {
        if (present)
            col.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        col.insert(it, {static_cast<std::uint32_t>(r), value});
    }
}

std::size_t SparseMatrix::nonzeros() const noexcept
{
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += col.size();
    return n;
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(field_, cols(), rows_);
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& e : columns_[c])
            t.columns_[e.index].push_back({static_cast<std::uint32_t>(c), e.value});
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const
{
    if (cols() != rhs.rows_)
        throw Error(ErrorCode::InvalidFormat, "matrix product shape mismatch");
    if (!(field_ == rhs.field_))
        throw Error(ErrorCode::MixedField, field_.name() + " vs " + rhs.field_.name());
    SparseMatrix out(field_, rows_, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        SparseVector acc;
        for (const auto& e : rhs.columns_[c])
            acc = axpy(acc, e.value, columns_[e.index]);
        out.columns_[c] = std::move(acc);
    }
    return out;
}

SparseMatrix SparseMatrix::restrict(std::span<const std::uint32_t> rows,
                                    std::span<const std::uint32_t> cols) const
{
    std::vector<std::int64_t> row_map(rows_, -1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        row_map.at(rows[i]) = static_cast<std::int64_t>(i);
    SparseMatrix out(field_, rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto& dst = out.columns_[j];
        for (const auto& e : columns_.at(cols[j]))
            if (row_map[e.index] >= 0)
                dst.push_back({static_cast<std::uint32_t>(row_map[e.index]), e.value});
        std::sort(dst.begin(), dst.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    }
    return out;
}

ColumnReduction reduce_columns(const SparseMatrix& m, std::span<const char> skip)
{
    ColumnReduction result;
    result.pivot_rows.assign(m.cols(), ColumnReduction::npos);
    // pivot row -> reduced column owning it
    std::unordered_map<std::uint32_t, SparseVector> owner;
    owner.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!skip.empty() && skip[c])
            continue;
        SparseVector col = m.column(c);
        while (!col.empty()) {
            auto it = owner.find(col.front().index);
            if (it == owner.end())
                break;
            const SparseVector& other = it->second;
            col = axpy(col, -(col.front().value / other.front().value), other);
        }
        if (col.empty())
            continue;
        result.pivot_rows[c] = col.front().index;
        ++result.rank;
        const std::uint32_t pivot = col.front().index;
        owner.emplace(pivot, std::move(col));
    }
    return result;
}

std::size_t rank(const SparseMatrix& m)
{
    return reduce_columns(m).rank;
}

SparseMatrix reduce_pair(const SparseMatrix& m, std::size_t row, std::size_t col)
{
    if (row >= m.rows() || col >= m.cols())
        throw Error(ErrorCode::InvalidFormat, "pivot out of range");
    const Scalar pivot = m.at(row, col);
    if (pivot.is_zero())
        throw Error(ErrorCode::PivotZero, "M[" + std::to_string(row) + "," + std::to_string(col) + "] = 0");
    const Scalar pivot_inv = pivot.inverse();
    const SparseVector& pivot_col = m.column(col);

    SparseMatrix out(m.field(), m.rows() - 1, m.cols() - 1);
    auto shift = [row](std::uint32_t i) { return i > row ? i - 1 : i; };
    for (std::size_t j = 0, k = 0; j < m.cols(); ++j) {
        if (j == col)
            continue;
        SparseVector updated = m.column(j);
        const Scalar factor = m.at(row, j);
        if (!factor.is_zero())
            updated = axpy(updated, -(factor * pivot_inv), pivot_col);
        SparseVector shifted;
        shifted.reserve(updated.size());
        for (auto& e : updated)
            if (e.index != row)
                shifted.push_back({shift(e.index), std::move(e.value)});
        out.set_column(k++, std::move(shifted));
    }
    return out;
}

} // namespace cmvf
