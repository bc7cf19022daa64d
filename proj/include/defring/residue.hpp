#pragma once

/**
 * @file residue.hpp
 * @brief Exact arithmetic in Z/p^N and dense matrices over it.
 *
 * Z/p^N stands in for the truncated Witt vectors W(F_p) = Z_p. Moduli are
 * bounded by 2^62 so every product fits an unsigned 128-bit intermediate.
 */

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace defring {

class NotAUnit : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool is_prime(std::int64_t n);

/// p^e, throwing if the result would leave the 2^62 budget.
std::int64_t ipow(std::int64_t p, int e);

/// p-adic valuation of x in Z/p^N; returns N for x == 0.
int valuation(std::int64_t x, std::int64_t p, int N);

/// The ring Z/p^N. Cheap to copy; compared by value.
struct Zmod {
    std::int64_t p = 2;
    int N = 1;
    std::int64_t q = 2;

    Zmod() = default;
    Zmod(std::int64_t prime, int precision);

    std::int64_t reduce(std::int64_t x) const {
        x %= q;
        return x < 0 ? x + q : x;
    }
    std::int64_t reduce128(__int128 x) const {
        auto r = static_cast<std::int64_t>(x % q);
        return r < 0 ? r + q : r;
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(a + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : q - a; }
    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        return static_cast<std::int64_t>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                                         static_cast<unsigned __int128>(q));
    }
    std::int64_t pow(std::int64_t a, std::uint64_t e) const;
    bool is_unit(std::int64_t a) const { return a % p != 0; }
    /// Inverse of a unit; throws NotAUnit otherwise.
    std::int64_t inv(std::int64_t a) const;
    int val(std::int64_t a) const { return valuation(a, p, N); }
    /// The same prime at a different precision.
    Zmod with_precision(int precision) const { return Zmod(p, precision); }

    bool operator==(const Zmod& o) const { return p == o.p && N == o.N; }
};

/// An element of Z/p^N carrying its ring.
class ResidueInt {
public:
    ResidueInt() = default;
    ResidueInt(Zmod ring, std::int64_t v) : ring_(ring), value_(ring.reduce(v)) {}

    const Zmod& ring() const { return ring_; }
    std::int64_t value() const { return value_; }
    int valuation() const { return ring_.val(value_); }
    bool is_unit() const { return ring_.is_unit(value_); }

    ResidueInt operator+(const ResidueInt& o) const { return {ring_, ring_.add(value_, o.value_)}; }
    ResidueInt operator-(const ResidueInt& o) const { return {ring_, ring_.sub(value_, o.value_)}; }
    ResidueInt operator*(const ResidueInt& o) const { return {ring_, ring_.mul(value_, o.value_)}; }
    ResidueInt operator-() const { return {ring_, ring_.neg(value_)}; }
    ResidueInt inverse() const { return {ring_, ring_.inv(value_)}; }
    ResidueInt pow(std::uint64_t e) const { return {ring_, ring_.pow(value_, e)}; }

    bool operator==(const ResidueInt& o) const { return ring_ == o.ring_ && value_ == o.value_; }

private:
    Zmod ring_;
    std::int64_t value_ = 0;
};

/// Dense row-major matrix over Z/p^N.
class ResidueMatrix {
public:
    ResidueMatrix() = default;
    ResidueMatrix(Zmod ring, std::size_t rows, std::size_t cols);
    ResidueMatrix(Zmod ring, std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries);
    ResidueMatrix(Zmod ring, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static ResidueMatrix identity(Zmod ring, std::size_t n);

    const Zmod& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = ring_.reduce(v); }
    ResidueInt at(std::size_t i, std::size_t j) const { return {ring_, (*this)(i, j)}; }
    std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    const std::vector<std::int64_t>& data() const { return data_; }

    ResidueMatrix operator+(const ResidueMatrix& o) const;
    ResidueMatrix operator-(const ResidueMatrix& o) const;
    ResidueMatrix operator*(const ResidueMatrix& o) const;
    ResidueMatrix scaled(std::int64_t c) const;
    ResidueMatrix transpose() const;
    std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;

    bool is_zero() const;
    bool is_identity() const;
    /// Entry-wise reduction to a lower precision of the same prime.
    ResidueMatrix reduced(int precision) const;
    /// Entry-wise lift of the canonical representatives to a higher precision.
    ResidueMatrix lifted(int precision) const;
    /// Inverse over Z/p^N; throws NotAUnit when the determinant is not a unit.
    ResidueMatrix inverse() const;
    ResidueMatrix pow(std::uint64_t e) const;

    bool operator==(const ResidueMatrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    auto operator<=>(const ResidueMatrix& o) const { return data_ <=> o.data_; }

    std::string to_string() const;

private:
    Zmod ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

/// Kronecker product a (x) b.
ResidueMatrix kron(const ResidueMatrix& a, const ResidueMatrix& b);

/// Row-major vectorisation helpers for d x d matrices.
std::vector<std::int64_t> vec(const ResidueMatrix& m);
ResidueMatrix unvec(Zmod ring, std::span<const std::int64_t> v, std::size_t rows, std::size_t cols);

}  // namespace defring
