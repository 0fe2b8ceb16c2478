#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "postulate/scheme.hpp"

namespace postulate {

inline constexpr std::uint32_t kDefaultPrime = 31991;

bool is_prime(std::uint64_t n);

// GF(p) with elements stored as integers in [0, p).
class PrimeField {
public:
    // Throws std::invalid_argument unless p is a prime below 2^31.
    explicit PrimeField(std::uint32_t p = kDefaultPrime);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    // Throws std::domain_error on zero.
    std::uint32_t inv(std::uint32_t a) const;
    // Throws std::domain_error when the denominator vanishes mod p.
    std::uint32_t from_rational(const Rational& q) const;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t p_;
};

// Row-major matrix over a prime field.
class DenseMatrix {
public:
    DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    std::uint32_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<std::uint32_t> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::span<const std::uint32_t> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<const std::uint32_t> entries() const { return entries_; }

    void append_row(std::span<const std::uint32_t> values);
    DenseMatrix transposed() const;

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> entries_;
};

// Rank over GF(p). The argument is left untouched.
std::size_t rank(const DenseMatrix& matrix);

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    // Entry-wise reduction; throws std::domain_error if a denominator vanishes mod p.
    DenseMatrix reduce_mod(const PrimeField& field) const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

// Exact rank over Q (fraction-free elimination on row-scaled integers).
std::size_t rational_rank(const RationalMatrix& matrix);

}  // namespace postulate
