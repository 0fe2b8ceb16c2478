#include "postulate/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace postulate {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31)) throw std::invalid_argument("prime must be below 2^31");
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1 % p_;
    std::uint32_t base = a % p_;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
}

std::uint32_t PrimeField::from_rational(const Rational& q) const {
    BigInt num = boost::multiprecision::numerator(q) % p_;
    BigInt den = boost::multiprecision::denominator(q) % p_;
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    std::int64_t n = num.convert_to<std::int64_t>();
    std::int64_t d = den.convert_to<std::int64_t>();
    return mul(reduce(n), inv(reduce(d)));
}

DenseMatrix::DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

void DenseMatrix::append_row(std::span<const std::uint32_t> values) {
    if (values.size() != cols_) throw std::invalid_argument("append_row: wrong row length");
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

// Right-looking elimination with deferred reduction. Rows below the current
// pivot accumulate g * pivot_row[j] (each term < p^2) in 64-bit words and are
// only reduced where a value is actually needed: the pivot column scan and the
// pivot row itself. A full reduction pass is forced every `lazy_limit` pivots so
// the accumulators never overflow.
std::size_t rank(const DenseMatrix& matrix) {
    const std::uint64_t p = matrix.field().p();
    const std::size_t rows = matrix.rows();
    const std::size_t cols = matrix.cols();
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::uint64_t> work(matrix.entries().begin(), matrix.entries().end());
    std::vector<std::uint32_t> pivot(cols);
    const std::uint64_t lazy_limit = (std::numeric_limits<std::uint64_t>::max() - p) / ((p - 1) * (p - 1));
    std::uint64_t pending = 0;

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t found = rows;
        for (std::size_t i = r; i < rows; ++i) {
            std::uint64_t& v = work[i * cols + c];
            v %= p;
            if (v != 0) {
                found = i;
                break;
            }
        }
        if (found == rows) continue;
        if (found != r)
            std::swap_ranges(work.begin() + found * cols + c, work.begin() + found * cols + cols,
                             work.begin() + r * cols + c);

        std::uint64_t* prow = work.data() + r * cols;
        const std::uint64_t inv_pivot = matrix.field().inv(static_cast<std::uint32_t>(prow[c] % p));
        for (std::size_t j = c; j < cols; ++j) pivot[j] = static_cast<std::uint32_t>(prow[j] % p * inv_pivot % p);

        if (++pending >= lazy_limit) {
            for (std::size_t i = r + 1; i < rows; ++i)
                for (std::size_t j = c; j < cols; ++j) work[i * cols + j] %= p;
            pending = 1;
        }
        const std::uint32_t* pv = pivot.data();
        for (std::size_t i = r + 1; i < rows; ++i) {
            std::uint64_t* row = work.data() + i * cols;
            const std::uint64_t f = row[c] % p;
            if (f == 0) continue;
            const auto g = static_cast<std::uint32_t>(p - f);
            row[c] = 0;
            for (std::size_t j = c + 1; j < cols; ++j) row[j] += static_cast<std::uint64_t>(g) * pv[j];
        }
        ++r;
    }
    return r;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

DenseMatrix RationalMatrix::reduce_mod(const PrimeField& field) const {
    DenseMatrix out(field, rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = field.from_rational((*this)(r, c));
    return out;
}

std::size_t rational_rank(const RationalMatrix& matrix) {
    const std::size_t rows = matrix.rows();
    const std::size_t cols = matrix.cols();
    if (rows == 0 || cols == 0) return 0;

    // Scale each row by the lcm of its denominators: same rank, integer entries.
    std::vector<BigInt> a(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(matrix(i, j)));
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational& q = matrix(i, j);
            a[i * cols + j] = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
        }
    }

    // Bareiss: after each step all entries stay integral, divisions are exact.
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t found = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (a[i * cols + c] != 0) {
                found = i;
                break;
            }
        if (found == rows) continue;
        if (found != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[found * cols + j], a[r * cols + j]);
        const BigInt& piv = a[r * cols + c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            BigInt& lead = a[i * cols + c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt& v = a[i * cols + j];
                v = (piv * v - lead * a[r * cols + j]) / prev;
            }
            lead = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

}  // namespace postulate
