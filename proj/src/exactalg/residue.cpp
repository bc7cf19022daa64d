#include "defring/residue.hpp"

#include <sstream>

namespace defring {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t ipow(std::int64_t p, int e) {
    if (e < 0) throw InvalidParameter("negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t{1} << 62) / p) throw InvalidParameter("modulus exceeds 2^62");
        r *= p;
    }
    return r;
}

int valuation(std::int64_t x, std::int64_t p, int N) {
    if (x == 0) return N;
    int v = 0;
    while (x % p == 0 && v < N) {
        x /= p;
        ++v;
    }
    return v;
}

Zmod::Zmod(std::int64_t prime, int precision) : p(prime), N(precision) {
    if (!is_prime(prime)) throw InvalidParameter("p must be prime, got " + std::to_string(prime));
    if (precision < 1) throw InvalidParameter("precision N must be >= 1");
    q = ipow(prime, precision);
}

std::int64_t Zmod::pow(std::int64_t a, std::uint64_t e) const {
    std::int64_t r = reduce(1), b = reduce(a);
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::int64_t Zmod::inv(std::int64_t a) const {
    a = reduce(a);
    if (!is_unit(a)) throw NotAUnit(std::to_string(a) + " is not a unit mod " + std::to_string(q));
    // extended Euclid on (a, q)
    __int128 r0 = q, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 t = r0 / r1;
        __int128 tmp = r0 - t * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - t * s1;
        s0 = s1;
        s1 = tmp;
    }
    return reduce128(s0);
}

ResidueMatrix::ResidueMatrix(Zmod ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ResidueMatrix::ResidueMatrix(Zmod ring, std::size_t rows, std::size_t cols, std::vector<std::int64_t> entries)
    : ring_(ring), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw InvalidParameter("entry count does not match matrix shape");
    for (auto& x : data_) x = ring_.reduce(x);
}

ResidueMatrix::ResidueMatrix(Zmod ring, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : ring_(ring), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InvalidParameter("ragged matrix literal");
        for (auto x : r) data_.push_back(ring_.reduce(x));
    }
}

ResidueMatrix ResidueMatrix::identity(Zmod ring, std::size_t n) {
    ResidueMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = ring.reduce(1);
    return m;
}

ResidueMatrix ResidueMatrix::operator+(const ResidueMatrix& o) const {
    ResidueMatrix r(ring_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.add(data_[i], o.data_[i]);
    return r;
}

ResidueMatrix ResidueMatrix::operator-(const ResidueMatrix& o) const {
    ResidueMatrix r(ring_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.sub(data_[i], o.data_[i]);
    return r;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
    if (cols_ != o.rows_) throw InvalidParameter("matrix shapes do not compose");
    ResidueMatrix r(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            unsigned __int128 acc = 0;
            for (std::size_t k = 0; k < cols_; ++k)
                acc += static_cast<unsigned __int128>(data_[i * cols_ + k]) *
                       static_cast<unsigned __int128>(o.data_[k * o.cols_ + j]);
            r.data_[i * o.cols_ + j] = static_cast<std::int64_t>(acc % static_cast<unsigned __int128>(ring_.q));
        }
    return r;
}

ResidueMatrix ResidueMatrix::scaled(std::int64_t c) const {
    ResidueMatrix r(*this);
    c = ring_.reduce(c);
    for (auto& x : r.data_) x = ring_.mul(x, c);
    return r;
}

ResidueMatrix ResidueMatrix::transpose() const {
    ResidueMatrix r(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
    return r;
}

std::vector<std::int64_t> ResidueMatrix::apply(std::span<const std::int64_t> x) const {
    if (x.size() != cols_) throw InvalidParameter("vector length does not match matrix");
    std::vector<std::int64_t> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t k = 0; k < cols_; ++k)
            acc += static_cast<unsigned __int128>(data_[i * cols_ + k]) *
                   static_cast<unsigned __int128>(ring_.reduce(x[k]));
        y[i] = static_cast<std::int64_t>(acc % static_cast<unsigned __int128>(ring_.q));
    }
    return y;
}

bool ResidueMatrix::is_zero() const {
    for (auto x : data_)
        if (x != 0) return false;
    return true;
}

bool ResidueMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (data_[i * cols_ + j] != (i == j ? ring_.reduce(1) : 0)) return false;
    return true;
}

ResidueMatrix ResidueMatrix::reduced(int precision) const {
    if (precision > ring_.N) throw InvalidParameter("cannot reduce to a higher precision");
    Zmod r = ring_.with_precision(precision);
    return ResidueMatrix(r, rows_, cols_, data_);
}

ResidueMatrix ResidueMatrix::lifted(int precision) const {
    if (precision < ring_.N) throw InvalidParameter("cannot lift to a lower precision");
    return ResidueMatrix(ring_.with_precision(precision), rows_, cols_, data_);
}

ResidueMatrix ResidueMatrix::inverse() const {
    if (rows_ != cols_) throw InvalidParameter("inverse of a non-square matrix");
    const std::size_t n = rows_;
    ResidueMatrix a(*this);
    ResidueMatrix inv = identity(ring_, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (ring_.is_unit(a.data_[r * n + c])) {
                piv = r;
                break;
            }
        if (piv == n) throw NotAUnit("matrix is singular modulo p");
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.data_[piv * n + j], a.data_[c * n + j]);
                std::swap(inv.data_[piv * n + j], inv.data_[c * n + j]);
            }
        std::int64_t u = ring_.inv(a.data_[c * n + c]);
        for (std::size_t j = 0; j < n; ++j) {
            a.data_[c * n + j] = ring_.mul(a.data_[c * n + j], u);
            inv.data_[c * n + j] = ring_.mul(inv.data_[c * n + j], u);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a.data_[r * n + c] == 0) continue;
            std::int64_t f = a.data_[r * n + c];
            for (std::size_t j = 0; j < n; ++j) {
                a.data_[r * n + j] = ring_.sub(a.data_[r * n + j], ring_.mul(f, a.data_[c * n + j]));
                inv.data_[r * n + j] = ring_.sub(inv.data_[r * n + j], ring_.mul(f, inv.data_[c * n + j]));
            }
        }
    }
    return inv;
}

ResidueMatrix ResidueMatrix::pow(std::uint64_t e) const {
    ResidueMatrix r = identity(ring_, rows_), b(*this);
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string ResidueMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << data_[i * cols_ + j];
        os << ']';
    }
    os << ']';
    return os.str();
}

ResidueMatrix kron(const ResidueMatrix& a, const ResidueMatrix& b) {
    const Zmod& R = a.ring();
    ResidueMatrix r(R, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            auto aij = a(i, j);
            if (aij == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.set(i * b.rows() + k, j * b.cols() + l, R.mul(aij, b(k, l)));
        }
    return r;
}

std::vector<std::int64_t> vec(const ResidueMatrix& m) { return m.data(); }

ResidueMatrix unvec(Zmod ring, std::span<const std::int64_t> v, std::size_t rows, std::size_t cols) {
    return ResidueMatrix(ring, rows, cols, std::vector<std::int64_t>(v.begin(), v.end()));
}

}  // namespace defring
