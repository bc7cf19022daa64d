#include "defring/local_algebra.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

namespace defring {

namespace {

std::int64_t floor_mod(__int128 x, std::int64_t m) {
    auto r = static_cast<std::int64_t>(x % m);
    return r < 0 ? r + m : r;
}

__int128 floor_div(__int128 x, std::int64_t m) {
    __int128 q = x / m;
    if (x % m != 0 && x < 0) --q;
    return q;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
                                     static_cast<unsigned __int128>(m));
}

}  // namespace

ArtinLocalAlgebra::ArtinLocalAlgebra(std::int64_t p, std::string name, std::vector<std::string> labels,
                                     std::vector<int> log_orders, std::vector<Coeffs> carries,
                                     std::vector<std::vector<Coeffs>> structure)
    : p_(p),
      name_(std::move(name)),
      labels_(std::move(labels)),
      log_orders_(std::move(log_orders)),
      carries_(std::move(carries)),
      structure_(std::move(structure)) {
    validate();
}

void ArtinLocalAlgebra::validate() {
    const std::size_t r = labels_.size();
    if (!is_prime(p_)) throw InvalidParameter("algebra characteristic must be a prime power");
    if (r == 0 || r > kMaxBasis) throw InvalidParameter("algebra rank must be between 1 and 4");
    if (log_orders_.size() != r || carries_.size() != r || structure_.size() != r)
        throw InvalidParameter("algebra presentation has inconsistent sizes");
    for (std::size_t i = 0; i < r; ++i) {
        if (log_orders_[i] < 1) throw InvalidParameter("additive orders must be at least p");
        if (carries_[i].size() != r || structure_[i].size() != r)
            throw InvalidParameter("algebra presentation has inconsistent sizes");
        for (std::size_t k = 0; k <= i; ++k)
            if (carries_[i][k] != 0) throw InvalidParameter("carries must point to later basis elements");
        for (const auto& c : structure_[i])
            if (c.size() != r) throw InvalidParameter("structure constants have the wrong length");
    }

    order_.resize(r);
    for (std::size_t i = 0; i < r; ++i) order_[i] = ipow(p_, log_orders_[i]);
    total_order_ = order_;
    total_log_order_ = log_orders_;
    for (std::size_t i = r; i-- > 0;) {
        AlgElem y = make(carries_[i]);
        int e = 0;
        while (!(y == zero())) {
            y = scale(p_, y);
            if (++e > 62) throw InvalidParameter("carry relation does not terminate");
        }
        total_log_order_[i] = log_orders_[i] + e;
        total_order_[i] = ipow(p_, total_log_order_[i]);
    }
    size_ = 1;
    for (std::size_t i = 0; i < r; ++i) size_ *= static_cast<std::uint64_t>(order_[i]);

    auto e = [&](std::size_t i) { return basis(i); };
    for (std::size_t j = 0; j < r; ++j) {
        if (!(make(structure_[0][j]) == e(j)) || !(make(structure_[j][0]) == e(j)))
            throw InvalidParameter("e_0 is not the identity of " + name_);
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (!(make(structure_[i][j]) == make(structure_[j][i])))
                throw InvalidParameter("multiplication is not commutative in " + name_);
            if (i >= 1 && j >= 1 && floor_mod(structure_[i][j][0], p_) != 0)
                throw InvalidParameter("maximal ideal is not closed under multiplication in " + name_);
            // p^{N_i} e_i e_j must equal carry_i * e_j
            if (!(scale(order_[i], mul(e(i), e(j))) == mul(make(carries_[i]), e(j))))
                throw InvalidParameter("structure constants do not respect additive orders in " + name_);
            for (std::size_t k = 0; k < r; ++k)
                if (!(mul(mul(e(i), e(j)), e(k)) == mul(e(i), mul(e(j), e(k)))))
                    throw InvalidParameter("multiplication is not associative in " + name_);
        }

    // nilpotency of m = (p e_0, e_1, ..., e_r) via monomials in the generators
    std::vector<AlgElem> gens{from_int(p_)};
    for (std::size_t i = 1; i < r; ++i) gens.push_back(e(i));
    std::set<AlgElem> level;
    for (const auto& g : gens)
        if (!(g == zero())) level.insert(g);
    nilpotency_ = 1;
    while (!level.empty()) {
        std::set<AlgElem> next;
        for (const auto& a : level)
            for (const auto& g : gens) {
                AlgElem b = mul(a, g);
                if (!(b == zero())) next.insert(b);
            }
        level = std::move(next);
        if (++nilpotency_ > 512) throw InvalidParameter("maximal ideal of " + name_ + " is not nilpotent");
    }
}

void ArtinLocalAlgebra::normalize(std::array<__int128, kMaxBasis>& x, AlgElem& out) const {
    const std::size_t r = rank();
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t v = floor_mod(x[i], total_order_[i]);
        __int128 q = floor_div(v, order_[i]);
        out.c[i] = static_cast<std::int64_t>(v - q * order_[i]);
        if (q != 0)
            for (std::size_t k = i + 1; k < r; ++k) x[k] += q * carries_[i][k];
    }
    for (std::size_t i = r; i < kMaxBasis; ++i) out.c[i] = 0;
}

AlgElem ArtinLocalAlgebra::basis(std::size_t i) const {
    AlgElem a;
    a.c[i] = 1;
    return a;
}

AlgElem ArtinLocalAlgebra::from_int(std::int64_t v) const {
    std::array<__int128, kMaxBasis> x{};
    x[0] = v;
    AlgElem out;
    normalize(x, out);
    return out;
}

AlgElem ArtinLocalAlgebra::make(const Coeffs& coords) const {
    if (coords.size() > rank()) throw InvalidParameter("too many coordinates");
    std::array<__int128, kMaxBasis> x{};
    for (std::size_t i = 0; i < coords.size(); ++i) x[i] = coords[i];
    AlgElem out;
    normalize(x, out);
    return out;
}

AlgElem ArtinLocalAlgebra::add(const AlgElem& a, const AlgElem& b) const {
    std::array<__int128, kMaxBasis> x{};
    for (std::size_t i = 0; i < rank(); ++i) x[i] = static_cast<__int128>(a.c[i]) + b.c[i];
    AlgElem out;
    normalize(x, out);
    return out;
}

AlgElem ArtinLocalAlgebra::sub(const AlgElem& a, const AlgElem& b) const { return add(a, neg(b)); }

AlgElem ArtinLocalAlgebra::neg(const AlgElem& a) const { return scale(-1, a); }

AlgElem ArtinLocalAlgebra::scale(std::int64_t s, const AlgElem& a) const {
    std::array<__int128, kMaxBasis> x{};
    for (std::size_t i = 0; i < rank(); ++i)
        x[i] = mulmod(floor_mod(s, total_order_[i]), a.c[i], total_order_[i]);
    AlgElem out;
    normalize(x, out);
    return out;
}

AlgElem ArtinLocalAlgebra::mul(const AlgElem& a, const AlgElem& b) const {
    const std::size_t r = rank();
    std::array<__int128, kMaxBasis> x{};
    for (std::size_t i = 0; i < r; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
            if (b.c[j] == 0) continue;
            const auto& c = structure_[i][j];
            for (std::size_t k = 0; k < r; ++k) {
                if (c[k] == 0) continue;
                const std::int64_t m = total_order_[k];
                x[k] += mulmod(mulmod(a.c[i] % m, b.c[j] % m, m), floor_mod(c[k], m), m);
            }
        }
    }
    AlgElem out;
    normalize(x, out);
    return out;
}

AlgElem ArtinLocalAlgebra::pow(AlgElem a, std::uint64_t e) const {
    AlgElem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::int64_t ArtinLocalAlgebra::residue(const AlgElem& a) const { return a.c[0] % p_; }

AlgElem ArtinLocalAlgebra::inv(const AlgElem& a) const {
    const std::int64_t r = residue(a);
    if (r == 0) throw NotAUnit("element of " + name_ + " is not a unit");
    Zmod fp(p_, 1);
    AlgElem y = from_int(fp.inv(r));
    const AlgElem two = from_int(2);
    for (int it = 0; it < 64; ++it) {
        AlgElem ay = mul(a, y);
        if (ay == one()) return y;
        y = mul(y, sub(two, ay));
    }
    throw std::logic_error("Newton inversion did not converge");
}

std::uint64_t ArtinLocalAlgebra::index(const AlgElem& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        idx = idx * static_cast<std::uint64_t>(order_[i]) + static_cast<std::uint64_t>(a.c[i]);
    return idx;
}

AlgElem ArtinLocalAlgebra::element(std::uint64_t idx) const {
    AlgElem a;
    for (std::size_t i = rank(); i-- > 0;) {
        const auto o = static_cast<std::uint64_t>(order_[i]);
        a.c[i] = static_cast<std::int64_t>(idx % o);
        idx /= o;
    }
    return a;
}

std::vector<AlgElem> ArtinLocalAlgebra::elements() const {
    std::vector<AlgElem> out;
    out.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(element(i));
    return out;
}

std::vector<AlgElem> ArtinLocalAlgebra::max_ideal() const {
    std::vector<AlgElem> out;
    for (std::uint64_t i = 0; i < size_; ++i) {
        AlgElem a = element(i);
        if (in_max_ideal(a)) out.push_back(a);
    }
    return out;
}

std::string ArtinLocalAlgebra::to_string(const AlgElem& a) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0)
            os << a.c[0];
        else if (a.c[i] == 1)
            os << labels_[i];
        else
            os << a.c[i] << labels_[i];
    }
    if (first) os << '0';
    return os.str();
}

bool ArtinLocalAlgebra::same_presentation(const ArtinLocalAlgebra& o) const {
    if (p_ != o.p_ || rank() != o.rank() || log_orders_ != o.log_orders_) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (!(make(carries_[i]) == o.make(o.carries_[i]))) return false;
        for (std::size_t j = 0; j < rank(); ++j)
            if (!(make(structure_[i][j]) == o.make(o.structure_[i][j]))) return false;
    }
    return true;
}

namespace {

using Coeffs = ArtinLocalAlgebra::Coeffs;

// structure table of the monomial algebra with t^a t^b = t^{a+b} (zero past the last power)
std::vector<std::vector<Coeffs>> monomial_table(std::size_t r) {
    std::vector<std::vector<Coeffs>> s(r, std::vector<Coeffs>(r, Coeffs(r, 0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (i + j < r) s[i][j][i + j] = 1;
    return s;
}

std::vector<Coeffs> no_carries(std::size_t r) { return std::vector<Coeffs>(r, Coeffs(r, 0)); }

std::string pname(std::int64_t p, int e) { return std::to_string(ipow(p, e)); }

}  // namespace

AlgebraPtr make_ring_R(std::int64_t p, int n, int N) {
    if (n < 1 || n >= N) throw InvalidParameter("make_ring_R requires 1 <= n < N");
    return std::make_shared<ArtinLocalAlgebra>(p, "R(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",N=" +
                                                      std::to_string(N) + ")",
                                               std::vector<std::string>{"1", "t"}, std::vector<int>{N, n},
                                               no_carries(2), monomial_table(2));
}

AlgebraPtr make_ring_Rprime(std::int64_t p, int n, int N) {
    if (n < 1 || n >= N) throw InvalidParameter("make_ring_Rprime requires 1 <= n < N");
    return std::make_shared<ArtinLocalAlgebra>(p, "R'(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",N=" +
                                                      std::to_string(N) + ")",
                                               std::vector<std::string>{"1", "t", "t^2"}, std::vector<int>{N, n, 1},
                                               no_carries(3), monomial_table(3));
}

AlgebraPtr make_ring_Rprime_2_1(std::int64_t a_hat, int N) {
    if (N < 2) throw InvalidParameter("make_ring_Rprime_2_1 requires N >= 2");
    auto carries = no_carries(3);
    carries[1][2] = -a_hat;  // 2t = -a_hat t^2
    return std::make_shared<ArtinLocalAlgebra>(
        2, "R'_2,1(a=" + std::to_string(a_hat) + ",N=" + std::to_string(N) + ")",
        std::vector<std::string>{"1", "t", "t^2"}, std::vector<int>{N, 1, 1}, carries, monomial_table(3));
}

AlgebraPtr dual_numbers(std::int64_t p) {
    return std::make_shared<ArtinLocalAlgebra>(p, "F" + std::to_string(p) + "eps",
                                               std::vector<std::string>{"1", "eps"}, std::vector<int>{1, 1},
                                               no_carries(2), monomial_table(2));
}

AlgebraPtr truncated_polynomial(std::int64_t p, int m) {
    if (m < 1 || m > static_cast<int>(kMaxBasis)) throw InvalidParameter("F_p[t]/(t^m) needs 1 <= m <= 4");
    std::vector<std::string> labels{"1"};
    for (int i = 1; i < m; ++i) labels.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
    return std::make_shared<ArtinLocalAlgebra>(p, "F" + std::to_string(p) + "t" + std::to_string(m), labels,
                                               std::vector<int>(static_cast<std::size_t>(m), 1),
                                               no_carries(static_cast<std::size_t>(m)),
                                               monomial_table(static_cast<std::size_t>(m)));
}

AlgebraPtr zmod_algebra(std::int64_t p, int m) {
    return std::make_shared<ArtinLocalAlgebra>(p, "Z" + pname(p, m), std::vector<std::string>{"1"},
                                               std::vector<int>{m}, no_carries(1), monomial_table(1));
}

AlgebraPtr zp2_u(std::int64_t p) {
    return std::make_shared<ArtinLocalAlgebra>(p, "Z" + pname(p, 2) + "u", std::vector<std::string>{"1", "u"},
                                               std::vector<int>{2, 1}, no_carries(2), monomial_table(2));
}

namespace {

// q = p^e with p prime, or nullopt
std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    for (std::int64_t p = 2; p <= q; ++p) {
        if (q % p) continue;
        int e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        if (q != 1) return std::nullopt;
        return std::pair{p, e};
    }
    return std::nullopt;
}

}  // namespace

AlgebraPtr standard_ring(const std::string& name) {
    static const std::regex eps_re("F(\\d+)eps"), poly_re("F(\\d+)t(\\d+)"), zu_re("Z(\\d+)u"), z_re("Z(\\d+)");
    std::smatch m;
    auto prime = [&](const std::string& s) {
        std::int64_t p = std::stoll(s);
        if (!is_prime(p)) throw InvalidParameter("ring " + name + ": " + s + " is not prime");
        return p;
    };
    if (std::regex_match(name, m, eps_re)) return dual_numbers(prime(m[1]));
    if (std::regex_match(name, m, poly_re)) return truncated_polynomial(prime(m[1]), std::stoi(m[2]));
    if (std::regex_match(name, m, zu_re)) {
        auto pp = prime_power(std::stoll(m[1]));
        if (!pp || pp->second != 2) throw InvalidParameter("ring " + name + ": expected Z<p^2>u");
        return zp2_u(pp->first);
    }
    if (std::regex_match(name, m, z_re)) {
        auto pp = prime_power(std::stoll(m[1]));
        if (!pp) throw InvalidParameter("ring " + name + ": modulus is not a prime power");
        return zmod_algebra(pp->first, pp->second);
    }
    throw InvalidParameter("unknown test ring '" + name + "' (expected F<p>eps, F<p>t<m>, Z<q>, Z<p^2>u)");
}

std::vector<std::string> standard_ring_names(std::int64_t p) {
    return {"F" + std::to_string(p) + "eps", "Z" + pname(p, 2), "F" + std::to_string(p) + "t3", "Z" + pname(p, 3),
            "Z" + pname(p, 2) + "u"};
}

std::vector<AlgElem> count_homs_from_R(int n, const ArtinLocalAlgebra& A) {
    std::vector<AlgElem> out;
    const std::int64_t pn = ipow(A.p(), n);
    for (const auto& x : A.max_ideal())
        if (A.mul(x, x) == A.zero() && A.scale(pn, x) == A.zero()) out.push_back(x);
    return out;
}

AlgMatrix::AlgMatrix(AlgebraPtr A, std::size_t d) : A_(std::move(A)), d_(d), e_(d * d) {}

AlgMatrix AlgMatrix::identity(AlgebraPtr A, std::size_t d) {
    AlgMatrix m(A, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = A->one();
    return m;
}

AlgMatrix AlgMatrix::from_integers(AlgebraPtr A, const ResidueMatrix& m) {
    if (!m.is_square()) throw InvalidParameter("AlgMatrix must be square");
    AlgMatrix r(A, m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = A->from_int(m(i, j));
    return r;
}

AlgMatrix AlgMatrix::operator+(const AlgMatrix& o) const {
    AlgMatrix r(A_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = A_->add(e_[i], o.e_[i]);
    return r;
}

AlgMatrix AlgMatrix::operator-(const AlgMatrix& o) const {
    AlgMatrix r(A_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = A_->sub(e_[i], o.e_[i]);
    return r;
}

AlgMatrix AlgMatrix::operator*(const AlgMatrix& o) const {
    AlgMatrix r(A_, d_);
    const ArtinLocalAlgebra& A = *A_;
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) {
            AlgElem acc = A.zero();
            for (std::size_t k = 0; k < d_; ++k) {
                const AlgElem& a = e_[i * d_ + k];
                const AlgElem& b = o.e_[k * d_ + j];
                if (a == A.zero() || b == A.zero()) continue;
                acc = A.add(acc, A.mul(a, b));
            }
            r.e_[i * d_ + j] = acc;
        }
    return r;
}

AlgMatrix AlgMatrix::scaled(const AlgElem& a) const {
    AlgMatrix r(A_, d_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = A_->mul(a, e_[i]);
    return r;
}

AlgMatrix AlgMatrix::pow(std::uint64_t e) const {
    AlgMatrix r = identity(A_, d_), b(*this);
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

AlgMatrix AlgMatrix::inverse() const {
    ResidueMatrix rinv = residue().inverse();
    AlgMatrix x = from_integers(A_, rinv);
    const AlgMatrix two = identity(A_, d_).scaled(A_->from_int(2));
    for (int it = 0; it < 64; ++it) {
        AlgMatrix ax = (*this) * x;
        if (ax.is_identity()) return x;
        x = x * (two - ax);
    }
    throw std::logic_error("Newton inversion did not converge");
}

bool AlgMatrix::is_identity() const {
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            if (!(e_[i * d_ + j] == (i == j ? A_->one() : A_->zero()))) return false;
    return true;
}

ResidueMatrix AlgMatrix::residue() const {
    Zmod fp(A_->p(), 1);
    ResidueMatrix r(fp, d_, d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) r.set(i, j, A_->residue(e_[i * d_ + j]));
    return r;
}

std::uint64_t AlgMatrix::order(std::uint64_t cap) const {
    AlgMatrix x = *this;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (x.is_identity()) return k;
        x = x * (*this);
    }
    return 0;
}

std::string AlgMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < d_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < d_; ++j) os << (j ? ", " : "") << A_->to_string(e_[i * d_ + j]);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::vector<AlgMatrix> kernel_of_reduction(const AlgebraPtr& A, std::size_t d) {
    const auto m = A->max_ideal();
    const std::size_t cells = d * d;
    double count = 1;
    for (std::size_t i = 0; i < cells; ++i) count *= static_cast<double>(m.size());
    if (count > 1e6) throw InvalidParameter("kernel of reduction has more than 10^6 elements");
    std::vector<AlgMatrix> out;
    std::vector<std::size_t> idx(cells, 0);
    while (true) {
        AlgMatrix x = AlgMatrix::identity(A, d);
        for (std::size_t c = 0; c < cells; ++c) x(c / d, c % d) = A->add(x(c / d, c % d), m[idx[c]]);
        out.push_back(std::move(x));
        std::size_t k = cells;
        while (k > 0 && ++idx[k - 1] == m.size()) idx[--k] = 0;
        if (k == 0) break;
    }
    return out;
}

ElementTable::ElementTable(const ArtinLocalAlgebra& A) : n_(A.size()) {
    if (n_ > 1024) throw InvalidParameter("element tables are limited to 1024 elements");
    const auto els = A.elements();
    add_.resize(n_ * n_);
    mul_.resize(n_ * n_);
    neg_.resize(n_);
    residue_.resize(n_);
    for (std::size_t a = 0; a < n_; ++a) {
        neg_[a] = static_cast<std::uint16_t>(A.index(A.neg(els[a])));
        residue_[a] = A.residue(els[a]);
        for (std::size_t b = 0; b < n_; ++b) {
            add_[a * n_ + b] = static_cast<std::uint16_t>(A.index(A.add(els[a], els[b])));
            mul_[a * n_ + b] = static_cast<std::uint16_t>(A.index(A.mul(els[a], els[b])));
        }
    }
    one_ = static_cast<std::uint16_t>(A.index(A.one()));
}

}  // namespace defring
