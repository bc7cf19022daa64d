#include "defring/galois_ring.hpp"

#include <sstream>

namespace defring {

namespace {

bool is_square_mod(std::int64_t c, std::int64_t p) {
    for (std::int64_t y = 0; y < p; ++y)
        if (y * y % p == c % p) return true;
    return false;
}

}  // namespace

GaloisRing::GaloisRing(std::int64_t p, int N) : R_(p, N) {
    if (p == 2) {
        m0_ = 1;
        m1_ = 1;
    } else if (p % 4 == 3) {
        m0_ = 1;
        m1_ = 0;
    } else {
        std::int64_t c = 2;
        while (is_square_mod(c, p)) ++c;
        m0_ = R_.neg(R_.reduce(c));
        m1_ = 0;
    }
    m0_ = R_.reduce(m0_);
    m1_ = R_.reduce(m1_);

    // Newton refinement of the root congruent to x^p.
    frob_x_ = {0, 1};
    frob_x_ = pow(x(), static_cast<std::uint64_t>(p));
    for (int it = 0; it < N + 1; ++it) {
        GrElem r = frob_x_;
        GrElem m_r = add(add(mul(r, r), scale(m1_, r)), make(m0_, 0));
        GrElem dm = add(scale(2, r), make(m1_, 0));
        frob_x_ = sub(r, mul(m_r, inv(dm)));
    }
    const GrElem vieta = make(R_.neg(m1_), R_.neg(1));
    if (!(frob_x_ == vieta)) throw std::logic_error("Frobenius root disagrees with the Vieta conjugate");
}

std::string GaloisRing::modulus_string() const {
    std::ostringstream os;
    os << "x^2";
    if (m1_) os << " + " << m1_ << "x";
    os << " + " << m0_;
    return os.str();
}

GrElem GaloisRing::mul(const GrElem& a, const GrElem& b) const {
    // (a0 + a1 x)(b0 + b1 x) with x^2 = -m1 x - m0
    const std::int64_t s = R_.mul(a.c1, b.c1);
    const std::int64_t c0 = R_.sub(R_.mul(a.c0, b.c0), R_.mul(s, m0_));
    const std::int64_t c1 = R_.sub(R_.add(R_.mul(a.c0, b.c1), R_.mul(a.c1, b.c0)), R_.mul(s, m1_));
    return {c0, c1};
}

GrElem GaloisRing::pow(GrElem a, std::uint64_t e) const {
    GrElem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::int64_t GaloisRing::norm(const GrElem& a) const {
    // a0^2 - m1 a0 a1 + m0 a1^2
    return R_.add(R_.sub(R_.mul(a.c0, a.c0), R_.mul(m1_, R_.mul(a.c0, a.c1))), R_.mul(m0_, R_.mul(a.c1, a.c1)));
}

bool GaloisRing::is_unit(const GrElem& a) const { return R_.is_unit(norm(a)); }

GrElem GaloisRing::inv(const GrElem& a) const {
    const std::int64_t n = norm(a);
    if (!R_.is_unit(n)) throw NotAUnit("element of GR(p^N,2) is not a unit");
    // conjugate of a0 + a1 x is a0 + a1 (-m1 - x)
    GrElem conj = {R_.sub(a.c0, R_.mul(a.c1, m1_)), R_.neg(a.c1)};
    return scale(R_.inv(n), conj);
}

GrElem GaloisRing::frobenius(const GrElem& a) const { return add(make(a.c0, 0), scale(a.c1, frob_x_)); }

GrElem GaloisRing::teichmuller(const GrElem& u) const {
    if (!is_unit(u)) throw NotAUnit("teichmuller lift of a non-unit");
    const auto q2 = static_cast<std::uint64_t>(R_.p * R_.p);
    GrElem v = u;
    for (int i = 0; i <= R_.N; ++i) {
        GrElem w = pow(v, q2);
        if (w == v) return v;
        v = w;
    }
    return v;
}

GrElem GaloisRing::generator() const {
    const std::int64_t p = R_.p;
    const auto target = static_cast<std::uint64_t>(p * p - 1);
    GaloisRing residue(p, 1);
    for (std::int64_t idx = 1; idx < p * p; ++idx) {
        GrElem a = residue.make(idx % p, idx / p);
        if (residue.multiplicative_order(a) == target) return teichmuller(make(a.c0, a.c1));
    }
    throw std::logic_error("no generator of F_{p^2}^*");
}

ResidueMatrix GaloisRing::regular_matrix(const GrElem& a) const {
    // columns: a*1 = (a0, a1), a*x = (-m0 a1, a0 - m1 a1)
    return ResidueMatrix(R_, {{a.c0, R_.neg(R_.mul(m0_, a.c1))}, {a.c1, R_.sub(a.c0, R_.mul(m1_, a.c1))}});
}

ResidueMatrix GaloisRing::frobenius_matrix() const { return ResidueMatrix(R_, {{1, frob_x_.c0}, {0, frob_x_.c1}}); }

GrElem GaloisRing::element(std::uint64_t index) const {
    const auto q = static_cast<std::uint64_t>(R_.q);
    return {static_cast<std::int64_t>(index % q), static_cast<std::int64_t>(index / q)};
}

std::uint64_t GaloisRing::multiplicative_order(const GrElem& a) const {
    if (!is_unit(a)) throw NotAUnit("order of a non-unit");
    GrElem v = a;
    std::uint64_t k = 1;
    while (!(v == one())) {
        v = mul(v, a);
        ++k;
    }
    return k;
}

std::string GaloisRing::to_string(const GrElem& a) const {
    std::ostringstream os;
    os << a.c0 << " + " << a.c1 << "x";
    return os.str();
}

}  // namespace defring
