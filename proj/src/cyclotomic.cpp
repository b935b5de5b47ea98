#include "lfnp/cyclotomic.hpp"

#include <sstream>

#include "lfnp/errors.hpp"

namespace lfnp::exact {

CycInt::CycInt(std::uint32_t p, std::vector<BigInt> canonical_coords)
    : p_(p), c_(std::move(canonical_coords)) {
    if (p_ < 3) throw usage_error("CycInt: p must be an odd prime >= 3");
    if (c_.size() != p_ - 1) throw usage_error("CycInt: expected p-1 coordinates");
}

CycInt CycInt::integer(std::uint32_t p, const BigInt& n) {
    CycInt r(p);
    r.c_[0] = n;
    return r;
}

CycInt CycInt::zeta_pow(std::uint32_t p, long k) {
    long e = k % static_cast<long>(p);
    if (e < 0) e += p;
    std::vector<BigInt> raw(p, BigInt(0));
    raw[static_cast<std::size_t>(e)] = 1;
    return cyc_from_residue_vector(raw, p);
}

bool CycInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

void CycInt::check_compat(const CycInt& o) const {
    if (p_ != o.p_) throw usage_error("CycInt: mismatched p");
}

CycInt CycInt::operator+(const CycInt& o) const {
    check_compat(o);
    CycInt r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
    check_compat(o);
    CycInt r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CycInt CycInt::operator-() const {
    CycInt r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    check_compat(o);
    // Convolution mod X^p - 1 on the embedded length-p vectors, then reduce.
    std::vector<BigInt> raw(p_, BigInt(0));
    for (std::uint32_t i = 0; i + 1 < p_; ++i) {
        if (c_[i] == 0) continue;
        for (std::uint32_t j = 0; j + 1 < p_; ++j) {
            if (o.c_[j] == 0) continue;
            raw[(i + j) % p_] += c_[i] * o.c_[j];
        }
    }
    return cyc_from_residue_vector(raw, p_);
}

CycInt CycInt::galois(std::uint32_t j) const {
    if (j % p_ == 0) throw usage_error("CycInt::galois: j must be prime to p");
    std::vector<BigInt> raw(p_, BigInt(0));
    for (std::uint32_t i = 0; i + 1 < p_; ++i)
        raw[static_cast<std::size_t>(std::uint64_t(i) * j % p_)] += c_[i];
    return cyc_from_residue_vector(raw, p_);
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i].str();
    }
    os << "]";
    return os.str();
}

CycInt cyc_from_residue_vector(const std::vector<BigInt>& raw, std::uint32_t p) {
    if (raw.size() != p) throw usage_error("cyc_from_residue_vector: need exactly p entries");
    std::vector<BigInt> c(p - 1);
    for (std::uint32_t i = 0; i + 1 < p; ++i) c[i] = raw[i] - raw[p - 1];
    return CycInt(p, std::move(c));
}

CycInt cyc_from_residue_vector(const std::vector<std::int64_t>& raw, std::uint32_t p) {
    std::vector<BigInt> b(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) b[i] = raw[i];
    return cyc_from_residue_vector(b, p);
}

CycInt divide_one_minus_zeta(const CycInt& x) {
    const std::uint32_t p = x.p();
    // x(X) = (1-X) * Q(X) + x(1); then x/(1-zeta) = Q(zeta) + (x(1)/p) * w
    // with w = p/(1-zeta) = prod_{j=2}^{p-1} (1 - zeta^j), an algebraic integer.
    BigInt s = 0;
    for (const auto& v : x.coords()) s += v;
    if (s % p != 0) throw internal_error("divide_one_minus_zeta: not divisible");

    // Q(X) = -(x(X) - x(1))/(X - 1), computed by synthetic division.
    // x(X) - x(1) has coefficients c_0 - s, c_1, ..., c_{p-2}.
    const auto& c = x.coords();
    std::vector<BigInt> q(p, BigInt(0)); // degree <= p-3 but keep slack
    // Divide sum d_i X^i (d_0 = c_0 - s, d_i = c_i) by (X - 1): Horner from top.
    BigInt acc = 0;
    for (long i = static_cast<long>(p) - 2; i >= 1; --i) {
        acc += c[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(i - 1)] = acc;
    }
    // remainder check: acc + (c_0 - s) == 0
    if (acc + c[0] - s != 0) throw internal_error("divide_one_minus_zeta: division remainder");
    // (X-1)*Q' = x - x(1)  =>  (1-X)*(-Q') = x - x(1)
    for (auto& v : q) v = -v;
    CycInt quotient = cyc_from_residue_vector(q, p);

    static thread_local std::vector<std::pair<std::uint32_t, CycInt>> wcache;
    const CycInt* w = nullptr;
    for (const auto& e : wcache)
        if (e.first == p) { w = &e.second; break; }
    if (!w) {
        CycInt prod = CycInt::integer(p, 1);
        for (std::uint32_t j = 2; j < p; ++j)
            prod *= (CycInt::integer(p, 1) - CycInt::zeta_pow(p, j));
        wcache.emplace_back(p, prod);
        w = &wcache.back().second;
    }
    return quotient + CycInt::integer(p, s / p) * *w;
}

Valuation valuation_one_minus_zeta(const CycInt& x) {
    if (x.is_zero()) return Valuation::inf();
    const std::uint32_t p = x.p();
    CycInt cur = x;
    long v = 0;
    for (;;) {
        BigInt s = 0;
        for (const auto& coord : cur.coords()) s += coord;
        if (s % p != 0) return Valuation::of(BigRat(v));
        cur = divide_one_minus_zeta(cur);
        ++v;
        if (cur.is_zero()) throw internal_error("valuation: zero after division of nonzero");
    }
}

Valuation ord_q(const CycInt& x, std::uint32_t a) {
    Valuation v = valuation_one_minus_zeta(x);
    if (v.infinite) return v;
    return Valuation::of(v.value / (BigRat(x.p() - 1) * a));
}

// ---- CycRat ----

CycRat::CycRat(const CycInt& x) : p_(x.p()), c_(x.p() - 1) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = BigRat(x.coords()[i]);
}

CycRat CycRat::operator+(const CycRat& o) const {
    if (p_ != o.p_) throw usage_error("CycRat: mismatched p");
    CycRat r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

CycRat CycRat::operator-(const CycRat& o) const {
    if (p_ != o.p_) throw usage_error("CycRat: mismatched p");
    CycRat r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

CycRat CycRat::operator*(const CycRat& o) const {
    if (p_ != o.p_) throw usage_error("CycRat: mismatched p");
    std::vector<BigRat> raw(p_, BigRat(0));
    for (std::uint32_t i = 0; i + 1 < p_; ++i) {
        if (c_[i] == 0) continue;
        for (std::uint32_t j = 0; j + 1 < p_; ++j) {
            if (o.c_[j] == 0) continue;
            raw[(i + j) % p_] += c_[i] * o.c_[j];
        }
    }
    CycRat r(p_);
    for (std::uint32_t i = 0; i + 1 < p_; ++i) r.c_[i] = raw[i] - raw[p_ - 1];
    return r;
}

CycRat CycRat::divided_by(const BigInt& n) const {
    if (n == 0) throw usage_error("CycRat: division by zero");
    CycRat r(p_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] / BigRat(n);
    return r;
}

bool CycRat::is_integral() const {
    for (const auto& v : c_)
        if (rat_den(v) != 1) return false;
    return true;
}

CycInt CycRat::to_int() const {
    std::vector<BigInt> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (rat_den(c_[i]) != 1)
            throw internal_error("CycRat::to_int: non-integral coordinate " + c_[i].str());
        c[i] = rat_num(c_[i]);
    }
    return CycInt(p_, std::move(c));
}

} // namespace lfnp::exact
