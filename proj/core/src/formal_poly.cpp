#include "dimer/formal_poly.hpp"

#include <algorithm>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

PolyRing::PolyRing(int mm) : mm_(mm) {
    if (mm < 1) throw InvalidParameterError("PolyRing: mm must be >= 1");
    names_.push_back("j");
    names_.push_back("z");
    names_.push_back("rh");
    for (int v = 1; v <= mm + 1; ++v) names_.push_back("u" + std::to_string(v));
    for (int s = 1; s <= mm; ++s) names_.push_back("ch" + std::to_string(s));
    num_vars_ = static_cast<int>(names_.size());
}

int PolyRing::var_u(int v) const {
    if (v < 1 || v > mm_ + 1) throw InvalidParameterError("PolyRing::var_u: index out of range");
    return 2 + v;
}

int PolyRing::var_ch(int s) const {
    if (s < 1 || s > mm_) throw InvalidParameterError("PolyRing::var_ch: index out of range");
    return 3 + (mm_ + 1) + (s - 1);
}

FormalPoly FormalPoly::constant(const PolyRing* ring, const BigRat& value) {
    FormalPoly out(ring);
    if (value != 0) out.terms_.emplace(ExpVec(static_cast<size_t>(ring->num_vars()), 0), value);
    return out;
}

FormalPoly FormalPoly::variable(const PolyRing* ring, int var, int power) {
    if (var < 0 || var >= ring->num_vars())
        throw InvalidParameterError("FormalPoly::variable: bad index");
    if (power < 0) throw InvalidParameterError("FormalPoly::variable: negative power");
    FormalPoly out(ring);
    ExpVec e(static_cast<size_t>(ring->num_vars()), 0);
    e[static_cast<size_t>(var)] = static_cast<unsigned short>(power);
    out.terms_.emplace(std::move(e), BigRat(1));
    return out;
}

void FormalPoly::add_term(const ExpVec& exponents, const BigRat& coeff) {
    // GMP comparisons assume canonical rationals; normalize at the entry
    // point so externally built coefficients cannot poison the map.
    BigRat canon = coeff;
    canon.canonicalize();
    if (canon == 0) return;
    if (z_trunc_ >= 0 && exponents[static_cast<size_t>(ring_->var_z())] > z_trunc_) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, canon);
    } else {
        it->second += canon;
        if (it->second == 0) terms_.erase(it);
    }
}

namespace {
const PolyRing* common_ring(const FormalPoly& a, const FormalPoly& b) {
    if (a.ring() && b.ring() && a.ring() != b.ring())
        throw InvalidParameterError("FormalPoly: mixed rings");
    return a.ring() ? a.ring() : b.ring();
}

int merged_trunc(int a, int b) {
    if (a < 0) return b;
    if (b < 0) return a;
    return std::min(a, b);
}
}  // namespace

FormalPoly with_truncation(FormalPoly poly, int order) {
    poly.set_trunc(order);
    return poly;
}

FormalPoly FormalPoly::operator+(const FormalPoly& other) const {
    FormalPoly out(common_ring(*this, other));
    out.z_trunc_ = merged_trunc(z_trunc_, other.z_trunc_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    for (const auto& [e, c] : other.terms_) out.add_term(e, c);
    return out;
}

FormalPoly FormalPoly::operator-(const FormalPoly& other) const {
    FormalPoly out(common_ring(*this, other));
    out.z_trunc_ = merged_trunc(z_trunc_, other.z_trunc_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    for (const auto& [e, c] : other.terms_) out.add_term(e, BigRat(-c));
    return out;
}

FormalPoly FormalPoly::operator*(const FormalPoly& other) const {
    FormalPoly out(common_ring(*this, other));
    out.z_trunc_ = merged_trunc(z_trunc_, other.z_trunc_);
    const size_t nv = terms_.empty() ? other.terms_.empty() ? 0 : other.terms_.begin()->first.size()
                                     : terms_.begin()->first.size();
    ExpVec sum(nv, 0);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            for (size_t i = 0; i < nv; ++i)
                sum[i] = static_cast<unsigned short>(ea[i] + eb[i]);
            out.add_term(sum, ca * cb);
        }
    }
    return out;
}

FormalPoly FormalPoly::operator*(const BigRat& scalar) const {
    FormalPoly out(ring_);
    out.z_trunc_ = z_trunc_;
    if (scalar == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * scalar);
    return out;
}

bool FormalPoly::operator==(const FormalPoly& other) const { return terms_ == other.terms_; }

FormalPoly FormalPoly::pow(int exponent) const {
    if (exponent < 0) throw InvalidParameterError("FormalPoly::pow: negative exponent");
    FormalPoly out = constant(ring_, BigRat(1));
    out.z_trunc_ = z_trunc_;
    for (int i = 0; i < exponent; ++i) out = out * *this;
    return out;
}

FormalPoly FormalPoly::truncate_z(int order) const {
    FormalPoly out(ring_);
    out.z_trunc_ = order;
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

FormalPoly FormalPoly::shift_j(long shift) const {
    if (!ring_) return *this;
    const int jv = ring_->var_j();
    FormalPoly out(ring_);
    out.z_trunc_ = z_trunc_;
    for (const auto& [e, c] : terms_) {
        int dj = e[static_cast<size_t>(jv)];
        if (dj == 0) {
            out.add_term(e, c);
            continue;
        }
        // (j - shift)^dj expanded by the binomial theorem.
        BigInt shift_pow(1);
        for (int t = 0; t <= dj; ++t) {
            BigRat coeff = c * BigRat(binomial(static_cast<unsigned long>(dj),
                                               static_cast<unsigned long>(t)) *
                                      shift_pow);
            ExpVec reduced = e;
            reduced[static_cast<size_t>(jv)] = static_cast<unsigned short>(dj - t);
            out.add_term(reduced, coeff);
            shift_pow *= -shift;
        }
    }
    return out;
}

FormalPoly FormalPoly::substitute(int var, const BigRat& value) const {
    FormalPoly out(ring_);
    out.z_trunc_ = z_trunc_;
    for (const auto& [e, c] : terms_) {
        int power = e[static_cast<size_t>(var)];
        BigRat coeff = c;
        for (int t = 0; t < power; ++t) coeff *= value;
        if (coeff == 0) continue;
        ExpVec reduced = e;
        reduced[static_cast<size_t>(var)] = 0;
        out.add_term(reduced, coeff);
    }
    return out;
}

FormalPoly FormalPoly::coefficient_of(int var, int power) const {
    FormalPoly out(ring_);
    out.z_trunc_ = z_trunc_;
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<size_t>(var)] != power) continue;
        ExpVec reduced = e;
        reduced[static_cast<size_t>(var)] = 0;
        out.add_term(reduced, c);
    }
    return out;
}

int FormalPoly::degree_in(int var) const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        (void)c;
        deg = std::max(deg, static_cast<int>(e[static_cast<size_t>(var)]));
    }
    return deg;
}

BigRat FormalPoly::evaluate_at_j(const BigRat& j) const {
    BigRat out(0);
    const int jv = ring_ ? ring_->var_j() : 0;
    for (const auto& [e, c] : terms_) {
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != jv && e[i] != 0)
                throw InvalidParameterError("evaluate_at_j: polynomial not univariate in j");
        BigRat term = c;
        for (int t = 0; t < e[static_cast<size_t>(jv)]; ++t) term *= j;
        out += term;
    }
    return out;
}

std::string FormalPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigRat coeff = c;
        if (!first) {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool has_vars = false;
        std::ostringstream vars;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (has_vars) vars << '*';
            vars << (ring_ ? ring_->var_name(static_cast<int>(i)) : "x" + std::to_string(i));
            if (e[i] > 1) vars << '^' << e[i];
            has_vars = true;
        }
        if (!has_vars) {
            out << coeff.get_str();
        } else if (coeff == 1) {
            out << vars.str();
        } else {
            out << coeff.get_str() << '*' << vars.str();
        }
    }
    return out.str();
}

}  // namespace dimer
