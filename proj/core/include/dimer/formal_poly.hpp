#ifndef DIMER_FORMAL_POLY_HPP
#define DIMER_FORMAL_POLY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dimer/bignum.hpp"

namespace dimer {

// Variable universe for the symbolic kernel: j, z, rh, u_1..u_{mm+1},
// ch_1..ch_{mm}. The ring is fixed by the series order mm.
class PolyRing {
  public:
    explicit PolyRing(int mm);

    int mm() const { return mm_; }
    int num_vars() const { return num_vars_; }

    int var_j() const { return 0; }
    int var_z() const { return 1; }
    int var_rh() const { return 2; }
    int var_u(int v) const;   // v in [1, mm+1]
    int var_ch(int s) const;  // s in [1, mm]

    const std::string& var_name(int index) const { return names_[static_cast<size_t>(index)]; }

  private:
    int mm_ = 0;
    int num_vars_ = 0;
    std::vector<std::string> names_;
};

// Sparse multivariate polynomial over exact rationals, optionally
// truncated as a power series in z. Terms live in a canonically ordered
// map, so iteration order never depends on construction order.
class FormalPoly {
  public:
    using ExpVec = std::vector<unsigned short>;

    FormalPoly() = default;
    explicit FormalPoly(const PolyRing* ring) : ring_(ring) {}

    static FormalPoly constant(const PolyRing* ring, const BigRat& value);
    static FormalPoly variable(const PolyRing* ring, int var, int power = 1);

    const PolyRing* ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    const std::map<ExpVec, BigRat>& terms() const { return terms_; }

    // No z-truncation by default; truncated polynomials drop any term
    // whose z-exponent exceeds the order.
    int z_truncation_order() const { return z_trunc_; }

    FormalPoly operator+(const FormalPoly& other) const;
    FormalPoly operator-(const FormalPoly& other) const;
    FormalPoly operator*(const FormalPoly& other) const;
    FormalPoly operator*(const BigRat& scalar) const;
    bool operator==(const FormalPoly& other) const;

    FormalPoly pow(int exponent) const;

    // Keep only terms with z-exponent <= order.
    FormalPoly truncate_z(int order) const;

    // Substitute j -> j - shift, expanding binomially (exact).
    FormalPoly shift_j(long shift) const;

    // Substitute an exact rational value for one variable.
    FormalPoly substitute(int var, const BigRat& value) const;

    // Coefficient of var^power, as a polynomial in the other variables.
    FormalPoly coefficient_of(int var, int power) const;

    // Max exponent of var across terms; -1 for the zero polynomial.
    int degree_in(int var) const;

    // Evaluate with j set to a rational, all other variables untouched
    // (must not appear). Used by tests.
    BigRat evaluate_at_j(const BigRat& j) const;

    // Deterministic display, e.g. "3/2*j^2*ch1 + z".
    std::string to_string() const;

    void add_term(const ExpVec& exponents, const BigRat& coeff);

  private:
    const PolyRing* ring_ = nullptr;
    std::map<ExpVec, BigRat> terms_;
    int z_trunc_ = -1;  // -1 = untruncated

    void set_trunc(int order) { z_trunc_ = order; }
    friend FormalPoly with_truncation(FormalPoly poly, int order);
};

FormalPoly with_truncation(FormalPoly poly, int order);

}  // namespace dimer

#endif
