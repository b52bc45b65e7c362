#ifndef DIMER_TESTS_NAIVE_KERNEL_HPP
#define DIMER_TESTS_NAIVE_KERNEL_HPP

// Second, deliberately naive implementation of the kernel's degree
// certificate: flat term lists instead of canonical maps, dense
// j-polynomials instead of sparse exponent vectors, and its own
// partition enumerator. Used as the dual oracle for the engine.

#include <map>
#include <vector>

#include "dimer/bignum.hpp"
#include "dimer/kernel.hpp"

namespace dimer::naive {

struct Term {
    BigRat coeff;
    int jexp = 0;
    int zexp = 0;
    int rhexp = 0;
    std::map<int, int> chexp;
};

// Ascending-order partition enumeration (the library enumerates
// descending); only the multiplicity vectors are consumed.
inline void partitions_asc(int remaining, int min_part, std::vector<int>& current,
                           std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int part = min_part; part <= remaining; ++part) {
        current.push_back(part);
        partitions_asc(remaining - part, part, current, out);
        current.pop_back();
    }
}

inline std::vector<std::vector<int>> partition_mults(int m, int max_size) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions_asc(m, 1, cur, parts);
    std::vector<std::vector<int>> mults;
    for (const auto& p : parts) {
        std::vector<int> mult(static_cast<size_t>(max_size) + 1, 0);
        for (int s : p) ++mult[static_cast<size_t>(s)];
        mults.push_back(std::move(mult));
    }
    return mults;
}

inline BigRat factorial_rat(int n) {
    BigRat out(1);
    for (int i = 2; i <= n; ++i) out *= BigRat(i);
    return out;
}

// F_i with the numeric u-profile: a plain rational.
inline BigRat f_value(const KernelConfig& cfg, int i) {
    BigRat total(0);
    for (const auto& mult : partition_mults(i, cfg.mm)) {
        BigRat term(1);
        for (int s = 1; s <= cfg.mm; ++s) {
            int ns = mult[static_cast<size_t>(s)];
            for (int t = 0; t < ns; ++t) term *= cfg.u_value(s + 1);
            term /= factorial_rat(ns);
        }
        total += term;
    }
    return total;
}

// Falling factorial j(j-1)...(j-q+1) as dense coefficients, c[k] of j^k.
inline std::vector<BigRat> falling_dense(int q) {
    std::vector<BigRat> coeff{BigRat(0), BigRat(1)};  // j
    for (int qq = 2; qq <= q; ++qq) {
        std::vector<BigRat> next(coeff.size() + 1, BigRat(0));
        for (size_t k = 0; k < coeff.size(); ++k) {
            next[k + 1] += coeff[k];
            next[k] -= coeff[k] * BigRat(qq - 1);
        }
        coeff.swap(next);
    }
    return coeff;
}

// Flat expansion of FF_i followed by combine-and-scan for the degree of
// the rh^jq slice in j.
inline int certificate(const KernelConfig& cfg, int i) {
    BigRat fi = f_value(cfg, i);
    std::vector<Term> terms;
    if (fi != 0) terms.push_back({fi, 0, 0, 0, {}});
    for (int q = cfg.lL; q <= cfg.mm; ++q) {
        BigRat outer = BigRat(1) + fi;  // F_i has no j dependence
        auto sc = falling_dense(q);
        for (const auto& mult : partition_mults(q, cfg.mm)) {
            // ch_2..ch_{lL-1} vanish
            bool zero = false;
            BigRat weight(1);
            std::map<int, int> chexp;
            int rh = 0;
            for (int s = 1; s <= cfg.mm && !zero; ++s) {
                int ns = mult[static_cast<size_t>(s)];
                if (ns == 0) continue;
                if (s >= 2 && s <= cfg.lL - 1) {
                    zero = true;
                    break;
                }
                chexp[s] += ns;
                rh += ns;
                weight /= factorial_rat(ns);
            }
            if (zero) continue;
            for (size_t k = 0; k < sc.size(); ++k) {
                if (sc[k] == 0) continue;
                if (q > cfg.mm) continue;  // z truncation
                terms.push_back({weight * sc[k] * outer, static_cast<int>(k), q, rh, chexp});
            }
        }
    }
    // combine by full exponent signature, keep rh^jq slice
    std::map<std::pair<std::pair<int, int>, std::map<int, int>>, BigRat> combined;
    for (const auto& t : terms) {
        if (t.rhexp != cfg.jq) continue;
        combined[{{t.jexp, t.zexp}, t.chexp}] += t.coeff;
    }
    int degree = -1;
    for (const auto& [key, coeff] : combined)
        if (coeff != 0) degree = std::max(degree, key.first.first);
    return degree;
}

}  // namespace dimer::naive

#endif
