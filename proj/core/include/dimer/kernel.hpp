#ifndef DIMER_KERNEL_HPP
#define DIMER_KERNEL_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dimer/formal_poly.hpp"

namespace dimer {

// Configuration of the symbolic high-density-limit kernel. Defaults
// reproduce the reference run: series order mm=10, lowest active order
// lL=3, rh-power jq=2, u-profile parameter aQ=0, and degree thresholds
// 100^2*(lL-1) / 100^2*lL.
struct KernelConfig {
    int mm = 10;
    int lL = 3;
    int jq = 2;
    BigRat aQ = BigRat(0);
    // Substitute the numeric u-profile u_v = v(1 - v/(10+aQ)); when
    // false the u_v stay formal.
    bool substitute_u = true;
    std::optional<long> threshold_low;   // default 100^2 (lL - 1)
    std::optional<long> threshold_high;  // default 100^2 lL

    long low() const { return threshold_low.value_or(10000L * (lL - 1)); }
    long high() const { return threshold_high.value_or(10000L * lL); }
    void validate() const;

    BigRat u_value(int v) const;  // v (1 - v/(10+aQ))
};

// All partitions of m as non-increasing part lists, in a fixed
// deterministic (descending lexicographic) order.
std::vector<std::vector<int>> partitions(int m);

enum class ProductFlavor { F, E };

// Engine owning the variable ring and the per-order building blocks.
class KernelEngine {
  public:
    explicit KernelEngine(const KernelConfig& cfg);

    const KernelConfig& config() const { return cfg_; }
    const PolyRing& ring() const { return *ring_; }

    // j (j-1) ... (j-q+1); degree exactly q.
    FormalPoly falling_factorial(int q) const;

    // Sum over partitions of i of the factorial-normalized monomials:
    // flavor F uses u_{s+1}^{n_s}/n_s!, flavor E uses (rh ch_s)^{n_s}/n_s!.
    // Kernel substitutions (zeroed ch_2..ch_{lL-1}, numeric u-profile)
    // are NOT applied here; `F(i)` and `ee(q)` below apply them.
    FormalPoly partition_product(int i, ProductFlavor flavor) const;

    // partition_product with the configured substitutions applied.
    FormalPoly F(int i) const;
    FormalPoly ee(int q) const;

    // FF_i = F_i + sum_{q=lL}^{mm} ee_q sc_q z^q (1 + F_i|_{j -> j-q}),
    // truncated to z-order mm.
    FormalPoly assemble_FF(int i) const;

    // Degree in j of the rh^jq coefficient; -1 when that slice is zero.
    int degree_certificate(const FormalPoly& ff) const;
    int certificate(int i) const;

  private:
    KernelConfig cfg_;
    std::unique_ptr<PolyRing> ring_;
};

int degree_certificate(const FormalPoly& ff, int jq);

struct CertificateEntry {
    int i = 0;
    int degree = 0;  // wwrhjq_i
};

struct Violation {
    int index = 0;
    int degree = 0;
    bool operator<(const Violation& o) const {
        return index != o.index ? index < o.index : degree < o.degree;
    }
};

struct CertificateReport {
    KernelConfig config;
    std::vector<CertificateEntry> certificates;  // i in [lL, mm]
    std::set<Violation> violations;              // Sq2
    std::string proof_log;                       // plain text, Maple-style names
};

// Degree certificates over [i_lo, i_hi] plus the threshold screen: an
// entry with degree above the low threshold opens the gate, and every
// entry in the k-range with degree below the high threshold is then
// collected as well. Empty set = the bounded-degree condition holds.
std::set<Violation> lemma_check(const KernelConfig& cfg, std::pair<int, int> i_range,
                                std::pair<int, int> k_range);

// Full run with the configured ranges [lL, mm]; builds the proof log.
CertificateReport run_certificates(const KernelConfig& cfg);

}  // namespace dimer

#endif
