#include "dimer/kernel.hpp"

#include <algorithm>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

void KernelConfig::validate() const {
    if (!(2 <= lL && lL <= mm))
        throw InvalidParameterError("KernelConfig: need 2 <= lL <= mm");
    if (jq < 1) throw InvalidParameterError("KernelConfig: jq must be >= 1");
    if (mm > 24) throw ResourceLimitError("KernelConfig: mm > 24 not supported");
}

BigRat KernelConfig::u_value(int v) const {
    // u_v = v (1 - v/(10+aQ))
    BigRat ten_aq = BigRat(10) + aQ;
    if (ten_aq == 0) throw InvalidParameterError("KernelConfig: aQ makes the u-profile singular");
    BigRat out = BigRat(v) * (BigRat(1) - BigRat(v) / ten_aq);
    out.canonicalize();
    return out;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current,
                    std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions_rec(remaining - part, part, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> partitions(int m) {
    if (m < 0) throw InvalidParameterError("partitions: m must be >= 0");
    if (m > 40) throw ResourceLimitError("partitions: m > 40 exceeds the resource bound");
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    partitions_rec(m, m, current, out);
    return out;
}

KernelEngine::KernelEngine(const KernelConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    ring_ = std::make_unique<PolyRing>(cfg_.mm);
}

FormalPoly KernelEngine::falling_factorial(int q) const {
    if (q < 1 || q > cfg_.mm)
        throw InvalidParameterError("falling_factorial: q out of [1, mm]");
    FormalPoly j = FormalPoly::variable(ring_.get(), ring_->var_j());
    FormalPoly out = j;
    for (int qq = 2; qq <= q; ++qq) {
        FormalPoly factor = j - FormalPoly::constant(ring_.get(), BigRat(qq - 1));
        out = out * factor;
    }
    return out;
}

FormalPoly KernelEngine::partition_product(int i, ProductFlavor flavor) const {
    if (i < 0 || i > cfg_.mm)
        throw InvalidParameterError("partition_product: order out of [0, mm]");
    FormalPoly total(ring_.get());
    for (const auto& parts : partitions(i)) {
        // multiplicity n_s of each part size s
        std::vector<int> mult(static_cast<size_t>(cfg_.mm) + 1, 0);
        for (int s : parts) ++mult[static_cast<size_t>(s)];
        FormalPoly::ExpVec exps(static_cast<size_t>(ring_->num_vars()), 0);
        BigRat coeff(1);
        for (int s = 1; s <= cfg_.mm; ++s) {
            int ns = mult[static_cast<size_t>(s)];
            if (ns == 0) continue;
            coeff /= BigRat(factorial(static_cast<unsigned long>(ns)));
            if (flavor == ProductFlavor::F) {
                exps[static_cast<size_t>(ring_->var_u(s + 1))] =
                    static_cast<unsigned short>(ns);
            } else {
                exps[static_cast<size_t>(ring_->var_ch(s))] = static_cast<unsigned short>(ns);
                exps[static_cast<size_t>(ring_->var_rh())] = static_cast<unsigned short>(
                    exps[static_cast<size_t>(ring_->var_rh())] + ns);
            }
        }
        FormalPoly term(ring_.get());
        term.add_term(exps, coeff);
        total = total + term;
    }
    return total;
}

FormalPoly KernelEngine::F(int i) const {
    FormalPoly out = partition_product(i, ProductFlavor::F);
    if (cfg_.substitute_u)
        for (int v = 1; v <= cfg_.mm + 1; ++v)
            out = out.substitute(ring_->var_u(v), cfg_.u_value(v));
    return out;
}

FormalPoly KernelEngine::ee(int q) const {
    FormalPoly out = partition_product(q, ProductFlavor::E);
    // ch_2 .. ch_{lL-1} vanish in this kernel.
    for (int s = 2; s <= cfg_.lL - 1; ++s)
        out = out.substitute(ring_->var_ch(s), BigRat(0));
    return out;
}

FormalPoly KernelEngine::assemble_FF(int i) const {
    if (i < cfg_.lL || i > cfg_.mm)
        throw InvalidParameterError("assemble_FF: i out of [lL, mm]");
    FormalPoly fi = F(i);
    FormalPoly ff = fi;
    FormalPoly one = FormalPoly::constant(ring_.get(), BigRat(1));
    for (int q = cfg_.lL; q <= cfg_.mm; ++q) {
        FormalPoly zq = FormalPoly::variable(ring_.get(), ring_->var_z(), q);
        FormalPoly term = ee(q) * falling_factorial(q) * zq * (one + fi.shift_j(q));
        ff = ff + term;
    }
    ff = ff.truncate_z(cfg_.mm);
    if (ff.degree_in(ring_->var_z()) > cfg_.mm)
        throw std::logic_error("assemble_FF: truncation invariant violated");
    return ff;
}

int KernelEngine::degree_certificate(const FormalPoly& ff) const {
    return dimer::degree_certificate(ff, cfg_.jq);
}

int KernelEngine::certificate(int i) const { return degree_certificate(assemble_FF(i)); }

int degree_certificate(const FormalPoly& ff, int jq) {
    const PolyRing* ring = ff.ring();
    if (!ring) throw InvalidParameterError("degree_certificate: poly has no ring");
    FormalPoly slice = ff.coefficient_of(ring->var_rh(), jq);
    return slice.degree_in(ring->var_j());
}

std::set<Violation> lemma_check(const KernelConfig& cfg, std::pair<int, int> i_range,
                                std::pair<int, int> k_range) {
    cfg.validate();
    auto in_bounds = [&](std::pair<int, int> r) {
        return cfg.lL <= r.first && r.first <= r.second && r.second <= cfg.mm;
    };
    if (!in_bounds(i_range) || !in_bounds(k_range))
        throw InvalidParameterError("lemma_check: ranges must lie within [lL, mm]");
    KernelEngine engine(cfg);
    std::vector<int> degree(static_cast<size_t>(cfg.mm) + 1, -1);
    int lo = std::min(i_range.first, k_range.first);
    int hi = std::max(i_range.second, k_range.second);
    for (int i = lo; i <= hi; ++i) degree[static_cast<size_t>(i)] = engine.certificate(i);

    std::set<Violation> sq2;
    for (int i = i_range.first; i <= i_range.second; ++i) {
        if (degree[static_cast<size_t>(i)] <= cfg.low()) continue;
        sq2.insert({i, degree[static_cast<size_t>(i)]});
        for (int k = k_range.first; k <= k_range.second; ++k)
            if (degree[static_cast<size_t>(k)] < cfg.high())
                sq2.insert({k, degree[static_cast<size_t>(k)]});
    }
    return sq2;
}

CertificateReport run_certificates(const KernelConfig& cfg) {
    cfg.validate();
    KernelEngine engine(cfg);
    CertificateReport report;
    report.config = cfg;
    for (int i = cfg.lL; i <= cfg.mm; ++i)
        report.certificates.push_back({i, engine.certificate(i)});
    report.violations = lemma_check(cfg, {cfg.lL, cfg.mm}, {cfg.lL, cfg.mm});

    std::ostringstream log;
    log << "high-j kernel certificate log\n";
    log << "mm=" << cfg.mm << " lL=" << cfg.lL << " jq=" << cfg.jq
        << " aQ=" << cfg.aQ.get_str() << "\n";
    if (cfg.substitute_u) {
        log << "u profile:";
        for (int v = 1; v <= cfg.mm + 1; ++v) log << " u" << v << "=" << cfg.u_value(v).get_str();
        log << "\n";
    } else {
        log << "u profile: formal\n";
    }
    for (const auto& c : report.certificates)
        log << "wwrhjq_" << c.i << " = " << c.degree << "\n";
    log << "thresholds: low=" << cfg.low() << " high=" << cfg.high() << "\n";
    log << "Sq2 = {";
    bool first = true;
    for (const auto& v : report.violations) {
        if (!first) log << ", ";
        log << "wwrhjq_" << v.index << "=" << v.degree;
        first = false;
    }
    log << "}  (" << report.violations.size() << " violations)\n";
    report.proof_log = log.str();
    return report;
}

}  // namespace dimer
