#include "skaff/duality.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "skaff/errors.hpp"

namespace skaff {

namespace {

long long pow_ll(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Apply the same n x n matrix to every axis of an order-ell tensor.
std::vector<cplx> transform_axes(std::vector<cplx> cur, int ell, int n, const std::vector<cplx>& m) {
    long long total = static_cast<long long>(cur.size());
    std::vector<cplx> next(cur.size());
    long long inner = total / std::max<long long>(n, 1);
    for (int axis = 0; axis < ell; ++axis) {
        long long outer = total / (inner * n);
        for (long long o = 0; o < outer; ++o)
            for (long long i = 0; i < inner; ++i) {
                long long base = o * n * inner + i;
                for (int t = 0; t < n; ++t) {
                    cplx acc{0.0, 0.0};
                    for (int x = 0; x < n; ++x) acc += m[static_cast<size_t>(t) * n + x] * cur[base + x * inner];
                    next[base + t * inner] = acc;
                }
            }
        cur.swap(next);
        inner /= n;
    }
    return cur;
}

double l2_norm(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

CoeffTensor apply_psi_raw(const CoeffTensor& c) {
    const AbelianGroup& g = c.group;
    int n = g.size();
    int ell = c.ell;
    CoeffTensor out{ell, g, std::vector<cplx>(c.entries.size())};
    double scale = 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<int> eta(ell, 0);
    for (long long it = 0; it < static_cast<long long>(c.entries.size()); ++it) {
        long long src = 0;
        for (int j = 0; j < ell; ++j) {
            int prev = eta[(j + ell - 1) % ell];
            src = src * n + g.multiply_index(prev, g.inverse_index(eta[j]));
        }
        out.entries[it] = scale * c.entries[src];
        for (int j = ell; j-- > 0;) {
            if (++eta[j] < n) break;
            eta[j] = 0;
        }
    }
    return out;
}

} // namespace

CoeffTensor character_coefficients(const ScaffoldTensor& t, const AbelianGroup& g) {
    int n = g.size();
    if (t.ell > 0 && t.base_size != n)
        fail(ErrorKind::InvalidInput, "tensor base size does not match the group order");
    if (static_cast<long long>(t.entries.size()) != pow_ll(n, t.ell) && !(t.ell == 0 && t.entries.size() == 1))
        fail(ErrorKind::InvalidInput, "tensor entry count does not match its declared order");

    auto m = character_table(g);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : m) z *= scale;

    return CoeffTensor{t.ell, dual_group(g), transform_axes(t.entries, t.ell, n, m)};
}

ScaffoldTensor inverse_character_coefficients(const CoeffTensor& c) {
    const AbelianGroup& g = c.group;
    int n = g.size();
    if (static_cast<long long>(c.entries.size()) != pow_ll(n, c.ell))
        fail(ErrorKind::InvalidInput, "coefficient count does not match the declared order");

    // adjoint of the forward transform: m_inv[x][t] = conj(chi_t(x)) / sqrt(n)
    auto table = character_table(g);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<cplx> m(table.size());
    for (int x = 0; x < n; ++x)
        for (int t = 0; t < n; ++t)
            m[static_cast<size_t>(x) * n + t] = std::conj(table[static_cast<size_t>(t) * n + x]) * scale;

    ScaffoldTensor out;
    out.ell = c.ell;
    out.base_size = n;
    out.entries = transform_axes(c.entries, c.ell, n, m);
    return out;
}

double gamma_residual(const CoeffTensor& c) {
    if (c.ell == 0)
        fail(ErrorKind::UnsupportedOperation, "an order-zero tensor has no character support to test");
    const AbelianGroup& g = c.group;
    int n = g.size();
    double acc = 0.0;
    std::vector<int> eta(c.ell, 0);
    for (size_t it = 0; it < c.entries.size(); ++it) {
        int total = g.identity_index();
        for (int j = 0; j < c.ell; ++j) total = g.multiply_index(total, eta[j]);
        if (total != g.identity_index()) acc += std::norm(c.entries[it]);
        for (int j = c.ell; j-- > 0;) {
            if (++eta[j] < n) break;
            eta[j] = 0;
        }
    }
    return std::sqrt(acc);
}

CoeffTensor apply_psi(const CoeffTensor& c, double tol) {
    if (c.ell == 0)
        fail(ErrorKind::UnsupportedOperation, "the pullback is defined for positive order only");
    double off = gamma_residual(c);
    if (off > tol * std::max(1.0, l2_norm(c.entries)))
        fail(ErrorKind::InvalidInput, "tensor carries too much mass off the product-one support");
    return apply_psi_raw(c);
}

DualityReport verify_duality(const Diagram& d, const TranslationScheme& ts, double tol, const EvalLimits& lim) {
    for (const auto& e : d.edges)
        if (e.weight.basis != Basis::A)
            fail(ErrorKind::UnsupportedOperation, "the duality check needs relation-basis weights");

    using clock = std::chrono::steady_clock;
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    DualityReport rep;
    rep.ell = d.ell();
    rep.nodes = static_cast<int>(d.nodes.size());
    int n = ts.group.size();

    auto t0 = clock::now();
    auto primal = eval_elimination(d, ts.scheme, std::nullopt, lim);
    auto t1 = clock::now();
    auto dual_d = dual_diagram(d);
    auto dual_ts = dual_scheme(ts);
    auto dual = eval_elimination(dual_d, dual_ts.scheme, std::nullopt, lim);
    auto t2 = clock::now();

    auto coeffs = character_coefficients(primal, ts.group);
    rep.gamma_residual = rep.ell > 0 ? gamma_residual(coeffs) : 0.0;
    CoeffTensor pulled = rep.ell > 0 ? apply_psi_raw(coeffs) : coeffs;
    auto t3 = clock::now();

    rep.scalar = rep.ell > 0 ? std::pow(static_cast<double>(n), rep.nodes - rep.ell / 2.0 - 0.5)
                             : std::pow(static_cast<double>(n), rep.nodes - 1);

    double dual_max = 0.0;
    for (const auto& z : dual.entries) dual_max = std::max(dual_max, std::abs(z));
    double resid = 0.0;
    for (size_t i = 0; i < pulled.entries.size(); ++i)
        resid = std::max(resid, std::abs(pulled.entries[i] - rep.scalar * dual.entries[i]));

    rep.max_residual = resid;
    rep.pass = resid <= tol * std::max(1.0, dual_max) &&
               rep.gamma_residual <= tol * std::max(1.0, l2_norm(coeffs.entries));
    rep.eval_primal_ms = ms(t0, t1);
    rep.eval_dual_ms = ms(t1, t2);
    rep.transform_ms = ms(t2, t3);
    return rep;
}

std::vector<std::pair<cplx, Diagram>> dualize_combination(const std::vector<std::pair<cplx, Diagram>>& terms,
                                                          int group_size) {
    if (group_size <= 0) fail(ErrorKind::InvalidInput, "group size must be positive");
    std::optional<int> ell;
    std::vector<std::pair<cplx, Diagram>> out;
    for (const auto& [coeff, dia] : terms) {
        if (ell && *ell != dia.ell()) fail(ErrorKind::InvalidInput, "terms mix different orders");
        ell = dia.ell();
        for (const auto& e : dia.edges)
            if (e.weight.basis != Basis::A)
                fail(ErrorKind::UnsupportedOperation, "combination dualization needs relation-basis weights");
        double lift = std::pow(static_cast<double>(group_size), static_cast<int>(dia.nodes.size()));
        out.emplace_back(coeff * lift, dual_diagram(dia));
    }
    return out;
}

} // namespace skaff
