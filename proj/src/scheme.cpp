#include "skaff/scheme.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "skaff/errors.hpp"

namespace skaff {

namespace {

// class_of[x*n+y] = k with A_k[x][y] = 1; requires AS2 to have passed.
std::vector<int> class_lookup(const std::vector<std::vector<int>>& rel, int n) {
    std::vector<int> out(static_cast<size_t>(n) * n, -1);
    for (int k = 0; k < static_cast<int>(rel.size()); ++k)
        for (size_t xy = 0; xy < out.size(); ++xy)
            if (rel[k][xy]) out[xy] = k;
    return out;
}

std::vector<int> int_product(const std::vector<int>& a, const std::vector<int>& b, int n) {
    std::vector<int> m(static_cast<size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
            int axz = a[static_cast<size_t>(x) * n + z];
            if (!axz) continue;
            const int* brow = b.data() + static_cast<size_t>(z) * n;
            int* mrow = m.data() + static_cast<size_t>(x) * n;
            for (int y = 0; y < n; ++y) mrow[y] += axz * brow[y];
        }
    return m;
}

// Representative coefficients of a product matrix over the classes, or
// nullopt if some class is not constant.
std::optional<std::vector<int>> coeffs_on_classes(const std::vector<int>& m, const std::vector<int>& class_of,
                                                  int nclasses) {
    std::vector<int> c(nclasses, -1);
    for (size_t xy = 0; xy < m.size(); ++xy) {
        int k = class_of[xy];
        if (c[k] < 0)
            c[k] = m[xy];
        else if (c[k] != m[xy])
            return std::nullopt;
    }
    return c;
}

// Coefficient vectors may be shorter than the class count (missing entries
// are zero); longer ones reference classes the scheme does not have.
std::vector<cplx> padded_coeffs(const BMElement& w, int d) {
    if (static_cast<int>(w.coeffs.size()) > d + 1)
        fail(ErrorKind::InvalidInput, "coefficient vector references a class index past " + std::to_string(d));
    std::vector<cplx> c(d + 1, 0.0);
    for (size_t i = 0; i < w.coeffs.size(); ++i) c[i] = w.coeffs[i];
    return c;
}

bool triangle_pattern_ok(int d, const std::function<bool(int, int, int)>& is_zero) {
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k) {
                bool over = i > j + k || j > i + k || k > i + j;
                bool edge = i == j + k || j == i + k || k == i + j;
                if (over && !is_zero(i, j, k)) return false;
                if (edge && is_zero(i, j, k)) return false;
            }
    return true;
}

} // namespace

BMElement BMElement::unit(Basis b, int index, int d) {
    BMElement w;
    w.basis = b;
    w.coeffs.assign(d + 1, cplx(0.0));
    if (index < 0 || index > d) fail(ErrorKind::InvalidInput, "basis index out of range");
    w.coeffs[index] = 1.0;
    return w;
}

BMElement BMElement::pure(Basis b, int index) {
    if (index < 0) fail(ErrorKind::InvalidInput, "basis index out of range");
    BMElement w;
    w.basis = b;
    w.coeffs.assign(index + 1, cplx(0.0));
    w.coeffs[index] = 1.0;
    return w;
}

int BMElement::pure_index() const {
    int found = -1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == cplx(0.0)) continue;
        if (found >= 0 || coeffs[i] != cplx(1.0)) return -1;
        found = static_cast<int>(i);
    }
    return found;
}

std::vector<AxiomViolation> validate_scheme_relations(const std::vector<std::vector<int>>& relations, int size) {
    std::vector<AxiomViolation> out;
    int n = size;
    if (n <= 0) {
        out.push_back({"shape", "point set is empty"});
        return out;
    }
    if (relations.empty()) {
        out.push_back({"shape", "no relation classes given"});
        return out;
    }
    for (int i = 0; i < static_cast<int>(relations.size()); ++i) {
        if (relations[i].size() != static_cast<size_t>(n) * n) {
            std::ostringstream msg;
            msg << "relation " << i << " is not a " << n << "x" << n << " matrix";
            out.push_back({"shape", msg.str()});
            return out;
        }
        bool nonzero = false;
        for (int v : relations[i]) {
            if (v != 0 && v != 1) {
                std::ostringstream msg;
                msg << "relation " << i << " has an entry other than 0 or 1";
                out.push_back({"shape", msg.str()});
                return out;
            }
            nonzero = nonzero || v == 1;
        }
        if (!nonzero) {
            std::ostringstream msg;
            msg << "relation " << i << " is empty";
            out.push_back({"shape", msg.str()});
            return out;
        }
    }

    int d = static_cast<int>(relations.size()) - 1;

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (relations[0][static_cast<size_t>(x) * n + y] != (x == y ? 1 : 0)) {
                out.push_back({"AS1", "class 0 is not the identity relation"});
                x = n;
                break;
            }

    bool partition_ok = true;
    for (int x = 0; x < n && partition_ok; ++x)
        for (int y = 0; y < n; ++y) {
            int total = 0;
            for (const auto& r : relations) total += r[static_cast<size_t>(x) * n + y];
            if (total != 1) {
                std::ostringstream msg;
                msg << "pair (" << x << "," << y << ") lies in " << total << " classes";
                out.push_back({"AS2", msg.str()});
                partition_ok = false;
                break;
            }
        }

    for (int i = 0; i <= d; ++i) {
        bool found = false;
        for (int j = 0; j <= d && !found; ++j) {
            bool eq = true;
            for (int x = 0; x < n && eq; ++x)
                for (int y = 0; y < n; ++y)
                    if (relations[i][static_cast<size_t>(x) * n + y] !=
                        relations[j][static_cast<size_t>(y) * n + x]) {
                        eq = false;
                        break;
                    }
            found = eq;
        }
        if (!found) {
            std::ostringstream msg;
            msg << "no class equals the transpose of class " << i;
            out.push_back({"AS3", msg.str()});
        }
    }

    if (partition_ok) {
        auto class_of = class_lookup(relations, n);
        for (int i = 0; i <= d; ++i)
            for (int j = i; j <= d; ++j) {
                auto mij = int_product(relations[i], relations[j], n);
                auto cij = coeffs_on_classes(mij, class_of, d + 1);
                if (!cij) {
                    std::ostringstream msg;
                    msg << "product of classes " << i << " and " << j << " is not constant on the classes";
                    out.push_back({"AS4", msg.str()});
                    continue;
                }
                if (i == j) continue;
                auto mji = int_product(relations[j], relations[i], n);
                auto cji = coeffs_on_classes(mji, class_of, d + 1);
                if (!cji) {
                    std::ostringstream msg;
                    msg << "product of classes " << j << " and " << i << " is not constant on the classes";
                    out.push_back({"AS4", msg.str()});
                    continue;
                }
                if (*cij != *cji) {
                    std::ostringstream msg;
                    msg << "classes " << i << " and " << j << " do not commute";
                    out.push_back({"AS4", msg.str()});
                }
            }
    }

    return out;
}

Scheme scheme_from_relations(const std::vector<std::vector<int>>& relations, int size) {
    auto violations = validate_scheme_relations(relations, size);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "not an association scheme:";
        for (const auto& v : violations) msg << " [" << v.axiom << "] " << v.detail << ";";
        fail(ErrorKind::ValidationFailure, msg.str());
    }

    Scheme s;
    s.size = size;
    s.d = static_cast<int>(relations.size()) - 1;
    s.relations = relations;

    int n = size;
    int d = s.d;

    s.transpose_class.assign(d + 1, -1);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d && s.transpose_class[i] < 0; ++j) {
            bool eq = true;
            for (int x = 0; x < n && eq; ++x)
                for (int y = 0; y < n; ++y)
                    if (relations[i][static_cast<size_t>(x) * n + y] !=
                        relations[j][static_cast<size_t>(y) * n + x]) {
                        eq = false;
                        break;
                    }
            if (eq) s.transpose_class[i] = j;
        }

    s.valencies.assign(d + 1, 0);
    for (int i = 0; i <= d; ++i)
        for (int y = 0; y < n; ++y) s.valencies[i] += relations[i][y];

    auto class_of = class_lookup(relations, n);
    s.p.assign(static_cast<size_t>(d + 1) * (d + 1) * (d + 1), 0);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            auto m = int_product(relations[i], relations[j], n);
            std::vector<int> rep(d + 1, -1);
            for (size_t xy = 0; xy < m.size(); ++xy) {
                int k = class_of[xy];
                if (rep[k] < 0) rep[k] = m[xy];
            }
            for (int k = 0; k <= d; ++k)
                s.p[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k] = rep[k];
        }

    return s;
}

void attach_eigen_data(Scheme& s, EigenData eigen, double tol) {
    int n = s.size;
    int d = s.d;
    size_t nn = static_cast<size_t>(n) * n;
    size_t dd = static_cast<size_t>(d + 1) * (d + 1);

    if (static_cast<int>(eigen.idempotents.size()) != d + 1)
        fail(ErrorKind::ValidationFailure, "need one idempotent per relation class");
    for (const auto& e : eigen.idempotents)
        if (e.size() != nn) fail(ErrorKind::ValidationFailure, "idempotent has wrong shape");
    if (eigen.P.size() != dd || eigen.Q.size() != dd)
        fail(ErrorKind::ValidationFailure, "eigenmatrix has wrong shape");

    auto max_abs = [](const std::vector<cplx>& v) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    };

    // sum of idempotents is the identity
    {
        std::vector<cplx> acc(nn, 0.0);
        for (const auto& e : eigen.idempotents)
            for (size_t t = 0; t < nn; ++t) acc[t] += e[t];
        for (int x = 0; x < n; ++x) acc[static_cast<size_t>(x) * n + x] -= 1.0;
        if (max_abs(acc) > tol) fail(ErrorKind::ValidationFailure, "idempotents do not sum to the identity");
    }

    // pairwise products: E_i E_j = delta_ij E_i
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            const auto& a = eigen.idempotents[i];
            const auto& b = eigen.idempotents[j];
            std::vector<cplx> m(nn, 0.0);
            for (int x = 0; x < n; ++x)
                for (int z = 0; z < n; ++z) {
                    cplx axz = a[static_cast<size_t>(x) * n + z];
                    if (std::abs(axz) < 1e-15) continue;
                    for (int y = 0; y < n; ++y)
                        m[static_cast<size_t>(x) * n + y] += axz * b[static_cast<size_t>(z) * n + y];
                }
            if (i == j)
                for (size_t t = 0; t < nn; ++t) m[t] -= a[t];
            if (max_abs(m) > tol) fail(ErrorKind::ValidationFailure, "idempotents are not orthogonal idempotents");
        }

    // A_i = sum_j P[j][i] E_j  and  E_j = (1/n) sum_i Q[i][j] A_i
    for (int i = 0; i <= d; ++i) {
        std::vector<cplx> acc(nn, 0.0);
        for (int j = 0; j <= d; ++j) {
            cplx c = eigen.P[static_cast<size_t>(j) * (d + 1) + i];
            for (size_t t = 0; t < nn; ++t) acc[t] += c * eigen.idempotents[j][t];
        }
        for (size_t t = 0; t < nn; ++t) acc[t] -= static_cast<double>(s.relations[i][t]);
        if (max_abs(acc) > tol) fail(ErrorKind::ValidationFailure, "first eigenmatrix does not expand the relations");
    }
    for (int j = 0; j <= d; ++j) {
        std::vector<cplx> acc(nn, 0.0);
        for (int i = 0; i <= d; ++i) {
            cplx c = eigen.Q[static_cast<size_t>(i) * (d + 1) + j] / static_cast<double>(n);
            for (size_t t = 0; t < nn; ++t) acc[t] += c * static_cast<double>(s.relations[i][t]);
        }
        for (size_t t = 0; t < nn; ++t) acc[t] -= eigen.idempotents[j][t];
        if (max_abs(acc) > tol)
            fail(ErrorKind::ValidationFailure, "second eigenmatrix does not expand the idempotents");
    }

    // P Q = n I
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k <= d; ++k)
                acc += eigen.P[static_cast<size_t>(i) * (d + 1) + k] * eigen.Q[static_cast<size_t>(k) * (d + 1) + j];
            cplx want = i == j ? cplx(static_cast<double>(n)) : cplx(0.0);
            if (std::abs(acc - want) > tol * n)
                fail(ErrorKind::ValidationFailure, "eigenmatrices are not mutually inverse up to the point count");
        }

    eigen.multiplicities.assign(d + 1, 0);
    for (int j = 0; j <= d; ++j) {
        cplx tr = 0.0;
        for (int x = 0; x < n; ++x) tr += eigen.idempotents[j][static_cast<size_t>(x) * n + x];
        long long m = std::llround(tr.real());
        if (std::abs(tr - cplx(static_cast<double>(m))) > tol * n || m < 1)
            fail(ErrorKind::ValidationFailure, "idempotent trace is not a positive integer");
        eigen.multiplicities[j] = static_cast<int>(m);
    }

    // Krein parameters: expand E_i . E_j (entrywise) over the idempotents.
    // Entrywise products are diagonal in the A-basis, so the A-coefficients
    // of E_i . E_j are Q[a][i] Q[a][j] / n^2; pushing through P and scaling
    // by n gives q_ijk = (1/n) sum_a P[k][a] Q[a][i] Q[a][j].
    std::vector<cplx> q(static_cast<size_t>(d + 1) * (d + 1) * (d + 1), 0.0);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int k = 0; k <= d; ++k) {
                cplx acc = 0.0;
                for (int a = 0; a <= d; ++a)
                    acc += eigen.P[static_cast<size_t>(k) * (d + 1) + a] *
                           eigen.Q[static_cast<size_t>(a) * (d + 1) + i] *
                           eigen.Q[static_cast<size_t>(a) * (d + 1) + j];
                q[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k] = acc / static_cast<double>(n);
            }

    s.eigen = std::move(eigen);
    s.krein = std::move(q);
}

ParameterTensor intersection_numbers(const Scheme& s) {
    ParameterTensor t;
    t.d = s.d;
    t.values.reserve(s.p.size());
    for (long long v : s.p) t.values.push_back(cplx(static_cast<double>(v)));
    return t;
}

ParameterTensor krein_parameters(const Scheme& s) {
    if (!s.krein)
        fail(ErrorKind::UnsupportedOperation,
             "Krein parameters need spectral data; build the scheme from a translation presentation");
    ParameterTensor t;
    t.d = s.d;
    t.values = *s.krein;
    return t;
}

std::vector<cplx> bm_to_matrix(const Scheme& s, const BMElement& w) {
    auto coeffs = padded_coeffs(w, s.d);
    size_t nn = static_cast<size_t>(s.size) * s.size;
    std::vector<cplx> out(nn, 0.0);
    if (w.basis == Basis::A) {
        for (int i = 0; i <= s.d; ++i) {
            if (coeffs[i] == cplx(0.0)) continue;
            for (size_t t = 0; t < nn; ++t)
                if (s.relations[i][t]) out[t] += coeffs[i];
        }
    } else {
        if (!s.eigen)
            fail(ErrorKind::UnsupportedOperation, "idempotent basis needs spectral data");
        for (int i = 0; i <= s.d; ++i) {
            if (coeffs[i] == cplx(0.0)) continue;
            for (size_t t = 0; t < nn; ++t) out[t] += coeffs[i] * s.eigen->idempotents[i][t];
        }
    }
    return out;
}

BMElement bm_convert(const Scheme& s, const BMElement& w, Basis target) {
    auto coeffs = padded_coeffs(w, s.d);
    if (w.basis == target) return BMElement{w.basis, std::move(coeffs)};
    if (!s.eigen) fail(ErrorKind::UnsupportedOperation, "basis change needs spectral data");
    int d = s.d;
    BMElement out;
    out.basis = target;
    out.coeffs.assign(d + 1, 0.0);
    if (target == Basis::E) {
        // e = P a
        for (int j = 0; j <= d; ++j)
            for (int i = 0; i <= d; ++i)
                out.coeffs[j] += s.eigen->P[static_cast<size_t>(j) * (d + 1) + i] * coeffs[i];
    } else {
        // a = (1/n) Q e
        for (int i = 0; i <= d; ++i) {
            for (int j = 0; j <= d; ++j)
                out.coeffs[i] += s.eigen->Q[static_cast<size_t>(i) * (d + 1) + j] * coeffs[j];
            out.coeffs[i] /= static_cast<double>(s.size);
        }
    }
    return out;
}

BMElement bm_multiply(const Scheme& s, const BMElement& a, const BMElement& b) {
    auto lhs = padded_coeffs(a, s.d);
    auto rhs = (a.basis == b.basis ? padded_coeffs(b, s.d) : bm_convert(s, b, a.basis).coeffs);
    int d = s.d;
    BMElement out;
    out.basis = a.basis;
    out.coeffs.assign(d + 1, 0.0);
    if (a.basis == Basis::E) {
        for (int i = 0; i <= d; ++i) out.coeffs[i] = lhs[i] * rhs[i];
    } else {
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                cplx c = lhs[i] * rhs[j];
                if (c == cplx(0.0)) continue;
                for (int k = 0; k <= d; ++k) out.coeffs[k] += c * static_cast<double>(s.p_at(i, j, k));
            }
    }
    return out;
}

BMElement bm_hadamard(const Scheme& s, const BMElement& a, const BMElement& b) {
    auto lhs = padded_coeffs(a, s.d);
    auto rhs = (a.basis == b.basis ? padded_coeffs(b, s.d) : bm_convert(s, b, a.basis).coeffs);
    int d = s.d;
    BMElement out;
    out.basis = a.basis;
    out.coeffs.assign(d + 1, 0.0);
    if (a.basis == Basis::A) {
        for (int i = 0; i <= d; ++i) out.coeffs[i] = lhs[i] * rhs[i];
    } else {
        if (!s.krein) fail(ErrorKind::UnsupportedOperation, "entrywise product in the idempotent basis needs spectral data");
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) {
                cplx c = lhs[i] * rhs[j];
                if (c == cplx(0.0)) continue;
                for (int k = 0; k <= d; ++k) out.coeffs[k] += c * s.q_at(i, j, k) / static_cast<double>(s.size);
            }
    }
    return out;
}

namespace {

bool all_symmetric(const Scheme& s) {
    for (int i = 0; i <= s.d; ++i)
        if (s.transpose_class[i] != i) return false;
    return true;
}

} // namespace

bool check_p_polynomial(const Scheme& s) {
    if (!all_symmetric(s)) return false;
    return triangle_pattern_ok(s.d, [&](int i, int j, int k) { return s.p_at(i, j, k) == 0; });
}

bool check_q_polynomial(const Scheme& s, double tol) {
    if (!s.krein)
        fail(ErrorKind::UnsupportedOperation,
             "Krein parameters need spectral data; build the scheme from a translation presentation");
    if (!all_symmetric(s)) return false;
    return triangle_pattern_ok(s.d, [&](int i, int j, int k) { return std::abs(s.q_at(i, j, k)) <= tol; });
}

Scheme reorder_classes(const Scheme& s, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != s.d + 1) fail(ErrorKind::InvalidInput, "permutation length mismatch");
    std::vector<bool> seen(s.d + 1, false);
    for (int v : perm) {
        if (v < 0 || v > s.d || seen[v]) fail(ErrorKind::InvalidInput, "not a permutation of the class indices");
        seen[v] = true;
    }
    if (perm[0] != 0) fail(ErrorKind::InvalidInput, "class 0 must stay fixed");
    std::vector<std::vector<int>> rel(s.d + 1);
    for (int i = 0; i <= s.d; ++i) rel[i] = s.relations[perm[i]];
    return scheme_from_relations(rel, s.size);
}

} // namespace skaff
