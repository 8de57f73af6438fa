#include "skaff/evaluate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "skaff/errors.hpp"

namespace skaff {

namespace {

bool pow_fits(long long base, size_t exp, long long cap, long long& out) {
    out = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (out > cap / base) return false;
        out *= base;
    }
    return true;
}

[[noreturn]] void over_limit(const std::string& what, long long base, size_t exp, long long cap) {
    std::ostringstream msg;
    msg << what << " needs " << base << "^" << exp << " entries, over the limit " << cap;
    fail(ErrorKind::ResourceLimit, msg.str());
}

struct Factor {
    std::vector<int> scope; // node indices, strictly ascending
    std::vector<cplx> data; // row-major, first scope node slowest
};

std::vector<Factor> edge_factors(const Diagram& d, const Scheme& s) {
    int n = s.size;
    std::vector<Factor> factors;
    for (const auto& e : d.edges) {
        auto w = bm_to_matrix(s, e.weight);
        Factor f;
        if (e.tail == e.head) {
            f.scope = {e.tail};
            f.data.resize(n);
            for (int x = 0; x < n; ++x) f.data[x] = w[x * n + x];
        } else {
            f.scope = {std::min(e.tail, e.head), std::max(e.tail, e.head)};
            f.data.resize(static_cast<size_t>(n) * n);
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    size_t slot = e.tail < e.head ? static_cast<size_t>(x) * n + y : static_cast<size_t>(y) * n + x;
                    f.data[slot] = w[x * n + y];
                }
        }
        factors.push_back(std::move(f));
    }
    return factors;
}

} // namespace

ScaffoldTensor eval_bruteforce(const Diagram& d, const Scheme& s, const EvalLimits& lim) {
    int n = s.size;
    size_t nnodes = d.nodes.size();
    int ell = d.ell();

    long long assign_count = 0, out_count = 0;
    if (!pow_fits(n, nnodes, lim.max_entries, assign_count))
        over_limit("the assignment sweep", n, nnodes, lim.max_entries);
    if (!pow_fits(n, ell, lim.max_entries, out_count)) over_limit("the output tensor", n, ell, lim.max_entries);

    std::vector<std::vector<cplx>> w;
    for (const auto& e : d.edges) w.push_back(bm_to_matrix(s, e.weight));

    ScaffoldTensor t;
    t.ell = ell;
    t.base_size = n;
    t.entries.assign(out_count, cplx{0.0, 0.0});

    std::vector<int> sigma(nnodes, 0);
    for (long long it = 0; it < assign_count; ++it) {
        cplx prod{1.0, 0.0};
        for (size_t e = 0; e < d.edges.size(); ++e)
            prod *= w[e][static_cast<size_t>(sigma[d.edges[e].tail]) * n + sigma[d.edges[e].head]];
        long long slot = 0;
        for (int r : d.roots) slot = slot * n + sigma[r];
        t.entries[slot] += prod;
        for (size_t v = nnodes; v-- > 0;) {
            if (++sigma[v] < n) break;
            sigma[v] = 0;
        }
    }
    return t;
}

std::vector<std::string> elimination_order(const Diagram& d) {
    size_t nnodes = d.nodes.size();
    std::vector<std::set<int>> adj(nnodes);
    for (const auto& e : d.edges)
        if (e.tail != e.head) {
            adj[e.tail].insert(e.head);
            adj[e.head].insert(e.tail);
        }
    std::vector<bool> root(nnodes, false), gone(nnodes, false);
    for (int r : d.roots) root[r] = true;

    std::vector<std::string> order;
    size_t target = nnodes - d.roots.size();
    while (order.size() < target) {
        int best = -1;
        for (size_t v = 0; v < nnodes; ++v) {
            if (root[v] || gone[v]) continue;
            int cand = static_cast<int>(v);
            if (best < 0 || adj[cand].size() < adj[best].size() ||
                (adj[cand].size() == adj[best].size() && d.nodes[cand] < d.nodes[best]))
                best = cand;
        }
        gone[best] = true;
        order.push_back(d.nodes[best]);
        std::vector<int> nb(adj[best].begin(), adj[best].end());
        for (int a : nb) adj[a].erase(best);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
    }
    return order;
}

ScaffoldTensor eval_elimination(const Diagram& d, const Scheme& s,
                                const std::optional<std::vector<std::string>>& order, const EvalLimits& lim) {
    int n = s.size;
    int ell = d.ell();

    long long out_count = 0;
    if (!pow_fits(n, ell, lim.max_entries, out_count)) over_limit("the output tensor", n, ell, lim.max_entries);

    std::vector<bool> is_root_node(d.nodes.size(), false);
    for (int r : d.roots) is_root_node[r] = true;

    std::vector<int> elim;
    if (order) {
        std::set<int> seen;
        for (const auto& name : *order) {
            int v = d.node_index(name);
            if (is_root_node[v])
                fail(ErrorKind::InvalidInput, "elimination order lists root '" + name + "'");
            if (!seen.insert(v).second)
                fail(ErrorKind::InvalidInput, "elimination order lists '" + name + "' twice");
            elim.push_back(v);
        }
        if (elim.size() != d.nodes.size() - d.roots.size())
            fail(ErrorKind::InvalidInput, "elimination order must cover every non-root node");
    } else {
        for (const auto& name : elimination_order(d)) elim.push_back(d.node_index(name));
    }

    auto factors = edge_factors(d, s);
    cplx loose{1.0, 0.0}; // product of fully summed-out factors

    for (int v : elim) {
        std::vector<Factor> parts;
        for (size_t i = 0; i < factors.size();) {
            if (std::binary_search(factors[i].scope.begin(), factors[i].scope.end(), v)) {
                parts.push_back(std::move(factors[i]));
                factors.erase(factors.begin() + i);
            } else {
                ++i;
            }
        }
        if (parts.empty()) {
            // isolated in the current graph: summing the empty product
            loose *= static_cast<double>(n);
            continue;
        }

        std::set<int> merged;
        for (const auto& p : parts) merged.insert(p.scope.begin(), p.scope.end());
        std::vector<int> full(merged.begin(), merged.end());

        long long sweep = 0;
        if (!pow_fits(n, full.size(), lim.max_intermediate, sweep))
            over_limit("the contraction at node '" + d.nodes[v] + "'", n, full.size(), lim.max_intermediate);

        size_t v_pos = static_cast<size_t>(std::lower_bound(full.begin(), full.end(), v) - full.begin());

        Factor out;
        for (int u : full)
            if (u != v) out.scope.push_back(u);
        long long out_sz = 1;
        for (size_t i = 0; i < out.scope.size(); ++i) out_sz *= n;
        out.data.assign(out_sz, cplx{0.0, 0.0});

        // positions of each part's scope inside the merged assignment
        std::vector<std::vector<size_t>> part_pos(parts.size());
        for (size_t k = 0; k < parts.size(); ++k)
            for (int u : parts[k].scope)
                part_pos[k].push_back(
                    static_cast<size_t>(std::lower_bound(full.begin(), full.end(), u) - full.begin()));

        std::vector<int> val(full.size(), 0);
        for (long long it = 0; it < sweep; ++it) {
            cplx prod{1.0, 0.0};
            for (size_t k = 0; k < parts.size(); ++k) {
                long long idx = 0;
                for (size_t pos : part_pos[k]) idx = idx * n + val[pos];
                prod *= parts[k].data[idx];
            }
            long long oidx = 0;
            for (size_t pos = 0; pos < full.size(); ++pos)
                if (pos != v_pos) oidx = oidx * n + val[pos];
            out.data[oidx] += prod;
            for (size_t pos = full.size(); pos-- > 0;) {
                if (++val[pos] < n) break;
                val[pos] = 0;
            }
        }

        if (out.scope.empty())
            loose *= out.data[0];
        else
            factors.push_back(std::move(out));
    }

    // what is left touches roots only; assemble in root order
    std::vector<int> root_pos(d.nodes.size(), -1);
    for (int i = 0; i < ell; ++i) root_pos[d.roots[i]] = i;

    ScaffoldTensor t;
    t.ell = ell;
    t.base_size = n;
    t.entries.assign(out_count, cplx{0.0, 0.0});

    std::vector<int> rv(ell, 0);
    for (long long it = 0; it < out_count; ++it) {
        cplx prod = loose;
        for (const auto& f : factors) {
            long long idx = 0;
            for (int u : f.scope) idx = idx * n + rv[root_pos[u]];
            prod *= f.data[idx];
        }
        t.entries[it] = prod;
        for (int pos = ell; pos-- > 0;) {
            if (++rv[pos] < n) break;
            rv[pos] = 0;
        }
    }
    return t;
}

cplx inner_product(const ScaffoldTensor& a, const ScaffoldTensor& b) {
    if (a.ell != b.ell || a.entries.size() != b.entries.size() || (a.ell > 0 && a.base_size != b.base_size))
        fail(ErrorKind::InvalidInput, "tensors have different shapes");
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < a.entries.size(); ++i) acc += a.entries[i] * std::conj(b.entries[i]);
    return acc;
}

} // namespace skaff
