#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "milsynth/log.hpp"
#include "milsynth/term.hpp"

namespace mil {

/// Existentially quantified clause template. The existential variables are
/// the higher-order variables whose groundings form learned clauses; all
/// remaining variables in the template are universally quantified.
struct Metarule {
    std::string name;
    std::vector<int> existential_vars;  // higher-order var ids, head variable first
    Clause clause_template;

    int head_var() const { return clause_template.head.pred.var_id(); }

    bool mentions_existential(int var) const {
        std::vector<int> vars;
        detail::collect_vars(clause_template, vars);
        return std::find(vars.begin(), vars.end(), var) != vars.end();
    }
};

/// Fragment coordinates: max literal arity i, max body literal count j, and
/// the count k of existential higher-order variables beyond the j+1
/// predicate positions.
struct Fragment {
    int i = 1;
    int j = 0;
    int k = 0;

    bool operator==(const Fragment& o) const { return i == o.i && j == o.j && k == o.k; }
};

namespace detail {

inline Metarule make_metarule(std::string name, std::vector<int> existentials, Clause tmpl) {
    Metarule m{std::move(name), std::move(existentials), std::move(tmpl)};
    if (!m.clause_template.head.pred.is_hvar())
        throw std::invalid_argument("metarule " + m.name +
                                    ": head predicate must be an existential variable");
    for (int v : m.existential_vars)
        if (!m.mentions_existential(v))
            throw std::invalid_argument("metarule " + m.name +
                                        ": existential variable missing from template");
    return m;
}

}  // namespace detail

/// The eleven-metarule standard library: monadic, identity, inverse,
/// didentity, precon, postcon, curry1, curry2, curry3, chain, tailrec.
inline const std::vector<Metarule>& standard_metarules() {
    static const std::vector<Metarule> lib = [] {
        // Existential higher-order variables P,Q,R,S,T and universal
        // first-order variables A,B,C use fixed local ids per template.
        const int P = 0, Q = 1, R = 2, S = 3, T = 4;
        const int A = 10, B = 11, C = 12;
        auto hv = [](int v) { return Term::hvar(v); };
        auto fv = [](int v) { return Term::var(v); };
        auto atom = [](Term pred, std::vector<Term> args) {
            return Atom{std::move(pred), std::move(args), false};
        };

        std::vector<Metarule> lib;
        lib.push_back(detail::make_metarule(
            "monadic", {P, Q},
            Clause{atom(hv(P), {fv(A), fv(A)}), {atom(hv(Q), {fv(A)})}}));
        lib.push_back(detail::make_metarule(
            "identity", {P, Q},
            Clause{atom(hv(P), {fv(A), fv(B)}), {atom(hv(Q), {fv(A), fv(B)})}}));
        lib.push_back(detail::make_metarule(
            "inverse", {P, Q},
            Clause{atom(hv(P), {fv(A), fv(B)}), {atom(hv(Q), {fv(B), fv(A)})}}));
        lib.push_back(detail::make_metarule(
            "didentity", {P, Q, R},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(B)}), atom(hv(R), {fv(A), fv(B)})}}));
        lib.push_back(detail::make_metarule(
            "precon", {P, Q, R},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A)}), atom(hv(R), {fv(A), fv(B)})}}));
        lib.push_back(detail::make_metarule(
            "postcon", {P, Q, R},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(B)}), atom(hv(R), {fv(B)})}}));
        lib.push_back(detail::make_metarule(
            "curry1", {P, Q, R},
            Clause{atom(hv(P), {fv(A), fv(B)}), {atom(hv(Q), {fv(A), fv(B), hv(R)})}}));
        lib.push_back(detail::make_metarule(
            "curry2", {P, Q, R, S},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(B), hv(R), hv(S)})}}));
        lib.push_back(detail::make_metarule(
            "curry3", {P, Q, R, S, T},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(B), hv(R), hv(S), hv(T)})}}));
        lib.push_back(detail::make_metarule(
            "chain", {P, Q, R},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(C)}), atom(hv(R), {fv(C), fv(B)})}}));
        lib.push_back(detail::make_metarule(
            "tailrec", {P, Q},
            Clause{atom(hv(P), {fv(A), fv(B)}),
                   {atom(hv(Q), {fv(A), fv(C)}), atom(hv(P), {fv(C), fv(B)})}}));
        return lib;
    }();
    return lib;
}

/// i = max literal arity, j = body length, k = existentials beyond j+1
/// (floored at zero). Total and stable under variable renaming.
inline Fragment classify(const Metarule& m) {
    Fragment f;
    f.j = static_cast<int>(m.clause_template.body.size());
    f.i = m.clause_template.head.arity();
    for (const auto& a : m.clause_template.body) f.i = std::max(f.i, a.arity());
    f.k = std::max(0, static_cast<int>(m.existential_vars.size()) - (f.j + 1));
    return f;
}

/// Forward-chained check: the body's two-first-order-argument literals must
/// form a left-to-right chain from the head's first argument to its second,
/// and every single-first-order-argument literal must range over chain
/// variables. Higher-order argument positions are ignored, so the curry
/// metarules qualify through their first-order arguments.
inline bool is_forward_chained(const Metarule& m) {
    const Clause& c = m.clause_template;
    std::vector<int> head_fo;
    for (const auto& t : c.head.args)
        if (t.is_var()) head_fo.push_back(t.var_id());
    if (head_fo.size() != 2) return false;
    const int start = head_fo[0], goal = head_fo[1];
    if (start == goal) {
        log_info("metarule " + m.name +
                 ": degenerate head chain (repeated first-order variable); "
                 "not treated as forward-chained");
        return false;
    }

    struct Edge {
        int from, to;
    };
    std::vector<Edge> edges;
    std::vector<int> monadic_args;
    for (const auto& a : c.body) {
        if (a.negated) return false;
        std::vector<int> fo;
        for (const auto& t : a.args) {
            if (t.is_var()) fo.push_back(t.var_id());
            else if (!t.is_hvar()) return false;  // ground terms not in Def. 7's form
        }
        if (fo.size() == 2) edges.push_back({fo[0], fo[1]});
        else if (fo.size() == 1) monadic_args.push_back(fo[0]);
        else return false;
    }

    // Arrange all edges into one path start -> ... -> goal.
    std::vector<bool> used(edges.size(), false);
    std::vector<int> chain_vars{start};
    auto dfs = [&](auto&& self, int at, std::size_t remaining) -> bool {
        if (remaining == 0) return at == goal;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (used[e] || edges[e].from != at) continue;
            used[e] = true;
            chain_vars.push_back(edges[e].to);
            if (self(self, edges[e].to, remaining - 1)) return true;
            chain_vars.pop_back();
            used[e] = false;
        }
        return false;
    };
    if (!dfs(dfs, start, edges.size())) return false;
    for (int v : monadic_args)
        if (std::find(chain_vars.begin(), chain_vars.end(), v) == chain_vars.end()) return false;
    return true;
}

/// Ordered metarule collection with name lookup.
class MetaruleLibrary {
public:
    MetaruleLibrary() = default;
    explicit MetaruleLibrary(std::vector<Metarule> rules) : rules_(std::move(rules)) {}

    static MetaruleLibrary standard() { return MetaruleLibrary(standard_metarules()); }

    const std::vector<Metarule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }
    std::size_t size() const { return rules_.size(); }

    const Metarule* find(const std::string& name) const {
        for (const auto& m : rules_)
            if (m.name == name) return &m;
        return nullptr;
    }

    void add(Metarule m) { rules_.push_back(std::move(m)); }

private:
    std::vector<Metarule> rules_;
};

}  // namespace mil
