#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "milsynth/value.hpp"

namespace mil {

/// Variables bind according to their kind: first-order variables may only be
/// bound to ground values or other first-order variables, higher-order
/// variables only to predicate symbols or other higher-order variables.
enum class VarKind : std::uint8_t { FirstOrder, HigherOrder };

/// Predicate symbol with its arity (e.g. succ/2).
struct PredSym {
    std::string name;
    int arity = 0;

    bool operator==(const PredSym& o) const { return arity == o.arity && name == o.name; }
    bool operator!=(const PredSym& o) const { return !(*this == o); }
    bool operator<(const PredSym& o) const {
        return name != o.name ? name < o.name : arity < o.arity;
    }
    std::string to_string() const { return name + "/" + std::to_string(arity); }
};

/// A term in the function-free higher-order language: a variable (first- or
/// higher-order), a structured ground value, or a predicate symbol.
class Term {
public:
    enum class Kind : std::uint8_t { Var, HVar, Value, Pred };

    Term() : Term(value(Value::nil())) {}

    static Term var(int id) { return Term(Kind::Var, id); }
    static Term hvar(int id) { return Term(Kind::HVar, id); }
    static Term value(Value v) {
        Term t(Kind::Value, 0);
        t.value_ = std::move(v);
        return t;
    }
    static Term pred(std::string name, int arity) {
        Term t(Kind::Pred, 0);
        t.pred_ = PredSym{std::move(name), arity};
        return t;
    }
    static Term pred(PredSym p) {
        Term t(Kind::Pred, 0);
        t.pred_ = std::move(p);
        return t;
    }

    Kind kind() const { return kind_; }
    bool is_var() const { return kind_ == Kind::Var; }
    bool is_hvar() const { return kind_ == Kind::HVar; }
    bool is_any_var() const { return kind_ == Kind::Var || kind_ == Kind::HVar; }
    bool is_value() const { return kind_ == Kind::Value; }
    bool is_pred() const { return kind_ == Kind::Pred; }

    int var_id() const { return var_; }
    VarKind var_kind() const {
        return kind_ == Kind::Var ? VarKind::FirstOrder : VarKind::HigherOrder;
    }
    const Value& get_value() const { return value_; }
    const PredSym& get_pred() const { return pred_; }

    bool operator==(const Term& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::Var:
            case Kind::HVar: return var_ == o.var_;
            case Kind::Value: return value_ == o.value_;
            case Kind::Pred: return pred_ == o.pred_;
        }
        return false;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }

private:
    Term(Kind k, int v) : kind_(k), var_(v) {}

    Kind kind_;
    int var_ = 0;
    Value value_ = Value::nil();
    PredSym pred_;
};

/// Predicate application. The predicate position holds a predicate symbol or
/// a higher-order variable. `negated` marks negation-as-failure body atoms.
struct Atom {
    Term pred;
    std::vector<Term> args;
    bool negated = false;

    int arity() const { return static_cast<int>(args.size()); }

    bool operator==(const Atom& o) const {
        return negated == o.negated && pred == o.pred && args == o.args;
    }
    bool operator!=(const Atom& o) const { return !(*this == o); }
};

inline Atom make_atom(const std::string& name, std::vector<Term> args, bool negated = false) {
    return Atom{Term::pred(name, static_cast<int>(args.size())), std::move(args), negated};
}

/// Definite clause: head plus (possibly empty) body.
struct Clause {
    Atom head;
    std::vector<Atom> body;

    bool operator==(const Clause& o) const { return head == o.head && body == o.body; }
};

namespace detail {
inline void collect_vars(const Term& t, std::vector<int>& out) {
    if (t.is_any_var()) out.push_back(t.var_id());
}
inline void collect_vars(const Atom& a, std::vector<int>& out) {
    collect_vars(a.pred, out);
    for (const auto& t : a.args) collect_vars(t, out);
}
inline void collect_vars(const Clause& c, std::vector<int>& out) {
    collect_vars(c.head, out);
    for (const auto& a : c.body) collect_vars(a, out);
}
}  // namespace detail

/// Mutable binding environment with an undo trail. All engine-side
/// unification runs against a store; `Substitution` below is the
/// immutable snapshot form used at module boundaries.
class BindingStore {
public:
    using Mark = std::size_t;

    bool bound(int var) const { return bindings_.count(var) != 0; }

    const Term* lookup(int var) const {
        auto it = bindings_.find(var);
        return it == bindings_.end() ? nullptr : &it->second;
    }

    void bind(int var, Term t) {
        bindings_.emplace(var, std::move(t));
        trail_.push_back(var);
    }

    Mark mark() const { return trail_.size(); }

    void undo(Mark m) {
        while (trail_.size() > m) {
            bindings_.erase(trail_.back());
            trail_.pop_back();
        }
    }

    /// Follow variable chains until a non-variable term or an unbound variable.
    Term walk(Term t) const {
        while (t.is_any_var()) {
            const Term* next = lookup(t.var_id());
            if (!next) return t;
            t = *next;
        }
        return t;
    }

    /// Fully resolve a term: like walk (terms are non-recursive, so walking
    /// the chain is all that is needed).
    Term resolve(const Term& t) const { return walk(t); }

    Atom resolve(const Atom& a) const {
        Atom out;
        out.negated = a.negated;
        out.pred = walk(a.pred);
        out.args.reserve(a.args.size());
        for (const auto& t : a.args) out.args.push_back(walk(t));
        return out;
    }

    Clause resolve(const Clause& c) const {
        Clause out;
        out.head = resolve(c.head);
        out.body.reserve(c.body.size());
        for (const auto& a : c.body) out.body.push_back(resolve(a));
        return out;
    }

    std::size_t size() const { return bindings_.size(); }

private:
    std::unordered_map<int, Term> bindings_;
    std::vector<int> trail_;
};

namespace detail {

/// Can `var` (of the given kind) be bound to walked term `t`?
inline bool kind_admits(VarKind k, const Term& t) {
    if (k == VarKind::FirstOrder) return t.is_value() || t.is_var();
    return t.is_pred() || t.is_hvar();
}

inline bool unify_terms(const Term& a, const Term& b, BindingStore& store) {
    Term x = store.walk(a);
    Term y = store.walk(b);
    if (x == y) return true;
    if (x.is_any_var()) {
        if (!kind_admits(x.var_kind(), y)) return false;
        store.bind(x.var_id(), y);
        return true;
    }
    if (y.is_any_var()) {
        if (!kind_admits(y.var_kind(), x)) return false;
        store.bind(y.var_id(), x);
        return true;
    }
    if (x.is_value() && y.is_value()) return x.get_value() == y.get_value();
    if (x.is_pred() && y.is_pred()) return x.get_pred() == y.get_pred();
    return false;
}

inline bool unify_atoms(const Atom& a, const Atom& b, BindingStore& store) {
    if (a.negated != b.negated) return false;
    if (a.args.size() != b.args.size()) return false;
    if (!unify_terms(a.pred, b.pred, store)) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify_terms(a.args[i], b.args[i], store)) return false;
    return true;
}

}  // namespace detail

/// Idempotent variable binding map. Exposed at the logic-core boundary;
/// internally backed by the same unification code as BindingStore.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }

    std::optional<Term> lookup(int var) const {
        auto it = bindings_.find(var);
        if (it == bindings_.end()) return std::nullopt;
        return it->second;
    }

    Term apply(const Term& t) const { return store().walk(t); }

    Atom apply(const Atom& a) const { return store().resolve(a); }

    Clause apply(const Clause& c) const { return store().resolve(c); }

    const std::map<int, Term>& bindings() const { return bindings_; }

    friend std::optional<Substitution> unify(const Atom&, const Atom&, const Substitution&);

private:
    BindingStore store() const {
        BindingStore s;
        for (const auto& [v, t] : bindings_) s.bind(v, t);
        return s;
    }

    std::map<int, Term> bindings_;
};

/// Most general unifier of two atoms, extending `base`. Returns nullopt on
/// clash (predicate/arity mismatch, inconsistent bindings, or variable-kind
/// violations); never throws on ground/ground mismatch.
inline std::optional<Substitution> unify(const Atom& a, const Atom& b,
                                         const Substitution& base = {}) {
    BindingStore store;
    for (const auto& [v, t] : base.bindings_) store.bind(v, t);
    if (!detail::unify_atoms(a, b, store)) return std::nullopt;
    Substitution out;
    std::vector<int> vars;
    detail::collect_vars(a, vars);
    detail::collect_vars(b, vars);
    for (const auto& [v, t] : base.bindings_) {
        (void)t;
        vars.push_back(v);
    }
    for (int v : vars) {
        if (const Term* bt = store.lookup(v)) {
            Term resolved = store.walk(*bt);
            if (!(resolved.is_any_var() && resolved.var_id() == v))
                out.bindings_.emplace(v, resolved);
        }
    }
    return out;
}

/// apply(s, x): every bound variable replaced, unbound variables unchanged.
inline Term apply(const Substitution& s, const Term& t) { return s.apply(t); }
inline Atom apply(const Substitution& s, const Atom& a) { return s.apply(a); }
inline Clause apply(const Substitution& s, const Clause& c) { return s.apply(c); }

/// Variant test: true when `a` and `b` are equal up to a bijective renaming
/// of (unbound) variables. Both atoms should already be resolved against the
/// caller's store.
inline bool variant(const Atom& a, const Atom& b) {
    if (a.negated != b.negated || a.args.size() != b.args.size()) return false;
    std::unordered_map<int, int> fwd, bwd;
    auto match = [&](const Term& x, const Term& y) {
        if (x.is_any_var() && y.is_any_var()) {
            if (x.kind() != y.kind()) return false;
            auto f = fwd.find(x.var_id());
            auto g = bwd.find(y.var_id());
            if (f == fwd.end() && g == bwd.end()) {
                fwd.emplace(x.var_id(), y.var_id());
                bwd.emplace(y.var_id(), x.var_id());
                return true;
            }
            return f != fwd.end() && g != bwd.end() && f->second == y.var_id() &&
                   g->second == x.var_id();
        }
        return x == y;
    };
    if (!match(a.pred, b.pred)) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!match(a.args[i], b.args[i])) return false;
    return true;
}

/// Fresh-variable allocator. Each proof/parse owns one; ids are unique
/// within it across both variable kinds.
class VarSupply {
public:
    int fresh() { return next_++; }
    int peek() const { return next_; }
    void reserve_up_to(int id) { next_ = std::max(next_, id + 1); }

private:
    int next_ = 0;
};

/// Copy a clause replacing every variable with a fresh one from `supply`.
inline Clause rename_clause(const Clause& c, VarSupply& supply) {
    std::unordered_map<int, int> remap;
    auto rename_term = [&](const Term& t) {
        if (!t.is_any_var()) return t;
        auto [it, inserted] = remap.emplace(t.var_id(), 0);
        if (inserted) it->second = supply.fresh();
        return t.is_var() ? Term::var(it->second) : Term::hvar(it->second);
    };
    Clause out;
    out.head.negated = c.head.negated;
    out.head.pred = rename_term(c.head.pred);
    for (const auto& t : c.head.args) out.head.args.push_back(rename_term(t));
    for (const auto& a : c.body) {
        Atom b;
        b.negated = a.negated;
        b.pred = rename_term(a.pred);
        for (const auto& t : a.args) b.args.push_back(rename_term(t));
        out.body.push_back(std::move(b));
    }
    return out;
}

inline bool is_ground(const Term& t) { return !t.is_any_var(); }
inline bool is_ground(const Atom& a) {
    if (a.pred.is_any_var()) return false;
    for (const auto& t : a.args)
        if (t.is_any_var()) return false;
    return true;
}

}  // namespace mil
