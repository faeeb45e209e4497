#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "milsynth/limits.hpp"
#include "milsynth/term.hpp"

namespace mil {

enum class EvalStatus { Success, Failure, UnknownPredicate, Underinstantiated };

/// Native evaluator over ground values. Receives the goal's argument terms
/// (walked against the store), binds output positions on success.
/// Evaluators are deterministic given ground inputs.
using BuiltinFn = std::function<EvalStatus(const std::vector<Term>&, BindingStore&)>;

struct Builtin {
    PredSym sig;
    BuiltinFn fn;
};

namespace builtin_detail {

inline std::optional<Value> ground_arg(const Term& t, BindingStore& s) {
    Term w = s.walk(t);
    if (w.is_value()) return w.get_value();
    return std::nullopt;
}

/// Unify an output slot with a computed value.
inline EvalStatus put(const Term& slot, const Value& v, BindingStore& s) {
    Term w = s.walk(slot);
    if (w.is_var()) {
        s.bind(w.var_id(), Term::value(v));
        return EvalStatus::Success;
    }
    if (w.is_value()) return w.get_value() == v ? EvalStatus::Success : EvalStatus::Failure;
    return EvalStatus::Failure;  // higher-order slot cannot take a value
}

inline std::optional<int> letter_index(const Value& v) {
    char c = 0;
    if (v.is_char()) c = v.char_value();
    else if (v.is_symbol() && v.symbol_name().size() == 1) c = v.symbol_name()[0];
    else return std::nullopt;
    if (c < 'a' || c > 'z') return std::nullopt;
    return c - 'a';
}

// -- waiter state helpers ---------------------------------------------------
//
// A waiter state is (robot_position, cups); a cup is (position, up|down,
// none|tea|coffee, tea|coffee). Actions are partial functions on states.

struct WaiterState {
    std::int64_t pos;
    std::vector<Value> cups;
};

inline std::optional<WaiterState> waiter_state(const Value& v) {
    if (!v.is_tuple() || v.items().size() != 2) return std::nullopt;
    const Value& pos = v.items()[0];
    const Value& cups = v.items()[1];
    if (!pos.is_int() || !cups.is_list()) return std::nullopt;
    return WaiterState{pos.int_value(), cups.items()};
}

inline Value waiter_pack(const WaiterState& s) {
    return Value::tuple({Value::integer(s.pos), Value::list(s.cups)});
}

inline std::optional<std::size_t> cup_at(const WaiterState& s) {
    for (std::size_t i = 0; i < s.cups.size(); ++i) {
        const Value& cup = s.cups[i];
        if (cup.is_tuple() && cup.items().size() == 4 && cup.items()[0].is_int() &&
            cup.items()[0].int_value() == s.pos)
            return i;
    }
    return std::nullopt;
}

inline Value cup_with(const Value& cup, int field, const Value& v) {
    std::vector<Value> items = cup.items();
    items[static_cast<std::size_t>(field)] = v;
    return Value::tuple(std::move(items));
}

// -- chess piece helpers ----------------------------------------------------
//
// A piece is (type, id, file, rank).

inline bool piece_shape(const Value& v) {
    return v.is_tuple() && v.items().size() == 4 && v.items()[2].is_int() &&
           v.items()[3].is_int();
}

}  // namespace builtin_detail

/// Compiled background knowledge: native built-in evaluators plus user
/// clauses proved deductively, with the prim whitelist that controls which
/// predicates the engines may fetch as hypothesis body literals.
class CompiledRegistry {
public:
    void register_builtin(std::string name, int arity, BuiltinFn fn) {
        PredSym sig{std::move(name), arity};
        if (by_sig_.count(sig)) return;
        by_sig_.emplace(sig, builtins_.size());
        builtins_.push_back(Builtin{sig, std::move(fn)});
    }

    void add_user_clause(const Clause& c) {
        if (!c.head.pred.is_pred())
            throw std::invalid_argument("compiled clause head must be a ground predicate");
        user_clauses_.push_back(c);
        user_by_sig_[c.head.pred.get_pred()].push_back(user_clauses_.size() - 1);
    }

    void add_prim(const PredSym& sig) {
        if (whitelist_set_.insert(sig).second) whitelist_.push_back(sig);
    }

    bool is_builtin(const PredSym& sig) const { return by_sig_.count(sig) != 0; }
    bool has_user_clauses(const PredSym& sig) const { return user_by_sig_.count(sig) != 0; }
    bool is_compiled(const PredSym& sig) const {
        return is_builtin(sig) || has_user_clauses(sig);
    }
    bool is_compiled_name(const std::string& name) const {
        for (const auto& b : builtins_)
            if (b.sig.name == name) return true;
        for (const auto& [sig, idxs] : user_by_sig_) {
            (void)idxs;
            if (sig.name == name) return true;
        }
        return false;
    }
    bool is_whitelisted(const PredSym& sig) const { return whitelist_set_.count(sig) != 0; }

    const Builtin* find_builtin(const PredSym& sig) const {
        auto it = by_sig_.find(sig);
        return it == by_sig_.end() ? nullptr : &builtins_[it->second];
    }

    std::vector<const Clause*> user_clauses_for(const PredSym& sig) const {
        std::vector<const Clause*> out;
        auto it = user_by_sig_.find(sig);
        if (it != user_by_sig_.end())
            for (std::size_t i : it->second) out.push_back(&user_clauses_[i]);
        return out;
    }

    /// Whitelisted predicates in prim-declaration order.
    const std::vector<PredSym>& whitelist() const { return whitelist_; }

    const std::vector<Clause>& user_clauses() const { return user_clauses_; }

    /// Every whitelisted predicate must be backed by a built-in or a user
    /// clause; user clause bodies may reference only compiled predicates.
    void validate() const {
        for (const auto& sig : whitelist_)
            if (!is_compiled(sig))
                throw std::invalid_argument("prim " + sig.to_string() +
                                            " has no compiled definition");
        for (const auto& c : user_clauses_) {
            for (const auto& a : c.body) {
                if (!a.pred.is_pred())
                    throw std::invalid_argument(
                        "compiled clause bodies cannot contain predicate variables");
                if (!is_compiled(a.pred.get_pred()))
                    throw std::invalid_argument("compiled clause for " +
                                                c.head.pred.get_pred().to_string() +
                                                " references non-compiled " +
                                                a.pred.get_pred().to_string());
            }
        }
    }

private:
    std::vector<Builtin> builtins_;
    std::map<PredSym, std::size_t> by_sig_;
    std::vector<Clause> user_clauses_;
    std::map<PredSym, std::vector<std::size_t>> user_by_sig_;
    std::vector<PredSym> whitelist_;
    std::set<PredSym> whitelist_set_;
};

namespace builtin_detail {

using ES = EvalStatus;

inline void register_list_ops(CompiledRegistry& r) {
    r.register_builtin("empty", 1, [](const std::vector<Term>& a, BindingStore& s) {
        Term w = s.walk(a[0]);
        if (w.is_var()) {
            s.bind(w.var_id(), Term::value(Value::nil()));
            return ES::Success;
        }
        if (!w.is_value()) return ES::Failure;
        return w.get_value().is_list() && w.get_value().items().empty() ? ES::Success
                                                                        : ES::Failure;
    });
    r.register_builtin("head", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        if (!v->is_list() || v->items().empty()) return ES::Failure;
        return put(a[1], v->items().front(), s);
    });
    r.register_builtin("tail", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        if (!v->is_list() || v->items().empty()) return ES::Failure;
        std::vector<Value> rest(v->items().begin() + 1, v->items().end());
        return put(a[1], Value::list(std::move(rest)), s);
    });
    r.register_builtin("prepend", 3, [](const std::vector<Term>& a, BindingStore& s) {
        auto h = ground_arg(a[0], s);
        auto t = ground_arg(a[1], s);
        if (h && t) {
            if (!t->is_list()) return ES::Failure;
            std::vector<Value> items{*h};
            items.insert(items.end(), t->items().begin(), t->items().end());
            return put(a[2], Value::list(std::move(items)), s);
        }
        auto l = ground_arg(a[2], s);
        if (!l) return ES::Underinstantiated;
        if (!l->is_list() || l->items().empty()) return ES::Failure;
        std::vector<Value> rest(l->items().begin() + 1, l->items().end());
        if (put(a[0], l->items().front(), s) != ES::Success) return ES::Failure;
        return put(a[1], Value::list(std::move(rest)), s);
    });
}

inline void register_hold(CompiledRegistry& r) {
    r.register_builtin("hold", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (v) return put(a[1], *v, s);
        auto w = ground_arg(a[1], s);
        if (w) return put(a[0], *w, s);
        return ES::Underinstantiated;
    });
}

inline void register_list_pack(CompiledRegistry& r, bool wrap26) {
    register_list_ops(r);
    register_hold(r);
    r.register_builtin("last", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        if (!v->is_list() || v->items().empty()) return ES::Failure;
        return put(a[1], v->items().back(), s);
    });
    r.register_builtin("reverse", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        if (!v->is_list()) return ES::Failure;
        std::vector<Value> items(v->items().rbegin(), v->items().rend());
        return put(a[1], Value::list(std::move(items)), s);
    });
    // concat(A,B,C): C is A with the element B appended at the back.
    r.register_builtin("concat", 3, [](const std::vector<Term>& a, BindingStore& s) {
        auto l = ground_arg(a[0], s);
        auto e = ground_arg(a[1], s);
        if (l && e) {
            if (!l->is_list()) return ES::Failure;
            std::vector<Value> items = l->items();
            items.push_back(*e);
            return put(a[2], Value::list(std::move(items)), s);
        }
        auto c = ground_arg(a[2], s);
        if (!c) return ES::Underinstantiated;
        if (!c->is_list() || c->items().empty()) return ES::Failure;
        std::vector<Value> front(c->items().begin(), c->items().end() - 1);
        if (put(a[0], Value::list(std::move(front)), s) != ES::Success) return ES::Failure;
        return put(a[1], c->items().back(), s);
    });
    // succ/prec wrap mod 26 only in the encryption pack.
    auto step = [wrap26](const std::vector<Term>& a, BindingStore& s, std::int64_t delta) {
        auto x = ground_arg(a[0], s);
        if (x) {
            if (!x->is_int()) return ES::Failure;
            std::int64_t n = x->int_value() + delta;
            if (wrap26) {
                if (x->int_value() < 0 || x->int_value() > 25) return ES::Failure;
                n = ((n % 26) + 26) % 26;
            }
            return put(a[1], Value::integer(n), s);
        }
        auto y = ground_arg(a[1], s);
        if (!y) return ES::Underinstantiated;
        if (!y->is_int()) return ES::Failure;
        std::int64_t n = y->int_value() - delta;
        if (wrap26) {
            if (y->int_value() < 0 || y->int_value() > 25) return ES::Failure;
            n = ((n % 26) + 26) % 26;
        }
        return put(a[0], Value::integer(n), s);
    };
    r.register_builtin("succ", 2, [step](const std::vector<Term>& a, BindingStore& s) {
        return step(a, s, 1);
    });
    r.register_builtin("prec", 2, [step](const std::vector<Term>& a, BindingStore& s) {
        return step(a, s, -1);
    });
    r.register_builtin("char_to_int", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto c = ground_arg(a[0], s);
        if (c) {
            auto idx = letter_index(*c);
            return idx ? put(a[1], Value::integer(*idx), s) : ES::Failure;
        }
        auto n = ground_arg(a[1], s);
        if (!n) return ES::Underinstantiated;
        if (!n->is_int() || n->int_value() < 0 || n->int_value() > 25) return ES::Failure;
        return put(a[0],
                   Value::symbol(std::string(1, static_cast<char>('a' + n->int_value()))), s);
    });
    r.register_builtin("int_to_char", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto n = ground_arg(a[0], s);
        if (n) {
            if (!n->is_int() || n->int_value() < 0 || n->int_value() > 25) return ES::Failure;
            return put(
                a[1], Value::symbol(std::string(1, static_cast<char>('a' + n->int_value()))),
                s);
        }
        auto c = ground_arg(a[1], s);
        if (!c) return ES::Underinstantiated;
        auto idx = letter_index(*c);
        return idx ? put(a[0], Value::integer(*idx), s) : ES::Failure;
    });
}

inline void register_waiter_pack(CompiledRegistry& r) {
    r.register_builtin("at_end", 1, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        auto st = waiter_state(*v);
        if (!st) return ES::Failure;
        return st->pos == static_cast<std::int64_t>(st->cups.size()) ? ES::Success
                                                                     : ES::Failure;
    });
    auto wants = [](const std::string& drink) {
        return [drink](const std::vector<Term>& a, BindingStore& s) {
            auto v = ground_arg(a[0], s);
            if (!v) return ES::Underinstantiated;
            auto st = waiter_state(*v);
            if (!st) return ES::Failure;
            auto i = cup_at(*st);
            if (!i) return ES::Failure;
            const Value& pref = st->cups[*i].items()[3];
            return pref.is_symbol() && pref.symbol_name() == drink ? ES::Success : ES::Failure;
        };
    };
    r.register_builtin("wants_tea", 1, wants("tea"));
    r.register_builtin("wants_coffee", 1, wants("coffee"));
    auto move = [](std::int64_t delta) {
        return [delta](const std::vector<Term>& a, BindingStore& s) {
            auto v = ground_arg(a[0], s);
            if (!v) return ES::Underinstantiated;
            auto st = waiter_state(*v);
            if (!st) return ES::Failure;
            std::int64_t next = st->pos + delta;
            if (next < 0 || next > static_cast<std::int64_t>(st->cups.size()))
                return ES::Failure;
            WaiterState ns{next, st->cups};
            return put(a[1], waiter_pack(ns), s);
        };
    };
    r.register_builtin("move_right", 2, move(1));
    r.register_builtin("move_left", 2, move(-1));
    r.register_builtin("turn_cup_over", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        auto st = waiter_state(*v);
        if (!st) return ES::Failure;
        auto i = cup_at(*st);
        if (!i) return ES::Failure;
        const Value& orient = st->cups[*i].items()[1];
        if (!orient.is_symbol()) return ES::Failure;
        Value flipped = Value::symbol(orient.symbol_name() == "down" ? "up" : "down");
        WaiterState ns{st->pos, st->cups};
        ns.cups[*i] = cup_with(ns.cups[*i], 1, flipped);
        return put(a[1], waiter_pack(ns), s);
    });
    auto pour = [](const std::string& drink) {
        return [drink](const std::vector<Term>& a, BindingStore& s) {
            auto v = ground_arg(a[0], s);
            if (!v) return ES::Underinstantiated;
            auto st = waiter_state(*v);
            if (!st) return ES::Failure;
            auto i = cup_at(*st);
            if (!i) return ES::Failure;
            const auto& cup = st->cups[*i].items();
            // pouring requires the cup at the robot position to be up and empty
            if (!(cup[1].is_symbol() && cup[1].symbol_name() == "up")) return ES::Failure;
            if (!(cup[2].is_symbol() && cup[2].symbol_name() == "none")) return ES::Failure;
            WaiterState ns{st->pos, st->cups};
            ns.cups[*i] = cup_with(ns.cups[*i], 2, Value::symbol(drink));
            return put(a[1], waiter_pack(ns), s);
        };
    };
    r.register_builtin("pour_tea", 2, pour("tea"));
    r.register_builtin("pour_coffee", 2, pour("coffee"));
}

inline void register_chess_pack(CompiledRegistry& r) {
    auto rank8 = [](const Value& v) { return piece_shape(v) && v.items()[3].int_value() == 8; };
    auto pawn = [](const Value& v) {
        return piece_shape(v) && v.items()[0].is_symbol() && v.items()[0].symbol_name() == "p";
    };
    auto unary = [](std::function<bool(const Value&)> pred) {
        return [pred](const std::vector<Term>& a, BindingStore& s) {
            auto v = ground_arg(a[0], s);
            if (!v) return ES::Underinstantiated;
            return pred(*v) ? ES::Success : ES::Failure;
        };
    };
    r.register_builtin("rank8", 1, unary(rank8));
    r.register_builtin("not_rank8", 1,
                       unary([rank8](const Value& v) { return piece_shape(v) && !rank8(v); }));
    r.register_builtin("pawn", 1, unary(pawn));
    r.register_builtin("not_pawn", 1,
                       unary([pawn](const Value& v) { return piece_shape(v) && !pawn(v); }));
    r.register_builtin("forward", 2, [](const std::vector<Term>& a, BindingStore& s) {
        auto v = ground_arg(a[0], s);
        if (!v) return ES::Underinstantiated;
        if (!piece_shape(*v)) return ES::Failure;
        std::int64_t rank = v->items()[3].int_value();
        if (rank >= 8) return ES::Failure;
        std::vector<Value> items = v->items();
        items[3] = Value::integer(rank + 1);
        return put(a[1], Value::tuple(std::move(items)), s);
    });
    register_hold(r);
}

}  // namespace builtin_detail

/// Build a registry for a named built-in pack: list, waiter, chess,
/// encryption, or none. The list primitives needed by the interpreted BK
/// (empty/head/tail/prepend) are always registered so higher-order
/// definitions evaluate in every domain; they are only fetchable by the
/// engines when a prim declaration whitelists them.
inline CompiledRegistry make_registry(const std::string& pack) {
    CompiledRegistry r;
    if (pack == "list") {
        builtin_detail::register_list_pack(r, /*wrap26=*/false);
    } else if (pack == "encryption") {
        builtin_detail::register_list_pack(r, /*wrap26=*/true);
    } else if (pack == "waiter") {
        builtin_detail::register_waiter_pack(r);
    } else if (pack == "chess") {
        builtin_detail::register_chess_pack(r);
    } else if (pack != "none") {
        throw std::invalid_argument("unknown builtin pack: " + pack);
    }
    builtin_detail::register_list_ops(r);
    builtin_detail::register_hold(r);
    return r;
}

// ---------------------------------------------------------------------------
// Deductive proof over compiled BK only.
// ---------------------------------------------------------------------------

namespace detail {

/// Stack-allocated continuation (avoids std::function allocation in the
/// proof hot path). The referenced callable must outlive the Cont.
struct Cont {
    bool (*fn)(void*);
    void* env;
    bool operator()() const { return fn(env); }
};

template <typename F>
Cont make_cont(F& f) {
    return Cont{[](void* env) { return (*static_cast<F*>(env))(); }, &f};
}

}  // namespace detail

/// Backtracking solver for goals over compiled BK (built-ins and user
/// clauses). `k` is invoked per solution; returning true cuts the search.
/// Negated goals use negation as failure and require ground arguments.
inline bool solve_compiled(const Atom& goal, const CompiledRegistry& reg, BindingStore& store,
                           VarSupply& supply, Budget& budget, const detail::Cont& k);

namespace detail {

inline bool solve_compiled_seq(const std::vector<Atom>& goals, std::size_t idx,
                               const CompiledRegistry& reg, BindingStore& store,
                               VarSupply& supply, Budget& budget, const Cont& k) {
    if (idx == goals.size()) return k();
    auto rest = [&]() {
        return solve_compiled_seq(goals, idx + 1, reg, store, supply, budget, k);
    };
    return solve_compiled(goals[idx], reg, store, supply, budget, make_cont(rest));
}

}  // namespace detail

inline bool solve_compiled(const Atom& goal, const CompiledRegistry& reg, BindingStore& store,
                           VarSupply& supply, Budget& budget, const detail::Cont& k) {
    if (!budget.tick()) return false;
    Term pred = store.walk(goal.pred);
    if (!pred.is_pred()) return false;  // compiled goals need a ground predicate
    const PredSym& sig = pred.get_pred();
    if (sig.arity != goal.arity()) return false;

    if (goal.negated) {
        // Negation as failure: compiled predicates with ground args only.
        for (const auto& t : goal.args)
            if (store.walk(t).is_any_var()) return false;
        Atom positive{pred, goal.args, false};
        BindingStore::Mark m = store.mark();
        auto succeed_once = [] { return true; };
        auto sc = detail::make_cont(succeed_once);
        bool held = solve_compiled(positive, reg, store, supply, budget, sc);
        store.undo(m);
        if (!budget.ok()) return false;
        return held ? false : k();
    }

    if (const Builtin* b = reg.find_builtin(sig)) {
        BindingStore::Mark m = store.mark();
        if (b->fn(goal.args, store) == EvalStatus::Success) {
            if (k()) return true;
        }
        store.undo(m);
        return false;
    }

    auto clauses = reg.user_clauses_for(sig);
    if (clauses.empty()) return false;
    DepthGuard depth(budget);
    if (!depth.ok()) return false;
    for (const Clause* c : clauses) {
        if (!budget.ok()) return false;
        BindingStore::Mark m = store.mark();
        Clause fresh = rename_clause(*c, supply);
        if (detail::unify_atoms(goal, fresh.head, store)) {
            if (detail::solve_compiled_seq(fresh.body, 0, reg, store, supply, budget, k))
                return true;
        }
        store.undo(m);
    }
    return false;
}

/// Outcome of a single deductive evaluation: status plus the output
/// bindings for the goal's unbound positions.
struct CompiledEval {
    EvalStatus status = EvalStatus::Failure;
    Substitution bindings;

    bool ok() const { return status == EvalStatus::Success; }
};

/// Evaluate one atom against compiled BK, first solution only. Unknown
/// predicates and insufficiently instantiated inputs are reported as
/// distinct statuses. Negated atoms succeed iff the positive atom fails.
inline CompiledEval eval_compiled(const Atom& atom, const CompiledRegistry& reg,
                                  long long step_budget = 100'000) {
    CompiledEval out;
    Term pred = atom.pred;
    if (!pred.is_pred()) {
        out.status = EvalStatus::UnknownPredicate;
        return out;
    }
    if (!reg.is_compiled(pred.get_pred())) {
        out.status = EvalStatus::UnknownPredicate;
        return out;
    }
    BindingStore store;
    VarSupply supply;
    std::vector<int> vars;
    detail::collect_vars(atom, vars);
    for (int v : vars) supply.reserve_up_to(v);
    Budget budget(step_budget);

    // Direct built-in call preserves the underinstantiation status.
    if (!atom.negated) {
        if (const Builtin* b = reg.find_builtin(pred.get_pred())) {
            out.status = b->fn(atom.args, store);
            if (out.status == EvalStatus::Success) {
                Substitution s;
                auto u = unify(atom, store.resolve(atom));
                if (u) out.bindings = *u;
            }
            return out;
        }
    }

    auto record = [&]() {
        auto u = unify(atom, store.resolve(atom));
        if (u) out.bindings = *u;
        return true;
    };
    auto rc = detail::make_cont(record);
    out.status = solve_compiled(atom, reg, store, supply, budget, rc) ? EvalStatus::Success
                                                                      : EvalStatus::Failure;
    return out;
}

// ---------------------------------------------------------------------------
// Interpreted BK: higher-order definitions proved by meta-interpretation.
// ---------------------------------------------------------------------------

/// Named set of universally quantified higher-order clauses sharing one head
/// predicate. Proved by the engines through meta-interpretation, so
/// predicate-valued arguments can be invented symbols.
struct HigherOrderDefinition {
    std::string name;
    int arity = 0;
    std::vector<Clause> clauses;
};

/// Ordered collection of higher-order definitions.
class IbkLibrary {
public:
    IbkLibrary() = default;
    explicit IbkLibrary(std::vector<HigherOrderDefinition> defs) : defs_(std::move(defs)) {}

    const std::vector<HigherOrderDefinition>& defs() const { return defs_; }
    bool empty() const { return defs_.empty(); }

    const HigherOrderDefinition* find(const std::string& name, int arity) const {
        for (const auto& d : defs_)
            if (d.name == name && d.arity == arity) return &d;
        return nullptr;
    }

    bool has_name(const std::string& name) const {
        for (const auto& d : defs_)
            if (d.name == name) return true;
        return false;
    }

    void add(HigherOrderDefinition def) { defs_.push_back(std::move(def)); }

    /// Restrict to a subset of definition names (order preserved).
    IbkLibrary select(const std::vector<std::string>& names) const {
        IbkLibrary out;
        for (const auto& d : defs_)
            if (std::find(names.begin(), names.end(), d.name) != names.end()) out.add(d);
        return out;
    }

private:
    std::vector<HigherOrderDefinition> defs_;
};

/// The shipped higher-order definitions: map/3, fold/4, until/4,
/// ifthenelse/5, reduceback/3, plus closure/3 and kstar/3.
///
/// List traversal is spelled with the list primitives (head/tail/prepend/
/// empty) since clause arguments are variables or ground values, never
/// constructor patterns.
inline const IbkLibrary& ibk_library() {
    static const IbkLibrary lib = [] {
        // First-order variable ids.
        const int A = 0, B = 1, C = 2, H = 3, T = 4, H2 = 5, T2 = 6, Acc = 7, Acc2 = 8;
        // Higher-order variable ids.
        const int F = 20, Cond = 21, Then = 22, Else = 23, P = 24;
        auto fv = [](int v) { return Term::var(v); };
        auto hv = [](int v) { return Term::hvar(v); };
        auto call = [](int f, std::vector<Term> args, bool neg = false) {
            return Atom{Term::hvar(f), std::move(args), neg};
        };

        IbkLibrary lib;

        // map(A,B,F): base on empty lists, recursive with F(H,H2).
        lib.add(HigherOrderDefinition{
            "map", 3,
            {Clause{make_atom("map", {fv(A), fv(B), hv(F)}),
                    {make_atom("empty", {fv(A)}), make_atom("empty", {fv(B)})}},
             Clause{make_atom("map", {fv(A), fv(B), hv(F)}),
                    {make_atom("head", {fv(A), fv(H)}), make_atom("tail", {fv(A), fv(T)}),
                     call(F, {fv(H), fv(H2)}),
                     make_atom("map", {fv(T), fv(T2), hv(F)}),
                     make_atom("prepend", {fv(H2), fv(T2), fv(B)})}}}});

        // fold(A,Acc,B,F): left fold with accumulator.
        lib.add(HigherOrderDefinition{
            "fold", 4,
            {Clause{make_atom("fold", {fv(A), fv(Acc), fv(Acc), hv(F)}),
                    {make_atom("empty", {fv(A)})}},
             Clause{make_atom("fold", {fv(A), fv(Acc), fv(B), hv(F)}),
                    {make_atom("head", {fv(A), fv(H)}), make_atom("tail", {fv(A), fv(T)}),
                     call(F, {fv(H), fv(Acc), fv(Acc2)}),
                     make_atom("fold", {fv(T), fv(Acc2), fv(B), hv(F)})}}}});

        // until(A,B,Cond,F): iterate F until Cond holds.
        lib.add(HigherOrderDefinition{
            "until", 4,
            {Clause{make_atom("until", {fv(A), fv(A), hv(Cond), hv(F)}),
                    {call(Cond, {fv(A)})}},
             Clause{make_atom("until", {fv(A), fv(B), hv(Cond), hv(F)}),
                    {call(Cond, {fv(A)}, /*neg=*/true), call(F, {fv(A), fv(C)}),
                     make_atom("until", {fv(C), fv(B), hv(Cond), hv(F)})}}}});

        // ifthenelse(A,B,Cond,Then,Else).
        lib.add(HigherOrderDefinition{
            "ifthenelse", 5,
            {Clause{make_atom("ifthenelse", {fv(A), fv(B), hv(Cond), hv(Then), hv(Else)}),
                    {call(Cond, {fv(A)}), call(Then, {fv(A), fv(B)})}},
             Clause{make_atom("ifthenelse", {fv(A), fv(B), hv(Cond), hv(Then), hv(Else)}),
                    {call(Cond, {fv(A)}, /*neg=*/true), call(Else, {fv(A), fv(B)})}}}});

        // reduceback(A,B,F): right-to-left reduction; with
        // concat(Acc,X,AccX) it reverses a list.
        lib.add(HigherOrderDefinition{
            "reduceback", 3,
            {Clause{make_atom("reduceback", {fv(A), fv(B), hv(F)}),
                    {make_atom("tail", {fv(A), fv(T)}), make_atom("empty", {fv(T)}),
                     make_atom("hold", {fv(A), fv(B)})}},
             Clause{make_atom("reduceback", {fv(A), fv(B), hv(F)}),
                    {make_atom("head", {fv(A), fv(H)}), make_atom("tail", {fv(A), fv(T)}),
                     make_atom("reduceback", {fv(T), fv(C), hv(F)}),
                     call(F, {fv(C), fv(H), fv(B)})}}}});

        // closure(P,A,B): transitive closure of P.
        lib.add(HigherOrderDefinition{
            "closure", 3,
            {Clause{make_atom("closure", {hv(P), fv(A), fv(B)}), {call(P, {fv(A), fv(B)})}},
             Clause{make_atom("closure", {hv(P), fv(A), fv(B)}),
                    {call(P, {fv(A), fv(C)}),
                     make_atom("closure", {hv(P), fv(C), fv(B)})}}}});

        // kstar(P,A,B): zero or more applications of P.
        lib.add(HigherOrderDefinition{
            "kstar", 3,
            {Clause{make_atom("kstar", {hv(P), fv(A), fv(A)}), {}},
             Clause{make_atom("kstar", {hv(P), fv(A), fv(B)}),
                    {call(P, {fv(A), fv(C)}), make_atom("kstar", {hv(P), fv(C), fv(B)})}}}});

        return lib;
    }();
    return lib;
}

/// The definitions used by the experiment harness (map, until, ifthenelse
/// plus reduceback for the droplast variants).
inline IbkLibrary experiment_ibk() {
    return ibk_library().select({"map", "until", "ifthenelse", "reduceback"});
}

}  // namespace mil
