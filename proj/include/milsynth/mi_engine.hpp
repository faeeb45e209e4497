#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "milsynth/bk.hpp"
#include "milsynth/limits.hpp"
#include "milsynth/log.hpp"
#include "milsynth/metarule.hpp"
#include "milsynth/program.hpp"
#include "milsynth/term.hpp"

namespace mil {

struct EngineConfig {
    int max_clauses = 4;
    long long step_budget = 1'000'000;  // resolution steps per proof attempt
    double wall_timeout_s = 60.0;
    std::uint64_t seed = 0;  // reserved for the harness; the search itself is tie-free

    void validate() const {
        if (max_clauses < 1 || step_budget < 1 || wall_timeout_s <= 0)
            throw std::invalid_argument("engine config values must be positive");
    }
};

/// A learning task: examples plus references to the loaded background
/// knowledge and metarule set.
struct LearningTask {
    std::string name;  // target predicate name
    PredSym target;
    std::vector<Atom> pos;
    std::vector<Atom> neg;
    const CompiledRegistry* registry = nullptr;
    const IbkLibrary* ibk = nullptr;
    const MetaruleLibrary* metarules = nullptr;
};

enum class LearnStatus {
    Found,            // consistent program returned
    Exhausted,        // search space exhausted up to max_clauses
    ResourceLimited,  // wall timeout or step budget cut the search
};

struct SearchStats {
    int depths_visited = 0;
    long long programs_tested = 0;
    long long steps_used = 0;
    double wall_seconds = 0.0;
    bool budget_hit = false;
};

struct LearnResult {
    LearnStatus status = LearnStatus::Exhausted;
    Program program;
    SearchStats stats;

    bool found() const { return status == LearnStatus::Found; }
    bool timed_out() const { return status == LearnStatus::ResourceLimited; }
};

struct EvalResult {
    bool entailed = false;
    bool budget_exhausted = false;
};

/// Fresh symbols task_1 ... task_{depth-1}, none colliding with the given
/// predicate signature. Throws when the task uses the reserved pattern.
inline std::vector<std::string> invent_symbols(const std::string& task_name, int depth,
                                               const std::set<std::string>& signature = {}) {
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    std::vector<std::string> out;
    for (int i = 1; i < depth; ++i) {
        std::string sym = task_name + "_" + std::to_string(i);
        if (signature.count(sym))
            throw std::invalid_argument("invented symbol " + sym +
                                        " collides with the task signature");
        out.push_back(std::move(sym));
    }
    return out;
}

/// Predicate-name signature of BK and examples (Def.-6 style), used to keep
/// invented symbols fresh.
inline std::set<std::string> task_signature(const LearningTask& task) {
    std::set<std::string> sig;
    sig.insert(task.target.name);
    if (task.registry) {
        for (const auto& p : task.registry->whitelist()) sig.insert(p.name);
        for (const auto& c : task.registry->user_clauses())
            sig.insert(c.head.pred.get_pred().name);
    }
    if (task.ibk)
        for (const auto& d : task.ibk->defs()) sig.insert(d.name);
    return sig;
}

namespace engine_detail {

/// Proof-time substitution record: metarule index plus the (possibly still
/// unbound) existential-variable terms of one fetched instance.
struct LiveRecord {
    int metarule_idx;
    std::vector<Term> subs;
};

/// Ancestor chain used for variant pruning of looping goals.
struct Frame {
    const Atom* goal;
    const Frame* parent;
};

constexpr int kAncestorWindow = 64;

class Prover {
public:
    Prover(const LearningTask& task, const EngineConfig& cfg)
        : task_(task), cfg_(cfg), metarules_(task.metarules->rules()) {
        prog_.reserve(static_cast<std::size_t>(cfg.max_clauses) + 1);
    }

    /// Iterative-deepening learning loop.
    LearnResult learn() {
        cfg_.validate();
        auto t0 = Budget::Clock::now();
        auto deadline = t0 + std::chrono::duration_cast<Budget::Clock::duration>(
                                 std::chrono::duration<double>(cfg_.wall_timeout_s));
        LearnResult result;
        std::set<std::string> sig = task_signature(task_);
        bool limited = false;

        for (int d = 1; d <= cfg_.max_clauses; ++d) {
            if (Budget::Clock::now() > deadline) {
                limited = true;
                break;
            }
            invented_ = invent_symbols(task_.name, d, sig);
            depth_bound_ = d;
            allow_new_records_ = true;
            prog_.clear();
            store_ = BindingStore();
            supply_ = VarSupply();
            Budget budget(cfg_.step_budget);
            budget.set_deadline(deadline);
            budget_ = &budget;
            programs_tested_ = 0;
            ++result.stats.depths_visited;
            log_info("depth " + std::to_string(d) + " search");

            std::optional<Program> found;
            auto on_positives_proved = [&]() {
                return ground_leftovers_and_check(0, found);
            };
            auto k = detail::make_cont(on_positives_proved);
            bool ok = prove_seq(task_.pos, 0, nullptr, k);
            result.stats.steps_used += budget.steps_used();
            result.stats.programs_tested += programs_tested_;
            if (budget.incomplete()) {
                limited = true;
                result.stats.budget_hit = true;
            }
            if (ok && found) {
                result.status = LearnStatus::Found;
                result.program = *found;
                break;
            }
        }
        result.status = result.status == LearnStatus::Found ? LearnStatus::Found
                        : limited                           ? LearnStatus::ResourceLimited
                                                            : LearnStatus::Exhausted;
        result.stats.wall_seconds =
            std::chrono::duration<double>(Budget::Clock::now() - t0).count();
        return result;
    }

    /// Prove the goals against a fixed program (no new records): the
    /// evaluation mode used for negative checks and test-time predictions.
    EvalResult eval(const Program& program, const Atom& goal, long long step_budget) {
        load_program(program);
        allow_new_records_ = false;
        depth_bound_ = static_cast<int>(prog_.size());
        Budget budget(step_budget);
        budget_ = &budget;
        auto accept = [] { return true; };
        auto k = detail::make_cont(accept);
        EvalResult r;
        r.entailed = prove(goal, nullptr, k);
        r.budget_exhausted = budget.incomplete();
        if (r.budget_exhausted) r.entailed = false;
        return r;
    }

    /// Prove a goal list extending `start`; returns the extended program.
    std::optional<Program> prove_goals(const std::vector<Atom>& goals, const Program& start) {
        load_program(start);
        allow_new_records_ = true;
        depth_bound_ = cfg_.max_clauses;
        std::set<std::string> sig = task_signature(task_);
        invented_ = invent_symbols(task_.name, cfg_.max_clauses + 1, sig);
        Budget budget(cfg_.step_budget);
        budget_ = &budget;
        std::optional<Program> out;
        auto capture = [&]() {
            Program p;
            if (!export_program(p)) return false;
            out = std::move(p);
            return true;
        };
        auto k = detail::make_cont(capture);
        if (!prove_seq(goals, 0, nullptr, k)) return std::nullopt;
        return out;
    }

private:
    // ---- program bookkeeping ----------------------------------------------

    void load_program(const Program& p) {
        prog_.clear();
        store_ = BindingStore();
        supply_ = VarSupply();
        for (const auto& rec : p.subs) {
            const Metarule* m = task_.metarules->find(rec.metarule);
            if (!m) throw std::invalid_argument("unknown metarule " + rec.metarule);
            int idx = 0;
            for (std::size_t i = 0; i < metarules_.size(); ++i)
                if (&metarules_[i] == m) idx = static_cast<int>(i);
            prog_.push_back(LiveRecord{idx, rec.bindings});
        }
    }

    /// Export the live records as a ground Program. Fails when a record still
    /// carries an unbound existential variable.
    bool export_program(Program& out) const {
        out.subs.clear();
        for (const auto& rec : prog_) {
            SubstitutionRecord sr;
            sr.metarule = metarules_[static_cast<std::size_t>(rec.metarule_idx)].name;
            for (const auto& t : rec.subs) {
                Term w = store_.walk(t);
                if (!w.is_pred()) return false;
                sr.bindings.push_back(w);
            }
            for (const auto& existing : out.subs)
                if (existing == sr) {
                    log_info("duplicate substitution record dropped at export");
                    return false;
                }
            out.subs.push_back(std::move(sr));
        }
        return true;
    }

    /// After the positives are proved some existential variables may remain
    /// unbound (e.g. the function slot of a map base case). Ground them over
    /// the signature, then test the candidate program against the negatives.
    bool ground_leftovers_and_check(std::size_t from_record, std::optional<Program>& found) {
        for (std::size_t r = from_record; r < prog_.size(); ++r) {
            for (const auto& t : prog_[r].subs) {
                Term w = store_.walk(t);
                if (!w.is_hvar()) continue;
                for (const PredSym& cand : grounding_candidates()) {
                    BindingStore::Mark m = store_.mark();
                    store_.bind(w.var_id(), Term::pred(cand));
                    if (ground_leftovers_and_check(r, found)) return true;
                    store_.undo(m);
                }
                return false;
            }
        }
        return check_negatives(found);
    }

    std::vector<PredSym> grounding_candidates() const {
        std::vector<PredSym> out = task_.registry->whitelist();
        for (const auto& d : task_.ibk->defs()) out.push_back(PredSym{d.name, d.arity});
        out.push_back(task_.target);
        return out;
    }

    bool check_negatives(std::optional<Program>& found) {
        ++programs_tested_;
        Program candidate;
        if (!export_program(candidate)) return false;
        bool was_allowed = allow_new_records_;
        allow_new_records_ = false;
        bool consistent = true;
        for (const auto& neg : task_.neg) {
            auto accept = [] { return true; };
            auto k = detail::make_cont(accept);
            BindingStore::Mark m = store_.mark();
            bool entailed = prove(neg, nullptr, k);
            store_.undo(m);
            if (entailed) {
                consistent = false;
                break;
            }
            if (!budget_->ok()) {
                consistent = false;
                break;
            }
        }
        allow_new_records_ = was_allowed;
        if (!consistent) return false;
        found = std::move(candidate);
        return true;
    }

    // ---- the meta-interpreter ----------------------------------------------

    bool prove_seq(const std::vector<Atom>& goals, std::size_t idx, const Frame* parent,
                   const detail::Cont& k) {
        if (idx == goals.size()) return k();
        auto rest = [&]() { return prove_seq(goals, idx + 1, parent, k); };
        return prove(goals[idx], parent, detail::make_cont(rest));
    }

    bool prove(const Atom& goal, const Frame* parent, const detail::Cont& k) {
        if (!budget_->tick()) return false;
        DepthGuard depth(*budget_);
        if (!depth.ok()) return false;

        if (goal.negated) return prove_negated(goal, k);

        Term pred = store_.walk(goal.pred);
        if (pred.is_pred()) {
            const PredSym& sig = pred.get_pred();
            if (sig.arity != goal.arity()) return false;
            if (task_.registry->is_compiled(sig)) {
                // Compiled predicates are proved deductively and exclusively
                // (the cut in the meta-interpreter): no invention here.
                return solve_compiled(goal, *task_.registry, store_, supply_, *budget_, k);
            }
            if (const HigherOrderDefinition* def = task_.ibk->find(sig.name, sig.arity))
                return prove_ibk(*def, goal, parent, k);
            return prove_learnable(goal, parent, k);
        }

        if (!pred.is_hvar()) return false;  // a value in predicate position

        // Unbound predicate: enumerate compiled candidates (prim-declaration
        // order), then interpreted definitions, then the learnable symbols.
        for (const PredSym& sig : task_.registry->whitelist()) {
            if (sig.arity != goal.arity()) continue;
            if (!budget_->ok()) return false;
            BindingStore::Mark m = store_.mark();
            store_.bind(pred.var_id(), Term::pred(sig));
            if (solve_compiled(goal, *task_.registry, store_, supply_, *budget_, k))
                return true;
            store_.undo(m);
        }
        for (const auto& def : task_.ibk->defs()) {
            if (def.arity != goal.arity()) continue;
            if (!budget_->ok()) return false;
            BindingStore::Mark m = store_.mark();
            store_.bind(pred.var_id(), Term::pred(def.name, def.arity));
            if (prove_ibk(def, goal, parent, k)) return true;
            store_.undo(m);
        }
        return prove_learnable(goal, parent, k);
    }

    /// Negation as failure, restricted to compiled predicates over ground
    /// arguments; anything else fails the branch.
    bool prove_negated(const Atom& goal, const detail::Cont& k) {
        Term pred = store_.walk(goal.pred);
        if (!pred.is_pred()) return false;
        if (!task_.registry->is_compiled(pred.get_pred())) return false;
        for (const auto& t : goal.args)
            if (store_.walk(t).is_any_var()) return false;
        Atom positive{pred, goal.args, false};
        BindingStore::Mark m = store_.mark();
        auto accept = [] { return true; };
        auto sc = detail::make_cont(accept);
        bool held = solve_compiled(positive, *task_.registry, store_, supply_, *budget_, sc);
        store_.undo(m);
        if (!budget_->ok()) return false;
        return held ? false : k();
    }

    bool looping(const Atom& goal, const Frame* parent) {
        Atom current = store_.resolve(goal);
        int scanned = 0;
        for (const Frame* f = parent; f && scanned < kAncestorWindow; f = f->parent, ++scanned) {
            Atom anc = store_.resolve(*f->goal);
            if (variant(current, anc)) return true;
        }
        return false;
    }

    bool prove_ibk(const HigherOrderDefinition& def, const Atom& goal, const Frame* parent,
                   const detail::Cont& k) {
        if (looping(goal, parent)) return false;
        Frame self{&goal, parent};
        for (const auto& clause : def.clauses) {
            if (!budget_->ok()) return false;
            BindingStore::Mark m = store_.mark();
            Clause fresh = rename_clause(clause, supply_);
            if (detail::unify_atoms(goal, fresh.head, store_)) {
                if (prove_seq(fresh.body, 0, &self, k)) return true;
            }
            store_.undo(m);
        }
        return false;
    }

    /// Branches 3 and 4: reuse an existing substitution record, then fetch a
    /// fresh metarule instance while the depth bound allows.
    bool prove_learnable(const Atom& goal, const Frame* parent, const detail::Cont& k) {
        if (looping(goal, parent)) return false;
        Frame self{&goal, parent};

        const std::size_t records_at_entry = prog_.size();
        for (std::size_t i = 0; i < records_at_entry; ++i) {
            if (!budget_->ok()) return false;
            BindingStore::Mark m = store_.mark();
            const LiveRecord& rec = prog_[i];
            const Metarule& mr = metarules_[static_cast<std::size_t>(rec.metarule_idx)];
            Clause fresh;
            std::vector<Term> existentials;
            instantiate(mr, fresh, existentials);
            bool bound = true;
            for (std::size_t e = 0; e < existentials.size() && bound; ++e)
                bound = detail::unify_terms(existentials[e], rec.subs[e], store_);
            if (bound && detail::unify_atoms(goal, fresh.head, store_)) {
                if (prove_seq(fresh.body, 0, &self, k)) return true;
            }
            store_.undo(m);
        }

        if (!allow_new_records_ ||
            prog_.size() >= static_cast<std::size_t>(depth_bound_))
            return false;

        Term pred = store_.walk(goal.pred);
        if (pred.is_pred() && !is_learnable(pred.get_pred().name)) return false;

        for (std::size_t mi = 0; mi < metarules_.size(); ++mi) {
            if (!budget_->ok()) return false;
            const Metarule& mr = metarules_[mi];
            if (mr.clause_template.head.arity() != goal.arity()) continue;
            auto try_head = [&](const PredSym& head_sym) {
                BindingStore::Mark m = store_.mark();
                Clause fresh;
                std::vector<Term> existentials;
                instantiate(mr, fresh, existentials);
                bool ok = detail::unify_terms(existentials[0], Term::pred(head_sym), store_) &&
                          detail::unify_atoms(goal, fresh.head, store_);
                if (ok) {
                    prog_.push_back(LiveRecord{static_cast<int>(mi), existentials});
                    if (prove_seq(fresh.body, 0, &self, k)) return true;
                    prog_.pop_back();
                }
                store_.undo(m);
                return false;
            };
            if (pred.is_pred()) {
                if (try_head(pred.get_pred())) return true;
            } else {
                if (try_head(PredSym{task_.target.name, goal.arity()})) return true;
                for (const auto& inv : invented_)
                    if (try_head(PredSym{inv, goal.arity()})) return true;
            }
        }
        return false;
    }

    void instantiate(const Metarule& mr, Clause& out, std::vector<Term>& existentials) {
        std::unordered_map<int, int> remap;
        auto rename_term = [&](const Term& t) {
            if (!t.is_any_var()) return t;
            auto [it, inserted] = remap.emplace(t.var_id(), 0);
            if (inserted) it->second = supply_.fresh();
            return t.is_var() ? Term::var(it->second) : Term::hvar(it->second);
        };
        auto rename_atom = [&](const Atom& a) {
            Atom b;
            b.negated = a.negated;
            b.pred = rename_term(a.pred);
            b.args.reserve(a.args.size());
            for (const auto& t : a.args) b.args.push_back(rename_term(t));
            return b;
        };
        out.head = rename_atom(mr.clause_template.head);
        out.body.clear();
        for (const auto& a : mr.clause_template.body) out.body.push_back(rename_atom(a));
        existentials.clear();
        for (int v : mr.existential_vars) existentials.push_back(rename_term(Term::hvar(v)));
    }

    bool is_learnable(const std::string& name) const {
        if (name == task_.target.name) return true;
        for (const auto& inv : invented_)
            if (inv == name) return true;
        return false;
    }

    const LearningTask& task_;
    EngineConfig cfg_;
    const std::vector<Metarule>& metarules_;
    BindingStore store_;
    VarSupply supply_;
    Budget* budget_ = nullptr;
    std::vector<LiveRecord> prog_;
    std::vector<std::string> invented_;
    int depth_bound_ = 1;
    bool allow_new_records_ = true;
    long long programs_tested_ = 0;
};

}  // namespace engine_detail

/// Learn a program for the task: iterative deepening on clause count, so the
/// first consistent hypothesis has minimal size within the searched space.
inline LearnResult learn(const LearningTask& task, const EngineConfig& cfg) {
    if (!task.registry || !task.ibk || !task.metarules)
        throw std::invalid_argument("learning task is missing BK or metarules");
    if (task.registry->is_compiled(task.target))
        throw std::invalid_argument("target predicate " + task.target.to_string() +
                                    " is already defined in the compiled BK");
    if (task.ibk->find(task.target.name, task.target.arity))
        throw std::invalid_argument("target predicate " + task.target.to_string() +
                                    " collides with an interpreted definition");
    for (const auto& a : task.pos)
        if (!is_ground(a)) throw std::invalid_argument("positive examples must be ground");
    for (const auto& a : task.neg)
        if (!is_ground(a)) throw std::invalid_argument("negative examples must be ground");
    engine_detail::Prover prover(task, cfg);
    return prover.learn();
}

/// Prove a goal list against (and possibly extending) a program.
inline std::optional<Program> prove(const LearningTask& task, const std::vector<Atom>& goals,
                                    const Program& start, const EngineConfig& cfg) {
    engine_detail::Prover prover(task, cfg);
    return prover.prove_goals(goals, start);
}

/// Bounded entailment test of one ground atom under program + BK.
inline EvalResult eval(const Program& program, const Atom& atom, const LearningTask& task,
                       long long step_budget = 1'000'000) {
    EngineConfig cfg;
    cfg.step_budget = step_budget;
    engine_detail::Prover prover(task, cfg);
    return prover.eval(program, atom, step_budget);
}

}  // namespace mil
