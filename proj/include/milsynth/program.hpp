#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "milsynth/metarule.hpp"
#include "milsynth/term.hpp"

namespace mil {

/// One learned clause as metarule name plus ground predicate bindings for
/// the metarule's existential variables (head variable first).
struct SubstitutionRecord {
    std::string metarule;
    std::vector<Term> bindings;

    bool operator==(const SubstitutionRecord& o) const {
        return metarule == o.metarule && bindings == o.bindings;
    }
};

/// A hypothesis: an ordered, duplicate-free list of substitution records.
/// Projecting the records onto their metarules yields the clause form.
struct Program {
    std::vector<SubstitutionRecord> subs;

    bool empty() const { return subs.empty(); }
    std::size_t size() const { return subs.size(); }

    bool operator==(const Program& o) const { return subs == o.subs; }
};

/// Instantiate one record against its metarule. Universal variables are
/// renamed from `supply` so distinct projections never share variables.
inline Clause project_record(const SubstitutionRecord& rec, const MetaruleLibrary& lib,
                             VarSupply& supply) {
    const Metarule* m = lib.find(rec.metarule);
    if (!m) throw std::invalid_argument("unknown metarule in program: " + rec.metarule);
    if (rec.bindings.size() != m->existential_vars.size())
        throw std::invalid_argument("binding count mismatch for metarule " + rec.metarule);
    BindingStore store;
    for (std::size_t i = 0; i < rec.bindings.size(); ++i) {
        if (!rec.bindings[i].is_pred())
            throw std::invalid_argument("record for " + rec.metarule +
                                        " has a non-ground predicate binding");
        store.bind(m->existential_vars[i], rec.bindings[i]);
    }
    Clause instantiated = store.resolve(m->clause_template);
    return rename_clause(instantiated, supply);
}

/// Project a whole program onto its metarules, in record order.
inline std::vector<Clause> project(const Program& p, const MetaruleLibrary& lib) {
    std::vector<Clause> out;
    VarSupply supply;
    out.reserve(p.subs.size());
    for (const auto& rec : p.subs) out.push_back(project_record(rec, lib, supply));
    return out;
}

}  // namespace mil
