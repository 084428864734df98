#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmtrace/machine.hpp"

namespace tmtrace {

using Symbol = std::uint32_t;  // dense input-symbol ids

// Deterministic finite automaton with a partial transition map
// (missing transition = reject).
struct Dfa {
    std::size_t n_symbols = 0;
    std::size_t n_states = 0;
    std::size_t initial = 0;
    std::vector<long long> delta;  // state * n_symbols + sym -> state or -1
    std::vector<bool> accepting;

    static Dfa empty_language(std::size_t n_symbols);

    long long step(std::size_t state, Symbol a) const { return delta[state * n_symbols + a]; }
    void set(std::size_t state, Symbol a, std::size_t to) { delta[state * n_symbols + a] = (long long)to; }
    bool accepts(const std::vector<Symbol>& word) const;

    // All accepted words of the given length (enumeration; used by the checks).
    std::vector<std::vector<Symbol>> accepted_words(std::size_t length, std::uint64_t cap) const;
    std::set<std::uint64_t> accepted_lengths(std::uint64_t max_len) const;
};

struct Nfa {
    std::size_t n_symbols = 0;
    std::size_t n_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::vector<std::pair<Symbol, std::size_t>>> edges;
    std::vector<std::vector<std::size_t>> eps;
    std::vector<bool> accepting;

    explicit Nfa(std::size_t n_symbols) : n_symbols(n_symbols) {}
    std::size_t add_state(bool accept = false);
    void add_edge(std::size_t from, Symbol a, std::size_t to);
    void add_eps(std::size_t from, std::size_t to);
    bool accepts(const std::vector<Symbol>& word) const;  // direct simulation
};

// Subset construction with unreachable-state pruning.
Dfa determinize(const Nfa& nfa);

// Expression tree of automata over a shared alphabet, realized by union /
// concatenation and determinized.
struct LangExpr {
    enum class Op { Leaf, Union, Concat } op = Op::Leaf;
    const Dfa* leaf = nullptr;
    std::vector<LangExpr> parts;

    static LangExpr lit(const Dfa& d) { return LangExpr{Op::Leaf, &d, {}}; }
    static LangExpr unite(std::vector<LangExpr> xs) { return LangExpr{Op::Union, nullptr, std::move(xs)}; }
    static LangExpr concat(std::vector<LangExpr> xs) { return LangExpr{Op::Concat, nullptr, std::move(xs)}; }
};

Dfa nfa_concat_union(const LangExpr& expr);

// A set of naturals given by preperiod, period and member residues: the
// length sets of unary regular languages.
struct UnaryEventuallyPeriodicSet {
    std::uint64_t preperiod = 0;
    std::uint64_t period = 1;
    std::set<std::uint64_t> explicit_members;  // members below the preperiod
    std::set<std::uint64_t> residues;          // n >= preperiod: member iff n % period in here

    bool contains(std::uint64_t n) const {
        if (n < preperiod) return explicit_members.count(n) > 0;
        return residues.count(n % period) > 0;
    }
    bool covers_all() const { return preperiod == 0 && period == 1 && residues.count(0); }
    bool empty_tail() const { return residues.empty(); }
    bool operator==(const UnaryEventuallyPeriodicSet&) const = default;

    nlohmann::json to_json() const;
};

class UnaryFitError : public std::runtime_error {
public:
    explicit UnaryFitError(const std::string& what) : std::runtime_error(what) {}
};

// Minimal (period, then preperiod) eventually periodic set agreeing with the
// observed membership on [0, l_max], with at least two full periods of
// agreement inside the window. Throws UnaryFitError when no such fit exists.
UnaryEventuallyPeriodicSet unary_fit(const std::set<std::uint64_t>& lengths,
                                     std::uint64_t l_max);

// Extended deterministic pushdown automaton: bottom-preserving transition
// table, an initial stack word, and acceptance by a finite set of
// (state, stack content) pairs. Stack words are written top-first and end
// with the bottom symbol.
struct Dpda {
    std::size_t n_symbols = 0;      // input alphabet size
    std::size_t n_states = 0;
    std::size_t n_stack = 0;        // stack alphabet size, bottom included
    std::uint32_t bottom = 0;
    std::size_t initial_state = 0;
    std::vector<std::uint32_t> initial_stack;  // top-first, ends with bottom

    struct Push {
        long long next = -1;  // -1 = undefined
        std::vector<std::uint32_t> word;  // replaces the popped top; length <= 2
    };
    std::vector<Push> delta;  // (sym * n_states + state) * n_stack + top

    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> accept;

    std::vector<std::string> state_names;   // optional, for export
    std::vector<std::string> stack_names;   // optional, for export
    std::vector<std::string> symbol_names;  // optional, for export

    const Push& entry(Symbol a, std::size_t q, std::uint32_t top) const {
        return delta[(a * n_states + q) * n_stack + top];
    }
    void set_entry(Symbol a, std::size_t q, std::uint32_t top, std::size_t next,
                   std::vector<std::uint32_t> word);

    void validate() const;  // determinism is structural; checks the bottom discipline
};

struct DpdaId {
    std::size_t state;
    std::vector<std::uint32_t> stack;  // top-first, ends with bottom
    bool operator==(const DpdaId&) const = default;
    bool operator<(const DpdaId& o) const {
        return state != o.state ? state < o.state : stack < o.stack;
    }
};

// One transition step; nullopt on an undefined transition (explicit reject).
std::optional<DpdaId> dpda_step(const Dpda& d, const DpdaId& id, Symbol a);

bool dpda_accepts(const Dpda& d, const std::vector<Symbol>& word);

// Well-formedness along a run: exactly one bottom symbol, at the end.
bool stack_well_formed(const Dpda& d, const std::vector<std::uint32_t>& stack);

std::string export_dot(const Dfa& d, const std::function<std::string(Symbol)>& sym_name,
                       const std::string& graph_name = "dfa");
std::string export_dot(const Dpda& d, const std::string& graph_name = "dpda");

nlohmann::json dfa_to_json(const Dfa& d);
nlohmann::json dpda_to_json(const Dpda& d);
Dfa dfa_from_json(const nlohmann::json& j);

}  // namespace tmtrace
