#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace tmtrace {

using Sym = int;
using State = int;

// Raised when an enumeration or search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed machines, configurations or automata.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
    std::uint64_t max_simulated_configs = std::uint64_t{1} << 24;
    std::uint64_t max_search_nodes = std::uint64_t{1} << 22;
};

struct RuleEntry {
    Sym read;
    State state;
    Sym write;
    State next;
    int move;  // -1 or +1
};

// A one-head machine (A, Q, delta) with a total rule and no halting state.
class TuringMachine {
public:
    TuringMachine(std::vector<std::string> alphabet,
                  std::vector<std::string> states,
                  const std::vector<RuleEntry>& rules);

    int n_syms() const { return static_cast<int>(alphabet_.size()); }
    int n_states() const { return static_cast<int>(states_.size()); }

    const std::string& sym_name(Sym s) const { return alphabet_.at(s); }
    const std::string& state_name(State q) const { return states_.at(q); }
    Sym sym_id(const std::string& name) const;
    State state_id(const std::string& name) const;

    Sym rule_write(Sym s, State q) const { return rules_[idx(s, q)].write; }
    State rule_next(Sym s, State q) const { return rules_[idx(s, q)].next; }
    int rule_move(Sym s, State q) const { return rules_[idx(s, q)].move; }

    struct Step {
        Sym write;
        State next;
        int move;
    };
    Step rule(Sym s, State q) const {
        const auto& r = rules_[idx(s, q)];
        return {r.write, r.next, r.move};
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    nlohmann::json to_json() const;
    static TuringMachine from_json(const nlohmann::json& j);

private:
    struct Packed {
        Sym write;
        State next;
        int move;
    };
    std::size_t idx(Sym s, State q) const {
        if (s < 0 || s >= n_syms() || q < 0 || q >= n_states())
            throw ValidationError("symbol/state out of range for this machine");
        return static_cast<std::size_t>(s) * states_.size() + static_cast<std::size_t>(q);
    }

    std::vector<std::string> alphabet_;
    std::vector<std::string> states_;
    std::unordered_map<std::string, Sym> sym_ids_;
    std::unordered_map<std::string, State> state_ids_;
    std::vector<Packed> rules_;
    std::string name_ = "machine";
};

TuringMachine make_machine(std::vector<std::string> alphabet,
                           std::vector<std::string> states,
                           const std::vector<RuleEntry>& rules);

// Corpus machines. NLEVEL takes the number of levels (1..6).
TuringMachine fixture_ping_pong();
TuringMachine fixture_left();
TuringMachine fixture_bounce_shift();
TuringMachine fixture_n_level(int levels);

// Accepts PING_PONG, LEFT, BOUNCE_SHIFT, NLEVEL(n).
TuringMachine fixture(const std::string& name);

}  // namespace tmtrace
