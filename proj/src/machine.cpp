#include "tmtrace/machine.hpp"

#include <set>

namespace tmtrace {

TuringMachine::TuringMachine(std::vector<std::string> alphabet,
                             std::vector<std::string> states,
                             const std::vector<RuleEntry>& rules)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
    if (alphabet_.empty()) throw ValidationError("alphabet must be nonempty");
    if (states_.empty()) throw ValidationError("state set must be nonempty");
    for (Sym s = 0; s < n_syms(); ++s) {
        if (!sym_ids_.emplace(alphabet_[s], s).second)
            throw ValidationError("duplicate alphabet symbol '" + alphabet_[s] + "'");
    }
    for (State q = 0; q < n_states(); ++q) {
        if (!state_ids_.emplace(states_[q], q).second)
            throw ValidationError("duplicate state '" + states_[q] + "'");
    }
    rules_.assign(alphabet_.size() * states_.size(), Packed{-1, -1, 0});
    std::vector<bool> seen(rules_.size(), false);
    for (const auto& r : rules) {
        if (r.read < 0 || r.read >= n_syms() || r.state < 0 || r.state >= n_states())
            throw ValidationError("rule references symbol/state outside declared sets");
        if (r.write < 0 || r.write >= n_syms())
            throw ValidationError("rule writes a symbol outside the alphabet");
        if (r.next < 0 || r.next >= n_states())
            throw ValidationError("rule moves to a state outside the state set");
        if (r.move != -1 && r.move != 1)
            throw ValidationError("rule direction must be -1 or +1");
        std::size_t i = idx(r.read, r.state);
        if (seen[i]) throw ValidationError("duplicate rule entry for (" + alphabet_[r.read] + "," + states_[r.state] + ")");
        seen[i] = true;
        rules_[i] = Packed{r.write, r.next, r.move};
    }
    for (Sym s = 0; s < n_syms(); ++s)
        for (State q = 0; q < n_states(); ++q)
            if (!seen[idx(s, q)])
                throw ValidationError("incomplete rule: missing entry for (" + alphabet_[s] + "," + states_[q] + ")");
}

Sym TuringMachine::sym_id(const std::string& name) const {
    auto it = sym_ids_.find(name);
    if (it == sym_ids_.end()) throw ValidationError("unknown symbol '" + name + "'");
    return it->second;
}

State TuringMachine::state_id(const std::string& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) throw ValidationError("unknown state '" + name + "'");
    return it->second;
}

nlohmann::json TuringMachine::to_json() const {
    nlohmann::json rules = nlohmann::json::array();
    for (Sym s = 0; s < n_syms(); ++s) {
        for (State q = 0; q < n_states(); ++q) {
            auto r = rule(s, q);
            rules.push_back({{"read", alphabet_[s]},
                             {"state", states_[q]},
                             {"write", alphabet_[r.write]},
                             {"next", states_[r.next]},
                             {"move", r.move}});
        }
    }
    return {{"alphabet", alphabet_}, {"states", states_}, {"rules", rules}};
}

TuringMachine TuringMachine::from_json(const nlohmann::json& j) {
    std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
    std::unordered_map<std::string, Sym> sids;
    std::unordered_map<std::string, State> qids;
    for (std::size_t i = 0; i < alphabet.size(); ++i) sids[alphabet[i]] = static_cast<Sym>(i);
    for (std::size_t i = 0; i < states.size(); ++i) qids[states[i]] = static_cast<State>(i);
    auto sym = [&](const std::string& n) {
        auto it = sids.find(n);
        if (it == sids.end()) throw ValidationError("rule uses undeclared symbol '" + n + "'");
        return it->second;
    };
    auto st = [&](const std::string& n) {
        auto it = qids.find(n);
        if (it == qids.end()) throw ValidationError("rule uses undeclared state '" + n + "'");
        return it->second;
    };
    std::vector<RuleEntry> rules;
    for (const auto& r : j.at("rules")) {
        rules.push_back(RuleEntry{sym(r.at("read").get<std::string>()),
                                  st(r.at("state").get<std::string>()),
                                  sym(r.at("write").get<std::string>()),
                                  st(r.at("next").get<std::string>()),
                                  r.at("move").get<int>()});
    }
    return TuringMachine(std::move(alphabet), std::move(states), rules);
}

TuringMachine make_machine(std::vector<std::string> alphabet,
                           std::vector<std::string> states,
                           const std::vector<RuleEntry>& rules) {
    return TuringMachine(std::move(alphabet), std::move(states), rules);
}

TuringMachine fixture_ping_pong() {
    TuringMachine m({"a"}, {"q0", "q1"},
                    {{0, 0, 0, 1, +1},
                     {0, 1, 0, 0, -1}});
    m.set_name("PING_PONG");
    return m;
}

TuringMachine fixture_left() {
    TuringMachine m({"a", "b"}, {"q"},
                    {{0, 0, 0, 0, -1},
                     {1, 0, 1, 0, -1}});
    m.set_name("LEFT");
    return m;
}

// Head shuttles between two wall cells; each rebound erases the touched wall
// and replants it one cell to the left, so both walls drift left forever.
TuringMachine fixture_bounce_shift() {
    // symbols: 0 = blank, W = wall; states: ls/rs seek, pl/pr plant after a rebound
    const Sym B = 0, W = 1;
    const State LS = 0, RS = 1, PL = 2, PR = 3;
    TuringMachine m({"0", "W"}, {"ls", "rs", "pl", "pr"},
                    {{B, LS, B, LS, -1},
                     {W, LS, B, PL, -1},
                     {B, PL, W, RS, +1},
                     {W, PL, W, RS, +1},
                     {B, RS, B, RS, +1},
                     {W, RS, B, PR, -1},
                     {B, PR, W, LS, -1},
                     {W, PR, W, LS, -1}});
    m.set_name("BOUNCE_SHIFT");
    return m;
}

// Tape cells carry a stack of `levels` binary levels (bit 0 = lowest). Every
// visit shifts the cell contents down one level; a set lowest bit acts as a
// wall that reverses the sweep direction and is consumed by the same shift.
TuringMachine fixture_n_level(int levels) {
    if (levels < 1 || levels > 6) throw ValidationError("NLEVEL levels must be in 1..6");
    int nsym = 1 << levels;
    std::vector<std::string> alphabet;
    alphabet.reserve(nsym);
    for (int v = 0; v < nsym; ++v) {
        std::string bits;
        for (int b = levels - 1; b >= 0; --b) bits += ((v >> b) & 1) ? '1' : '0';
        alphabet.push_back(bits);
    }
    const State R = 0, L = 1;
    std::vector<RuleEntry> rules;
    for (Sym v = 0; v < nsym; ++v) {
        Sym down = v >> 1;
        bool wall = (v & 1) != 0;
        rules.push_back({v, R, down, wall ? L : R, wall ? -1 : +1});
        rules.push_back({v, L, down, wall ? R : L, wall ? +1 : -1});
    }
    TuringMachine m(std::move(alphabet), {"R", "L"}, rules);
    m.set_name("NLEVEL(" + std::to_string(levels) + ")");
    return m;
}

TuringMachine fixture(const std::string& name) {
    if (name == "PING_PONG") return fixture_ping_pong();
    if (name == "LEFT") return fixture_left();
    if (name == "BOUNCE_SHIFT") return fixture_bounce_shift();
    if (name.rfind("NLEVEL(", 0) == 0 && name.back() == ')') {
        int n = std::stoi(name.substr(7, name.size() - 8));
        return fixture_n_level(n);
    }
    throw ValidationError("unknown fixture '" + name + "'");
}

}  // namespace tmtrace
