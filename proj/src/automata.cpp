#include "tmtrace/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace tmtrace {

Dfa Dfa::empty_language(std::size_t n_symbols) {
    Dfa d;
    d.n_symbols = n_symbols;
    d.n_states = 1;
    d.initial = 0;
    d.delta.assign(n_symbols, -1);
    d.accepting.assign(1, false);
    return d;
}

bool Dfa::accepts(const std::vector<Symbol>& word) const {
    long long s = static_cast<long long>(initial);
    for (Symbol a : word) {
        if (a >= n_symbols) return false;
        s = delta[static_cast<std::size_t>(s) * n_symbols + a];
        if (s < 0) return false;
    }
    return accepting[static_cast<std::size_t>(s)];
}

std::vector<std::vector<Symbol>> Dfa::accepted_words(std::size_t length, std::uint64_t cap) const {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> word;
    std::uint64_t visited = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t state) {
        if (++visited > cap) throw BudgetExceeded("Dfa::accepted_words enumeration budget");
        if (word.size() == length) {
            if (accepting[state]) out.push_back(word);
            return;
        }
        for (Symbol a = 0; a < n_symbols; ++a) {
            long long to = delta[state * n_symbols + a];
            if (to < 0) continue;
            word.push_back(a);
            rec(static_cast<std::size_t>(to));
            word.pop_back();
        }
    };
    rec(initial);
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::uint64_t> Dfa::accepted_lengths(std::uint64_t max_len) const {
    std::set<std::uint64_t> out;
    std::vector<char> cur(n_states, 0), next(n_states, 0);
    cur[initial] = 1;
    for (std::uint64_t len = 0; len <= max_len; ++len) {
        for (std::size_t s = 0; s < n_states; ++s)
            if (cur[s] && accepting[s]) {
                out.insert(len);
                break;
            }
        if (len == max_len) break;
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t s = 0; s < n_states; ++s) {
            if (!cur[s]) continue;
            for (Symbol a = 0; a < n_symbols; ++a) {
                long long to = delta[s * n_symbols + a];
                if (to >= 0) next[static_cast<std::size_t>(to)] = 1;
            }
        }
        cur.swap(next);
    }
    return out;
}

std::size_t Nfa::add_state(bool accept) {
    edges.emplace_back();
    eps.emplace_back();
    accepting.push_back(accept);
    return n_states++;
}

void Nfa::add_edge(std::size_t from, Symbol a, std::size_t to) {
    edges[from].emplace_back(a, to);
}

void Nfa::add_eps(std::size_t from, std::size_t to) { eps[from].push_back(to); }

namespace {

void close_eps(const Nfa& n, std::set<std::size_t>& states) {
    std::vector<std::size_t> stack(states.begin(), states.end());
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (std::size_t t : n.eps[s])
            if (states.insert(t).second) stack.push_back(t);
    }
}

}  // namespace

bool Nfa::accepts(const std::vector<Symbol>& word) const {
    std::set<std::size_t> cur(initial.begin(), initial.end());
    close_eps(*this, cur);
    for (Symbol a : word) {
        std::set<std::size_t> next;
        for (std::size_t s : cur)
            for (auto [sym, to] : edges[s])
                if (sym == a) next.insert(to);
        close_eps(*this, next);
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    for (std::size_t s : cur)
        if (accepting[s]) return true;
    return false;
}

Dfa determinize(const Nfa& nfa) {
    Dfa d;
    d.n_symbols = nfa.n_symbols;

    std::map<std::set<std::size_t>, std::size_t> ids;
    std::vector<std::set<std::size_t>> subsets;

    std::set<std::size_t> start(nfa.initial.begin(), nfa.initial.end());
    close_eps(nfa, start);
    ids[start] = 0;
    subsets.push_back(start);

    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (Symbol a = 0; a < nfa.n_symbols; ++a) {
            std::set<std::size_t> next;
            for (std::size_t s : subsets[i])
                for (auto [sym, to] : nfa.edges[s])
                    if (sym == a) next.insert(to);
            close_eps(nfa, next);
            long long id = -1;
            if (!next.empty()) {
                auto [it, fresh] = ids.emplace(next, subsets.size());
                if (fresh) subsets.push_back(next);
                id = static_cast<long long>(it->second);
            }
            d.delta.push_back(id);  // row-major as long as we fill in order
        }
    }
    d.n_states = subsets.size();
    d.initial = 0;
    d.accepting.assign(d.n_states, false);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t s : subsets[i])
            if (nfa.accepting[s]) {
                d.accepting[i] = true;
                break;
            }
    return d;
}

namespace {

void build_expr(const LangExpr& e, Nfa& n, std::size_t entry, std::size_t exit) {
    switch (e.op) {
        case LangExpr::Op::Leaf: {
            const Dfa& d = *e.leaf;
            if (d.n_symbols != n.n_symbols)
                throw ValidationError("nfa_concat_union: alphabet mismatch between pieces");
            std::vector<std::size_t> map(d.n_states);
            for (std::size_t s = 0; s < d.n_states; ++s) map[s] = n.add_state();
            n.add_eps(entry, map[d.initial]);
            for (std::size_t s = 0; s < d.n_states; ++s) {
                for (Symbol a = 0; a < d.n_symbols; ++a) {
                    long long to = d.delta[s * d.n_symbols + a];
                    if (to >= 0) n.add_edge(map[s], a, map[static_cast<std::size_t>(to)]);
                }
                if (d.accepting[s]) n.add_eps(map[s], exit);
            }
            break;
        }
        case LangExpr::Op::Union: {
            for (const auto& part : e.parts) build_expr(part, n, entry, exit);
            break;
        }
        case LangExpr::Op::Concat: {
            std::size_t cur = entry;
            for (std::size_t i = 0; i < e.parts.size(); ++i) {
                std::size_t nxt = (i + 1 == e.parts.size()) ? exit : n.add_state();
                build_expr(e.parts[i], n, cur, nxt);
                cur = nxt;
            }
            if (e.parts.empty()) n.add_eps(entry, exit);
            break;
        }
    }
}

std::size_t expr_symbols(const LangExpr& e) {
    if (e.op == LangExpr::Op::Leaf) return e.leaf->n_symbols;
    for (const auto& p : e.parts) {
        std::size_t s = expr_symbols(p);
        if (s) return s;
    }
    return 0;
}

}  // namespace

Dfa nfa_concat_union(const LangExpr& expr) {
    Nfa n(expr_symbols(expr));
    std::size_t entry = n.add_state();
    std::size_t exit = n.add_state(true);
    n.initial = {entry};
    build_expr(expr, n, entry, exit);
    return determinize(n);
}

nlohmann::json UnaryEventuallyPeriodicSet::to_json() const {
    return {{"preperiod", preperiod},
            {"period", period},
            {"explicit_members", explicit_members},
            {"residues", residues}};
}

UnaryEventuallyPeriodicSet unary_fit(const std::set<std::uint64_t>& lengths,
                                     std::uint64_t l_max) {
    for (auto n : lengths)
        if (n > l_max) throw ValidationError("unary_fit: observation beyond l_max");
    std::vector<char> member(static_cast<std::size_t>(l_max) + 1, 0);
    for (auto n : lengths) member[static_cast<std::size_t>(n)] = 1;

    for (std::uint64_t p = 1; 2 * p <= l_max + 1; ++p) {
        for (std::uint64_t pre = 0; pre + 2 * p <= l_max + 1; ++pre) {
            std::set<std::uint64_t> residues;
            for (std::uint64_t n = pre; n < pre + p; ++n)
                if (member[static_cast<std::size_t>(n)]) residues.insert(n % p);
            bool ok = true;
            for (std::uint64_t n = pre; n <= l_max && ok; ++n)
                ok = (member[static_cast<std::size_t>(n)] != 0) == (residues.count(n % p) > 0);
            if (!ok) continue;
            UnaryEventuallyPeriodicSet out;
            out.preperiod = pre;
            out.period = p;
            out.residues = std::move(residues);
            for (std::uint64_t n = 0; n < pre; ++n)
                if (member[static_cast<std::size_t>(n)]) out.explicit_members.insert(n);
            return out;
        }
    }
    throw UnaryFitError("unary_fit: insufficient horizon, no eventually periodic fit with "
                        "two full periods of agreement in [0," +
                        std::to_string(l_max) + "]");
}

void Dpda::set_entry(Symbol a, std::size_t q, std::uint32_t top, std::size_t next,
                     std::vector<std::uint32_t> word) {
    if (word.size() > 2) throw ValidationError("Dpda push word longer than 2");
    auto& e = delta[(a * n_states + q) * n_stack + top];
    if (e.next >= 0) throw ValidationError("Dpda transition defined twice");
    e.next = static_cast<long long>(next);
    e.word = std::move(word);
}

void Dpda::validate() const {
    if (initial_stack.empty() || initial_stack.back() != bottom)
        throw ValidationError("Dpda initial stack must end with the bottom symbol");
    if (!stack_well_formed(*this, initial_stack))
        throw ValidationError("Dpda initial stack contains an interior bottom symbol");
    for (Symbol a = 0; a < n_symbols; ++a) {
        for (std::size_t q = 0; q < n_states; ++q) {
            for (std::uint32_t top = 0; top < n_stack; ++top) {
                const auto& e = entry(a, q, top);
                if (e.next < 0) continue;
                std::size_t bottoms = 0;
                for (auto s : e.word) bottoms += s == bottom;
                if (top == bottom) {
                    if (bottoms != 1 || e.word.empty() || e.word.back() != bottom)
                        throw ValidationError(
                            "Dpda bottom discipline: popping the bottom must push exactly one "
                            "bottom, at the end");
                } else if (bottoms != 0) {
                    throw ValidationError(
                        "Dpda bottom discipline: non-bottom pops must push no bottom");
                }
            }
        }
    }
    for (const auto& [q, stack] : accept) {
        if (q >= n_states) throw ValidationError("Dpda accept state out of range");
        if (stack.empty() || stack.back() != bottom || !stack_well_formed(*this, stack))
            throw ValidationError("Dpda accept stack must contain exactly one bottom, at the end");
    }
}

bool stack_well_formed(const Dpda& d, const std::vector<std::uint32_t>& stack) {
    if (stack.empty() || stack.back() != d.bottom) return false;
    for (std::size_t i = 0; i + 1 < stack.size(); ++i)
        if (stack[i] == d.bottom) return false;
    return true;
}

std::optional<DpdaId> dpda_step(const Dpda& d, const DpdaId& id, Symbol a) {
    const auto& e = d.entry(a, id.state, id.stack.front());
    if (e.next < 0) return std::nullopt;
    DpdaId out;
    out.state = static_cast<std::size_t>(e.next);
    out.stack.reserve(e.word.size() + id.stack.size() - 1);
    out.stack.insert(out.stack.end(), e.word.begin(), e.word.end());
    out.stack.insert(out.stack.end(), id.stack.begin() + 1, id.stack.end());
    return out;
}

bool dpda_accepts(const Dpda& d, const std::vector<Symbol>& word) {
    DpdaId id{d.initial_state, d.initial_stack};
    for (Symbol a : word) {
        if (a >= d.n_symbols) return false;
        auto next = dpda_step(d, id, a);
        if (!next) return false;
        id = std::move(*next);
    }
    for (const auto& [q, stack] : d.accept)
        if (q == id.state && stack == id.stack) return true;
    return false;
}

std::string export_dot(const Dfa& d, const std::function<std::string(Symbol)>& sym_name,
                       const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  __start [shape=point];\n";
    os << "  __start -> s" << d.initial << ";\n";
    for (std::size_t s = 0; s < d.n_states; ++s)
        os << "  s" << s << " [label=\"" << s << "\""
           << (d.accepting[s] ? ", shape=doublecircle" : "") << "];\n";
    for (std::size_t s = 0; s < d.n_states; ++s) {
        for (Symbol a = 0; a < d.n_symbols; ++a) {
            long long to = d.delta[s * d.n_symbols + a];
            if (to < 0) continue;
            os << "  s" << s << " -> s" << to << " [label=\"" << sym_name(a) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string export_dot(const Dpda& d, const std::string& graph_name) {
    auto st = [&](std::size_t q) {
        return q < d.state_names.size() ? d.state_names[q] : std::to_string(q);
    };
    auto sy = [&](Symbol a) {
        return a < d.symbol_names.size() ? d.symbol_names[a] : std::to_string(a);
    };
    auto sk = [&](std::uint32_t g) {
        return g < d.stack_names.size() ? d.stack_names[g] : std::to_string(g);
    };
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t q = 0; q < d.n_states; ++q)
        os << "  s" << q << " [label=\"" << st(q) << "\"];\n";
    for (Symbol a = 0; a < d.n_symbols; ++a) {
        for (std::size_t q = 0; q < d.n_states; ++q) {
            for (std::uint32_t top = 0; top < d.n_stack; ++top) {
                const auto& e = d.entry(a, q, top);
                if (e.next < 0) continue;
                os << "  s" << q << " -> s" << e.next << " [label=\"" << sy(a) << ", " << sk(top)
                   << " / ";
                if (e.word.empty()) os << "eps";
                for (std::size_t i = 0; i < e.word.size(); ++i)
                    os << (i ? " " : "") << sk(e.word[i]);
                os << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

nlohmann::json dfa_to_json(const Dfa& d) {
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t s = 0; s < d.n_states; ++s)
        for (Symbol a = 0; a < d.n_symbols; ++a) {
            long long to = d.delta[s * d.n_symbols + a];
            if (to >= 0) edges.push_back({{"from", s}, {"sym", a}, {"to", to}});
        }
    std::vector<std::size_t> acc;
    for (std::size_t s = 0; s < d.n_states; ++s)
        if (d.accepting[s]) acc.push_back(s);
    return {{"n_symbols", d.n_symbols},
            {"n_states", d.n_states},
            {"initial", d.initial},
            {"edges", edges},
            {"accepting", acc}};
}

Dfa dfa_from_json(const nlohmann::json& j) {
    Dfa d;
    d.n_symbols = j.at("n_symbols").get<std::size_t>();
    d.n_states = j.at("n_states").get<std::size_t>();
    d.initial = j.at("initial").get<std::size_t>();
    d.delta.assign(d.n_symbols * d.n_states, -1);
    d.accepting.assign(d.n_states, false);
    for (const auto& e : j.at("edges"))
        d.set(e.at("from").get<std::size_t>(), e.at("sym").get<Symbol>(),
              e.at("to").get<std::size_t>());
    for (const auto& s : j.at("accepting")) d.accepting[s.get<std::size_t>()] = true;
    return d;
}

nlohmann::json dpda_to_json(const Dpda& d) {
    nlohmann::json edges = nlohmann::json::array();
    for (Symbol a = 0; a < d.n_symbols; ++a)
        for (std::size_t q = 0; q < d.n_states; ++q)
            for (std::uint32_t top = 0; top < d.n_stack; ++top) {
                const auto& e = d.entry(a, q, top);
                if (e.next < 0) continue;
                edges.push_back(
                    {{"sym", a}, {"state", q}, {"top", top}, {"next", e.next}, {"push", e.word}});
            }
    nlohmann::json acc = nlohmann::json::array();
    for (const auto& [q, stack] : d.accept) acc.push_back({{"state", q}, {"stack", stack}});
    return {{"n_symbols", d.n_symbols},
            {"n_states", d.n_states},
            {"n_stack", d.n_stack},
            {"bottom", d.bottom},
            {"initial_state", d.initial_state},
            {"initial_stack", d.initial_stack},
            {"delta", edges},
            {"accept", acc},
            {"state_names", d.state_names},
            {"stack_names", d.stack_names},
            {"symbol_names", d.symbol_names}};
}

}  // namespace tmtrace
