#include "tmtrace/st_recognizer.hpp"

#include <algorithm>
#include <map>

namespace tmtrace {

PartialConfiguration::PartialConfiguration(int n, std::vector<Sym> w, State q, int p)
    : half_width(n), window(std::move(w)), state(q), pos(p) {
    if (n < 0) throw ValidationError("PartialConfiguration requires N >= 0");
    if (window.size() != static_cast<std::size_t>(2 * n + 1))
        throw ValidationError("PartialConfiguration window must have length 2N+1");
    if (pos < -n || pos > n)
        throw ValidationError("PartialConfiguration position must lie in [-N, N]");
}

bool PartialConfiguration::operator<(const PartialConfiguration& o) const {
    if (half_width != o.half_width) return half_width < o.half_width;
    if (window != o.window) return window < o.window;
    if (state != o.state) return state < o.state;
    return pos < o.pos;
}

nlohmann::json PartialConfiguration::to_json(const TuringMachine& m) const {
    nlohmann::json cells = nlohmann::json::array();
    for (Sym s : window) cells.push_back(m.sym_name(s));
    return {{"window", cells}, {"state", m.state_name(state)}, {"pos", pos}};
}

PartialConfiguration PartialConfiguration::from_json(const TuringMachine& m,
                                                     const nlohmann::json& j) {
    std::vector<Sym> w;
    for (const auto& s : j.at("window")) w.push_back(m.sym_id(s.get<std::string>()));
    int n = (static_cast<int>(w.size()) - 1) / 2;
    return PartialConfiguration(n, std::move(w),
                                m.state_id(j.at("state").get<std::string>()),
                                j.at("pos").get<int>());
}

namespace {

void check_pc(const TuringMachine& m, int n, const PartialConfiguration& p,
              const char* what) {
    if (p.half_width != n)
        throw ValidationError(std::string(what) + ": width differs from the builder width");
    for (Sym s : p.window)
        if (s < 0 || s >= m.n_syms())
            throw ValidationError(std::string(what) + ": symbol outside the machine alphabet");
    if (p.state < 0 || p.state >= m.n_states())
        throw ValidationError(std::string(what) + ": state outside the machine state set");
}

// One machine step inside the window; returns false when the head would leave
// [-N, N].
bool window_step(const TuringMachine& m, PartialConfiguration& p) {
    auto r = m.rule(p.cell(p.pos), p.state);
    p.set_cell(p.pos, r.write);
    p.state = r.next;
    int np = p.pos + r.move;
    if (np < -p.half_width || np > p.half_width) return false;
    p.pos = np;
    return true;
}

std::uint64_t window_space_size(const TuringMachine& m, int n, const Budget& budget) {
    std::uint64_t size = static_cast<std::uint64_t>(m.n_states()) * (2 * n + 1);
    for (int i = 0; i < 2 * n + 1; ++i) {
        size *= static_cast<std::uint64_t>(m.n_syms());
        if (size > budget.max_search_nodes)
            throw BudgetExceeded("window construction exceeds the configured budget");
    }
    return size;
}

}  // namespace

bool c_reachable(const TuringMachine& m, int n, const PartialConfiguration& u,
                 const Budget& budget) {
    check_pc(m, n, u, "c_reachable");
    window_space_size(m, n, budget);

    std::set<PartialConfiguration> seen;
    std::vector<Sym> w(static_cast<std::size_t>(2 * n + 1), 0);
    bool more = true;
    while (more) {
        for (State q = 0; q < m.n_states(); ++q) {
            PartialConfiguration cur(n, w, q, 0);
            while (seen.insert(cur).second) {
                if (cur == u) return true;
                if (std::abs(cur.pos) == n) break;  // phase endpoint (all of it at N = 0)
                if (!window_step(m, cur)) break;
            }
        }
        more = false;
        for (int i = 2 * n; i >= 0; --i) {
            if (++w[i] < m.n_syms()) {
                more = true;
                break;
            }
            w[i] = 0;
        }
    }
    return seen.count(u) > 0;
}

Dfa build_c(const TuringMachine& m, int n, const PartialConfiguration& u,
            const PartialConfiguration& v, const Budget& budget) {
    check_pc(m, n, u, "build_c u");
    check_pc(m, n, v, "build_c v");
    if (u.pos != 0) throw ValidationError("build_c: u must have its head at position 0");
    window_space_size(m, n, budget);

    Dfa d;
    d.n_symbols = static_cast<std::size_t>(m.n_syms()) * m.n_states();

    std::map<PartialConfiguration, std::size_t> ids;
    std::vector<PartialConfiguration> nodes{u};
    ids[u] = 0;

    std::vector<std::vector<long long>> rows;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        PartialConfiguration cur = nodes[i];
        std::vector<long long> row(d.n_symbols, -1);
        // transitions exist only while the head is strictly inside the window
        if (std::abs(cur.pos) < n) {
            Symbol a = static_cast<Symbol>(cur.cell(cur.pos)) * m.n_states() + cur.state;
            PartialConfiguration next = cur;
            window_step(m, next);  // cannot leave [-N, N] from the open interior
            auto [it, fresh] = ids.emplace(next, nodes.size());
            if (fresh) nodes.push_back(next);
            row[a] = static_cast<long long>(it->second);
        }
        rows.push_back(std::move(row));
    }

    d.n_states = nodes.size();
    d.initial = 0;
    d.delta.reserve(d.n_states * d.n_symbols);
    for (const auto& row : rows) d.delta.insert(d.delta.end(), row.begin(), row.end());
    d.accepting.assign(d.n_states, false);
    auto it = ids.find(v);
    if (it != ids.end()) d.accepting[it->second] = true;
    return d;
}

namespace {

// Shared construction for R (dir = +1) and L (dir = -1).
Dpda build_excursion(const TuringMachine& m, int n, const PartialConfiguration& u,
                     const PartialConfiguration& v, int dir, const Budget& budget) {
    const char* what = dir > 0 ? "build_r" : "build_l";
    check_pc(m, n, u, what);
    check_pc(m, n, v, what);
    if (n < 1)
        throw ValidationError(std::string(what) +
                              ": the stack construction is defined for N >= 1");
    if (u.pos != dir * n)
        throw ValidationError(std::string(what) + ": u must have its head at the window edge");
    for (int c = (dir > 0 ? -n : 0); c <= (dir > 0 ? 0 : n); ++c)
        if (u.cell(c) != v.cell(c))
            throw ValidationError(std::string(what) +
                                  ": u and v must agree on the untouched half of the window");
    if (!c_reachable(m, n, u, budget))
        throw ValidationError(std::string(what) +
                              ": no central phase reaches u (C_{u',u} empty for every u')");

    int n_syms = m.n_syms();
    int n_states_m = m.n_states();
    int cap = n;  // state words hold at most N letters

    // state ids: words over A of length <= cap, paired with a machine state;
    // REJECT is the last id.
    std::vector<std::uint64_t> len_offset(static_cast<std::size_t>(cap) + 2, 0);
    for (int len = 0; len <= cap; ++len) {
        std::uint64_t block = 1;
        for (int i = 0; i < len; ++i) block *= static_cast<std::uint64_t>(n_syms);
        len_offset[static_cast<std::size_t>(len) + 1] =
            len_offset[static_cast<std::size_t>(len)] + block;
    }
    std::uint64_t n_words = len_offset[static_cast<std::size_t>(cap) + 1];
    std::uint64_t n_states = n_words * n_states_m + 1;
    if (n_states > budget.max_search_nodes)
        throw BudgetExceeded(std::string(what) + ": state space exceeds the budget");

    auto word_id = [&](const std::vector<Sym>& w) {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            x = x * static_cast<std::uint64_t>(n_syms) + static_cast<std::uint64_t>(w[i]);
        }
        return len_offset[w.size()] + x;
    };
    auto state_id = [&](const std::vector<Sym>& w, State q) {
        return static_cast<std::size_t>(word_id(w) * n_states_m + q);
    };
    std::size_t reject = static_cast<std::size_t>(n_states - 1);

    auto word_of = [&](std::uint64_t wid) {
        int len = 0;
        while (wid >= len_offset[static_cast<std::size_t>(len) + 1]) ++len;
        std::uint64_t x = wid - len_offset[static_cast<std::size_t>(len)];
        std::vector<Sym> w(static_cast<std::size_t>(len));
        for (int i = len - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<Sym>(x % n_syms);
            x /= static_cast<std::uint64_t>(n_syms);
        }
        return w;
    };

    Dpda d;
    d.n_symbols = static_cast<std::size_t>(n_syms) * n_states_m;
    d.n_states = static_cast<std::size_t>(n_states);
    d.n_stack = static_cast<std::size_t>(n_syms) + 1;
    d.bottom = static_cast<std::uint32_t>(n_syms);
    d.delta.assign(d.n_symbols * d.n_states * d.n_stack, Dpda::Push{});

    // the appendix table, with REJECT made explicit and total
    for (Symbol a = 0; a < d.n_symbols; ++a) {
        Sym alpha = static_cast<Sym>(a / n_states_m);
        State p = static_cast<State>(a % n_states_m);
        for (std::uint64_t wid = 0; wid < n_words; ++wid) {
            std::vector<Sym> w = word_of(wid);
            for (State q = 0; q < n_states_m; ++q) {
                std::size_t from = state_id(w, q);
                for (std::uint32_t top = 0; top < d.n_stack; ++top) {
                    bool guard = p == q && (w.empty() || w[0] == alpha) && top != d.bottom;
                    if (!guard) {
                        // keep the stack unchanged, move to the sink
                        d.set_entry(a, from, top, reject, {top});
                        continue;
                    }
                    auto r = m.rule(alpha, p);
                    if (r.move == dir) {  // away from cell 0: push the written symbol
                        std::vector<Sym> nw(w.begin() + (w.empty() ? 0 : 1), w.end());
                        d.set_entry(a, from, top, state_id(nw, r.next),
                                    {static_cast<std::uint32_t>(r.write), top});
                    } else {  // toward cell 0: pop, fold the popped cell into the word
                        std::vector<Sym> nw;
                        nw.push_back(static_cast<Sym>(top));
                        nw.push_back(r.write);
                        for (std::size_t i = 1; i < w.size(); ++i) nw.push_back(w[i]);
                        if (static_cast<int>(nw.size()) > cap) nw.resize(static_cast<std::size_t>(cap));
                        d.set_entry(a, from, top, state_id(nw, r.next), {});
                    }
                }
            }
        }
    }
    for (Symbol a = 0; a < d.n_symbols; ++a)
        for (std::uint32_t top = 0; top < d.n_stack; ++top)
            d.set_entry(a, reject, top, reject, top == d.bottom
                                                    ? std::vector<std::uint32_t>{d.bottom}
                                                    : std::vector<std::uint32_t>{top});

    d.initial_state = state_id({u.cell(dir * n)}, u.state);
    for (int i = 1; i <= n; ++i)
        d.initial_stack.push_back(static_cast<std::uint32_t>(u.cell(dir * (n - i))));
    d.initial_stack.push_back(d.bottom);

    // acceptance: position = stack depth above bottom; the stack holds the
    // cells between 0 and the head, the word covers the head side
    int k = v.pos;
    if (dir * k >= 0) {
        std::vector<std::uint32_t> stack;
        for (int i = 1; i <= std::abs(k); ++i)
            stack.push_back(static_cast<std::uint32_t>(v.cell(k - dir * i)));
        stack.push_back(d.bottom);

        int fixed = std::min(cap, n - std::abs(k) + 1);  // window cells the word must cover
        std::vector<Sym> base(static_cast<std::size_t>(fixed));
        for (int i = 0; i < fixed; ++i)
            base[static_cast<std::size_t>(i)] = v.cell(k + dir * i);
        int max_free = (k == 0) ? 0 : cap - fixed;
        std::vector<Sym> tail;
        std::function<void(int)> emit = [&](int extra) {
            std::vector<Sym> w = base;
            w.insert(w.end(), tail.begin(), tail.end());
            d.accept.emplace_back(state_id(w, v.state), stack);
            if (extra == 0) return;
            for (Sym s = 0; s < n_syms; ++s) {
                tail.push_back(s);
                emit(extra - 1);
                tail.pop_back();
            }
        };
        emit(max_free);
    }

    // names for export
    d.symbol_names.resize(d.n_symbols);
    for (Symbol a = 0; a < d.n_symbols; ++a)
        d.symbol_names[a] = "(" + m.sym_name(static_cast<Sym>(a / n_states_m)) + "," +
                            m.state_name(static_cast<State>(a % n_states_m)) + ")";
    d.stack_names.resize(d.n_stack);
    for (Sym s = 0; s < n_syms; ++s) d.stack_names[static_cast<std::size_t>(s)] = m.sym_name(s);
    d.stack_names[d.bottom] = "_|_";
    d.state_names.resize(d.n_states);
    for (std::uint64_t wid = 0; wid < n_words; ++wid) {
        std::vector<Sym> w = word_of(wid);
        std::string wn;
        for (Sym s : w) wn += m.sym_name(s);
        if (wn.empty()) wn = "eps";
        for (State q = 0; q < n_states_m; ++q)
            d.state_names[state_id(w, q)] = "(" + wn + "," + m.state_name(q) + ")";
    }
    d.state_names[reject] = "REJECT";

    d.validate();
    return d;
}

}  // namespace

Dpda build_r(const TuringMachine& m, int n, const PartialConfiguration& u,
             const PartialConfiguration& v, const Budget& budget) {
    return build_excursion(m, n, u, v, +1, budget);
}

Dpda build_l(const TuringMachine& m, int n, const PartialConfiguration& u,
             const PartialConfiguration& v, const Budget& budget) {
    return build_excursion(m, n, u, v, -1, budget);
}

std::uint64_t zigzag_bound_from_dpda(std::uint64_t n_states, std::uint64_t n_stack) {
    if (n_states < 1 || n_stack < 1)
        throw ValidationError("zigzag_bound_from_dpda requires positive sizes");
    std::uint64_t exp = n_states * n_states * n_stack * n_stack + 1;
    if (exp >= 64) throw ValidationError("zigzag_bound_from_dpda: bound exceeds 64 bits");
    return (std::uint64_t{1} << exp) + 3;
}

PhaseDecider make_phase_decider(const TuringMachine& m, int n) {
    if (n < 0) throw ValidationError("make_phase_decider requires N >= 0");
    return PhaseDecider{&m, n};
}

nlohmann::json PhaseDecider::manifest() const {
    return {{"machine", machine->name()},
            {"width", width},
            {"cases",
             {"C", "CR", "CRC", "CRCL", "CRCLC", "CL", "CLC", "CLCR", "CLCRC"}},
            {"central_phase", "head within [-N, N]"},
            {"excursion_open", "head commits past +-(N+1)"},
            {"excursion_close", "head returns to 0"}};
}

namespace {

struct DeciderRun {
    std::map<long long, Sym> tape;
    long long pos = 0;
    State state = -1;
    int episode = 0;  // 0 central, +1 right excursion, -1 left excursion
    bool r_used = false, l_used = false;

    // Consumes one trace symbol; false = prune (no continuation can accept).
    bool feed(const TuringMachine& m, int n, TraceSym t) {
        if (t >= static_cast<TraceSym>(m.n_syms()) * m.n_states()) return false;
        Sym alpha = static_cast<Sym>(t / m.n_states());
        State p = static_cast<State>(t % m.n_states());
        if (state == -1)
            state = p;
        else if (p != state)
            return false;
        auto it = tape.find(pos);
        if (it != tape.end() && it->second != alpha) return false;
        auto r = m.rule(alpha, p);
        tape[pos] = r.write;
        state = r.next;
        pos += r.move;
        if (episode == 0) {
            if (pos == n + 1) {
                if (r_used) return false;
                r_used = true;
                episode = +1;
            } else if (pos == -(n + 1)) {
                if (l_used) return false;
                l_used = true;
                episode = -1;
            }
        } else if (pos == 0) {
            episode = 0;
        }
        return true;
    }
};

}  // namespace

bool st_membership(const PhaseDecider& d, const Word& word) {
    DeciderRun run;
    for (TraceSym t : word)
        if (!run.feed(*d.machine, d.width, t)) return false;
    return true;
}

std::vector<Word> st_accepted_words(const PhaseDecider& d, int length, const Budget& budget) {
    std::vector<Word> out;
    Word word;
    std::uint64_t nodes = 0;
    TraceSym n_input =
        static_cast<TraceSym>(d.machine->n_syms()) * d.machine->n_states();
    std::function<void(const DeciderRun&)> rec = [&](const DeciderRun& run) {
        if (++nodes > budget.max_search_nodes)
            throw BudgetExceeded("st_accepted_words search budget exceeded");
        if (static_cast<int>(word.size()) == length) {
            out.push_back(word);
            return;
        }
        for (TraceSym t = 0; t < n_input; ++t) {
            DeciderRun next = run;
            if (!next.feed(*d.machine, d.width, t)) continue;
            word.push_back(t);
            rec(next);
            word.pop_back();
        }
    };
    rec(DeciderRun{});
    std::sort(out.begin(), out.end());
    return out;
}

bool EquivalenceReport::all_equal() const {
    for (const auto& l : lengths)
        if (!l.equal()) return false;
    return true;
}

nlohmann::json EquivalenceReport::to_json(const TuringMachine& m, bool h_alphabet) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : lengths) {
        nlohmann::json miss = nlohmann::json::array(), extra = nlohmann::json::array();
        for (const auto& w : l.missing) miss.push_back(render_word(m, w, h_alphabet));
        for (const auto& w : l.extra) extra.push_back(render_word(m, w, h_alphabet));
        out.push_back({{"length", l.n},
                       {"oracle_size", l.oracle_size},
                       {"recognizer_size", l.recognizer_size},
                       {"missing", miss},
                       {"extra", extra}});
    }
    return out;
}

EquivalenceReport st_equivalence_check(const TuringMachine& m, int n, int n_max,
                                       const Budget& budget) {
    PhaseDecider d = make_phase_decider(m, n);
    EquivalenceReport rep;
    for (int len = 1; len <= n_max; ++len) {
        LanguageSample oracle = enumerate_lst(m, len, budget);
        std::vector<Word> got = st_accepted_words(d, len, budget);
        LengthComparison cmp;
        cmp.n = len;
        cmp.oracle_size = oracle.words.size();
        cmp.recognizer_size = got.size();
        std::set_difference(oracle.words.begin(), oracle.words.end(), got.begin(), got.end(),
                            std::back_inserter(cmp.missing));
        std::set_difference(got.begin(), got.end(), oracle.words.begin(), oracle.words.end(),
                            std::back_inserter(cmp.extra));
        rep.lengths.push_back(std::move(cmp));
    }
    return rep;
}

}  // namespace tmtrace
