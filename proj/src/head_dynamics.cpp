#include "tmtrace/head_dynamics.hpp"

#include <algorithm>
#include <map>

namespace tmtrace {

std::string to_string(CycleKind k) {
    switch (k) {
        case CycleKind::RightCycle: return "right-cycle";
        case CycleKind::LeftCycle: return "left-cycle";
        case CycleKind::RightZigzag: return "right-zigzag";
        case CycleKind::LeftZigzag: return "left-zigzag";
        case CycleKind::NCycle: return "n-cycle";
    }
    return "?";
}

nlohmann::json CycleWitness::to_json(const TuringMachine& m) const {
    return {{"kind", to_string(kind)},
            {"base", base},
            {"width", width},
            {"stamps", stamps},
            {"config", config.to_json(m)}};
}

nlohmann::json PreperiodicityCertificate::to_json(const TuringMachine& m) const {
    nlohmann::json cells = nlohmann::json::array();
    for (Sym s : span_contents) cells.push_back(m.sym_name(s));
    return {{"transient", transient},
            {"period", period},
            {"head", {{"state", m.state_name(head_state)}, {"pos", head_pos}}},
            {"span_lo", span_lo},
            {"span_hi", span_hi},
            {"span_contents", cells}};
}

std::vector<long long> position_trace(const TuringMachine& m, const Configuration& c,
                                      long long horizon) {
    if (!c.head()) throw ValidationError("position_trace requires a head");
    // flat tape covering everything the head can touch
    long long h0 = c.head()->pos;
    long long lo = std::min(h0 - horizon - 1, c.lo());
    long long hi = std::max(h0 + horizon + 1, c.hi());
    std::vector<Sym> tape(static_cast<std::size_t>(hi - lo + 1));
    for (long long i = lo; i <= hi; ++i) tape[static_cast<std::size_t>(i - lo)] = c.at(i);

    std::vector<long long> pos;
    pos.reserve(static_cast<std::size_t>(horizon) + 1);
    long long p = h0;
    State q = c.head()->state;
    pos.push_back(p);
    for (long long t = 0; t < horizon; ++t) {
        Sym& cell = tape[static_cast<std::size_t>(p - lo)];
        auto r = m.rule(cell, q);
        cell = r.write;
        q = r.next;
        p += r.move;
        pos.push_back(p);
    }
    return pos;
}

bool CycleWitness::replay(const TuringMachine& m) const {
    if (stamps.empty()) return false;
    long long horizon = stamps.back();
    auto pos = position_trace(m, config, horizon);
    if (kind == CycleKind::NCycle) {
        for (std::size_t i = 0; i < stamps.size(); ++i) {
            long long p = pos[static_cast<std::size_t>(stamps[i])];
            if (i % 2 == 0) {
                if (p != base) return false;
            } else if (std::llabs(p - base) <= width) {
                return false;
            }
        }
        return true;
    }
    if (stamps.size() != 3) return false;
    long long p0 = pos[static_cast<std::size_t>(stamps[0])];
    long long p1 = pos[static_cast<std::size_t>(stamps[1])];
    long long p2 = pos[static_cast<std::size_t>(stamps[2])];
    if (p0 != base || p2 != base) return false;
    bool right = kind == CycleKind::RightCycle || kind == CycleKind::RightZigzag;
    return p1 == base + (right ? width : -width);
}

namespace {

struct ThreeStamps {
    long long t0, t1, t2, width;
    bool right;
};

// Earliest-completing excursion i -> i+-w -> i with lo_w <= w <= hi_w, scanning
// candidate end stamps in order; ties prefer the smaller width, then the
// earlier middle stamp.
std::optional<ThreeStamps> scan_three(const std::vector<long long>& pos, long long lo_w,
                                      long long hi_w) {
    std::map<long long, long long> first_visit;
    first_visit[pos[0]] = 0;
    for (long long t2 = 1; t2 < static_cast<long long>(pos.size()); ++t2) {
        long long i = pos[static_cast<std::size_t>(t2)];
        auto it = first_visit.find(i);
        if (it != first_visit.end()) {
            long long t0 = it->second;
            long long best_w = 0, best_t1 = 0;
            for (long long t = t0 + 1; t < t2; ++t) {
                long long d = pos[static_cast<std::size_t>(t)] - i;
                long long w = std::llabs(d);
                if (w < lo_w || w > hi_w) continue;
                if (best_w == 0 || w < best_w) {
                    best_w = w;
                    best_t1 = t;
                }
            }
            if (best_w != 0)
                return ThreeStamps{t0, best_t1, t2, best_w,
                                   pos[static_cast<std::size_t>(best_t1)] > i};
        } else {
            first_visit.emplace(i, t2);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CycleWitness> find_cycle(const TuringMachine& m, const Configuration& c,
                                       long long max_width, long long horizon) {
    if (!c.head()) throw ValidationError("find_cycle requires a head");
    auto pos = position_trace(m, c, horizon);
    auto s = scan_three(pos, 1, max_width);
    if (!s) return std::nullopt;
    CycleWitness w{s->right ? CycleKind::RightCycle : CycleKind::LeftCycle,
                   pos[static_cast<std::size_t>(s->t0)], s->width, {s->t0, s->t1, s->t2}, c};
    return w;
}

std::optional<CycleWitness> find_zigzag(const TuringMachine& m, long long min_width,
                                        int window_radius, long long horizon,
                                        const Budget& budget, bool sweep_pads) {
    int cells = 2 * window_radius + 1;
    std::uint64_t n_windows = 1;
    for (int i = 0; i < cells; ++i) {
        n_windows *= static_cast<std::uint64_t>(m.n_syms());
        if (n_windows > budget.max_simulated_configs)
            throw BudgetExceeded("find_zigzag: window sweep exceeds the configured budget");
    }
    std::uint64_t pad_combos = sweep_pads ? static_cast<std::uint64_t>(m.n_syms()) *
                                                static_cast<std::uint64_t>(m.n_syms())
                                          : 1;
    std::uint64_t total = n_windows * m.n_states() * pad_combos;
    if (total > budget.max_simulated_configs)
        throw BudgetExceeded("find_zigzag: configuration sweep exceeds the configured budget");

    std::optional<CycleWitness> best;
    std::vector<Sym> window(static_cast<std::size_t>(cells), 0);
    std::vector<Sym> tape;
    std::vector<long long> pos;
    pos.reserve(static_cast<std::size_t>(horizon) + 1);

    for (std::uint64_t pads = 0; pads < pad_combos; ++pads) {
        Sym lpad = sweep_pads ? static_cast<Sym>(pads % m.n_syms()) : 0;
        Sym rpad = sweep_pads ? static_cast<Sym>(pads / m.n_syms()) : 0;
        for (State q = 0; q < m.n_states(); ++q) {
            std::fill(window.begin(), window.end(), 0);
            bool more = true;
            while (more) {
                // completing later than the current best cannot improve
                long long h_eff = best ? std::min(horizon, best->stamps[2]) : horizon;

                long long lo = -std::max<long long>(window_radius, h_eff) - 1;
                long long hi = -lo;
                tape.assign(static_cast<std::size_t>(hi - lo + 1), 0);
                for (long long i = lo; i < -window_radius; ++i)
                    tape[static_cast<std::size_t>(i - lo)] = lpad;
                for (long long i = window_radius + 1; i <= hi; ++i)
                    tape[static_cast<std::size_t>(i - lo)] = rpad;
                for (int i = 0; i < cells; ++i)
                    tape[static_cast<std::size_t>(i - window_radius - lo)] = window[i];

                pos.clear();
                long long p = 0;
                State st = q;
                pos.push_back(p);
                for (long long t = 0; t < h_eff; ++t) {
                    Sym& cell = tape[static_cast<std::size_t>(p - lo)];
                    auto r = m.rule(cell, st);
                    cell = r.write;
                    st = r.next;
                    p += r.move;
                    pos.push_back(p);
                }
                auto s = scan_three(pos, min_width, horizon + 1);
                if (s) {
                    bool better = !best || s->t2 < best->stamps[2] ||
                                  (s->t2 == best->stamps[2] && s->width < best->width);
                    if (better) {
                        Configuration c(-window_radius, window, {lpad}, {rpad}, Head{q, 0});
                        best = CycleWitness{
                            s->right ? CycleKind::RightZigzag : CycleKind::LeftZigzag,
                            pos[static_cast<std::size_t>(s->t0)],
                            s->width,
                            {s->t0, s->t1, s->t2},
                            c};
                    }
                }
                // next window, lexicographic with cell -R most significant
                more = false;
                for (int i = cells - 1; i >= 0; --i) {
                    if (++window[i] < m.n_syms()) {
                        more = true;
                        break;
                    }
                    window[i] = 0;
                }
            }
        }
    }
    return best;
}

bool has_n_cycle(const std::vector<long long>& positions, int n, long long width) {
    std::set<long long> bases(positions.begin(), positions.end());
    for (long long i : bases) {
        std::size_t t = 0;
        while (t < positions.size() && positions[t] != i) ++t;
        if (t >= positions.size()) continue;
        int done = 0;
        while (done < n) {
            while (t < positions.size() && std::llabs(positions[t] - i) <= width) ++t;
            if (t >= positions.size()) break;
            while (t < positions.size() && positions[t] != i) ++t;
            if (t >= positions.size()) break;
            ++done;
        }
        if (done == n) return true;
    }
    return false;
}

std::optional<CycleWitness> find_n_cycle(const TuringMachine& m, const Configuration& c,
                                         int n, long long width, long long horizon) {
    if (!c.head()) throw ValidationError("find_n_cycle requires a head");
    if (n < 1) throw ValidationError("find_n_cycle requires n >= 1");
    auto pos = position_trace(m, c, horizon);

    std::vector<long long> bases(pos.begin(), pos.end());
    std::sort(bases.begin(), bases.end(), [](long long a, long long b) {
        return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
    });
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

    std::optional<CycleWitness> best;
    for (long long i : bases) {
        std::vector<long long> stamps;
        std::size_t t = 0;
        while (t < pos.size() && pos[t] != i) ++t;
        if (t >= pos.size()) continue;
        stamps.push_back(static_cast<long long>(t));
        bool ok = true;
        for (int q = 0; q < n && ok; ++q) {
            ++t;
            while (t < pos.size() && std::llabs(pos[t] - i) <= width) ++t;
            if (t >= pos.size()) {
                ok = false;
                break;
            }
            stamps.push_back(static_cast<long long>(t));
            ++t;
            while (t < pos.size() && pos[t] != i) ++t;
            if (t >= pos.size()) {
                ok = false;
                break;
            }
            stamps.push_back(static_cast<long long>(t));
        }
        if (!ok) continue;
        if (!best || stamps.back() < best->stamps.back())
            best = CycleWitness{CycleKind::NCycle, i, width, stamps, c};
    }
    return best;
}

std::set<long long> visit_times(const TuringMachine& m, const Configuration& c,
                                long long cell, long long horizon) {
    auto pos = position_trace(m, c, horizon);
    std::set<long long> out;
    for (std::size_t t = 0; t < pos.size(); ++t)
        if (pos[t] == cell) out.insert(static_cast<long long>(t));
    return out;
}

std::uint64_t visit_bound(int n, int width, int alphabet_size) {
    if (n < 1 || width < 0 || alphabet_size < 1)
        throw ValidationError("visit_bound requires n >= 1, width >= 0, |A| >= 1");
    std::uint64_t r = 2 * static_cast<std::uint64_t>(n);
    for (int i = 0; i < 2 * width + 1; ++i) {
        if (r > UINT64_MAX / static_cast<std::uint64_t>(alphabet_size)) return UINT64_MAX;
        r *= static_cast<std::uint64_t>(alphabet_size);
    }
    return r;
}

std::optional<PreperiodicityCertificate> detect_preperiodicity(const TuringMachine& m,
                                                               const Configuration& c,
                                                               std::uint64_t step_budget) {
    if (!c.head()) throw ValidationError("detect_preperiodicity requires a head");

    // Full-state key: (pos, state, cells differing from the initial tape).
    // Equality of keys is exact equality of configurations T^i(x) = T^j(x).
    std::map<long long, Sym> diff;
    std::map<std::vector<long long>, std::uint64_t> seen;
    auto key = [&](long long p, State q) {
        std::vector<long long> k{p, q};
        for (auto& [cell, val] : diff) {
            k.push_back(cell);
            k.push_back(val);
        }
        return k;
    };

    long long p = c.head()->pos;
    State q = c.head()->state;
    std::uint64_t repeat_from = 0, repeat_at = 0;
    bool found = false;
    for (std::uint64_t t = 0; t <= step_budget; ++t) {
        auto k = key(p, q);
        auto [it, fresh] = seen.emplace(std::move(k), t);
        if (!fresh) {
            repeat_from = it->second;
            repeat_at = t;
            found = true;
            break;
        }
        Sym s = diff.count(p) ? diff[p] : c.at(p);
        auto r = m.rule(s, q);
        if (r.write == c.at(p))
            diff.erase(p);
        else
            diff[p] = r.write;
        q = r.next;
        p += r.move;
    }
    if (!found) return std::nullopt;

    PreperiodicityCertificate cert;
    cert.transient = repeat_from;
    cert.period = repeat_at - repeat_from;

    // replay to the transient for the repeated full state
    Configuration cur = c;
    long long span_lo = c.head()->pos, span_hi = c.head()->pos;
    for (std::uint64_t t = 0; t < repeat_from; ++t) {
        cur = step_t(m, cur);
        span_lo = std::min(span_lo, cur.head()->pos);
        span_hi = std::max(span_hi, cur.head()->pos);
    }
    cert.head_pos = cur.head()->pos;
    cert.head_state = cur.head()->state;
    cert.span_lo = span_lo;
    cert.span_hi = span_hi;
    for (long long i = span_lo; i <= span_hi; ++i) cert.span_contents.push_back(cur.at(i));
    return cert;
}

std::uint64_t isolation_length(const TuringMachine& m, int period) {
    if (period < 1) throw ValidationError("isolation_length requires period >= 1");
    std::uint64_t r = static_cast<std::uint64_t>(m.n_states());
    for (int i = 0; i < period + 1; ++i) {
        if (r > UINT64_MAX / static_cast<std::uint64_t>(m.n_syms())) return UINT64_MAX;
        r *= static_cast<std::uint64_t>(m.n_syms());
    }
    std::uint64_t sq = static_cast<std::uint64_t>(period + 1) * (period + 1);
    if (r > UINT64_MAX / sq) return UINT64_MAX;
    return r * sq;
}

namespace {

// X_H cell observation: the symbol, plus the head mark when it sits here.
std::uint64_t observe(const TuringMachine& m, const Configuration& c, long long i) {
    if (c.head() && c.head()->pos == i)
        return static_cast<std::uint64_t>(m.n_syms()) +
               static_cast<std::uint64_t>(c.at(i)) * m.n_states() + c.head()->state;
    return static_cast<std::uint64_t>(c.at(i));
}

}  // namespace

bool check_window_stability(const TuringMachine& m, const Configuration& c, int k, int mrad,
                            long long horizon, const Budget& budget) {
    if (mrad < k) throw ValidationError("check_window_stability requires m >= k");

    // reference evolution of cells [-k, k]
    std::vector<std::vector<std::uint64_t>> ref;
    {
        Configuration cur = c;
        for (long long t = 0; t <= horizon; ++t) {
            std::vector<std::uint64_t> row;
            for (long long i = -k; i <= k; ++i) row.push_back(observe(m, cur, i));
            ref.push_back(std::move(row));
            if (t < horizon) cur = step_th(m, cur);
        }
    }

    long long reach = k + horizon;
    std::vector<long long> free_cells;
    for (long long i = -reach; i <= reach; ++i)
        if (i < -mrad || i > mrad) free_cells.push_back(i);

    bool head_fixed = c.head() && std::llabs(c.head()->pos) <= mrad;

    std::uint64_t assigns = 1;
    for (std::size_t i = 0; i < free_cells.size(); ++i) {
        assigns *= static_cast<std::uint64_t>(m.n_syms());
        if (assigns > budget.max_simulated_configs)
            throw BudgetExceeded("check_window_stability: extension sweep exceeds the budget");
    }
    std::uint64_t head_opts =
        head_fixed ? 1 : 1 + static_cast<std::uint64_t>(free_cells.size()) * m.n_states();
    if (assigns > budget.max_simulated_configs / head_opts)
        throw BudgetExceeded("check_window_stability: extension sweep exceeds the budget");

    std::vector<Sym> fill(free_cells.size(), 0);
    bool more = true;
    while (more) {
        for (std::uint64_t ho = 0; ho < head_opts; ++ho) {
            Configuration y = c;
            y.materialize(-reach, reach);
            for (std::size_t i = 0; i < free_cells.size(); ++i) y.set(free_cells[i], fill[i]);
            if (!head_fixed) {
                if (ho == 0) {
                    y.set_head(std::nullopt);
                } else {
                    std::size_t which = static_cast<std::size_t>((ho - 1) / m.n_states());
                    State q = static_cast<State>((ho - 1) % m.n_states());
                    y.set_head(Head{q, free_cells[which]});
                }
            }
            Configuration cur = y;
            for (long long t = 0; t <= horizon; ++t) {
                for (long long i = -k; i <= k; ++i)
                    if (observe(m, cur, i) != ref[static_cast<std::size_t>(t)]
                                                 [static_cast<std::size_t>(i + k)])
                        return false;
                if (t < horizon) cur = step_th(m, cur);
            }
        }
        more = false;
        for (std::size_t i = 0; i < fill.size(); ++i) {
            if (++fill[i] < m.n_syms()) {
                more = true;
                break;
            }
            fill[i] = 0;
        }
    }
    return true;
}

}  // namespace tmtrace
